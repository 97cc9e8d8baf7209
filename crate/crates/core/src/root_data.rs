//! Classical root data for the families A_n and D_n, on the index set
//! I_0 = {1, ..., n}.
//!
//! Weights live in epsilon coordinates and are stored in half-units
//! (`halves[i]` is twice the coefficient of eps_{i+1}) so that type D
//! spin weights stay exact integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineType {
    A,
    D,
}

/// A classical Dynkin diagram of type A_n or D_n with nodes 1..=n.
///
/// Type D requires n >= 4; the two spin nodes are n-1 and n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinSpec {
    #[serde(rename = "type")]
    pub affine: AffineType,
    pub n: usize,
}

impl DynkinSpec {
    pub fn new(affine: AffineType, n: usize) -> Result<Self> {
        match affine {
            AffineType::A if n >= 1 => Ok(DynkinSpec { affine, n }),
            AffineType::A => Err(Error::input("type A needs rank n >= 1")),
            AffineType::D if n >= 4 => Ok(DynkinSpec { affine, n }),
            AffineType::D => Err(Error::input("type D needs rank n >= 4")),
        }
    }

    pub fn type_a(n: usize) -> DynkinSpec {
        DynkinSpec::new(AffineType::A, n).unwrap()
    }

    pub fn type_d(n: usize) -> DynkinSpec {
        DynkinSpec::new(AffineType::D, n).unwrap()
    }

    /// Length of the ambient epsilon coordinate vector.
    pub fn eps_len(&self) -> usize {
        match self.affine {
            AffineType::A => self.n + 1,
            AffineType::D => self.n,
        }
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(Error::Input(format!("node {i} out of range 1..={}", self.n)))
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Whether B^{r,s} at this node is a type D spin crystal.
    pub fn is_spin_node(&self, r: usize) -> bool {
        self.affine == AffineType::D && (r == self.n - 1 || r == self.n)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        if a == b || !(1..=self.n).contains(&a) || !(1..=self.n).contains(&b) {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        match self.affine {
            AffineType::A => hi - lo == 1,
            // D: the chain 1-2-...-(n-1) plus the fork edge (n-2)-n.
            AffineType::D => (hi - lo == 1 && hi <= self.n - 1) || (lo == self.n - 2 && hi == self.n),
        }
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        (1..=self.n).filter(|&b| self.adjacent(a, b)).collect()
    }
}

impl fmt::Display for DynkinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine {
            AffineType::A => write!(f, "A{}", self.n),
            AffineType::D => write!(f, "D{}", self.n),
        }
    }
}

/// Weight in epsilon coordinates; `halves[i]` is twice the eps_{i+1} coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EpsVector {
    pub halves: Vec<i64>,
}

impl EpsVector {
    pub fn zero(len: usize) -> EpsVector {
        EpsVector { halves: vec![0; len] }
    }

    /// eps_i, 1-based.
    pub fn eps(len: usize, i: usize) -> EpsVector {
        assert!(i >= 1 && i <= len);
        let mut halves = vec![0; len];
        halves[i - 1] = 2;
        EpsVector { halves }
    }

    pub fn is_zero(&self) -> bool {
        self.halves.iter().all(|&h| h == 0)
    }

    /// Adds c * eps_i in half-units (c = 2 adds one full eps_i).
    pub fn add_eps_halves(&mut self, i: usize, c: i64) {
        self.halves[i - 1] += c;
    }
}

impl Add for EpsVector {
    type Output = EpsVector;
    fn add(self, rhs: EpsVector) -> EpsVector {
        assert_eq!(self.halves.len(), rhs.halves.len());
        EpsVector {
            halves: self.halves.iter().zip(&rhs.halves).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for EpsVector {
    type Output = EpsVector;
    fn sub(self, rhs: EpsVector) -> EpsVector {
        assert_eq!(self.halves.len(), rhs.halves.len());
        EpsVector {
            halves: self.halves.iter().zip(&rhs.halves).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for EpsVector {
    type Output = EpsVector;
    fn neg(self) -> EpsVector {
        EpsVector { halves: self.halves.iter().map(|h| -h).collect() }
    }
}

/// Entry A_{ij} of the classical Cartan matrix.
pub fn cartan_entry(spec: DynkinSpec, i: usize, j: usize) -> Result<i64> {
    spec.check_node(i)?;
    spec.check_node(j)?;
    Ok(if i == j {
        2
    } else if spec.adjacent(i, j) {
        -1
    } else {
        0
    })
}

/// Simple root alpha_i in epsilon coordinates.
pub fn simple_root(spec: DynkinSpec, i: usize) -> Result<EpsVector> {
    spec.check_node(i)?;
    let len = spec.eps_len();
    let mut v = EpsVector::zero(len);
    match spec.affine {
        AffineType::A => {
            v.add_eps_halves(i, 2);
            v.add_eps_halves(i + 1, -2);
        }
        AffineType::D => {
            if i <= spec.n - 1 {
                v.add_eps_halves(i, 2);
                v.add_eps_halves(i + 1, -2);
            } else {
                v.add_eps_halves(spec.n - 1, 2);
                v.add_eps_halves(spec.n, 2);
            }
        }
    }
    Ok(v)
}

/// Classical fundamental weight at node i.
pub fn fundamental_weight(spec: DynkinSpec, i: usize) -> Result<EpsVector> {
    spec.check_node(i)?;
    let len = spec.eps_len();
    let mut v = EpsVector::zero(len);
    match spec.affine {
        AffineType::A => {
            for j in 1..=i {
                v.add_eps_halves(j, 2);
            }
        }
        AffineType::D => {
            if i <= spec.n - 2 {
                for j in 1..=i {
                    v.add_eps_halves(j, 2);
                }
            } else {
                // Spin weights: (eps_1 + ... + eps_{n-1} -+ eps_n) / 2.
                for j in 1..spec.n {
                    v.add_eps_halves(j, 1);
                }
                v.add_eps_halves(spec.n, if i == spec.n { 1 } else { -1 });
            }
        }
    }
    Ok(v)
}

/// Pairing <h_i, lambda>; errors when the result is not an integer.
pub fn coroot_pairing(spec: DynkinSpec, i: usize, lambda: &EpsVector) -> Result<i64> {
    spec.check_node(i)?;
    if lambda.halves.len() != spec.eps_len() {
        return Err(Error::Input(format!(
            "weight has {} coordinates, expected {}",
            lambda.halves.len(),
            spec.eps_len()
        )));
    }
    let h = &lambda.halves;
    let doubled = match spec.affine {
        AffineType::A => h[i - 1] - h[i],
        AffineType::D => {
            if i < spec.n {
                h[i - 1] - h[i]
            } else {
                h[spec.n - 2] + h[spec.n - 1]
            }
        }
    };
    if doubled % 2 != 0 {
        return Err(Error::Input(format!("pairing <h_{i}, .> is not integral")));
    }
    Ok(doubled / 2)
}
