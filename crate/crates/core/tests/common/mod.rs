//! Fixture constructors shared by the integration tests. Everything here
//! is hand-checked data: two worked D5 configurations with their printed
//! tensor products, the table of single-letter preimages, the phi_1 = 3
//! walkthrough, and the 8x7 filling.

#![allow(dead_code)]

use rigged_core::crystal_tableaux::{KRTableau, Letter, Path};
use rigged_core::rigged_config::{RiggedConfiguration, RiggedPartition};
use rigged_core::root_data::DynkinSpec;

pub fn d(n: usize) -> DynkinSpec {
    DynkinSpec::type_d(n)
}

pub fn a(n: usize) -> DynkinSpec {
    DynkinSpec::type_a(n)
}

pub fn rp(rows: &[(usize, i64)]) -> RiggedPartition {
    RiggedPartition::new(rows.to_vec()).unwrap()
}

pub fn rc(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    nu: &[&[(usize, i64)]],
) -> RiggedConfiguration {
    let nu = nu.iter().map(|rows| rp(rows)).collect();
    RiggedConfiguration::new(spec, shape.to_vec(), nu).unwrap()
}

pub fn path(spec: DynkinSpec, factors: &[&[Vec<i64>]]) -> Path {
    let factors = factors
        .iter()
        .map(|rows| KRTableau::from_rows(rows).unwrap())
        .collect();
    Path::new(spec, factors).unwrap()
}

/// A tensor power of B^{1,1}, leftmost letter first.
pub fn letter_path(spec: DynkinSpec, letters: &[i64]) -> Path {
    let factors = letters
        .iter()
        .map(|&v| KRTableau::from_rows(&[vec![v]]).unwrap())
        .collect();
    Path::new(spec, factors).unwrap()
}

/// Highest-weight configuration over B^{3,2}(x)B^{3,1}(x)B^{2,2}(x)B^{1,2}(x)B^{1,1}
/// of D5.
pub fn fix_a() -> RiggedConfiguration {
    rc(
        d(5),
        &[(3, 2), (3, 1), (2, 2), (1, 2), (1, 1)],
        &[
            &[(2, 0), (2, 0)],
            &[(3, 0), (2, 1), (1, 1)],
            &[(3, 0), (2, 0), (1, 0), (1, 0)],
            &[(2, 0), (1, 0)],
            &[(2, 1)],
        ],
    )
}

pub fn fix_a_path() -> Path {
    path(
        d(5),
        &[
            &[vec![1, 3], vec![2, -5], vec![4, 5]],
            &[vec![1], vec![4], vec![5]],
            &[vec![2, 1], vec![3, -1]],
            &[vec![1, 2]],
            &[vec![1]],
        ],
    )
}

/// Non-highest configuration over B^{2,2}(x)B^{3,2} of D5 whose peeling
/// letters start 3b, 1, 1b, 5.
pub fn fix_b() -> RiggedConfiguration {
    rc(
        d(5),
        &[(2, 2), (3, 2)],
        &[
            &[(4, -1)],
            &[(4, 1), (3, 1), (1, 0)],
            &[(5, -3), (3, -2), (3, -2), (1, 0)],
            &[(5, 0), (1, 0)],
            &[(3, 0), (2, -1)],
        ],
    )
}

pub fn fix_b_path() -> Path {
    path(
        d(5),
        &[
            &[vec![1, 5], vec![-3, -1]],
            &[vec![1, -5], vec![4, -3], vec![5, -1]],
        ],
    )
}

/// Image of the fix_b path under the combinatorial R matrix.
pub fn fix_b_r_path() -> Path {
    path(
        d(5),
        &[
            &[vec![1, 4], vec![5, -2], vec![-3, -1]],
            &[vec![2, -5], vec![5, -3]],
        ],
    )
}

/// Preimage of a single B^{1,1} letter in type D. Below the fork the
/// barred letters follow the generic two-string pattern; bar(n-1) instead
/// leaves one short string on each spin node.
pub fn single_letter_preimage(spec: DynkinSpec, b: Letter) -> RiggedConfiguration {
    let n = spec.n;
    let mut nu: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let v = b.0;
    if v > 0 {
        let i = v as usize;
        for a in 1..=n {
            if a + 1 < i {
                nu[a - 1].push((1, 0));
            } else if a + 1 == i {
                nu[a - 1].push((1, -1));
            }
        }
    } else if v == -(n as i64) {
        for a in 1..=n - 2 {
            nu[a - 1].push((1, 0));
        }
        nu[n - 1].push((1, -1));
    } else if v == -(n as i64 - 1) {
        for a in 1..=n - 3 {
            nu[a - 1].push((1, 0));
        }
        nu[n - 3].push((1, 1));
        nu[n - 2].push((1, -1));
        nu[n - 1].push((1, -1));
    } else {
        let i = (-v) as usize;
        for a in 1..=n {
            if a + 1 < i {
                nu[a - 1].push((1, 0));
            } else if a + 1 == i {
                nu[a - 1].push((1, 1));
            } else if a == i {
                nu[a - 1].extend([(1, -1), (1, -1)]);
            } else if a <= n - 2 {
                nu[a - 1].extend([(1, 0), (1, 0)]);
            } else {
                nu[a - 1].push((1, 0));
            }
        }
    }
    let nu: Vec<&[(usize, i64)]> = nu.iter().map(Vec::as_slice).collect();
    rc(spec, &[(1, 1)], &nu)
}

/// The (B^{1,1})^{(x)8} element of D5 with phi_1 = 3.
pub fn phi1_example_path() -> Path {
    letter_path(d(5), &[1, 2, 3, 1, 1, 2, 1, 1])
}

pub fn phi1_example_rc() -> RiggedConfiguration {
    rc(
        d(5),
        &[(1, 1); 8],
        &[&[(2, 2), (1, 1)], &[(1, 0)], &[], &[], &[]],
    )
}

/// fill of the highest element of B^{8,7} with classical weight
/// 2L2 + L4 + 2L6 + L8, rank at least 10.
pub fn filled_8x7_rows() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 1, 1, 1, 5, 1],
        vec![2, 2, 2, 2, 2, 6, 2],
        vec![3, 3, 3, 7, 5, 7, 3],
        vec![4, 4, 4, 8, 6, 8, 4],
        vec![5, 5, 5, -8, 7, -8, 5],
        vec![6, 6, 6, -7, 8, -7, 6],
        vec![7, -8, 7, -6, -8, -6, -6],
        vec![8, -7, 8, -5, -7, -5, -5],
    ]
}
