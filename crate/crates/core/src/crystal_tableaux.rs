//! Crystal elements realized as KR tableaux and spin sign vectors, the
//! Kashiwara operators via the signature rule, the filling map, the
//! left-hat/left-box/left-split operations, and closure enumeration of
//! the crystals B^{r,s}.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::root_data::{AffineType, DynkinSpec, EpsVector};
use crate::{Dir, Error, Result};

/// Default cap for closure enumerations.
pub const DEFAULT_CAP: usize = 1_000_000;

/// One tableau letter: value +k encodes k, value -k encodes barred k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub i64);

impl Letter {
    pub fn barred(&self) -> bool {
        self.0 < 0
    }

    pub fn index(&self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn check(&self, spec: DynkinSpec) -> Result<()> {
        let ok = match spec.affine {
            AffineType::A => self.0 >= 1 && self.0 <= spec.n as i64 + 1,
            AffineType::D => self.0 != 0 && self.index() <= spec.n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!("letter {} invalid for {}", self, spec)))
        }
    }

    /// Rank in the column order 1 < 2 < ... < n-1 < {n, barred n} < barred(n-1)
    /// < ... < barred 1; n and barred n share a class (type D).
    pub fn order_class(&self, spec: DynkinSpec) -> i64 {
        match spec.affine {
            AffineType::A => self.0,
            AffineType::D => {
                if self.0 > 0 {
                    self.0
                } else {
                    2 * spec.n as i64 + self.0
                }
            }
        }
    }

    /// Weight of the letter as a B^{1,1} element.
    pub fn weight(&self, spec: DynkinSpec) -> EpsVector {
        let mut v = EpsVector::zero(spec.eps_len());
        v.add_eps_halves(self.index(), if self.barred() { -2 } else { 2 });
        v
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred() {
            write!(f, "{}b", self.index())
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Arrow x --i--> y of the B^{1,1} crystal graph, follow (F) or reverse (E).
pub fn b11_op(spec: DynkinSpec, x: Letter, i: usize, dir: Dir) -> Option<Letter> {
    assert!(spec.check_node(i).is_ok(), "node {i} out of range");
    match dir {
        Dir::F => b11_f(spec, x, i),
        Dir::E => b11_e(spec, x, i),
    }
}

fn b11_f(spec: DynkinSpec, x: Letter, i: usize) -> Option<Letter> {
    let n = spec.n as i64;
    let i = i as i64;
    let v = x.0;
    match spec.affine {
        AffineType::A => (v == i).then_some(Letter(i + 1)),
        AffineType::D => {
            if i <= n - 2 {
                if v == i {
                    Some(Letter(i + 1))
                } else if v == -(i + 1) {
                    Some(Letter(-i))
                } else {
                    None
                }
            } else if i == n - 1 {
                if v == n - 1 {
                    Some(Letter(n))
                } else if v == -n {
                    Some(Letter(-(n - 1)))
                } else {
                    None
                }
            } else {
                // i == n: the fork n-1 -> barred n and n -> barred(n-1).
                if v == n - 1 {
                    Some(Letter(-n))
                } else if v == n {
                    Some(Letter(-(n - 1)))
                } else {
                    None
                }
            }
        }
    }
}

fn b11_e(spec: DynkinSpec, x: Letter, i: usize) -> Option<Letter> {
    let n = spec.n as i64;
    let i = i as i64;
    let v = x.0;
    match spec.affine {
        AffineType::A => (v == i + 1).then_some(Letter(i)),
        AffineType::D => {
            if i <= n - 2 {
                if v == i + 1 {
                    Some(Letter(i))
                } else if v == -i {
                    Some(Letter(-(i + 1)))
                } else {
                    None
                }
            } else if i == n - 1 {
                if v == n {
                    Some(Letter(n - 1))
                } else if v == -(n - 1) {
                    Some(Letter(-n))
                } else {
                    None
                }
            } else {
                if v == -n {
                    Some(Letter(n - 1))
                } else if v == -(n - 1) {
                    Some(Letter(n))
                } else {
                    None
                }
            }
        }
    }
}

/// Sign vector (s_1, ..., s_n) of a type D spin column; entries are +1/-1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinSigns(pub Vec<i8>);

impl SpinSigns {
    /// Highest weight column of B^{n,.}: all plus.
    pub fn plus_seed(n: usize) -> SpinSigns {
        SpinSigns(vec![1; n])
    }

    /// Highest weight column of B^{n-1,.}: all plus except the last sign.
    pub fn minus_last_seed(n: usize) -> SpinSigns {
        let mut v = vec![1; n];
        v[n - 1] = -1;
        SpinSigns(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }

    /// The column rendering: unbarred letters ascending, then barred letters.
    pub fn to_column(&self) -> Vec<Letter> {
        let n = self.n();
        let mut out: Vec<Letter> = (1..=n)
            .filter(|&j| self.0[j - 1] == 1)
            .map(|j| Letter(j as i64))
            .collect();
        let mut barred: Vec<Letter> = (1..=n)
            .rev()
            .filter(|&j| self.0[j - 1] == -1)
            .map(|j| Letter(-(j as i64)))
            .collect();
        out.append(&mut barred);
        out
    }

    /// Inverse of `to_column`: every index 1..=n must appear exactly once.
    pub fn from_column(col: &[Letter]) -> Result<SpinSigns> {
        let n = col.len();
        let mut signs = vec![0i8; n];
        for x in col {
            let j = x.index();
            if j == 0 || j > n || signs[j - 1] != 0 {
                return Err(Error::input("spin column must mention each index once"));
            }
            signs[j - 1] = if x.barred() { -1 } else { 1 };
        }
        Ok(SpinSigns(signs))
    }
}

/// Kashiwara operator on a single spin column.
pub fn spin_op(x: &SpinSigns, i: usize, dir: Dir) -> Option<SpinSigns> {
    let n = x.n();
    assert!(i >= 1 && i <= n, "node {i} out of range");
    let s = &x.0;
    let flip = |a: usize, b: usize, va: i8, vb: i8| -> Option<SpinSigns> {
        (s[a] == va && s[b] == vb).then(|| {
            let mut t = x.clone();
            t.0[a] = -va;
            t.0[b] = -vb;
            t
        })
    };
    match (dir, i == n) {
        (Dir::F, false) => flip(i - 1, i, 1, -1),
        (Dir::E, false) => flip(i - 1, i, -1, 1),
        (Dir::F, true) => flip(n - 2, n - 1, 1, 1),
        (Dir::E, true) => flip(n - 2, n - 1, -1, -1),
    }
}

/// Weight of a spin column: half the signed sum of the eps_i.
pub fn spin_weight(x: &SpinSigns) -> EpsVector {
    EpsVector { halves: x.0.iter().map(|&s| i64::from(s)).collect() }
}

/// Content of one tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorData {
    /// s columns of r letters each, top to bottom, leftmost column first.
    Cols(Vec<Vec<Letter>>),
    /// s sign vectors, leftmost column first (type D spin factors).
    Spin(Vec<SpinSigns>),
}

/// One element of B^{r,s} in the rectangular tableau presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KRTableau {
    pub r: usize,
    pub s: usize,
    pub data: FactorData,
}

impl KRTableau {
    pub fn from_cols(r: usize, s: usize, cols: Vec<Vec<Letter>>) -> Result<KRTableau> {
        if r == 0 || s == 0 {
            return Err(Error::input("tableau needs positive shape"));
        }
        if cols.len() != s || cols.iter().any(|c| c.len() != r) {
            return Err(Error::input("column data does not match the shape"));
        }
        Ok(KRTableau { r, s, data: FactorData::Cols(cols) })
    }

    /// Builds from rows of raw letter values; handy for literal fixtures.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<KRTableau> {
        let r = rows.len();
        let s = rows.first().map_or(0, Vec::len);
        if r == 0 || s == 0 || rows.iter().any(|row| row.len() != s) {
            return Err(Error::input("rows must be nonempty and rectangular"));
        }
        let cols = (0..s)
            .map(|j| (0..r).map(|i| Letter(rows[i][j])).collect())
            .collect();
        KRTableau::from_cols(r, s, cols)
    }

    /// A spin factor at node `r` (n-1 or n) from its sign vectors.
    pub fn spin(r: usize, vecs: Vec<SpinSigns>) -> Result<KRTableau> {
        let s = vecs.len();
        if s == 0 {
            return Err(Error::input("spin factor needs at least one column"));
        }
        let n = vecs[0].n();
        if vecs.iter().any(|v| v.n() != n) {
            return Err(Error::input("spin columns must share one rank"));
        }
        if r != n && r + 1 != n {
            return Err(Error::input("spin factor node must be n-1 or n"));
        }
        let want: i8 = if r == n { 1 } else { -1 };
        if vecs.iter().any(|v| v.product() != want) {
            return Err(Error::input("spin column parity does not match the node"));
        }
        Ok(KRTableau { r, s, data: FactorData::Spin(vecs) })
    }

    pub fn is_spin(&self) -> bool {
        matches!(self.data, FactorData::Spin(_))
    }

    /// Columns as letters; spin factors render their sign vectors.
    pub fn rendered_cols(&self) -> Vec<Vec<Letter>> {
        match &self.data {
            FactorData::Cols(cols) => cols.clone(),
            FactorData::Spin(vecs) => vecs.iter().map(SpinSigns::to_column).collect(),
        }
    }

    fn check(&self, spec: DynkinSpec) -> Result<()> {
        spec.check_node(self.r)?;
        match &self.data {
            FactorData::Cols(cols) => {
                if spec.is_spin_node(self.r) {
                    return Err(Error::Input(format!(
                        "B^{{{},s}} of {} is a spin crystal; use sign vectors",
                        self.r, spec
                    )));
                }
                if cols.len() != self.s || cols.iter().any(|c| c.len() != self.r) {
                    return Err(Error::input("column data does not match the shape"));
                }
                for c in cols {
                    for x in c {
                        x.check(spec)?;
                    }
                }
            }
            FactorData::Spin(vecs) => {
                if !spec.is_spin_node(self.r) {
                    return Err(Error::Input(format!(
                        "node {} of {} is not a spin node",
                        self.r, spec
                    )));
                }
                if vecs.len() != self.s || vecs.iter().any(|v| v.n() != spec.n) {
                    return Err(Error::input("sign vectors do not match the shape"));
                }
                let want: i8 = if self.r == spec.n { 1 } else { -1 };
                if vecs.iter().any(|v| v.product() != want) {
                    return Err(Error::input("spin column parity does not match the node"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for KRTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.rendered_cols();
        let height = cols.first().map_or(0, Vec::len);
        let rows: Vec<String> = (0..height)
            .map(|i| {
                cols.iter()
                    .map(|c| c[i].to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", rows.join("/"))
    }
}

/// A tensor product of KR tableaux; `factors[0]` is the leftmost factor,
/// the one peeled first by `lh`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub spec: DynkinSpec,
    pub factors: Vec<KRTableau>,
}

impl Path {
    pub fn new(spec: DynkinSpec, factors: Vec<KRTableau>) -> Result<Path> {
        for t in &factors {
            t.check(spec)?;
        }
        Ok(Path { spec, factors })
    }

    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|t| (t.r, t.s)).collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("(x)"))
    }
}

// Wire form {"r","s","cols","spin"} shared by serialization and the CLI.
#[derive(Serialize, Deserialize)]
struct TabWire {
    r: usize,
    s: usize,
    cols: Vec<Vec<i64>>,
    spin: bool,
}

impl From<&KRTableau> for TabWire {
    fn from(t: &KRTableau) -> TabWire {
        TabWire {
            r: t.r,
            s: t.s,
            cols: t
                .rendered_cols()
                .iter()
                .map(|c| c.iter().map(|x| x.0).collect())
                .collect(),
            spin: t.is_spin(),
        }
    }
}

impl TryFrom<TabWire> for KRTableau {
    type Error = Error;
    fn try_from(w: TabWire) -> Result<KRTableau> {
        let cols: Vec<Vec<Letter>> = w
            .cols
            .iter()
            .map(|c| c.iter().map(|&v| Letter(v)).collect())
            .collect();
        if w.spin {
            let vecs = cols
                .iter()
                .map(|c| SpinSigns::from_column(c))
                .collect::<Result<Vec<_>>>()?;
            KRTableau::spin(w.r, vecs)
        } else {
            KRTableau::from_cols(w.r, w.s, cols)
        }
    }
}

impl Serialize for KRTableau {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TabWire::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for KRTableau {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = TabWire::deserialize(de)?;
        KRTableau::try_from(w).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PathWire {
    #[serde(rename = "type")]
    affine: AffineType,
    n: usize,
    factors: Vec<TabWire>,
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PathWire {
            affine: self.spec.affine,
            n: self.spec.n,
            factors: self.factors.iter().map(TabWire::from).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = PathWire::deserialize(de)?;
        let spec = DynkinSpec::new(w.affine, w.n).map_err(serde::de::Error::custom)?;
        let factors = w
            .factors
            .into_iter()
            .map(KRTableau::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Path::new(spec, factors).map_err(serde::de::Error::custom)
    }
}

/// Japanese reading word: columns right to left, each top to bottom.
/// Lists t_1 first; the tensor embedding is t_N (x) ... (x) t_1.
pub fn reading_word(t: &KRTableau) -> Result<Vec<Letter>> {
    match &t.data {
        FactorData::Cols(cols) => Ok(cols.iter().rev().flatten().copied().collect()),
        FactorData::Spin(_) => Err(Error::input("spin tableaux have no reading word; use spin_op")),
    }
}

/// One letter or spin column inside a path, in tensor order (leftmost first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AtomLoc {
    Cell { factor: usize, col: usize, row: usize },
    SpinCol { factor: usize, col: usize },
}

/// Atoms in tensor order: per factor, columns left to right; inside a
/// letter column bottom to top (the reading word embedding reversed).
fn path_atoms(p: &Path) -> Vec<AtomLoc> {
    let mut out = Vec::new();
    for (fi, t) in p.factors.iter().enumerate() {
        match &t.data {
            FactorData::Cols(_) => {
                for col in 0..t.s {
                    for row in (0..t.r).rev() {
                        out.push(AtomLoc::Cell { factor: fi, col, row });
                    }
                }
            }
            FactorData::Spin(_) => {
                for col in 0..t.s {
                    out.push(AtomLoc::SpinCol { factor: fi, col });
                }
            }
        }
    }
    out
}

// Each atom contributes at most one signature symbol per color: + when f
// moves it, - when e moves it (phi and eps are 0/1 and never both 1).
fn atom_symbol(p: &Path, loc: AtomLoc, i: usize) -> Option<bool> {
    match loc {
        AtomLoc::Cell { factor, col, row } => {
            let x = match &p.factors[factor].data {
                FactorData::Cols(cols) => cols[col][row],
                FactorData::Spin(_) => unreachable!(),
            };
            if b11_f(p.spec, x, i).is_some() {
                Some(true)
            } else if b11_e(p.spec, x, i).is_some() {
                Some(false)
            } else {
                None
            }
        }
        AtomLoc::SpinCol { factor, col } => {
            let v = match &p.factors[factor].data {
                FactorData::Spin(vecs) => &vecs[col],
                FactorData::Cols(_) => unreachable!(),
            };
            if spin_op(v, i, Dir::F).is_some() {
                Some(true)
            } else if spin_op(v, i, Dir::E).is_some() {
                Some(false)
            } else {
                None
            }
        }
    }
}

/// Reduced i-signature of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSignature {
    pub phi: usize,
    pub eps: usize,
    /// Factor owning the leftmost surviving minus (where e acts).
    pub e_pos: Option<usize>,
    /// Factor owning the rightmost surviving plus (where f acts).
    pub f_pos: Option<usize>,
}

fn signature_atoms(p: &Path, i: usize) -> (PathSignature, Option<AtomLoc>, Option<AtomLoc>) {
    assert!(p.spec.check_node(i).is_ok(), "node {i} out of range");
    // Stack reduction of the word of + and - symbols; a minus directly
    // followed by a plus cancels, so the stack is always of shape +...+-...-.
    let mut stack: Vec<(bool, AtomLoc)> = Vec::new();
    for loc in path_atoms(p) {
        match atom_symbol(p, loc, i) {
            Some(true) => {
                if stack.last().is_some_and(|&(plus, _)| !plus) {
                    stack.pop();
                } else {
                    stack.push((true, loc));
                }
            }
            Some(false) => stack.push((false, loc)),
            None => {}
        }
    }
    let phi = stack.iter().filter(|&&(plus, _)| plus).count();
    let eps = stack.len() - phi;
    let f_at = if phi > 0 { Some(stack[phi - 1].1) } else { None };
    let e_at = if eps > 0 { Some(stack[phi].1) } else { None };
    let factor_of = |loc: AtomLoc| match loc {
        AtomLoc::Cell { factor, .. } | AtomLoc::SpinCol { factor, .. } => factor,
    };
    let sig = PathSignature {
        phi,
        eps,
        e_pos: e_at.map(factor_of),
        f_pos: f_at.map(factor_of),
    };
    (sig, e_at, f_at)
}

/// phi, eps, and the acting factors for color i by the signature rule.
pub fn path_signature(p: &Path, i: usize) -> PathSignature {
    signature_atoms(p, i).0
}

/// Kashiwara operator on a path; the changed letter or sign vector is
/// written back at its cell.
pub fn path_op(p: &Path, i: usize, dir: Dir) -> Option<Path> {
    let (_, e_at, f_at) = signature_atoms(p, i);
    let loc = match dir {
        Dir::E => e_at?,
        Dir::F => f_at?,
    };
    let mut q = p.clone();
    match loc {
        AtomLoc::Cell { factor, col, row } => {
            let FactorData::Cols(cols) = &mut q.factors[factor].data else { unreachable!() };
            let x = cols[col][row];
            cols[col][row] = b11_op(p.spec, x, i, dir).expect("signature guarantees the arrow");
        }
        AtomLoc::SpinCol { factor, col } => {
            let FactorData::Spin(vecs) = &mut q.factors[factor].data else { unreachable!() };
            vecs[col] = spin_op(&vecs[col], i, dir).expect("signature guarantees the arrow");
        }
    }
    Some(q)
}

/// Kashiwara operator on a single tableau.
pub fn tableau_op(spec: DynkinSpec, t: &KRTableau, i: usize, dir: Dir) -> Option<KRTableau> {
    let p = Path { spec, factors: vec![t.clone()] };
    path_op(&p, i, dir).map(|mut q| q.factors.pop().unwrap())
}

pub fn tableau_weight(spec: DynkinSpec, t: &KRTableau) -> EpsVector {
    let mut w = EpsVector::zero(spec.eps_len());
    match &t.data {
        FactorData::Cols(cols) => {
            for c in cols {
                for x in c {
                    w = w + x.weight(spec);
                }
            }
        }
        FactorData::Spin(vecs) => {
            for v in vecs {
                w = w + spin_weight(v);
            }
        }
    }
    w
}

pub fn path_weight(p: &Path) -> EpsVector {
    let mut w = EpsVector::zero(p.spec.eps_len());
    for t in &p.factors {
        w = w + tableau_weight(p.spec, t);
    }
    w
}

/// One classical component of B^{r,s}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalComponent {
    /// Partition shape (row lengths) of the classical highest weight.
    Partition(Vec<usize>),
    /// width * fundamental_weight(node), for the type D spin nodes.
    SpinWeight { node: usize, width: usize },
}

/// Classical decomposition of B^{r,s}: type A and the type D spin nodes are
/// irreducible; otherwise all shapes reachable from (s^r) by removing
/// vertical dominoes.
pub fn classical_decomposition(
    spec: DynkinSpec,
    r: usize,
    s: usize,
) -> Result<Vec<ClassicalComponent>> {
    spec.check_node(r)?;
    if s == 0 {
        return Err(Error::input("width must be positive"));
    }
    match spec.affine {
        AffineType::A => Ok(vec![ClassicalComponent::Partition(vec![s; r])]),
        AffineType::D => {
            if spec.is_spin_node(r) {
                return Ok(vec![ClassicalComponent::SpinWeight { node: r, width: s }]);
            }
            // Column heights h_1 >= ... >= h_s with h_j == r (mod 2); every
            // such vector is reachable by vertical domino removals.
            let mut shapes = Vec::new();
            let mut heights = vec![0usize; s];
            collect_heights(&mut heights, 0, r, r, &mut shapes);
            shapes.sort_by(|a, b| {
                let (sa, sb) = (a.iter().sum::<usize>(), b.iter().sum::<usize>());
                sb.cmp(&sa).then(b.cmp(a))
            });
            Ok(shapes.into_iter().map(ClassicalComponent::Partition).collect())
        }
    }
}

fn collect_heights(
    heights: &mut Vec<usize>,
    pos: usize,
    max_h: usize,
    r: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if pos == heights.len() {
        // Row lengths from column heights.
        let lam: Vec<usize> = (1..=r)
            .map(|i| heights.iter().filter(|&&h| h >= i).count())
            .take_while(|&len| len > 0)
            .collect();
        out.push(lam);
        return;
    }
    let mut h = max_h as i64;
    while h >= 0 {
        heights[pos] = h as usize;
        collect_heights(heights, pos + 1, h as usize, r, out);
        h -= 2;
    }
}

/// The filling map: completes the KN tableau of the classically highest
/// element of shape lambda to a full r x s rectangle.
pub fn fill(spec: DynkinSpec, lambda: &[usize], r: usize, s: usize) -> Result<KRTableau> {
    spec.check_node(r)?;
    if s == 0 {
        return Err(Error::input("width must be positive"));
    }
    let lam: Vec<usize> = lambda.iter().copied().take_while(|&x| x > 0).collect();
    if lambda[lam.len()..].iter().any(|&x| x != 0) {
        return Err(Error::input("lambda is not a partition"));
    }
    if lam.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::input("lambda is not a partition"));
    }
    if lam.len() > r || lam.first().copied().unwrap_or(0) > s {
        return Err(Error::input("lambda does not fit in the rectangle"));
    }
    if spec.affine == AffineType::A {
        if lam != vec![s; r] {
            return Err(Error::input("type A admits only the full rectangle"));
        }
        let cols = vec![(1..=r as i64).map(Letter).collect(); s];
        return KRTableau::from_cols(r, s, cols);
    }
    if r > spec.n - 2 {
        return Err(Error::input("filling is defined for r <= n-2; spin nodes use sign vectors"));
    }

    // Column heights of lambda, padded with empty columns to width s.
    let heights: Vec<usize> = (1..=s)
        .map(|j| lam.iter().filter(|&&x| x >= j).count())
        .collect();
    if heights.iter().any(|&h| (r - h) % 2 != 0) {
        return Err(Error::input("lambda is not in the classical decomposition"));
    }

    // Multiplicities k_h and the break height c: the first odd count among
    // k_{r-2}, k_{r-4}, ...
    let mut counts = vec![0usize; r + 1];
    for &h in &heights {
        counts[h] += 1;
    }
    let mut c: Option<usize> = None;
    let mut probe = r as i64 - 2;
    while probe >= 0 {
        if counts[probe as usize] % 2 == 1 {
            c = Some(probe as usize);
            break;
        }
        probe -= 2;
    }

    // Cells are built on an explicit column list; orig_h remembers the KN
    // height of each column while cells grow.
    let mut cols: Vec<Vec<i64>> = heights.iter().map(|&h| (1..=h as i64).collect()).collect();
    let mut orig_h = heights;

    // Step 1: drop the rightmost height-c column and open an empty column
    // at the far right.
    let e_col = if let Some(cv) = c {
        let pos = cols.iter().rposition(|col| col.len() == cv).expect("odd count");
        cols.remove(pos);
        orig_h.remove(pos);
        cols.push(Vec::new());
        orig_h.push(0);
        Some(cols.len() - 1)
    } else {
        None
    };

    // Step 2: pair equal-height runs of height at least c; the left column
    // of a pair gets barred letters, the right one the plain continuation.
    let lower = c.unwrap_or(0);
    let limit = e_col.unwrap_or(cols.len());
    let mut j = 0;
    while j < limit {
        let h = orig_h[j];
        let mut k = j;
        while k < limit && orig_h[k] == h {
            k += 1;
        }
        if h >= lower && h < r {
            debug_assert_eq!((k - j) % 2, 0, "equal-height run must pair up");
            let mut p = j;
            while p + 1 < k {
                for v in ((h as i64 + 1)..=(r as i64)).rev() {
                    cols[p].push(-v);
                }
                for v in (h as i64 + 1)..=(r as i64) {
                    cols[p + 1].push(v);
                }
                p += 2;
            }
        }
        j = k;
    }

    // Steps 3 and 4: filler strips through the leftover short columns, then
    // the rightmost column pattern 1..y, barred y..x.
    if let Some(cv) = c {
        let e = e_col.unwrap();
        let mut x = cv + 1;
        for j in 0..e {
            let h = orig_h[j];
            if h >= cv {
                continue;
            }
            let y = r - x + h + 2;
            debug_assert!(y >= 1 && y <= r && x <= r);
            for v in (y as i64)..=(r as i64) {
                cols[j].push(v);
            }
            for v in ((x as i64)..=(r as i64)).rev() {
                cols[j].push(-v);
            }
            debug_assert_eq!(cols[j].len(), r);
            x = y;
        }
        debug_assert_eq!((r + x - 1) % 2, 0, "parity keeps the last column integral");
        let y = (r + x - 1) / 2;
        for v in 1..=(y as i64) {
            cols[e].push(v);
        }
        for v in ((x as i64)..=(y as i64)).rev() {
            cols[e].push(-v);
        }
        debug_assert_eq!(cols[e].len(), r);
    }

    let cols = cols
        .into_iter()
        .map(|c| c.into_iter().map(Letter).collect())
        .collect();
    KRTableau::from_cols(r, s, cols)
}

/// All elements of B^{r,s} by operator closure from the classically highest
/// seeds; errors when the set would exceed `cap`.
pub fn kr_elements(spec: DynkinSpec, r: usize, s: usize, cap: usize) -> Result<Vec<KRTableau>> {
    let mut seeds = Vec::new();
    for comp in classical_decomposition(spec, r, s)? {
        match comp {
            ClassicalComponent::Partition(lam) => seeds.push(fill(spec, &lam, r, s)?),
            ClassicalComponent::SpinWeight { node, width } => {
                let seed = if node == spec.n {
                    SpinSigns::plus_seed(spec.n)
                } else {
                    SpinSigns::minus_last_seed(spec.n)
                };
                seeds.push(KRTableau::spin(node, vec![seed; width])?);
            }
        }
    }
    let mut seen: BTreeSet<KRTableau> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<KRTableau> = seeds.into();
    while let Some(t) = queue.pop_front() {
        for i in 1..=spec.n {
            for dir in Dir::BOTH {
                if let Some(u) = tableau_op(spec, &t, i, dir) {
                    if seen.insert(u.clone()) {
                        if seen.len() > cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Drops the leftmost factor, which must be B^{1,1}.
pub fn lh(p: &Path) -> Result<Path> {
    let first = p.factors.first().ok_or_else(|| Error::input("empty path"))?;
    if first.is_spin() || (first.r, first.s) != (1, 1) {
        return Err(Error::input("lh needs a leftmost B^{1,1} factor"));
    }
    Ok(Path { spec: p.spec, factors: p.factors[1..].to_vec() })
}

/// Splits the bottom cell off the leftmost column factor B^{r,1}, r > 1.
pub fn lb(p: &Path) -> Result<Path> {
    let first = p.factors.first().ok_or_else(|| Error::input("empty path"))?;
    if first.is_spin() || first.s != 1 || first.r < 2 {
        return Err(Error::input("lb needs a leftmost letter column B^{r,1}, r > 1"));
    }
    let FactorData::Cols(cols) = &first.data else { unreachable!() };
    let col = &cols[0];
    let bottom = col[first.r - 1];
    let mut factors = vec![
        KRTableau::from_cols(1, 1, vec![vec![bottom]])?,
        KRTableau::from_cols(first.r - 1, 1, vec![col[..first.r - 1].to_vec()])?,
    ];
    factors.extend_from_slice(&p.factors[1..]);
    Ok(Path { spec: p.spec, factors })
}

/// Detaches the leftmost column of the leftmost factor (width > 1).
pub fn ls(p: &Path) -> Result<Path> {
    let first = p.factors.first().ok_or_else(|| Error::input("empty path"))?;
    if first.s < 2 {
        return Err(Error::input("ls needs a leftmost factor of width > 1"));
    }
    let (head, rest) = match &first.data {
        FactorData::Cols(cols) => (
            KRTableau::from_cols(first.r, 1, vec![cols[0].clone()])?,
            KRTableau::from_cols(first.r, first.s - 1, cols[1..].to_vec())?,
        ),
        FactorData::Spin(vecs) => (
            KRTableau::spin(first.r, vec![vecs[0].clone()])?,
            KRTableau::spin(first.r, vecs[1..].to_vec())?,
        ),
    };
    let mut factors = vec![head, rest];
    factors.extend_from_slice(&p.factors[1..]);
    Ok(Path { spec: p.spec, factors })
}
