//! Rigged configurations: vacancy numbers, admissibility, the Kashiwara
//! operators on riggings, weights, and enumeration of highest weight and
//! arbitrary admissible configurations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::root_data::{
    cartan_entry, fundamental_weight, simple_root, AffineType, DynkinSpec, EpsVector,
};
use crate::{Dir, Error, Result};

/// Boxes of a plain partition in the first l columns: sum of min(l, part).
pub fn q_value(parts: &[usize], l: usize) -> i64 {
    parts.iter().map(|&p| p.min(l) as i64).sum()
}

/// A partition with one integer label (rigging) per row, kept sorted by
/// length descending, then rigging descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RiggedPartition {
    rows: Vec<(usize, i64)>,
}

impl RiggedPartition {
    pub fn new(mut rows: Vec<(usize, i64)>) -> Result<RiggedPartition> {
        if rows.iter().any(|&(l, _)| l == 0) {
            return Err(Error::input("rigged partition rows must have positive length"));
        }
        rows.sort_by(|a, b| b.cmp(a));
        Ok(RiggedPartition { rows })
    }

    pub fn empty() -> RiggedPartition {
        RiggedPartition::default()
    }

    /// Rows (length, rigging) in canonical order.
    pub fn rows(&self) -> &[(usize, i64)] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|&(l, _)| l).sum()
    }

    pub fn max_len(&self) -> usize {
        self.rows.first().map_or(0, |&(l, _)| l)
    }

    /// Multiplicity of rows of length l.
    pub fn m(&self, l: usize) -> usize {
        self.rows.iter().filter(|&&(len, _)| len == l).count()
    }

    /// Boxes in the first l columns.
    pub fn q(&self, l: usize) -> i64 {
        self.rows.iter().map(|&(len, _)| len.min(l) as i64).sum()
    }

    pub fn smallest_rigging(&self) -> Option<i64> {
        self.rows.iter().map(|&(_, rig)| rig).min()
    }
}

impl fmt::Display for RiggedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|&(l, rig)| format!("({l},{rig})"))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A rigged configuration against a fixed tensor shape; `nu[a-1]` is the
/// rigged partition at node a.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RiggedConfiguration {
    pub spec: DynkinSpec,
    /// Tensor factors (r_j, s_j), leftmost first.
    pub shape: Vec<(usize, usize)>,
    pub nu: Vec<RiggedPartition>,
}

impl RiggedConfiguration {
    pub fn new(
        spec: DynkinSpec,
        shape: Vec<(usize, usize)>,
        nu: Vec<RiggedPartition>,
    ) -> Result<RiggedConfiguration> {
        for &(r, s) in &shape {
            spec.check_node(r)?;
            if s == 0 {
                return Err(Error::input("factor width must be positive"));
            }
        }
        if nu.len() != spec.n {
            return Err(Error::input("need one rigged partition per node"));
        }
        Ok(RiggedConfiguration { spec, shape, nu })
    }

    pub fn empty(spec: DynkinSpec, shape: Vec<(usize, usize)>) -> Result<RiggedConfiguration> {
        let nu = vec![RiggedPartition::empty(); spec.n];
        RiggedConfiguration::new(spec, shape, nu)
    }

    pub fn nu(&self, a: usize) -> &RiggedPartition {
        &self.nu[a - 1]
    }

    /// Widths of the tensor factors sitting at node a, sorted descending.
    pub fn mu(&self, a: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .shape
            .iter()
            .filter(|&&(r, _)| r == a)
            .map(|&(_, s)| s)
            .collect();
        v.sort_unstable_by(|x, y| y.cmp(x));
        v
    }

    /// Vacancy number P^{(a)}_l.
    pub fn vacancy(&self, a: usize, l: usize) -> i64 {
        let mut p = q_value(&self.mu(a), l) - 2 * self.nu[a - 1].q(l);
        for b in self.spec.neighbors(a) {
            p += self.nu[b - 1].q(l);
        }
        p
    }

    /// One past every row and factor length; vacancies are constant beyond.
    fn stable_length(&self) -> usize {
        let nu_max = self.nu.iter().map(RiggedPartition::max_len).max().unwrap_or(0);
        let mu_max = self.shape.iter().map(|&(_, s)| s).max().unwrap_or(0);
        nu_max.max(mu_max) + 1
    }

    /// The limit P^{(a)}_infinity.
    pub fn vacancy_inf(&self, a: usize) -> i64 {
        self.vacancy(a, self.stable_length())
    }

    /// Every rigging at most its vacancy number.
    pub fn is_admissible(&self) -> bool {
        self.spec.nodes().all(|a| {
            self.nu[a - 1]
                .rows()
                .iter()
                .all(|&(l, rig)| rig <= self.vacancy(a, l))
        })
    }

    /// Every rigging within [0, vacancy]: a classically highest element.
    pub fn is_highest(&self) -> bool {
        self.spec.nodes().all(|a| {
            self.nu[a - 1]
                .rows()
                .iter()
                .all(|&(l, rig)| 0 <= rig && rig <= self.vacancy(a, l))
        })
    }
}

impl fmt::Display for RiggedConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nu
            .iter()
            .enumerate()
            .map(|(idx, p)| format!("{}:{}", idx + 1, p))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct RcWire {
    #[serde(rename = "type")]
    affine: AffineType,
    n: usize,
    shape: Vec<(usize, usize)>,
    nu: Vec<Vec<(usize, i64)>>,
}

impl Serialize for RiggedConfiguration {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RcWire {
            affine: self.spec.affine,
            n: self.spec.n,
            shape: self.shape.clone(),
            nu: self.nu.iter().map(|p| p.rows().to_vec()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RiggedConfiguration {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = RcWire::deserialize(de)?;
        let spec = DynkinSpec::new(w.affine, w.n).map_err(serde::de::Error::custom)?;
        let nu = w
            .nu
            .into_iter()
            .map(RiggedPartition::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RiggedConfiguration::new(spec, w.shape, nu).map_err(serde::de::Error::custom)
    }
}

/// Kashiwara operator on a rigged configuration. The moved string changes
/// length by one and rigging by minus one (F) or plus one (E); every other
/// string keeps its corigging (vacancy minus rigging) at every node.
pub fn rc_op(rc: &RiggedConfiguration, i: usize, dir: Dir) -> Option<RiggedConfiguration> {
    assert!(rc.spec.check_node(i).is_ok(), "node {i} out of range");
    let n = rc.spec.n;
    let a = i - 1;
    let rows_i = rc.nu[a].rows();
    let x_min = rows_i.iter().map(|&(_, rig)| rig).min();

    // The moved string: its index at node i (None when a row is created)
    // and its new form (None when a row vanishes).
    let (moved_idx, new_row): (Option<usize>, Option<(usize, i64)>) = match dir {
        Dir::F => match x_min {
            None => (None, Some((1, -1))),
            Some(x) if x > 0 => (None, Some((1, -1))),
            Some(x) => {
                // Maximal length among riggings equal to x: rows are sorted
                // by length descending, so the first hit is the longest.
                let idx = rows_i.iter().position(|&(_, rig)| rig == x).unwrap();
                (Some(idx), Some((rows_i[idx].0 + 1, x - 1)))
            }
        },
        Dir::E => match x_min {
            None => return None,
            Some(x) if x >= 0 => return None,
            Some(x) => {
                // Minimal length among riggings equal to x.
                let idx = rows_i.iter().rposition(|&(_, rig)| rig == x).unwrap();
                let (l, _) = rows_i[idx];
                (Some(idx), (l > 1).then(|| (l - 1, x + 1)))
            }
        },
    };

    let mut corig: Vec<Vec<i64>> = (0..n)
        .map(|b| {
            rc.nu[b]
                .rows()
                .iter()
                .map(|&(l, rig)| rc.vacancy(b + 1, l) - rig)
                .collect()
        })
        .collect();
    let mut kept: Vec<Vec<(usize, i64)>> = (0..n).map(|b| rc.nu[b].rows().to_vec()).collect();
    if let Some(idx) = moved_idx {
        kept[a].remove(idx);
        corig[a].remove(idx);
    }

    // Vacancies only read the row lengths, so a throwaway configuration
    // with the new shape computes them.
    let mut lengths = kept.clone();
    if let Some(nr) = new_row {
        lengths[a].push(nr);
    }
    let after = RiggedConfiguration {
        spec: rc.spec,
        shape: rc.shape.clone(),
        nu: lengths
            .into_iter()
            .map(|rows| RiggedPartition::new(rows).unwrap())
            .collect(),
    };

    let mut out = Vec::with_capacity(n);
    for b in 0..n {
        let mut rows: Vec<(usize, i64)> = kept[b]
            .iter()
            .zip(&corig[b])
            .map(|(&(l, _), &cg)| (l, after.vacancy(b + 1, l) - cg))
            .collect();
        if b == a {
            if let Some((l, rig)) = new_row {
                if dir == Dir::F && rig > after.vacancy(i, l) {
                    return None;
                }
                rows.push((l, rig));
            }
        }
        out.push(RiggedPartition::new(rows).unwrap());
    }
    Some(RiggedConfiguration { spec: rc.spec, shape: rc.shape.clone(), nu: out })
}

/// eps_i = -min(0, smallest rigging at node i).
pub fn rc_eps(rc: &RiggedConfiguration, i: usize) -> i64 {
    let s = rc.nu[i - 1].smallest_rigging().unwrap_or(0).min(0);
    -s
}

/// phi_i = P^{(i)}_infinity - min(0, smallest rigging at node i).
pub fn rc_phi(rc: &RiggedConfiguration, i: usize) -> i64 {
    let s = rc.nu[i - 1].smallest_rigging().unwrap_or(0).min(0);
    rc.vacancy_inf(i) - s
}

fn scaled(v: &EpsVector, k: i64) -> EpsVector {
    EpsVector { halves: v.halves.iter().map(|h| h * k).collect() }
}

/// Weight: sum of s * fundamental_weight(r) over the shape minus box counts
/// times simple roots.
pub fn rc_weight(rc: &RiggedConfiguration) -> EpsVector {
    let mut w = EpsVector::zero(rc.spec.eps_len());
    for &(r, s) in &rc.shape {
        let fw = fundamental_weight(rc.spec, r).expect("shape nodes are validated");
        w = w + scaled(&fw, s as i64);
    }
    for a in rc.spec.nodes() {
        let root = simple_root(rc.spec, a).expect("node range");
        w = w - scaled(&root, rc.nu[a - 1].size() as i64);
    }
    w
}

type Rat = Ratio<i128>;

// Upper bounds |nu^(a)| <= (A^{-1} m)_a for highest weight configurations:
// beyond them some vacancy at a row length would go negative. Solved
// exactly over the rationals.
fn cartan_inverse_bounds(spec: DynkinSpec, m: &[i64]) -> Vec<usize> {
    let n = spec.n;
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            (0..=n)
                .map(|c| {
                    if c == n {
                        Rat::from_integer(m[r] as i128)
                    } else {
                        Rat::from_integer(
                            cartan_entry(spec, r + 1, c + 1).expect("node range") as i128
                        )
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| aug[r][col] != Rat::from_integer(0))
            .expect("Cartan matrix is invertible");
        aug.swap(col, pivot);
        let lead = aug[col][col];
        for c in col..=n {
            aug[col][c] /= lead;
        }
        for r in 0..n {
            if r != col && aug[r][col] != Rat::from_integer(0) {
                let factor = aug[r][col];
                for c in col..=n {
                    let sub = factor * aug[col][c];
                    aug[r][c] -= sub;
                }
            }
        }
    }
    (0..n)
        .map(|r| {
            let x = aug[r][n].floor().to_integer();
            x.max(0) as usize
        })
        .collect()
}

// All partitions with at most `budget` boxes, parts positive, largest part
// first; generated in a fixed order.
fn partitions_up_to(budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for part in (1..=max_part.min(remaining)).rev() {
            cur.push(part);
            go(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    go(budget, budget, &mut cur, &mut out);
    out
}

// Weakly decreasing rigging vectors of the given length with entries in
// [0, top]; empty when top < 0 and the length is positive.
fn rigging_choices(len: usize, top: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(len: usize, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let mut v = max;
        while v >= 0 {
            cur.push(v);
            go(len, v, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    if len == 0 {
        out.push(Vec::new());
    } else if top >= 0 {
        go(len, top, &mut cur, &mut out);
    }
    out
}

/// All classically highest rigged configurations for the given shape.
pub fn enumerate_highest(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<RiggedConfiguration>> {
    let template = RiggedConfiguration::empty(spec, shape.to_vec())?;
    let n = spec.n;
    let m: Vec<i64> = (1..=n)
        .map(|a| shape.iter().filter(|&&(r, _)| r == a).map(|&(_, s)| s as i64).sum())
        .collect();
    let bounds = cartan_inverse_bounds(spec, &m);
    let node_partitions: Vec<Vec<Vec<usize>>> =
        bounds.iter().map(|&b| partitions_up_to(b)).collect();

    let mut out: Vec<RiggedConfiguration> = Vec::new();
    let mut stack: Vec<Vec<usize>> = Vec::with_capacity(n);
    fill_nodes(&template, &node_partitions, &mut stack, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn fill_nodes(
    template: &RiggedConfiguration,
    node_partitions: &[Vec<Vec<usize>>],
    stack: &mut Vec<Vec<usize>>,
    out: &mut Vec<RiggedConfiguration>,
    cap: usize,
) -> Result<()> {
    let n = template.spec.n;
    if stack.len() < n {
        for parts in &node_partitions[stack.len()] {
            stack.push(parts.clone());
            fill_nodes(template, node_partitions, stack, out, cap)?;
            stack.pop();
        }
        return Ok(());
    }
    // Shapes fixed; attach riggings when all vacancies admit them.
    let shaped = RiggedConfiguration {
        spec: template.spec,
        shape: template.shape.clone(),
        nu: stack
            .iter()
            .map(|parts| {
                RiggedPartition::new(parts.iter().map(|&l| (l, 0)).collect()).unwrap()
            })
            .collect(),
    };
    // Distinct lengths per node with multiplicity and vacancy.
    let mut groups: Vec<(usize, usize, usize, i64)> = Vec::new(); // (node, length, mult, vacancy)
    for a in 1..=n {
        let parts = &stack[a - 1];
        let mut idx = 0;
        while idx < parts.len() {
            let l = parts[idx];
            let mut j = idx;
            while j < parts.len() && parts[j] == l {
                j += 1;
            }
            let p = shaped.vacancy(a, l);
            if p < 0 {
                return Ok(()); // no highest config on this shape tuple
            }
            groups.push((a, l, j - idx, p));
            idx = j;
        }
    }
    let choices: Vec<Vec<Vec<i64>>> = groups
        .iter()
        .map(|&(_, _, mult, p)| rigging_choices(mult, p))
        .collect();
    let mut pick: Vec<usize> = vec![0; groups.len()];
    loop {
        let mut nu: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for (g, &(a, l, mult, _)) in groups.iter().enumerate() {
            let rigs = &choices[g][pick[g]];
            for k in 0..mult {
                nu[a - 1].push((l, rigs[k]));
            }
        }
        if out.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        out.push(RiggedConfiguration {
            spec: template.spec,
            shape: template.shape.clone(),
            nu: nu
                .into_iter()
                .map(|rows| RiggedPartition::new(rows).unwrap())
                .collect(),
        });
        // Advance the mixed-radix counter over rigging choices.
        let mut g = 0;
        loop {
            if g == groups.len() {
                return Ok(());
            }
            pick[g] += 1;
            if pick[g] < choices[g].len() {
                break;
            }
            pick[g] = 0;
            g += 1;
        }
    }
}

/// Closure of the highest weight configurations under both operators:
/// every admissible rigged configuration of the shape.
pub fn enumerate_all(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<RiggedConfiguration>> {
    let highest = enumerate_highest(spec, shape, cap)?;
    let mut seen: BTreeSet<RiggedConfiguration> = highest.iter().cloned().collect();
    let mut queue: VecDeque<RiggedConfiguration> = highest.into();
    while let Some(rc) = queue.pop_front() {
        for i in spec.nodes() {
            for dir in Dir::BOTH {
                if let Some(next) = rc_op(&rc, i, dir) {
                    if seen.insert(next.clone()) {
                        if seen.len() > cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::coroot_pairing;

    fn d(n: usize) -> DynkinSpec {
        DynkinSpec::type_d(n)
    }

    fn a(n: usize) -> DynkinSpec {
        DynkinSpec::type_a(n)
    }

    fn rp(rows: &[(usize, i64)]) -> RiggedPartition {
        RiggedPartition::new(rows.to_vec()).unwrap()
    }

    // Two tableau factors B^{3,2} (x) B^{3,1} (x) B^{2,2} (x) B^{1,2} (x) B^{1,1}
    // over D5 with a hand-checked vacancy table.
    fn sample_d5() -> RiggedConfiguration {
        RiggedConfiguration::new(
            d(5),
            vec![(3, 2), (3, 1), (2, 2), (1, 2), (1, 1)],
            vec![
                rp(&[(2, 0), (2, 0)]),
                rp(&[(3, 0), (2, 1), (1, 1)]),
                rp(&[(3, 0), (2, 0), (1, 0), (1, 0)]),
                rp(&[(2, 0), (1, 0)]),
                rp(&[(2, 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn q_value_counts_column_boxes() {
        assert_eq!(q_value(&[4, 2, 1], 0), 0);
        assert_eq!(q_value(&[4, 2, 1], 2), 5);
        assert_eq!(q_value(&[4, 2, 1], 10), 7);
        assert_eq!(q_value(&[], 3), 0);
    }

    #[test]
    fn rigged_partition_is_kept_canonical() {
        let p = rp(&[(1, 5), (3, -1), (3, 2), (2, 0)]);
        assert_eq!(p.rows(), &[(3, 2), (3, -1), (2, 0), (1, 5)]);
        assert_eq!(p.size(), 9);
        assert_eq!(p.m(3), 2);
        assert_eq!(p.q(2), 7);
        assert_eq!(p.smallest_rigging(), Some(-1));
        assert!(RiggedPartition::new(vec![(0, 1)]).is_err());
    }

    #[test]
    fn vacancy_on_the_d5_sample() {
        let rc = sample_d5();
        assert_eq!(rc.vacancy(2, 3), 1);
        assert!(rc.is_admissible());
        assert!(rc.is_highest());
    }

    #[test]
    fn admissible_but_not_highest() {
        let rc = RiggedConfiguration::new(
            d(5),
            vec![(2, 2), (3, 2)],
            vec![
                rp(&[(4, -1)]),
                rp(&[(4, 1), (3, 1), (1, 0)]),
                rp(&[(5, -3), (3, -2), (3, -2), (1, 0)]),
                rp(&[(5, 0), (1, 0)]),
                rp(&[(3, 0), (2, -1)]),
            ],
        )
        .unwrap();
        assert!(rc.is_admissible());
        assert!(!rc.is_highest());
    }

    #[test]
    fn rc_op_walks_the_known_f1_chain() {
        // Eight B^{1,1} factors over D5.
        let shape = vec![(1, 1); 8];
        let rc = RiggedConfiguration::new(
            d(5),
            shape,
            vec![
                rp(&[(2, 2), (1, 1)]),
                rp(&[(1, 0)]),
                rp(&[]),
                rp(&[]),
                rp(&[]),
            ],
        )
        .unwrap();
        assert_eq!(rc_eps(&rc, 1), 0);
        assert_eq!(rc_phi(&rc, 1), 3);

        let s1 = rc_op(&rc, 1, Dir::F).unwrap();
        assert_eq!(s1.nu[0], rp(&[(2, 0), (1, -1), (1, -1)]));
        assert_eq!(s1.nu[1], rp(&[(1, 1)]));
        let s2 = rc_op(&s1, 1, Dir::F).unwrap();
        assert_eq!(s2.nu[0], rp(&[(2, -2), (2, -2), (1, -1)]));
        assert_eq!(s2.nu[1], rp(&[(1, 1)]));
        let s3 = rc_op(&s2, 1, Dir::F).unwrap();
        assert_eq!(s3.nu[0], rp(&[(3, -3), (2, -2), (1, -1)]));
        assert_eq!(s3.nu[1], rp(&[(1, 1)]));
        assert!(rc_op(&s3, 1, Dir::F).is_none());

        // E inverts every step, and eps/phi step accordingly.
        assert_eq!(rc_op(&s3, 1, Dir::E).unwrap(), s2);
        assert_eq!(rc_op(&s2, 1, Dir::E).unwrap(), s1);
        assert_eq!(rc_op(&s1, 1, Dir::E).unwrap(), rc);
        assert_eq!(rc_eps(&s3, 1), 3);
        assert_eq!(rc_phi(&s3, 1), 0);

        // Weights move by the simple root.
        let alpha1 = simple_root(d(5), 1).unwrap();
        assert_eq!(rc_weight(&s1), rc_weight(&rc) - alpha1);
    }

    #[test]
    fn rc_op_nulls() {
        let empty = RiggedConfiguration::empty(a(2), vec![(2, 1)]).unwrap();
        assert!(rc_op(&empty, 1, Dir::E).is_none());
        // Adding a string at node 1 would need vacancy >= -1 there, but
        // P^{(1)}_1 = -2 with only a node-2 factor.
        assert!(rc_op(&empty, 1, Dir::F).is_none());
        assert!(rc_op(&empty, 2, Dir::F).is_some());
    }

    #[test]
    fn rc_weight_pairs_with_phi_minus_eps() {
        let rc = sample_d5();
        let w = rc_weight(&rc);
        for i in 1..=5 {
            assert_eq!(
                coroot_pairing(d(5), i, &w).unwrap(),
                rc_phi(&rc, i) - rc_eps(&rc, i),
                "node {i}"
            );
        }
    }

    #[test]
    fn highest_counts_match_small_decompositions() {
        // D4: B (x) B decomposes with three highest elements.
        let shape = vec![(1, 1), (1, 1)];
        let hw = enumerate_highest(d(4), &shape, 1000).unwrap();
        assert_eq!(hw.len(), 3);
        assert!(hw.iter().all(RiggedConfiguration::is_highest));
        // A2: two highest elements.
        let hw = enumerate_highest(a(2), &shape, 1000).unwrap();
        assert_eq!(hw.len(), 2);
    }

    #[test]
    fn enumerate_all_matches_crystal_sizes() {
        assert_eq!(enumerate_all(d(4), &[(1, 1)], 1000).unwrap().len(), 8);
        assert_eq!(enumerate_all(a(2), &[(1, 1)], 1000).unwrap().len(), 3);
        assert!(matches!(
            enumerate_all(d(4), &[(1, 1)], 5),
            Err(Error::CapExceeded(5))
        ));
    }

    #[test]
    fn rc_json_round_trip() {
        let rc = sample_d5();
        let json = serde_json::to_string(&rc).unwrap();
        let back: RiggedConfiguration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rc);
        assert!(json.contains("\"shape\":[[3,2],[3,1],[2,2],[1,2],[1,1]]"));
        assert!(json.contains("\"type\":\"D\""));
    }
}
