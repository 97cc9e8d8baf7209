//! Exhaustive verification suites: commutation of the bijection with the
//! Kashiwara operators, the crystal axioms in both realizations,
//! bijectivity, convexity of the vacancy numbers, and the combinatorial R
//! matrix. Each suite walks every element of the relevant finite set and
//! returns a report rather than panicking.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bijection::{beta, combinatorial_r, delta, gamma, phi, phi_inv};
use crate::crystal_tableaux::{
    kr_elements, lb, lh, ls, path_op, path_signature, path_weight, FactorData, KRTableau, Path,
};
use crate::rigged_config::{
    enumerate_all, rc_eps, rc_op, rc_phi, rc_weight, RiggedConfiguration,
};
use crate::root_data::{coroot_pairing, simple_root, DynkinSpec, EpsVector};
use crate::{Dir, Result};

/// One mismatch: the offending input and the two sides that should agree,
/// all in wire format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one verification suite over one tensor product shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub spec: DynkinSpec,
    pub shape: Vec<(usize, usize)>,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn shape_string(shape: &[(usize, usize)]) -> String {
    shape
        .iter()
        .map(|&(r, s)| format!("{r},{s}"))
        .collect::<Vec<_>>()
        .join(":")
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} instances, ",
            self.suite,
            self.spec,
            shape_string(&self.shape),
            self.checked
        )?;
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{} FAILURES", self.failures.len())
        }
    }
}

fn op_name(dir: Dir) -> &'static str {
    match dir {
        Dir::E => "e",
        Dir::F => "f",
    }
}

fn json_of<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("wire types serialize")
}

fn opt_json<T: Serialize>(x: &Option<T>) -> String {
    match x {
        Some(v) => json_of(v),
        None => "null".to_string(),
    }
}

fn result_json<T: Serialize>(x: &Result<T>) -> String {
    match x {
        Ok(v) => json_of(v),
        Err(e) => format!("error: {e}"),
    }
}

/// Every element of the tensor product, leftmost factor first, in a fixed
/// sorted order.
pub fn tensor_elements(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<Path>> {
    let per: Vec<Vec<KRTableau>> = shape
        .iter()
        .map(|&(r, s)| kr_elements(spec, r, s, cap))
        .collect::<Result<_>>()?;
    let mut total: usize = 1;
    for set in &per {
        total = total
            .checked_mul(set.len())
            .filter(|&t| t <= cap)
            .ok_or(crate::Error::CapExceeded(cap))?;
    }
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; per.len()];
    loop {
        let factors: Vec<KRTableau> = idx.iter().zip(&per).map(|(&i, set)| set[i].clone()).collect();
        out.push(Path::new(spec, factors)?);
        let mut k = per.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The bijection intertwines every classical Kashiwara operator on rigged
/// configurations with the signature-rule operator on tensor products, and
/// matches the left-hat, left-split, and left-box maps on the head factor.
pub fn check_commutativity(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<SuiteReport> {
    let rcs = enumerate_all(spec, shape, cap)?;
    let mut failures = Vec::new();
    for rc in &rcs {
        let rc_json = json_of(rc);
        let p = match phi(rc) {
            Ok(p) => p,
            Err(e) => {
                failures.push(Failure {
                    input: rc_json,
                    expected: "a tensor product element".into(),
                    got: format!("error: {e}"),
                });
                continue;
            }
        };
        for i in spec.nodes() {
            for dir in Dir::BOTH {
                let input = json!({ "rc": rc, "node": i, "op": op_name(dir) }).to_string();
                let rc2 = rc_op(rc, i, dir);
                let p2 = path_op(&p, i, dir);
                let mapped = match &rc2 {
                    None => None,
                    Some(r2) => match phi(r2) {
                        Ok(m) => Some(m),
                        Err(e) => {
                            failures.push(Failure {
                                input,
                                expected: opt_json(&p2),
                                got: format!("error: {e}"),
                            });
                            continue;
                        }
                    },
                };
                if mapped != p2 {
                    failures.push(Failure {
                        input,
                        expected: opt_json(&p2),
                        got: opt_json(&mapped),
                    });
                }
            }
        }

        // Head-factor squares.
        let (r, s) = rc.shape[0];
        if (r, s) == (1, 1) {
            match (delta(rc), lh(&p)) {
                (Ok(out), Ok(rest)) => {
                    let first = match &p.factors[0].data {
                        FactorData::Cols(cols) => cols[0][0],
                        FactorData::Spin(_) => unreachable!(),
                    };
                    if out.letter != first {
                        failures.push(Failure {
                            input: rc_json.clone(),
                            expected: json_of(&first),
                            got: json_of(&out.letter),
                        });
                    }
                    match phi(&out.rc_after) {
                        Ok(m) if m == rest => {}
                        Ok(m) => failures.push(Failure {
                            input: rc_json.clone(),
                            expected: json_of(&rest),
                            got: json_of(&m),
                        }),
                        Err(e) => failures.push(Failure {
                            input: rc_json.clone(),
                            expected: json_of(&rest),
                            got: format!("error: {e}"),
                        }),
                    }
                }
                (delta_res, lh_res) => failures.push(Failure {
                    input: rc_json.clone(),
                    expected: format!("lh: {:?}", lh_res.map(|x| json_of(&x))),
                    got: format!("delta: {:?}", delta_res.map(|x| json_of(&x.letter))),
                }),
            }
        }
        if s >= 2 {
            let left = ls(&p);
            let right = gamma(rc).and_then(|g| phi(&g));
            if !matches!((&left, &right), (Ok(l), Ok(r)) if l == r) {
                failures.push(Failure {
                    input: rc_json.clone(),
                    expected: result_json(&left),
                    got: result_json(&right),
                });
            }
        }
        if s == 1 && r >= 2 && !spec.is_spin_node(r) {
            let left = lb(&p);
            let right = beta(rc).and_then(|b| phi(&b));
            if !matches!((&left, &right), (Ok(l), Ok(r)) if l == r) {
                failures.push(Failure {
                    input: rc_json.clone(),
                    expected: result_json(&left),
                    got: result_json(&right),
                });
            }
        }
    }
    Ok(SuiteReport {
        suite: "commutativity".into(),
        spec,
        shape: shape.to_vec(),
        checked: rcs.len(),
        failures,
    })
}

// Shared axiom battery over one element in either realization.
struct AxiomSide<'a, T> {
    label: &'a str,
    weight: &'a dyn Fn(&T) -> EpsVector,
    eps: &'a dyn Fn(&T, usize) -> i64,
    phi: &'a dyn Fn(&T, usize) -> i64,
    op: &'a dyn Fn(&T, usize, Dir) -> Option<T>,
}

fn axioms_on<T: Serialize + PartialEq>(
    spec: DynkinSpec,
    x: &T,
    side: &AxiomSide<T>,
    failures: &mut Vec<Failure>,
) {
    let wt = (side.weight)(x);
    for i in spec.nodes() {
        let ctx = |what: &str| {
            json!({ "element": x, "node": i, "realization": side.label, "check": what })
                .to_string()
        };
        let eps = (side.eps)(x, i);
        let phi_v = (side.phi)(x, i);
        match coroot_pairing(spec, i, &wt) {
            Ok(pair) => {
                if pair != phi_v - eps {
                    failures.push(Failure {
                        input: ctx("pairing"),
                        expected: format!("{}", phi_v - eps),
                        got: format!("{pair}"),
                    });
                }
            }
            Err(e) => failures.push(Failure {
                input: ctx("pairing"),
                expected: "an integer pairing".into(),
                got: format!("error: {e}"),
            }),
        }
        let alpha = simple_root(spec, i).expect("node is in range");
        for dir in Dir::BOTH {
            let next = (side.op)(x, i, dir);
            if let Some(ref y) = next {
                let want_wt = match dir {
                    Dir::E => wt.clone() + alpha.clone(),
                    Dir::F => wt.clone() - alpha.clone(),
                };
                if (side.weight)(y) != want_wt {
                    failures.push(Failure {
                        input: ctx("weight drift"),
                        expected: format!("{want_wt:?}"),
                        got: format!("{:?}", (side.weight)(y)),
                    });
                }
                let (de, dp) = match dir {
                    Dir::E => (-1, 1),
                    Dir::F => (1, -1),
                };
                if (side.eps)(y, i) != eps + de || (side.phi)(y, i) != phi_v + dp {
                    failures.push(Failure {
                        input: ctx("eps/phi drift"),
                        expected: format!("({}, {})", eps + de, phi_v + dp),
                        got: format!("({}, {})", (side.eps)(y, i), (side.phi)(y, i)),
                    });
                }
                let back = (side.op)(
                    y,
                    i,
                    match dir {
                        Dir::E => Dir::F,
                        Dir::F => Dir::E,
                    },
                );
                if back.as_ref() != Some(x) {
                    failures.push(Failure {
                        input: ctx("inversion"),
                        expected: json_of(x),
                        got: opt_json(&back),
                    });
                }
            }
            // Axiom: eps and phi count how often the operator applies.
            let expect = match dir {
                Dir::E => eps,
                Dir::F => phi_v,
            };
            let mut steps: i64 = 0;
            let mut cur = next;
            while let Some(y) = cur {
                steps += 1;
                if steps > expect + 2 {
                    break;
                }
                cur = (side.op)(&y, i, dir);
            }
            if steps != expect {
                failures.push(Failure {
                    input: ctx("string length"),
                    expected: format!("{expect}"),
                    got: format!("{steps}"),
                });
            }
        }
    }
}

/// The crystal axioms hold pointwise in both realizations: weight pairing,
/// weight drift under the operators, the eps/phi bookkeeping, operator
/// inversion, and string lengths.
pub fn check_axioms(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<SuiteReport> {
    let mut failures = Vec::new();

    let paths = tensor_elements(spec, shape, cap)?;
    let p_eps = |p: &Path, i: usize| path_signature(p, i).eps as i64;
    let p_phi = |p: &Path, i: usize| path_signature(p, i).phi as i64;
    let path_side = AxiomSide::<Path> {
        label: "tensor",
        weight: &path_weight,
        eps: &p_eps,
        phi: &p_phi,
        op: &path_op,
    };
    for p in &paths {
        axioms_on(spec, p, &path_side, &mut failures);
    }

    let rcs = enumerate_all(spec, shape, cap)?;
    let rc_side = AxiomSide::<RiggedConfiguration> {
        label: "rigged",
        weight: &rc_weight,
        eps: &rc_eps,
        phi: &rc_phi,
        op: &rc_op,
    };
    for rc in &rcs {
        axioms_on(spec, rc, &rc_side, &mut failures);
    }

    Ok(SuiteReport {
        suite: "axioms".into(),
        spec,
        shape: shape.to_vec(),
        checked: paths.len() + rcs.len(),
        failures,
    })
}

/// The bijection round-trips on every configuration and covers the whole
/// tensor product exactly once.
pub fn check_bijection(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<SuiteReport> {
    let rcs = enumerate_all(spec, shape, cap)?;
    let mut failures = Vec::new();
    let mut seen: BTreeSet<Path> = BTreeSet::new();
    for rc in &rcs {
        let rc_json = json_of(rc);
        let p = match phi(rc) {
            Ok(p) => p,
            Err(e) => {
                failures.push(Failure {
                    input: rc_json,
                    expected: "a tensor product element".into(),
                    got: format!("error: {e}"),
                });
                continue;
            }
        };
        match phi_inv(&p) {
            Ok(back) if back == *rc => {}
            Ok(back) => failures.push(Failure {
                input: json_of(&p),
                expected: rc_json.clone(),
                got: json_of(&back),
            }),
            Err(e) => failures.push(Failure {
                input: json_of(&p),
                expected: rc_json.clone(),
                got: format!("error: {e}"),
            }),
        }
        if !seen.insert(p.clone()) {
            failures.push(Failure {
                input: rc_json,
                expected: "a fresh image".into(),
                got: json_of(&p),
            });
        }
    }
    let mut expected: usize = 1;
    for &(r, s) in shape {
        expected = expected.saturating_mul(kr_elements(spec, r, s, cap)?.len());
    }
    if seen.len() != expected || rcs.len() != expected {
        failures.push(Failure {
            input: json!({ "shape": shape }).to_string(),
            expected: format!("{expected} elements"),
            got: format!("{} configurations, {} distinct images", rcs.len(), seen.len()),
        });
    }
    Ok(SuiteReport {
        suite: "bijection".into(),
        spec,
        shape: shape.to_vec(),
        checked: rcs.len(),
        failures,
    })
}

/// Discrete convexity of the vacancy numbers: at every node a and length l,
/// -P_{l-1} + 2 P_l - P_{l+1} dominates the surplus of neighbouring string
/// multiplicities over twice the local one.
pub fn check_convexity(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<SuiteReport> {
    let rcs = enumerate_all(spec, shape, cap)?;
    let mut failures = Vec::new();
    for rc in &rcs {
        let max_len = (1..=spec.n)
            .map(|b| rc.nu[b - 1].max_len())
            .chain(shape.iter().map(|&(_, s)| s))
            .max()
            .unwrap_or(1);
        for a in spec.nodes() {
            for l in 1..=max_len + 1 {
                let lhs = -rc.vacancy(a, l - 1) + 2 * rc.vacancy(a, l) - rc.vacancy(a, l + 1);
                let rhs: i64 = spec
                    .neighbors(a)
                    .iter()
                    .map(|&b| rc.nu[b - 1].m(l) as i64)
                    .sum::<i64>()
                    - 2 * rc.nu[a - 1].m(l) as i64;
                if lhs < rhs {
                    failures.push(Failure {
                        input: json!({ "rc": rc, "node": a, "length": l }).to_string(),
                        expected: format!("at least {rhs}"),
                        got: format!("{lhs}"),
                    });
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "convexity".into(),
        spec,
        shape: shape.to_vec(),
        checked: rcs.len(),
        failures,
    })
}

/// The combinatorial R matrix is a weight-preserving bijection commuting
/// with every classical operator, and applying it twice is the identity.
pub fn check_r_isomorphism(
    spec: DynkinSpec,
    shape: &[(usize, usize)],
    cap: usize,
) -> Result<SuiteReport> {
    if shape.len() < 2 {
        return Err(crate::Error::input("the R matrix needs at least two factors"));
    }
    let paths = tensor_elements(spec, shape, cap)?;
    let mut failures = Vec::new();
    let mut image: BTreeSet<Path> = BTreeSet::new();
    let mut swapped = shape.to_vec();
    swapped.swap(0, 1);
    for p in &paths {
        let p_json = json_of(p);
        let rp = match combinatorial_r(p) {
            Ok(rp) => rp,
            Err(e) => {
                failures.push(Failure {
                    input: p_json,
                    expected: "an image under R".into(),
                    got: format!("error: {e}"),
                });
                continue;
            }
        };
        if rp.shape() != swapped {
            failures.push(Failure {
                input: p_json.clone(),
                expected: format!("shape {}", shape_string(&swapped)),
                got: format!("shape {}", shape_string(&rp.shape())),
            });
        }
        if path_weight(&rp) != path_weight(p) {
            failures.push(Failure {
                input: p_json.clone(),
                expected: format!("{:?}", path_weight(p)),
                got: format!("{:?}", path_weight(&rp)),
            });
        }
        match combinatorial_r(&rp) {
            Ok(back) if back == *p => {}
            Ok(back) => failures.push(Failure {
                input: p_json.clone(),
                expected: p_json.clone(),
                got: json_of(&back),
            }),
            Err(e) => failures.push(Failure {
                input: p_json.clone(),
                expected: p_json.clone(),
                got: format!("error: {e}"),
            }),
        }
        for i in spec.nodes() {
            for dir in Dir::BOTH {
                let lhs = path_op(p, i, dir).map(|q| combinatorial_r(&q)).transpose();
                let rhs = path_op(&rp, i, dir);
                let ok = match (&lhs, &rhs) {
                    (Ok(l), r) => l == r,
                    (Err(_), _) => false,
                };
                if !ok {
                    failures.push(Failure {
                        input: json!({ "path": p, "node": i, "op": op_name(dir) }).to_string(),
                        expected: opt_json(&rhs),
                        got: match lhs {
                            Ok(l) => opt_json(&l),
                            Err(e) => format!("error: {e}"),
                        },
                    });
                }
            }
        }
        if !image.insert(rp) {
            failures.push(Failure {
                input: p_json,
                expected: "a fresh image under R".into(),
                got: "a repeated image".into(),
            });
        }
    }
    if image.len() != paths.len() {
        failures.push(Failure {
            input: json!({ "shape": shape }).to_string(),
            expected: format!("{} images", paths.len()),
            got: format!("{}", image.len()),
        });
    }
    Ok(SuiteReport {
        suite: "r_isomorphism".into(),
        spec,
        shape: shape.to_vec(),
        checked: paths.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> DynkinSpec {
        DynkinSpec::type_d(n)
    }

    fn a(n: usize) -> DynkinSpec {
        DynkinSpec::type_a(n)
    }

    #[test]
    fn small_commutativity_suites_pass() {
        let r = check_commutativity(d(4), &[(1, 1), (1, 1)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
        assert!(r.checked > 0);
        let r = check_commutativity(a(2), &[(1, 1), (2, 1)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
    }

    #[test]
    fn small_axiom_suites_pass() {
        let r = check_axioms(d(4), &[(1, 1)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
        assert_eq!(r.checked, 16);
        let r = check_axioms(a(2), &[(2, 1), (1, 1)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
    }

    #[test]
    fn small_bijection_suites_pass() {
        let r = check_bijection(d(4), &[(2, 1)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
        let r = check_bijection(a(3), &[(2, 2)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
    }

    #[test]
    fn small_convexity_suites_pass() {
        let r = check_convexity(d(4), &[(2, 2)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
    }

    #[test]
    fn small_r_suites_pass() {
        let r = check_r_isomorphism(a(2), &[(1, 1), (1, 2)], 10_000).unwrap();
        assert!(r.is_ok(), "{:#?}", r.failures.first());
    }

    #[test]
    fn report_serializes() {
        let r = check_convexity(a(2), &[(1, 1)], 10_000).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(r.to_string().contains("convexity"));
    }
}
