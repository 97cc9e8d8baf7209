//! Property tests over a pool of small tensor products: the bijection
//! round-trips, the operators commute with it, the weight pairing holds on
//! both sides, tie-breaking in the peeling step never matters, and the
//! wire formats are lossless.

mod common;

use std::sync::OnceLock;

use common::{a, d};
use proptest::prelude::*;
use rigged_core::bijection::{delta_all_choices, phi, phi_inv};
use rigged_core::crystal_tableaux::{path_op, path_signature, path_weight, Path};
use rigged_core::rigged_config::{
    enumerate_all, rc_eps, rc_op, rc_phi, rc_weight, RiggedConfiguration,
};
use rigged_core::root_data::coroot_pairing;
use rigged_core::Dir;

struct Pool {
    rcs: Vec<RiggedConfiguration>,
    paths: Vec<Path>,
}

fn pools() -> &'static [Pool] {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let shapes = [
            (d(4), vec![(2, 1), (1, 1)]),
            (d(4), vec![(1, 2), (1, 2)]),
            (d(4), vec![(2, 2)]),
            (d(5), vec![(5, 1), (1, 1)]),
            (a(3), vec![(1, 1), (1, 1), (1, 1)]),
            (a(3), vec![(2, 1), (1, 2)]),
        ];
        shapes
            .into_iter()
            .map(|(spec, shape)| {
                let rcs = enumerate_all(spec, &shape, 1_000_000).unwrap();
                let paths = rcs.iter().map(|x| phi(x).unwrap()).collect();
                Pool { rcs, paths }
            })
            .collect()
    })
}

fn sampled(pool: prop::sample::Index, element: prop::sample::Index) -> (&'static Pool, usize) {
    let p = &pools()[pool.index(pools().len())];
    let k = element.index(p.rcs.len());
    (p, k)
}

proptest! {
    #[test]
    fn the_bijection_round_trips(pool: prop::sample::Index, element: prop::sample::Index) {
        let (p, k) = sampled(pool, element);
        let rc = &p.rcs[k];
        let image = &p.paths[k];
        prop_assert_eq!(&phi_inv(image).unwrap(), rc);
        prop_assert_eq!(rc_weight(rc), path_weight(image));
    }

    #[test]
    fn operators_commute_with_the_bijection(
        pool: prop::sample::Index,
        element: prop::sample::Index,
        node: prop::sample::Index,
        raise: bool,
    ) {
        let (p, k) = sampled(pool, element);
        let rc = &p.rcs[k];
        let spec = rc.spec;
        let i = node.index(spec.n) + 1;
        let dir = if raise { Dir::E } else { Dir::F };
        let through_rc = rc_op(rc, i, dir).map(|x| phi(&x).unwrap());
        let on_path = path_op(&p.paths[k], i, dir);
        prop_assert_eq!(through_rc, on_path);
    }

    #[test]
    fn the_weight_pairing_holds_on_both_sides(
        pool: prop::sample::Index,
        element: prop::sample::Index,
        node: prop::sample::Index,
    ) {
        let (p, k) = sampled(pool, element);
        let rc = &p.rcs[k];
        let spec = rc.spec;
        let i = node.index(spec.n) + 1;
        let pair = coroot_pairing(spec, i, &rc_weight(rc)).unwrap();
        prop_assert_eq!(rc_phi(rc, i) - rc_eps(rc, i), pair);
        let sig = path_signature(&p.paths[k], i);
        prop_assert_eq!(sig.phi as i64 - sig.eps as i64, pair);
    }

    #[test]
    fn tie_breaking_in_the_peeling_never_matters(
        pool: prop::sample::Index,
        element: prop::sample::Index,
    ) {
        let (p, k) = sampled(pool, element);
        let rc = &p.rcs[k];
        let (head, _) = rc.shape[0];
        prop_assume!(!rc.spec.is_spin_node(head));
        let outcomes = delta_all_choices(rc).unwrap();
        for other in &outcomes[1..] {
            prop_assert_eq!(other.letter, outcomes[0].letter);
            prop_assert_eq!(&other.rc_after, &outcomes[0].rc_after);
        }
    }

    #[test]
    fn wire_formats_are_lossless(pool: prop::sample::Index, element: prop::sample::Index) {
        let (p, k) = sampled(pool, element);
        let rc_text = serde_json::to_string(&p.rcs[k]).unwrap();
        prop_assert_eq!(&serde_json::from_str::<RiggedConfiguration>(&rc_text).unwrap(), &p.rcs[k]);
        let path_text = serde_json::to_string(&p.paths[k]).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Path>(&path_text).unwrap(), &p.paths[k]);
    }
}
