use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_smith::smith::{cycle, SigmaComplex};
use tate_smith::torus::{bc_mor, bc_obj, nm_obj, TorusMorphism, TorusParityObj};
use tate_smith::{Field, Mat};

/// A cycle of `p * m` vertices rotated by `j * m` steps. Free rotations
/// have no fixed points; the identity fixes a circle.
fn rotated_cycle(p: u32, m: usize, j: usize) -> SigmaComplex {
    cycle(p as usize * m, j * m, p)
}

fn labels(p: usize) -> impl Strategy<Value = Vec<(Vec<i64>, usize)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, p), 1usize..=2), 0..4)
}

fn restricted(entries: &[(Vec<i64>, usize)]) -> BTreeMap<i64, usize> {
    let mut merged: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (l, m) in entries {
        *merged.entry(l.clone()).or_default() += m;
    }
    let mut out = BTreeMap::new();
    for (l, m) in merged {
        *out.entry(l.iter().sum::<i64>()).or_default() += m;
    }
    out
}

fn support_of(obj: &TorusParityObj) -> BTreeMap<i64, usize> {
    obj.support().iter().map(|(l, &m)| (l[0], m)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smith_on_rotated_cycles(p in prop::sample::select(vec![2u32, 3, 5]), m in 1usize..3, j in 0usize..5) {
        let m = if p == 2 { m + 1 } else { m };
        let j = j % p as usize;
        let f = Field::prime(p);
        let x = rotated_cycle(p, m, j);
        let free = j != 0;
        // circle with trivial action: T^n = H^0 + H^1; free action: nothing
        let expected = if free { [0, 0] } else { [2, 2] };
        let r = x.smith_localization_report(&f).unwrap();
        prop_assert_eq!(r.tate_x, expected);
        prop_assert_eq!(r.tate_fixed, expected);
        prop_assert_eq!(r.euler_characteristic, 0);
        // a cone point is fixed and contractible
        let cone = x.cone().smith_localization_report(&f).unwrap();
        prop_assert_eq!(cone.tate_x, [1, 1]);
        prop_assert!(cone.pass());
        // the suspension points are fixed: S^0 when free, S^2 otherwise
        let susp = x.suspension().smith_localization_report(&f).unwrap();
        prop_assert_eq!(susp.tate_x, [2, 2]);
        prop_assert!(susp.pass());
        let both = x.disjoint_union(&x.cone()).smith_localization_report(&f).unwrap();
        prop_assert_eq!(both.tate_x, [expected[0] + 1, expected[1] + 1]);
        let sub = x.barycentric_subdivide().smith_localization_report(&f).unwrap();
        prop_assert_eq!(sub.tate_x, r.tate_x);
        prop_assert!(sub.pass());
    }

    #[test]
    fn base_change_of_objects(p in prop::sample::select(vec![3usize, 5]), entries in labels(5)) {
        let entries: Vec<(Vec<i64>, usize)> = entries.into_iter().map(|(l, m)| (l[..p].to_vec(), m)).collect();
        let obj = TorusParityObj::new(p, entries.clone()).unwrap();
        let bc = bc_obj(&obj).unwrap();
        prop_assert_eq!(bc.rank(), 1);
        prop_assert_eq!(support_of(&bc), restricted(&entries));
        // the full norm has total multiplicity (sum of multiplicities)^p
        let total: usize = obj.support().values().sum();
        let nm_total: usize = nm_obj(&obj).unwrap().support().values().sum();
        prop_assert_eq!(nm_total, total.pow(p as u32));
    }

    #[test]
    fn base_change_is_additive(entries in labels(3), more in labels(3)) {
        let a = TorusParityObj::new(3, entries).unwrap();
        let b = TorusParityObj::new(3, more).unwrap();
        let lhs = bc_obj(&a.direct_sum(&b).unwrap()).unwrap();
        let rhs = bc_obj(&a).unwrap().direct_sum(&bc_obj(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn base_change_of_morphisms(entries in labels(3), seed in any::<u64>(), ext in any::<bool>()) {
        let f = if ext { Field::new(3, 2).unwrap() } else { Field::prime(3) };
        let obj = TorusParityObj::new(3, entries).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random_end = || {
            let blocks = obj.support().iter().map(|(l, &m)| (l.clone(), Mat::random(&f, m, m, &mut rng))).collect();
            TorusMorphism::new(&obj, &obj, blocks).unwrap()
        };
        let (a, b) = (random_end(), random_end());
        let lhs = bc_mor(&f, &a.compose(&f, &b).unwrap()).unwrap();
        let rhs = bc_mor(&f, &a).unwrap().compose(&f, &bc_mor(&f, &b).unwrap()).unwrap();
        prop_assert!(lhs.same_map(&f, &rhs));
        let id = bc_mor(&f, &TorusMorphism::identity(&f, &obj)).unwrap();
        prop_assert!(id.same_map(&f, &TorusMorphism::identity(&f, &bc_obj(&obj).unwrap())));
        let lambda = f.random(&mut rng);
        let s = bc_mor(&f, &TorusMorphism::scalar(&f, &obj, lambda)).unwrap();
        prop_assert!(s.same_map(&f, &TorusMorphism::scalar(&f, &bc_obj(&obj).unwrap(), lambda)));
    }
}

#[test]
fn single_label_norm_is_diagonal() {
    let obj = TorusParityObj::new(3, [(vec![2, 3, -1], 1)]).unwrap();
    let nm = nm_obj(&obj).unwrap();
    assert_eq!(nm.support().len(), 1);
    assert_eq!(nm.mult(&[4, 4, 4]), 1);
    assert_eq!(support_of(&bc_obj(&obj).unwrap()), BTreeMap::from([(4, 1)]));
}
