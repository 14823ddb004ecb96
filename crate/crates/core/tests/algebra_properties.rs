use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_smith::group::{FiniteGroup, GroupRep, SigmaGroup};
use tate_smith::hecke::{point_character, HeckeAlgebra, SigmaAlgebra, SigmaHecke};
use tate_smith::{Fe, Field, Mat};

fn small_field(choice: u8) -> Field {
    match choice % 5 {
        0 => Field::prime(2),
        1 => Field::prime(3),
        2 => Field::prime(7),
        3 => Field::new(2, 3).unwrap(),
        _ => Field::new(5, 2).unwrap(),
    }
}

fn small_group(choice: u8) -> FiniteGroup {
    match choice % 4 {
        0 => FiniteGroup::cyclic(4),
        1 => FiniteGroup::symmetric(3),
        2 => FiniteGroup::power(&FiniteGroup::cyclic(2), 2),
        _ => FiniteGroup::cyclic(6),
    }
}

/// `k` fixed points followed by `cycles` free orbits of length `p`.
fn orbit_perm(p: usize, fixed: usize, cycles: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..fixed).collect();
    for c in 0..cycles {
        let base = fixed + c * p;
        perm.extend((0..p).map(|i| base + (i + 1) % p));
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_axioms(choice in 0u8..5, seed in any::<u64>()) {
        let f = small_field(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if let Some(i) = f.inv(a) {
            prop_assert_eq!(f.mul(a, i), Fe::ONE);
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pow(a, f.order() as u64), a);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }

    #[test]
    fn sparse_rank_and_rank_nullity(choice in 0u8..5, seed in any::<u64>(), r in 0usize..6, c in 0usize..7, k in 0usize..5) {
        let f = small_field(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Mat::random(&f, r, k, &mut rng).mul(&Mat::random(&f, k, c, &mut rng));
        let rank = m.rank();
        prop_assert_eq!(m.sparse_rank(), rank);
        prop_assert!(rank <= k.min(r).min(c));
        prop_assert_eq!(m.kernel().rows() + rank, c);
        prop_assert!(m.mul(&m.kernel().transpose()).is_zero());
    }

    #[test]
    fn convolution_is_associative_and_unital(g in 0u8..4, fc in 0u8..5, kgen in 0usize..6, seed in any::<u64>()) {
        let group = small_group(g);
        let f = small_field(fc);
        let k = group.subgroup_generated(&[kgen % group.order()]);
        let h = HeckeAlgebra::new(&group, &f, &k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (h.random(&mut rng), h.random(&mut rng), h.random(&mut rng));
        let ab_c = h.convolve(&h.convolve(&a, &b).unwrap(), &c).unwrap();
        let a_bc = h.convolve(&a, &h.convolve(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c.values(), a_bc.values());
        let left = h.convolve(&h.unit(), &a).unwrap();
        let right = h.convolve(&a, &h.unit()).unwrap();
        prop_assert_eq!(left.values(), a.values());
        prop_assert_eq!(right.values(), a.values());
    }

    #[test]
    fn hecke_action_is_multiplicative(g in 0u8..4, fc in 0u8..5, kgen in 0usize..6, seed in any::<u64>()) {
        let group = small_group(g);
        let f = small_field(fc);
        let k = group.subgroup_generated(&[kgen % group.order()]);
        let h = HeckeAlgebra::new(&group, &f, &k).unwrap();
        let pi = GroupRep::permutation(&group, &f, &[group.identity()]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (h.random(&mut rng), h.random(&mut rng));
        let (ma, _) = h.action_on_invariants(&a, &pi);
        let (mb, _) = h.action_on_invariants(&b, &pi);
        let (mab, _) = h.action_on_invariants(&h.convolve(&a, &b).unwrap(), &pi);
        prop_assert_eq!(mab, ma.mul(&mb));
    }

    #[test]
    fn brauer_on_shift_powers(h in 0u8..2, p in prop::sample::select(vec![2u32, 3]), whole in any::<bool>()) {
        let base = if h == 0 { FiniteGroup::cyclic(2) } else { FiniteGroup::cyclic(3) };
        let sg = SigmaGroup::shift(&base, p);
        let g = sg.group();
        let k: Vec<usize> = if whole { g.elements().collect() } else { vec![g.identity()] };
        let sh = SigmaHecke::new(&sg, &Field::prime(p), &k).unwrap();
        prop_assert!(sh.is_plain());
        let r = sh.brauer_multiplicativity().unwrap();
        prop_assert!(r.multiplicative(), "{:?}", r);
        for f in sh.invariant_basis() {
            prop_assert!(sh.is_invariant(&f));
        }
    }

    #[test]
    fn character_extension_on_point_models(p in prop::sample::select(vec![2usize, 3, 5]), fixed in 1usize..3, cycles in 0usize..3, pick in 0usize..3) {
        let f = Field::prime(p as u32);
        let perm = orbit_perm(p, fixed, cycles);
        let alg = SigmaAlgebra::functions(&f, &perm).unwrap();
        let sub = alg.fixed_subalgebra();
        let s = pick % fixed;
        let ext = alg.char_extend(&sub, &point_character(&sub, s)).unwrap();
        prop_assert!(ext.pass(), "{:?}", ext);
        // the extension is evaluation at the fixed point
        let expected: Vec<Fe> = (0..perm.len()).map(|i| if i == s { Fe::ONE } else { Fe::ZERO }).collect();
        prop_assert_eq!(ext.values, expected);
        if cycles > 0 {
            let free = fixed + pick % p;
            prop_assert!(alg.char_extend(&sub, &point_character(&sub, free)).is_err());
        }
    }

    #[test]
    fn ring_norm_on_fixed_elements_is_power(p in prop::sample::select(vec![2usize, 3]), fixed in 1usize..3, cycles in 0usize..3, seed in any::<u64>()) {
        let f = Field::prime(p as u32);
        let perm = orbit_perm(p, fixed, cycles);
        let alg = SigmaAlgebra::functions(&f, &perm).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Fe> = (0..perm.len()).map(|_| f.random(&mut rng)).collect();
        // sigma-average is fixed
        let mut fixed_elt = a.clone();
        let mut moved = a.clone();
        for _ in 1..p {
            moved = alg.apply_sigma(&moved);
            fixed_elt = fixed_elt.iter().zip(&moved).map(|(&x, &y)| f.add(x, y)).collect();
        }
        prop_assert_eq!(&alg.ring_n(&a), &fixed_elt);
        let mut power = alg.one();
        for _ in 0..p {
            power = alg.mul(&power, &fixed_elt);
        }
        prop_assert_eq!(alg.ring_norm(&fixed_elt), power);
    }
}
