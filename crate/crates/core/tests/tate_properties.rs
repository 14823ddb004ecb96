use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_smith::random::{random_complex, random_formal_complex, random_module, random_short_exact, ModuleKind};
use tate_smith::sigma_mod::SigmaModule;
use tate_smith::{Field, Mat};

fn field_for(choice: u8) -> Field {
    match choice % 4 {
        0 => Field::prime(2),
        1 => Field::prime(3),
        2 => Field::prime(5),
        _ => Field::new(3, 2).unwrap(),
    }
}

/// `dim ker(s-1)/im N` and `dim ker N/im(s-1)` straight from ranks.
fn oracle_dims(sigma: &Mat) -> (usize, usize) {
    let f = sigma.field();
    let n = sigma.rows();
    let p = f.characteristic();
    let mut norm = Mat::zeros(f, n, n);
    let mut power = Mat::identity(f, n);
    for _ in 0..p {
        norm = norm.add(&power);
        power = power.mul(sigma);
    }
    let d = sigma.sub(&Mat::identity(f, n));
    let (rd, rn) = (d.rank(), norm.rank());
    (n - rd - rn, n - rn - rd)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn module_tate_matches_rank_oracle(choice in 0u8..4, blocks in prop::collection::vec(1usize..=5, 0..5), seed in any::<u64>()) {
        let f = field_for(choice);
        let p = f.characteristic() as usize;
        let blocks: Vec<usize> = blocks.into_iter().map(|b| b.min(p)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = SigmaModule::from_profile(&f, &blocks);
        let c = Mat::random_invertible(&f, base.dim(), &mut rng);
        let m = base.conjugate(&c).unwrap();
        let expected = blocks.iter().filter(|&&b| b < p).count();
        prop_assert_eq!(m.tate_dims(), (expected, expected));
        prop_assert_eq!(oracle_dims(m.sigma()), (expected, expected));
        let mut profile = m.jordan_profile().0;
        let mut sorted = blocks.clone();
        sorted.sort();
        profile.sort();
        prop_assert_eq!(profile, sorted);
    }

    #[test]
    fn random_modules_agree_with_oracle(choice in 0u8..4, seed in any::<u64>()) {
        let f = field_for(choice);
        let m = random_module(&f, &mut ChaCha8Rng::seed_from_u64(seed), 4);
        let (t0, t1) = m.tate_dims();
        prop_assert_eq!((t0, t1), oracle_dims(m.sigma()));
        // a complex concentrated in one degree has the module's Tate groups
        let c = tate_smith::tate_complex::SigmaChainComplex::concentrated(m, 0);
        prop_assert_eq!(c.tate_dims().unwrap(), (t0, t1));
    }

    #[test]
    fn free_complexes_vanish(choice in 0u8..4, seed in any::<u64>(), len in 1usize..4) {
        let f = field_for(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&f, &mut rng, 0, len, ModuleKind::Free);
        prop_assert_eq!(c.tate_dims().unwrap(), (0, 0));
    }

    #[test]
    fn periodicity_and_shift(choice in 0u8..4, seed in any::<u64>(), len in 1usize..4, a in -2i64..=2) {
        let f = field_for(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&f, &mut rng, a, len, ModuleKind::Any);
        let s = c.shift();
        for n in -2..=2 {
            let d = c.tate_dim(n).unwrap();
            prop_assert_eq!(d, c.tate_dim(n + 2).unwrap());
            prop_assert_eq!(s.tate_dim(n - 1).unwrap(), d);
            // window and folded computations agree
            prop_assert_eq!(c.tate_hyper(n).unwrap().dim, d);
            prop_assert_eq!(c.folded_tate(n).dim(), d);
        }
    }

    #[test]
    fn trivial_action_is_total_cohomology(choice in 0u8..4, seed in any::<u64>(), len in 1usize..4) {
        let f = field_for(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&f, &mut rng, 0, len, ModuleKind::Trivial);
        let total: usize = (0..len as i64).map(|j| c.cohomology(j).dim()).sum();
        let (t0, t1) = c.tate_dims().unwrap();
        prop_assert_eq!(t0, total);
        prop_assert_eq!(t1, total);
        for j in 0..len as i64 {
            prop_assert_eq!(c.cohomology_dim(j), c.cohomology(j).dim());
        }
    }

    #[test]
    fn long_exact_sequence(choice in 0u8..4, seed in any::<u64>(), len in 1usize..3) {
        let f = field_for(choice);
        let ses = random_short_exact(&f, &mut ChaCha8Rng::seed_from_u64(seed), len);
        let r = ses.les_check();
        prop_assert!(r.pass(), "{:?}", r);
    }

    #[test]
    fn spectral_bound(choice in 0u8..4, seed in any::<u64>(), len in 1usize..4) {
        let f = field_for(choice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&f, &mut rng, 0, len, ModuleKind::Any);
        prop_assert!(c.tate_ss().unwrap().pass());
        let z = random_formal_complex(&f, &mut rng, 0, len);
        let r = z.tate_ss().unwrap();
        prop_assert!(r.zero_differentials);
        prop_assert_eq!(r.actual, r.bound);
    }
}
