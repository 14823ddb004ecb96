use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tate_smith::excursion::functions::eval_at;
use tate_smith::excursion::functoriality::{sample_second_gens, transposition_inclusion};
use tate_smith::excursion::lrep::eval_second_at;
use tate_smith::excursion::target::all_homs;
use tate_smith::excursion::{
    character_bijection_report, functoriality_report, relation_suite, AdmissibleHom, Convention, FirstGen,
    InvariantFunction, ParamTarget, SourceGroup,
};
use tate_smith::group::FiniteGroup;
use tate_smith::linkage::{cyclic_character, linkage_report, s3_sign, s3_standard};
use tate_smith::Field;

fn target(choice: u8) -> ParamTarget {
    match choice % 3 {
        0 => ParamTarget::split(&FiniteGroup::cyclic(2)).unwrap(),
        1 => ParamTarget::split(&FiniteGroup::symmetric(3)).unwrap(),
        _ => ParamTarget::base_change(&FiniteGroup::cyclic(2), 3).unwrap(),
    }
}

fn source(choice: u8, t: &ParamTarget) -> SourceGroup {
    let q = t.quotient();
    if q.order() > 1 {
        // C_{2n} onto C_n
        let gamma = FiniteGroup::cyclic(2 * q.order());
        let to_q = gamma.elements().map(|g| g % q.order()).collect();
        return SourceGroup::new(&gamma, q, to_q).unwrap();
    }
    match choice % 2 {
        0 => SourceGroup::unramified(&FiniteGroup::cyclic(2)),
        _ => SourceGroup::unramified(&FiniteGroup::symmetric(3)),
    }
}

/// `c rho c^{-1}` for `c` in the image of `Ghat` in `L`.
fn conjugate(t: &ParamTarget, rho: &[usize], c: usize) -> Vec<usize> {
    let l = t.l();
    let c = t.embed(c);
    rho.iter().map(|&x| l.mul(l.mul(c, x), l.inv(c))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_are_conjugation_invariant(tc in 0u8..3, sc in 0u8..2, arity in 1usize..3, seed in any::<u64>(), naive in any::<bool>()) {
        let t = target(tc);
        let src = source(sc, &t);
        let f = Field::prime(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conv = if naive { Convention::Naive } else { Convention::LastIndex };
        let gammas: Vec<usize> = (0..arity).map(|i| src.gamma().generators()[i % src.gamma().generators().len()]).collect();
        let gen = FirstGen::new(&src, InvariantFunction::random(&t, &f, arity, &mut rng).unwrap(), gammas).unwrap();
        let seconds = sample_second_gens(&t, &src, &f, 2).unwrap();
        for rho in all_homs(&src, &t).unwrap() {
            let v = eval_at(&src, &gen, &rho, conv);
            let w: Vec<_> = seconds.iter().map(|s| eval_second_at(&src, s, &rho, conv)).collect();
            for c in t.ghat_elements() {
                let moved = conjugate(&t, &rho, c);
                prop_assert_eq!(eval_at(&src, &gen, &moved, conv), v);
                let w2: Vec<_> = seconds.iter().map(|s| eval_second_at(&src, s, &moved, conv)).collect();
                prop_assert_eq!(&w2, &w);
            }
        }
    }

    #[test]
    fn relations_hold(tc in 0u8..3, sc in 0u8..2, seed in any::<u64>()) {
        let t = target(tc);
        let src = source(sc, &t);
        let f = Field::prime(7);
        let r = relation_suite(&src, &t, &f, 4, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(r.pass(), "{:?}", r);
    }

    #[test]
    fn pullback_along_inclusion(seed in any::<u64>()) {
        let f = Field::prime(5);
        let src = SourceGroup::unramified(&FiniteGroup::symmetric(3));
        let inc = transposition_inclusion().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let firsts = vec![
            FirstGen::new(&src, InvariantFunction::random(inc.target(), &f, 2, &mut rng).unwrap(), vec![1, 2]).unwrap(),
        ];
        let seconds = sample_second_gens(inc.target(), &src, &f, 2).unwrap();
        for phi in [inc.clone(), AdmissibleHom::identity(inc.target())] {
            let r = functoriality_report(&src, &phi, &firsts, &seconds).unwrap();
            prop_assert!(r.pass(), "{:?}", r);
        }
    }

    #[test]
    fn twist_of_cyclic_characters(n in prop::sample::select(vec![2usize, 4, 8]), k in 0usize..8) {
        // characters of C_n over F_9 with p = 3, and over F_25 with p = 5
        for (p, m) in [(3u32, 2u32), (5, 2)] {
            let f = Field::new(p, m).unwrap();
            let roots: Vec<_> = f.elements().filter(|&z| !z.is_zero() && f.pow(z, n as u64) == tate_smith::Fe::ONE).collect();
            let zeta = roots[k % roots.len()];
            let pi = cyclic_character(&f, n, zeta).unwrap();
            let r = linkage_report(&pi, p).unwrap();
            prop_assert!(r.pass(), "{:?}", r);
            prop_assert_eq!(r.dim_t0, 1);
            // the Frobenius twist of a character raises its values to the p-th power
            prop_assert_eq!(r.twist_is_trivial, f.pow(zeta, p as u64) == zeta);
        }
    }
}

#[test]
fn bijection_small_instances() {
    let c2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric(3);
    let f = Field::prime(5);
    let r = character_bijection_report(&SourceGroup::unramified(&c2), &ParamTarget::split(&c2).unwrap(), &f, 2, Convention::Naive).unwrap();
    assert_eq!((r.points, r.characters), (2, 2));
    let r = character_bijection_report(&SourceGroup::unramified(&s3), &ParamTarget::split(&s3).unwrap(), &f, 2, Convention::LastIndex).unwrap();
    assert_eq!((r.points, r.characters), (3, 3));
    // trivial dual group: one point
    let one = FiniteGroup::cyclic(1);
    let r = character_bijection_report(&SourceGroup::unramified(&s3), &ParamTarget::split(&one).unwrap(), &f, 2, Convention::Naive).unwrap();
    assert_eq!((r.points, r.characters), (1, 1));
}

#[test]
fn linkage_on_s3() {
    let f = Field::prime(5);
    for pi in [s3_sign(&f), s3_standard(&f)] {
        let r = linkage_report(&pi, 5).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(r.twist_is_trivial);
        assert_eq!(r.dim_t0, pi.dim());
    }
}
