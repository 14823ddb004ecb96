//! Seeded random generators for sigma-modules, complexes and short exact
//! sequences. Everything is built as a direct sum of simple pieces and then
//! scrambled by a random change of basis in each degree.

use rand::Rng;

use crate::field::{Fe, Field};
use crate::linalg::{intertwiner_space_dims, Mat, Subquotient, Subspace};
use crate::sigma_mod::SigmaModule;
use crate::tate_complex::{ShortExact, SigmaChainComplex};

/// Random Jordan profile with up to `max_blocks` blocks, sizes in `sizes`.
fn random_blocks<R: Rng + ?Sized>(rng: &mut R, sizes: &[usize], max_blocks: usize) -> Vec<usize> {
    let count = rng.gen_range(0..=max_blocks);
    (0..count).map(|_| sizes[rng.gen_range(0..sizes.len())]).collect()
}

fn scramble<R: Rng + ?Sized>(m: &SigmaModule, rng: &mut R) -> (SigmaModule, Mat) {
    let c = Mat::random_invertible(m.field(), m.dim(), rng);
    (m.conjugate(&c).expect("invertible"), c)
}

/// Sum of random Jordan blocks in a random basis.
pub fn random_module<R: Rng + ?Sized>(field: &Field, rng: &mut R, max_blocks: usize) -> SigmaModule {
    let p = field.characteristic() as usize;
    let sizes: Vec<usize> = (1..=p).collect();
    let blocks = random_blocks(rng, &sizes, max_blocks);
    scramble(&SigmaModule::from_profile(field, &blocks), rng).0
}

/// A uniformly random sigma-equivariant map `src -> tgt`.
pub fn random_equivariant<R: Rng + ?Sized>(src: &SigmaModule, tgt: &SigmaModule, rng: &mut R) -> Mat {
    let f = src.field();
    let mut out = Mat::zeros(f, tgt.dim(), src.dim());
    if src.dim() == 0 || tgt.dim() == 0 {
        return out;
    }
    let basis = intertwiner_space_dims(&[src.sigma().clone()], &[tgt.sigma().clone()], (src.dim(), tgt.dim()))
        .expect("square sigma matrices");
    for t in basis {
        out = out.add(&t.scale(f.random(rng)));
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub enum ModuleKind {
    Any,
    Free,
    Trivial,
}

/// Random bounded complex on degrees `[a, a + len - 1]`, a direct sum of
/// one-degree pieces and two-term pieces `M -> M'` with a random
/// equivariant map, followed by a per-degree change of basis.
pub fn random_complex<R: Rng + ?Sized>(field: &Field, rng: &mut R, a: i64, len: usize, kind: ModuleKind) -> SigmaChainComplex {
    assert!(len >= 1);
    let p = field.characteristic() as usize;
    let sizes: Vec<usize> = match kind {
        ModuleKind::Any => (1..=p).collect(),
        ModuleKind::Free => vec![p],
        ModuleKind::Trivial => vec![1],
    };
    let mut modules: Vec<SigmaModule> = vec![SigmaModule::zero(field); len];
    let mut diffs: Vec<Mat> = (0..len.saturating_sub(1)).map(|_| Mat::zeros(field, 0, 0)).collect();
    let piece = |rng: &mut R| SigmaModule::from_profile(field, &random_blocks(rng, &sizes, 2));
    for j in 0..len {
        let m = piece(rng);
        modules[j] = modules[j].direct_sum(&m).unwrap();
        if j + 1 < len {
            diffs[j] = diffs[j].block_diag(&Mat::zeros(field, 0, m.dim()));
        }
        if j > 0 {
            diffs[j - 1] = diffs[j - 1].block_diag(&Mat::zeros(field, m.dim(), 0));
        }
    }
    for j in 0..len.saturating_sub(1) {
        for _ in 0..rng.gen_range(0..=2) {
            let (src, tgt) = (piece(rng), piece(rng));
            let phi = random_equivariant(&src, &tgt, rng);
            modules[j] = modules[j].direct_sum(&src).unwrap();
            modules[j + 1] = modules[j + 1].direct_sum(&tgt).unwrap();
            diffs[j] = diffs[j].block_diag(&phi);
            if j + 1 < diffs.len() {
                diffs[j + 1] = diffs[j + 1].block_diag(&Mat::zeros(field, 0, tgt.dim()));
            }
            if j > 0 {
                diffs[j - 1] = diffs[j - 1].block_diag(&Mat::zeros(field, src.dim(), 0));
            }
        }
    }
    let changes: Vec<Mat> = modules.iter().map(|m| Mat::random_invertible(field, m.dim(), rng)).collect();
    let inverses: Vec<Mat> = changes.iter().map(|c| c.inverse().unwrap()).collect();
    let modules: Vec<SigmaModule> = modules
        .iter()
        .zip(&changes)
        .map(|(m, c)| m.conjugate(c).unwrap())
        .collect();
    let diffs: Vec<Mat> = diffs
        .iter()
        .enumerate()
        .map(|(j, d)| changes[j + 1].mul(d).mul(&inverses[j]))
        .collect();
    SigmaChainComplex::new(a, modules, diffs).expect("random complex is valid")
}

/// Random complex with all differentials zero.
pub fn random_formal_complex<R: Rng + ?Sized>(field: &Field, rng: &mut R, a: i64, len: usize) -> SigmaChainComplex {
    let modules: Vec<SigmaModule> = (0..len).map(|_| random_module(field, rng, 3)).collect();
    let diffs = (0..len.saturating_sub(1))
        .map(|j| Mat::zeros(field, modules[j + 1].dim(), modules[j].dim()))
        .collect();
    SigmaChainComplex::new(a, modules, diffs).expect("zero differentials")
}

/// A short exact sequence `0 -> A -> B -> B/A -> 0` where `A` is the
/// subcomplex generated by a few random vectors of a random `B`.
pub fn random_short_exact<R: Rng + ?Sized>(field: &Field, rng: &mut R, len: usize) -> ShortExact {
    let b = random_complex(field, rng, 0, len, ModuleKind::Any);
    let mut spans: Vec<Subspace> = b.modules().iter().map(|m| Subspace::zero(field, m.dim())).collect();
    for (j, m) in b.modules().iter().enumerate() {
        if m.dim() == 0 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=1) {
            let v: Vec<Fe> = (0..m.dim()).map(|_| field.random(rng)).collect();
            spans[j] = spans[j].sum(&Subspace::span(&Mat::from_rows(field, m.dim(), &[v])));
        }
    }
    // close under sigma and d
    loop {
        let mut changed = false;
        for j in 0..spans.len() {
            let m = &b.modules()[j];
            let with_sigma = spans[j].sum(&spans[j].map(m.sigma()));
            if with_sigma.dim() > spans[j].dim() {
                spans[j] = with_sigma;
                changed = true;
            }
            if j + 1 < spans.len() {
                let image = spans[j].map(&b.diffs()[j]);
                let grown = spans[j + 1].sum(&image);
                if grown.dim() > spans[j + 1].dim() {
                    spans[j + 1] = grown;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    split_along(&b, &spans)
}

fn coords_matrix(sq: &Subquotient, ambient: usize, field: &Field) -> Mat {
    let cols: Vec<Vec<Fe>> = (0..ambient)
        .map(|i| {
            let mut e = vec![Fe::ZERO; ambient];
            e[i] = Fe::ONE;
            sq.coords(&e).expect("inside the ambient space")
        })
        .collect();
    Mat::from_columns(field, sq.dim(), &cols)
}

/// Given a subcomplex (one subspace per degree), forms the sub and quotient complexes.
pub fn split_along(b: &SigmaChainComplex, spans: &[Subspace]) -> ShortExact {
    let field = b.field().clone();
    let (start, _) = b.degrees();
    let subs: Vec<Subquotient> = spans
        .iter()
        .map(|s| Subquotient::new(s, &Subspace::zero(&field, s.ambient())).unwrap())
        .collect();
    let quots: Vec<Subquotient> = spans
        .iter()
        .map(|s| Subquotient::new(&Subspace::full(&field, s.ambient()), s).unwrap())
        .collect();
    let n = spans.len();
    let a_mods: Vec<SigmaModule> = (0..n)
        .map(|j| SigmaModule::new(subs[j].induced(b.modules()[j].sigma(), &subs[j]).unwrap()).unwrap())
        .collect();
    let c_mods: Vec<SigmaModule> = (0..n)
        .map(|j| SigmaModule::new(quots[j].induced(b.modules()[j].sigma(), &quots[j]).unwrap()).unwrap())
        .collect();
    let a_d: Vec<Mat> = (0..n.saturating_sub(1))
        .map(|j| subs[j].induced(&b.diffs()[j], &subs[j + 1]).unwrap())
        .collect();
    let c_d: Vec<Mat> = (0..n.saturating_sub(1))
        .map(|j| quots[j].induced(&b.diffs()[j], &quots[j + 1]).unwrap())
        .collect();
    let f: Vec<Mat> = subs.iter().map(|s| s.reps().transpose()).collect();
    let g: Vec<Mat> = quots
        .iter()
        .zip(spans)
        .map(|(q, s)| coords_matrix(q, s.ambient(), &field))
        .collect();
    let a = SigmaChainComplex::new(start, a_mods, a_d).unwrap();
    let c = SigmaChainComplex::new(start, c_mods, c_d).unwrap();
    ShortExact::new(a, b.clone(), c, f, g).expect("sub/quotient sequence is exact")
}

/// `0 -> A -> A (+) C -> C -> 0`
pub fn split_short_exact(a: &SigmaChainComplex, c: &SigmaChainComplex) -> ShortExact {
    let field = a.field().clone();
    let (start, _) = a.degrees();
    let n = a.modules().len();
    let mods: Vec<SigmaModule> = (0..n)
        .map(|j| a.modules()[j].direct_sum(&c.modules()[j]).unwrap())
        .collect();
    let diffs: Vec<Mat> = (0..n.saturating_sub(1))
        .map(|j| a.diffs()[j].block_diag(&c.diffs()[j]))
        .collect();
    let b = SigmaChainComplex::new(start, mods, diffs).unwrap();
    let f = (0..n)
        .map(|j| {
            let (da, dc) = (a.modules()[j].dim(), c.modules()[j].dim());
            Mat::identity(&field, da).vstack(&Mat::zeros(&field, dc, da))
        })
        .collect();
    let g = (0..n)
        .map(|j| {
            let (da, dc) = (a.modules()[j].dim(), c.modules()[j].dim());
            Mat::zeros(&field, dc, da).hstack(&Mat::identity(&field, dc))
        })
        .collect();
    ShortExact::new(a.clone(), b, c.clone(), f, g).expect("split sequence")
}
