//! Pullback of excursion generators along admissible maps of parameter
//! targets, and the generators `sigma S`, `Nm S` and `N. S` attached to an
//! automorphism `sigma` of `L`.

use serde::Serialize;

use super::functions::{eval_at, Convention, FirstGen, InvariantFunction};
use super::lrep::{coevaluation, eval_second_at, rep_pool, LRep, SecondGen};
use super::relations::kron_vec;
use super::target::{all_homs, ParamTarget, SourceGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::linalg::Mat;
use crate::linkage::rotation_matrix;

/// A homomorphism `L_H -> L_G` over `Q` carrying `Hhat` into `Ghat`.
#[derive(Clone, Debug)]
pub struct AdmissibleHom {
    source: ParamTarget,
    target: ParamTarget,
    map: Vec<usize>,
}

impl AdmissibleHom {
    pub fn new(source: &ParamTarget, target: &ParamTarget, map: Vec<usize>) -> Result<AdmissibleHom> {
        let (ls, lt) = (source.l(), target.l());
        if map.len() != ls.order() || map.iter().any(|&x| x >= lt.order()) {
            return Err(Error::DimensionMismatch("map must send L_H into L_G".into()));
        }
        for a in ls.elements() {
            for b in ls.elements() {
                if map[ls.mul(a, b)] != lt.mul(map[a], map[b]) {
                    return Err(Error::InvalidTarget("map is not a homomorphism".into()));
                }
            }
        }
        if source.quotient().order() != target.quotient().order() {
            return Err(Error::NotOverQ);
        }
        if ls.elements().any(|x| target.proj(map[x]) != source.proj(x)) {
            return Err(Error::NotOverQ);
        }
        Ok(AdmissibleHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(t: &ParamTarget) -> AdmissibleHom {
        AdmissibleHom {
            source: t.clone(),
            target: t.clone(),
            map: t.l().elements().collect(),
        }
    }

    /// The diagonal `Hhat x C_p -> Hhat^p x| C_p`, `(h, q) -> ((h, .., h), q)`.
    pub fn base_change(hhat: &FiniteGroup, p: u32) -> Result<AdmissibleHom> {
        let q = FiniteGroup::cyclic(p as usize);
        let source = ParamTarget::direct(hhat, &q)?;
        let target = ParamTarget::base_change(hhat, p)?;
        let ghat = target.ghat().clone();
        let map = source
            .l()
            .elements()
            .map(|x| {
                let (h, c) = (x % hhat.order(), source.proj(x));
                target.pair(ghat.from_coords(&vec![h; p as usize]), c)
            })
            .collect();
        AdmissibleHom::new(&source, &target, map)
    }

    pub fn source(&self) -> &ParamTarget {
        &self.source
    }

    pub fn target(&self) -> &ParamTarget {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `phi o rho`
    pub fn compose(&self, rho: &[usize]) -> Vec<usize> {
        rho.iter().map(|&x| self.map[x]).collect()
    }

    pub fn pull_first(&self, src: &SourceGroup, gen: &FirstGen) -> Result<FirstGen> {
        FirstGen::new(src, gen.f.pullback(&self.source, &self.map)?, gen.gammas.clone())
    }

    pub fn pull_second(&self, src: &SourceGroup, gen: &SecondGen) -> Result<SecondGen> {
        SecondGen::new(&self.source, src, gen.w.pull(&self.map), gen.x.clone(), gen.xi.clone(), gen.gammas.clone())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FunctorialityReport {
    pub homomorphisms: usize,
    pub generators: usize,
    pub comparisons: usize,
    pub failures: usize,
}

impl FunctorialityReport {
    pub fn pass(&self) -> bool {
        self.failures == 0 && self.comparisons > 0
    }
}

/// `eval(phi^* S, rho) = eval(S, phi o rho)` for every over-`Q`
/// homomorphism `rho` into `L_H`, under both conventions.
pub fn functoriality_report(src: &SourceGroup, phi: &AdmissibleHom, firsts: &[FirstGen], seconds: &[SecondGen]) -> Result<FunctorialityReport> {
    let homs = all_homs(src, &phi.source)?;
    let mut r = FunctorialityReport {
        homomorphisms: homs.len(),
        generators: firsts.len() + seconds.len(),
        ..Default::default()
    };
    let pulled_first = firsts.iter().map(|g| phi.pull_first(src, g)).collect::<Result<Vec<_>>>()?;
    let pulled_second = seconds.iter().map(|g| phi.pull_second(src, g)).collect::<Result<Vec<_>>>()?;
    for rho in &homs {
        let image = phi.compose(rho);
        for conv in [Convention::Naive, Convention::LastIndex] {
            for (g, pg) in firsts.iter().zip(&pulled_first) {
                r.comparisons += 1;
                if eval_at(src, pg, rho, conv) != eval_at(src, g, &image, conv) {
                    r.failures += 1;
                }
            }
            for (g, pg) in seconds.iter().zip(&pulled_second) {
                r.comparisons += 1;
                if eval_second_at(src, pg, rho, conv) != eval_second_at(src, g, &image, conv) {
                    r.failures += 1;
                }
            }
        }
    }
    Ok(r)
}

/// `f(g0, g1) = chi(n_1 ... n_p)` for `g0 g1^{-1} = ((n_i), q)` and a
/// character `chi` of `Hhat`: a bi-invariant function on the base-change target.
pub fn product_character_function(t: &ParamTarget, field: &Field, chi: &[Fe]) -> Result<InvariantFunction> {
    let ghat = t.ghat();
    let (hhat, _) = ghat.as_power().ok_or_else(|| Error::InvalidGroup("Ghat is not a power".into()))?;
    let l = t.l();
    let nn = ghat.order();
    InvariantFunction::from_fn(t, field, 2, |g| {
        let x = l.mul(g[0], l.inv(g[1]));
        let prod = ghat.coords(x % nn).into_iter().fold(hhat.identity(), |a, b| hhat.mul(a, b));
        chi[prod]
    })
}

fn sigma_power(sigma: &[usize], k: usize) -> Vec<usize> {
    (0..sigma.len())
        .map(|x| (0..k).fold(x, |y, _| sigma[y]))
        .collect()
}

fn sigma_data(t: &ParamTarget) -> Result<(Vec<usize>, usize)> {
    let (sigma, p) = t.sigma().ok_or(Error::MissingSigma)?;
    Ok((sigma.to_vec(), p as usize))
}

/// `sigma^{-k}` as a map on `L`.
fn sigma_inverse_power(t: &ParamTarget, k: usize) -> Result<Vec<usize>> {
    let (sigma, p) = sigma_data(t)?;
    Ok(sigma_power(&sigma, (p - k % p) % p))
}

/// `sigma S`: `W` is replaced by `W o sigma^{-1}`.
pub fn sigma_gen(t: &ParamTarget, src: &SourceGroup, gen: &SecondGen) -> Result<SecondGen> {
    let inv = sigma_inverse_power(t, 1)?;
    SecondGen::new(t, src, gen.w.pull(&inv), gen.x.clone(), gen.xi.clone(), gen.gammas.clone())
}

fn twists(t: &ParamTarget, gen: &SecondGen) -> Result<Vec<LRep>> {
    let (_, p) = sigma_data(t)?;
    (0..p).map(|i| Ok(gen.w.pull(&sigma_inverse_power(t, i)?))).collect()
}

/// `Nm S` on `W (x) sigma W (x) .. (x) sigma^{p-1} W` with `x^{(x) p}`, `xi^{(x) p}`.
pub fn norm_gen(t: &ParamTarget, src: &SourceGroup, gen: &SecondGen) -> Result<SecondGen> {
    let f = gen.w.field().clone();
    let parts = twists(t, gen)?;
    let mut w = parts[0].clone();
    let mut x = gen.x.clone();
    let mut xi = gen.xi.clone();
    for part in &parts[1..] {
        w = w.tensor(part)?;
        x = kron_vec(&f, &x, &gen.x);
        xi = kron_vec(&f, &xi, &gen.xi);
    }
    SecondGen::new(t, src, w, x, xi, gen.gammas.clone())
}

/// `N. S` on `W + sigma W + .. + sigma^{p-1} W` with `(x, .., x)`, `(xi, .., xi)`.
pub fn n_dot_gen(t: &ParamTarget, src: &SourceGroup, gen: &SecondGen) -> Result<SecondGen> {
    let parts = twists(t, gen)?;
    let mut w = parts[0].clone();
    for part in &parts[1..] {
        w = w.sum(part)?;
    }
    let p = parts.len();
    let x = gen.x.repeat(p);
    let xi = gen.xi.repeat(p);
    SecondGen::new(t, src, w, x, xi, gen.gammas.clone())
}

/// Moves block `i` of `p` blocks of size `d` to block `i + 1`.
fn block_rotation(field: &Field, d: usize, p: usize) -> Mat {
    let perm: Vec<usize> = (0..d * p).map(|idx| ((idx / d + 1) % p) * d + idx % d).collect();
    Mat::permutation(field, &perm)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NormReport {
    pub generators: usize,
    pub homomorphisms: usize,
    pub sigma_failures: usize,
    pub norm_failures: usize,
    pub trace_failures: usize,
    pub intertwining_failures: usize,
}

impl NormReport {
    pub fn pass(&self) -> bool {
        self.generators > 0
            && self.sigma_failures == 0
            && self.norm_failures == 0
            && self.trace_failures == 0
            && self.intertwining_failures == 0
    }
}

/// Pointwise identities at every homomorphism `rho`:
/// `eval(sigma S, rho) = eval(S, sigma^{-1} o rho)`,
/// `eval(Nm S) = prod_i eval(sigma^i S)`, `eval(N. S) = sum_i eval(sigma^i S)`;
/// and the factor (block) rotation intertwines `Nm W` (`N. W`) with its
/// `sigma`-conjugate, fixing `x^{(x) p}`.
pub fn norm_report(src: &SourceGroup, t: &ParamTarget, gens: &[SecondGen]) -> Result<NormReport> {
    let (sigma, p) = sigma_data(t)?;
    let homs = all_homs(src, t)?;
    let l = t.l();
    let mut r = NormReport {
        generators: gens.len(),
        homomorphisms: homs.len(),
        ..Default::default()
    };
    let sigma_inv = sigma_inverse_power(t, 1)?;
    for gen in gens {
        let f = gen.w.field().clone();
        let mut powers = vec![gen.clone()];
        for _ in 1..p {
            let next = sigma_gen(t, src, powers.last().expect("nonempty"))?;
            powers.push(next);
        }
        let nm = norm_gen(t, src, gen)?;
        let nd = n_dot_gen(t, src, gen)?;
        for rho in &homs {
            let conv = Convention::Naive;
            let moved: Vec<usize> = rho.iter().map(|&x| sigma_inv[x]).collect();
            if eval_second_at(src, &powers[1], rho, conv) != eval_second_at(src, gen, &moved, conv) {
                r.sigma_failures += 1;
            }
            let values: Vec<Fe> = powers.iter().map(|g| eval_second_at(src, g, rho, conv)).collect();
            let prod = values.iter().fold(Fe::ONE, |a, &b| f.mul(a, b));
            let sum = values.iter().fold(Fe::ZERO, |a, &b| f.add(a, b));
            if eval_second_at(src, &nm, rho, conv) != prod {
                r.norm_failures += 1;
            }
            if eval_second_at(src, &nd, rho, conv) != sum {
                r.trace_failures += 1;
            }
        }
        let d = gen.w.dim();
        let rot = rotation_matrix(&f, d, p);
        let rot_inv = rot.inverse().expect("permutation");
        let blocks = block_rotation(&f, d, p);
        let blocks_inv = blocks.inverse().expect("permutation");
        if rot.apply(&nm.x) != nm.x {
            r.intertwining_failures += 1;
        }
        for g in nm.w.generator_tuples(l) {
            let sg: Vec<usize> = g.iter().map(|&x| sigma[x]).collect();
            if rot.mul(&nm.w.matrix(&g)).mul(&rot_inv) != nm.w.matrix(&sg) {
                r.intertwining_failures += 1;
            }
            if blocks.mul(&nd.w.matrix(&g)).mul(&blocks_inv) != nd.w.matrix(&sg) {
                r.intertwining_failures += 1;
            }
        }
    }
    Ok(r)
}

/// Arity-one generators on small permutation modules with invariant `x`,
/// `xi`, and arity-two generators on `V (x) V^*` with the coevaluation.
pub fn sample_second_gens(t: &ParamTarget, src: &SourceGroup, field: &Field, max_dim: usize) -> Result<Vec<SecondGen>> {
    let gam = src.gamma();
    let g0 = gam.generators().first().copied().unwrap_or(gam.identity());
    let g1 = gam.generators().last().copied().unwrap_or(gam.identity());
    let mut out = Vec::new();
    for rep in rep_pool(t, field, max_dim) {
        let v = LRep::factor(1, 0, &rep)?;
        let xs = v.invariant_vectors(t);
        let xis = v.invariant_functionals(t);
        if xs.rows() > 0 && xis.rows() > 0 {
            out.push(SecondGen::new(t, src, v.clone(), xs.row_vec(0), xis.row_vec(xis.rows() - 1), vec![g0])?);
        }
        if rep.dim() <= 2 {
            let w = v.boxtimes(&v.dual(t.l()))?;
            let delta = coevaluation(rep.dim());
            out.push(SecondGen::new(t, src, w, delta.clone(), delta, vec![g0, gam.mul(g1, g0)])?);
        }
    }
    Ok(out)
}

/// `Gamma = C_{2p} -> C_p` and the base change of `Hhat = C_2`.
pub fn base_change_instance(p: u32) -> Result<(SourceGroup, AdmissibleHom)> {
    let n = p as usize;
    let gamma = FiniteGroup::cyclic(2 * n);
    let q = FiniteGroup::cyclic(n);
    let to_q = gamma.elements().map(|g| g % n).collect();
    let src = SourceGroup::new(&gamma, &q, to_q)?;
    let phi = AdmissibleHom::base_change(&FiniteGroup::cyclic(2), p)?;
    Ok((src, phi))
}

/// The sign character of `C_2` as a table.
pub fn sign_character(field: &Field) -> Vec<Fe> {
    vec![Fe::ONE, field.from_int(-1)]
}

/// The inclusion of `C_2` into `S_3` as the subgroup generated by a transposition.
pub fn transposition_inclusion() -> Result<AdmissibleHom> {
    let c2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric(3);
    let tau = s3.elements().find(|&g| s3.element_order(g) == 2).expect("S_3 has a transposition");
    AdmissibleHom::new(&ParamTarget::split(&c2)?, &ParamTarget::split(&s3)?, vec![s3.identity(), tau])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn base_change_pullback() {
        let f = Field::prime(7);
        let (src, phi) = base_change_instance(3).unwrap();
        let chi = sign_character(&f);
        let func = product_character_function(phi.target(), &f, &chi).unwrap();
        // oracle: on the diagonal, chi(h0 h1^{-1})^3 = chi(h0 h1^{-1})
        let pulled = func.pullback(phi.source(), phi.map()).unwrap();
        let ls = phi.source().l();
        for a in ls.elements() {
            for b in ls.elements() {
                let h = (a % 2 + b % 2) % 2;
                assert_eq!(pulled.eval(&[a, b]), chi[h]);
            }
        }
        let gen = FirstGen::new(&src, func, vec![1, 2]).unwrap();
        let seconds = sample_second_gens(phi.target(), &src, &f, 3).unwrap();
        let r = functoriality_report(&src, &phi, &[gen], &seconds).unwrap();
        assert!(r.pass(), "{:?}", r);
    }

    #[test]
    fn inclusion_and_identity() {
        let f = Field::prime(5);
        let phi = transposition_inclusion().unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let src = SourceGroup::unramified(&s3);
        let first = FirstGen::new(&src, InvariantFunction::random(phi.target(), &f, 2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(3)).unwrap(), vec![1, 2]).unwrap();
        let seconds = sample_second_gens(phi.target(), &src, &f, 3).unwrap();
        assert!(functoriality_report(&src, &phi, std::slice::from_ref(&first), &seconds).unwrap().pass());
        let id = AdmissibleHom::identity(phi.target());
        assert!(functoriality_report(&src, &id, &[first], &seconds).unwrap().pass());
    }

    #[test]
    fn not_over_q_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        let source = ParamTarget::direct(&c2, &c2).unwrap();
        let target = ParamTarget::direct(&c2, &c2).unwrap();
        // swap the Ghat and Q factors
        let map = vec![0, 2, 1, 3];
        assert!(matches!(AdmissibleHom::new(&source, &target, map), Err(Error::NotOverQ)));
    }

    #[test]
    fn norm_identities_on_base_change_target() {
        let f = Field::prime(7);
        let (src, phi) = base_change_instance(3).unwrap();
        let t = phi.target();
        let gens = sample_second_gens(t, &src, &f, 3).unwrap();
        let r = norm_report(&src, t, &gens).unwrap();
        assert!(r.pass(), "{:?}", r);
    }

    #[test]
    fn trivial_sigma_gives_powers() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap().with_sigma(s3.elements().collect(), 3).unwrap();
        let src = SourceGroup::unramified(&s3);
        for gen in sample_second_gens(&t, &src, &f, 3).unwrap() {
            let nm = norm_gen(&t, &src, &gen).unwrap();
            let nd = n_dot_gen(&t, &src, &gen).unwrap();
            for rho in all_homs(&src, &t).unwrap() {
                let v = eval_second_at(&src, &gen, &rho, Convention::Naive);
                assert_eq!(eval_second_at(&src, &nm, &rho, Convention::Naive), f.pow(v, 3));
                assert_eq!(eval_second_at(&src, &nd, &rho, Convention::Naive), Fe::ZERO);
            }
        }
    }
}
