//! Excursion operators built from an admissible family of spaces
//! `H_I(W)`. The built-in family is tautological: `H_I(W)` is the space of
//! `Ghat`-equivariant maps from over-`Q` homomorphisms to `W`, and
//! `(gamma_i)` acts at `rho` through `(rho(gamma_i))_i`.

use super::lrep::{LRep, SecondGen};
use super::target::{all_homs, point_of, rep_stack, ParamTarget, RepPoint, SourceGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Mat;

/// What the construction needs from a family.
pub trait AdmissibleFamily {
    fn field(&self) -> &Field;
    /// `dim H_{{0}}(1)`
    fn unit_dim(&self) -> usize;
    fn space_dim(&self, w: &LRep) -> usize;
    /// `H_{{0}}(1) -> H_{{0}}(W|diag) = H_I(W)` induced by `x`.
    fn insert(&self, w: &LRep, x: &[Fe]) -> Mat;
    /// The action of `(gamma_i)` on `H_I(W)`.
    fn act(&self, w: &LRep, gammas: &[usize]) -> Mat;
    /// `H_I(W) = H_{{0}}(W|diag) -> H_{{0}}(1)` induced by `xi`.
    fn extract(&self, w: &LRep, xi: &[Fe]) -> Result<Mat>;
    /// Consistency of the family with fusion; errors describe the failure.
    fn fusion_self_test(&self, w: &LRep) -> Result<()>;
}

pub struct Tautological {
    src: SourceGroup,
    t: ParamTarget,
    field: Field,
    homs: Vec<Vec<usize>>,
    /// Point index of each homomorphism.
    orbit_of: Vec<usize>,
    /// A member of each orbit.
    representative: Vec<usize>,
    points: Vec<RepPoint>,
}

impl Tautological {
    pub fn new(src: &SourceGroup, t: &ParamTarget, field: &Field) -> Result<Tautological> {
        let homs = all_homs(src, t)?;
        let points = rep_stack(src, t)?;
        let orbit_of: Vec<usize> = homs
            .iter()
            .map(|h| {
                let p = point_of(src, t, h);
                points.binary_search(&p).expect("every homomorphism lies over a point")
            })
            .collect();
        let representative = (0..points.len())
            .map(|k| orbit_of.iter().position(|&o| o == k).expect("orbits are nonempty"))
            .collect();
        Ok(Tautological {
            src: src.clone(),
            t: t.clone(),
            field: field.clone(),
            homs,
            orbit_of,
            representative,
            points,
        })
    }

    pub fn points(&self) -> &[RepPoint] {
        &self.points
    }

    /// Is `F` (a function from homomorphisms to `W`) `Ghat`-equivariant?
    fn is_equivariant(&self, w: &LRep, v: &[Fe]) -> bool {
        let d = w.dim();
        let l = self.t.l();
        for n in self.t.ghat_generators() {
            let diag = w.matrix(&vec![n; w.arity()]);
            for (i, h) in self.homs.iter().enumerate() {
                let conj: Vec<usize> = h.iter().map(|&g| l.conjugate(n, g)).collect();
                let j = self.homs.iter().position(|x| *x == conj).expect("conjugate of a homomorphism");
                if v[j * d..(j + 1) * d] != diag.apply(&v[i * d..(i + 1) * d])[..] {
                    return false;
                }
            }
        }
        true
    }
}

impl AdmissibleFamily for Tautological {
    fn field(&self) -> &Field {
        &self.field
    }

    fn unit_dim(&self) -> usize {
        self.points.len()
    }

    fn space_dim(&self, w: &LRep) -> usize {
        self.homs.len() * w.dim()
    }

    fn insert(&self, w: &LRep, x: &[Fe]) -> Mat {
        let d = w.dim();
        let mut m = Mat::zeros(&self.field, self.homs.len() * d, self.points.len());
        for (i, &k) in self.orbit_of.iter().enumerate() {
            for (a, &xa) in x.iter().enumerate() {
                m.set(i * d + a, k, xa);
            }
        }
        m
    }

    fn act(&self, w: &LRep, gammas: &[usize]) -> Mat {
        let d = w.dim();
        let mut m = Mat::zeros(&self.field, self.homs.len() * d, self.homs.len() * d);
        for (i, h) in self.homs.iter().enumerate() {
            let g: Vec<usize> = gammas.iter().map(|&x| h[x]).collect();
            m.set_block(i * d, i * d, &w.matrix(&g));
        }
        m
    }

    fn extract(&self, w: &LRep, xi: &[Fe]) -> Result<Mat> {
        let d = w.dim();
        // pairing at every homomorphism, then read off one value per orbit
        let mut full = Mat::zeros(&self.field, self.homs.len(), self.homs.len() * d);
        for i in 0..self.homs.len() {
            for (a, &v) in xi.iter().enumerate() {
                full.set(i, i * d + a, v);
            }
        }
        let mut pick = Mat::zeros(&self.field, self.points.len(), self.homs.len());
        for (k, &i) in self.representative.iter().enumerate() {
            pick.set(k, i, Fe::ONE);
        }
        Ok(pick.mul(&full))
    }

    fn fusion_self_test(&self, w: &LRep) -> Result<()> {
        let gamma = self.src.gamma();
        let n = w.arity();
        // the action of Gamma^I is an action
        let gens = gamma.generators();
        for &s in gens {
            for &r in gens {
                let a = vec![s; n];
                let b = vec![r; n];
                let ab: Vec<usize> = a.iter().zip(&b).map(|(&x, &y)| gamma.mul(x, y)).collect();
                if self.act(w, &a).mul(&self.act(w, &b)) != self.act(w, &ab) {
                    return Err(Error::FusionCheck("Gamma^I does not act".into()));
                }
            }
        }
        // fusion along I -> {0}: W^zeta acted on by gamma is W acted on by (gamma, .., gamma)
        if n > 0 {
            let fused = w.reindex(&vec![0; n], 1)?;
            for &s in gens {
                if self.act(&fused, &[s]) != self.act(w, &vec![s; n]) {
                    return Err(Error::FusionCheck("fusion does not match the diagonal action".into()));
                }
            }
        }
        // equivariance is preserved by the action
        let basis = w.invariant_vectors(&self.t);
        for r in 0..basis.rows() {
            let inserted = self.insert(w, basis.row(r));
            for c in 0..inserted.cols() {
                let v = inserted.col(c);
                if !self.is_equivariant(w, &v) {
                    return Err(Error::FusionCheck("inserted vector is not equivariant".into()));
                }
                for &s in gens {
                    if !self.is_equivariant(w, &self.act(w, &vec![s; n]).apply(&v)) {
                        return Err(Error::FusionCheck("action breaks equivariance".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The composite `H_{{0}}(1) -> H_I(W) -> H_I(W) -> H_{{0}}(1)` for a
/// second-presentation generator, in the orbit-indicator basis.
pub fn eval_construction(family: &dyn AdmissibleFamily, gen: &SecondGen) -> Result<Mat> {
    family.fusion_self_test(&gen.w)?;
    let x = family.insert(&gen.w, &gen.x);
    let act = family.act(&gen.w, &gen.gammas);
    let xi = family.extract(&gen.w, &gen.xi)?;
    Ok(xi.mul(&act).mul(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excursion::functions::Convention;
    use crate::excursion::lrep::eval_second;
    use crate::group::{FiniteGroup, GroupRep};

    #[test]
    fn trivial_generator_is_identity() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        let src = SourceGroup::unramified(&s3);
        let fam = Tautological::new(&src, &t, &f).unwrap();
        let gen = SecondGen::new(&t, &src, LRep::trivial(&f, 1), vec![Fe::ONE], vec![Fe::ONE], vec![2]).unwrap();
        assert!(eval_construction(&fam, &gen).unwrap().is_identity());
    }

    #[test]
    fn sign_pair_eigenvalues() {
        let f = Field::prime(5);
        let c2 = FiniteGroup::cyclic(2);
        let t = ParamTarget::split(&c2).unwrap();
        let src = SourceGroup::unramified(&c2);
        let chi = GroupRep::new(&c2, &f, 1, &[Mat::scalar(&f, 1, f.from_int(-1))]).unwrap();
        let v = LRep::factor(1, 0, &chi).unwrap();
        let w = v.boxtimes(&v.dual(t.l())).unwrap();
        let gen = SecondGen::new(&t, &src, w, vec![Fe::ONE], vec![Fe::ONE], vec![1, 0]).unwrap();
        let fam = Tautological::new(&src, &t, &f).unwrap();
        let m = eval_construction(&fam, &gen).unwrap();
        for (k, p) in fam.points().iter().enumerate() {
            let sign = |g: usize| if g == 0 { 1 } else { -1 };
            // chi(rho(gamma_0)) chi^{-1}(rho(gamma_1))
            let expected = f.from_int(sign(p.at(1)) * sign(p.at(0)));
            assert_eq!(m.get(k, k), expected);
            assert_eq!(m.get(k, k), eval_second(&src, &gen, p, Convention::Naive));
        }
    }
}
