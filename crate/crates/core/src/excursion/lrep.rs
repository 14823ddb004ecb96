//! Representations of `L^I` built from representations of `L` (and of `Q`)
//! by tensor products, direct sums, duals, reindexing and pullback, and the
//! second-presentation generators `S_{I, W, x, xi, (gamma_i)}`.

use std::sync::Arc;

use super::functions::{evaluation_tuple, Convention, InvariantFunction};
use super::target::{ParamTarget, RepPoint, SourceGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::{FiniteGroup, GroupRep};
use crate::linalg::{dot, Mat};

#[derive(Clone, Debug)]
enum Node {
    /// Trivial action on `k^dim`.
    Space { dim: usize },
    /// A representation of `L` on coordinate `coord`.
    Factor { coord: usize, rep: GroupRep },
    /// A representation of `Q` on coordinate `coord`, inflated along `L -> Q`.
    Inflated { coord: usize, rep: GroupRep, ghat_order: usize },
    Tensor(Arc<LRep>, Arc<LRep>),
    Sum(Arc<LRep>, Arc<LRep>),
    /// Contragredient; needs inverses in `L`.
    Dual { inner: Arc<LRep>, l: FiniteGroup },
    /// `W^zeta` for `zeta: I -> J`: `(g_j)_j` acts as `(g_{zeta(i)})_i`.
    Reindex { inner: Arc<LRep>, zeta: Vec<usize> },
    /// Restriction along an element map applied to every coordinate.
    Pull { inner: Arc<LRep>, phi: Arc<Vec<usize>> },
}

/// A representation of `L^I` with `|I| = arity`.
#[derive(Clone, Debug)]
pub struct LRep {
    field: Field,
    arity: usize,
    dim: usize,
    node: Node,
}

impl LRep {
    pub fn space(field: &Field, arity: usize, dim: usize) -> LRep {
        LRep {
            field: field.clone(),
            arity,
            dim,
            node: Node::Space { dim },
        }
    }

    pub fn trivial(field: &Field, arity: usize) -> LRep {
        Self::space(field, arity, 1)
    }

    pub fn factor(arity: usize, coord: usize, rep: &GroupRep) -> Result<LRep> {
        if coord >= arity {
            return Err(Error::DimensionMismatch("coordinate outside the index set".into()));
        }
        Ok(LRep {
            field: rep.field().clone(),
            arity,
            dim: rep.dim(),
            node: Node::Factor { coord, rep: rep.clone() },
        })
    }

    pub fn inflated(t: &ParamTarget, arity: usize, coord: usize, rep: &GroupRep) -> Result<LRep> {
        if coord >= arity {
            return Err(Error::DimensionMismatch("coordinate outside the index set".into()));
        }
        if rep.group() != t.quotient() {
            return Err(Error::InvalidRep("inflation needs a representation of Q".into()));
        }
        Ok(LRep {
            field: rep.field().clone(),
            arity,
            dim: rep.dim(),
            node: Node::Inflated {
                coord,
                rep: rep.clone(),
                ghat_order: t.ghat().order(),
            },
        })
    }

    /// Internal tensor product of two representations of the same `L^I`.
    pub fn tensor(&self, other: &LRep) -> Result<LRep> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch("tensor of different index sets".into()));
        }
        Ok(LRep {
            field: self.field.clone(),
            arity: self.arity,
            dim: self.dim * other.dim,
            node: Node::Tensor(Arc::new(self.clone()), Arc::new(other.clone())),
        })
    }

    pub fn sum(&self, other: &LRep) -> Result<LRep> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch("sum of different index sets".into()));
        }
        Ok(LRep {
            field: self.field.clone(),
            arity: self.arity,
            dim: self.dim + other.dim,
            node: Node::Sum(Arc::new(self.clone()), Arc::new(other.clone())),
        })
    }

    pub fn dual(&self, l: &FiniteGroup) -> LRep {
        LRep {
            field: self.field.clone(),
            arity: self.arity,
            dim: self.dim,
            node: Node::Dual {
                inner: Arc::new(self.clone()),
                l: l.clone(),
            },
        }
    }

    /// `W^zeta` as a representation of `L^J`, `zeta: I -> J`.
    pub fn reindex(&self, zeta: &[usize], target_arity: usize) -> Result<LRep> {
        if zeta.len() != self.arity || zeta.iter().any(|&j| j >= target_arity) {
            return Err(Error::DimensionMismatch("zeta must map the index set into the target".into()));
        }
        Ok(LRep {
            field: self.field.clone(),
            arity: target_arity,
            dim: self.dim,
            node: Node::Reindex {
                inner: Arc::new(self.clone()),
                zeta: zeta.to_vec(),
            },
        })
    }

    /// External tensor product over `I_1 + I_2`.
    pub fn boxtimes(&self, other: &LRep) -> Result<LRep> {
        let n = self.arity + other.arity;
        let left: Vec<usize> = (0..self.arity).collect();
        let right: Vec<usize> = (self.arity..n).collect();
        self.reindex(&left, n)?.tensor(&other.reindex(&right, n)?)
    }

    /// External direct sum over `I_1 + I_2`.
    pub fn boxplus(&self, other: &LRep) -> Result<LRep> {
        let n = self.arity + other.arity;
        let left: Vec<usize> = (0..self.arity).collect();
        let right: Vec<usize> = (self.arity..n).collect();
        self.reindex(&left, n)?.sum(&other.reindex(&right, n)?)
    }

    /// Restriction along `phi: L_H -> L` on every coordinate.
    pub fn pull(&self, phi: &[usize]) -> LRep {
        LRep {
            field: self.field.clone(),
            arity: self.arity,
            dim: self.dim,
            node: Node::Pull {
                inner: Arc::new(self.clone()),
                phi: Arc::new(phi.to_vec()),
            },
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The matrix of `(g_i)_i`.
    pub fn matrix(&self, g: &[usize]) -> Mat {
        debug_assert_eq!(g.len(), self.arity);
        match &self.node {
            Node::Space { dim } => Mat::identity(&self.field, *dim),
            Node::Factor { coord, rep } => rep.matrix(g[*coord]),
            Node::Inflated { coord, rep, ghat_order } => rep.matrix(g[*coord] / ghat_order),
            Node::Tensor(a, b) => a.matrix(g).kron(&b.matrix(g)),
            Node::Sum(a, b) => a.matrix(g).block_diag(&b.matrix(g)),
            Node::Dual { inner, l } => {
                let inv: Vec<usize> = g.iter().map(|&x| l.inv(x)).collect();
                inner.matrix(&inv).transpose()
            }
            Node::Reindex { inner, zeta } => {
                let pulled: Vec<usize> = zeta.iter().map(|&j| g[j]).collect();
                inner.matrix(&pulled)
            }
            Node::Pull { inner, phi } => {
                let pushed: Vec<usize> = g.iter().map(|&x| phi[x]).collect();
                inner.matrix(&pushed)
            }
        }
    }

    /// Matrices of the diagonal `Ghat` generators.
    pub fn diagonal_matrices(&self, t: &ParamTarget) -> Vec<Mat> {
        t.ghat_generators()
            .into_iter()
            .map(|h| self.matrix(&vec![h; self.arity]))
            .collect()
    }

    /// Generators of `L^I`: a generator of `L` in one coordinate.
    pub fn generator_tuples(&self, l: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.arity {
            for &s in l.generators() {
                let mut g = vec![l.identity(); self.arity];
                g[i] = s;
                out.push(g);
            }
        }
        out
    }

    /// Diagonal-`Ghat`-invariant vectors, as echelon rows.
    pub fn invariant_vectors(&self, t: &ParamTarget) -> Mat {
        let id = Mat::identity(&self.field, self.dim);
        let mut stacked = Mat::zeros(&self.field, 0, self.dim);
        for m in self.diagonal_matrices(t) {
            stacked = stacked.vstack(&m.sub(&id));
        }
        stacked.kernel()
    }

    /// Diagonal-`Ghat`-invariant functionals, as echelon rows.
    pub fn invariant_functionals(&self, t: &ParamTarget) -> Mat {
        let id = Mat::identity(&self.field, self.dim);
        let mut stacked = Mat::zeros(&self.field, 0, self.dim);
        for m in self.diagonal_matrices(t) {
            stacked = stacked.vstack(&m.sub(&id).transpose());
        }
        stacked.kernel()
    }
}

/// `S_{I, W, x, xi, (gamma_i)}`
#[derive(Clone, Debug)]
pub struct SecondGen {
    pub w: LRep,
    pub x: Vec<Fe>,
    pub xi: Vec<Fe>,
    pub gammas: Vec<usize>,
}

impl SecondGen {
    /// Checks the invariance of `x` and `xi` under the diagonal `Ghat`.
    pub fn new(t: &ParamTarget, src: &SourceGroup, w: LRep, x: Vec<Fe>, xi: Vec<Fe>, gammas: Vec<usize>) -> Result<SecondGen> {
        if x.len() != w.dim() || xi.len() != w.dim() {
            return Err(Error::DimensionMismatch("x and xi must live on W".into()));
        }
        if gammas.len() != w.arity() || gammas.iter().any(|&g| g >= src.gamma().order()) {
            return Err(Error::DimensionMismatch("one element of Gamma per index".into()));
        }
        for m in w.diagonal_matrices(t) {
            if m.apply(&x) != x {
                return Err(Error::NotInvariant);
            }
            if m.transpose().apply(&xi) != xi {
                return Err(Error::NotInvariant);
            }
        }
        Ok(SecondGen { w, x, xi, gammas })
    }

    /// `<xi, (g_i) x>`
    pub fn pairing(&self, g: &[usize]) -> Fe {
        dot(self.w.field(), &self.xi, &self.w.matrix(g).apply(&self.x))
    }
}

pub fn eval_second_at(src: &SourceGroup, gen: &SecondGen, rho: &[usize], conv: Convention) -> Fe {
    gen.pairing(&evaluation_tuple(src, rho, &gen.gammas, conv))
}

pub fn eval_second(src: &SourceGroup, gen: &SecondGen, point: &RepPoint, conv: Convention) -> Fe {
    eval_second_at(src, gen, &point.images, conv)
}

/// `f_{x, xi}((g_i)) = <xi, (g_i) x>`, with its bi-invariance re-verified.
pub fn bridge_f(t: &ParamTarget, gen: &SecondGen) -> Result<InvariantFunction> {
    InvariantFunction::from_fn(t, gen.w.field(), gen.w.arity(), |g| gen.pairing(g))
}

/// `delta_W = sum_i e_i (x) e_i^*` in `W (x) W^*`.
pub fn coevaluation(dim: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; dim * dim];
    for i in 0..dim {
        v[i * dim + i] = Fe::ONE;
    }
    v
}

/// A few small representations of `L`: the trivial one and permutation
/// modules on cosets of cyclic subgroups (and of `Ghat`) of small index.
pub fn rep_pool(t: &ParamTarget, field: &Field, max_dim: usize) -> Vec<GroupRep> {
    let l = t.l();
    let mut pool = vec![GroupRep::trivial(l, field)];
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut candidates: Vec<Vec<usize>> = l.elements().map(|g| l.subgroup_generated(&[g])).collect();
    candidates.push(t.ghat_elements());
    for sub in candidates {
        if seen.contains(&sub) {
            continue;
        }
        let index = l.order() / sub.len();
        if (2..=max_dim).contains(&index) && l.is_subgroup(&sub) {
            pool.push(GroupRep::permutation(l, field, &sub));
        }
        seen.push(sub);
    }
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge_of_sign_pair() {
        let f = Field::prime(5);
        let c2 = FiniteGroup::cyclic(2);
        let t = ParamTarget::split(&c2).unwrap();
        let src = SourceGroup::unramified(&c2);
        let chi = GroupRep::new(&c2, &f, 1, &[Mat::scalar(&f, 1, f.from_int(-1))]).unwrap();
        // chi (x) chi^{-1}
        let w = LRep::factor(1, 0, &chi)
            .unwrap()
            .boxtimes(&LRep::factor(1, 0, &chi).unwrap().dual(t.l()))
            .unwrap();
        let gen = SecondGen::new(&t, &src, w, vec![Fe::ONE], vec![Fe::ONE], vec![1, 0]).unwrap();
        let fx = bridge_f(&t, &gen).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let sign = |g: usize| if g == 0 { 1 } else { -1 };
                assert_eq!(fx.eval(&[a, b]), f.from_int(sign(a) * sign(b)));
            }
        }
    }

    #[test]
    fn trivial_bridge_is_constant() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        let src = SourceGroup::unramified(&s3);
        let gen = SecondGen::new(&t, &src, LRep::trivial(&f, 2), vec![Fe::ONE], vec![Fe::ONE], vec![1, 2]).unwrap();
        let fx = bridge_f(&t, &gen).unwrap();
        assert!(fx.table().iter().all(|&v| v == Fe::ONE));
    }

    #[test]
    fn dual_pairing_is_invariant() {
        let f = Field::prime(5);
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        let perm = GroupRep::permutation(&s3, &f, &[0]);
        let v = LRep::factor(1, 0, &perm).unwrap();
        let w = v.boxtimes(&v.dual(t.l())).unwrap();
        let inv = w.invariant_vectors(&t);
        assert!(inv.rows() >= 1);
        let delta = coevaluation(6);
        let as_space = crate::linalg::Subspace::span(&inv);
        assert!(as_space.contains(&delta));
    }
}
