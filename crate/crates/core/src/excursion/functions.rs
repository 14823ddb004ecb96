//! Functions on `L^n` invariant under simultaneous left and right
//! translation by `Ghat`, and the evaluation of first-presentation
//! generators `S_{n, f, (gamma_i)}` at points of the representation stack.

use rand::Rng;

use super::target::{ParamTarget, RepPoint, SourceGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;

/// Largest table a function may have.
pub const MAX_TABLE: usize = 1 << 20;

/// How a generator is evaluated at a homomorphism `rho`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `f((rho(gamma_i))_i)`
    Naive,
    /// `f(rho(gamma_0 gamma_n), ..., rho(gamma_{n-1} gamma_n), rho(gamma_n))`
    LastIndex,
}

/// `(gamma_i)_{i<n}, gamma_n -> (gamma_i gamma_n)_{i<n}, gamma_n`; turns a
/// last-index evaluation into a naive one.
pub fn reparametrize(gamma: &FiniteGroup, gammas: &[usize]) -> Vec<usize> {
    match gammas.split_last() {
        None => Vec::new(),
        Some((&last, rest)) => rest.iter().map(|&g| gamma.mul(g, last)).chain([last]).collect(),
    }
}

/// The tuple of elements of `L` at which a generator is evaluated.
pub fn evaluation_tuple(src: &SourceGroup, rho: &[usize], gammas: &[usize], conv: Convention) -> Vec<usize> {
    match conv {
        Convention::Naive => gammas.iter().map(|&g| rho[g]).collect(),
        Convention::LastIndex => reparametrize(src.gamma(), gammas).iter().map(|&g| rho[g]).collect(),
    }
}

pub(crate) fn encode(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub(crate) fn decode(order: usize, mut idx: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    out
}

fn table_size(order: usize, arity: usize) -> Result<usize> {
    let size = (order as u128).pow(arity as u32);
    if size > MAX_TABLE as u128 {
        return Err(Error::TooLarge {
            size: size.min(usize::MAX as u128) as usize,
            cap: MAX_TABLE,
        });
    }
    Ok(size as usize)
}

/// A `Ghat`-bi-invariant function `L^n -> k`, as a full table indexed with
/// the first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFunction {
    field: Field,
    order: usize,
    arity: usize,
    table: Vec<Fe>,
}

/// Orbit labels of `Ghat x Ghat` acting on `L^n` by `(h, h') . (g_i) = (h g_i h'^{-1})`.
pub fn orbit_labels(t: &ParamTarget, arity: usize) -> Result<(Vec<u32>, usize)> {
    let order = t.l().order();
    let size = table_size(order, arity)?;
    let l = t.l();
    let gens = t.ghat_generators();
    let mut label = vec![u32::MAX; size];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..size {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            let tuple = decode(order, idx, arity);
            for &h in &gens {
                let left: Vec<usize> = tuple.iter().map(|&g| l.mul(h, g)).collect();
                let right: Vec<usize> = tuple.iter().map(|&g| l.mul(g, h)).collect();
                for next in [encode(order, &left), encode(order, &right)] {
                    if label[next] == u32::MAX {
                        label[next] = count;
                        stack.push(next);
                    }
                }
            }
        }
        count += 1;
    }
    Ok((label, count as usize))
}

impl InvariantFunction {
    /// Checks invariance under the generators of `Ghat` on both sides.
    pub fn from_table(t: &ParamTarget, field: &Field, arity: usize, table: Vec<Fe>) -> Result<InvariantFunction> {
        let order = t.l().order();
        let size = table_size(order, arity)?;
        if table.len() != size {
            return Err(Error::DimensionMismatch(format!("expected {size} values, got {}", table.len())));
        }
        let l = t.l();
        let gens = t.ghat_generators();
        for idx in 0..size {
            let tuple = decode(order, idx, arity);
            for &h in &gens {
                let left: Vec<usize> = tuple.iter().map(|&g| l.mul(h, g)).collect();
                let right: Vec<usize> = tuple.iter().map(|&g| l.mul(g, h)).collect();
                if table[encode(order, &left)] != table[idx] || table[encode(order, &right)] != table[idx] {
                    return Err(Error::NotInvariant);
                }
            }
        }
        Ok(InvariantFunction {
            field: field.clone(),
            order,
            arity,
            table,
        })
    }

    pub fn from_fn(t: &ParamTarget, field: &Field, arity: usize, f: impl Fn(&[usize]) -> Fe) -> Result<InvariantFunction> {
        let order = t.l().order();
        let size = table_size(order, arity)?;
        let table = (0..size).map(|idx| f(&decode(order, idx, arity))).collect();
        Self::from_table(t, field, arity, table)
    }

    pub fn constant(t: &ParamTarget, field: &Field, arity: usize, c: Fe) -> Result<InvariantFunction> {
        let size = table_size(t.l().order(), arity)?;
        Ok(InvariantFunction {
            field: field.clone(),
            order: t.l().order(),
            arity,
            table: vec![c; size],
        })
    }

    /// Indicators of the bi-translation orbits: a basis of all invariant functions.
    pub fn orbit_basis(t: &ParamTarget, field: &Field, arity: usize) -> Result<Vec<InvariantFunction>> {
        let (labels, count) = orbit_labels(t, arity)?;
        Ok((0..count)
            .map(|k| InvariantFunction {
                field: field.clone(),
                order: t.l().order(),
                arity,
                table: labels.iter().map(|&x| if x as usize == k { Fe::ONE } else { Fe::ZERO }).collect(),
            })
            .collect())
    }

    pub fn random<R: Rng + ?Sized>(t: &ParamTarget, field: &Field, arity: usize, rng: &mut R) -> Result<InvariantFunction> {
        let (labels, count) = orbit_labels(t, arity)?;
        let values: Vec<Fe> = (0..count).map(|_| field.random(rng)).collect();
        Ok(InvariantFunction {
            field: field.clone(),
            order: t.l().order(),
            arity,
            table: labels.iter().map(|&x| values[x as usize]).collect(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Fe] {
        &self.table
    }

    pub fn eval(&self, tuple: &[usize]) -> Fe {
        debug_assert_eq!(tuple.len(), self.arity);
        self.table[encode(self.order, tuple)]
    }

    fn zip_with(&self, other: &InvariantFunction, op: impl Fn(Fe, Fe) -> Fe) -> Result<InvariantFunction> {
        if self.arity != other.arity || self.order != other.order {
            return Err(Error::DimensionMismatch("functions on different products".into()));
        }
        Ok(InvariantFunction {
            field: self.field.clone(),
            order: self.order,
            arity: self.arity,
            table: self.table.iter().zip(&other.table).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &InvariantFunction) -> Result<InvariantFunction> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn mul(&self, other: &InvariantFunction) -> Result<InvariantFunction> {
        self.zip_with(other, |a, b| self.field.mul(a, b))
    }

    pub fn scale(&self, c: Fe) -> InvariantFunction {
        InvariantFunction {
            table: self.table.iter().map(|&a| self.field.mul(c, a)).collect(),
            ..self.clone()
        }
    }

    /// `f^zeta((g_j)_j) = f((g_{zeta(i)})_i)` for `zeta: arity -> target_arity`.
    pub fn reindex(&self, zeta: &[usize], target_arity: usize) -> Result<InvariantFunction> {
        if zeta.len() != self.arity || zeta.iter().any(|&j| j >= target_arity) {
            return Err(Error::DimensionMismatch("zeta must map the index set into the target".into()));
        }
        let size = table_size(self.order, target_arity)?;
        let table = (0..size)
            .map(|idx| {
                let g = decode(self.order, idx, target_arity);
                let pulled: Vec<usize> = zeta.iter().map(|&j| g[j]).collect();
                self.eval(&pulled)
            })
            .collect();
        Ok(InvariantFunction {
            field: self.field.clone(),
            order: self.order,
            arity: target_arity,
            table,
        })
    }

    /// `f~((g_i) x (g'_i) x (g''_i)) = f((g_i g'_i^{-1} g''_i))` on three copies of the index set.
    pub fn triple(&self, t: &ParamTarget) -> Result<InvariantFunction> {
        let n = self.arity;
        let l = t.l();
        let size = table_size(self.order, 3 * n)?;
        let table = (0..size)
            .map(|idx| {
                let g = decode(self.order, idx, 3 * n);
                let combined: Vec<usize> = (0..n).map(|i| l.mul(l.mul(g[i], l.inv(g[n + i])), g[2 * n + i])).collect();
                self.eval(&combined)
            })
            .collect();
        Ok(InvariantFunction {
            field: self.field.clone(),
            order: self.order,
            arity: 3 * n,
            table,
        })
    }

    /// `f o phi^n` for a map `phi: L_H -> L`.
    pub fn pullback(&self, source: &ParamTarget, phi: &[usize]) -> Result<InvariantFunction> {
        InvariantFunction::from_fn(source, &self.field, self.arity, |h| {
            let g: Vec<usize> = h.iter().map(|&x| phi[x]).collect();
            self.eval(&g)
        })
    }
}

/// A first-presentation generator `S_{n, f, (gamma_i)}`.
#[derive(Clone, Debug)]
pub struct FirstGen {
    pub f: InvariantFunction,
    pub gammas: Vec<usize>,
}

impl FirstGen {
    pub fn new(src: &SourceGroup, f: InvariantFunction, gammas: Vec<usize>) -> Result<FirstGen> {
        if gammas.len() != f.arity() {
            return Err(Error::DimensionMismatch("one element of Gamma per index".into()));
        }
        if gammas.iter().any(|&g| g >= src.gamma().order()) {
            return Err(Error::InvalidGroup("gamma_i not in Gamma".into()));
        }
        Ok(FirstGen { f, gammas })
    }
}

/// Value of a generator at a homomorphism given as a full element map.
pub fn eval_at(src: &SourceGroup, gen: &FirstGen, rho: &[usize], conv: Convention) -> Fe {
    gen.f.eval(&evaluation_tuple(src, rho, &gen.gammas, conv))
}

pub fn eval_gen(src: &SourceGroup, gen: &FirstGen, point: &RepPoint, conv: Convention) -> Fe {
    eval_at(src, gen, &point.images, conv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts() {
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        // arity 1: Ghat \ L / Ghat is a point
        assert_eq!(orbit_labels(&t, 1).unwrap().1, 1);
        // arity 2: (g0, g1) up to bi-translation is the class of g0^{-1} g1
        assert_eq!(orbit_labels(&t, 2).unwrap().1, 3);
    }

    #[test]
    fn invariance_is_enforced() {
        let f = Field::prime(3);
        let c2 = FiniteGroup::cyclic(2);
        let t = ParamTarget::split(&c2).unwrap();
        let bad = InvariantFunction::from_table(&t, &f, 1, vec![Fe::ONE, Fe::ZERO]);
        assert_eq!(bad, Err(Error::NotInvariant));
        let sign = |g: usize| if g == 0 { Fe::ONE } else { f.from_int(-1) };
        let good = InvariantFunction::from_fn(&t, &f, 2, |g| f.mul(sign(g[0]), sign(g[1]))).unwrap();
        assert_eq!(good.eval(&[1, 0]), f.from_int(-1));
    }

    #[test]
    fn reparametrization() {
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(reparametrize(&c3, &[1, 1, 2]), vec![0, 0, 2]);
        assert_eq!(reparametrize(&c3, &[]), Vec::<usize>::new());
    }
}
