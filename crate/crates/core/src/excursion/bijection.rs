//! Characters of the excursion algebra against points of the
//! representation stack. Generators are evaluated at every point; the
//! algebra they span is closed under products and its characters are
//! counted as the classes of points it fails to separate.

use std::collections::BTreeMap;

use serde::Serialize;

use super::functions::{encode, evaluation_tuple, orbit_labels, Convention, MAX_TABLE};
use super::target::{rep_stack, ParamTarget, SourceGroup};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::linalg::{Mat, Subspace};

/// Product closure stops here.
pub const MAX_DEGREE: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub points: usize,
    /// Classes of points not separated by the algebra.
    pub characters: usize,
    /// Dimension of the algebra as a space of functions on points.
    pub algebra_dim: usize,
    pub generator_vectors: usize,
    pub max_arity: usize,
    /// Product degree at which the span became closed.
    pub degree: usize,
}

impl BijectionReport {
    pub fn pass(&self) -> bool {
        self.characters == self.points && self.algebra_dim == self.characters
    }
}

fn pointwise(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()
}

/// Values at the points of every generator `S_{n, 1_O, (gamma_i)}` with
/// `1_O` the indicator of a bi-orbit, for `n <= max_arity`, plus the unit.
pub fn generator_vectors(src: &SourceGroup, t: &ParamTarget, max_arity: usize, conv: Convention) -> Result<Vec<Vec<Fe>>> {
    let points = rep_stack(src, t)?;
    let np = points.len();
    let gam = src.gamma();
    let order = t.l().order();
    let mut out = vec![vec![Fe::ONE; np]];
    for n in 1..=max_arity {
        let (labels, _) = orbit_labels(t, n)?;
        let tuples = (gam.order() as u128).pow(n as u32);
        if tuples > MAX_TABLE as u128 {
            return Err(Error::TooLarge {
                size: tuples.min(usize::MAX as u128) as usize,
                cap: MAX_TABLE,
            });
        }
        for idx in 0..tuples as usize {
            let gammas = super::functions::decode(gam.order(), idx, n);
            // points grouped by the orbit their evaluation tuple lands in
            let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (k, p) in points.iter().enumerate() {
                let tuple = evaluation_tuple(src, &p.images, &gammas, conv);
                classes.entry(labels[encode(order, &tuple)]).or_default().push(k);
            }
            if classes.len() < 2 {
                continue;
            }
            for members in classes.values() {
                let mut v = vec![Fe::ZERO; np];
                for &k in members {
                    v[k] = Fe::ONE;
                }
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// The algebra generated by `gens` inside functions on `n` points, and the
/// degree at which it closed. `SaturationCap` if products up to
/// `MAX_DEGREE` do not close up.
pub fn generated_subalgebra(field: &Field, n: usize, gens: &[Vec<Fe>]) -> Result<(Subspace, usize)> {
    let first = Subspace::span(&Mat::from_rows(field, n, gens));
    let mut current = first.clone();
    for degree in 1..=MAX_DEGREE {
        let mut products = Vec::new();
        for a in current.basis().row_list() {
            for b in first.basis().row_list() {
                products.push(pointwise(field, &a, &b));
            }
        }
        let next = current.sum(&Subspace::span(&Mat::from_rows(field, n, &products)));
        if next.dim() == current.dim() {
            return Ok((current, degree));
        }
        current = next;
    }
    Err(Error::SaturationCap(MAX_DEGREE))
}

/// Number of classes of points on which every function in `space` is constant.
pub fn separation_classes(space: &Subspace) -> usize {
    let rows = space.basis().row_list();
    let mut seen: Vec<Vec<Fe>> = (0..space.ambient()).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
    seen.sort();
    seen.dedup();
    seen.len()
}

pub fn character_bijection_report(
    src: &SourceGroup,
    t: &ParamTarget,
    field: &Field,
    max_arity: usize,
    conv: Convention,
) -> Result<BijectionReport> {
    let points = rep_stack(src, t)?.len();
    let gens = generator_vectors(src, t, max_arity, conv)?;
    let (algebra, degree) = generated_subalgebra(field, points, &gens)?;
    Ok(BijectionReport {
        points,
        characters: separation_classes(&algebra),
        algebra_dim: algebra.dim(),
        generator_vectors: gens.len(),
        max_arity,
        degree,
    })
}

/// Do both evaluation conventions generate the same algebra?
pub fn conventions_agree(src: &SourceGroup, t: &ParamTarget, field: &Field, max_arity: usize) -> Result<bool> {
    let n = rep_stack(src, t)?.len();
    let a = generated_subalgebra(field, n, &generator_vectors(src, t, max_arity, Convention::Naive)?)?.0;
    let b = generated_subalgebra(field, n, &generator_vectors(src, t, max_arity, Convention::LastIndex)?)?.0;
    Ok(a == b)
}

/// A named instance `(Gamma, L)`.
pub struct Instance {
    pub name: &'static str,
    pub src: SourceGroup,
    pub target: ParamTarget,
    pub max_arity: usize,
}

/// `(C_2, C_2)`, `(S_3, S_3)` and `C_3` into `S_3 x| C_3` with `C_3`
/// acting through conjugation by a 3-cycle.
pub fn standard_instances() -> Result<Vec<Instance>> {
    let c2 = FiniteGroup::cyclic(2);
    let s3 = FiniteGroup::symmetric(3);
    let c3 = FiniteGroup::cyclic(3);
    let cycle = s3.elements().find(|&g| s3.element_order(g) == 3).expect("S_3 has a 3-cycle");
    let action: Vec<Vec<usize>> = (0..3usize)
        .map(|k| {
            let c = s3.pow(cycle, k);
            s3.elements().map(|g| s3.conjugate(c, g)).collect()
        })
        .collect();
    let twisted = ParamTarget::new(&s3, &c3, action)?;
    let to_q: Vec<usize> = c3.elements().collect();
    Ok(vec![
        Instance {
            name: "C2_into_C2",
            src: SourceGroup::unramified(&c2),
            target: ParamTarget::split(&c2)?,
            max_arity: 3,
        },
        Instance {
            name: "S3_into_S3",
            src: SourceGroup::unramified(&s3),
            target: ParamTarget::split(&s3)?,
            max_arity: 3,
        },
        Instance {
            name: "C3_into_S3_x_C3",
            src: SourceGroup::new(&c3, &c3, to_q)?,
            target: twisted,
            max_arity: 2,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_instances_separate_points() {
        let f = Field::prime(5);
        let expected_points = [2usize, 3];
        for (i, inst) in standard_instances().unwrap().iter().enumerate() {
            let r = character_bijection_report(&inst.src, &inst.target, &f, inst.max_arity, Convention::Naive).unwrap();
            if let Some(&n) = expected_points.get(i) {
                assert_eq!(r.points, n, "{}", inst.name);
            }
            assert!(r.pass(), "{}: {:?}", inst.name, r);
            assert!(conventions_agree(&inst.src, &inst.target, &f, inst.max_arity).unwrap());
        }
    }

    #[test]
    fn arity_one_does_not_separate_s3() {
        // with Q trivial a bi-invariant function of one variable is constant
        let f = Field::prime(5);
        let s3 = FiniteGroup::symmetric(3);
        let src = SourceGroup::unramified(&s3);
        let t = ParamTarget::split(&s3).unwrap();
        let r = character_bijection_report(&src, &t, &f, 1, Convention::Naive).unwrap();
        assert_eq!(r.points, 3);
        assert_eq!(r.characters, 1);
    }
}
