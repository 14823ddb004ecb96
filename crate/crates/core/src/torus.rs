//! Base change for tori. The affine Grassmannian of a torus of rank `r` is
//! discrete with components labeled by `Z^r`; a parity object is a finite
//! family of multiplicity spaces indexed by labels. For `G = H^p` with `H`
//! of rank one, `BC` is `Nm` followed by Tate cohomology on the
//! `sigma`-fixed (diagonal) labels and an inverse Frobenius twist.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{is_prime, Fe, Field};
use crate::linalg::{Mat, Subquotient};
use crate::linkage::rotation_matrix;
use crate::sigma_mod::tate_of;

/// Largest multiplicity module handled by a dense Tate computation.
pub const DENSE_CAP: usize = 4096;

/// Largest number of `p`-tuples of basis vectors enumerated for `BC` on objects.
pub const ENUMERATION_CAP: usize = 1 << 16;

pub type Label = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusParityObj {
    rank: usize,
    support: BTreeMap<Label, usize>,
}

impl TorusParityObj {
    pub fn new(rank: usize, entries: impl IntoIterator<Item = (Label, usize)>) -> Result<TorusParityObj> {
        if rank == 0 {
            return Err(Error::InvalidTorus("rank must be positive".into()));
        }
        let mut support = BTreeMap::new();
        for (label, mult) in entries {
            if label.len() != rank {
                return Err(Error::InvalidTorus(format!("label {:?} does not have rank {}", label, rank)));
            }
            if mult > 0 {
                *support.entry(label).or_insert(0) += mult;
            }
        }
        Ok(TorusParityObj { rank, support })
    }

    pub fn zero(rank: usize) -> TorusParityObj {
        TorusParityObj {
            rank,
            support: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn support(&self) -> &BTreeMap<Label, usize> {
        &self.support
    }

    pub fn mult(&self, label: &[i64]) -> usize {
        self.support.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn direct_sum(&self, other: &TorusParityObj) -> Result<TorusParityObj> {
        if self.rank != other.rank {
            return Err(Error::InvalidTorus("ranks differ".into()));
        }
        TorusParityObj::new(self.rank, self.support.iter().chain(&other.support).map(|(l, &m)| (l.clone(), m)))
    }
}

/// A morphism of parity objects: one matrix per label, `mult_target x mult_source`.
/// Labels without a block carry the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMorphism {
    source: TorusParityObj,
    target: TorusParityObj,
    blocks: BTreeMap<Label, Mat>,
}

impl TorusMorphism {
    pub fn new(source: &TorusParityObj, target: &TorusParityObj, blocks: BTreeMap<Label, Mat>) -> Result<TorusMorphism> {
        if source.rank != target.rank {
            return Err(Error::InvalidTorus("ranks differ".into()));
        }
        for (label, m) in &blocks {
            if m.rows() != target.mult(label) || m.cols() != source.mult(label) {
                return Err(Error::InvalidTorus(format!("block at {:?} has the wrong shape", label)));
            }
        }
        let blocks = blocks
            .into_iter()
            .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
            .collect();
        Ok(TorusMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        })
    }

    pub fn identity(field: &Field, obj: &TorusParityObj) -> TorusMorphism {
        Self::scalar(field, obj, Fe::ONE)
    }

    pub fn scalar(field: &Field, obj: &TorusParityObj, lambda: Fe) -> TorusMorphism {
        let blocks = obj.support.iter().map(|(l, &m)| (l.clone(), Mat::scalar(field, m, lambda))).collect();
        TorusMorphism {
            source: obj.clone(),
            target: obj.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &TorusParityObj {
        &self.source
    }

    pub fn target(&self) -> &TorusParityObj {
        &self.target
    }

    /// The block at a label, zero if absent.
    pub fn block(&self, field: &Field, label: &[i64]) -> Mat {
        self.blocks
            .get(label)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(field, self.target.mult(label), self.source.mult(label)))
    }

    pub fn blocks(&self) -> &BTreeMap<Label, Mat> {
        &self.blocks
    }

    /// `self o other`
    pub fn compose(&self, field: &Field, other: &TorusMorphism) -> Result<TorusMorphism> {
        if other.target != self.source {
            return Err(Error::InvalidTorus("morphisms are not composable".into()));
        }
        let blocks = other
            .source
            .support
            .keys()
            .map(|l| (l.clone(), self.block(field, l).mul(&other.block(field, l))))
            .collect();
        TorusMorphism::new(&other.source, &self.target, blocks)
    }

    /// Block sum; at each label the basis of `self` comes first.
    pub fn direct_sum(&self, field: &Field, other: &TorusMorphism) -> Result<TorusMorphism> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let mut blocks = BTreeMap::new();
        for l in source.support.keys().chain(target.support.keys()) {
            blocks.insert(l.clone(), self.block(field, l).block_diag(&other.block(field, l)));
        }
        TorusMorphism::new(&source, &target, blocks)
    }

    /// Equality of maps, treating absent blocks as zero.
    pub fn same_map(&self, field: &Field, other: &TorusMorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .source
                .support
                .keys()
                .all(|l| self.block(field, l) == other.block(field, l))
    }
}

fn check_p(rank: usize) -> Result<u32> {
    let p = rank as u32;
    if p == 2 || (p > 2 && p.is_multiple_of(2)) {
        return Err(Error::EvenPrime(p));
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(p)
}

/// `sigma(n)_i = n_{i-1}`
fn rotate_label(l: &[i64]) -> Label {
    let p = l.len();
    (0..p).map(|i| l[(i + p - 1) % p]).collect()
}

fn add_labels(a: &[i64], b: &[i64]) -> Label {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Label of the convolution of `sigma^i F` over a tuple `(l_0, .., l_{p-1})`:
/// `sum_i sigma^i(l_i)`.
fn norm_label(tuple: &[&Label]) -> Label {
    let p = tuple.len();
    let mut acc = vec![0; p];
    for (i, l) in tuple.iter().enumerate() {
        let mut moved = (*l).clone();
        for _ in 0..i {
            moved = rotate_label(&moved);
        }
        acc = add_labels(&acc, &moved);
    }
    acc
}

fn tuples<T: Clone>(items: &[T], p: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// `Nm(F) = F * sigma F * .. * sigma^{p-1} F`: every `p`-tuple of labels
/// contributes the tensor product of its multiplicity spaces at
/// `sum_i sigma^i(l_i)`. A single label `(n_i)` goes to the diagonal label
/// with entries `sum n_i`.
pub fn nm_obj(f: &TorusParityObj) -> Result<TorusParityObj> {
    let p = check_p(f.rank)? as usize;
    let labels: Vec<&Label> = f.support.keys().collect();
    let entries = tuples(&labels, p).into_iter().map(|t| {
        let mult = t.iter().map(|l| f.mult(l)).product();
        (norm_label(&t), mult)
    });
    TorusParityObj::new(p, entries.collect::<Vec<_>>())
}

/// Basis of the `Nm` stalk at the diagonal label with entry `s`: sequences of
/// `(label, basis index)` whose norm label is `(s, .., s)`.
/// Diagonal stalks of `Nm(F)` by sum: sequences of indices into the
/// multiplicity basis points `(l, b)` of `F`, in label order.
fn diagonal_stalks(f: &TorusParityObj, p: usize) -> BTreeMap<i64, Vec<Vec<usize>>> {
    let labels: Vec<&Label> = f
        .support
        .iter()
        .flat_map(|(l, &m)| std::iter::repeat_n(l, m))
        .collect();
    // rotated[i][x] = sigma^i(label of point x)
    let mut rotated: Vec<Vec<Label>> = vec![labels.iter().map(|l| (*l).clone()).collect()];
    for i in 1..p {
        let next = rotated[i - 1].iter().map(|l| rotate_label(l)).collect();
        rotated.push(next);
    }
    let mut stalks: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for seq in tuples(&(0..labels.len()).collect::<Vec<_>>(), p) {
        let mut acc = vec![0i64; p];
        for (i, &x) in seq.iter().enumerate() {
            for (a, n) in acc.iter_mut().zip(&rotated[i][x]) {
                *a += n;
            }
        }
        if acc.iter().all(|&a| a == acc[0]) {
            stalks.entry(acc[0]).or_default().push(seq);
        }
    }
    stalks
}

/// `dim T^0` of the stalk, where `sigma` rotates sequences.
fn stalk_tate_dim(field: &Field, stalk: &[Vec<usize>]) -> usize {
    let rotate = |seq: &Vec<usize>| -> Vec<usize> {
        let p = seq.len();
        (0..p).map(|i| seq[(i + p - 1) % p]).collect()
    };
    if stalk.len() > DENSE_CAP / 16 {
        // permutation module: fixed basis vectors span T^0, free orbits contribute nothing
        return stalk.iter().filter(|s| rotate(s) == **s).count();
    }
    let position: HashMap<&Vec<usize>, usize> = stalk.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let perm: Vec<usize> = stalk
        .iter()
        .map(|s| position[&rotate(s)])
        .collect();
    tate_of(&Mat::permutation(field, &perm)).t0.dim()
}

fn diagonal_sums(f: &TorusParityObj) -> Vec<i64> {
    let mut sums: Vec<i64> = f.support.keys().map(|l| l.iter().sum()).collect();
    sums.sort();
    sums.dedup();
    sums
}

/// `BC(F)`: `T^0` of `Nm(F)` on diagonal labels, relabeled `(s, .., s) -> s`.
/// The multiplicity space at `s` has basis `(l, b)` for `sum l = s`, in label order.
pub fn bc_obj(f: &TorusParityObj) -> Result<TorusParityObj> {
    let p = check_p(f.rank)? as usize;
    let field = Field::prime(p as u32);
    let mut entries = Vec::new();
    let total: usize = f.support.values().sum();
    let enumerable = total.checked_pow(p as u32).is_some_and(|n| n <= ENUMERATION_CAP);
    let stalks = if enumerable { diagonal_stalks(f, p) } else { BTreeMap::new() };
    for s in diagonal_sums(f) {
        let dim = if enumerable {
            stalks.get(&s).map_or(0, |st| stalk_tate_dim(&field, st))
        } else {
            // only constant sequences are fixed by the rotation
            f.support.iter().filter(|(l, _)| l.iter().sum::<i64>() == s).map(|(_, &m)| m).sum()
        };
        entries.push((vec![s], dim));
    }
    TorusParityObj::new(1, entries)
}

/// The map induced by `phi^{(x) p}` on `T^0(k^m (x) .. (x) k^m)`, in the
/// bases `e_b^{(x) p}` on both sides.
pub fn norm_tate_block(phi: &Mat, p: usize) -> Result<Mat> {
    let f = phi.field();
    let (m_out, m_in) = (phi.rows(), phi.cols());
    let dim = |m: usize| m.checked_pow(p as u32).filter(|&d| d <= DENSE_CAP);
    let (d_in, d_out) = match (dim(m_in), dim(m_out)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::TooLarge {
                size: m_in.max(m_out).saturating_pow(p as u32),
                cap: DENSE_CAP,
            })
        }
    };
    if m_in == 0 || m_out == 0 {
        return Ok(Mat::zeros(f, m_out, m_in));
    }
    let module = |m: usize, d: usize| -> Result<Subquotient> {
        let rot = rotation_matrix(f, m, p);
        let groups = tate_of(&rot);
        let diag: Vec<Vec<Fe>> = (0..m)
            .map(|b| {
                let mut v = vec![Fe::ZERO; d];
                v[(0..p).fold(0, |acc, _| acc * m + b)] = Fe::ONE;
                v
            })
            .collect();
        Subquotient::with_representatives(groups.t0.upper(), groups.t0.lower(), &Mat::from_rows(f, d, &diag))
    };
    let src = module(m_in, d_in)?;
    let tgt = module(m_out, d_out)?;
    let mut power = phi.clone();
    for _ in 1..p {
        power = power.kron(phi);
    }
    src.induced(&power, &tgt)
}

/// `BC(phi)`: blockwise `Nm` on diagonal labels, then `Frob^{-1}` entrywise.
/// Scalars `lambda` go to `lambda^p` and back to `lambda`.
pub fn bc_mor(field: &Field, phi: &TorusMorphism) -> Result<TorusMorphism> {
    let p = check_p(phi.source.rank)?;
    if field.characteristic() != p {
        return Err(Error::InvalidTorus(format!(
            "morphisms must be over a field of characteristic {}",
            p
        )));
    }
    let source = bc_obj(&phi.source)?;
    let target = bc_obj(&phi.target)?;
    let mut blocks = BTreeMap::new();
    for s in source.support.keys() {
        let mut rows = Vec::new();
        for l in phi.target.support.keys().filter(|l| l.iter().sum::<i64>() == s[0]) {
            let mut row_blocks = Vec::new();
            for k in phi.source.support.keys().filter(|k| k.iter().sum::<i64>() == s[0]) {
                let block = if k == l {
                    norm_tate_block(&phi.block(field, l), p as usize)?.map(|f, x| f.frobenius_inv(x))
                } else {
                    Mat::zeros(field, phi.target.mult(l), phi.source.mult(k))
                };
                row_blocks.push(block);
            }
            rows.push(row_blocks);
        }
        let mut m = Mat::zeros(field, target.mult(s), source.mult(s));
        let mut r0 = 0;
        for row in &rows {
            let mut c0 = 0;
            for b in row {
                m.set_block(r0, c0, b);
                c0 += b.cols();
            }
            r0 += row.first().map(|b| b.rows()).unwrap_or(0);
        }
        blocks.insert(s.clone(), m);
    }
    TorusMorphism::new(&source, &target, blocks)
}

/// Restriction along the diagonal `Z -> Z^p` of character lattices: each
/// character `(n_i)` restricts to `sum n_i`.
pub fn res_bc_oracle(v: &BTreeMap<Label, usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (l, &m) in v {
        if m > 0 {
            *out.entry(l.iter().sum()).or_insert(0) += m;
        }
    }
    out
}

/// The rank-one object with the given multiplicities.
pub fn rank_one(entries: &BTreeMap<i64, usize>) -> TorusParityObj {
    TorusParityObj::new(1, entries.iter().map(|(&s, &m)| (vec![s], m))).expect("rank one labels")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(p: usize, entries: &[(&[i64], usize)]) -> TorusParityObj {
        TorusParityObj::new(p, entries.iter().map(|(l, m)| (l.to_vec(), *m))).unwrap()
    }

    #[test]
    fn norm_of_a_point_is_diagonal() {
        let f = obj(3, &[(&[2, 3, -1], 1)]);
        assert_eq!(nm_obj(&f).unwrap(), obj(3, &[(&[4, 4, 4], 1)]));
        assert_eq!(nm_obj(&TorusParityObj::zero(3)).unwrap(), TorusParityObj::zero(3));
        let z = obj(3, &[(&[0, 0, 0], 2)]);
        assert_eq!(nm_obj(&z).unwrap(), obj(3, &[(&[0, 0, 0], 8)]));
    }

    #[test]
    fn bc_examples() {
        let f = obj(3, &[(&[2, 3, -1], 1)]);
        assert_eq!(bc_obj(&f).unwrap(), obj(1, &[(&[4], 1)]));
        let g = obj(3, &[(&[2, 3, -1], 1), (&[0, 0, 0], 1)]);
        assert_eq!(bc_obj(&g).unwrap(), obj(1, &[(&[4], 1), (&[0], 1)]));
        assert_eq!(bc_obj(&obj(3, &[(&[1, 0, 0], 1)])).unwrap(), obj(1, &[(&[1], 1)]));
        assert!(bc_obj(&TorusParityObj::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn even_rank_rejected() {
        let f = obj(2, &[(&[1, 0], 1)]);
        assert_eq!(nm_obj(&f), Err(Error::EvenPrime(2)));
        assert_eq!(bc_obj(&f), Err(Error::EvenPrime(2)));
    }

    #[test]
    fn scalars_survive() {
        let field = Field::new(3, 2).unwrap();
        let f = obj(3, &[(&[2, 3, -1], 1)]);
        for lambda in field.elements() {
            let phi = TorusMorphism::scalar(&field, &f, lambda);
            let raw = norm_tate_block(&Mat::scalar(&field, 1, lambda), 3).unwrap();
            assert_eq!(raw.get(0, 0), field.frobenius(lambda));
            let bc = bc_mor(&field, &phi).unwrap();
            assert_eq!(bc.block(&field, &[4]), Mat::scalar(&field, 1, lambda));
        }
    }

    #[test]
    fn general_block_is_entrywise_frobenius() {
        let field = Field::new(3, 2).unwrap();
        let x = field.x();
        let phi = Mat::from_fn(&field, 2, 2, |i, j| field.pow(x, (i * 2 + j + 1) as u64));
        let raw = norm_tate_block(&phi, 3).unwrap();
        assert_eq!(raw, phi.map(|f, a| f.frobenius(a)));
    }
}
