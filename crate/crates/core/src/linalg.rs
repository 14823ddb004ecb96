//! Dense exact linear algebra over a [`Field`].
//!
//! Vectors are columns: a matrix `M` of shape `rows x cols` sends
//! `F^cols -> F^rows`. Subspaces are stored as row bases in reduced echelon
//! form, so two equal subspaces always have identical bases.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.display(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Integer entries reduced into the prime field.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, ints: &[i64]) -> Mat {
        assert_eq!(ints.len(), rows * cols, "entry count");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: ints.iter().map(|&n| field.from_int(n)).collect(),
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Fe>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Fe>]) -> Mat {
        Mat::from_rows(field, rows, columns).transpose()
    }

    /// Permutation matrix with `e_j -> e_{perm[j]}`.
    pub fn permutation(field: &Field, perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Mat::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Fe::ONE;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Uniformly random invertible matrix by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Fe> {
        self.row(i).to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_list(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(&self.field, self.rows)
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left_p: self.field.characteristic(),
                left_m: self.field.degree(),
                right_p: other.field.characteristic(),
                right_m: other.field.degree(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![Fe::ZERO; n * m];
        if f.degree() == 1 {
            // accumulate in u64 and reduce once per entry
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for t in 0..k {
                    let a = self.data[i * k + t].index() as u64;
                    if a == 0 {
                        continue;
                    }
                    let orow = &other.data[t * m..(t + 1) * m];
                    for (slot, b) in acc.iter_mut().zip(orow) {
                        *slot += a * b.index() as u64;
                    }
                    if t % 1024 == 1023 {
                        acc.iter_mut().for_each(|a| *a %= p);
                    }
                }
                for j in 0..m {
                    out[i * m + j] = f.from_int((acc[j] % p) as i64);
                }
            }
        } else {
            for i in 0..n {
                for t in 0..k {
                    let a = self.data[i * k + t];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        let b = other.data[t * m + j];
                        if !b.is_zero() {
                            out[i * m + j] = f.add(out[i * m + j], f.mul(a, b));
                        }
                    }
                }
            }
        }
        Mat {
            field: f.clone(),
            rows: n,
            cols: m,
            data: out,
        }
    }

    /// Product; panics on shape mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).expect("matrix product")
    }

    pub fn apply(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        (0..self.rows)
            .map(|i| dot(f, self.row(i), v))
            .collect()
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(Fe, Fe) -> Fe) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        assert!(self.field == other.field, "field");
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Mat {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, c: Fe) -> Mat {
        self.map(|f, a| f.mul(c, a))
    }

    /// Entrywise map.
    pub fn map(&self, op: impl Fn(&Field, Fe) -> Fe) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| op(&self.field, a)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Kronecker product; basis index of `e_i (x) e_j` is `i * other.rows + j`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        Mat::from_fn(f, self.rows * r2, self.cols * c2, |i, j| {
            f.mul(self.get(i / r2, j / c2), other.get(i % r2, j % c2))
        })
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack width");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack height");
        let mut m = Mat::zeros(&self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// Gauss-Jordan elimination with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(a[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            let (before, rest) = a.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            for chunk in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let factor = chunk[c];
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    if !prow[j].is_zero() {
                        chunk[j] = f.add(chunk[j], f.mul(nf, prow[j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            mat: Mat {
                field: f.clone(),
                rows,
                cols,
                data: a,
            },
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rank by sparse row reduction; much cheaper than `rank` on the very
    /// sparse coboundary and total-complex matrices.
    pub fn sparse_rank(&self) -> usize {
        let f = &self.field;
        let mut pivots: HashMap<usize, Vec<(usize, Fe)>> = HashMap::new();
        for i in 0..self.rows {
            let mut row: Vec<(usize, Fe)> = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, &a)| (j, a))
                .collect();
            while let Some(&(lead, c)) = row.first() {
                match pivots.get(&lead) {
                    Some(prow) => row = sparse_axpy(f, f.neg(c), prow, &row),
                    None => {
                        let inv = f.inv(c).expect("nonzero lead");
                        for e in &mut row {
                            e.1 = f.mul(e.1, inv);
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    /// Basis of the null space `{v : Mv = 0}`, as rows in reduced echelon form.
    pub fn kernel(&self) -> Mat {
        let rr = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Fe::ZERO; self.cols];
            v[fc] = Fe::ONE;
            for (i, &pc) in rr.pivots.iter().enumerate() {
                v[pc] = f.neg(rr.mat.get(i, fc));
            }
            basis.push(v);
        }
        Mat::from_rows(f, self.cols, &basis).rref_rows()
    }

    /// Basis of the column space, as rows in reduced echelon form.
    pub fn image(&self) -> Mat {
        self.transpose().rref_rows()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn rref_rows(&self) -> Mat {
        let rr = self.rref();
        rr.mat.submatrix(0, 0, rr.rank, self.cols)
    }

    /// Some `x` with `Mx = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Fe]) -> Result<Option<Vec<Fe>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Mat::from_columns(&self.field, self.rows, &[b.to_vec()]));
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &pc) in rr.pivots.iter().enumerate() {
            x[pc] = rr.mat.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let rr = self.hstack(&Mat::identity(&self.field, n)).rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rr.mat.submatrix(0, n, n, n))
    }

    pub fn trace(&self) -> Fe {
        self.field.sum((0..self.rows.min(self.cols)).map(|i| self.get(i, i)))
    }
}

pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    if f.degree() == 1 {
        let p = f.characteristic() as u64;
        let mut acc = 0u64;
        for (x, y) in a.iter().zip(b) {
            acc += x.index() as u64 * y.index() as u64;
            if acc >= 1 << 62 {
                acc %= p;
            }
        }
        return f.from_int((acc % p) as i64);
    }
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn vec_add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: &Field, c: Fe, a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `y += c * x`
pub fn axpy(f: &Field, c: Fe, x: &[Fe], y: &mut [Fe]) {
    if c.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.add(*yi, f.mul(c, xi));
        }
    }
}

pub fn is_zero_vec(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Expresses vectors in a fixed independent family `B` (rows).
///
/// Stores `E` with `E * B = rref(B)`; the coordinates of `v` are then read
/// off the pivot entries of `v` and pushed through `E`.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    basis: Mat,
    transform: Mat,
    pivots: Vec<usize>,
}

impl Coordinatizer {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &Mat) -> Result<Coordinatizer> {
        let k = basis.rows();
        let rr = basis.hstack(&Mat::identity(basis.field(), k)).rref();
        let pivots: Vec<usize> = rr.pivots.iter().copied().filter(|&c| c < basis.cols()).collect();
        if pivots.len() != k {
            return Err(Error::DimensionMismatch("basis rows are linearly dependent".into()));
        }
        Ok(Coordinatizer {
            basis: basis.clone(),
            transform: rr.mat.submatrix(0, basis.cols(), k, k),
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is outside its span.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        let f = self.basis.field();
        let k = self.dim();
        let mut x = vec![Fe::ZERO; k];
        for (t, &pc) in self.pivots.iter().enumerate() {
            axpy(f, v[pc], self.transform.row(t), &mut x);
        }
        let mut recon = vec![Fe::ZERO; v.len()];
        for i in 0..k {
            axpy(f, x[i], self.basis.row(i), &mut recon);
        }
        if recon == v {
            Some(x)
        } else {
            None
        }
    }
}

/// A subspace of `F^n`, held as its reduced echelon row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Mat::identity(field, n),
        }
    }

    /// Span of the rows of `m`.
    pub fn span(m: &Mat) -> Subspace {
        Subspace {
            ambient: m.cols(),
            basis: m.rref_rows(),
        }
    }

    pub fn column_space(m: &Mat) -> Subspace {
        Subspace {
            ambient: m.rows(),
            basis: m.image(),
        }
    }

    pub fn kernel_of(m: &Mat) -> Subspace {
        Subspace {
            ambient: m.cols(),
            basis: m.kernel(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let m = self.basis.vstack(&Mat::from_rows(self.basis.field(), self.ambient, &[v.to_vec()]));
        m.rank() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Mat) -> Subspace {
        Subspace::span(&m.mul(&self.basis.transpose()).transpose())
    }
}

/// A quotient `U / W` with `W <= U`, with chosen representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    upper: Subspace,
    lower: Subspace,
    reps: Mat,
    coordinatizer: Coordinatizer,
}

impl Subquotient {
    /// Representatives are chosen by extending the echelon basis of `W`
    /// with basis vectors of `U`, in order, whenever they raise the rank.
    pub fn new(upper: &Subspace, lower: &Subspace) -> Result<Subquotient> {
        if !upper.contains_space(lower) {
            return Err(Error::NotContained);
        }
        let f = upper.basis.field().clone();
        let mut current = lower.basis.clone();
        let mut rank = current.rows();
        let mut reps = Vec::new();
        for i in 0..upper.dim() {
            let row = upper.basis.row_vec(i);
            let cand = current.vstack(&Mat::from_rows(&f, upper.ambient, std::slice::from_ref(&row)));
            let r = cand.rank();
            if r > rank {
                rank = r;
                current = cand;
                reps.push(row);
            }
        }
        let reps = Mat::from_rows(&f, upper.ambient, &reps);
        Self::assemble(upper, lower, reps)
    }

    /// Uses caller-supplied representatives, which must project to a basis of `U / W`.
    pub fn with_representatives(upper: &Subspace, lower: &Subspace, reps: &Mat) -> Result<Subquotient> {
        if !upper.contains_space(lower) {
            return Err(Error::NotContained);
        }
        if reps.cols() != upper.ambient
            || !upper.contains_space(&Subspace::span(reps))
            || reps.rows() + lower.dim() != upper.dim()
        {
            return Err(Error::DimensionMismatch("representatives do not fit the quotient".into()));
        }
        Self::assemble(upper, lower, reps.clone())
    }

    fn assemble(upper: &Subspace, lower: &Subspace, reps: Mat) -> Result<Subquotient> {
        let full = reps.vstack(&lower.basis);
        let coordinatizer = Coordinatizer::new(&full)?;
        Ok(Subquotient {
            upper: upper.clone(),
            lower: lower.clone(),
            reps,
            coordinatizer,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn reps(&self) -> &Mat {
        &self.reps
    }

    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    /// Coordinates of the class of `v` in the chosen basis; `None` if `v` is not in `U`.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        self.coordinatizer.coords(v).map(|mut x| {
            x.truncate(self.dim());
            x
        })
    }

    /// Lift of a class vector to `U`.
    pub fn lift(&self, c: &[Fe]) -> Vec<Fe> {
        let f = self.reps.field();
        let mut v = vec![Fe::ZERO; self.upper.ambient];
        for (i, &ci) in c.iter().enumerate() {
            axpy(f, ci, self.reps.row(i), &mut v);
        }
        v
    }

    /// Matrix of the map `self -> target` induced by an ambient linear map.
    pub fn induced(&self, map: &Mat, target: &Subquotient) -> Result<Mat> {
        let f = self.reps.field();
        let mut columns = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let img = map.apply(self.reps.row(i));
            let c = target
                .coords(&img)
                .ok_or_else(|| Error::DimensionMismatch("map does not preserve the quotient".into()))?;
            columns.push(c);
        }
        for i in 0..self.lower.dim() {
            let img = map.apply(self.lower.basis().row(i));
            if !target.lower.contains(&img) {
                return Err(Error::DimensionMismatch("map does not preserve the quotient".into()));
            }
        }
        Ok(Mat::from_columns(f, target.dim(), &columns))
    }
}

/// `dim U/W` together with representatives of a basis of the quotient.
pub fn subquotient_dim(upper: &Subspace, lower: &Subspace) -> Result<(usize, Mat)> {
    let sq = Subquotient::new(upper, lower)?;
    Ok((sq.dim(), sq.reps().clone()))
}

fn check_square_family(mats: &[Mat]) -> Result<usize> {
    let n = mats.first().map(|m| m.rows()).unwrap_or(0);
    for m in mats {
        if !m.is_square() || m.rows() != n {
            return Err(Error::DimensionMismatch("generator matrices must be square of equal size".into()));
        }
    }
    Ok(n)
}

/// Basis of `{T : T A_g = B_g T for all g}`.
///
/// Both families are lists of generator images, in matching order. With no
/// generators the answer is all of `Hom(F^n, F^m)`; the dimensions are then
/// taken from `dims`.
pub fn intertwiner_space_dims(a: &[Mat], b: &[Mat], dims: (usize, usize)) -> Result<Vec<Mat>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} generator images",
            a.len(),
            b.len()
        )));
    }
    let (n, m) = if a.is_empty() {
        dims
    } else {
        (check_square_family(a)?, check_square_family(b)?)
    };
    let field = a.first().or(b.first()).map(|x| x.field().clone());
    let Some(field) = field else {
        return Err(Error::DimensionMismatch("empty generator lists need a field".into()));
    };
    let raw = match spin_intertwiners(&field, a, b, n, m) {
        Some(v) => v,
        None => kron_intertwiners(&field, a, b, n, m),
    };
    Ok(canonical_basis(&field, &raw, m, n))
}

pub fn intertwiner_space(a: &[Mat], b: &[Mat]) -> Result<Vec<Mat>> {
    let n = a.first().map(|x| x.rows()).unwrap_or(0);
    let m = b.first().map(|x| x.rows()).unwrap_or(0);
    intertwiner_space_dims(a, b, (n, m))
}

/// Dense solve of the linear system `(A_g^T (x) I - I (x) B_g) vec(T) = 0`.
pub fn intertwiner_space_dense(a: &[Mat], b: &[Mat]) -> Result<Vec<Mat>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch("matching nonempty generator lists required".into()));
    }
    let n = check_square_family(a)?;
    let m = check_square_family(b)?;
    let f = a[0].field().clone();
    let raw = kron_intertwiners(&f, a, b, n, m);
    Ok(canonical_basis(&f, &raw, m, n))
}

fn canonical_basis(f: &Field, mats: &[Mat], m: usize, n: usize) -> Vec<Mat> {
    let rows: Vec<Vec<Fe>> = mats.iter().map(|t| t.data().to_vec()).collect();
    let reduced = Mat::from_rows(f, m * n, &rows).rref_rows();
    (0..reduced.rows())
        .map(|i| Mat::from_vec(f, m, n, reduced.row_vec(i)).expect("shape"))
        .collect()
}

fn kron_intertwiners(f: &Field, a: &[Mat], b: &[Mat], n: usize, m: usize) -> Vec<Mat> {
    // unknown T[i][j] at index i * n + j; equation (T A - B T)[i][j] = 0
    let unknowns = m * n;
    let mut system = Mat::zeros(f, 0, unknowns);
    for (ag, bg) in a.iter().zip(b) {
        let mut block = Mat::zeros(f, unknowns, unknowns);
        for i in 0..m {
            for j in 0..n {
                let eq = i * n + j;
                for k in 0..n {
                    let c = ag.get(k, j);
                    if !c.is_zero() {
                        let idx = i * n + k;
                        block.set(eq, idx, f.add(block.get(eq, idx), c));
                    }
                }
                for k in 0..m {
                    let c = bg.get(i, k);
                    if !c.is_zero() {
                        let idx = k * n + j;
                        block.set(eq, idx, f.sub(block.get(eq, idx), c));
                    }
                }
            }
        }
        system = system.vstack(&block).rref_rows();
    }
    let ker = system.kernel();
    (0..ker.rows())
        .map(|r| Mat::from_vec(f, m, n, ker.row_vec(r)).expect("shape"))
        .collect()
}

/// If some standard or simple vector generates the source module, every
/// intertwiner is determined by the image of that vector, which reduces the
/// unknowns from `m n` to `m`.
fn spin_intertwiners(f: &Field, a: &[Mat], b: &[Mat], n: usize, m: usize) -> Option<Vec<Mat>> {
    if a.is_empty() || n == 0 {
        return None;
    }
    let candidates: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut v = vec![Fe::ZERO; n];
            v[i] = Fe::ONE;
            v
        })
        .chain(std::iter::once(vec![Fe::ONE; n]))
        .collect();
    for v in candidates {
        // breadth-first spin: words w_i with w_i(A) v a basis
        let mut vecs: Vec<Vec<Fe>> = vec![v.clone()];
        let mut b_words: Vec<Mat> = vec![Mat::identity(f, m)];
        let mut span = Mat::from_rows(f, n, std::slice::from_ref(&v)).rref_rows();
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            if vecs.len() == n {
                break;
            }
            for (ag, bg) in a.iter().zip(b) {
                let w = ag.apply(&vecs[idx]);
                let cand = span.vstack(&Mat::from_rows(f, n, std::slice::from_ref(&w))).rref_rows();
                if cand.rows() > span.rows() {
                    span = cand;
                    vecs.push(w);
                    b_words.push(bg.mul(&b_words[idx]));
                    queue.push_back(vecs.len() - 1);
                    if vecs.len() == n {
                        break;
                    }
                }
            }
        }
        if vecs.len() < n {
            continue;
        }
        let basis = Mat::from_rows(f, n, &vecs);
        let coord = Coordinatizer::new(&basis).ok()?;
        // constraints on u = T v: sum_j c_j W_j u - B_g W_i u = 0
        let mut system = Mat::zeros(f, 0, m);
        for i in 0..n {
            for (ag, bg) in a.iter().zip(b) {
                let c = coord.coords(&ag.apply(&vecs[i])).expect("spanning set");
                let mut lhs = bg.mul(&b_words[i]).neg();
                for (j, &cj) in c.iter().enumerate() {
                    if !cj.is_zero() {
                        lhs = lhs.add(&b_words[j].scale(cj));
                    }
                }
                system = system.vstack(&lhs).rref_rows();
            }
        }
        let sols = system.kernel();
        let basis_inv = basis.transpose().inverse()?;
        let out = (0..sols.rows())
            .map(|r| {
                let u = sols.row_vec(r);
                let images: Vec<Vec<Fe>> = b_words.iter().map(|w| w.apply(&u)).collect();
                // T [w_i v]_cols = [w_i u]_cols
                Mat::from_columns(f, m, &images).mul(&basis_inv)
            })
            .collect();
        return Some(out);
    }
    None
}

/// `y + c x` on sorted sparse vectors.
fn sparse_axpy(f: &Field, c: Fe, x: &[(usize, Fe)], y: &[(usize, Fe)]) -> Vec<(usize, Fe)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let xi = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let yj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if xi < yj {
            out.push((xi, f.mul(c, x[i].1)));
            i += 1;
        } else if yj < xi {
            out.push(y[j]);
            j += 1;
        } else {
            let v = f.add(y[j].1, f.mul(c, x[i].1));
            if !v.is_zero() {
                out.push((xi, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        Field::prime(5)
    }

    fn ints(f: &Field, v: &[i64]) -> Vec<Fe> {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = f5();
        assert_eq!(Mat::from_ints(&f, 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = Mat::random(&f, 4, 3, &mut rng);
            let b = Mat::random(&f, 3, 6, &mut rng);
            let m = a.mul(&b).vstack(&Mat::zeros(&f, 2, 6));
            assert_eq!(m.sparse_rank(), m.rank());
        }
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let f = f5();
        assert_eq!(Mat::identity(&f, 3).kernel().rows(), 0);
    }

    #[test]
    fn solve_upper_triangular() {
        let f = f5();
        let m = Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1]);
        let x = m.solve(&ints(&f, &[2, 3])).unwrap().unwrap();
        // back substitution: x1 = 3, x0 = 2 - 3 = -1 = 4
        assert_eq!(x, ints(&f, &[4, 3]));
        assert!(m.solve(&ints(&f, &[1])).is_err());
        let singular = Mat::from_ints(&f, 2, 2, &[1, 1, 1, 1]);
        assert_eq!(singular.solve(&ints(&f, &[0, 1])).unwrap(), None);
    }

    #[test]
    fn subquotient_examples() {
        let f = f5();
        let full = Subspace::full(&f, 2);
        assert_eq!(subquotient_dim(&full, &Subspace::zero(&f, 2)).unwrap().0, 2);
        let w = Subspace::span(&Mat::from_ints(&f, 1, 2, &[1, 1]));
        assert_eq!(subquotient_dim(&full, &w).unwrap().0, 1);
        let e0 = Subspace::span(&Mat::from_ints(&f, 1, 2, &[1, 0]));
        assert_eq!(Subquotient::new(&e0, &w).err(), Some(Error::NotContained));

        // image of (sigma - 1) on J_3 for p = 3 is 2-dimensional
        let f3 = Field::prime(3);
        let nil = Mat::from_ints(&f3, 3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        let im = Subspace::column_space(&nil);
        assert_eq!(subquotient_dim(&im, &Subspace::zero(&f3, 3)).unwrap().0, 2);
    }

    #[test]
    fn subquotient_coords_and_induced() {
        let f = f5();
        let u = Subspace::full(&f, 3);
        let w = Subspace::span(&Mat::from_ints(&f, 1, 3, &[1, 1, 0]));
        let sq = Subquotient::new(&u, &w).unwrap();
        assert_eq!(sq.dim(), 2);
        // (1,1,0) is zero in the quotient
        assert_eq!(sq.coords(&ints(&f, &[1, 1, 0])).unwrap(), vec![Fe::ZERO; 2]);
        let v = ints(&f, &[2, 0, 3]);
        let c = sq.coords(&v).unwrap();
        let back = sq.lift(&c);
        assert!(w.contains(&vec_sub(&f, &v, &back)));
        // the identity map induces the identity
        let id = sq.induced(&Mat::identity(&f, 3), &sq).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn inverse_and_kron() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Mat::random_invertible(&f, 4, &mut rng);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let b = Mat::random(&f, 2, 3, &mut rng);
        let c = Mat::random(&f, 3, 2, &mut rng);
        let d = Mat::random(&f, 2, 2, &mut rng);
        let e = Mat::random(&f, 2, 2, &mut rng);
        // mixed product property
        assert_eq!(b.kron(&d).mul(&c.kron(&e)), b.mul(&c).kron(&d.mul(&e)));
    }

    fn s3_standard(f: &Field) -> Vec<Mat> {
        // permutation action on {x : sum x = 0} in the basis e0-e1, e1-e2
        let s = Mat::from_ints(f, 2, 2, &[-1, 1, 0, 1]);
        let r = Mat::from_ints(f, 2, 2, &[0, -1, 1, -1]);
        vec![s, r]
    }

    /// Brute force over every 2x2 matrix: the oracle for small intertwiner spaces.
    fn brute_intertwiner_dim(f: &Field, a: &[Mat], b: &[Mat]) -> usize {
        let n = a[0].rows();
        let m = b[0].rows();
        let q = f.order() as usize;
        let total = q.pow((n * m) as u32);
        let mut count = 0usize;
        for code in 0..total {
            let mut c = code;
            let t = Mat::from_fn(f, m, n, |_, _| {
                let e = Fe((c % q) as u32);
                c /= q;
                e
            });
            if a.iter().zip(b).all(|(ag, bg)| t.mul(ag) == bg.mul(&t)) {
                count += 1;
            }
        }
        // count = q^dim
        let mut dim = 0;
        let mut x = 1usize;
        while x < count {
            x *= q;
            dim += 1;
        }
        dim
    }

    #[test]
    fn intertwiner_examples() {
        let f = f5();
        let triv = vec![Mat::identity(&f, 1)];
        let sign = vec![Mat::scalar(&f, 1, f.from_int(-1))];
        assert_eq!(intertwiner_space(&triv, &triv).unwrap().len(), 1);
        assert_eq!(intertwiner_space(&triv, &sign).unwrap().len(), 0);
        let std = s3_standard(&f);
        let sp = intertwiner_space(&std, &std).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(brute_intertwiner_dim(&f, &std, &std), 1);
        assert_eq!(sp, intertwiner_space_dense(&std, &std).unwrap());
    }

    #[test]
    fn spin_and_dense_agree_on_reducible() {
        let f = Field::prime(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // trivial (+) standard (+) trivial, conjugated
        let std = s3_standard(&f);
        let one = Mat::identity(&f, 1);
        let a: Vec<Mat> = std.iter().map(|g| one.block_diag(g).block_diag(&one)).collect();
        let c = Mat::random_invertible(&f, 4, &mut rng);
        let ci = c.inverse().unwrap();
        let b: Vec<Mat> = a.iter().map(|g| c.mul(g).mul(&ci)).collect();
        let dense = intertwiner_space_dense(&a, &b).unwrap();
        let fast = intertwiner_space(&a, &b).unwrap();
        assert_eq!(dense, fast);
        for t in &fast {
            for (ag, bg) in a.iter().zip(&b) {
                assert_eq!(t.mul(ag), bg.mul(t));
            }
        }
    }

    #[test]
    fn rref_is_idempotent() {
        let f = Field::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = Mat::random(&f, 4, 6, &mut rng);
            let r1 = m.rref();
            let r2 = r1.mat.rref();
            assert_eq!(r1.mat, r2.mat);
            assert_eq!(r1.pivots, r2.pivots);
            assert_eq!(m.rref().mat, r1.mat);
        }
    }
}

