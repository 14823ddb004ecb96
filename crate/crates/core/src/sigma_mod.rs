//! Modules over `k[sigma]/(sigma^p - 1)` in characteristic p.
//!
//! Tate cohomology is `T^0 = ker(1 - sigma) / im N` and
//! `T^1 = ker N / im(1 - sigma)` with `N = 1 + sigma + ... + sigma^{p-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{Mat, Subquotient, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaModule {
    sigma: Mat,
}

/// Multiset of Jordan block sizes of `sigma - 1`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JordanProfile(pub Vec<usize>);

impl JordanProfile {
    /// Blocks of size smaller than `p`, i.e. the non-free part.
    pub fn non_free(&self, p: usize) -> Vec<usize> {
        self.0.iter().copied().filter(|&b| b < p).collect()
    }
}

/// Tate groups with chosen representatives.
#[derive(Clone, Debug)]
pub struct TateGroups {
    pub t0: Subquotient,
    pub t1: Subquotient,
}

impl TateGroups {
    pub fn dims(&self) -> (usize, usize) {
        (self.t0.dim(), self.t1.dim())
    }
}

impl SigmaModule {
    /// Checks that `sigma` is square with `sigma^p = 1`, p the characteristic.
    pub fn new(sigma: Mat) -> Result<SigmaModule> {
        if !sigma.is_square() {
            return Err(Error::DimensionMismatch("sigma must be square".into()));
        }
        let p = sigma.field().characteristic() as u64;
        if !sigma.pow(p).is_identity() {
            return Err(Error::SigmaOrder);
        }
        Ok(SigmaModule { sigma })
    }

    pub fn zero(field: &Field) -> SigmaModule {
        SigmaModule {
            sigma: Mat::identity(field, 0),
        }
    }

    pub fn trivial(field: &Field, dim: usize) -> SigmaModule {
        SigmaModule {
            sigma: Mat::identity(field, dim),
        }
    }

    /// `J_i`: one Jordan block of size `i` (`1 <= i <= p`), sigma = 1 + nilpotent shift.
    pub fn jordan(field: &Field, size: usize) -> SigmaModule {
        let p = field.characteristic() as usize;
        assert!(size <= p, "Jordan blocks have size at most p");
        let mut m = Mat::identity(field, size);
        for i in 0..size.saturating_sub(1) {
            m.set(i, i + 1, Fe::ONE);
        }
        SigmaModule { sigma: m }
    }

    /// `k[sigma]` in the group basis `1, sigma, ..., sigma^{p-1}`.
    pub fn regular(field: &Field) -> SigmaModule {
        let p = field.characteristic() as usize;
        let perm: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
        SigmaModule {
            sigma: Mat::permutation(field, &perm),
        }
    }

    /// Direct sum of Jordan blocks of the given sizes.
    pub fn from_profile(field: &Field, blocks: &[usize]) -> SigmaModule {
        blocks
            .iter()
            .fold(SigmaModule::zero(field), |acc, &b| acc.direct_sum(&SigmaModule::jordan(field, b)).expect("same field"))
    }

    pub fn field(&self) -> &Field {
        self.sigma.field()
    }

    pub fn p(&self) -> usize {
        self.field().characteristic() as usize
    }

    pub fn dim(&self) -> usize {
        self.sigma.rows()
    }

    pub fn sigma(&self) -> &Mat {
        &self.sigma
    }

    /// `sigma - 1`
    pub fn nilpotent(&self) -> Mat {
        self.sigma.sub(&Mat::identity(self.field(), self.dim()))
    }

    pub fn norm_operator(&self) -> Mat {
        norm_of(&self.sigma)
    }

    pub fn tate(&self) -> TateGroups {
        tate_of(&self.sigma)
    }

    pub fn tate_dims(&self) -> (usize, usize) {
        self.tate().dims()
    }

    /// Block sizes from the rank staircase `r_i = rank (sigma - 1)^i`: the
    /// number of blocks of size at least `i` is `r_{i-1} - r_i`.
    pub fn jordan_profile(&self) -> JordanProfile {
        let p = self.p();
        let t = self.nilpotent();
        let mut ranks = vec![self.dim()];
        let mut power = Mat::identity(self.field(), self.dim());
        for _ in 0..=p {
            power = power.mul(&t);
            ranks.push(power.rank());
        }
        let at_least: Vec<usize> = (1..=p + 1).map(|i| ranks[i - 1] - ranks[i]).collect();
        let mut blocks = Vec::new();
        for size in 1..=p {
            let exact = at_least[size - 1] - at_least[size];
            blocks.extend(std::iter::repeat_n(size, exact));
        }
        JordanProfile(blocks)
    }

    pub fn is_perfect(&self) -> bool {
        let p = self.p();
        self.jordan_profile().0.iter().all(|&b| b == p)
    }

    /// Isomorphic after discarding free summands.
    pub fn tate_equivalent(&self, other: &SigmaModule) -> Result<bool> {
        self.check_field(other)?;
        let p = self.p();
        Ok(self.jordan_profile().non_free(p) == other.jordan_profile().non_free(p))
    }

    fn check_field(&self, other: &SigmaModule) -> Result<()> {
        if self.field() != other.field() {
            let (a, b) = (self.field(), other.field());
            return Err(Error::FieldMismatch {
                left_p: a.characteristic(),
                left_m: a.degree(),
                right_p: b.characteristic(),
                right_m: b.degree(),
            });
        }
        Ok(())
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &SigmaModule) -> Result<SigmaModule> {
        self.check_field(other)?;
        Ok(SigmaModule {
            sigma: self.sigma.kron(&other.sigma),
        })
    }

    pub fn direct_sum(&self, other: &SigmaModule) -> Result<SigmaModule> {
        self.check_field(other)?;
        Ok(SigmaModule {
            sigma: self.sigma.block_diag(&other.sigma),
        })
    }

    /// Contragredient: sigma acts by the inverse transpose.
    pub fn dual(&self) -> SigmaModule {
        SigmaModule {
            sigma: self.sigma.inverse().expect("sigma is invertible").transpose(),
        }
    }

    /// Base change along the Frobenius of the coefficient field.
    pub fn frobenius_twist(&self) -> SigmaModule {
        SigmaModule {
            sigma: self.sigma.map(|f, x| f.frobenius(x)),
        }
    }

    /// Change of basis: the module with sigma replaced by `c sigma c^{-1}`.
    pub fn conjugate(&self, c: &Mat) -> Result<SigmaModule> {
        let ci = c
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("basis change is not invertible".into()))?;
        Ok(SigmaModule {
            sigma: c.mul(&self.sigma).mul(&ci),
        })
    }
}

pub fn norm_of(sigma: &Mat) -> Mat {
    let p = sigma.field().characteristic() as usize;
    let mut acc = Mat::zeros(sigma.field(), sigma.rows(), sigma.cols());
    let mut power = Mat::identity(sigma.field(), sigma.rows());
    for _ in 0..p {
        acc = acc.add(&power);
        power = power.mul(sigma);
    }
    acc
}

/// Tate groups of an arbitrary order-p operator.
pub fn tate_of(sigma: &Mat) -> TateGroups {
    let f = sigma.field();
    let n = sigma.rows();
    let one_minus = Mat::identity(f, n).sub(sigma);
    let norm = norm_of(sigma);
    let t0 = Subquotient::new(&Subspace::kernel_of(&one_minus), &Subspace::column_space(&norm))
        .expect("im N lies in ker(1 - sigma)");
    let t1 = Subquotient::new(&Subspace::kernel_of(&norm), &Subspace::column_space(&one_minus))
        .expect("im(1 - sigma) lies in ker N");
    TateGroups { t0, t1 }
}

/// `V^{(x) p}` with `sigma` moving tensor factor `i` to position `i + 1`.
/// Basis tensors are indexed with factor 0 most significant.
pub fn tensor_induce(field: &Field, d: usize) -> SigmaModule {
    let p = field.characteristic() as usize;
    let total = d.pow(p as u32);
    let perm: Vec<usize> = (0..total)
        .map(|idx| {
            let digits = to_digits(idx, d, p);
            let rotated: Vec<usize> = (0..p).map(|i| digits[(i + p - 1) % p]).collect();
            from_digits(&rotated, d)
        })
        .collect();
    SigmaModule {
        sigma: Mat::permutation(field, &perm),
    }
}

/// Digits of `idx` in base `d`, most significant first, `len` of them.
pub(crate) fn to_digits(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

pub(crate) fn from_digits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// The free module `V (x) k[sigma]`.
pub fn induced(field: &Field, d: usize) -> SigmaModule {
    let reg = SigmaModule::regular(field);
    SigmaModule {
        sigma: Mat::identity(field, d).kron(&reg.sigma),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        let f3 = Field::prime(3);
        assert!(SigmaModule::trivial(&f3, 1).norm_operator().is_zero());
        let reg = SigmaModule::regular(&f3).norm_operator();
        assert_eq!(reg.rank(), 1);
        assert!(reg.data().iter().all(|&x| x == Fe::ONE));
        // N = (sigma - 1)^{p-1} in characteristic p, and (sigma - 1)^2 = 0 on J_2
        let j2 = SigmaModule::jordan(&f3, 2);
        assert_eq!(j2.norm_operator(), j2.nilpotent().pow(2));
        assert!(j2.norm_operator().is_zero());
    }

    #[test]
    fn tate_dims_of_blocks() {
        let f3 = Field::prime(3);
        assert_eq!(SigmaModule::jordan(&f3, 1).tate_dims(), (1, 1));
        assert_eq!(SigmaModule::jordan(&f3, 2).tate_dims(), (1, 1));
        assert_eq!(SigmaModule::jordan(&f3, 3).tate_dims(), (0, 0));
    }

    #[test]
    fn profiles() {
        let f3 = Field::prime(3);
        let reg = SigmaModule::regular(&f3);
        assert_eq!(reg.jordan_profile(), JordanProfile(vec![3]));
        assert!(reg.is_perfect());
        let j1 = SigmaModule::jordan(&f3, 1);
        let j1p = j1.direct_sum(&SigmaModule::jordan(&f3, 3)).unwrap();
        assert!(j1p.tate_equivalent(&j1).unwrap());
        let j2 = SigmaModule::jordan(&f3, 2);
        assert_eq!(j2.tensor(&j2).unwrap().jordan_profile(), JordanProfile(vec![1, 3]));
        for i in 1..=3 {
            let j = SigmaModule::jordan(&f3, i);
            assert_eq!(j.dual().jordan_profile(), j.jordan_profile());
            assert_eq!(j1.tensor(&j).unwrap().jordan_profile(), j.jordan_profile());
        }
    }

    #[test]
    fn tensor_induction_orbits() {
        let f3 = Field::prime(3);
        assert_eq!(tensor_induce(&f3, 1).jordan_profile(), JordanProfile(vec![1]));
        assert_eq!(tensor_induce(&f3, 2).jordan_profile(), JordanProfile(vec![1, 1, 3, 3]));
        assert_eq!(tensor_induce(&f3, 0).dim(), 0);
    }

    #[test]
    fn induced_is_free() {
        let f3 = Field::prime(3);
        assert_eq!(induced(&f3, 1).jordan_profile(), JordanProfile(vec![3]));
        assert_eq!(induced(&f3, 2).jordan_profile(), JordanProfile(vec![3, 3]));
        assert_eq!(induced(&f3, 2).tate_dims(), (0, 0));
    }

    #[test]
    fn rejects_wrong_order() {
        let f5 = Field::prime(5);
        let m = Mat::from_ints(&f5, 1, 1, &[2]);
        assert_eq!(SigmaModule::new(m), Err(Error::SigmaOrder));
    }

    #[test]
    fn twist_of_f9_character() {
        let f9 = Field::new(3, 2).unwrap();
        let x = f9.x();
        let m = Mat::scalar(&f9, 1, x);
        assert_eq!(m.map(|f, a| f.frobenius(a)).get(0, 0), f9.neg(x));
    }
}
