//! Arithmetic in F_{p^m}.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! where `c_i` is the coefficient of `x^i` in the residue class modulo the
//! modulus polynomial. Prime-field elements therefore coincide with their
//! integer representatives `0..p`. Multiplication goes through discrete
//! log tables built once per field.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order we build log tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field element. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Integer encoding of the element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients low to high, length m + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
    frob_inv: Vec<u32>,
}

/// Shared handle to a finite field.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p == other.p && self.m == other.m)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over F_p, coefficient vectors low to high, trimmed.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for i in 0..=db {
            let t = (c * b[i] as u64) % p as u64;
            let idx = dr - db + i;
            r[idx] = ((r[idx] as u64 + p as u64 - t) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style irreducibility test: `f` of degree m is irreducible iff
/// gcd(f, x^{p^i} - x) = 1 for all 1 <= i <= m/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone(); // x^{p^i} mod f
    for _ in 1..=m / 2 {
        // raise to the p-th power
        let mut acc = vec![1u32];
        for _ in 0..p {
            acc = poly_mulmod(&acc, &xp, f, p);
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// Builds F_{p^m} with the lexicographically smallest monic irreducible
    /// modulus, where candidates `x^m + c_{m-1} x^{m-1} + ... + c_0` are
    /// ordered by the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, m });
        }
        let q = q as u32;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|c| {
                    let mut f = digits(c, p, m);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial exists in every degree")
        };
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            frob: Vec::new(),
            frob_inv: Vec::new(),
        };
        ctx.build_tables();
        Ok(Field(Arc::new(ctx)))
    }

    /// Convenience for tests and examples: panics on invalid input.
    pub fn prime(p: u32) -> Field {
        Field::new(p, 1).expect("prime field")
    }
}

fn digits(mut c: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

impl FieldCtx {
    fn build_tables(&mut self) {
        let (p, m, q) = (self.p, self.m, self.q);
        let encode = |v: &[u32]| -> u32 {
            let mut r = 0u32;
            for &c in v.iter().rev() {
                r = r * p + c;
            }
            r
        };
        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        'candidates: for g in 1..q {
            let gp = {
                let mut d = digits(g, p, m);
                trim(&mut d);
                d
            };
            let mut cur = vec![1u32];
            for k in 0..order {
                let e = encode(&cur);
                if k > 0 && e == 1 {
                    continue 'candidates;
                }
                exp[k as usize] = e;
                cur = poly_mulmod(&cur, &gp, &self.modulus, p);
            }
            if encode(&cur) == 1 {
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        self.exp = exp;
        self.log = log;
        let mut frob = vec![0u32; q as usize];
        let mut frob_inv = vec![0u32; q as usize];
        for a in 0..q {
            let b = self.pow(Fe(a), p as u64).0;
            frob[a as usize] = b;
            frob_inv[b as usize] = a;
        }
        self.frob = frob;
        self.frob_inv = frob_inv;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus polynomial, coefficients from x^0 to x^m.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u64) -> Result<Fe> {
        if index < self.q as u64 {
            Ok(Fe(index as u32))
        } else {
            Err(Error::BadElement(index))
        }
    }

    /// Image of an integer under Z -> F_p -> F_{p^m}.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x`, the generator of F_{p^m} over F_p. Equals 0 when m = 1.
    pub fn x(&self) -> Fe {
        if self.m == 1 {
            Fe(0)
        } else {
            Fe(self.p)
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!(
                "coefficient list {coeffs:?} is not an element of F_{}^{}",
                self.p, self.m
            )));
        }
        let mut r = 0u32;
        for &c in coeffs.iter().rev() {
            r = r * self.p + c;
        }
        Ok(Fe(r))
    }

    /// Little-endian coefficient list, always of length m.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.p, self.m)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut r = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let mut d = x % self.p + y % self.p;
            if d >= self.p {
                d -= self.p;
            }
            r += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.m == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut r = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            let d = x % self.p;
            r += (if d == 0 { 0 } else { self.p - d }) * place;
            place *= self.p;
            x /= self.p;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if self.m == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let order = self.q - 1;
        let mut k = self.log[a.0 as usize] + self.log[b.0 as usize];
        if k >= order {
            k -= order;
        }
        Fe(self.exp[k as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize];
        Some(Fe(self.exp[((order - k) % order) as usize]))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        if self.log.is_empty() {
            // tables not built yet (only during construction of frob tables)
            unreachable!("pow before log tables");
        }
        let order = (self.q - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fe(self.exp[k as usize])
    }

    /// x -> x^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        Fe(self.frob[a.0 as usize])
    }

    /// The unique p-th root.
    pub fn frobenius_inv(&self, a: Fe) -> Fe {
        Fe(self.frob_inv[a.0 as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.q))
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe(0), |acc, x| self.add(acc, x))
    }

    pub fn display(&self, a: Fe) -> String {
        if self.m == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 if c == 1 => "x".to_string(),
                1 => format!("{c}x"),
                _ if c == 1 => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).err(), Some(Error::NotPrime(4)));
        assert_eq!(Field::new(5, 0).err(), Some(Error::ZeroDegree));
        assert!(matches!(Field::new(2, 30), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn prime_field_modulus() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 5);
        assert_eq!(f.frobenius(Fe(2)), Fe(2));
    }

    /// Root-search oracle: a monic quadratic over F_p is irreducible iff it
    /// has no root in F_p.
    fn smallest_irreducible_quadratic(p: u32) -> Vec<u32> {
        for c in 0..p * p {
            let (c0, c1) = (c % p, c / p);
            let has_root = (0..p).any(|t| (t * t + c1 * t + c0) % p == 0);
            if !has_root {
                return vec![c0, c1, 1];
            }
        }
        unreachable!()
    }

    #[test]
    fn quadratic_modulus_matches_root_search() {
        for p in [2, 3, 5, 7, 11] {
            let f = Field::new(p, 2).unwrap();
            assert_eq!(f.modulus(), smallest_irreducible_quadratic(p).as_slice(), "p={p}");
        }
        // F_9 = F_3[x]/(x^2 + 1)
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn irreducibility_catches_products_of_quadratics() {
        // (x^2+1)^2 = x^4 + 2x^2 + 1 over F_3 has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
        let f = Field::new(3, 4).unwrap();
        assert!(is_irreducible(f.modulus(), 3));
    }

    #[test]
    fn f9_frobenius() {
        let f = Field::new(3, 2).unwrap();
        let x = f.x();
        // repeated-squaring oracle: x^3 computed by multiplication
        let x3 = f.mul(f.mul(x, x), x);
        assert_eq!(f.frobenius(x), x3);
        assert_eq!(x3, f.neg(x));
        // inverse via x -> x^{p^{m-1}}
        assert_eq!(f.frobenius_inv(f.neg(x)), x);
        assert_eq!(f.pow(f.neg(x), 3), x);
    }

    #[test]
    fn frobenius_inverse_exhaustive() {
        for (p, m) in [(2, 1), (2, 3), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
            let f = Field::new(p, m).unwrap();
            for a in f.elements() {
                assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
                assert_eq!(f.frobenius(f.frobenius_inv(a)), a);
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = Field::new(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if let Some(ai) = f.inv(a) {
                assert_eq!(f.mul(a, ai), Fe::ONE);
            } else {
                assert!(a.is_zero());
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn coefficient_roundtrip() {
        let f = Field::new(5, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        assert!(f.from_coeffs(&[5]).is_err());
        assert!(f.from_coeffs(&[1, 1, 1]).is_err());
    }
}
