//! Hecke algebras of finite groups as invariant kernels on `(G/K)^2`,
//! plain subgroups and the Brauer restriction, Hecke operators on
//! invariants, and norm/character-extension algebra for algebras with an
//! automorphism of order p.
//!
//! A `G`-invariant kernel `f(x, y)` is stored as the function
//! `y -> f(x0, y)` with `x0 = K`; it is then left-`K`-invariant, and
//! `f(x, y) = f(x0, g_x^{-1} y)` for any `g_x` with `g_x x0 = x`.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::{Cosets, FiniteGroup, SigmaGroup};
use crate::linalg::{Coordinatizer, Mat, Subquotient, Subspace};
use crate::linkage::SigmaExtendedRep;
use crate::sigma_mod::tate_of;

/// `H(G, K)` with its coset data.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    group: FiniteGroup,
    field: Field,
    k: Vec<usize>,
    cosets: Cosets,
    base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    /// `f(x0, y)` for each coset `y`.
    values: Vec<Fe>,
}

impl HeckeElement {
    pub fn values(&self) -> &[Fe] {
        &self.values
    }
}

impl HeckeAlgebra {
    pub fn new(group: &FiniteGroup, field: &Field, k: &[usize]) -> Result<HeckeAlgebra> {
        let mut k = k.to_vec();
        k.sort_unstable();
        k.dedup();
        if !group.is_subgroup(&k) {
            return Err(Error::InvalidGroup("K is not a subgroup".into()));
        }
        let cosets = group.left_cosets(&k);
        let base = cosets.coset_of(group.identity());
        Ok(HeckeAlgebra {
            group: group.clone(),
            field: field.clone(),
            k,
            cosets,
            base,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.k
    }

    pub fn cosets(&self) -> &Cosets {
        &self.cosets
    }

    /// Index of the base coset `K`.
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn from_values(&self, values: Vec<Fe>) -> Result<HeckeElement> {
        if values.len() != self.cosets.len() {
            return Err(Error::HeckeMismatch);
        }
        for &kk in &self.k {
            for y in 0..self.cosets.len() {
                if values[self.cosets.act(&self.group, kk, y)] != values[y] {
                    return Err(Error::InvalidGroup("kernel is not G-invariant".into()));
                }
            }
        }
        Ok(HeckeElement { values })
    }

    pub fn unit(&self) -> HeckeElement {
        let mut values = vec![Fe::ZERO; self.cosets.len()];
        values[self.base] = Fe::ONE;
        HeckeElement { values }
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement {
            values: vec![Fe::ZERO; self.cosets.len()],
        }
    }

    /// `K`-orbits on `G/K`, i.e. double cosets, each sorted; ordered by least member.
    pub fn double_cosets(&self) -> Vec<Vec<usize>> {
        orbits(self.cosets.len(), |y| {
            self.k.iter().map(|&kk| self.cosets.act(&self.group, kk, y)).collect()
        })
    }

    pub fn indicator(&self, orbit: &[usize]) -> HeckeElement {
        let mut values = vec![Fe::ZERO; self.cosets.len()];
        for &y in orbit {
            values[y] = Fe::ONE;
        }
        HeckeElement { values }
    }

    /// Indicators of double cosets: a basis of the algebra.
    pub fn basis(&self) -> Vec<HeckeElement> {
        self.double_cosets().iter().map(|o| self.indicator(o)).collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> HeckeElement {
        let mut values = vec![Fe::ZERO; self.cosets.len()];
        for o in self.double_cosets() {
            let c = self.field.random(rng);
            for y in o {
                values[y] = c;
            }
        }
        HeckeElement { values }
    }

    /// `f(x, y)` for arbitrary cosets.
    pub fn kernel(&self, f: &HeckeElement, x: usize, y: usize) -> Fe {
        let gx = self.cosets.rep(x);
        let moved = self.cosets.act(&self.group, self.group.inv(gx), y);
        f.values[moved]
    }

    /// `(f * g)(x0, z)`
    pub fn convolve_at(&self, f: &HeckeElement, g: &HeckeElement, z: usize) -> Fe {
        let fld = &self.field;
        let mut acc = Fe::ZERO;
        for y in 0..self.cosets.len() {
            let a = f.values[y];
            if a.is_zero() {
                continue;
            }
            acc = fld.add(acc, fld.mul(a, self.kernel(g, y, z)));
        }
        acc
    }

    /// `(f * g)(x, z) = sum_y f(x, y) g(y, z)`
    pub fn convolve(&self, f: &HeckeElement, g: &HeckeElement) -> Result<HeckeElement> {
        if f.values.len() != self.cosets.len() || g.values.len() != self.cosets.len() {
            return Err(Error::HeckeMismatch);
        }
        let values = (0..self.cosets.len()).map(|z| self.convolve_at(f, g, z)).collect();
        Ok(HeckeElement { values })
    }

    pub fn add(&self, f: &HeckeElement, g: &HeckeElement) -> HeckeElement {
        HeckeElement {
            values: f.values.iter().zip(&g.values).map(|(&a, &b)| self.field.add(a, b)).collect(),
        }
    }

    /// Endomorphism of `Pi^K` given by `v -> sum_y f(x0, y) g_y v`, in the
    /// echelon basis of `Pi^K` returned alongside.
    pub fn action_on_invariants(&self, f: &HeckeElement, pi: &crate::group::GroupRep) -> (Mat, Mat) {
        let inv = pi.invariants_of(&self.k);
        let coord = Coordinatizer::new(&inv).expect("echelon basis");
        let op = self.operator(f, pi);
        let columns: Vec<Vec<Fe>> = (0..inv.rows())
            .map(|i| coord.coords(&op.apply(inv.row(i))).expect("Hecke operators preserve invariants"))
            .collect();
        (Mat::from_columns(&self.field, inv.rows(), &columns), inv)
    }

    /// `sum_y f(x0, y) Pi(g_y)` on all of `Pi`; on `Pi^K` this is the Hecke operator.
    pub fn operator(&self, f: &HeckeElement, pi: &crate::group::GroupRep) -> Mat {
        let mut op = Mat::zeros(&self.field, pi.dim(), pi.dim());
        for (y, &c) in f.values.iter().enumerate() {
            if !c.is_zero() {
                op = op.add(&pi.matrix(self.cosets.rep(y)).scale(c));
            }
        }
        op
    }
}

fn orbits(n: usize, neighbours: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            for y in neighbours(orbit[i]) {
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// `H(G, K)` for a sigma-stable `K`, with the sigma action on kernels.
#[derive(Clone, Debug)]
pub struct SigmaHecke {
    pub algebra: HeckeAlgebra,
    pub sg: SigmaGroup,
    /// sigma on `G/K`
    coset_sigma: Vec<usize>,
}

/// Brauer data: `H(H, U)` together with the embedding `H/U -> G/K`.
#[derive(Clone, Debug)]
pub struct BrauerTarget {
    pub algebra: HeckeAlgebra,
    /// Elements of `H` in `G`, indexed by the elements of the new group.
    pub embedding: Vec<usize>,
    /// Coset of `G/K` containing each coset of `H/U`.
    pub coset_map: Vec<usize>,
}

impl SigmaHecke {
    pub fn new(sg: &SigmaGroup, field: &Field, k: &[usize]) -> Result<SigmaHecke> {
        if !sg.is_stable(k) {
            return Err(Error::NotSigmaStable);
        }
        let algebra = HeckeAlgebra::new(sg.group(), field, k)?;
        let coset_sigma = (0..algebra.cosets.len())
            .map(|c| algebra.cosets.coset_of(sg.sigma(algebra.cosets.rep(c))))
            .collect();
        Ok(SigmaHecke {
            algebra,
            sg: sg.clone(),
            coset_sigma,
        })
    }

    /// Every sigma-fixed coset meets `H`.
    pub fn is_plain(&self) -> bool {
        let cos = &self.algebra.cosets;
        let meets_h: BTreeSet<usize> = self.sg.fixed().iter().map(|&h| cos.coset_of(h)).collect();
        (0..cos.len()).all(|c| self.coset_sigma[c] != c || meets_h.contains(&c))
    }

    /// `(sigma f)(x0, y) = f(x0, sigma^{-1} y)`
    pub fn apply_sigma(&self, f: &HeckeElement) -> HeckeElement {
        let mut values = vec![Fe::ZERO; f.values.len()];
        for (y, &v) in f.values.iter().enumerate() {
            values[self.coset_sigma[y]] = v;
        }
        HeckeElement { values }
    }

    pub fn is_invariant(&self, f: &HeckeElement) -> bool {
        self.apply_sigma(f) == *f
    }

    /// Orbits of `<K, sigma>` on `G/K`: indicator basis of the invariants.
    pub fn invariant_orbits(&self) -> Vec<Vec<usize>> {
        let alg = &self.algebra;
        orbits(alg.cosets.len(), |y| {
            let mut out: Vec<usize> = alg.k.iter().map(|&kk| alg.cosets.act(&alg.group, kk, y)).collect();
            out.push(self.coset_sigma[y]);
            out
        })
    }

    pub fn invariant_basis(&self) -> Vec<HeckeElement> {
        self.invariant_orbits().iter().map(|o| self.algebra.indicator(o)).collect()
    }

    pub fn brauer_target(&self) -> Result<BrauerTarget> {
        let u: Vec<usize> = self
            .algebra
            .k
            .iter()
            .copied()
            .filter(|g| self.sg.fixed().binary_search(g).is_ok())
            .collect();
        let (h, embedding) = self.sg.group().subgroup_as_group(self.sg.fixed())?;
        let u_local: Vec<usize> = u
            .iter()
            .map(|g| embedding.binary_search(g).expect("U lies in H"))
            .collect();
        let algebra = HeckeAlgebra::new(&h, &self.algebra.field, &u_local)?;
        let coset_map = algebra
            .cosets
            .reps()
            .iter()
            .map(|&r| self.algebra.cosets.coset_of(embedding[r]))
            .collect();
        Ok(BrauerTarget {
            algebra,
            embedding,
            coset_map,
        })
    }

    /// Restriction of a kernel to `(H/U)^2`, without any checks.
    pub fn restrict(&self, target: &BrauerTarget, f: &HeckeElement) -> HeckeElement {
        HeckeElement {
            values: target.coset_map.iter().map(|&c| f.values[c]).collect(),
        }
    }

    /// The Brauer homomorphism: only for plain `K` and sigma-invariant `f`.
    pub fn brauer(&self, target: &BrauerTarget, f: &HeckeElement) -> Result<HeckeElement> {
        if !self.is_plain() {
            return Err(Error::NotPlain);
        }
        if !self.is_invariant(f) {
            return Err(Error::NotSigmaInvariant);
        }
        Ok(self.restrict(target, f))
    }

    /// `Br(f * g)`, evaluating the product only on `H/U`.
    pub fn restrict_product(&self, target: &BrauerTarget, f: &HeckeElement, g: &HeckeElement) -> HeckeElement {
        HeckeElement {
            values: target
                .coset_map
                .iter()
                .map(|&c| self.algebra.convolve_at(f, g, c))
                .collect(),
        }
    }

    /// Checks `Br(f * g) = Br(f) * Br(g)` on every pair of basis elements of
    /// the invariants, plus unitality. Returns the first failing pair if any.
    pub fn brauer_multiplicativity(&self) -> Result<BrauerReport> {
        let target = self.brauer_target()?;
        let basis = self.invariant_basis();
        let unit_ok = self.restrict(&target, &self.algebra.unit()) == target.algebra.unit();
        let restricted: Vec<HeckeElement> = basis.iter().map(|f| self.restrict(&target, f)).collect();
        let mut failure = None;
        let mut checked = 0;
        'outer: for (i, f) in basis.iter().enumerate() {
            for (j, g) in basis.iter().enumerate() {
                let lhs = self.restrict_product(&target, f, g);
                let rhs = target.algebra.convolve(&restricted[i], &restricted[j])?;
                checked += 1;
                if lhs != rhs {
                    failure = Some((i, j));
                    break 'outer;
                }
            }
        }
        Ok(BrauerReport {
            plain: self.is_plain(),
            basis_size: basis.len(),
            pairs_checked: checked,
            unit_ok,
            failure,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BrauerReport {
    pub plain: bool,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub unit_ok: bool,
    /// Indices into the invariant basis of a pair violating multiplicativity.
    pub failure: Option<(usize, usize)>,
}

impl BrauerReport {
    pub fn multiplicative(&self) -> bool {
        self.unit_ok && self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiagramReport {
    /// `dim T^0(Pi^K), dim T^1(Pi^K)`
    pub tate_invariants: [usize; 2],
    pub tate_full: [usize; 2],
    pub lands_in_u_invariants: bool,
    pub elements_checked: usize,
    pub commutes: bool,
}

impl DiagramReport {
    pub fn pass(&self) -> bool {
        self.lands_in_u_invariants && self.commutes
    }
}

/// Checks that `T^*(Pi^K) -> T^*(Pi)` lands in the `U`-invariants and
/// intertwines the Hecke operator of each sigma-invariant `f` with `Br(f)`.
pub fn tate_hecke_diagram(sh: &SigmaHecke, ext: &SigmaExtendedRep, fs: &[HeckeElement]) -> Result<DiagramReport> {
    if !sh.is_plain() {
        return Err(Error::NotPlain);
    }
    let pi = ext.rep();
    if pi.group() != sh.sg.group() {
        return Err(Error::InvalidSigmaData("representation of a different group".into()));
    }
    let field = sh.algebra.field.clone();
    let target = sh.brauer_target()?;
    let a = ext.a();
    let full = tate_of(a);
    // sigma on Pi^K
    let inv = pi.invariants_of(&sh.algebra.k);
    let coord = Coordinatizer::new(&inv)?;
    let a_cols: Vec<Vec<Fe>> = (0..inv.rows())
        .map(|i| coord.coords(&a.apply(inv.row(i))).ok_or(Error::InvalidSigmaData("A does not preserve Pi^K".into())))
        .collect::<Result<_>>()?;
    let a_k = Mat::from_columns(&field, inv.rows(), &a_cols);
    let small = tate_of(&a_k);
    let embed = inv.transpose();
    let u_elems: Vec<usize> = sh
        .algebra
        .k
        .iter()
        .copied()
        .filter(|g| sh.sg.fixed().binary_search(g).is_ok())
        .collect();
    let mut lands = true;
    let mut commutes = true;
    let parts: [(&Subquotient, &Subquotient); 2] = [(&small.t0, &full.t0), (&small.t1, &full.t1)];
    let h_reps: Vec<usize> = target
        .algebra
        .cosets
        .reps()
        .iter()
        .map(|&r| target.embedding[r])
        .collect();
    for (sq_small, sq_full) in parts {
        let lifts: Vec<Vec<Fe>> = (0..sq_small.dim()).map(|i| embed.apply(sq_small.reps().row(i))).collect();
        for v in &lifts {
            for &u in &u_elems {
                let diff = crate::linalg::vec_sub(&field, &pi.matrix(u).apply(v), v);
                if !sq_full.lower().contains(&diff) {
                    lands = false;
                }
            }
        }
        for f in fs {
            let br = sh.brauer(&target, f)?;
            let t_f = sh.algebra.operator(f, pi);
            let br_op = {
                let mut m = Mat::zeros(&field, pi.dim(), pi.dim());
                for (y, &c) in br.values.iter().enumerate() {
                    if !c.is_zero() {
                        m = m.add(&pi.matrix(h_reps[y]).scale(c));
                    }
                }
                m
            };
            for v in &lifts {
                let lhs = t_f.apply(v);
                let rhs = br_op.apply(v);
                if sq_full.coords(&lhs) != sq_full.coords(&rhs) {
                    commutes = false;
                }
            }
        }
    }
    Ok(DiagramReport {
        tate_invariants: [small.t0.dim(), small.t1.dim()],
        tate_full: [full.t0.dim(), full.t1.dim()],
        lands_in_u_invariants: lands,
        elements_checked: fs.len(),
        commutes,
    })
}

/// Commutative finite-dimensional algebra with an automorphism of order p,
/// given by structure constants in a basis.
#[derive(Clone, Debug)]
pub struct SigmaAlgebra {
    field: Field,
    dim: usize,
    /// `e_i e_j = sum_k mult[i][j][k] e_k`
    mult: Vec<Vec<Vec<Fe>>>,
    unit: Vec<Fe>,
    sigma: Mat,
    /// Points, when the algebra is `Fun(S)` with the indicator basis.
    points: Option<usize>,
}

impl SigmaAlgebra {
    pub fn new(field: &Field, mult: Vec<Vec<Vec<Fe>>>, unit: Vec<Fe>, sigma: Mat) -> Result<SigmaAlgebra> {
        let dim = unit.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        if sigma.rows() != dim || !sigma.is_square() {
            return Err(Error::InvalidAlgebra("sigma has the wrong shape".into()));
        }
        let alg = SigmaAlgebra {
            field: field.clone(),
            dim,
            mult,
            unit,
            sigma,
            points: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// `Fun(S)` with `(sigma a)(s) = a(perm^{-1}(s))`.
    pub fn functions(field: &Field, perm: &[usize]) -> Result<SigmaAlgebra> {
        let n = perm.len();
        let mut mult = vec![vec![vec![Fe::ZERO; n]; n]; n];
        for i in 0..n {
            mult[i][i][i] = Fe::ONE;
        }
        let sigma = Mat::permutation(field, perm);
        let mut alg = SigmaAlgebra::new(field, mult, vec![Fe::ONE; n], sigma)?;
        alg.points = Some(n);
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let p = self.field.characteristic() as u64;
        if !self.sigma.pow(p).is_identity() {
            return Err(Error::InvalidAlgebra("sigma^p != 1".into()));
        }
        let e = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim];
            v[i] = Fe::ONE;
            v
        };
        for i in 0..self.dim {
            if self.mul(&self.unit, &e(i)) != e(i) {
                return Err(Error::InvalidAlgebra("unit is not a unit".into()));
            }
            for j in 0..self.dim {
                let eij = self.mul(&e(i), &e(j));
                if eij != self.mul(&e(j), &e(i)) {
                    return Err(Error::NotCommutative);
                }
                if self.apply_sigma(&eij) != self.mul(&self.apply_sigma(&e(i)), &self.apply_sigma(&e(j))) {
                    return Err(Error::InvalidAlgebra("sigma is not multiplicative".into()));
                }
                for k in 0..self.dim {
                    if self.mul(&eij, &e(k)) != self.mul(&e(i), &self.mul(&e(j), &e(k))) {
                        return Err(Error::InvalidAlgebra("not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> Vec<Fe> {
        self.unit.clone()
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = f.mul(ai, bj);
                crate::linalg::axpy(f, c, &self.mult[i][j], &mut out);
            }
        }
        out
    }

    pub fn apply_sigma(&self, a: &[Fe]) -> Vec<Fe> {
        self.sigma.apply(a)
    }

    /// `a sigma(a) ... sigma^{p-1}(a)`
    pub fn ring_norm(&self, a: &[Fe]) -> Vec<Fe> {
        let p = self.field.characteristic();
        let mut acc = self.one();
        let mut cur = a.to_vec();
        for _ in 0..p {
            acc = self.mul(&acc, &cur);
            cur = self.apply_sigma(&cur);
        }
        acc
    }

    /// `(1 + sigma + ... + sigma^{p-1}) a`
    pub fn ring_n(&self, a: &[Fe]) -> Vec<Fe> {
        crate::sigma_mod::norm_of(&self.sigma).apply(a)
    }

    /// The sigma-fixed subalgebra, as an echelon row basis.
    pub fn fixed_subalgebra(&self) -> Mat {
        self.sigma.sub(&Mat::identity(&self.field, self.dim)).kernel()
    }

    fn all_elements(&self) -> Option<Vec<Vec<Fe>>> {
        let q = self.field.order() as u64;
        let total = q.checked_pow(self.dim as u32)?;
        if total > 100_000 {
            return None;
        }
        Some(
            (0..total)
                .map(|mut code| {
                    (0..self.dim)
                        .map(|_| {
                            let e = self.field.element(code % q).expect("in range");
                            code /= q;
                            e
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Extends a character of `A'` killing `N . A` by `a -> chi(Nm a)^{1/p}`.
    ///
    /// `sub` is an echelon row basis of `A'` and `chi` its values on those rows.
    /// Returns the values of the extension on the standard basis of `A`.
    pub fn char_extend(&self, sub: &Mat, chi: &[Fe]) -> Result<CharacterExtension> {
        let f = &self.field;
        if sub.rows() != chi.len() || sub.cols() != self.dim {
            return Err(Error::InvalidCharacter("character values do not match the subalgebra basis".into()));
        }
        let coord = Coordinatizer::new(sub)?;
        let fixed = Subspace::span(&self.fixed_subalgebra());
        let sub_space = Subspace::span(sub);
        if !fixed.contains_space(&sub_space) {
            return Err(Error::InvalidAlgebra("A' is not inside the fixed subalgebra".into()));
        }
        for i in 0..sub.rows() {
            for j in 0..sub.rows() {
                if !sub_space.contains(&self.mul(sub.row(i), sub.row(j))) {
                    return Err(Error::InvalidAlgebra("A' is not closed under multiplication".into()));
                }
            }
        }
        let chi_of = |a: &[Fe]| -> Option<Fe> {
            coord
                .coords(a)
                .map(|c| f.sum(c.iter().zip(chi).map(|(&x, &y)| f.mul(x, y))))
        };
        let e = |i: usize| {
            let mut v = vec![Fe::ZERO; self.dim];
            v[i] = Fe::ONE;
            v
        };
        for i in 0..self.dim {
            let n = self.ring_n(&e(i));
            match chi_of(&n) {
                None => return Err(Error::InvalidAlgebra("N . A is not inside A'".into())),
                Some(v) if !v.is_zero() => return Err(Error::CharacterNotKillingTrace),
                _ => {}
            }
        }
        // chi must be a ring homomorphism on A'
        if chi_of(&self.one()) != Some(Fe::ONE) {
            return Err(Error::InvalidCharacter("chi(1) != 1".into()));
        }
        for i in 0..sub.rows() {
            for j in 0..sub.rows() {
                if chi_of(&self.mul(sub.row(i), sub.row(j))) != Some(f.mul(chi[i], chi[j])) {
                    return Err(Error::InvalidCharacter("chi is not multiplicative".into()));
                }
            }
        }
        let extend = |a: &[Fe]| -> Result<Fe> {
            let nm = self.ring_norm(a);
            let v = chi_of(&nm).ok_or_else(|| Error::InvalidAlgebra("Nm(A) is not inside A'".into()))?;
            Ok(f.frobenius_inv(v))
        };
        // Nm(A) inside A': exhaustively when the algebra is small enough
        let elements = self.all_elements();
        if let Some(all) = &elements {
            for a in all {
                extend(a)?;
            }
        }
        let values: Vec<Fe> = (0..self.dim).map(|i| extend(&e(i))).collect::<Result<_>>()?;
        let linear = |a: &[Fe]| f.sum(a.iter().zip(&values).map(|(&x, &y)| f.mul(x, y)));
        // ring homomorphism: the formula agrees with its linearization
        let mut hom_ok = linear(&self.one()) == Fe::ONE;
        let samples: Vec<Vec<Fe>> = match &elements {
            Some(all) => all.clone(),
            None => (0..self.dim).map(e).collect(),
        };
        for a in &samples {
            hom_ok &= extend(a)? == linear(a);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                hom_ok &= linear(&self.mul(&e(i), &e(j))) == f.mul(values[i], values[j]);
            }
        }
        let extends = (0..sub.rows()).all(|i| linear(sub.row(i)) == chi[i]);
        let sigma_invariant = (0..self.dim).all(|i| linear(&self.apply_sigma(&e(i))) == values[i]);
        // among point evaluations of Fun(S), exactly one restricts to chi
        let extensions_found = self.points.map(|n| {
            (0..n)
                .filter(|&s| (0..sub.rows()).all(|i| sub.get(i, s) == chi[i]))
                .collect::<Vec<_>>()
        });
        let unique = match &extensions_found {
            Some(list) => list.len() == 1 && {
                let s = list[0];
                (0..self.dim).all(|i| values[i] == if i == s { Fe::ONE } else { Fe::ZERO })
            },
            None => sigma_invariant,
        };
        Ok(CharacterExtension {
            values,
            homomorphism: hom_ok,
            extends,
            sigma_invariant,
            unique,
            extensions_found,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterExtension {
    /// Values on the standard basis of `A`.
    pub values: Vec<Fe>,
    pub homomorphism: bool,
    pub extends: bool,
    pub sigma_invariant: bool,
    pub unique: bool,
    /// For `Fun(S)`: the points whose evaluation restricts to `chi`.
    pub extensions_found: Option<Vec<usize>>,
}

impl CharacterExtension {
    pub fn pass(&self) -> bool {
        self.homomorphism && self.extends && self.sigma_invariant && self.unique
    }
}

/// The restriction of point evaluation at `s` to the row basis `sub`.
pub fn point_character(sub: &Mat, s: usize) -> Vec<Fe> {
    (0..sub.rows()).map(|i| sub.get(i, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_mod_c3_hecke() {
        let f = Field::prime(5);
        let s3 = FiniteGroup::symmetric(3);
        let c3 = s3.subgroup_generated(&[s3.generators()[1]]);
        let alg = HeckeAlgebra::new(&s3, &f, &c3).unwrap();
        assert_eq!(alg.cosets().len(), 2);
        let e = alg.unit();
        let basis = alg.basis();
        assert_eq!(basis.len(), 2);
        let t = basis.iter().find(|b| **b != e).unwrap().clone();
        assert_eq!(alg.convolve(&t, &t).unwrap(), e);
        assert_eq!(alg.convolve(&e, &t).unwrap(), t);
        let reg = crate::group::GroupRep::permutation(&s3, &f, &[s3.identity()]);
        let (m, inv) = alg.action_on_invariants(&t, &reg);
        assert_eq!(inv.rows(), 2);
        assert!(m.mul(&m).is_identity());
    }

    #[test]
    fn whole_group_algebra_is_the_field() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let all: Vec<usize> = s3.elements().collect();
        let alg = HeckeAlgebra::new(&s3, &f, &all).unwrap();
        let a = alg.from_values(vec![f.from_int(2)]).unwrap();
        assert_eq!(alg.convolve(&a, &a).unwrap().values(), &[f.from_int(1)]);
    }

    #[test]
    fn yoneda_on_permutation_module() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let k = vec![0, s3.generators()[0]];
        let k = s3.subgroup_generated(&k);
        let alg = HeckeAlgebra::new(&s3, &f, &k).unwrap();
        let pi = crate::group::GroupRep::permutation(&s3, &f, &k);
        let mut rng = rand::thread_rng();
        let h = alg.random(&mut rng);
        let mut delta = vec![Fe::ZERO; alg.cosets().len()];
        delta[alg.base()] = Fe::ONE;
        assert_eq!(alg.operator(&h, &pi).apply(&delta), h.values().to_vec());
    }

    #[test]
    fn c4_inversion_is_not_plain() {
        let f = Field::prime(2);
        let c4 = FiniteGroup::cyclic(4);
        let sg = SigmaGroup::new(&c4, vec![0, 3, 2, 1], 2).unwrap();
        let sh = SigmaHecke::new(&sg, &f, &[0, 2]).unwrap();
        assert!(!sh.is_plain());
        let rep = sh.brauer_multiplicativity().unwrap();
        assert!(!rep.multiplicative());
        let target = sh.brauer_target().unwrap();
        let t = sh.algebra.indicator(&[sh.algebra.cosets().coset_of(1)]);
        assert_eq!(sh.brauer(&target, &t), Err(Error::NotPlain));
        // Br(t * t) = 1 but Br(t)^2 = 0
        assert_eq!(sh.restrict_product(&target, &t, &t).values(), &[Fe::ONE]);
        let bt = sh.restrict(&target, &t);
        assert_eq!(target.algebra.convolve(&bt, &bt).unwrap().values(), &[Fe::ZERO]);
    }

    #[test]
    fn shift_brauer_examples() {
        let f = Field::prime(3);
        let c2 = FiniteGroup::cyclic(2);
        let sg = SigmaGroup::shift(&c2, 3);
        let sh = SigmaHecke::new(&sg, &f, &[sg.group().identity()]).unwrap();
        assert!(sh.is_plain());
        let target = sh.brauer_target().unwrap();
        let g = sg.group();
        let free = [g.from_coords(&[1, 0, 0]), g.from_coords(&[0, 1, 0]), g.from_coords(&[0, 0, 1])];
        let free_orbit: Vec<usize> = free.iter().map(|&x| sh.algebra.cosets().coset_of(x)).collect();
        let br = sh.brauer(&target, &sh.algebra.indicator(&free_orbit)).unwrap();
        assert!(br.values().iter().all(|x| x.is_zero()));
        let diag = sh.algebra.cosets().coset_of(sg.diagonal(1));
        let br = sh.brauer(&target, &sh.algebra.indicator(&[diag])).unwrap();
        let nontrivial = target.algebra.cosets().coset_of(1);
        assert_eq!(br, target.algebra.indicator(&[nontrivial]));
        assert!(sh.brauer_multiplicativity().unwrap().multiplicative());
    }

    #[test]
    fn character_extension_on_functions() {
        let f = Field::prime(3);
        // S = {*, a, b, c}, sigma fixes * and rotates a -> b -> c
        let alg = SigmaAlgebra::functions(&f, &[0, 2, 3, 1]).unwrap();
        let sub = alg.fixed_subalgebra();
        let chi = point_character(&sub, 0);
        let ext = alg.char_extend(&sub, &chi).unwrap();
        assert!(ext.pass(), "{ext:?}");
        assert_eq!(ext.values, vec![Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ZERO]);
        assert_eq!(ext.extensions_found, Some(vec![0]));
        // evaluation at the free orbit does not kill N . A
        let chi_free = point_character(&sub, 1);
        assert_eq!(alg.char_extend(&sub, &chi_free), Err(Error::CharacterNotKillingTrace));
    }

    #[test]
    fn norm_of_fixed_element_is_power() {
        let f = Field::new(3, 2).unwrap();
        let alg = SigmaAlgebra::functions(&f, &[0, 2, 3, 1]).unwrap();
        let a = vec![f.x(), f.from_int(2), f.from_int(2), f.from_int(2)];
        assert_eq!(alg.apply_sigma(&a), a);
        let cube: Vec<Fe> = a.iter().map(|&v| f.pow(v, 3)).collect();
        assert_eq!(alg.ring_norm(&a), cube);
    }
}
