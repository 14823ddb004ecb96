//! Sigma-fixed representations of `G = H^p`, the normalized extension of
//! the action to `G x| <sigma>`, Tate cohomology as a representation of
//! `H = G^sigma`, and the identity `T^0(pi^{box p}) = pi^(p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::{frobenius_twist_rep, FiniteGroup, GroupRep, SigmaGroup};
use crate::linalg::{intertwiner_space, Mat, Subquotient, Subspace};
use crate::sigma_mod::{from_digits, tate_of, to_digits};

/// A representation of `G` with a matrix `A` satisfying
/// `Pi(sigma g) = A Pi(g) A^{-1}` and `A^p = 1`.
#[derive(Clone, Debug)]
pub struct SigmaExtendedRep {
    sg: SigmaGroup,
    rep: GroupRep,
    a: Mat,
}

impl SigmaExtendedRep {
    pub fn new(sg: &SigmaGroup, rep: &GroupRep, a: Mat) -> Result<SigmaExtendedRep> {
        if rep.group() != sg.group() {
            return Err(Error::InvalidSigmaData("representation of a different group".into()));
        }
        if a.rows() != rep.dim() || a.cols() != rep.dim() {
            return Err(Error::DimensionMismatch("A must match the representation".into()));
        }
        if !a.pow(sg.p() as u64).is_identity() {
            return Err(Error::SigmaOrder);
        }
        for &g in sg.group().generators() {
            if a.mul(&rep.matrix(g)) != rep.matrix(sg.sigma(g)).mul(&a) {
                return Err(Error::InvalidSigmaData("A does not intertwine Pi with Pi o sigma".into()));
            }
        }
        Ok(SigmaExtendedRep {
            sg: sg.clone(),
            rep: rep.clone(),
            a,
        })
    }

    pub fn sigma_group(&self) -> &SigmaGroup {
        &self.sg
    }

    pub fn rep(&self) -> &GroupRep {
        &self.rep
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }
}

/// The matrix on `V^{(x) p}` moving tensor factor `i` to position `i + 1`.
pub fn rotation_matrix(field: &Field, d: usize, p: usize) -> Mat {
    let n = d.pow(p as u32);
    let perm: Vec<usize> = (0..n)
        .map(|idx| {
            let digits = to_digits(idx, d, p);
            let rotated: Vec<usize> = (0..p).map(|i| digits[(i + p - 1) % p]).collect();
            from_digits(&rotated, d)
        })
        .collect();
    Mat::permutation(field, &perm)
}

/// `pi^{box p}` on `H^p` with the cyclic shift and the factor rotation as `A`.
pub fn box_power(pi: &GroupRep, p: u32) -> Result<SigmaExtendedRep> {
    let sg = SigmaGroup::shift(pi.group(), p);
    let rep = GroupRep::box_power_of(pi, sg.group())?;
    let a = rotation_matrix(pi.field(), pi.dim(), p as usize);
    SigmaExtendedRep::new(&sg, &rep, a)
}

fn check_absolutely_irreducible(rep: &GroupRep) -> Result<()> {
    let gens = rep.generator_matrices();
    let end = intertwiner_space(&gens, &gens)?;
    if end.len() != 1 {
        return Err(Error::NotAbsolutelyIrreducible(end.len()));
    }
    Ok(())
}

/// Rescales an intertwiner `A0` with `A0^p = c` to `A0 / c^{1/p}`.
fn normalize(a0: &Mat, p: u32) -> Result<Mat> {
    let f = a0.field().clone();
    let power = a0.pow(p as u64);
    let c = power.get(0, 0);
    if c.is_zero() || power != Mat::scalar(&f, a0.rows(), c) {
        return Err(Error::InvalidSigmaData("A0^p is not a nonzero scalar".into()));
    }
    let root = f.frobenius_inv(c);
    Ok(a0.scale(f.inv(root).expect("nonzero")))
}

/// The unique extension of an absolutely irreducible sigma-fixed `Pi` to
/// `G x| <sigma>`.
pub fn extend_action(rep: &GroupRep, sg: &SigmaGroup) -> Result<SigmaExtendedRep> {
    if rep.group() != sg.group() {
        return Err(Error::InvalidSigmaData("representation of a different group".into()));
    }
    if rep.dim() == 0 {
        return SigmaExtendedRep::new(sg, rep, Mat::identity(rep.field(), 0));
    }
    check_absolutely_irreducible(rep)?;
    let gens = rep.generator_matrices();
    let twisted: Vec<Mat> = sg.group().generators().iter().map(|&g| rep.matrix(sg.sigma(g))).collect();
    // A Pi(g) = Pi(sigma g) A
    let space = intertwiner_space(&gens, &twisted)?;
    let a0 = space.first().ok_or(Error::NotSigmaFixed)?;
    let a = normalize(a0, sg.p())?;
    SigmaExtendedRep::new(sg, rep, a)
}

/// Normalizes a caller-supplied intertwiner instead of solving for one.
pub fn extend_action_with(rep: &GroupRep, sg: &SigmaGroup, candidate: &Mat) -> Result<SigmaExtendedRep> {
    if rep.group() != sg.group() {
        return Err(Error::InvalidSigmaData("representation of a different group".into()));
    }
    if candidate.rows() != rep.dim() || candidate.cols() != rep.dim() {
        return Err(Error::DimensionMismatch("candidate must match the representation".into()));
    }
    check_absolutely_irreducible(rep)?;
    for &g in sg.group().generators() {
        if candidate.mul(&rep.matrix(g)) != rep.matrix(sg.sigma(g)).mul(candidate) {
            return Err(Error::InvalidSigmaData("candidate does not intertwine Pi with Pi o sigma".into()));
        }
    }
    let a = normalize(candidate, sg.p())?;
    SigmaExtendedRep::new(sg, rep, a)
}

/// Tate groups of an extended representation with the induced action of a
/// group mapping into `G^sigma`.
#[derive(Clone, Debug)]
pub struct TateReps {
    pub t0: GroupRep,
    pub t1: GroupRep,
    pub t0_space: Subquotient,
    pub t1_space: Subquotient,
}

/// `T^0`, `T^1` as representations of `h`, acting through `phi: h -> G^sigma`.
pub fn tate_of_rep_along(e: &SigmaExtendedRep, h: &FiniteGroup, phi: &[usize]) -> Result<TateReps> {
    if phi.len() != h.order() {
        return Err(Error::InvalidSigmaData("phi must be defined on every element".into()));
    }
    for &g in phi {
        if e.sg.sigma(g) != g {
            return Err(Error::InvalidSigmaData("phi does not land in the fixed subgroup".into()));
        }
    }
    let groups = tate_of(&e.a);
    let field = e.rep.field();
    let act = |sq: &Subquotient| -> Result<GroupRep> {
        let mats: Vec<Mat> = h
            .generators()
            .iter()
            .map(|&x| sq.induced(&e.rep.matrix(phi[x]), sq))
            .collect::<Result<_>>()?;
        GroupRep::new(h, field, sq.dim(), &mats)
    };
    Ok(TateReps {
        t0: act(&groups.t0)?,
        t1: act(&groups.t1)?,
        t0_space: groups.t0,
        t1_space: groups.t1,
    })
}

/// `T^0`, `T^1` as representations of `H = G^sigma`, built as a standalone
/// group whose elements are numbered as in `sg.fixed()`.
pub fn tate_of_rep(e: &SigmaExtendedRep) -> Result<(FiniteGroup, TateReps)> {
    let (h, embedding) = e.sg.group().subgroup_as_group(e.sg.fixed())?;
    let reps = tate_of_rep_along(e, &h, &embedding)?;
    Ok((h, reps))
}

/// Is there an invertible `H`-equivariant map between two representations?
pub fn isomorphic(a: &GroupRep, b: &GroupRep) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let space = intertwiner_space(&a.generator_matrices(), &b.generator_matrices())?;
    if space.iter().any(|t| t.inverse().is_some()) {
        return Ok(true);
    }
    if space.len() <= 1 {
        return Ok(false);
    }
    // random combinations find an invertible element with high probability
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let f = a.field();
    for _ in 0..64 {
        let mut t = Mat::zeros(f, a.dim(), a.dim());
        for s in &space {
            t = t.add(&s.scale(f.random(&mut rng)));
        }
        if t.inverse().is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LinkageReport {
    pub p: u32,
    pub dim_pi: usize,
    pub dim_t0: usize,
    pub dim_t1: usize,
    /// `T^0 = pi^(p)` certified by an invertible intertwiner.
    pub t0_is_twist: bool,
    /// The explicit map `e_b -> e_b^{(x) p}` is an equivariant isomorphism `pi^(p) -> T^0`.
    pub explicit_map_ok: bool,
    /// `pi^(p) = pi`; false exactly when the twist is visible.
    pub twist_is_trivial: bool,
    /// Observation only: `T^1 = pi^(p)`.
    pub t1_is_twist: bool,
    /// Normalizing the rotation, a random rescaling of it, and a solved
    /// intertwiner all give the same `A`.
    pub normalization_independent: bool,
    /// `(v + w)^{(x) p} - v^{(x) p} - w^{(x) p}` lies in `N . Pi` on sampled pairs.
    pub additive_mod_norms: bool,
}

impl LinkageReport {
    pub fn pass(&self) -> bool {
        self.dim_t0 == self.dim_pi && self.t0_is_twist && self.explicit_map_ok && self.normalization_independent && self.additive_mod_norms
    }
}

fn tensor_power_vec(field: &Field, v: &[Fe], p: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ONE];
    for _ in 0..p {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for &a in &out {
            for &b in v {
                next.push(field.mul(a, b));
            }
        }
        out = next;
    }
    out
}

/// Builds `pi^{box p}`, extends, computes `T^0`, `T^1` and certifies `T^0 = pi^(p)`.
pub fn linkage_report(pi: &GroupRep, p: u32) -> Result<LinkageReport> {
    let field = pi.field().clone();
    if field.characteristic() != p {
        return Err(Error::InvalidSigmaData(format!(
            "p = {p} differs from the characteristic {}",
            field.characteristic()
        )));
    }
    let h = pi.group().clone();
    let canonical = box_power(pi, p)?;
    let sg = canonical.sg.clone();
    let solved = extend_action(&canonical.rep, &sg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) * 7919 + pi.dim() as u64);
    let lambda = field.random_nonzero(&mut rng);
    let rescaled = extend_action_with(&canonical.rep, &sg, &canonical.a.scale(lambda))?;
    let normalization_independent = solved.a == canonical.a && rescaled.a == canonical.a;

    let phi: Vec<usize> = h.elements().map(|x| sg.diagonal(x)).collect();
    let tate = tate_of_rep_along(&canonical, &h, &phi)?;
    let twist = frobenius_twist_rep(pi);
    let t0_is_twist = isomorphic(&twist, &tate.t0)?;
    let t1_is_twist = isomorphic(&twist, &tate.t1)?;
    let twist_is_trivial = isomorphic(&twist, pi)?;

    let d = pi.dim();
    let explicit_map_ok = if tate.t0.dim() != d {
        false
    } else {
        let columns: Vec<Vec<Fe>> = (0..d)
            .map(|b| {
                let mut e = vec![Fe::ZERO; d];
                e[b] = Fe::ONE;
                tate.t0_space
                    .coords(&tensor_power_vec(&field, &e, p as usize))
                    .ok_or_else(|| Error::InvalidSigmaData("e^(x)p is not sigma-fixed".into()))
            })
            .collect::<Result<_>>()?;
        let j = Mat::from_columns(&field, d, &columns);
        j.inverse().is_some()
            && h.generators()
                .iter()
                .zip(tate.t0.generator_matrices())
                .all(|(&x, t)| j.mul(&twist.matrix(x)) == t.mul(&j))
    };

    let norm_image = crate::linalg::Subspace::column_space(&crate::sigma_mod::norm_of(&canonical.a));
    let mut additive_mod_norms = true;
    for _ in 0..8 {
        let v: Vec<Fe> = (0..d).map(|_| field.random(&mut rng)).collect();
        let w: Vec<Fe> = (0..d).map(|_| field.random(&mut rng)).collect();
        let s = crate::linalg::vec_add(&field, &v, &w);
        let mut diff = tensor_power_vec(&field, &s, p as usize);
        diff = crate::linalg::vec_sub(&field, &diff, &tensor_power_vec(&field, &v, p as usize));
        diff = crate::linalg::vec_sub(&field, &diff, &tensor_power_vec(&field, &w, p as usize));
        additive_mod_norms &= norm_image.contains(&diff);
        // (c v)^{(x) p} = c^p v^{(x) p}
        let c = field.random(&mut rng);
        let scaled = tensor_power_vec(&field, &crate::linalg::vec_scale(&field, c, &v), p as usize);
        let expected = crate::linalg::vec_scale(&field, field.pow(c, p as u64), &tensor_power_vec(&field, &v, p as usize));
        additive_mod_norms &= scaled == expected;
        let _ = rng.gen::<u8>();
    }

    Ok(LinkageReport {
        p,
        dim_pi: d,
        dim_t0: tate.t0.dim(),
        dim_t1: tate.t1.dim(),
        t0_is_twist,
        explicit_map_ok,
        twist_is_trivial,
        t1_is_twist,
        normalization_independent,
        additive_mod_norms,
    })
}

/// The standard 2-dimensional representation of `S_3`: the sum-zero plane
/// of the permutation module on three points.
pub fn s3_standard(field: &Field) -> GroupRep {
    let (s3, perm) = s3_points(field);
    let ones = Mat::from_rows(field, 3, &[vec![Fe::ONE; 3]]);
    let plane = Subspace::kernel_of(&ones);
    let sq = Subquotient::new(&plane, &Subspace::zero(field, 3)).expect("subspace");
    let mats: Vec<Mat> = s3
        .generators()
        .iter()
        .map(|&g| sq.induced(&perm.matrix(g), &sq).expect("invariant plane"))
        .collect();
    GroupRep::new(&s3, field, 2, &mats).expect("standard representation of S_3")
}

/// The sign character of `S_3`, as the determinant of the permutation action.
pub fn s3_sign(field: &Field) -> GroupRep {
    let (s3, perm) = s3_points(field);
    let mats: Vec<Mat> = s3
        .generators()
        .iter()
        .map(|&g| {
            // a permutation matrix of order 2 is a transposition iff its trace is 1
            let m = perm.matrix(g);
            let odd = m.trace() == Fe::ONE && m.mul(&m).is_identity() && !m.is_identity();
            Mat::scalar(field, 1, if odd { field.from_int(-1) } else { Fe::ONE })
        })
        .collect();
    GroupRep::new(&s3, field, 1, &mats).expect("sign character")
}

fn s3_points(field: &Field) -> (FiniteGroup, GroupRep) {
    let s3 = FiniteGroup::symmetric(3);
    let involution = s3.elements().find(|&g| g != s3.identity() && s3.element_order(g) == 2).expect("S_3 has transpositions");
    let stab = s3.subgroup_generated(&[involution]);
    let perm = GroupRep::permutation(&s3, field, &stab);
    (s3, perm)
}

/// The character of `C_n` sending the generator to `zeta`.
pub fn cyclic_character(field: &Field, n: usize, zeta: Fe) -> Result<GroupRep> {
    let c = FiniteGroup::cyclic(n);
    GroupRep::new(&c, field, 1, &[Mat::scalar(field, 1, zeta)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_has_order_p() {
        let f = Field::prime(3);
        let a = rotation_matrix(&f, 2, 3);
        assert_eq!(a.rows(), 8);
        assert!(!a.is_identity());
        assert!(a.pow(3).is_identity());
    }

    #[test]
    fn standard_rep_is_faithful_and_irreducible() {
        let f = Field::prime(5);
        let pi = s3_standard(&f);
        let s3 = pi.group().clone();
        let traces: Vec<i64> = s3.elements().map(|g| pi.matrix(g).trace().index() as i64).collect();
        // character: 2 at the identity, 0 on transpositions, -1 on 3-cycles
        let mut sorted = traces.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 0, 0, 2, 4, 4]);
        check_absolutely_irreducible(&pi).unwrap();
        assert!(s3.elements().filter(|&g| pi.matrix(g).is_identity()).count() == 1);
    }

    #[test]
    fn box_power_restricts_to_tensor_power_on_diagonal() {
        let f = Field::prime(3);
        let pi = s3_standard(&f);
        let e = box_power(&pi, 3).unwrap();
        assert_eq!(e.rep().dim(), 8);
        for g in pi.group().elements() {
            let m = pi.matrix(g);
            let cube = m.kron(&m).kron(&m);
            assert_eq!(e.rep().matrix(e.sigma_group().diagonal(g)), cube);
        }
    }

    #[test]
    fn extend_action_rejects_non_fixed() {
        let f = Field::prime(3);
        let sign = s3_sign(&f);
        let triv = GroupRep::trivial(sign.group(), &f);
        let sg = SigmaGroup::shift(sign.group(), 3);
        let mats: Vec<Mat> = sg
            .group()
            .generators()
            .iter()
            .map(|&g| {
                let c = sg.group().coords(g);
                sign.matrix(c[0]).kron(&triv.matrix(c[1])).kron(&triv.matrix(c[2]))
            })
            .collect();
        let rep = GroupRep::new(sg.group(), &f, 1, &mats).unwrap();
        assert!(matches!(extend_action(&rep, &sg), Err(Error::NotSigmaFixed)));
    }

    #[test]
    fn rescaled_candidate_normalizes_back() {
        let f = Field::new(5, 2).unwrap();
        let pi = s3_standard(&f);
        let e = box_power(&pi, 5).unwrap();
        let lam = f.x();
        let again = extend_action_with(e.rep(), e.sigma_group(), &e.a().scale(lam)).unwrap();
        assert_eq!(again.a(), e.a());
    }

    #[test]
    fn regular_rep_of_shift_group() {
        let f = Field::prime(3);
        let c2 = FiniteGroup::cyclic(2);
        let sg = SigmaGroup::shift(&c2, 3);
        let reg = GroupRep::permutation(sg.group(), &f, &[0]);
        let a = Mat::permutation(&f, sg.sigma_map());
        let e = SigmaExtendedRep::new(&sg, &reg, a).unwrap();
        let (h, t) = tate_of_rep(&e).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!((t.t0.dim(), t.t1.dim()), (2, 2));
    }

    #[test]
    fn f9_character_sees_the_twist() {
        let f = Field::new(3, 2).unwrap();
        // x^2 = -1 in F_9 with the modulus x^2 + 1
        let zeta = f.x();
        assert_eq!(f.pow(zeta, 2), f.from_int(-1));
        let chi = cyclic_character(&f, 4, zeta).unwrap();
        let rep = linkage_report(&chi, 3).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert!(!rep.twist_is_trivial);
    }
}
