//! Randomized checks of the defining relations of both presentations, as
//! identities of functions on the representation stack.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::functions::{eval_at, reparametrize, Convention, FirstGen, InvariantFunction, MAX_TABLE};
use super::lrep::{bridge_f, coevaluation, eval_second_at, rep_pool, LRep, SecondGen};
use super::target::{orbit_members, rep_stack, ParamTarget, RepPoint, SourceGroup};
use crate::error::Result;
use crate::field::{Fe, Field};
use crate::group::GroupRep;
use crate::linalg::{dot, intertwiner_space, vec_add, vec_scale, Mat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub instances: usize,
    pub points: usize,
    pub checks: Vec<RelationCheck>,
    /// Observation: trials of the reindexing relation that fail when
    /// generators are evaluated with the last index distinguished.
    pub last_index_reindex_violations: usize,
    pub last_index_reindex_trials: usize,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

struct Ctx<'a> {
    src: &'a SourceGroup,
    t: &'a ParamTarget,
    field: &'a Field,
    points: Vec<RepPoint>,
    pool: Vec<GroupRep>,
    q_reps: Vec<GroupRep>,
}

impl Ctx<'_> {
    fn fits(&self, arity: usize) -> bool {
        (self.t.l().order() as u128).pow(arity as u32) <= (MAX_TABLE as u128) / 16
    }

    fn gammas<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<usize> {
        (0..n).map(|_| rng.gen_range(0..self.src.gamma().order())).collect()
    }

    fn same(&self, lhs: impl Fn(&[usize]) -> Fe, rhs: impl Fn(&[usize]) -> Fe) -> bool {
        self.points.iter().all(|p| lhs(&p.images) == rhs(&p.images))
    }

    fn first(&self, f: &InvariantFunction, gammas: &[usize]) -> FirstGen {
        FirstGen::new(self.src, f.clone(), gammas.to_vec()).expect("matching arity")
    }

    fn random_pool_rep<R: Rng + ?Sized>(&self, max_dim: usize, rng: &mut R) -> GroupRep {
        let small: Vec<&GroupRep> = self.pool.iter().filter(|r| r.dim() <= max_dim).collect();
        (*small.choose(rng).expect("trivial rep is always present")).clone()
    }

    fn random_factor<R: Rng + ?Sized>(&self, arity: usize, max_dim: usize, rng: &mut R) -> LRep {
        let rep = self.random_pool_rep(max_dim, rng);
        LRep::factor(arity, rng.gen_range(0..arity), &rep).expect("coordinate in range")
    }

    /// A random representation of `L^arity` of dimension at most `max_dim`.
    fn random_lrep<R: Rng + ?Sized>(&self, arity: usize, max_dim: usize, rng: &mut R) -> LRep {
        if arity == 0 {
            return LRep::space(self.field, 0, rng.gen_range(1..=3));
        }
        let a = self.random_factor(arity, max_dim, rng);
        match rng.gen_range(0..4) {
            0 => a,
            1 => {
                // V (x) V^* on possibly different coordinates: always has invariants
                let root = ((max_dim as f64).sqrt() as usize).max(1);
                let v = self.random_pool_rep(root, rng);
                let c1 = rng.gen_range(0..arity);
                let c2 = rng.gen_range(0..arity);
                let left = LRep::factor(arity, c1, &v).expect("coordinate in range");
                let right = LRep::factor(arity, c2, &v).expect("coordinate in range");
                left.tensor(&right.dual(self.t.l())).expect("same arity")
            }
            2 => {
                let b = self.random_factor(arity, (max_dim / a.dim()).max(1), rng);
                a.tensor(&b).expect("same arity")
            }
            _ => {
                let b = self.random_factor(arity, max_dim, rng);
                a.sum(&b).expect("same arity")
            }
        }
    }

    fn random_in(&self, rows: &Mat, rng: &mut (impl Rng + ?Sized)) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; rows.cols()];
        for i in 0..rows.rows() {
            let c = self.field.random(rng);
            crate::linalg::axpy(self.field, c, rows.row(i), &mut v);
        }
        v
    }

    fn random_gen<R: Rng + ?Sized>(&self, w: LRep, rng: &mut R) -> SecondGen {
        let x = self.random_in(&w.invariant_vectors(self.t), rng);
        let xi = self.random_in(&w.invariant_functionals(self.t), rng);
        let gammas = self.gammas(w.arity(), rng);
        SecondGen::new(self.t, self.src, w, x, xi, gammas).expect("invariant data")
    }

    fn second(&self, gen: &SecondGen) -> impl Fn(&[usize]) -> Fe + '_ {
        let gen = gen.clone();
        move |rho: &[usize]| eval_second_at(self.src, &gen, rho, Convention::Naive)
    }
}

struct Tally {
    checks: Vec<RelationCheck>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool) {
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                c.trials += 1;
                c.failures += usize::from(!ok);
            }
            None => self.checks.push(RelationCheck {
                name: name.to_string(),
                trials: 1,
                failures: usize::from(!ok),
            }),
        }
    }
}

/// Runs every relation on `instances` fresh random data sets.
pub fn relation_suite<R: Rng + ?Sized>(src: &SourceGroup, t: &ParamTarget, field: &Field, instances: usize, rng: &mut R) -> Result<RelationReport> {
    let points = rep_stack(src, t)?;
    let q = t.quotient();
    let mut q_reps = vec![GroupRep::trivial(q, field)];
    if q.order() > 1 {
        q_reps.push(GroupRep::permutation(q, field, &[q.identity()]));
    }
    let ctx = Ctx {
        src,
        t,
        field,
        points,
        pool: rep_pool(t, field, 6),
        q_reps,
    };
    let mut tally = Tally { checks: Vec::new() };
    let mut li_trials = 0;
    let mut li_fail = 0;
    let naive = Convention::Naive;
    let l = t.l();
    for _ in 0..instances {
        // (i)
        let c = field.random(rng);
        let f0 = InvariantFunction::constant(t, field, 0, c)?;
        let g0 = ctx.first(&f0, &[]);
        tally.record("first/empty", ctx.same(|r| eval_at(src, &g0, r, naive), |_| f0.eval(&[])));

        // (ii)
        let n = rng.gen_range(1..=2);
        let f = InvariantFunction::random(t, field, n, rng)?;
        let g = InvariantFunction::random(t, field, n, rng)?;
        let gam = ctx.gammas(n, rng);
        let lam = field.random(rng);
        let sf = ctx.first(&f, &gam);
        let sg = ctx.first(&g, &gam);
        let ev = |gen: &FirstGen, r: &[usize]| eval_at(src, gen, r, naive);
        let ssum = ctx.first(&f.add(&g)?, &gam);
        let sprod = ctx.first(&f.mul(&g)?, &gam);
        let sscale = ctx.first(&f.scale(lam), &gam);
        let ok = ctx.same(|r| ev(&ssum, r), |r| field.add(ev(&sf, r), ev(&sg, r)))
            && ctx.same(|r| ev(&sprod, r), |r| field.mul(ev(&sf, r), ev(&sg, r)))
            && ctx.same(|r| ev(&sscale, r), |r| field.mul(lam, ev(&sf, r)));
        tally.record("first/algebra_hom", ok);

        // (iii)
        let i_size = rng.gen_range(1..=3);
        let j_size = rng.gen_range(1..=2);
        if ctx.fits(i_size) && ctx.fits(j_size) {
            let zeta: Vec<usize> = (0..i_size).map(|_| rng.gen_range(0..j_size)).collect();
            let f = InvariantFunction::random(t, field, i_size, rng)?;
            let fz = f.reindex(&zeta, j_size)?;
            let gj = ctx.gammas(j_size, rng);
            let gi: Vec<usize> = zeta.iter().map(|&j| gj[j]).collect();
            let lhs = ctx.first(&fz, &gj);
            let rhs = ctx.first(&f, &gi);
            tally.record("first/reindex", ctx.same(|r| ev(&lhs, r), |r| ev(&rhs, r)));
            li_trials += 1;
            let li = |gen: &FirstGen, r: &[usize]| eval_at(src, gen, r, Convention::LastIndex);
            if !ctx.same(|r| li(&lhs, r), |r| li(&rhs, r)) {
                li_fail += 1;
            }
        }

        // (iv)
        let n = if ctx.fits(6) { rng.gen_range(1..=2) } else { 1 };
        let f = InvariantFunction::random(t, field, n, rng)?;
        let ft = f.triple(t)?;
        let (a, b, cc) = (ctx.gammas(n, rng), ctx.gammas(n, rng), ctx.gammas(n, rng));
        let gam = src.gamma();
        let combined: Vec<usize> = (0..n).map(|i| gam.mul(gam.mul(a[i], gam.inv(b[i])), cc[i])).collect();
        let all: Vec<usize> = a.iter().chain(&b).chain(&cc).copied().collect();
        let lhs = ctx.first(&ft, &all);
        let rhs = ctx.first(&f, &combined);
        tally.record("first/triple", ctx.same(|r| ev(&lhs, r), |r| ev(&rhs, r)));

        // (v), inflated through Q
        let qn = q.order();
        let fq: Vec<Fe> = (0..qn * qn).map(|_| field.random(rng)).collect();
        let f = InvariantFunction::from_fn(t, field, 2, |g| fq[t.proj(g[0]) * qn + t.proj(g[1])])?;
        let gam2 = ctx.gammas(2, rng);
        let scalar = fq[src.to_q(gam2[0]) * qn + src.to_q(gam2[1])];
        let s = ctx.first(&f, &gam2);
        tally.record("first/inflated_scalar", ctx.same(|r| ev(&s, r), |_| scalar));
        if ctx.fits(3) {
            let f_a = InvariantFunction::random(t, field, 2, rng)?;
            let f_b = InvariantFunction::random(t, field, 2, rng)?;
            let w_a: Vec<Fe> = (0..qn).map(|_| field.random(rng)).collect();
            let w_b: Vec<Fe> = (0..qn).map(|_| field.random(rng)).collect();
            let f = InvariantFunction::from_fn(t, field, 3, |g| {
                let qq = t.proj(g[2]);
                field.add(field.mul(f_a.eval(&g[..2]), w_a[qq]), field.mul(f_b.eval(&g[..2]), w_b[qq]))
            })?;
            let gam3 = ctx.gammas(3, rng);
            let qq = src.to_q(gam3[2]);
            let fcheck = f_a.scale(w_a[qq]).add(&f_b.scale(w_b[qq]))?;
            let lhs = ctx.first(&f, &gam3);
            let rhs = ctx.first(&fcheck, &gam3[..2]);
            tally.record("first/inflated_partial", ctx.same(|r| ev(&lhs, r), |r| ev(&rhs, r)));
        }

        // conjugation invariance and the last-index reparametrization
        let f = InvariantFunction::random(t, field, 2, rng)?;
        let gam2 = ctx.gammas(2, rng);
        let s = ctx.first(&f, &gam2);
        let constant = ctx.points.iter().all(|p| {
            let v = ev(&s, &p.images);
            orbit_members(t, p).iter().all(|m| ev(&s, m) == v)
        });
        tally.record("first/conjugation_invariant", constant);
        let s_re = ctx.first(&f, &reparametrize(src.gamma(), &gam2));
        tally.record(
            "first/last_index_reparametrization",
            ctx.same(|r| eval_at(src, &s, r, Convention::LastIndex), |r| ev(&s_re, r)),
        );

        // second presentation (i)
        let w0 = LRep::space(field, 0, rng.gen_range(1..=3));
        let gen0 = ctx.random_gen(w0, rng);
        let pairing = dot(field, &gen0.x, &gen0.xi);
        tally.record("second/empty", ctx.same(ctx.second(&gen0), |_| pairing));

        // bridge to the first presentation
        let n = rng.gen_range(1..=2);
        let w = ctx.random_lrep(n, 12, rng);
        let gen = ctx.random_gen(w, rng);
        let fx = bridge_f(t, &gen)?;
        let s = ctx.first(&fx, &gen.gammas);
        tally.record("second/bridge", ctx.same(ctx.second(&gen), |r| ev(&s, r)));

        // linearity in x and xi
        let gen_b = {
            let x2 = ctx.random_in(&gen.w.invariant_vectors(t), rng);
            let xi2 = ctx.random_in(&gen.w.invariant_functionals(t), rng);
            SecondGen::new(t, src, gen.w.clone(), x2, xi2, gen.gammas.clone())?
        };
        let (p1, p2) = (field.random(rng), field.random(rng));
        let mixed_x = SecondGen {
            x: vec_add(field, &vec_scale(field, p1, &gen.x), &vec_scale(field, p2, &gen_b.x)),
            ..gen.clone()
        };
        let mixed_xi = SecondGen {
            xi: vec_add(field, &vec_scale(field, p1, &gen.xi), &vec_scale(field, p2, &gen_b.xi)),
            ..gen.clone()
        };
        let with_bx = SecondGen { x: gen_b.x.clone(), ..gen.clone() };
        let with_bxi = SecondGen { xi: gen_b.xi.clone(), ..gen.clone() };
        let (e, e_bx, e_bxi) = (ctx.second(&gen), ctx.second(&with_bx), ctx.second(&with_bxi));
        let ok = ctx.same(ctx.second(&mixed_x), |r| field.add(field.mul(p1, e(r)), field.mul(p2, e_bx(r))))
            && ctx.same(ctx.second(&mixed_xi), |r| field.add(field.mul(p1, e(r)), field.mul(p2, e_bxi(r))));
        tally.record("second/linear", ok);

        // a-1: morphisms u: W -> W'
        let n = rng.gen_range(1..=2);
        let w = ctx.random_lrep(n, 8, rng);
        let w_prime = if rng.gen_bool(0.5) {
            w.clone()
        } else {
            w.sum(&ctx.random_lrep(n, 6, rng))?
        };
        let gens = w.generator_tuples(l);
        let src_m: Vec<Mat> = gens.iter().map(|g| w.matrix(g)).collect();
        let tgt_m: Vec<Mat> = gens.iter().map(|g| w_prime.matrix(g)).collect();
        let homs = intertwiner_space(&src_m, &tgt_m)?;
        let mut u = Mat::zeros(field, w_prime.dim(), w.dim());
        for h in &homs {
            u = u.add(&h.scale(field.random(rng)));
        }
        let x = ctx.random_in(&w.invariant_vectors(t), rng);
        let xi_p = ctx.random_in(&w_prime.invariant_functionals(t), rng);
        let gam = ctx.gammas(n, rng);
        let lhs = SecondGen::new(t, src, w.clone(), x.clone(), u.transpose().apply(&xi_p), gam.clone())?;
        let rhs = SecondGen::new(t, src, w_prime.clone(), u.apply(&x), xi_p, gam)?;
        tally.record("second/morphism", ctx.same(ctx.second(&lhs), ctx.second(&rhs)));

        // a-2: external tensor products and sums
        let (n1, n2) = (rng.gen_range(0..=1), rng.gen_range(1..=2));
        let g1 = ctx.random_gen(ctx.random_lrep(n1, 4, rng), rng);
        let g2 = ctx.random_gen(ctx.random_lrep(n2, 6, rng), rng);
        let gam12: Vec<usize> = g1.gammas.iter().chain(&g2.gammas).copied().collect();
        let tensor = SecondGen::new(
            t,
            src,
            g1.w.boxtimes(&g2.w)?,
            kron_vec(field, &g1.x, &g2.x),
            kron_vec(field, &g1.xi, &g2.xi),
            gam12.clone(),
        )?;
        let (e1, e2) = (ctx.second(&g1), ctx.second(&g2));
        tally.record("second/tensor", ctx.same(ctx.second(&tensor), |r| field.mul(e1(r), e2(r))));
        let sum = SecondGen::new(
            t,
            src,
            g1.w.boxplus(&g2.w)?,
            g1.x.iter().chain(&g2.x).copied().collect(),
            g1.xi.iter().chain(&g2.xi).copied().collect(),
            gam12,
        )?;
        tally.record("second/sum", ctx.same(ctx.second(&sum), |r| field.add(e1(r), e2(r))));

        // a-1.5: restriction along zeta: I -> J
        let i_size = rng.gen_range(1..=3);
        let j_size = rng.gen_range(1..=2);
        let zeta: Vec<usize> = (0..i_size).map(|_| rng.gen_range(0..j_size)).collect();
        let w = ctx.random_lrep(i_size, 8, rng);
        let wz = w.reindex(&zeta, j_size)?;
        let base = ctx.random_gen(w, rng);
        let gj = ctx.gammas(j_size, rng);
        let gi: Vec<usize> = zeta.iter().map(|&j| gj[j]).collect();
        let lhs = SecondGen::new(t, src, wz, base.x.clone(), base.xi.clone(), gj)?;
        let rhs = SecondGen { gammas: gi, ..base };
        tally.record("second/reindex", ctx.same(ctx.second(&lhs), ctx.second(&rhs)));

        // a-3: W (x) W^* (x) W with delta_W (x) x and xi (x) ev_W
        let w = ctx.random_lrep(1, 5, rng);
        let d = w.dim();
        let base = ctx.random_gen(w.clone(), rng);
        let (a, b, cc) = (ctx.gammas(1, rng), ctx.gammas(1, rng), ctx.gammas(1, rng));
        let gg = src.gamma();
        let combined = vec![gg.mul(gg.mul(a[0], gg.inv(b[0])), cc[0])];
        let big = w.boxtimes(&w.dual(l))?.boxtimes(&w)?;
        let delta = coevaluation(d);
        let lhs = SecondGen { gammas: combined, ..base.clone() };
        let rhs = SecondGen::new(
            t,
            src,
            big,
            kron_vec(field, &delta, &base.x),
            kron_vec(field, &base.xi, &delta),
            vec![a[0], b[0], cc[0]],
        )?;
        tally.record("second/triple", ctx.same(ctx.second(&lhs), ctx.second(&rhs)));

        // (v): W inflated from L^J x Q^{I - J}
        let nj = rng.gen_range(1..=2);
        let wj = ctx.random_lrep(nj, 6, rng);
        let qrep = ctx.q_reps.choose(rng).expect("nonempty").clone();
        let last = LRep::inflated(t, 1, 0, &qrep)?;
        let w = wj.boxtimes(&last)?;
        let base = ctx.random_gen(w, rng);
        let qq = src.to_q(base.gammas[nj]);
        let act = Mat::identity(field, wj.dim()).kron(&qrep.matrix(qq));
        let restricted = wj.tensor(&LRep::space(field, nj, qrep.dim()))?;
        let rhs = SecondGen::new(t, src, restricted, act.apply(&base.x), base.xi.clone(), base.gammas[..nj].to_vec())?;
        tally.record("second/inflated", ctx.same(ctx.second(&base), ctx.second(&rhs)));
    }
    Ok(RelationReport {
        instances,
        points: ctx.points.len(),
        checks: tally.checks,
        last_index_reindex_violations: li_fail,
        last_index_reindex_trials: li_trials,
    })
}

/// `a (x) b` with the first factor most significant.
pub fn kron_vec(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(field.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn suite_on_s3() {
        let f = Field::prime(5);
        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        let src = SourceGroup::unramified(&s3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = relation_suite(&src, &t, &f, 4, &mut rng).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.points, 3);
    }
}
