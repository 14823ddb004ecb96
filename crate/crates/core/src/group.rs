//! Finite groups, cosets, matrix representations and groups with an
//! automorphism of prime order.
//!
//! Elements are indices `0..order`. A group is either given by a full
//! multiplication table or as a direct power `H^n` of a smaller group, whose
//! elements are encoded in mixed radix `h_0 + h_1 |H| + ...`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;

/// Groups above this order skip the cubic associativity check; every
/// constructor in this crate produces associative tables by construction.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 256;

#[derive(Debug)]
enum Kind {
    Table { mul: Vec<u32>, inv: Vec<u32> },
    Power { base: FiniteGroup, n: usize },
}

#[derive(Debug)]
struct Inner {
    order: usize,
    identity: usize,
    gens: Vec<usize>,
    kind: Kind,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table `mul[a * order + b] = ab`,
    /// verifying the group axioms.
    pub fn from_table(order: usize, mul: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if mul.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul[e * order + a] == a && mul[a * order + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mul[a * order + b] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            if mul[b * order + a] != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            inv[a] = b as u32;
        }
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul[a * order + b];
                    for c in 0..order {
                        if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                            return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        Ok(Self::from_parts(order, identity, mul.into_iter().map(|x| x as u32).collect(), inv, None))
    }

    fn from_parts(order: usize, identity: usize, mul: Vec<u32>, inv: Vec<u32>, gens: Option<Vec<usize>>) -> FiniteGroup {
        let mut g = FiniteGroup {
            inner: Arc::new(Inner {
                order,
                identity,
                gens: Vec::new(),
                kind: Kind::Table { mul, inv },
            }),
        };
        let gens = gens.unwrap_or_else(|| g.greedy_generators());
        Arc::get_mut(&mut g.inner).expect("fresh group").gens = gens;
        g
    }

    /// The group generated by the given permutations of `0..n`. Elements are
    /// indexed by lexicographic order of the permutations, so the identity is 0.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = gens.first().map(|g| g.len()).unwrap_or(0);
        for g in gens {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of 0..{n}")));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut set = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
                if set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = set.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let order = elems.len();
        let mut mul = vec![0u32; order * order];
        let mut inv = vec![0u32; order];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                // (ab)(i) = a(b(i))
                let c: Vec<usize> = pb.iter().map(|&i| pa[i]).collect();
                mul[a * order + b] = index[&c] as u32;
            }
            let mut pi = vec![0; n];
            for (i, &j) in pa.iter().enumerate() {
                pi[j] = i;
            }
            inv[a] = index[&pi] as u32;
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        Ok(Self::from_parts(order, 0, mul, inv, Some(gen_idx)))
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        Self::from_parts(n, 0, mul, inv, Some(if n > 1 { vec![1] } else { vec![] }))
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
        }
        if n >= 3 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        if gens.is_empty() {
            return Self::cyclic(1);
        }
        Self::from_permutations(&gens).expect("symmetric group")
    }

    /// `H^n` with componentwise multiplication.
    pub fn power(base: &FiniteGroup, n: usize) -> FiniteGroup {
        let order = base.order().pow(n as u32);
        let id_coords = vec![base.identity(); n];
        let mut g = FiniteGroup {
            inner: Arc::new(Inner {
                order,
                identity: 0,
                gens: Vec::new(),
                kind: Kind::Power { base: base.clone(), n },
            }),
        };
        let identity = g.from_coords(&id_coords);
        let mut gens = Vec::new();
        for i in 0..n {
            for &s in base.generators() {
                let mut c = id_coords.clone();
                c[i] = s;
                gens.push(g.from_coords(&c));
            }
        }
        let inner = Arc::get_mut(&mut g.inner).expect("fresh group");
        inner.identity = identity;
        inner.gens = gens;
        g
    }

    /// Semidirect product `N x| Q` with `(n, q)(n', q') = (n * act(q)(n'), q q')`.
    /// `action[q]` is the automorphism of `N` by which `q` acts, as an element map.
    /// The pair `(n, q)` has index `q * |N| + n`.
    pub fn semidirect(normal: &FiniteGroup, quotient: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
        let (nn, nq) = (normal.order(), quotient.order());
        if action.len() != nq || action.iter().any(|a| a.len() != nn) {
            return Err(Error::InvalidGroup("action table has the wrong shape".into()));
        }
        for (q, a) in action.iter().enumerate() {
            if !normal.is_automorphism(a) {
                return Err(Error::InvalidGroup(format!("action of {q} is not an automorphism")));
            }
        }
        for q1 in 0..nq {
            for q2 in 0..nq {
                let q12 = quotient.mul(q1, q2);
                if (0..nn).any(|n| action[q12][n] != action[q1][action[q2][n]]) {
                    return Err(Error::InvalidGroup("action is not a homomorphism".into()));
                }
            }
        }
        let order = nn * nq;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (n1, q1) = (a % nn, a / nn);
            for b in 0..order {
                let (n2, q2) = (b % nn, b / nn);
                let n = normal.mul(n1, action[q1][n2]);
                let q = quotient.mul(q1, q2);
                mul[a * order + b] = (q * nn + n) as u32;
            }
        }
        FiniteGroup::from_table(order, mul.into_iter().map(|x| x as usize).collect())
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.inner.gens
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.inner.order
    }

    /// Base group and exponent, for direct powers.
    pub fn as_power(&self) -> Option<(&FiniteGroup, usize)> {
        match &self.inner.kind {
            Kind::Power { base, n } => Some((base, *n)),
            Kind::Table { .. } => None,
        }
    }

    /// Coordinates of an element of a direct power.
    pub fn coords(&self, g: usize) -> Vec<usize> {
        let (base, n) = self.as_power().expect("direct power");
        let b = base.order();
        let mut g = g;
        (0..n)
            .map(|_| {
                let c = g % b;
                g /= b;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[usize]) -> usize {
        let (base, _) = self.as_power().expect("direct power");
        let b = base.order();
        c.iter().rev().fold(0, |acc, &x| acc * b + x)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.inner.kind {
            Kind::Table { mul, .. } => mul[a * self.inner.order + b] as usize,
            Kind::Power { base, n } => {
                let bo = base.order();
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*n {
                    out += base.mul(a % bo, b % bo) * place;
                    place *= bo;
                    a /= bo;
                    b /= bo;
                }
                out
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        match &self.inner.kind {
            Kind::Table { inv, .. } => inv[a] as usize,
            Kind::Power { base, n } => {
                let bo = base.order();
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*n {
                    out += base.inv(a % bo) * place;
                    place *= bo;
                    a /= bo;
                }
                out
            }
        }
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `h g h^{-1}`
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity()];
        seen[self.identity()] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.contains(&self.identity())
            && set.iter().all(|&a| members.contains(&self.inv(a)) && set.iter().all(|&b| members.contains(&self.mul(a, b))))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity()];
        for g in self.elements() {
            if sub.binary_search(&g).is_err() {
                gens.push(g);
                sub = self.subgroup_generated(&gens);
                if sub.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Whether an element map is a bijective homomorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &x in map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        let check_all = n <= 1024;
        let lefts: Vec<usize> = if check_all { self.elements().collect() } else { self.generators().to_vec() };
        lefts.iter().all(|&a| self.elements().all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// A subgroup as a group in its own right, with the embedding into `self`.
    /// Elements of the new group are numbered in the order of `elems` sorted.
    pub fn subgroup_as_group(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if !self.is_subgroup(&sorted) {
            return Err(Error::InvalidGroup("not a subgroup".into()));
        }
        let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = sorted.len();
        let mut mul = vec![0usize; n * n];
        for (i, &a) in sorted.iter().enumerate() {
            for (j, &b) in sorted.iter().enumerate() {
                mul[i * n + j] = pos[&self.mul(a, b)];
            }
        }
        Ok((FiniteGroup::from_table(n, mul)?, sorted))
    }

    /// Left cosets `gK`.
    pub fn left_cosets(&self, k: &[usize]) -> Cosets {
        let n = self.order();
        let mut index_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if index_of[g] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &x in k {
                index_of[self.mul(g, x)] = idx;
            }
        }
        Cosets { reps, index_of }
    }
}

/// Left cosets `G/K`, indexed by order of their smallest element.
#[derive(Clone, Debug)]
pub struct Cosets {
    reps: Vec<usize>,
    index_of: Vec<u32>,
}

impl Cosets {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, c: usize) -> usize {
        self.reps[c]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.index_of[g] as usize
    }

    /// `g . (xK) = (gx)K`
    pub fn act(&self, group: &FiniteGroup, g: usize, c: usize) -> usize {
        self.coset_of(group.mul(g, self.reps[c]))
    }
}

/// A group together with an automorphism `sigma` with `sigma^p = 1`.
#[derive(Clone, Debug)]
pub struct SigmaGroup {
    group: FiniteGroup,
    sigma: Vec<usize>,
    p: u32,
    fixed: Vec<usize>,
}

impl SigmaGroup {
    pub fn new(group: &FiniteGroup, sigma: Vec<usize>, p: u32) -> Result<SigmaGroup> {
        if !crate::field::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if !group.is_automorphism(&sigma) {
            return Err(Error::InvalidGroup("sigma is not an automorphism".into()));
        }
        for g in group.elements() {
            let mut x = g;
            for _ in 0..p {
                x = sigma[x];
            }
            if x != g {
                return Err(Error::InvalidGroup("sigma^p is not the identity".into()));
            }
        }
        let fixed = group.elements().filter(|&g| sigma[g] == g).collect();
        Ok(SigmaGroup {
            group: group.clone(),
            sigma,
            p,
            fixed,
        })
    }

    /// `G = H^p` with `sigma(g)_i = g_{i-1}`.
    pub fn shift(base: &FiniteGroup, p: u32) -> SigmaGroup {
        let n = p as usize;
        let group = FiniteGroup::power(base, n);
        let sigma: Vec<usize> = group
            .elements()
            .map(|g| {
                let c = group.coords(g);
                let shifted: Vec<usize> = (0..n).map(|i| c[(i + n - 1) % n]).collect();
                group.from_coords(&shifted)
            })
            .collect();
        let fixed = group.elements().filter(|&g| sigma[g] == g).collect();
        SigmaGroup { group, sigma, p, fixed }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn sigma(&self, g: usize) -> usize {
        self.sigma[g]
    }

    pub fn sigma_map(&self) -> &[usize] {
        &self.sigma
    }

    /// `H = G^sigma`, sorted.
    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    pub fn is_stable(&self, k: &[usize]) -> bool {
        let set: BTreeSet<usize> = k.iter().copied().collect();
        k.iter().all(|&x| set.contains(&self.sigma[x]))
    }

    /// The diagonal element `(h, ..., h)` of a shift group.
    pub fn diagonal(&self, h: usize) -> usize {
        self.group.from_coords(&vec![h; self.p as usize])
    }
}

#[derive(Clone, Debug)]
enum RepKind {
    Generic {
        gen_elems: Vec<usize>,
        gen_mats: Vec<Mat>,
        all: OnceLock<Vec<Mat>>,
    },
    /// External tensor power of a representation of the base group.
    BoxPower { base: Box<GroupRep> },
}

/// A matrix representation of a finite group.
#[derive(Clone, Debug)]
pub struct GroupRep {
    group: FiniteGroup,
    field: Field,
    dim: usize,
    kind: RepKind,
}

impl GroupRep {
    /// From images of chosen generating elements. The relations are verified
    /// on the Cayley graph: `M(g) M(s) = M(gs)` for every element `g` and
    /// every listed generator `s`.
    pub fn from_images(group: &FiniteGroup, field: &Field, dim: usize, gen_elems: &[usize], gen_mats: &[Mat]) -> Result<GroupRep> {
        if gen_elems.len() != gen_mats.len() {
            return Err(Error::InvalidRep("generator and matrix counts differ".into()));
        }
        for m in gen_mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRep(format!("expected {dim}x{dim} matrices")));
            }
            if m.field() != field {
                return Err(Error::InvalidRep("matrix over the wrong field".into()));
            }
        }
        if let Some(&bad) = gen_elems.iter().find(|&&g| g >= group.order()) {
            return Err(Error::InvalidRep(format!("element {bad} not in the group")));
        }
        if group.subgroup_generated(gen_elems).len() != group.order() {
            return Err(Error::InvalidRep("listed elements do not generate the group".into()));
        }
        let rep = GroupRep {
            group: group.clone(),
            field: field.clone(),
            dim,
            kind: RepKind::Generic {
                gen_elems: gen_elems.to_vec(),
                gen_mats: gen_mats.to_vec(),
                all: OnceLock::new(),
            },
        };
        let all = rep.build_all()?;
        if let RepKind::Generic { all: cell, .. } = &rep.kind {
            let _ = cell.set(all);
        }
        Ok(rep)
    }

    /// From images of `group.generators()`.
    pub fn new(group: &FiniteGroup, field: &Field, dim: usize, gen_mats: &[Mat]) -> Result<GroupRep> {
        Self::from_images(group, field, dim, group.generators(), gen_mats)
    }

    pub fn trivial(group: &FiniteGroup, field: &Field) -> GroupRep {
        let mats = vec![Mat::identity(field, 1); group.generators().len()];
        Self::new(group, field, 1, &mats).expect("trivial representation")
    }

    /// Permutation representation on left cosets of `k` (all of `G` when `k = {1}`).
    pub fn permutation(group: &FiniteGroup, field: &Field, k: &[usize]) -> GroupRep {
        let cosets = group.left_cosets(k);
        let n = cosets.len();
        let mats: Vec<Mat> = group
            .generators()
            .iter()
            .map(|&g| {
                let perm: Vec<usize> = (0..n).map(|c| cosets.act(group, g, c)).collect();
                Mat::permutation(field, &perm)
            })
            .collect();
        Self::new(group, field, n, &mats).expect("permutation representation")
    }

    /// `pi (x) ... (x) pi` as a representation of `H^p`. Requires `group`
    /// to be the direct power of `base.group()`.
    pub fn box_power_of(base: &GroupRep, group: &FiniteGroup) -> Result<GroupRep> {
        let (b, n) = group
            .as_power()
            .ok_or_else(|| Error::InvalidRep("target is not a direct power".into()))?;
        if b != base.group() {
            return Err(Error::InvalidRep("direct power of a different group".into()));
        }
        Ok(GroupRep {
            group: group.clone(),
            field: base.field.clone(),
            dim: base.dim.pow(n as u32),
            kind: RepKind::BoxPower { base: Box::new(base.clone()) },
        })
    }

    fn build_all(&self) -> Result<Vec<Mat>> {
        let RepKind::Generic { gen_elems, gen_mats, .. } = &self.kind else {
            unreachable!()
        };
        let g = &self.group;
        let mut all: Vec<Option<Mat>> = vec![None; g.order()];
        all[g.identity()] = Some(Mat::identity(&self.field, self.dim));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&s, ms) in gen_elems.iter().zip(gen_mats) {
                let y = g.mul(x, s);
                let my = all[x].as_ref().expect("visited").mul(ms);
                match &all[y] {
                    Some(existing) => {
                        if *existing != my {
                            return Err(Error::InvalidRep(format!(
                                "relation violated: M({x}) M({s}) != M({y})"
                            )));
                        }
                    }
                    None => {
                        all[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(all.into_iter().map(|m| m.expect("generated")).collect())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> Mat {
        match &self.kind {
            RepKind::Generic { all, .. } => all.get().expect("built at construction")[g].clone(),
            RepKind::BoxPower { base } => {
                let coords = self.group.coords(g);
                let mut m = Mat::identity(&self.field, 1);
                for c in coords {
                    m = m.kron(&base.matrix(c));
                }
                m
            }
        }
    }

    /// Matrices of `group.generators()`.
    pub fn generator_matrices(&self) -> Vec<Mat> {
        self.group.generators().iter().map(|&g| self.matrix(g)).collect()
    }

    /// Restriction along a group homomorphism `phi: K -> G` given as an element map.
    pub fn restrict(&self, sub: &FiniteGroup, phi: &[usize]) -> Result<GroupRep> {
        let mats: Vec<Mat> = sub.generators().iter().map(|&h| self.matrix(phi[h])).collect();
        GroupRep::new(sub, &self.field, self.dim, &mats)
    }

    /// Every matrix entry raised to the p-th power.
    pub fn frobenius_twist(&self) -> GroupRep {
        let mats: Vec<Mat> = self
            .group
            .generators()
            .iter()
            .map(|&g| self.matrix(g).map(|f, x| f.frobenius(x)))
            .collect();
        GroupRep::new(&self.group, &self.field, self.dim, &mats).expect("twist of a representation")
    }

    /// The invariant subspace `{v : gv = v for all g}`, as rows in echelon form.
    pub fn invariants_of(&self, elems: &[usize]) -> Mat {
        let id = Mat::identity(&self.field, self.dim);
        let mut stacked = Mat::zeros(&self.field, 0, self.dim);
        for &g in elems {
            stacked = stacked.vstack(&self.matrix(g).sub(&id)).rref_rows();
        }
        stacked.kernel()
    }
}

/// Free-standing alias used by the linkage API.
pub fn frobenius_twist_rep(r: &GroupRep) -> GroupRep {
    r.frobenius_twist()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
        let c3 = s3.subgroup_generated(&[s3.generators()[1]]);
        assert_eq!(c3.len(), 3);
        assert!(s3.is_subgroup(&c3));
        assert_eq!(s3.left_cosets(&c3).len(), 2);
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        let c2 = FiniteGroup::from_table(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn power_group_arithmetic() {
        let s3 = FiniteGroup::symmetric(3);
        let g = FiniteGroup::power(&s3, 3);
        assert_eq!(g.order(), 216);
        assert_eq!(g.subgroup_generated(g.generators()).len(), 216);
        for a in [5, 17, 100] {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            let c = g.coords(a);
            assert_eq!(g.from_coords(&c), a);
        }
    }

    #[test]
    fn shift_fixes_diagonal() {
        let c2 = FiniteGroup::cyclic(2);
        let s = SigmaGroup::shift(&c2, 3);
        assert_eq!(s.fixed().len(), 2);
        assert_eq!(s.fixed(), &[s.diagonal(0), s.diagonal(1)]);
        // (1,0,0) -> (0,1,0)
        let g = s.group().from_coords(&[1, 0, 0]);
        assert_eq!(s.group().coords(s.sigma(g)), vec![0, 1, 0]);
    }

    #[test]
    fn sigma_order_checked() {
        let c4 = FiniteGroup::cyclic(4);
        let inversion: Vec<usize> = (0..4).map(|a| (4 - a) % 4).collect();
        assert!(SigmaGroup::new(&c4, inversion.clone(), 2).is_ok());
        let rotation_map: Vec<usize> = vec![0, 3, 2, 1];
        assert!(SigmaGroup::new(&c4, rotation_map, 3).is_err());
    }

    #[test]
    fn rep_relations_checked() {
        let f = Field::prime(5);
        let c2 = FiniteGroup::cyclic(2);
        let bad = GroupRep::new(&c2, &f, 1, &[Mat::scalar(&f, 1, f.from_int(2))]);
        assert!(matches!(bad, Err(Error::InvalidRep(_))));
        let sign = GroupRep::new(&c2, &f, 1, &[Mat::scalar(&f, 1, f.from_int(-1))]).unwrap();
        assert_eq!(sign.matrix(1).get(0, 0), f.from_int(4));
    }

    #[test]
    fn box_power_matches_kron() {
        let f = Field::prime(3);
        let s3 = FiniteGroup::symmetric(3);
        let perm = GroupRep::permutation(&s3, &f, &[0]);
        let g = FiniteGroup::power(&s3, 2);
        let bp = GroupRep::box_power_of(&perm, &g).unwrap();
        let x = g.from_coords(&[1, 4]);
        assert_eq!(bp.matrix(x), perm.matrix(1).kron(&perm.matrix(4)));
        let y = g.from_coords(&[3, 2]);
        assert_eq!(bp.matrix(g.mul(x, y)), bp.matrix(x).mul(&bp.matrix(y)));
    }

    #[test]
    fn twist_over_prime_field_is_identity() {
        let f = Field::prime(5);
        let s3 = FiniteGroup::symmetric(3);
        let r = GroupRep::permutation(&s3, &f, &[0]);
        let t = frobenius_twist_rep(&r);
        for g in s3.elements() {
            assert_eq!(r.matrix(g), t.matrix(g));
        }
    }
}
