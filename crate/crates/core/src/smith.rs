//! Finite simplicial complexes with a simplicial automorphism of order p,
//! their sigma-equivariant cochains, and the comparison of Tate cohomology
//! of `X` with that of the fixed subcomplex `X^sigma`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Mat;
use crate::sigma_mod::SigmaModule;
use crate::tate_complex::SigmaChainComplex;

type Simplex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComplex {
    vertices: Vec<String>,
    /// All simplices, each sorted, ordered by (dimension, lexicographic).
    simplices: Vec<Simplex>,
    perm: Vec<usize>,
    p: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithReport {
    pub tate_x: [usize; 2],
    pub tate_fixed: [usize; 2],
    pub euler_characteristic: i64,
    pub euler_from_cohomology: i64,
}

impl SmithReport {
    pub fn pass(&self) -> bool {
        self.tate_x == self.tate_fixed && self.euler_characteristic == self.euler_from_cohomology
    }
}

fn order_simplices(set: BTreeSet<Simplex>) -> Vec<Simplex> {
    let mut v: Vec<Simplex> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

fn closure(facets: &[Simplex]) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    for f in facets {
        let n = f.len();
        for mask in 1u64..(1u64 << n) {
            let s: Simplex = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            out.insert(s);
        }
    }
    out
}

impl SigmaComplex {
    /// `facets` may contain non-maximal faces; the closure is taken.
    /// `perm[v]` is the image of vertex `v`.
    pub fn new(vertices: Vec<String>, facets: &[Vec<usize>], perm: Vec<usize>, p: u32) -> Result<SigmaComplex> {
        let n = vertices.len();
        if perm.len() != n {
            return Err(Error::NotSimplicial("permutation length differs from vertex count".into()));
        }
        let mut seen = vec![false; n];
        for &w in &perm {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(Error::NotSimplicial("vertex map is not a bijection".into()));
            }
        }
        for v in 0..n {
            let mut w = v;
            for _ in 0..p {
                w = perm[w];
            }
            if w != v {
                return Err(Error::NotSimplicial(format!("perm^{p} moves vertex {}", vertices[v])));
            }
        }
        let mut clean = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.iter().any(|&v| v >= n) {
                return Err(Error::NotSimplicial(format!("bad facet {f:?}")));
            }
            clean.push(s);
        }
        let mut all = closure(&clean);
        // isolated vertices are allowed: every listed vertex is a 0-simplex
        for v in 0..n {
            all.insert(vec![v]);
        }
        for s in &all {
            let mut img: Simplex = s.iter().map(|&v| perm[v]).collect();
            img.sort_unstable();
            if !all.contains(&img) {
                return Err(Error::NotSimplicial(format!("image of {s:?} is not a simplex")));
            }
        }
        Ok(SigmaComplex {
            vertices,
            simplices: order_simplices(all),
            perm,
            p,
        })
    }

    /// Builds from string labels, as in the JSON format.
    pub fn from_labels(vertices: &[String], facets: &[Vec<String>], perm: &BTreeMap<String, String>, p: u32) -> Result<SigmaComplex> {
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::NotSimplicial("duplicate vertex label".into()));
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::NotSimplicial(format!("unknown vertex {s}")));
        let facets: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| f.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut pm: Vec<usize> = (0..vertices.len()).collect();
        for (k, v) in perm {
            pm[lookup(k)?] = lookup(v)?;
        }
        SigmaComplex::new(vertices.to_vec(), &facets, pm, p)
    }

    pub fn empty(p: u32) -> SigmaComplex {
        SigmaComplex {
            vertices: Vec::new(),
            simplices: Vec::new(),
            perm: Vec::new(),
            p,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    pub fn facets(&self) -> Vec<Simplex> {
        let all: BTreeSet<&Simplex> = self.simplices.iter().collect();
        self.simplices
            .iter()
            .filter(|s| {
                !(0..self.vertices.len()).any(|v| {
                    if s.contains(&v) {
                        return false;
                    }
                    let mut t = (*s).clone();
                    t.push(v);
                    t.sort_unstable();
                    all.contains(&t)
                })
            })
            .cloned()
            .collect()
    }

    fn image(&self, s: &[usize]) -> Simplex {
        let mut img: Simplex = s.iter().map(|&v| self.perm[v]).collect();
        img.sort_unstable();
        img
    }

    /// Every sigma-stable simplex is fixed vertex by vertex.
    pub fn is_admissible(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| self.image(s) != *s || s.iter().all(|&v| self.perm[v] == v))
    }

    /// Vertices are the simplices of `X`, in (dimension, lexicographic) order;
    /// facets are the maximal flags.
    pub fn barycentric_subdivide(&self) -> SigmaComplex {
        let index: BTreeMap<&Simplex, usize> = self.simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let labels: Vec<String> = self
            .simplices
            .iter()
            .map(|s| {
                let names: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        let mut flags = Vec::new();
        for facet in self.facets() {
            for order in permutations(&facet) {
                let mut chain = Vec::with_capacity(order.len());
                for k in 1..=order.len() {
                    let mut s = order[..k].to_vec();
                    s.sort_unstable();
                    chain.push(index[&s]);
                }
                flags.push(chain);
            }
        }
        let perm: Vec<usize> = self.simplices.iter().map(|s| index[&self.image(s)]).collect();
        SigmaComplex::new(labels, &flags, perm, self.p).expect("subdivision of a simplicial action")
    }

    /// Vertices fixed by sigma and the simplices spanned by them.
    pub fn fixed_subcomplex(&self) -> SigmaComplex {
        let fixed: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.perm[v] == v).collect();
        let renumber: BTreeMap<usize, usize> = fixed.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let simplices: Vec<Simplex> = self
            .simplices
            .iter()
            .filter(|s| s.iter().all(|v| renumber.contains_key(v)))
            .map(|s| s.iter().map(|v| renumber[v]).collect())
            .collect();
        SigmaComplex {
            vertices: fixed.iter().map(|&v| self.vertices[v].clone()).collect(),
            simplices: order_simplices(simplices.into_iter().collect()),
            perm: (0..fixed.len()).collect(),
            p: self.p,
        }
    }

    fn simplices_of_dim(&self, k: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    /// Simplicial cochains over `field` with sigma acting by the signed
    /// permutation of oriented simplices (orientation from vertex order).
    pub fn equivariant_cochains(&self, field: &Field) -> Result<SigmaChainComplex> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible);
        }
        if field.characteristic() != self.p {
            return Err(Error::InvalidComplex("field characteristic must equal the order of sigma".into()));
        }
        let Some(top) = self.dimension() else {
            return Ok(SigmaChainComplex::concentrated(SigmaModule::zero(field), 0));
        };
        let levels: Vec<Vec<&Simplex>> = (0..=top).map(|k| self.simplices_of_dim(k)).collect();
        let index: Vec<BTreeMap<&Simplex, usize>> = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let mut modules = Vec::new();
        for (k, level) in levels.iter().enumerate() {
            let n = level.len();
            let mut m = Mat::zeros(field, n, n);
            for (i, s) in level.iter().enumerate() {
                let raw: Vec<usize> = s.iter().map(|&v| self.perm[v]).collect();
                let sign = permutation_sign(&raw);
                let mut img = raw.clone();
                img.sort_unstable();
                let j = index[k][&img];
                m.set(j, i, if sign > 0 { Fe::ONE } else { field.neg(Fe::ONE) });
            }
            modules.push(SigmaModule::new(m)?);
        }
        let mut diffs = Vec::new();
        for k in 0..top {
            let (src, tgt) = (&levels[k], &levels[k + 1]);
            let mut d = Mat::zeros(field, tgt.len(), src.len());
            for (t_idx, t) in tgt.iter().enumerate() {
                for i in 0..t.len() {
                    let mut face = (*t).clone();
                    face.remove(i);
                    let s_idx = index[k][&face];
                    let c = if i % 2 == 0 { Fe::ONE } else { field.neg(Fe::ONE) };
                    d.set(t_idx, s_idx, c);
                }
            }
            diffs.push(d);
        }
        SigmaChainComplex::new(0, modules, diffs)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Disjoint union; labels of the second complex get a prime.
    pub fn disjoint_union(&self, other: &SigmaComplex) -> SigmaComplex {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| format!("{v}'")));
        let mut facets: Vec<Vec<usize>> = self.facets();
        facets.extend(other.facets().into_iter().map(|f| f.into_iter().map(|v| v + n).collect()));
        let mut perm = self.perm.clone();
        perm.extend(other.perm.iter().map(|&v| v + n));
        SigmaComplex::new(vertices, &facets, perm, self.p).expect("disjoint union")
    }

    /// Cone with a fixed apex.
    pub fn cone(&self) -> SigmaComplex {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.push("apex".into());
        let mut facets: Vec<Vec<usize>> = self
            .facets()
            .into_iter()
            .map(|mut f| {
                f.push(n);
                f
            })
            .collect();
        if facets.is_empty() {
            facets.push(vec![n]);
        }
        let mut perm = self.perm.clone();
        perm.push(n);
        SigmaComplex::new(vertices, &facets, perm, self.p).expect("cone")
    }

    /// Unreduced suspension with both poles fixed.
    pub fn suspension(&self) -> SigmaComplex {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.push("north".into());
        vertices.push("south".into());
        let mut facets = Vec::new();
        for f in self.facets() {
            for pole in [n, n + 1] {
                let mut g = f.clone();
                g.push(pole);
                facets.push(g);
            }
        }
        facets.push(vec![n]);
        facets.push(vec![n + 1]);
        let mut perm = self.perm.clone();
        perm.push(n);
        perm.push(n + 1);
        SigmaComplex::new(vertices, &facets, perm, self.p).expect("suspension")
    }

    /// Same complex with the identity action.
    pub fn with_trivial_action(&self) -> SigmaComplex {
        SigmaComplex {
            perm: (0..self.vertices.len()).collect(),
            ..self.clone()
        }
    }

    /// Compares `T^i(X)` and `T^i(X^sigma)` for `i = 0, 1`.
    pub fn smith_localization_report(&self, field: &Field) -> Result<SmithReport> {
        let cx = self.equivariant_cochains(field)?;
        let fixed = self.fixed_subcomplex();
        let cf = fixed.equivariant_cochains(field)?;
        let (x0, x1) = cx.tate_dims()?;
        let (f0, f1) = cf.tate_dims()?;
        let (a, b) = cx.degrees();
        let euler_from_cohomology = (a..=b)
            .map(|j| {
                let h = cx.cohomology_dim(j) as i64;
                if j % 2 == 0 { h } else { -h }
            })
            .sum();
        Ok(SmithReport {
            tate_x: [x0, x1],
            tate_fixed: [f0, f1],
            euler_characteristic: self.euler_characteristic(),
            euler_from_cohomology,
        })
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Sign of the permutation that sorts `v` (distinct entries).
fn permutation_sign(v: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cycle graph on `n` vertices, rotated by `shift` steps.
pub fn cycle(n: usize, shift: usize, p: u32) -> SigmaComplex {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
    SigmaComplex::new(vertices, &facets, perm, p).expect("cycle")
}

/// Smallest free rotation of a cycle by an element of order p: a `p`-cycle
/// for odd p, the square with antipodal rotation for p = 2.
pub fn free_cycle(p: u32) -> SigmaComplex {
    if p == 2 {
        cycle(4, 2, 2)
    } else {
        cycle(p as usize, 1, p)
    }
}

/// Boundary of the tetrahedron with a 3-cycle on three vertices.
pub fn tetrahedron_boundary_rotation() -> SigmaComplex {
    let vertices: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let facets = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    SigmaComplex::new(vertices, &facets, vec![1, 2, 0, 3], 3).expect("tetrahedron")
}

/// An edge with its endpoints swapped.
pub fn flipped_interval() -> SigmaComplex {
    SigmaComplex::new(vec!["a".into(), "b".into()], &[vec![0, 1]], vec![1, 0], 2).expect("interval")
}

/// Named battery of admissible complexes for a given p.
pub fn battery(p: u32) -> Vec<(String, SigmaComplex)> {
    let c = free_cycle(p);
    let mut out = vec![
        ("free cycle".to_string(), c.clone()),
        ("cone over free cycle".to_string(), c.cone()),
        ("suspension of free cycle".to_string(), c.suspension()),
        ("double suspension".to_string(), c.suspension().suspension()),
        ("cycle plus fixed point".to_string(), c.disjoint_union(&SigmaComplex::point(p))),
        ("two cones".to_string(), c.cone().disjoint_union(&c.cone())),
        ("identity on cycle".to_string(), cycle(4, 0, p)),
        ("identity on sphere".to_string(), c.suspension().with_trivial_action()),
        ("two fixed points".to_string(), SigmaComplex::point(p).disjoint_union(&SigmaComplex::point(p))),
    ];
    if p == 2 {
        out.push(("flipped interval, subdivided".into(), flipped_interval().barycentric_subdivide()));
    }
    if p == 3 {
        out.push(("rotated tetrahedron, subdivided".into(), tetrahedron_boundary_rotation().barycentric_subdivide()));
        out.push(("rotated triangle, subdivided".into(), rotated_triangle().barycentric_subdivide()));
    }
    out
}

impl SigmaComplex {
    pub fn point(p: u32) -> SigmaComplex {
        SigmaComplex::new(vec!["pt".into()], &[vec![0]], vec![0], p).expect("point")
    }
}

/// The full 2-simplex with its vertices rotated.
pub fn rotated_triangle() -> SigmaComplex {
    let vertices: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    SigmaComplex::new(vertices, &[vec![0, 1, 2]], vec![1, 2, 0], 3).expect("triangle")
}
