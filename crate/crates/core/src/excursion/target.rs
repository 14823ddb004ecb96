//! Parameter targets `L = Ghat x| Q`, source groups mapping onto `Q`, and
//! the representation stack of over-`Q` homomorphisms up to `Ghat`-conjugacy.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Largest group order accepted by brute-force enumeration; read from
/// `TATE_SMITH_MAX_ORDER`, default 48.
pub fn max_order() -> usize {
    std::env::var("TATE_SMITH_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(48)
}

fn check_size(size: usize) -> Result<()> {
    let cap = max_order();
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    Ok(())
}

/// `L = Ghat x| Q`; the pair `(n, q)` is the element `q |Ghat| + n`.
#[derive(Clone, Debug)]
pub struct ParamTarget {
    ghat: FiniteGroup,
    q: FiniteGroup,
    action: Vec<Vec<usize>>,
    l: FiniteGroup,
    /// Optional automorphism of `L` over `Q` preserving `Ghat`, with its order.
    sigma: Option<(Vec<usize>, u32)>,
}

impl ParamTarget {
    pub fn new(ghat: &FiniteGroup, q: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<ParamTarget> {
        check_size(ghat.order() * q.order())?;
        let l = FiniteGroup::semidirect(ghat, q, &action)?;
        Ok(ParamTarget {
            ghat: ghat.clone(),
            q: q.clone(),
            action,
            l,
            sigma: None,
        })
    }

    /// `L = Ghat`, `Q = 1`.
    pub fn split(ghat: &FiniteGroup) -> Result<ParamTarget> {
        let trivial = FiniteGroup::cyclic(1);
        Self::new(ghat, &trivial, vec![ghat.elements().collect()])
    }

    /// `Ghat x Q` with `Q` acting trivially.
    pub fn direct(ghat: &FiniteGroup, q: &FiniteGroup) -> Result<ParamTarget> {
        let id: Vec<usize> = ghat.elements().collect();
        Self::new(ghat, q, vec![id; q.order()])
    }

    /// `Hhat^p x| C_p` with `C_p` rotating the factors, and `sigma` the
    /// rotation of `Hhat^p` extended trivially on `Q`.
    pub fn base_change(hhat: &FiniteGroup, p: u32) -> Result<ParamTarget> {
        let n = p as usize;
        let ghat = FiniteGroup::power(hhat, n);
        let q = FiniteGroup::cyclic(n);
        let rotate = |g: usize, k: usize| -> usize {
            let c = ghat.coords(g);
            let r: Vec<usize> = (0..n).map(|i| c[(i + n - k) % n]).collect();
            ghat.from_coords(&r)
        };
        let action: Vec<Vec<usize>> = (0..n).map(|k| ghat.elements().map(|g| rotate(g, k)).collect()).collect();
        let mut t = Self::new(&ghat, &q, action)?;
        let nn = ghat.order();
        let sigma: Vec<usize> = t.l.elements().map(|x| (x / nn) * nn + rotate(x % nn, 1)).collect();
        t = t.with_sigma(sigma, p)?;
        Ok(t)
    }

    /// Attaches an automorphism of `L` of order dividing `p` that lies over
    /// the identity of `Q` and preserves `Ghat`.
    pub fn with_sigma(mut self, sigma: Vec<usize>, p: u32) -> Result<ParamTarget> {
        if !crate::field::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if !self.l.is_automorphism(&sigma) {
            return Err(Error::InvalidSigmaData("sigma is not an automorphism of L".into()));
        }
        for x in self.l.elements() {
            if self.proj(sigma[x]) != self.proj(x) {
                return Err(Error::InvalidSigmaData("sigma does not lie over Q".into()));
            }
            let mut y = x;
            for _ in 0..p {
                y = sigma[y];
            }
            if y != x {
                return Err(Error::SigmaOrder);
            }
        }
        self.sigma = Some((sigma, p));
        Ok(self)
    }

    pub fn ghat(&self) -> &FiniteGroup {
        &self.ghat
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.q
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn l(&self) -> &FiniteGroup {
        &self.l
    }

    #[inline]
    pub fn proj(&self, x: usize) -> usize {
        x / self.ghat.order()
    }

    /// `n -> (n, 1)`
    #[inline]
    pub fn embed(&self, n: usize) -> usize {
        self.q.identity() * self.ghat.order() + n
    }

    pub fn pair(&self, n: usize, q: usize) -> usize {
        q * self.ghat.order() + n
    }

    /// Elements of `Ghat` inside `L`.
    pub fn ghat_elements(&self) -> Vec<usize> {
        self.ghat.elements().map(|n| self.embed(n)).collect()
    }

    pub fn ghat_generators(&self) -> Vec<usize> {
        self.ghat.generators().iter().map(|&n| self.embed(n)).collect()
    }

    pub fn sigma(&self) -> Option<(&[usize], u32)> {
        self.sigma.as_ref().map(|(s, p)| (s.as_slice(), *p))
    }
}

/// A finite group `Gamma` with a surjection onto `Q`.
#[derive(Clone, Debug)]
pub struct SourceGroup {
    gamma: FiniteGroup,
    to_q: Vec<usize>,
}

impl SourceGroup {
    pub fn new(gamma: &FiniteGroup, q: &FiniteGroup, to_q: Vec<usize>) -> Result<SourceGroup> {
        check_size(gamma.order())?;
        if to_q.len() != gamma.order() || to_q.iter().any(|&x| x >= q.order()) {
            return Err(Error::InvalidGroup("surjection has the wrong shape".into()));
        }
        for a in gamma.elements() {
            for &s in gamma.generators() {
                if to_q[gamma.mul(a, s)] != q.mul(to_q[a], to_q[s]) {
                    return Err(Error::InvalidGroup("map to Q is not a homomorphism".into()));
                }
            }
        }
        let image: BTreeSet<usize> = to_q.iter().copied().collect();
        if image.len() != q.order() {
            return Err(Error::InvalidGroup("map to Q is not surjective".into()));
        }
        Ok(SourceGroup {
            gamma: gamma.clone(),
            to_q,
        })
    }

    /// `Gamma` mapping to the trivial group.
    pub fn unramified(gamma: &FiniteGroup) -> SourceGroup {
        SourceGroup {
            gamma: gamma.clone(),
            to_q: vec![0; gamma.order()],
        }
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn to_q(&self, g: usize) -> usize {
        self.to_q[g]
    }
}

/// A Ghat-conjugacy class of over-`Q` homomorphisms, stored by its
/// canonical member: the lexicographically least tuple of generator images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepPoint {
    /// Images of `gamma.generators()`.
    pub generator_images: Vec<usize>,
    /// Image of every element of `Gamma`.
    pub images: Vec<usize>,
}

impl RepPoint {
    #[inline]
    pub fn at(&self, g: usize) -> usize {
        self.images[g]
    }
}

/// Extends generator images to a homomorphism, if consistent.
pub fn extend_hom(gamma: &FiniteGroup, l: &FiniteGroup, gen_images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; gamma.order()];
    map[gamma.identity()] = l.identity();
    let mut queue = VecDeque::from([gamma.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gamma.generators().iter().zip(gen_images) {
            let y = gamma.mul(x, s);
            let v = l.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

fn conjugate_tuple(t: &ParamTarget, n: usize, tuple: &[usize]) -> Vec<usize> {
    tuple.iter().map(|&g| t.l.conjugate(n, g)).collect()
}

/// The least conjugate of a tuple of elements of `L` under `Ghat`.
pub fn canonical_tuple(t: &ParamTarget, tuple: &[usize]) -> Vec<usize> {
    t.ghat_elements()
        .into_iter()
        .map(|n| conjugate_tuple(t, n, tuple))
        .min()
        .expect("Ghat is nonempty")
}

/// Every over-`Q` homomorphism `Gamma -> L`, as full element maps.
pub fn all_homs(src: &SourceGroup, t: &ParamTarget) -> Result<Vec<Vec<usize>>> {
    check_size(src.gamma.order())?;
    check_size(t.l.order())?;
    let gens = src.gamma.generators();
    let nn = t.ghat.order();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = gens
            .iter()
            .zip(&choice)
            .map(|(&s, &c)| t.pair(c, src.to_q[s]))
            .collect();
        if let Some(map) = extend_hom(&src.gamma, &t.l, &images) {
            if src.gamma.elements().all(|g| t.proj(map[g]) == src.to_q[g]) {
                out.push(map);
            }
        }
        // odometer over Ghat^{gens}
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < nn {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The point of the representation stack through a homomorphism.
pub fn point_of(src: &SourceGroup, t: &ParamTarget, map: &[usize]) -> RepPoint {
    let gens: Vec<usize> = src.gamma.generators().iter().map(|&s| map[s]).collect();
    let canon = canonical_tuple(t, &gens);
    let images = extend_hom(&src.gamma, &t.l, &canon).expect("conjugate of a homomorphism");
    RepPoint {
        generator_images: canon,
        images,
    }
}

/// Ghat-conjugacy classes of over-`Q` homomorphisms `Gamma -> L`, sorted.
pub fn rep_stack(src: &SourceGroup, t: &ParamTarget) -> Result<Vec<RepPoint>> {
    let homs = all_homs(src, t)?;
    let points: BTreeSet<RepPoint> = homs.iter().map(|m| point_of(src, t, m)).collect();
    Ok(points.into_iter().collect())
}

/// All members of the Ghat-orbit of a point, as full maps.
pub fn orbit_members(t: &ParamTarget, point: &RepPoint) -> Vec<Vec<usize>> {
    let members: BTreeSet<Vec<usize>> = t
        .ghat_elements()
        .into_iter()
        .map(|n| conjugate_tuple(t, n, &point.images))
        .collect();
    members.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stacks() {
        let c2 = FiniteGroup::cyclic(2);
        let t = ParamTarget::split(&c2).unwrap();
        assert_eq!(rep_stack(&SourceGroup::unramified(&c2), &t).unwrap().len(), 2);

        let s3 = FiniteGroup::symmetric(3);
        let t = ParamTarget::split(&s3).unwrap();
        assert_eq!(rep_stack(&SourceGroup::unramified(&s3), &t).unwrap().len(), 3);

        // Ghat = 1, Q = Gamma: only the canonical section
        let one = FiniteGroup::cyclic(1);
        let t = ParamTarget::new(&one, &s3, vec![vec![0]; 6]).unwrap();
        let src = SourceGroup::new(&s3, &s3, s3.elements().collect()).unwrap();
        assert_eq!(rep_stack(&src, &t).unwrap().len(), 1);
    }

    #[test]
    fn base_change_target_has_sigma() {
        let c2 = FiniteGroup::cyclic(2);
        let t = ParamTarget::base_change(&c2, 3).unwrap();
        assert_eq!(t.l().order(), 24);
        let (s, p) = t.sigma().unwrap();
        assert_eq!(p, 3);
        assert!(t.l().elements().any(|x| s[x] != x));
    }

    #[test]
    fn order_cap() {
        let s4 = FiniteGroup::symmetric(4);
        let c3 = FiniteGroup::cyclic(3);
        assert!(matches!(
            ParamTarget::direct(&s4, &c3),
            Err(Error::TooLarge { size: 72, .. })
        ));
    }
}
