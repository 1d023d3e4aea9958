//! Littelmann paths with exact rational breakpoints.
//!
//! A path is a list of segments `(direction, length)`; it moves linearly
//! along `direction` for `length` units of time, with lengths summing to 1.
//! Root operators reflect a time window of the path in a simple root, which
//! only touches the directions inside the window.
//!
//! `B(λ)` is enumerated by reverse search: every path other than the
//! straight line has a canonical parent `e_i(π)` for the least `i` with
//! `e_i(π)` defined, so the crystal graph contains a spanning tree that can
//! be walked depth-first without storing visited paths.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::weight::{Prime, Weight};

/// Default cap on the number of paths visited in one enumeration.
pub const DEFAULT_PATH_CAP: usize = 100_000;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub direction: Weight,
    pub length: Rational,
}

/// A path in `B(λ)` in normalized form: positive lengths, no two consecutive
/// segments with the same direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LsPath {
    shape: Weight,
    segments: Vec<Segment>,
}

impl LsPath {
    /// The straight line `t ↦ tλ`, highest element of `B(λ)`.
    pub fn straight(datum: &RootDatum, lambda: &Weight) -> Result<LsPath> {
        datum.check_dominant(lambda)?;
        Ok(LsPath { shape: *lambda, segments: vec![Segment { direction: *lambda, length: Rational::one() }] })
    }

    pub fn shape(&self) -> &Weight {
        &self.shape
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `π(1)`; integral for every path in `B(λ)`.
    pub fn endpoint(&self) -> Weight {
        let n = self.shape.rank();
        let mut out = Weight::zero(n);
        for i in 0..n {
            let s: Rational = self.segments.iter().map(|s| s.length * i64::from(s.direction[i])).sum();
            assert!(s.is_integer(), "non-integral endpoint");
            out.set(i, *s.numer() as i32);
        }
        out
    }

    /// `⟨π(t), α_i^∨⟩` at the breakpoints `t_0 = 0, …, t_n = 1`.
    pub fn heights(&self, i: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut h = Rational::zero();
        out.push(h);
        for s in &self.segments {
            h += s.length * i64::from(s.direction[i]);
            out.push(h);
        }
        out
    }

    /// `min_t ⟨π(t), α_i^∨⟩`; the function is linear between breakpoints.
    pub fn min_height(&self, i: usize) -> Rational {
        let mut h = Rational::zero();
        let mut m = h;
        for s in &self.segments {
            h += s.length * i64::from(s.direction[i]);
            if h < m {
                m = h;
            }
        }
        m
    }

    /// Whether `shift + π(t)` stays dominant for all `t`.
    pub fn is_dominant_shifted(&self, shift: &Weight) -> bool {
        (0..self.shape.rank()).all(|i| self.min_height(i) + i64::from(shift[i]) >= Rational::zero())
    }

    /// Lowering operator `f_i`; `None` when undefined.
    pub fn f(&self, datum: &RootDatum, i: usize) -> Option<LsPath> {
        let h = self.heights(i);
        let m = *h.iter().min().unwrap();
        if *h.last().unwrap() - m < Rational::one() {
            return None;
        }
        let k0 = h.iter().rposition(|x| *x == m).unwrap();
        let target = m + 1;
        let starts = self.start_times();
        let t0 = starts[k0];
        // first time after t0 where the height reaches m + 1
        let k = (k0..self.segments.len()).find(|&k| h[k + 1] >= target).unwrap();
        let slope = i64::from(self.segments[k].direction[i]);
        let t1 = starts[k] + (target - h[k]) / slope;
        Some(self.reflect_window(datum, i, t0, t1))
    }

    /// Raising operator `e_i`; `None` when undefined.
    pub fn e(&self, datum: &RootDatum, i: usize) -> Option<LsPath> {
        let h = self.heights(i);
        let m = *h.iter().min().unwrap();
        if m > -Rational::one() {
            return None;
        }
        let k1 = h.iter().position(|x| *x == m).unwrap();
        let target = m + 1;
        let starts = self.start_times();
        let t1 = starts[k1];
        // last time before t1 where the height equals m + 1
        let k = (0..k1).rev().find(|&k| h[k] >= target).unwrap();
        let slope = i64::from(self.segments[k].direction[i]);
        let t0 = starts[k] + (target - h[k]) / slope;
        Some(self.reflect_window(datum, i, t0, t1))
    }

    fn start_times(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut t = Rational::zero();
        out.push(t);
        for s in &self.segments {
            t += s.length;
            out.push(t);
        }
        out
    }

    /// Applies `s_i` to the directions inside `[t0, t1]`.
    fn reflect_window(&self, datum: &RootDatum, i: usize, t0: Rational, t1: Rational) -> LsPath {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len() + 2);
        let mut push = |direction: Weight, length: Rational| {
            if length.is_zero() {
                return;
            }
            match out.last_mut() {
                Some(last) if last.direction == direction => last.length += length,
                _ => out.push(Segment { direction, length }),
            }
        };
        let mut start = Rational::zero();
        for s in &self.segments {
            let end = start + s.length;
            let lo = start.max(t0).min(end);
            let hi = end.min(t1).max(lo);
            push(s.direction, lo - start);
            push(datum.reflect(i, &s.direction), hi - lo);
            push(s.direction, end - hi);
            start = end;
        }
        LsPath { shape: self.shape, segments: out }
    }

    /// The least `i` with `e_i(π)` defined, i.e. with minimum height `≤ −1`.
    fn parent_index(&self) -> Option<usize> {
        (0..self.shape.rank()).find(|&i| self.min_height(i) <= -Rational::one())
    }
}

/// Visits every path of `B(λ)` once, with its endpoint.
///
/// Returns the number of paths; fails once more than `cap` paths are seen.
pub fn for_each_path<F>(datum: &RootDatum, lambda: &Weight, cap: usize, mut visit: F) -> Result<usize>
where
    F: FnMut(&LsPath, &Weight),
{
    let root = LsPath::straight(datum, lambda)?;
    let simple_roots = datum.simple_roots();
    let mut stack = vec![(root, *lambda)];
    let mut count = 0usize;
    while let Some((path, end)) = stack.pop() {
        count += 1;
        if count > cap {
            return Err(Error::PathCapExceeded { cap });
        }
        visit(&path, &end);
        for i in 0..datum.rank() {
            if let Some(child) = path.f(datum, i) {
                if child.parent_index() == Some(i) {
                    stack.push((child, end - simple_roots[i]));
                }
            }
        }
    }
    Ok(count)
}

/// All of `B(λ)`, sorted.
pub fn generate_path_model(datum: &RootDatum, lambda: &Weight, cap: usize) -> Result<Vec<LsPath>> {
    let mut out = Vec::new();
    for_each_path(datum, lambda, cap, |p, _| out.push(p.clone()))?;
    out.sort();
    Ok(out)
}

/// Breadth-first closure of the straight path under all `f_i` with explicit
/// deduplication. Slower than [`generate_path_model`]; kept as a cross-check
/// of the reverse-search enumeration.
pub fn generate_path_model_by_closure(datum: &RootDatum, lambda: &Weight, cap: usize) -> Result<Vec<LsPath>> {
    let root = LsPath::straight(datum, lambda)?;
    let mut seen = BTreeSet::from([root.clone()]);
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for path in &frontier {
            for i in 0..datum.rank() {
                if let Some(child) = path.f(datum, i) {
                    if !seen.contains(&child) {
                        if seen.len() >= cap {
                            return Err(Error::PathCapExceeded { cap });
                        }
                        seen.insert(child.clone());
                        next.push(child);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Summary of one pass over `B(λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCensus {
    /// `|B(λ)|`.
    pub size: u64,
    /// Endpoint multiset.
    pub endpoints: BTreeMap<Weight, u64>,
    /// `μ ↦ #{π : π is (p−1)ρ-dominant and π(1) = pμ}`, for dominant `μ`.
    pub dominant_counts: BTreeMap<Weight, u64>,
}

/// Enumerates `B(λ)` once, collecting endpoints and `(p−1)ρ`-dominant counts.
pub fn path_census(datum: &RootDatum, p: Prime, lambda: &Weight, cap: usize) -> Result<PathCensus> {
    let shift = datum.rho() * (p.get() as i32 - 1);
    let mut census = PathCensus::default();
    let size = for_each_path(datum, lambda, cap, |path, end| {
        *census.endpoints.entry(*end).or_default() += 1;
        if let Some(mu) = end.divide_exact(p.as_i64()) {
            if mu.is_dominant() && path.is_dominant_shifted(&shift) {
                *census.dominant_counts.entry(mu).or_default() += 1;
            }
        }
    })?;
    census.size = size as u64;
    Ok(census)
}

/// `#{π ∈ B(λ) : π is (p−1)ρ-dominant and π(1) = pμ}`.
pub fn count_dominant_paths(datum: &RootDatum, p: Prime, lambda: &Weight, mu: &Weight, cap: usize) -> Result<u64> {
    datum.check_dominant(mu)?;
    let census = path_census(datum, p, lambda, cap)?;
    Ok(census.dominant_counts.get(mu).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::weyl_character;
    use num_bigint::BigInt;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn w(c: &[i32]) -> Weight {
        Weight::from_slice(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn straight_paths() {
        let a1 = datum("A1");
        let s = LsPath::straight(&a1, &w(&[2])).unwrap();
        assert_eq!(s.segments(), &[Segment { direction: w(&[2]), length: r(1, 1) }]);
        assert_eq!(s.endpoint(), w(&[2]));
        let g2 = datum("G2");
        assert_eq!(LsPath::straight(&g2, &g2.rho()).unwrap().endpoint(), g2.rho());
        assert!(LsPath::straight(&g2, &w(&[1, -1])).is_err());
    }

    #[test]
    fn rank_one_lowering() {
        let a1 = datum("A1");
        let s = LsPath::straight(&a1, &w(&[2])).unwrap();
        let f1 = s.f(&a1, 0).unwrap();
        // dips to -1 then comes back to 0
        assert_eq!(
            f1.segments(),
            &[Segment { direction: w(&[-2]), length: r(1, 2) }, Segment { direction: w(&[2]), length: r(1, 2) }]
        );
        assert_eq!(f1.min_height(0), r(-1, 1));
        assert_eq!(f1.endpoint(), w(&[0]));
        let f2 = f1.f(&a1, 0).unwrap();
        assert_eq!(f2.endpoint(), w(&[-2]));
        assert!(f2.f(&a1, 0).is_none());
        assert_eq!(f2.e(&a1, 0).unwrap(), f1);
        assert_eq!(f1.e(&a1, 0).unwrap(), s);
        assert!(s.e(&a1, 0).is_none());
    }

    #[test]
    fn shifted_dominance() {
        let a1 = datum("A1");
        let one = w(&[1]);
        let s = LsPath::straight(&a1, &w(&[2])).unwrap();
        let f1 = s.f(&a1, 0).unwrap();
        let f2 = f1.f(&a1, 0).unwrap();
        assert!(s.is_dominant_shifted(&one));
        assert!(f1.is_dominant_shifted(&one));
        assert!(!f2.is_dominant_shifted(&one));
    }

    #[test]
    fn small_models() {
        let a1 = datum("A1");
        let b = generate_path_model(&a1, &w(&[2]), DEFAULT_PATH_CAP).unwrap();
        let ends: BTreeSet<Weight> = b.iter().map(|p| p.endpoint()).collect();
        assert_eq!(ends, BTreeSet::from([w(&[2]), w(&[0]), w(&[-2])]));
        let a2 = datum("A2");
        assert_eq!(generate_path_model(&a2, &w(&[1, 0]), DEFAULT_PATH_CAP).unwrap().len(), 3);
        for label in ["A1", "B2", "G2"] {
            let d = datum(label);
            assert_eq!(generate_path_model(&d, &d.zero_weight(), 10).unwrap().len(), 1);
        }
    }

    #[test]
    fn path_model_realizes_character() {
        for (label, lambdas) in [("A2", vec![vec![2, 1], vec![1, 1]]), ("B2", vec![vec![1, 1], vec![0, 3]]), ("G2", vec![vec![1, 1], vec![2, 0]])] {
            let d = datum(label);
            for l in lambdas {
                let l = w(&l);
                let census = path_census(&d, p(2), &l, DEFAULT_PATH_CAP).unwrap();
                let ch = weyl_character(&d, &l).unwrap();
                assert_eq!(BigInt::from(census.size), ch.dimension(), "{label} {l}");
                let from_paths: BTreeMap<Weight, BigInt> =
                    census.endpoints.iter().map(|(w, c)| (*w, BigInt::from(*c))).collect();
                assert_eq!(&from_paths, ch.entries(), "{label} {l}");
            }
        }
    }

    #[test]
    fn reverse_search_agrees_with_closure() {
        for (label, l) in [("A2", vec![2, 1]), ("B2", vec![1, 2]), ("G2", vec![1, 1])] {
            let d = datum(label);
            let l = w(&l);
            assert_eq!(
                generate_path_model(&d, &l, DEFAULT_PATH_CAP).unwrap(),
                generate_path_model_by_closure(&d, &l, DEFAULT_PATH_CAP).unwrap(),
                "{label}"
            );
        }
    }

    #[test]
    fn raising_inverts_lowering() {
        let g2 = datum("G2");
        for path in generate_path_model(&g2, &w(&[2, 1]), DEFAULT_PATH_CAP).unwrap() {
            for i in 0..2 {
                if let Some(q) = path.f(&g2, i) {
                    assert_eq!(q.e(&g2, i).as_ref(), Some(&path));
                }
                if let Some(q) = path.e(&g2, i) {
                    assert_eq!(q.f(&g2, i).as_ref(), Some(&path));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g2 = datum("G2");
        assert_eq!(generate_path_model(&g2, &g2.rho(), 63), Err(Error::PathCapExceeded { cap: 63 }));
        assert_eq!(generate_path_model(&g2, &g2.rho(), 64).unwrap().len(), 64);
    }

    #[test]
    fn dominant_counts() {
        let a1 = datum("A1");
        assert_eq!(count_dominant_paths(&a1, p(2), &w(&[2]), &w(&[1]), 100).unwrap(), 1);
        assert_eq!(count_dominant_paths(&a1, p(2), &w(&[2]), &w(&[0]), 100).unwrap(), 1);
        let g2 = datum("G2");
        assert_eq!(count_dominant_paths(&g2, p(2), &g2.rho(), &w(&[1, 0]), 100).unwrap(), 2);
        assert_eq!(count_dominant_paths(&g2, p(2), &g2.rho(), &w(&[0, 0]), 100).unwrap(), 2);
    }

    #[test]
    fn breakpoint_denominators_are_bounded() {
        let b2 = datum("B2");
        let l = w(&[2, 3]);
        let bound = b2.positive_coroots().iter().map(|c| c.pair(&l)).max().unwrap();
        for path in generate_path_model(&b2, &l, DEFAULT_PATH_CAP).unwrap() {
            let mut t = Rational::zero();
            for s in path.segments() {
                t += s.length;
                assert!(*t.denom() <= bound, "{t}");
            }
        }
    }
}
