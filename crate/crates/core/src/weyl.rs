//! Weyl group elements as integer matrices on weight coordinates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::weight::Weight;

/// Default cap on the order of an enumerated Weyl group (|W(E₆)|).
pub const DEFAULT_GROUP_LIMIT: usize = 51_840;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    /// Row-major action on fundamental-weight coordinates.
    action: Vec<i32>,
    length: usize,
    /// Reduced word; the element is `s_{word[0]} ⋯ s_{word[k-1]}`.
    word: Vec<u8>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut action = vec![0; rank * rank];
        for i in 0..rank {
            action[i * rank + i] = 1;
        }
        WeylElement { rank, action, length: 0, word: Vec::new() }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn matrix(&self) -> &[i32] {
        &self.action
    }

    pub fn sign(&self) -> i32 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Linear action `w(λ)`.
    pub fn apply(&self, lambda: &Weight) -> Weight {
        let n = self.rank;
        let mut out = Weight::zero(n);
        for i in 0..n {
            out.set(i, (0..n).map(|j| self.action[i * n + j] * lambda[j]).sum());
        }
        out
    }

    /// `s_i · self`.
    fn left_multiply(&self, datum: &RootDatum, i: usize) -> WeylElement {
        let n = self.rank;
        // (s_i M)[k][j] = M[k][j] − A[k][i] · M[i][j]
        let mut action = self.action.clone();
        for k in 0..n {
            let a = datum.cartan(k, i);
            if a != 0 {
                for j in 0..n {
                    action[k * n + j] -= a * self.action[i * n + j];
                }
            }
        }
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(i as u8);
        word.extend_from_slice(&self.word);
        WeylElement { rank: n, action, length: self.length + 1, word }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Vec<i32> {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.action[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        m[i * n + j] += a * other.action[k * n + j];
                    }
                }
            }
        }
        m
    }
}

/// `w ∙ λ = w(λ + ρ) − ρ`.
pub fn dot_action(datum: &RootDatum, w: &WeylElement, lambda: &Weight) -> Weight {
    let rho = datum.rho();
    w.apply(&(*lambda + rho)) - rho
}

/// All elements of W, each once, in order of increasing length.
///
/// Breadth-first closure under left multiplication by simple reflections,
/// deduplicated on the action matrix; the BFS level is the length.
pub fn weyl_elements(datum: &RootDatum, limit: usize) -> Result<Vec<WeylElement>> {
    let n = datum.rank();
    let mut seen: BTreeMap<Vec<i32>, ()> = BTreeMap::new();
    let id = WeylElement::identity(n);
    seen.insert(id.action.clone(), ());
    let mut out = vec![id];
    let mut start = 0;
    while start < out.len() {
        let end = out.len();
        for idx in start..end {
            for i in 0..n {
                let next = out[idx].left_multiply(datum, i);
                if seen.insert(next.action.clone(), ()).is_none() {
                    if out.len() >= limit {
                        return Err(Error::WeylGroupTooLarge { limit });
                    }
                    out.push(next);
                }
            }
        }
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        for (label, order, longest) in [("A1", 2, 1), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("A3", 24, 6), ("B3", 48, 9)] {
            let d = datum(label);
            let w = weyl_elements(&d, DEFAULT_GROUP_LIMIT).unwrap();
            assert_eq!(w.len(), order, "{label}");
            assert_eq!(w.iter().map(|e| e.length()).max(), Some(longest), "{label}");
            assert!(w[0].is_identity());
        }
    }

    #[test]
    fn limit_is_enforced() {
        let d = datum("B3");
        assert_eq!(weyl_elements(&d, 47), Err(Error::WeylGroupTooLarge { limit: 47 }));
    }

    #[test]
    fn length_counts_inverted_positive_roots() {
        for label in ["A2", "B2", "G2", "A3", "C3"] {
            let d = datum(label);
            for w in weyl_elements(&d, DEFAULT_GROUP_LIMIT).unwrap() {
                let inverted = d
                    .positive_roots()
                    .iter()
                    .map(|r| w.apply(r))
                    .filter(|r| d.height_scaled(r) < 0)
                    .count();
                assert_eq!(inverted, w.length(), "{label} {:?}", w.word());
            }
        }
    }

    #[test]
    fn word_reproduces_action() {
        let d = datum("G2");
        for w in weyl_elements(&d, DEFAULT_GROUP_LIMIT).unwrap() {
            let lambda = Weight::from_slice(&[3, 7]);
            let via_word = w.word().iter().rev().fold(lambda, |acc, &i| d.reflect(i as usize, &acc));
            assert_eq!(via_word, w.apply(&lambda));
        }
    }

    #[test]
    fn dot_action_examples() {
        let d = datum("A1");
        let group = weyl_elements(&d, 10).unwrap();
        let s = &group[1];
        assert_eq!(dot_action(&d, s, &Weight::from_slice(&[1])), Weight::from_slice(&[-3]));
        assert_eq!(dot_action(&d, s, &Weight::from_slice(&[-1])), Weight::from_slice(&[-1]));
        assert_eq!(dot_action(&d, &group[0], &Weight::from_slice(&[5])), Weight::from_slice(&[5]));
    }

    #[test]
    fn dot_action_is_a_group_action() {
        let d = datum("B2");
        let group = weyl_elements(&d, DEFAULT_GROUP_LIMIT).unwrap();
        let by_matrix: BTreeMap<Vec<i32>, &WeylElement> = group.iter().map(|w| (w.matrix().to_vec(), w)).collect();
        let lambda = Weight::from_slice(&[2, -5]);
        for x in &group {
            for y in &group {
                let xy = by_matrix[&x.compose(y)];
                assert_eq!(dot_action(&d, xy, &lambda), dot_action(&d, x, &dot_action(&d, y, &lambda)));
            }
        }
    }
}
