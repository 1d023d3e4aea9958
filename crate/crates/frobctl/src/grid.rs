//! Verification suites over grids of highest weights, run in parallel.
//!
//! Every runner returns its cases sorted by highest weight, so results do not
//! depend on the number of worker threads.

use frobenius_core::charring::{CharacterMemo, DecompositionResult};
use frobenius_core::filtration::{
    agreement_for_lambda, contraction_multiplicities, hat_nabla_contraction_check, steinberg_rows,
    steinberg_tensor_decomposition,
};
use frobenius_core::sl2oracle::{build_weyl_module, dual_rep, tensor_rep, theta_rank, verify_theorem_2_1};
use frobenius_core::{Error, FpRep, LambdaAgreement, Prime, Result, Weight, WeylCharacters, WeylElement};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// All weights with coordinates in `[lo, hi]`, lexicographically ascending.
pub fn weight_box(rank: usize, lo: i32, hi: i32) -> Vec<Weight> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut coords = vec![lo; rank];
    loop {
        out.push(Weight::from_slice(&coords));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if coords[i] < hi {
                coords[i] += 1;
                break;
            }
            coords[i] = lo;
        }
    }
}

/// Number of points in `[lo, hi]^rank`, saturating.
pub fn box_size(rank: usize, lo: i32, hi: i32) -> usize {
    let side = (hi as i64 - lo as i64 + 1).max(0) as usize;
    (0..rank).try_fold(1usize, |acc, _| acc.checked_mul(side)).unwrap_or(usize::MAX)
}

/// Maps in parallel, then reports the error of the lowest failing input.
fn par_try_map<T, U, F>(inputs: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Send + Sync,
{
    let results: Vec<Result<U>> = inputs.par_iter().map(f).collect();
    results.into_iter().collect()
}

/// Four-way agreement for every dominant `λ` with coordinates `≤ max_coord`.
pub fn agreement_grid<M: CharacterMemo + Sync>(
    chars: &WeylCharacters<'_, M>,
    group: &[WeylElement],
    p: Prime,
    max_coord: i32,
    path_cap: usize,
) -> Result<Vec<LambdaAgreement>> {
    let lambdas = weight_box(chars.datum().rank(), 0, max_coord);
    par_try_map(&lambdas, |lambda| agreement_for_lambda(chars, group, p, lambda, path_cap))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionCase {
    pub lambda: Weight,
    pub mu: Weight,
    /// `(St ⊗ ∇(λ) : ∇((p−1)ρ + pμ))`.
    pub steinberg: BigInt,
    /// `(∇(λ)^φ : ∇(μ))`.
    pub contraction: BigInt,
}

impl AdjunctionCase {
    pub fn holds(&self) -> bool {
        self.steinberg == self.contraction
    }
}

/// Both sides of the adjunction identity for every `μ` either side supports.
///
/// Equivalent to calling `adjunction_dimension_check` for each `μ`, but the
/// tensor decomposition is done once per `λ`.
pub fn adjunction_grid<M: CharacterMemo + Sync>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    max_coord: i32,
) -> Result<Vec<AdjunctionCase>> {
    let datum = chars.datum();
    let lambdas = weight_box(datum.rank(), 0, max_coord);
    let per_lambda = par_try_map(&lambdas, |lambda| {
        let table = contraction_multiplicities(chars, p, lambda)?;
        let st = steinberg_rows(datum, p, &steinberg_tensor_decomposition(chars, p, lambda)?);
        let mus: BTreeSet<Weight> = table.rows.keys().chain(st.keys()).copied().collect();
        Ok(mus
            .into_iter()
            .map(|mu| AdjunctionCase {
                lambda: *lambda,
                mu,
                steinberg: st.get(&mu).cloned().unwrap_or_default(),
                contraction: table.get(&mu),
            })
            .collect::<Vec<_>>())
    })?;
    Ok(per_lambda.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatNablaCase {
    pub lambda: Weight,
    /// `Err` when the contraction has no finite expansion in the target basis.
    pub outcome: core::result::Result<DecompositionResult, Error>,
}

impl HatNablaCase {
    pub fn holds(&self) -> bool {
        matches!(&self.outcome, Ok(d) if d.is_exact() && d.is_nonnegative())
    }
}

/// Contracts `∇̂_r(λ)` by `φ^s` for every `λ ∈ [lo, hi]^n`.
pub fn hat_nabla_grid<M: CharacterMemo + Sync>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    r: u32,
    s: u32,
    lo: i32,
    hi: i32,
) -> Result<Vec<HatNablaCase>> {
    let datum = chars.datum();
    let lambdas = weight_box(datum.rank(), lo, hi);
    par_try_map(&lambdas, |lambda| match hat_nabla_contraction_check(datum, p, r, s, lambda) {
        Err(e @ Error::NoFiniteDecomposition(_)) => Ok(HatNablaCase { lambda: *lambda, outcome: Err(e) }),
        other => other.map(|d| HatNablaCase { lambda: *lambda, outcome: Ok(d) }),
    })
}

/// A rank-one module tested against the Steinberg adjunction.
#[derive(Debug, Clone)]
pub struct OracleModule {
    pub label: String,
    pub rep: FpRep,
}

/// `Δ(n)` for `n ≤ max_n`, `Δ(a) ⊗ Δ(b)` for `a ≤ b`, `a + b ≤ max_sum`, and
/// the duals of all of them.
pub fn oracle_modules(p: Prime, max_n: u32, max_sum: u32) -> Result<Vec<OracleModule>> {
    let mut base = Vec::new();
    for n in 0..=max_n {
        base.push(OracleModule { label: format!("D({n})"), rep: build_weyl_module(p, n) });
    }
    for a in 0..=max_sum {
        for b in a..=max_sum - a {
            let rep = tensor_rep(&build_weyl_module(p, a), &build_weyl_module(p, b))?;
            base.push(OracleModule { label: format!("D({a})xD({b})"), rep });
        }
    }
    let duals: Vec<OracleModule> =
        base.iter().map(|m| OracleModule { label: format!("dual {}", m.label), rep: dual_rep(&m.rep) }).collect();
    base.extend(duals);
    Ok(base)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCase {
    pub p: Prime,
    pub label: String,
    pub holds: bool,
}

pub fn oracle_suite(primes: &[Prime], max_n: u32, max_sum: u32) -> Result<Vec<OracleCase>> {
    let mut work = Vec::new();
    for &p in primes {
        work.extend(oracle_modules(p, max_n, max_sum)?.into_iter().map(|m| (p, m)));
    }
    par_try_map(&work, |(p, m)| Ok(OracleCase { p: *p, label: m.label.clone(), holds: verify_theorem_2_1(&m.rep)? }))
}

/// `(p, rank, p²)` per prime.
pub fn theta_suite(primes: &[Prime]) -> Result<Vec<(Prime, usize, usize)>> {
    par_try_map(primes, |&p| {
        let q = p.get() as usize;
        Ok((p, theta_rank(p)?, q * q))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        let b = weight_box(2, -1, 1);
        assert_eq!(b.len(), 9);
        assert_eq!(box_size(2, -1, 1), 9);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b[0], Weight::from_slice(&[-1, -1]));
        assert!(weight_box(3, 1, 0).is_empty());
        assert_eq!(box_size(3, 1, 0), 0);
        assert_eq!(box_size(8, 0, 1_000_000), usize::MAX);
    }

    #[test]
    fn oracle_module_count() {
        let p = Prime::new(2).unwrap();
        // 3 Weyl modules, tensors (0,0),(0,1),(0,2),(1,1), then duals
        assert_eq!(oracle_modules(p, 2, 2).unwrap().len(), 2 * (3 + 4));
    }
}
