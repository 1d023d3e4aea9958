//! Good-filtration multiplicities of Frobenius contractions.
//!
//! The multiplicity `(∇(λ)^φ : ∇(μ))` is computed four ways:
//!
//! 1. peel Weyl characters off the contracted character of ∇(λ);
//! 2. the alternating sum `Σ_w (−1)^{ℓ(w)} dim ∇(λ)_{p(w∙μ)}`;
//! 3. the coefficient of `∇((p−1)ρ + pμ)` in `St ⊗ ∇(λ)`;
//! 4. the number of `(p−1)ρ`-dominant paths in `B(λ)` ending at `pμ`.
//!
//! This module holds the first three and the agreement harness that compares
//! them against the fourth from [`crate::lspaths`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::charring::{decompose_into_hat_nabla, hat_nabla_character, CharacterMemo, DecompositionResult, WeylCharacters};
use crate::error::{Error, Result};
use crate::lspaths::path_census;
use crate::rootdata::{CartanType, Family, RootDatum};
use crate::weight::{Prime, Weight};
use crate::weyl::{dot_action, WeylElement};

/// `μ ↦ (∇(λ)^φ : ∇(μ))` for one `(p, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub cartan_type: CartanType,
    pub p: Prime,
    pub lambda: Weight,
    pub rows: BTreeMap<Weight, BigInt>,
    /// Dimension of the contracted character, for bookkeeping checks.
    pub contracted_dimension: BigInt,
}

impl MultiplicityTable {
    pub fn get(&self, mu: &Weight) -> BigInt {
        self.rows.get(mu).cloned().unwrap_or_default()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.values().all(|m| !m.is_negative())
    }
}

/// Decomposes `ch ∇(λ)^φ` into Weyl characters.
pub fn contraction_multiplicities<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    lambda: &Weight,
) -> Result<MultiplicityTable> {
    contraction_multiplicities_power(chars, p, 1, lambda)
}

/// Same for the `r`-fold contraction `∇(λ)^{φ^r}`.
pub fn contraction_multiplicities_power<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    r: u32,
    lambda: &Weight,
) -> Result<MultiplicityTable> {
    let datum = chars.datum();
    datum.check_dominant(lambda)?;
    let contracted = chars.weyl(lambda)?.contract_power(p, r);
    let decomposition = chars.decompose(&contracted)?;
    debug_assert!(decomposition.is_exact());
    Ok(MultiplicityTable {
        cartan_type: datum.cartan_type(),
        p,
        lambda: *lambda,
        rows: decomposition.multiplicities,
        contracted_dimension: contracted.dimension(),
    })
}

/// `Σ_{w∈W} (−1)^{ℓ(w)} dim ∇(λ)_{p(w∙μ)}`.
///
/// The sum runs over all of W: for dominant `μ`, `μ + ρ` is regular so the
/// dot stabilizer of `μ` is trivial and no coset reduction is needed.
pub fn signed_sum_multiplicity<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    group: &[WeylElement],
    p: Prime,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BigInt> {
    let datum = chars.datum();
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    assert!((*mu + datum.rho()).is_regular_dominant());
    let ch = chars.weyl(lambda)?;
    let mut acc = BigInt::zero();
    for w in group {
        let nu = dot_action(datum, w, mu).scaled(p.as_i64());
        if let Some(m) = ch.get(&nu) {
            if w.sign() > 0 {
                acc += m;
            } else {
                acc -= m;
            }
        }
    }
    Ok(acc)
}

/// Decomposition of `St ⊗ ∇(λ)` into Weyl characters.
pub fn steinberg_tensor_decomposition<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    lambda: &Weight,
) -> Result<DecompositionResult> {
    chars.datum().check_dominant(lambda)?;
    let st = chars.steinberg(p, 1)?;
    let nabla = chars.weyl(lambda)?;
    chars.decompose_dominant(chars.tensor_dominant(&st, &nabla)?)
}

/// Reads `μ ↦ (St ⊗ ∇(λ) : ∇((p−1)ρ + pμ))` off a Steinberg-tensor decomposition.
pub fn steinberg_rows(datum: &RootDatum, p: Prime, decomposition: &DecompositionResult) -> BTreeMap<Weight, BigInt> {
    let shift = datum.rho() * (p.get() as i32 - 1);
    decomposition
        .multiplicities
        .iter()
        .filter_map(|(nu, m)| {
            let mu = (*nu - shift).divide_exact(p.as_i64())?;
            mu.is_dominant().then(|| (mu, m.clone()))
        })
        .collect()
}

/// `(St ⊗ ∇(λ) : ∇((p−1)ρ + pμ))`.
pub fn steinberg_tensor_multiplicity<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BigInt> {
    let datum = chars.datum();
    datum.check_dominant(mu)?;
    let target = datum.rho() * (p.get() as i32 - 1) + mu.scaled(p.as_i64());
    Ok(steinberg_tensor_decomposition(chars, p, lambda)?.multiplicity(&target))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalMuCheck {
    /// A maximal dominant `μ` with `∇(λ)_{pμ} ≠ 0`.
    pub witness: Weight,
    pub tensor_multiplicity: BigInt,
    pub weight_multiplicity: BigInt,
    /// The identity held for every maximal `μ`, not only the witness.
    pub holds: bool,
}

/// For maximal `μ`, the Steinberg-tensor multiplicity equals `dim ∇(λ)_{pμ}`.
pub fn maximal_mu_check<M: CharacterMemo>(chars: &WeylCharacters<'_, M>, p: Prime, lambda: &Weight) -> Result<MaximalMuCheck> {
    let datum = chars.datum();
    datum.check_dominant(lambda)?;
    let contracted = chars.weyl(lambda)?.frobenius_contract(p);
    let dominant: Vec<Weight> = contracted.iter().map(|(w, _)| *w).filter(|w| w.is_dominant()).collect();
    let mut maximal: Vec<Weight> = dominant
        .iter()
        .filter(|mu| !dominant.iter().any(|nu| nu != *mu && datum.dominates(nu, mu)))
        .copied()
        .collect();
    if maximal.is_empty() {
        return Err(Error::EmptyContraction);
    }
    maximal.sort_by(|a, b| datum.height_scaled(b).cmp(&datum.height_scaled(a)).then(b.cmp(a)));
    let rows = steinberg_rows(datum, p, &steinberg_tensor_decomposition(chars, p, lambda)?);
    let mut holds = true;
    for mu in &maximal {
        let lhs = rows.get(mu).cloned().unwrap_or_default();
        holds &= lhs == contracted.multiplicity(mu);
    }
    let witness = maximal[0];
    Ok(MaximalMuCheck {
        witness,
        tensor_multiplicity: rows.get(&witness).cloned().unwrap_or_default(),
        weight_multiplicity: contracted.multiplicity(&witness),
        holds,
    })
}

/// `(Steinberg-tensor coefficient, contraction multiplicity)`; equal when the
/// adjunction holds at the level of multiplicities.
pub fn adjunction_dimension_check<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    p: Prime,
    lambda: &Weight,
    mu: &Weight,
) -> Result<(BigInt, BigInt)> {
    let lhs = steinberg_tensor_multiplicity(chars, p, lambda, mu)?;
    let rhs = contraction_multiplicities(chars, p, lambda)?.get(mu);
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub lambda: Weight,
    pub mu: Weight,
    /// `⟨μ + ρ, α₀^∨⟩`, which should be `< p`.
    pub pairing: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub cartan_type: CartanType,
    pub p: Prime,
    /// Number of `(λ, μ)` pairs examined.
    pub cases: usize,
    pub violations: Vec<BoundViolation>,
}

impl BoundReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every restricted `λ` and dominant `μ` with `pμ` a weight of ∇(λ),
/// checks `⟨μ + ρ, α₀^∨⟩ < p`. Requires `p ≥ 2(h − 1)`.
pub fn semisimplicity_bound_report<M: CharacterMemo>(chars: &WeylCharacters<'_, M>, p: Prime) -> Result<BoundReport> {
    let datum = chars.datum();
    let h = datum.coxeter_number();
    if p.as_i64() < 2 * (h - 1) {
        return Err(Error::Precondition(alloc::format!("p = {p} is below 2(h-1) = {}", 2 * (h - 1))));
    }
    let n = datum.rank();
    let top = datum.highest_coroot();
    let rho = datum.rho();
    let mut cases = 0;
    let mut violations = Vec::new();
    let mut coords = alloc::vec![0i32; n];
    loop {
        let lambda = Weight::new(&coords)?;
        for (nu, _) in chars.weyl(&lambda)?.iter() {
            let Some(mu) = nu.divide_exact(p.as_i64()) else { continue };
            if !mu.is_dominant() {
                continue;
            }
            cases += 1;
            let pairing = top.pair(&(mu + rho));
            if pairing >= p.as_i64() {
                violations.push(BoundViolation { lambda, mu, pairing });
            }
        }
        // odometer over [0, p−1]^n
        let mut i = 0;
        loop {
            if i == n {
                return Ok(BoundReport { cartan_type: datum.cartan_type(), p, cases, violations });
            }
            coords[i] += 1;
            if coords[i] < p.get() as i32 {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of the G₂ weight check for `λ = (p−3)ϖ_α + 2ϖ_β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub p: Prime,
    pub lambda: Weight,
    /// `pϖ_α`.
    pub target: Weight,
    /// `λ − pϖ_α`.
    pub gap: Weight,
    /// Index into `positive_roots()` when the gap is a positive root.
    pub gap_root_index: Option<usize>,
    /// Index of the simple root equal to the gap, if any.
    pub gap_simple_index: Option<usize>,
    pub multiplicity: BigInt,
    /// No other dominant `p`-divisible weight of ∇(λ) lies above `pϖ_α`.
    pub maximal: bool,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.multiplicity.is_positive() && self.target.is_dominant() && self.maximal
    }
}

/// In type G₂ with `p ≥ 3`: `pϖ_α` is a weight of ∇((p−3)ϖ_α + 2ϖ_β) and is
/// maximal among its dominant `p`-divisible weights.
pub fn weight_membership_check<M: CharacterMemo>(chars: &WeylCharacters<'_, M>, p: Prime) -> Result<MembershipReport> {
    let datum = chars.datum();
    if datum.cartan_type().family() != Family::G {
        return Err(Error::Precondition("the weight check is specific to type G2".into()));
    }
    if p.get() < 3 {
        return Err(Error::Precondition("the weight check needs p >= 3".into()));
    }
    let lambda = Weight::from_slice(&[p.get() as i32 - 3, 2]);
    let target = Weight::from_slice(&[p.get() as i32, 0]);
    let gap = lambda - target;
    let ch = chars.weyl(&lambda)?;
    let divisible: Vec<Weight> = ch
        .iter()
        .map(|(w, _)| *w)
        .filter(|w| w.is_dominant() && w.is_divisible_by(p.as_i64()))
        .collect();
    let maximal = !divisible.iter().any(|nu| *nu != target && datum.dominates(nu, &target));
    Ok(MembershipReport {
        p,
        lambda,
        target,
        gap,
        gap_root_index: datum.positive_roots().iter().position(|r| *r == gap),
        gap_simple_index: (0..datum.rank()).find(|&i| datum.simple_root(i) == gap),
        multiplicity: ch.multiplicity(&target),
        maximal,
    })
}

/// Contracts ∇̂_r(λ) by `φ^s` and decomposes into the ∇̂_{r−s} basis.
pub fn hat_nabla_contraction_check(datum: &RootDatum, p: Prime, r: u32, s: u32, lambda: &Weight) -> Result<DecompositionResult> {
    if !(0 < s && s < r) {
        return Err(Error::Precondition(alloc::format!("need 0 < s < r, got r = {r}, s = {s}")));
    }
    let contracted = hat_nabla_character(datum, p, r, lambda)?.contract_power(p, s);
    decompose_into_hat_nabla(datum, &contracted, p, r - s)
}

/// The four evaluations of one multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementRow {
    pub mu: Weight,
    pub decomposition: BigInt,
    pub signed_sum: BigInt,
    pub steinberg: BigInt,
    pub paths: BigInt,
}

impl AgreementRow {
    pub fn agrees(&self) -> bool {
        self.decomposition == self.signed_sum && self.signed_sum == self.steinberg && self.steinberg == self.paths
    }
}

/// Every check of the multiplicity formulas for one `(p, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAgreement {
    pub lambda: Weight,
    /// One row per `μ` in the union of the supports of the four evaluations.
    pub rows: Vec<AgreementRow>,
    /// Contraction table is non-negative.
    pub positive: bool,
    /// `Σ_μ mult(μ)·dim ∇(μ)` equals the dimension of the contraction.
    pub dimension_balanced: bool,
    /// `|B(λ)| = dim ∇(λ)` and endpoints reproduce the weight multiset.
    pub path_model_sound: bool,
    pub path_model_size: u64,
}

impl LambdaAgreement {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(AgreementRow::agrees)
    }

    pub fn passed(&self) -> bool {
        self.all_agree() && self.positive && self.dimension_balanced && self.path_model_sound
    }
}

/// Runs the four evaluations for every relevant `μ`.
pub fn agreement_for_lambda<M: CharacterMemo>(
    chars: &WeylCharacters<'_, M>,
    group: &[WeylElement],
    p: Prime,
    lambda: &Weight,
    path_cap: usize,
) -> Result<LambdaAgreement> {
    let datum = chars.datum();
    let table = contraction_multiplicities(chars, p, lambda)?;
    let steinberg = steinberg_rows(datum, p, &steinberg_tensor_decomposition(chars, p, lambda)?);
    let census = path_census(datum, p, lambda, path_cap)?;

    let mut mus: BTreeSet<Weight> = table.rows.keys().copied().collect();
    mus.extend(steinberg.keys().copied());
    mus.extend(census.dominant_counts.keys().copied());

    let mut rows = Vec::with_capacity(mus.len());
    for mu in mus {
        rows.push(AgreementRow {
            mu,
            decomposition: table.get(&mu),
            signed_sum: signed_sum_multiplicity(chars, group, p, lambda, &mu)?,
            steinberg: steinberg.get(&mu).cloned().unwrap_or_default(),
            paths: census.dominant_counts.get(&mu).copied().unwrap_or(0).into(),
        });
    }

    let mut balance = BigInt::zero();
    for (mu, m) in &table.rows {
        balance += m * chars.weyl(mu)?.dimension();
    }
    let ch = chars.weyl(lambda)?;
    let path_model_sound = BigInt::from(census.size) == ch.dimension()
        && census.endpoints.len() == ch.len()
        && census.endpoints.iter().all(|(w, c)| ch.multiplicity(w) == BigInt::from(*c));

    Ok(LambdaAgreement {
        lambda: *lambda,
        positive: table.is_nonnegative(),
        dimension_balanced: balance == table.contracted_dimension,
        path_model_sound,
        path_model_size: census.size,
        rows,
    })
}
