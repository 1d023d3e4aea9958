//! Sparse characters: formal integer combinations of weights.
//!
//! Weyl characters come from Freudenthal's recursion on dominant weights,
//! extended to full orbits. Everything else (contraction, twist, duality,
//! tensor products, decompositions) is exact integer bookkeeping on the
//! weight support.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::{CartanType, DotNormal, RootDatum};
use crate::weight::{Prime, Weight};

/// A virtual character: weight → multiplicity, zero entries never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    ty: CartanType,
    entries: BTreeMap<Weight, BigInt>,
}

impl Character {
    pub fn zero(ty: CartanType) -> Self {
        Character { ty, entries: BTreeMap::new() }
    }

    /// `e^λ`.
    pub fn monomial(ty: CartanType, lambda: Weight) -> Result<Self> {
        Self::from_pairs(ty, [(lambda, BigInt::one())])
    }

    /// Sums repeated weights and drops zeros.
    pub fn from_pairs<I, N>(ty: CartanType, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, N)>,
        N: Into<BigInt>,
    {
        let mut c = Character::zero(ty);
        for (w, m) in pairs {
            w.check_rank(ty.rank())?;
            c.add_term(w, m.into());
        }
        Ok(c)
    }

    pub(crate) fn from_map(ty: CartanType, mut entries: BTreeMap<Weight, BigInt>) -> Self {
        entries.retain(|_, v| !v.is_zero());
        Character { ty, entries }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: &Weight) -> Option<&BigInt> {
        self.entries.get(w)
    }

    /// Entries in lexicographic weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, BigInt> {
        &self.entries
    }

    /// Number of distinct weights in the support.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities (negative for some virtual characters).
    pub fn dimension(&self) -> BigInt {
        self.entries.values().sum()
    }

    fn add_term(&mut self, w: Weight, m: BigInt) {
        if m.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.entries.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Character) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::DatumMismatch { left: self.ty, right: other.ty });
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, m) in &other.entries {
            out.add_term(*w, m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, n: &BigInt) -> Character {
        if n.is_zero() {
            return Character::zero(self.ty);
        }
        let entries = self.entries.iter().map(|(w, m)| (*w, m * n)).collect();
        Character { ty: self.ty, entries }
    }

    /// Product in the character ring: convolution of weight multiplicities.
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        self.check_same(other)?;
        let mut out = Character::zero(self.ty);
        for (a, ma) in &self.entries {
            for (b, mb) in &other.entries {
                out.add_term(*a + *b, ma * mb);
            }
        }
        Ok(out)
    }

    /// Keeps the weights divisible by `p` and divides them by `p`.
    pub fn frobenius_contract(&self, p: Prime) -> Character {
        self.contract_by(p.as_i64())
    }

    /// `r`-fold contraction: weights divisible by `p^r`, divided by `p^r`.
    pub fn contract_power(&self, p: Prime, r: u32) -> Character {
        self.contract_by(p.pow(r))
    }

    fn contract_by(&self, q: i64) -> Character {
        let entries = self
            .entries
            .iter()
            .filter_map(|(w, m)| w.divide_exact(q).map(|v| (v, m.clone())))
            .collect();
        Character { ty: self.ty, entries }
    }

    /// Multiplies every weight by `p`.
    pub fn frobenius_twist(&self, p: Prime) -> Character {
        self.twist_power(p, 1)
    }

    pub fn twist_power(&self, p: Prime, r: u32) -> Character {
        let q = p.pow(r);
        let entries = self.entries.iter().map(|(w, m)| (w.scaled(q), m.clone())).collect();
        Character { ty: self.ty, entries }
    }

    /// `ν ↦ −ν`.
    pub fn dual(&self) -> Character {
        let entries = self.entries.iter().map(|(w, m)| (-*w, m.clone())).collect();
        Character { ty: self.ty, entries }
    }

    /// The restriction to dominant weights.
    pub fn dominant_part(&self) -> BTreeMap<Weight, BigInt> {
        self.entries.iter().filter(|(w, _)| w.is_dominant()).map(|(w, m)| (*w, m.clone())).collect()
    }

    /// Checks that multiplicities are constant along simple-reflection orbits.
    pub fn check_w_invariant(&self, datum: &RootDatum) -> Result<()> {
        self.check_datum(datum)?;
        for (w, m) in &self.entries {
            for i in 0..datum.rank() {
                if w[i] == 0 {
                    continue;
                }
                if self.entries.get(&datum.reflect(i, w)) != Some(m) {
                    return Err(Error::NotWInvariant(*w));
                }
            }
        }
        Ok(())
    }

    pub fn check_datum(&self, datum: &RootDatum) -> Result<()> {
        if self.ty != datum.cartan_type() {
            return Err(Error::DatumMismatch { left: self.ty, right: datum.cartan_type() });
        }
        Ok(())
    }
}

/// Dominant weights `μ ≤ λ`, highest first (by height, then lexicographically).
///
/// Any two comparable dominant weights are joined by a chain of dominant
/// weights differing by positive roots, so a search from `λ` that subtracts
/// positive roots and keeps dominant results finds them all.
pub fn dominant_weights_below(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen = BTreeSet::from([*lambda]);
    let mut stack = alloc::vec![*lambda];
    while let Some(mu) = stack.pop() {
        for alpha in datum.positive_roots() {
            let nu = mu - *alpha;
            if nu.is_dominant() && seen.insert(nu) {
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    sort_highest_first(datum, &mut out);
    out
}

fn sort_highest_first(datum: &RootDatum, ws: &mut [Weight]) {
    ws.sort_by(|a, b| datum.height_scaled(b).cmp(&datum.height_scaled(a)).then(b.cmp(a)));
}

/// Freudenthal's recursion, evaluated on dominant weights only.
///
/// `m(μ)·[(λ+ρ,λ+ρ) − (μ+ρ,μ+ρ)] = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα)·(μ+kα, α)`,
/// with `m(μ+kα)` read off the dominant representative of its orbit.
pub fn dominant_weyl_multiplicities(datum: &RootDatum, lambda: &Weight) -> Result<BTreeMap<Weight, BigInt>> {
    datum.check_dominant(lambda)?;
    let order = dominant_weights_below(datum, lambda);
    let rho = datum.rho();
    let top = datum.form_scaled(&(*lambda + rho), &(*lambda + rho));
    let mut mult: BTreeMap<Weight, BigInt> = BTreeMap::new();
    mult.insert(*lambda, BigInt::one());
    for mu in order.iter().skip(1) {
        let mut acc = BigInt::zero();
        for alpha in datum.positive_roots() {
            let mut nu = *mu + *alpha;
            loop {
                let (dom, _) = datum.to_dominant(&nu);
                let Some(m) = mult.get(&dom) else { break };
                acc += m * datum.form_scaled(&nu, alpha);
                nu += *alpha;
            }
        }
        let den = top - datum.form_scaled(&(*mu + rho), &(*mu + rho));
        debug_assert!(den > 0);
        let value = (acc * 2) / den;
        mult.insert(*mu, value);
    }
    Ok(mult)
}

/// Expands dominant multiplicities along linear Weyl orbits.
pub fn expand_orbits(datum: &RootDatum, dominant: &BTreeMap<Weight, BigInt>) -> Character {
    let mut entries = BTreeMap::new();
    for (w, m) in dominant {
        if m.is_zero() {
            continue;
        }
        for v in datum.orbit(w) {
            entries.insert(v, m.clone());
        }
    }
    Character { ty: datum.cartan_type(), entries }
}

/// Character of ∇(λ) (equivalently of the Weyl module Δ(λ)).
pub fn weyl_character(datum: &RootDatum, lambda: &Weight) -> Result<Character> {
    Ok(expand_orbits(datum, &dominant_weyl_multiplicities(datum, lambda)?))
}

/// Storage for computed Weyl characters, keyed by highest weight.
///
/// Implementations must be write-once per key: if two callers race to store
/// the same weight, both get back the same stored value.
pub trait CharacterMemo {
    fn lookup(&self, lambda: &Weight) -> Option<Arc<Character>>;
    fn store(&self, lambda: Weight, character: Arc<Character>) -> Arc<Character>;
}

/// Memo that never remembers anything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoMemo;

impl CharacterMemo for NoMemo {
    fn lookup(&self, _: &Weight) -> Option<Arc<Character>> {
        None
    }
    fn store(&self, _: Weight, character: Arc<Character>) -> Arc<Character> {
        character
    }
}

/// Single-threaded memo.
#[derive(Debug, Default)]
pub struct LocalMemo(RefCell<BTreeMap<Weight, Arc<Character>>>);

impl LocalMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.borrow().is_empty()
    }
}

impl CharacterMemo for LocalMemo {
    fn lookup(&self, lambda: &Weight) -> Option<Arc<Character>> {
        self.0.borrow().get(lambda).cloned()
    }
    fn store(&self, lambda: Weight, character: Arc<Character>) -> Arc<Character> {
        self.0.borrow_mut().entry(lambda).or_insert(character).clone()
    }
}

impl<M: CharacterMemo + ?Sized> CharacterMemo for &M {
    fn lookup(&self, lambda: &Weight) -> Option<Arc<Character>> {
        (**self).lookup(lambda)
    }
    fn store(&self, lambda: Weight, character: Arc<Character>) -> Arc<Character> {
        (**self).store(lambda, character)
    }
}

/// A root datum together with a Weyl-character memo.
pub struct WeylCharacters<'a, M = LocalMemo> {
    datum: &'a RootDatum,
    memo: M,
}

impl<'a> WeylCharacters<'a, LocalMemo> {
    pub fn local(datum: &'a RootDatum) -> Self {
        WeylCharacters { datum, memo: LocalMemo::new() }
    }
}

impl<'a, M: CharacterMemo> WeylCharacters<'a, M> {
    pub fn new(datum: &'a RootDatum, memo: M) -> Self {
        WeylCharacters { datum, memo }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn memo(&self) -> &M {
        &self.memo
    }

    /// ch ∇(λ), memoized.
    pub fn weyl(&self, lambda: &Weight) -> Result<Arc<Character>> {
        if let Some(c) = self.memo.lookup(lambda) {
            return Ok(c);
        }
        let c = Arc::new(weyl_character(self.datum, lambda)?);
        Ok(self.memo.store(*lambda, c))
    }

    /// χ(λ): zero on dot-singular weights, otherwise `±ch ∇(w∙λ)`.
    pub fn euler(&self, lambda: &Weight) -> Result<Character> {
        match self.datum.dominant_dot_normalize(lambda)? {
            DotNormal::Singular => Ok(Character::zero(self.datum.cartan_type())),
            DotNormal::Regular { dominant, sign } => Ok(self.weyl(&dominant)?.scale(&BigInt::from(sign))),
        }
    }

    /// ch St_r = ch ∇((p^r − 1)ρ).
    pub fn steinberg(&self, p: Prime, r: u32) -> Result<Arc<Character>> {
        if r == 0 {
            return Err(Error::Precondition("Steinberg level r must be at least 1".into()));
        }
        let top = (p.pow(r) - 1) as i32;
        self.weyl(&(self.datum.rho() * top))
    }

    /// Peels Weyl characters off a W-invariant character.
    pub fn decompose(&self, c: &Character) -> Result<DecompositionResult> {
        c.check_w_invariant(self.datum)?;
        self.decompose_dominant(c.dominant_part())
    }

    /// Decomposition from the dominant part alone; the input must be the
    /// dominant restriction of a W-invariant character.
    pub fn decompose_dominant(&self, mut remaining: BTreeMap<Weight, BigInt>) -> Result<DecompositionResult> {
        let datum = self.datum;
        remaining.retain(|_, v| !v.is_zero());
        let mut multiplicities = BTreeMap::new();
        while let Some(top) = highest(datum, remaining.keys()) {
            let coeff = remaining[&top].clone();
            let basis = self.weyl(&top)?;
            for (w, m) in basis.iter().filter(|(w, _)| w.is_dominant()) {
                let entry = remaining.entry(*w).or_default();
                *entry -= &coeff * m;
                if entry.is_zero() {
                    remaining.remove(w);
                }
            }
            debug_assert!(!remaining.contains_key(&top));
            multiplicities.insert(top, coeff);
        }
        Ok(DecompositionResult { multiplicities, remainder: Character::zero(datum.cartan_type()) })
    }

    /// Dominant part of `a ⊗ b` for W-invariant `a` and `b`.
    ///
    /// Every weight of a W-invariant character lies below a maximal dominant
    /// weight of its support, so the dominant weights of the product lie below
    /// sums of such maxima; only those are evaluated.
    pub fn tensor_dominant(&self, a: &Character, b: &Character) -> Result<BTreeMap<Weight, BigInt>> {
        a.check_datum(self.datum)?;
        b.check_datum(self.datum)?;
        let datum = self.datum;
        let tops_a = dominant_maxima(datum, a);
        let tops_b = dominant_maxima(datum, b);
        let mut candidates = BTreeSet::new();
        for s in &tops_a {
            for t in &tops_b {
                candidates.extend(dominant_weights_below(datum, &(*s + *t)));
            }
        }
        let mut out = BTreeMap::new();
        for nu in candidates {
            let mut acc = BigInt::zero();
            for (x, mx) in a.iter() {
                if let Some(my) = b.get(&(nu - *x)) {
                    acc += mx * my;
                }
            }
            if !acc.is_zero() {
                out.insert(nu, acc);
            }
        }
        Ok(out)
    }
}

/// Highest element under (height, lexicographic) order; maximal for dominance.
fn highest<'w>(datum: &RootDatum, ws: impl Iterator<Item = &'w Weight>) -> Option<Weight> {
    ws.max_by(|a, b| datum.height_scaled(a).cmp(&datum.height_scaled(b)).then(a.cmp(b))).copied()
}

fn dominant_maxima(datum: &RootDatum, c: &Character) -> Vec<Weight> {
    let dom: Vec<Weight> = c.iter().map(|(w, _)| *w).filter(|w| w.is_dominant()).collect();
    dom.iter()
        .filter(|w| !dom.iter().any(|v| v != *w && datum.dominates(v, w)))
        .copied()
        .collect()
}

/// Multiplicities of basis characters plus whatever could not be peeled off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub multiplicities: BTreeMap<Weight, BigInt>,
    pub remainder: Character,
}

impl DecompositionResult {
    pub fn multiplicity(&self, lambda: &Weight) -> BigInt {
        self.multiplicities.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.multiplicities.values().all(|m| !m.is_negative())
    }

    /// `Σ mult(λ)·basis(λ) + remainder`.
    pub fn reconstruct(&self, mut basis: impl FnMut(&Weight) -> Result<Character>) -> Result<Character> {
        let mut acc = self.remainder.clone();
        for (w, m) in &self.multiplicities {
            acc = acc.add(&basis(w)?.scale(m))?;
        }
        Ok(acc)
    }
}

/// ch ∇̂_r(λ) = e^λ · Π_{α>0} (1 + e^{−α} + … + e^{−(p^r−1)α}).
pub fn hat_nabla_character(datum: &RootDatum, p: Prime, r: u32, lambda: &Weight) -> Result<Character> {
    datum.check_weight(lambda)?;
    if r == 0 {
        return Err(Error::Precondition("level r must be at least 1".into()));
    }
    let q = p.pow(r);
    let mut acc: BTreeMap<Weight, BigInt> = BTreeMap::from([(*lambda, BigInt::one())]);
    for alpha in datum.positive_roots() {
        let mut next: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (w, m) in &acc {
            let mut v = *w;
            for _ in 0..q {
                *next.entry(v).or_default() += m;
                v -= *alpha;
            }
        }
        acc = next;
    }
    Ok(Character::from_map(datum.cartan_type(), acc))
}

/// Peels ∇̂_r characters off `c`, highest weight first.
///
/// The basis is unitriangular, so peeling is forced; it terminates exactly
/// when `c` is a finite combination. If the lowest weight of a required basis
/// element drops below every weight of `c`, no finite combination exists and
/// [`Error::NoFiniteDecomposition`] is returned.
pub fn decompose_into_hat_nabla(datum: &RootDatum, c: &Character, p: Prime, r: u32) -> Result<DecompositionResult> {
    c.check_datum(datum)?;
    let base = hat_nabla_character(datum, p, r, &datum.zero_weight())?;
    let depth = (p.pow(r) - 1) * datum.height_scaled(&(datum.rho() * 2));
    let floor = c.iter().map(|(w, _)| datum.height_scaled(w)).min();
    let mut remaining = c.entries.clone();
    let mut multiplicities = BTreeMap::new();
    while let Some(top) = highest(datum, remaining.keys()) {
        if datum.height_scaled(&top) - depth < floor.unwrap_or(i64::MIN) {
            return Err(Error::NoFiniteDecomposition(top));
        }
        let coeff = remaining[&top].clone();
        for (w, m) in base.iter() {
            let key = *w + top;
            let entry = remaining.entry(key).or_default();
            *entry -= &coeff * m;
            if entry.is_zero() {
                remaining.remove(&key);
            }
        }
        multiplicities.insert(top, coeff);
    }
    Ok(DecompositionResult { multiplicities, remainder: Character::zero(datum.cartan_type()) })
}
