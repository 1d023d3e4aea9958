//! Explicit SL₂-modules over 𝔽ₚ and their Frobenius-kernel invariants.
//!
//! A representation is given by the actions of `e` and `f` on a weight
//! basis. Weights are kept as plain integers; only matrix entries are
//! reduced mod `p`.
//!
//! G₁-invariants are `ker e ∩ ker f` on weight spaces of weight `≡ 0 mod p`.
//! This is enough: `Dist(G₁)` is generated by `e^{(k)}, f^{(k)}` for `k < p`
//! and `binom(h, m)` for `m < p`; since `k!` is a unit, `e^{(k)} = e^k/k!`
//! kills `ker e`, and `binom(h, m)` acts on weight `w` by `binom(w, m)`, which
//! vanishes mod `p` for all `0 < m < p` exactly when `p | w` (Lucas).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::charring::Character;
use crate::error::{Error, Result};
use crate::rootdata::{CartanType, Family};
use crate::weight::{Prime, Weight};

/// Largest prime accepted by the module-level checks.
pub const MAX_ORACLE_PRIME: u32 = 13;

fn a1() -> CartanType {
    CartanType::new(Family::A, 1).expect("A1 is valid")
}

/// Arithmetic in 𝔽ₚ for small `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: Prime) -> Self {
        Fp { p: u64::from(p.get()) }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % self.p) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % self.p) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            (self.p - u64::from(a)) as u32
        }
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p as u32), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// Rank of a dense matrix given as rows; rows are consumed.
    pub fn rank(&self, mut rows: Vec<Vec<u32>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col] == 0 {
                    continue;
                }
                let factor = self.neg(row[col]);
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = self.add(*x, self.mul(factor, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Sparse linear operator: `columns[j]` lists `(i, c)` with `X v_j = Σ c v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOp {
    columns: Vec<Vec<(usize, u32)>>,
}

impl SparseOp {
    pub fn zero(dim: usize) -> Self {
        SparseOp { columns: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Dense row-major form.
    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, c) in col {
                m[i][j] = c;
            }
        }
        m
    }

    pub fn apply(&self, fp: &Fp, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(i, c) in &self.columns[j] {
                out[i] = fp.add(out[i], fp.mul(c, x));
            }
        }
        out
    }

    fn transpose_negated(&self, fp: &Fp) -> SparseOp {
        let mut out = SparseOp::zero(self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, c) in col {
                out.columns[i].push((j, fp.neg(c)));
            }
        }
        out
    }

    /// `X ⊗ 1 + 1 ⊗ Y` on the basis `a_i ⊗ b_j ↦ i·dim(b) + j`.
    fn tensor_sum(fp: &Fp, x: &SparseOp, y: &SparseOp) -> SparseOp {
        let (da, db) = (x.dim(), y.dim());
        let mut out = SparseOp::zero(da * db);
        for i in 0..da {
            for j in 0..db {
                let col = &mut out.columns[i * db + j];
                for &(k, c) in &x.columns[i] {
                    col.push((k * db + j, c));
                }
                for &(k, c) in &y.columns[j] {
                    col.push((i * db + k, c));
                }
                col.sort_unstable_by_key(|&(r, _)| r);
                col.dedup_by(|b, a| {
                    if a.0 == b.0 {
                        a.1 = fp.add(a.1, b.1);
                        true
                    } else {
                        false
                    }
                });
                col.retain(|&(_, c)| c != 0);
            }
        }
        out
    }
}

/// A finite-dimensional representation of SL₂ (at the level of `e`, `f`) over 𝔽ₚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpRep {
    p: Prime,
    e: SparseOp,
    f: SparseOp,
    weights: Vec<i64>,
}

impl FpRep {
    /// Builds a representation, checking that `e` raises and `f` lowers weights by 2.
    pub fn new(p: Prime, e: SparseOp, f: SparseOp, weights: Vec<i64>) -> Result<Self> {
        let n = weights.len();
        for op in [&e, &f] {
            if op.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: op.dim() });
            }
        }
        let fp = Fp::new(p);
        for (op, shift, name) in [(&e, 2, "e"), (&f, -2, "f")] {
            for (j, col) in op.columns.iter().enumerate() {
                for &(i, c) in col {
                    if i >= n || c >= fp.p as u32 {
                        return Err(Error::Precondition(alloc::format!("{name} has an out-of-range entry")));
                    }
                    if c != 0 && weights[i] != weights[j] + shift {
                        return Err(Error::Precondition(alloc::format!("{name} does not shift weights by {shift}")));
                    }
                }
            }
        }
        Ok(FpRep { p, e, f, weights })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn e(&self) -> &SparseOp {
        &self.e
    }

    pub fn f(&self) -> &SparseOp {
        &self.f
    }

    /// Formal character over A1 (all weights, undivided).
    pub fn character(&self) -> Character {
        weight_character(self.weights.iter().copied())
    }

    fn check_p(&self, other: &FpRep) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FpRep) -> Result<FpRep> {
        self.check_p(other)?;
        let shift = self.dim();
        let stack = |a: &SparseOp, b: &SparseOp| {
            let mut columns = a.columns.clone();
            columns.extend(b.columns.iter().map(|col| col.iter().map(|&(i, c)| (i + shift, c)).collect()));
            SparseOp { columns }
        };
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Ok(FpRep { p: self.p, e: stack(&self.e, &other.e), f: stack(&self.f, &other.f), weights })
    }
}

fn weight_character(weights: impl Iterator<Item = i64>) -> Character {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for w in weights {
        *counts.entry(w).or_default() += 1;
    }
    Character::from_pairs(a1(), counts.into_iter().map(|(w, c)| (Weight::from_slice(&[w as i32]), BigInt::from(c))))
        .expect("rank one")
}

/// Δ(n): basis `v_0, …, v_n` of weights `n − 2i`, with
/// `e·v_i = (n−i+1) v_{i−1}` and `f·v_i = (i+1) v_{i+1}` reduced mod `p`.
pub fn build_weyl_module(p: Prime, n: u32) -> FpRep {
    let fp = Fp::new(p);
    let dim = n as usize + 1;
    let mut e = SparseOp::zero(dim);
    let mut f = SparseOp::zero(dim);
    for i in 0..dim {
        if i > 0 {
            let c = fp.reduce(i64::from(n) - i as i64 + 1);
            if c != 0 {
                e.columns[i].push((i - 1, c));
            }
        }
        if i + 1 < dim {
            let c = fp.reduce(i as i64 + 1);
            if c != 0 {
                f.columns[i].push((i + 1, c));
            }
        }
    }
    let weights = (0..dim as i64).map(|i| i64::from(n) - 2 * i).collect();
    FpRep { p, e, f, weights }
}

/// The trivial module 𝕜.
pub fn trivial_rep(p: Prime) -> FpRep {
    build_weyl_module(p, 0)
}

/// St = Δ(p − 1).
pub fn steinberg_rep(p: Prime) -> FpRep {
    build_weyl_module(p, p.get() - 1)
}

/// Contragredient: `e ↦ −eᵀ`, `f ↦ −fᵀ`, weights negated.
pub fn dual_rep(r: &FpRep) -> FpRep {
    let fp = Fp::new(r.p);
    FpRep {
        p: r.p,
        e: r.e.transpose_negated(&fp),
        f: r.f.transpose_negated(&fp),
        weights: r.weights.iter().map(|w| -w).collect(),
    }
}

/// `a ⊗ b` with `e`, `f` acting primitively.
pub fn tensor_rep(a: &FpRep, b: &FpRep) -> Result<FpRep> {
    a.check_p(b)?;
    let fp = Fp::new(a.p);
    let mut weights = Vec::with_capacity(a.dim() * b.dim());
    for wa in &a.weights {
        for wb in &b.weights {
            weights.push(wa + wb);
        }
    }
    Ok(FpRep {
        p: a.p,
        e: SparseOp::tensor_sum(&fp, &a.e, &b.e),
        f: SparseOp::tensor_sum(&fp, &a.f, &b.f),
        weights,
    })
}

/// Frobenius twist seen by G₁: weights scaled by `p`, `e` and `f` act by zero.
pub fn twist_rep(r: &FpRep) -> FpRep {
    let p = r.p.as_i64();
    FpRep {
        p: r.p,
        e: SparseOp::zero(r.dim()),
        f: SparseOp::zero(r.dim()),
        weights: r.weights.iter().map(|w| w * p).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub dimension: usize,
    /// Weights of the invariant subspace over A1, undivided.
    pub weight_character: Character,
}

/// `M^{G₁}`: common kernel of `e` and `f` on weight spaces of weight `≡ 0 mod p`.
pub fn g1_invariants(r: &FpRep) -> InvariantReport {
    let fp = Fp::new(r.p);
    let p = r.p.as_i64();
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, &w) in r.weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(j);
    }
    let mut dimension = 0;
    let mut weights = Vec::new();
    for (&w, basis) in by_weight.iter().filter(|(w, _)| *w % p == 0) {
        // rows: coordinates in V_{w+2} followed by V_{w-2}
        let mut row_index: BTreeMap<usize, usize> = BTreeMap::new();
        for target in [w + 2, w - 2] {
            for &i in by_weight.get(&target).into_iter().flatten() {
                let next = row_index.len();
                row_index.insert(i, next);
            }
        }
        // the matrix is (rows × |basis|); rank is computed on its transpose
        let images: Vec<Vec<u32>> = basis
            .iter()
            .map(|&j| {
                let mut v = vec![0u32; row_index.len()];
                for &(i, c) in r.e.column(j).iter().chain(r.f.column(j)) {
                    let k = row_index[&i];
                    v[k] = fp.add(v[k], c);
                }
                v
            })
            .collect();
        let rank = if row_index.is_empty() { 0 } else { fp.rank(images) };
        let kernel = basis.len() - rank;
        dimension += kernel;
        weights.extend(core::iter::repeat_n(w, kernel));
    }
    InvariantReport { dimension, weight_character: weight_character(weights.into_iter()) }
}

/// `μ₀M` as a character: multiplicity of `λ` is `dim M_{pλ}`.
pub fn mu0_character(r: &FpRep) -> Character {
    r.character().frobenius_contract(r.p)
}

fn check_oracle_prime(p: Prime) -> Result<()> {
    if p.get() > MAX_ORACLE_PRIME {
        return Err(Error::Precondition(alloc::format!("oracle primes are capped at {MAX_ORACLE_PRIME}")));
    }
    Ok(())
}

/// Both sides of `M^φ ≃ ((St ⊗ St ⊗ M)^{G₁})^{[−1]}` at the level of
/// characters: the invariant weights, and the twist of `μ₀M`.
pub fn theorem_2_1_sides(m: &FpRep) -> Result<(Character, Character)> {
    check_oracle_prime(m.p)?;
    let st = steinberg_rep(m.p);
    let big = tensor_rep(&tensor_rep(&st, &st)?, m)?;
    let lhs = g1_invariants(&big).weight_character;
    let rhs = mu0_character(m).frobenius_twist(m.p);
    Ok((lhs, rhs))
}

pub fn verify_theorem_2_1(m: &FpRep) -> Result<bool> {
    let (lhs, rhs) = theorem_2_1_sides(m)?;
    Ok(lhs == rhs)
}

/// Rank of the `p² × p²` matrix of vectors `f^{(a)} e^{(b)} (v₊ ⊗ v₋)` in
/// `St ⊗ St`, `0 ≤ a, b < p`.
pub fn theta_rank(p: Prime) -> Result<usize> {
    check_oracle_prime(p)?;
    let fp = Fp::new(p);
    let st = steinberg_rep(p);
    let pair = tensor_rep(&st, &st)?;
    let q = p.get() as usize;
    let mut seed = vec![0u32; q * q];
    // v₊ = v_0, v₋ = v_{p−1}
    seed[q - 1] = 1;
    let divided = |op: &SparseOp, v: &[u32], k: usize| -> Vec<u32> {
        let mut out = v.to_vec();
        for _ in 0..k {
            out = op.apply(&fp, &out);
        }
        let fact = (1..=k as u32).fold(1u32, |acc, x| fp.mul(acc, x));
        let inv = fp.inv(fact);
        out.iter().map(|&x| fp.mul(x, inv)).collect()
    };
    let mut rows = Vec::with_capacity(q * q);
    for b in 0..q {
        let eb = divided(pair.e(), &seed, b);
        for a in 0..q {
            rows.push(divided(pair.f(), &eb, a));
        }
    }
    Ok(fp.rank(rows))
}
