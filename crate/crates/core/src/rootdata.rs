//! Root data of simple simply-connected groups, types A–G.
//!
//! Conventions: Bourbaki numbering of simple roots, Cartan matrix entry
//! `cartan[i][j] = ⟨α_j, α_i^∨⟩`, weights in fundamental-weight coordinates,
//! coroots in simple-coroot coordinates. For G₂ the first simple root is the
//! short one.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::weight::{Coroot, Weight, MAX_RANK};

/// Default cap on the rank accepted by [`RootDatum::new`].
pub const DEFAULT_RANK_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type label such as `G2` or `A3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: u8,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(Error::InvalidType(format!("{}{}", family.letter(), rank)));
        }
        Ok(CartanType { family, rank: rank as u8 })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Debug for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.into())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        CartanType::new(family, rank)
    }
}

/// Immutable description of a simple simply-connected root system.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ty: CartanType,
    rank: usize,
    /// Row-major, `cartan[i * rank + j] = ⟨α_j, α_i^∨⟩`.
    cartan: Vec<i32>,
    /// `(α_i, α_i) / 2`, short roots normalized to 1.
    symmetrizer: Vec<i64>,
    /// `gram_scale · (ϖ_i, ϖ_j)`, an integer matrix.
    gram: Vec<i64>,
    gram_scale: i64,
    /// `det · cartan⁻¹`, where `det` is the common denominator of the inverse.
    adjugate: Vec<i64>,
    det: i64,
    /// Column sums of `adjugate`: `det · height(ν) = Σ height_form[i] ν_i`.
    height_form: Vec<i64>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i32>>,
    positive_coroots: Vec<Coroot>,
    highest_coroot: Coroot,
    coxeter_number: i64,
}

fn cartan_matrix(ty: CartanType) -> Vec<i32> {
    let n = ty.rank();
    let mut a = vec![0i32; n * n];
    for i in 0..n {
        a[i * n + i] = 2;
    }
    let link = |a: &mut Vec<i32>, i: usize, j: usize| {
        a[i * n + j] = -1;
        a[j * n + i] = -1;
    };
    match ty.family() {
        Family::A => (0..n - 1).for_each(|i| link(&mut a, i, i + 1)),
        Family::B => {
            (0..n - 1).for_each(|i| link(&mut a, i, i + 1));
            // α_n short
            a[(n - 1) * n + (n - 2)] = -2;
        }
        Family::C => {
            (0..n - 1).for_each(|i| link(&mut a, i, i + 1));
            // α_n long
            a[(n - 2) * n + (n - 1)] = -2;
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, n - 3, n - 1);
        }
        Family::E => {
            link(&mut a, 0, 2);
            (2..n - 1).for_each(|i| link(&mut a, i, i + 1));
            link(&mut a, 1, 3);
        }
        Family::F => {
            (0..3).for_each(|i| link(&mut a, i, i + 1));
            // α_1, α_2 long; α_3, α_4 short
            a[2 * n + 1] = -2;
        }
        Family::G => {
            // α_1 short, α_2 long
            a[1] = -3;
            a[2] = -1;
        }
    }
    a
}

fn lcm_of_denominators(values: &[Ratio<i64>]) -> i64 {
    values.iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
}

/// Inverse of an integer matrix over the rationals (Gauss–Jordan).
fn rational_inverse(a: &[i32], n: usize) -> Vec<Ratio<i64>> {
    let mut m: Vec<Ratio<i64>> = a.iter().map(|&x| Ratio::from_integer(i64::from(x))).collect();
    let mut inv: Vec<Ratio<i64>> = (0..n * n)
        .map(|k| if k / n == k % n { Ratio::one() } else { Ratio::zero() })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r * n + col].is_zero()).expect("Cartan matrix is invertible");
        if pivot != col {
            for k in 0..n {
                m.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let piv = m[col * n + col];
        for k in 0..n {
            m[col * n + k] /= piv;
            inv[col * n + k] /= piv;
        }
        for r in 0..n {
            if r != col && !m[r * n + col].is_zero() {
                let factor = m[r * n + col];
                for k in 0..n {
                    let (mv, iv) = (m[col * n + k], inv[col * n + k]);
                    m[r * n + k] -= factor * mv;
                    inv[r * n + k] -= factor * iv;
                }
            }
        }
    }
    inv
}

fn symmetrizer(a: &[i32], n: usize) -> Vec<i64> {
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].unwrap();
        for j in 0..n {
            if j != i && a[i * n + j] != 0 && d[j].is_none() {
                // d_i a_ij = d_j a_ji
                d[j] = Some(di * Ratio::from_integer(i64::from(a[i * n + j])) / i64::from(a[j * n + i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("Dynkin diagram is connected")).collect();
    let scale = lcm_of_denominators(&d);
    let ints: Vec<i64> = d.iter().map(|x| (x * scale).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    ints.into_iter().map(|x| x / g).collect()
}

/// Positive roots in simple-root coordinates, by the root-string algorithm.
fn positive_roots_in_root_coords(a: &[i32], n: usize) -> Vec<Vec<i32>> {
    let mut roots: Vec<Vec<i32>> = Vec::new();
    let mut known: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        known.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i32 = (0..n).map(|j| a[i * n + j] * beta[j]).sum();
            // largest k with beta - k α_i a root
            let mut down = 0;
            let mut probe = beta.clone();
            loop {
                probe[i] -= 1;
                if probe[i] < 0 || !known.contains(&probe) {
                    break;
                }
                down += 1;
            }
            if down - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
        roots.push(beta);
    }
    roots
}

impl RootDatum {
    /// Builds the root datum with the default rank cap.
    pub fn new(ty: CartanType) -> Result<Self> {
        Self::with_rank_cap(ty, DEFAULT_RANK_CAP)
    }

    pub fn with_rank_cap(ty: CartanType, rank_cap: usize) -> Result<Self> {
        let n = ty.rank();
        if n > rank_cap {
            return Err(Error::RankTooLarge { rank: n, cap: rank_cap });
        }
        let cartan = cartan_matrix(ty);
        let symmetrizer = symmetrizer(&cartan, n);
        let inverse = rational_inverse(&cartan, n);

        // (ϖ_i, ϖ_j) = (A⁻¹)_{ji} d_j
        let gram_rat: Vec<Ratio<i64>> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                inverse[j * n + i] * symmetrizer[j]
            })
            .collect();
        let gram_scale = lcm_of_denominators(&gram_rat);
        let gram = gram_rat.iter().map(|x| (x * gram_scale).to_integer()).collect();

        let det = lcm_of_denominators(&inverse);
        let adjugate: Vec<i64> = inverse.iter().map(|x| (x * det).to_integer()).collect();
        let height_form = (0..n).map(|i| (0..n).map(|k| adjugate[k * n + i]).sum()).collect();

        let positive_root_coords = positive_roots_in_root_coords(&cartan, n);
        let mut positive_roots = Vec::with_capacity(positive_root_coords.len());
        let mut positive_coroots = Vec::with_capacity(positive_root_coords.len());
        for c in &positive_root_coords {
            let mut w = Weight::zero(n);
            for k in 0..n {
                w.set(k, (0..n).map(|j| cartan[k * n + j] * c[j]).sum());
            }
            positive_roots.push(w);
            let norm2: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| i64::from(c[i] * c[j]) * symmetrizer[i] * i64::from(cartan[i * n + j]))
                .sum();
            let co: Vec<i32> = (0..n)
                .map(|j| {
                    let num = 2 * i64::from(c[j]) * symmetrizer[j];
                    debug_assert_eq!(num % norm2, 0);
                    (num / norm2) as i32
                })
                .collect();
            positive_coroots.push(Coroot::new(&co)?);
        }
        let highest_coroot = *positive_coroots.iter().max_by_key(|c| c.height()).unwrap();
        let coxeter_number = 1 + highest_coroot.pair(&Weight::rho(n));

        Ok(RootDatum {
            ty,
            rank: n,
            cartan,
            symmetrizer,
            gram,
            gram_scale,
            adjugate,
            det,
            height_form,
            positive_roots,
            positive_root_coords,
            positive_coroots,
            highest_coroot,
            coxeter_number,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `⟨α_j, α_i^∨⟩`.
    #[inline]
    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i * self.rank + j]
    }

    pub fn cartan_rows(&self) -> Vec<Vec<i32>> {
        self.cartan.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// `(α_i, α_i) / 2` with short roots normalized to 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// The simple root `α_i` in weight coordinates (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        for k in 0..self.rank {
            w.set(k, self.cartan(k, i));
        }
        w
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank).map(|i| self.simple_root(i)).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Coroot> {
        (0..self.rank).map(|i| Coroot::simple(self.rank, i)).collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, same order as [`Self::positive_roots`].
    pub fn positive_root_coords(&self) -> &[Vec<i32>] {
        &self.positive_root_coords
    }

    /// Coroots paired index-wise with [`Self::positive_roots`].
    pub fn positive_coroots(&self) -> &[Coroot] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.rank)
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// The highest coroot α₀^∨.
    pub fn highest_coroot(&self) -> Coroot {
        self.highest_coroot
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// `⟨λ, c⟩` for a weight and a coroot.
    pub fn pairing(&self, lambda: &Weight, c: &Coroot) -> Result<i64> {
        lambda.check_rank(self.rank)?;
        if c.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: c.rank() });
        }
        Ok(c.pair(lambda))
    }

    /// Scaled invariant form: `gram_scale() · (λ, μ)`.
    pub fn form_scaled(&self, lambda: &Weight, mu: &Weight) -> i64 {
        let n = self.rank;
        let (l, m) = (lambda.coords(), mu.coords());
        let mut acc = 0i64;
        for i in 0..n {
            if l[i] == 0 {
                continue;
            }
            let row: i64 = (0..n).map(|j| self.gram[i * n + j] * i64::from(m[j])).sum();
            acc += i64::from(l[i]) * row;
        }
        acc
    }

    pub fn gram_scale(&self) -> i64 {
        self.gram_scale
    }

    /// A positive multiple of `height(ν)`, the sum of simple-root coordinates.
    /// Strictly increasing along the dominance order.
    #[inline]
    pub fn height_scaled(&self, nu: &Weight) -> i64 {
        self.height_form.iter().zip(nu.coords()).map(|(&h, &c)| h * i64::from(c)).sum()
    }

    /// Coordinates of `ν` in the simple-root basis, if `ν` lies in the root lattice.
    pub fn root_coordinates(&self, nu: &Weight) -> Option<Vec<i64>> {
        let n = self.rank;
        (0..n)
            .map(|k| {
                let s: i64 = (0..n).map(|i| self.adjugate[k * n + i] * i64::from(nu[i])).sum();
                (s % self.det == 0).then_some(s / self.det)
            })
            .collect()
    }

    /// Dominance order: `λ ≥ μ` iff `λ − μ` is a non-negative integer combination of simple roots.
    pub fn dominates(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.root_coordinates(&(*lambda - *mu)).is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// Simple reflection `s_i` acting linearly on weights.
    #[inline]
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let mut out = *lambda;
        let k = lambda[i];
        if k != 0 {
            for j in 0..self.rank {
                out.set(j, out[j] - k * self.cartan(j, i));
            }
        }
        out
    }

    /// Reflection in the positive root with the given index.
    pub fn reflect_root(&self, root_index: usize, lambda: &Weight) -> Weight {
        let k = self.positive_coroots[root_index].pair(lambda) as i32;
        *lambda - self.positive_roots[root_index] * k
    }

    /// The dominant element of the (linear) Weyl orbit of `λ`, and the number
    /// of simple reflections used to reach it (its parity is the sign of the
    /// moving element).
    pub fn to_dominant(&self, lambda: &Weight) -> (Weight, usize) {
        let mut w = *lambda;
        let mut steps = 0;
        while let Some(i) = (0..self.rank).find(|&i| w[i] < 0) {
            w = self.reflect(i, &w);
            steps += 1;
        }
        (w, steps)
    }

    /// `w ∙ λ` for a single simple reflection: `s_i(λ + ρ) − ρ`.
    pub fn dot_reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let rho = self.rho();
        self.reflect(i, &(*lambda + rho)) - rho
    }

    /// Moves `λ` into the dominant chamber under the dot action.
    pub fn dominant_dot_normalize(&self, lambda: &Weight) -> Result<DotNormal> {
        lambda.check_rank(self.rank)?;
        let (shifted, steps) = self.to_dominant(&(*lambda + self.rho()));
        if shifted.coords().contains(&0) {
            return Ok(DotNormal::Singular);
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        Ok(DotNormal::Regular { dominant: shifted - self.rho(), sign })
    }

    /// The linear Weyl orbit of `λ`, sorted.
    pub fn orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let (start, _) = self.to_dominant(lambda);
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            for i in 0..self.rank {
                // only reflect downward from the dominant chamber
                if w[i] > 0 {
                    let v = self.reflect(i, &w);
                    if seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Weyl dimension formula `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let shifted = *lambda + self.rho();
        let rho = self.rho();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for c in &self.positive_coroots {
            num *= c.pair(&shifted);
            den *= c.pair(&rho);
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero());
        if q.is_negative() {
            -q
        } else {
            q
        }
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        lambda.check_rank(self.rank)
    }

    pub fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(*lambda));
        }
        Ok(())
    }
}

/// Result of [`RootDatum::dominant_dot_normalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotNormal {
    /// `λ + ρ` lies on a wall.
    Singular,
    /// `dominant = w ∙ λ` and `sign = (−1)^{ℓ(w)}`.
    Regular { dominant: Weight, sign: i32 },
}
