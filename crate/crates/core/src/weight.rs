//! Integral weights and coroots in fixed-capacity coordinate vectors.
//!
//! Weights are stored in the fundamental-weight basis, coroots in the
//! simple-coroot basis, so `⟨λ, α_i^∨⟩` is simply coordinate `i` of `λ`.

use core::fmt;
use core::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Largest rank representable by [`Weight`] and [`Coroot`].
pub const MAX_RANK: usize = 8;

/// An integral weight, coordinates in the fundamental-weight basis.
///
/// The derived ordering is lexicographic on coordinates, which is the
/// canonical order used for serialization and tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: [i32; MAX_RANK],
    rank: u8,
}

impl Weight {
    pub fn new(coords: &[i32]) -> Result<Self> {
        if coords.len() > MAX_RANK {
            return Err(Error::RankTooLarge { rank: coords.len(), cap: MAX_RANK });
        }
        let mut c = [0; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Weight { coords: c, rank: coords.len() as u8 })
    }

    /// Panicking constructor for literals in tests and tables.
    pub fn from_slice(coords: &[i32]) -> Self {
        Self::new(coords).expect("rank exceeds MAX_RANK")
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        Weight { coords: [0; MAX_RANK], rank: rank as u8 }
    }

    /// The fundamental weight `ϖ_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = 1;
        w
    }

    /// `(1, …, 1)`, i.e. ρ.
    pub fn rho(rank: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[..rank].fill(1);
        w
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: i32) {
        assert!(i < self.rank as usize);
        self.coords[i] = value;
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&c| c >= 0)
    }

    /// Dominant with all coordinates strictly positive.
    pub fn is_regular_dominant(&self) -> bool {
        self.coords().iter().all(|&c| c > 0)
    }

    /// Whether every coordinate is divisible by `n`.
    pub fn is_divisible_by(&self, n: i64) -> bool {
        self.coords().iter().all(|&c| i64::from(c) % n == 0)
    }

    /// `self / n` when every coordinate is divisible by `n`.
    pub fn divide_exact(&self, n: i64) -> Option<Weight> {
        if !self.is_divisible_by(n) {
            return None;
        }
        let mut out = *self;
        for c in &mut out.coords[..self.rank as usize] {
            *c = (i64::from(*c) / n) as i32;
        }
        Some(out)
    }

    pub fn scaled(&self, n: i64) -> Weight {
        let mut out = *self;
        for c in &mut out.coords[..self.rank as usize] {
            *c = i32::try_from(i64::from(*c) * n).expect("weight coordinate overflow");
        }
        out
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: self.rank() });
        }
        Ok(())
    }
}

impl Index<usize> for Weight {
    type Output = i32;
    #[inline]
    fn index(&self, i: usize) -> &i32 {
        &self.coords()[i]
    }
}

impl Add for Weight {
    type Output = Weight;
    #[inline]
    fn add(mut self, rhs: Weight) -> Weight {
        self += rhs;
        self
    }
}

impl AddAssign for Weight {
    #[inline]
    fn add_assign(&mut self, rhs: Weight) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..self.rank as usize {
            self.coords[i] += rhs.coords[i];
        }
    }
}

impl Sub for Weight {
    type Output = Weight;
    #[inline]
    fn sub(mut self, rhs: Weight) -> Weight {
        self -= rhs;
        self
    }
}

impl SubAssign for Weight {
    #[inline]
    fn sub_assign(&mut self, rhs: Weight) {
        debug_assert_eq!(self.rank, rhs.rank);
        for i in 0..self.rank as usize {
            self.coords[i] -= rhs.coords[i];
        }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(mut self) -> Weight {
        for c in &mut self.coords[..self.rank as usize] {
            *c = -*c;
        }
        self
    }
}

impl Mul<i32> for Weight {
    type Output = Weight;
    fn mul(mut self, k: i32) -> Weight {
        for c in &mut self.coords[..self.rank as usize] {
            *c *= k;
        }
        self
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A coroot, coordinates in the simple-coroot basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coroot {
    coords: [i32; MAX_RANK],
    rank: u8,
}

impl Coroot {
    pub fn new(coords: &[i32]) -> Result<Self> {
        let w = Weight::new(coords)?;
        Ok(Coroot { coords: w.coords, rank: w.rank })
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let w = Weight::fundamental(rank, i);
        Coroot { coords: w.coords, rank: w.rank }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.rank as usize]
    }

    /// Sum of the simple-coroot coordinates.
    pub fn height(&self) -> i64 {
        self.coords().iter().map(|&c| i64::from(c)).sum()
    }

    /// `⟨λ, self⟩`.
    #[inline]
    pub fn pair(&self, lambda: &Weight) -> i64 {
        self.coords()
            .iter()
            .zip(lambda.coords())
            .map(|(&c, &l)| i64::from(c) * i64::from(l))
            .sum()
    }
}

impl fmt::Debug for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^∨", Weight { coords: self.coords, rank: self.rank })
    }
}

/// A prime number, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        let ok = p >= 2 && p <= u64::from(u32::MAX) && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if ok {
            Ok(Prime(p as u32))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        i64::from(self.0)
    }

    /// `p^r` as an `i64`; panics on overflow.
    pub fn pow(self, r: u32) -> i64 {
        self.as_i64().checked_pow(r).expect("p^r overflows i64")
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
