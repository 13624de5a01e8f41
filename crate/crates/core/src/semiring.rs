//! Semiring values for permutation problems.
//!
//! The tradeoff solver only needs `⊕` to be idempotent; Held–Karp works for
//! any semiring, which is why [`Counting`] exists at all.

use core::fmt;

pub trait Semiring: Copy + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// Identity of `⊕`, annihilates `⊗`.
    fn zero() -> Self;
    /// Identity of `⊗`.
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;

    /// `a ⊕ a = a` for every `a`.
    const IDEMPOTENT: bool;
    const NAME: &'static str;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

/// Min-plus over the naturals extended with `+∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinPlus(u64);

impl MinPlus {
    pub const INFINITY: MinPlus = MinPlus(u64::MAX);

    /// Finite cost. `u64::MAX` is reserved for infinity.
    pub fn finite(cost: u64) -> Self {
        assert!(cost < u64::MAX, "cost collides with the infinity marker");
        MinPlus(cost)
    }

    pub fn value(self) -> Option<u64> {
        (self.0 != u64::MAX).then_some(self.0)
    }

    pub fn is_infinite(self) -> bool {
        self.0 == u64::MAX
    }
}

impl From<Option<u64>> for MinPlus {
    fn from(v: Option<u64>) -> Self {
        v.map_or(MinPlus::INFINITY, MinPlus::finite)
    }
}

impl fmt::Debug for MinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Display for MinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Semiring for MinPlus {
    const IDEMPOTENT: bool = true;
    const NAME: &'static str = "min-plus";

    fn zero() -> Self {
        MinPlus::INFINITY
    }
    fn one() -> Self {
        MinPlus(0)
    }
    fn add(self, other: Self) -> Self {
        self.min(other)
    }
    fn mul(self, other: Self) -> Self {
        if self.is_infinite() || other.is_infinite() {
            MinPlus::INFINITY
        } else {
            // saturate just below the marker so overflow never turns into ∞ by accident
            MinPlus(self.0.saturating_add(other.0).min(u64::MAX - 1))
        }
    }
}

/// Boolean or/and.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Boolean(pub bool);

impl Semiring for Boolean {
    const IDEMPOTENT: bool = true;
    const NAME: &'static str = "boolean";

    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn add(self, other: Self) -> Self {
        Boolean(self.0 || other.0)
    }
    fn mul(self, other: Self) -> Self {
        Boolean(self.0 && other.0)
    }
}

/// Sum-product over `u128` (wrapping). Not idempotent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Counting(pub u128);

impl Semiring for Counting {
    const IDEMPOTENT: bool = false;
    const NAME: &'static str = "counting";

    fn zero() -> Self {
        Counting(0)
    }
    fn one() -> Self {
        Counting(1)
    }
    fn add(self, other: Self) -> Self {
        Counting(self.0.wrapping_add(other.0))
    }
    fn mul(self, other: Self) -> Self {
        Counting(self.0.wrapping_mul(other.0))
    }
}

/// `⊗` over a sequence of factors.
pub fn product<S: Semiring>(factors: impl IntoIterator<Item = S>) -> S {
    factors.into_iter().fold(S::one(), S::mul)
}

/// `⊕` over a sequence of values.
pub fn sum<S: Semiring>(values: impl IntoIterator<Item = S>) -> S {
    values.into_iter().fold(S::zero(), S::add)
}
