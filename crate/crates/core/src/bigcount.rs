//! Exact nonnegative integers and fixed-point roots of exact ratios.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul};
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision count. Displays and parses as a decimal string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow2(k: u32) -> Self {
        BigCount(BigUint::one() << k as usize)
    }

    pub fn factorial(n: u64) -> Self {
        BigCount((1..=n).fold(BigUint::one(), |acc, k| acc * k))
    }

    pub fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return BigCount::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigUint::one();
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        BigCount(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        BigCount(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Nearest `f64`; very large values become `inf`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `log2` accurate to double precision for any size.
    pub fn log2(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.0 >> shift as usize).to_f64().unwrap();
        libm::log2(top) + shift as f64
    }

    pub fn to_decimal_string(&self) -> String {
        self.0.to_str_radix(10)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u128> for BigCount {
    fn from(v: u128) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Mul<&BigCount> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(self.0 * &rhs.0)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBigCountError;

impl fmt::Display for ParseBigCountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("not a nonnegative decimal integer")
    }
}

impl FromStr for BigCount {
    type Err = ParseBigCountError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseBigCountError);
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigCount)
            .ok_or(ParseBigCountError)
    }
}

/// A nonnegative fixed-point decimal `mantissa / 10^scale`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decimal {
    mantissa: BigUint,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigUint, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn to_f64(&self) -> f64 {
        // good to ~1e-15 relative even when the mantissa exceeds 2^53
        let s = alloc::format!("{self}");
        s.parse().unwrap_or(f64::NAN)
    }

    /// `floor((num / den)^(1/root) · 10^scale) / 10^scale`, exact.
    pub fn root_of_ratio(num: &BigUint, den: &BigUint, root: u32, scale: u32) -> Decimal {
        assert!(!den.is_zero() && root > 0);
        let ten_pow = num_traits::pow(BigUint::from(10u32), (scale * root) as usize);
        let scaled = num * ten_pow / den;
        Decimal {
            mantissa: scaled.nth_root(root),
            scale,
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.to_str_radix(10);
        let scale = self.scale as usize;
        if scale == 0 {
            return f.write_str(&digits);
        }
        if digits.len() <= scale {
            f.write_str("0.")?;
            for _ in digits.len()..scale {
                f.write_str("0")?;
            }
            f.write_str(&digits)
        } else {
            let (int, frac) = digits.split_at(digits.len() - scale);
            write!(f, "{int}.{frac}")
        }
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(BigCount::factorial(0), BigCount::one());
        assert_eq!(BigCount::factorial(20).to_u64(), Some(2432902008176640000));
        assert_eq!(BigCount::binomial(26, 13).to_u64(), Some(10400600));
        assert_eq!(BigCount::binomial(3, 5), BigCount::zero());
    }

    #[test]
    fn parse_and_display() {
        let s = "131576429145341435860520294400";
        let c: BigCount = s.parse().unwrap();
        assert_eq!(c.to_string(), s);
        assert!("-1".parse::<BigCount>().is_err());
        assert!("".parse::<BigCount>().is_err());
    }

    #[test]
    fn decimal_root() {
        let d = Decimal::root_of_ratio(&BigUint::from(2u32), &BigUint::from(1u32), 2, 8);
        assert_eq!(d.to_string(), "1.41421356");
        let d = Decimal::root_of_ratio(&BigUint::from(1u32), &BigUint::from(64u32), 3, 3);
        assert_eq!(d.to_string(), "0.250");
        let d = Decimal::root_of_ratio(&BigUint::from(256u32), &BigUint::from(1u32), 4, 0);
        assert_eq!(d.to_string(), "4");
    }

    #[test]
    fn log2_large() {
        let c = BigCount::pow2(300) * BigCount::from(3u64);
        assert!((c.log2() - (300.0 + libm::log2(3.0))).abs() < 1e-12);
    }
}
