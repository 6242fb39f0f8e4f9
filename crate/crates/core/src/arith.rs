//! Exact integer arithmetic helpers shared by every module.
//!
//! All counts and bound values are [`BigCount`]s (arbitrary-precision
//! nonnegative integers); ratios are kept as reduced integer fractions and
//! compared by cross-multiplication. Nothing here touches floating point.

use num_bigint::BigUint;
use num_integer::Integer;
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision nonnegative integer used for all counts and bounds.
pub type BigCount = BigUint;

/// `x` as a [`BigCount`].
pub fn big(x: u64) -> BigCount {
    BigCount::from(x)
}

/// `2^e`, exact.
pub fn pow2(e: u64) -> BigCount {
    BigCount::from(1u32) << e as usize
}

/// `n*(n-1)/2` without overflow for any `n` that fits the vertex limits.
pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Binomial coefficient `C(n, j)` for arbitrary-precision `n` and small `j`.
pub fn binomial_big(n: &BigCount, j: u64) -> BigCount {
    if BigCount::from(j) > *n {
        return BigCount::ZERO;
    }
    let mut res = BigCount::from(1u32);
    for i in 0..j {
        res = res * (n - BigCount::from(i)) / BigCount::from(i + 1);
    }
    res
}

/// Binomial coefficient `C(n, j)` for machine-sized `n`.
pub fn binomial(n: u64, j: u64) -> BigCount {
    binomial_big(&BigCount::from(n), j)
}

/// `j!`, exact.
pub fn factorial(j: u64) -> BigCount {
    let mut res = BigCount::from(1u32);
    for i in 2..=j {
        res *= BigCount::from(i);
    }
    res
}

/// A reduced fraction of two [`BigCount`]s, compared exactly by
/// cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRatio {
    num: BigCount,
    den: BigCount,
}

impl ExactRatio {
    /// Creates `num/den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: BigCount, den: BigCount) -> Self {
        assert!(den != BigCount::ZERO, "zero denominator");
        let g = num.gcd(&den);
        ExactRatio {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn numerator(&self) -> &BigCount {
        &self.num
    }

    pub fn denominator(&self) -> &BigCount {
        &self.den
    }

    /// Exact comparison against another ratio.
    pub fn cmp_ratio(&self, other: &ExactRatio) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }

    /// Exact comparison against the integer `x`.
    pub fn cmp_int(&self, x: u64) -> Ordering {
        self.num.cmp(&(&self.den * BigCount::from(x)))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
