//! Exact truncated power series in one and two variables.
//!
//! Every coefficient is an arbitrary-precision rational. A series carries its
//! truncation explicitly and any request beyond it is an error rather than a
//! silent zero. Binary operations are valid up to the smaller of the two
//! input truncations.

mod bi;
mod uni;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use bi::{BiSeries, SliceAxis};
pub use uni::UniSeries;

/// Exact rational coefficient. `BigRational` keeps every value in lowest
/// terms with a positive denominator.
pub type Coefficient = BigRational;

pub fn coeff(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coeff_from_bigint(n: BigInt) -> Coefficient {
    BigRational::from_integer(n)
}

/// Converts an exact coefficient to `i64`, failing if it is fractional or
/// does not fit.
pub fn coeff_to_i64(c: &Coefficient, index: impl fmt::Display) -> Result<i64> {
    if !c.is_integer() {
        return Err(Error::NonIntegerCoefficient {
            index: index.to_string(),
            value: c.to_string(),
        });
    }
    c.to_integer().to_i64().ok_or_else(|| Error::NonIntegerCoefficient {
        index: index.to_string(),
        value: c.to_string(),
    })
}

/// Per-variable weights of a bivariate series: the monomial `x^j y^k` has
/// weight `j * x + k * y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weights {
    pub x: usize,
    pub y: usize,
}

impl Weights {
    pub const fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }

    /// Grading `m = 2j + k` used for chinese-character diagrams.
    pub const DEGREE: Weights = Weights::new(2, 1);

    /// Grading `w = 2j + 3d` used for multiple zeta values.
    pub const MZV: Weights = Weights::new(2, 3);

    pub fn of(&self, j: usize, k: usize) -> usize {
        j * self.x + k * self.y
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Coefficients of `(1 - t)^e` for an integer exponent `e`, up to `t^n`.
///
/// The `i`-th entry is `(-1)^i * C(e, i)` with the generalized binomial
/// coefficient, so negative `e` yields the negative-binomial expansion.
pub fn binomial_power(e: i64, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for i in 1..=n {
        // C(e, i) = C(e, i-1) * (e - i + 1) / i, exact at every step
        c = c * BigInt::from(e - i as i64 + 1) / BigInt::from(i);
        if c.is_zero() {
            out.resize(n + 1, BigInt::zero());
            return out;
        }
        out.push(if i % 2 == 0 { c.clone() } else { -c.clone() });
    }
    out
}

pub(crate) fn is_unit(c: &Coefficient) -> bool {
    c.is_one()
}

#[cfg(test)]
pub(crate) fn nonnegative(c: &Coefficient) -> bool {
    *c >= Coefficient::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomial_power_positive_exponent_terminates() {
        assert_eq!(binomial_power(3, 5), ints(&[1, -3, 3, -1, 0, 0]));
        assert_eq!(binomial_power(0, 3), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn binomial_power_negative_exponent() {
        // (1 - t)^-1 and (1 - t)^-2
        assert_eq!(binomial_power(-1, 4), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(binomial_power(-2, 4), ints(&[1, 2, 3, 4, 5]));
        // (1 - t)^-3: C(i + 2, 2)
        assert_eq!(binomial_power(-3, 4), ints(&[1, 3, 6, 10, 15]));
    }

    #[test]
    fn coeff_to_i64_rejects_fractions() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(matches!(
            coeff_to_i64(&half, "y^1"),
            Err(Error::NonIntegerCoefficient { .. })
        ));
        assert_eq!(coeff_to_i64(&coeff(-7), "y^0").unwrap(), -7);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = BigRational::new(BigInt::from(3), BigInt::from(7));
        let b = BigRational::new(BigInt::from(-11), BigInt::from(13));
        assert_eq!((&a + &b) - &b, a);
        let canon = BigRational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(canon.denom(), &BigInt::from(3));
        assert_eq!(canon.numer(), &BigInt::from(-2));
    }
}
