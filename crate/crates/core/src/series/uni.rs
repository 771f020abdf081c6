use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{coeff, Coefficient};
use crate::error::{Error, Result};

/// Univariate power series known exactly through degree `trunc_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    // always trunc_order + 1 entries
    coeffs: Vec<Coefficient>,
}

impl UniSeries {
    pub fn zero(trunc_order: usize) -> Self {
        Self {
            coeffs: vec![Coefficient::zero(); trunc_order + 1],
        }
    }

    pub fn one(trunc_order: usize) -> Self {
        Self::constant(coeff(1), trunc_order)
    }

    pub fn constant(c: Coefficient, trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`. An empty vector yields the zero series at order 0.
    pub fn from_coeffs(mut coeffs: Vec<Coefficient>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Coefficient::zero());
        }
        Self { coeffs }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::from_coeffs(values.iter().map(|&v| coeff(v)).collect())
    }

    /// Polynomial `sum c * y^d` truncated at `trunc_order`; terms beyond it
    /// are dropped.
    pub fn polynomial(terms: &[(usize, i64)], trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        for &(d, c) in terms {
            if d <= trunc_order {
                s.coeffs[d] += coeff(c);
            }
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Result<&Coefficient> {
        self.coeffs.get(degree).ok_or(Error::BeyondTruncation {
            degree,
            order: self.trunc_order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowers the truncation order. Raising it would invent coefficients, so
    /// that is an error.
    pub fn truncate(&self, trunc_order: usize) -> Result<Self> {
        if trunc_order > self.trunc_order() {
            return Err(Error::BeyondTruncation {
                degree: trunc_order,
                order: self.trunc_order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=trunc_order].to_vec(),
        })
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse through the same truncation order.
    ///
    /// `b_0 = 1/a_0`, `b_n = -(1/a_0) * sum_{i=1..n} a_i b_{n-i}`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.trunc_order();
        let inv_a0 = a0.recip();
        let mut out = Vec::with_capacity(n + 1);
        out.push(inv_a0.clone());
        for d in 1..=n {
            let mut acc = Coefficient::zero();
            for i in 1..=d {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[d - i];
                }
            }
            out.push(-(acc * &inv_a0));
        }
        Ok(Self { coeffs: out })
    }

    /// `self / denom`, computed as `self * denom^{-1}`.
    pub fn div(&self, denom: &UniSeries) -> Result<Self> {
        Ok(self * &denom.inverse()?)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Coefficient, &Coefficient) -> Coefficient) -> Self {
        let n = self.trunc_order().min(other.trunc_order());
        Self {
            coeffs: (0..=n).map(|d| f(&self.coeffs[d], &other.coeffs[d])).collect(),
        }
    }
}

impl Add for &UniSeries {
    type Output = UniSeries;
    fn add(self, rhs: &UniSeries) -> UniSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &UniSeries {
    type Output = UniSeries;
    fn sub(self, rhs: &UniSeries) -> UniSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &UniSeries {
    type Output = UniSeries;
    fn mul(self, rhs: &UniSeries) -> UniSeries {
        let n = self.trunc_order().min(rhs.trunc_order());
        let mut coeffs = vec![Coefficient::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UniSeries { coeffs }
    }
}

impl Neg for &UniSeries {
    type Output = UniSeries;
    fn neg(self) -> UniSeries {
        UniSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniSeries {
            type Output = UniSeries;
            fn $m(self, rhs: UniSeries) -> UniSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let a = UniSeries::polynomial(&[(0, 1), (1, 1)], 2);
        let b = UniSeries::polynomial(&[(0, 1), (1, -1)], 2);
        assert_eq!(&a * &b, UniSeries::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn multiplicative_identity() {
        let a = UniSeries::from_ints(&[3, -1, 4, 1, -5]);
        assert_eq!(&a * &UniSeries::one(4), a);
    }

    #[test]
    fn geometric_series_times_one_minus_y() {
        let geo = UniSeries::from_ints(&[1; 11]);
        let f = UniSeries::polynomial(&[(0, 1), (1, -1)], 10);
        assert_eq!(&geo * &f, UniSeries::one(10));
    }

    #[test]
    fn truncation_is_minimum_of_inputs() {
        let a = UniSeries::from_ints(&[1, 2, 3, 4, 5]);
        let b = UniSeries::from_ints(&[1, 1]);
        assert_eq!((&a + &b).trunc_order(), 1);
        assert_eq!((&a * &b).trunc_order(), 1);
        assert_eq!(&a - &b, UniSeries::from_ints(&[0, 1]));
    }

    #[test]
    fn inverse_of_one_minus_y_minus_y4() {
        let f = UniSeries::polynomial(&[(0, 1), (1, -1), (4, -1)], 8);
        let inv = f.inverse().unwrap();
        assert_eq!(inv, UniSeries::from_ints(&[1, 1, 1, 1, 2, 3, 4, 5, 7]));
    }

    #[test]
    fn inverse_trivial_cases() {
        assert_eq!(UniSeries::one(3).inverse().unwrap(), UniSeries::one(3));
        let f = UniSeries::polynomial(&[(0, 1), (1, -1)], 5);
        assert_eq!(f.inverse().unwrap(), UniSeries::from_ints(&[1; 6]));
    }

    #[test]
    fn inverse_with_rational_constant() {
        let f = UniSeries::from_ints(&[2, 1]);
        let inv = f.inverse().unwrap();
        assert_eq!(&f * &inv, UniSeries::one(1));
    }

    #[test]
    fn inverse_requires_nonzero_constant() {
        let f = UniSeries::from_ints(&[0, 1, 1]);
        assert_eq!(f.inverse(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn coefficient_past_truncation_is_an_error() {
        let f = UniSeries::from_ints(&[1, 2, 3]);
        assert_eq!(f.coeff(2).unwrap(), &coeff(3));
        assert_eq!(f.coeff(3), Err(Error::BeyondTruncation { degree: 3, order: 2 }));
        assert!(f.truncate(5).is_err());
        assert_eq!(f.truncate(1).unwrap(), UniSeries::from_ints(&[1, 2]));
    }
}
