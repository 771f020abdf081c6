use num_traits::Zero;

use super::{coeff, Coefficient, UniSeries, Weights};
use crate::error::{Error, Result};

/// Bivariate series in `x, y` truncated by total weight.
///
/// Only monomials `x^j y^k` with `j * w_x + k * w_y <= max_weight` are
/// stored. Storage is dense and triangular: `rows[j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    weights: Weights,
    max_weight: usize,
    rows: Vec<Vec<Coefficient>>,
}

/// Which variable's exponent is held fixed when slicing a [`BiSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceAxis {
    /// Fix the power of `x`; the slice is a series in `y`.
    XPower(usize),
    /// Fix the power of `y`; the slice is a series in `x`.
    YPower(usize),
}

impl BiSeries {
    pub fn zero(weights: Weights, max_weight: usize) -> Self {
        assert!(weights.x > 0 && weights.y > 0, "weights must be positive");
        let rows = (0..=max_weight / weights.x)
            .map(|j| vec![Coefficient::zero(); (max_weight - j * weights.x) / weights.y + 1])
            .collect();
        Self {
            weights,
            max_weight,
            rows,
        }
    }

    pub fn one(weights: Weights, max_weight: usize) -> Self {
        let mut s = Self::zero(weights, max_weight);
        s.rows[0][0] = coeff(1);
        s
    }

    /// Polynomial `sum c * x^j y^k`; terms beyond the weight bound are
    /// dropped since they cannot affect any stored coefficient.
    pub fn polynomial(weights: Weights, max_weight: usize, terms: &[((usize, usize), i64)]) -> Self {
        let mut s = Self::zero(weights, max_weight);
        for &((j, k), c) in terms {
            if weights.of(j, k) <= max_weight {
                s.rows[j][k] += coeff(c);
            }
        }
        s
    }

    /// Lifts a univariate series in `y` (or `x`) into the bivariate grid.
    /// Coefficients beyond the weight bound are dropped; the input must
    /// reach far enough to fill every stored slot.
    pub fn from_uni(weights: Weights, max_weight: usize, s: &UniSeries, in_y: bool) -> Result<Self> {
        let mut out = Self::zero(weights, max_weight);
        if in_y {
            for k in 0..out.rows[0].len() {
                out.rows[0][k] = s.coeff(k)?.clone();
            }
        } else {
            for j in 0..out.rows.len() {
                out.rows[j][0] = s.coeff(j)?.clone();
            }
        }
        Ok(out)
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn contains(&self, j: usize, k: usize) -> bool {
        self.weights.of(j, k) <= self.max_weight
    }

    pub fn coeff(&self, j: usize, k: usize) -> Result<&Coefficient> {
        if !self.contains(j, k) {
            return Err(Error::OutsideWeightBound {
                j,
                k,
                max_weight: self.max_weight,
            });
        }
        Ok(&self.rows[j][k])
    }

    pub(crate) fn coeff_mut(&mut self, j: usize, k: usize) -> Result<&mut Coefficient> {
        if !self.contains(j, k) {
            return Err(Error::OutsideWeightBound {
                j,
                k,
                max_weight: self.max_weight,
            });
        }
        Ok(&mut self.rows[j][k])
    }

    /// All stored monomials with their coefficients, in `(j, k)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Coefficient)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().map(move |(k, c)| ((j, k), c)))
    }

    /// Stored monomials ordered by increasing weight, ties by increasing
    /// `y` power.
    pub fn monomials_by_weight(&self) -> Vec<(usize, usize)> {
        let mut idx: Vec<_> = self.iter().map(|(jk, _)| jk).collect();
        idx.sort_by_key(|&(j, k)| (self.weights.of(j, k), k));
        idx
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|(_, c)| c.is_zero())
    }

    /// Restricts to a smaller weight bound.
    pub fn restrict(&self, max_weight: usize) -> Result<Self> {
        if max_weight > self.max_weight {
            return Err(Error::BeyondTruncation {
                degree: max_weight,
                order: self.max_weight,
            });
        }
        let mut out = Self::zero(self.weights, max_weight);
        for (j, row) in out.rows.iter_mut().enumerate() {
            let len = row.len();
            row.clone_from_slice(&self.rows[j][..len]);
        }
        Ok(out)
    }

    fn check_weights(&self, other: &Self) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::WeightMismatch {
                expected: self.weights,
                found: other.weights,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Coefficient, &Coefficient) -> Coefficient) -> Result<Self> {
        self.check_weights(other)?;
        let mut out = Self::zero(self.weights, self.max_weight.min(other.max_weight));
        for (j, row) in out.rows.iter_mut().enumerate() {
            for (k, c) in row.iter_mut().enumerate() {
                *c = f(&self.rows[j][k], &other.rows[j][k]);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self {
            weights: self.weights,
            max_weight: self.max_weight,
            rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self {
            weights: self.weights,
            max_weight: self.max_weight,
            rows: self.rows.iter().map(|r| r.iter().map(|a| a * c).collect()).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_weights(other)?;
        let mut out = Self::zero(self.weights, self.max_weight.min(other.max_weight));
        let w = self.weights;
        let bound = out.max_weight;
        for ((j1, k1), a) in self.iter() {
            if a.is_zero() || w.of(j1, k1) > bound {
                continue;
            }
            for ((j2, k2), b) in other.iter() {
                if b.is_zero() || w.of(j1 + j2, k1 + k2) > bound {
                    continue;
                }
                out.rows[j1 + j2][k1 + k2] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse under the same weight bound.
    pub fn inverse(&self) -> Result<Self> {
        let a00 = &self.rows[0][0];
        if a00.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_a00 = a00.recip();
        let mut out = Self::zero(self.weights, self.max_weight);
        out.rows[0][0] = inv_a00.clone();
        // row-major order visits every (j - j', k - k') before (j, k)
        for j in 0..out.rows.len() {
            for k in 0..out.rows[j].len() {
                if j == 0 && k == 0 {
                    continue;
                }
                let mut acc = Coefficient::zero();
                for jp in 0..=j {
                    for kp in 0..=k {
                        if jp == 0 && kp == 0 {
                            continue;
                        }
                        let a = &self.rows[jp][kp];
                        if !a.is_zero() {
                            acc += a * &out.rows[j - jp][k - kp];
                        }
                    }
                }
                out.rows[j][k] = -(acc * &inv_a00);
            }
        }
        Ok(out)
    }

    /// `self / denom`, computed as `self * denom^{-1}`.
    pub fn try_div(&self, denom: &Self) -> Result<Self> {
        self.try_mul(&denom.inverse()?)
    }

    /// The substitution `x := y^2`, mapping `x^j y^k` to `y^(2j+k)`.
    /// Requires weights `(2, 1)` so that the truncation carries over exactly.
    pub fn substitute_x(&self) -> Result<UniSeries> {
        if self.weights != Weights::DEGREE {
            return Err(Error::WeightMismatch {
                expected: Weights::DEGREE,
                found: self.weights,
            });
        }
        let mut out = vec![Coefficient::zero(); self.max_weight + 1];
        for ((j, k), c) in self.iter() {
            out[2 * j + k] += c;
        }
        Ok(UniSeries::from_coeffs(out))
    }

    /// Taylor coefficient in one variable, as a series in the other.
    pub fn extract_slice(&self, axis: SliceAxis) -> Result<UniSeries> {
        match axis {
            SliceAxis::XPower(j) => {
                let row = self.rows.get(j).ok_or(Error::IndexOutOfRange {
                    index: j,
                    limit: self.rows.len() - 1,
                })?;
                Ok(UniSeries::from_coeffs(row.clone()))
            }
            SliceAxis::YPower(k) => {
                if k * self.weights.y > self.max_weight {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        limit: self.max_weight / self.weights.y,
                    });
                }
                let col = self
                    .rows
                    .iter()
                    .take_while(|row| row.len() > k)
                    .map(|row| row[k].clone())
                    .collect();
                Ok(UniSeries::from_coeffs(col))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEG: Weights = Weights::DEGREE;

    #[test]
    fn storage_respects_weight_bound() {
        let s = BiSeries::zero(DEG, 7);
        assert!(s.coeff(3, 1).is_ok());
        assert!(s.coeff(0, 7).is_ok());
        assert_eq!(
            s.coeff(4, 0),
            Err(Error::OutsideWeightBound {
                j: 4,
                k: 0,
                max_weight: 7
            })
        );
        assert_eq!(s.iter().count(), 8 + 6 + 4 + 2);
    }

    #[test]
    fn inverse_of_one_minus_y_minus_x2() {
        let f = BiSeries::polynomial(DEG, 6, &[((0, 0), 1), ((0, 1), -1), ((2, 0), -1)]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(2, 2).unwrap(), &coeff(3));
        assert_eq!(inv.try_mul(&f).unwrap(), BiSeries::one(DEG, 6));
    }

    #[test]
    fn inverse_of_one_minus_x3() {
        let f = BiSeries::polynomial(DEG, 7, &[((0, 0), 1), ((3, 0), -1)]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(3, 0).unwrap(), &coeff(1));
        assert_eq!(inv.coeff(0, 0).unwrap(), &coeff(1));
        assert!(inv.coeff(6, 0).is_err());
        let nonzero: Vec<_> = inv.iter().filter(|(_, c)| !c.is_zero()).map(|(jk, _)| jk).collect();
        assert_eq!(nonzero, vec![(0, 0), (3, 0)]);
    }

    #[test]
    fn identity_and_zero_constant() {
        let a = BiSeries::polynomial(DEG, 5, &[((0, 0), 2), ((1, 1), -3), ((0, 4), 5)]);
        assert_eq!(a.try_mul(&BiSeries::one(DEG, 5)).unwrap(), a);
        assert_eq!(
            BiSeries::polynomial(DEG, 5, &[((1, 0), 1)]).inverse(),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn weight_mismatch_is_rejected() {
        let a = BiSeries::one(DEG, 4);
        let b = BiSeries::one(Weights::MZV, 4);
        assert!(matches!(a.try_mul(&b), Err(Error::WeightMismatch { .. })));
        assert!(matches!(a.try_add(&b), Err(Error::WeightMismatch { .. })));
        assert!(matches!(b.substitute_x(), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn mixed_bounds_truncate_to_minimum() {
        let a = BiSeries::one(DEG, 9);
        let b = BiSeries::one(DEG, 4);
        assert_eq!(a.try_add(&b).unwrap().max_weight(), 4);
        assert_eq!(a.try_mul(&b).unwrap(), BiSeries::one(DEG, 4));
    }

    #[test]
    fn substitute_monomial_and_zero() {
        let a = BiSeries::polynomial(DEG, 5, &[((1, 1), 1)]);
        assert_eq!(a.substitute_x().unwrap(), UniSeries::polynomial(&[(3, 1)], 5));
        assert!(BiSeries::zero(DEG, 5).substitute_x().unwrap().is_zero());
    }

    #[test]
    fn slices() {
        let a = BiSeries::polynomial(DEG, 6, &[((0, 0), 1), ((1, 2), 4), ((2, 2), 7), ((3, 0), 2)]);
        assert_eq!(
            a.extract_slice(SliceAxis::YPower(2)).unwrap(),
            UniSeries::from_ints(&[0, 4, 7])
        );
        assert_eq!(
            a.extract_slice(SliceAxis::XPower(1)).unwrap(),
            UniSeries::from_ints(&[0, 0, 4, 0, 0])
        );
        assert_eq!(
            a.extract_slice(SliceAxis::XPower(4)),
            Err(Error::IndexOutOfRange { index: 4, limit: 3 })
        );
        assert!(a.extract_slice(SliceAxis::YPower(7)).is_err());
        assert!(BiSeries::zero(DEG, 6)
            .extract_slice(SliceAxis::YPower(0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn monomial_order_is_weight_then_y() {
        let s = BiSeries::zero(Weights::MZV, 6);
        assert_eq!(
            s.monomials_by_weight(),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (3, 0), (0, 2)]
        );
    }
}
