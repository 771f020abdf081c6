//! Counts of irreducible multiple zeta values `D(w, d)` and irreducible
//! alternating Euler sums `M(w, d)` by weight and depth.
//!
//! Both come from peeling a product `prod_{j>=0, d>0} (1 - x^j y^d)^(E)`
//! with weights `(2, 3)`, so the factor `x^j y^d` sits at weight
//! `w = 2j + 3d`.

use crate::error::{Error, Result};
use crate::generators::{g_series, Poly, RationalGf, Var};
use crate::series::{coeff_to_i64, BiSeries, Weights};
use crate::transforms::{expand_bi, peel_bi, BiExponents, ProductForm};

/// Highest depth of `D(3d, d)` covered by the published check of the
/// lowest-weight generator `1/(1 - y - y^4)`.
pub const VERIFIED_LOWEST_WEIGHT_DEPTH: usize = 7;

fn denom_x(m: usize) -> Poly {
    Poly::in_x(&[(0, 1), (m, -1)])
}

/// `1 - y/(1-x) - (y^2/(1-x^2)) * (y^2 - x^3)/(1-x^3)`.
pub fn build_mzv_rhs(max_weight: usize) -> Result<BiSeries> {
    let w = Weights::MZV;
    let third =
        RationalGf::new(Poly::new(&[(0, 4, 1), (3, 2, -1)]), vec![denom_x(2), denom_x(3)])?.expand_bi(w, max_weight)?;
    build_eul_rhs(max_weight)?.try_sub(&third)
}

/// `1 - y/(1-x)`.
pub fn build_eul_rhs(max_weight: usize) -> Result<BiSeries> {
    let w = Weights::MZV;
    let second = RationalGf::new(Poly::new(&[(0, 1, 1)]), vec![denom_x(1)])?.expand_bi(w, max_weight)?;
    BiSeries::one(w, max_weight).try_sub(&second)
}

/// Maps `(w, d)` to the factor index `(j, d)`; `None` unless `w >= 3d` and
/// `w - 3d` is even.
pub fn factor_index(w: usize, d: usize) -> Option<(usize, usize)> {
    let rest = w.checked_sub(3 * d)?;
    (rest % 2 == 0).then_some((rest / 2, d))
}

/// Peeled exponents for both generators up to a common weight bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MzvCounts {
    max_weight: usize,
    mzv: BiExponents,
    euler: BiExponents,
}

impl MzvCounts {
    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `D(w, d)`; zero when `(w, d)` is not an admissible grading.
    pub fn d(&self, w: usize, d: usize) -> i64 {
        factor_index(w, d).map_or(0, |jd| self.mzv.get(jd))
    }

    /// `M(w, d)`.
    pub fn m(&self, w: usize, d: usize) -> i64 {
        factor_index(w, d).map_or(0, |jd| self.euler.get(jd))
    }

    pub fn mzv_exponents(&self) -> &BiExponents {
        &self.mzv
    }

    pub fn euler_exponents(&self) -> &BiExponents {
        &self.euler
    }

    /// Every admissible `(w, d)` with `d >= 1` and `w <= max_weight`, ordered
    /// by weight then depth.
    pub fn gradings(&self) -> Vec<(usize, usize)> {
        (1..=self.max_weight)
            .flat_map(|w| (1..=w / 3).map(move |d| (w, d)))
            .filter(|&(w, d)| factor_index(w, d).is_some())
            .collect()
    }

    /// Lowest weight at which `D` and `M` differ, with every depth where they
    /// differ at that weight.
    pub fn first_difference(&self) -> Option<(usize, Vec<usize>)> {
        let differ = |(w, d): &(usize, usize)| self.d(*w, *d) != self.m(*w, *d);
        let (w, _) = self.gradings().into_iter().find(differ)?;
        let depths = (1..=w / 3).filter(|&d| differ(&(w, d))).collect();
        Some((w, depths))
    }

    /// First `(w, d)`, by weight then depth, with `D(w, d) > M(w, d)`: an
    /// irreducible MZV that becomes reducible once Euler sums are allowed.
    pub fn first_mzv_excess(&self) -> Option<(usize, usize)> {
        self.gradings().into_iter().find(|&(w, d)| self.d(w, d) > self.m(w, d))
    }

    /// `D(3d, d)` for `d = 1..=max_depth`, read off the `x = 0` factors.
    pub fn lowest_weight(&self, max_depth: usize) -> Vec<i64> {
        (1..=max_depth).map(|d| self.d(3 * d, d)).collect()
    }

    /// Checks the depth-1, depth-2 and depth-3 diagonals against `g_0`,
    /// `g_1` and `g_2`:
    /// `D(3+2j, 1) = [x^j] g_0`, `D(8+2j, 2) = [x^j] g_1`,
    /// `D(11+2j, 3) - D(8+2j, 2) = [x^(j-1)] g_2` (zero at `j = 0`).
    pub fn check_diagonals(&self) -> Result<()> {
        let w = self.max_weight;
        let depth1 = w.saturating_sub(3) / 2;
        let g0 = g_series(0, depth1)?;
        for j in 0..=depth1 {
            if 3 + 2 * j <= w {
                expect_eq(self.d(3 + 2 * j, 1), g0.coeff(j)?, format!("D({}, 1)", 3 + 2 * j))?;
            }
        }
        let depth2 = w.saturating_sub(8) / 2;
        let g1 = g_series(1, depth2)?;
        for j in 0..=depth2 {
            if 8 + 2 * j <= w {
                expect_eq(self.d(8 + 2 * j, 2), g1.coeff(j)?, format!("D({}, 2)", 8 + 2 * j))?;
            }
        }
        let depth3 = w.saturating_sub(11) / 2;
        let g2 = g_series(2, depth3)?;
        for j in 0..=depth3 {
            if 11 + 2 * j > w {
                continue;
            }
            let diff = self.d(11 + 2 * j, 3) - self.d(8 + 2 * j, 2);
            let expected = if j == 0 {
                0
            } else {
                coeff_to_i64(g2.coeff(j - 1)?, "g2")?
            };
            if diff != expected {
                return Err(Error::Inconsistent(format!(
                    "D({}, 3) - D({}, 2) = {diff}, expected {expected}",
                    11 + 2 * j,
                    8 + 2 * j
                )));
            }
        }
        Ok(())
    }

    /// Re-expands both products and compares with the generators.
    pub fn check_reexpansion(&self) -> Result<()> {
        let w = self.max_weight;
        let pairs = [
            (&self.mzv, build_mzv_rhs(w)?, "MZV"),
            (&self.euler, build_eul_rhs(w)?, "Euler sum"),
        ];
        for (exp, rhs, name) in pairs {
            if expand_bi(exp, ProductForm::ProductPlain, Weights::MZV, w)? != rhs {
                return Err(Error::Inconsistent(format!(
                    "{name} product does not re-expand to its generator"
                )));
            }
        }
        Ok(())
    }
}

fn expect_eq(actual: i64, expected: &crate::series::Coefficient, what: String) -> Result<()> {
    if crate::series::coeff(actual) != *expected {
        return Err(Error::Inconsistent(format!("{what} = {actual}, expected {expected}")));
    }
    Ok(())
}

/// Peels both generators and runs the diagonal and re-expansion checks.
pub fn mzv_counts(max_weight: usize) -> Result<MzvCounts> {
    let mzv = peel_bi(&build_mzv_rhs(max_weight)?, ProductForm::ProductPlain)?;
    let euler = peel_bi(&build_eul_rhs(max_weight)?, ProductForm::ProductPlain)?;
    for (exp, name) in [(&mzv, "MZV"), (&euler, "Euler sum")] {
        if let Some(((j, d), e)) = exp.iter().find(|&((_, d), _)| d == 0) {
            return Err(Error::Inconsistent(format!(
                "{name} product has a pure x factor x^{j} y^{d} (exponent {e})"
            )));
        }
    }
    let counts = MzvCounts { max_weight, mzv, euler };
    counts.check_diagonals()?;
    counts.check_reexpansion()?;
    Ok(counts)
}

/// The `x = 0` slice of the MZV generator, as a series in `y`.
pub fn lowest_weight_generator(max_depth: usize) -> Result<crate::series::UniSeries> {
    RationalGf::new(Poly::in_y(&[(0, 1), (1, -1), (4, -1)]), vec![])?.expand(Var::Y, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{coeff, SliceAxis, UniSeries};

    #[test]
    fn mzv_rhs_basics() {
        let s = build_mzv_rhs(12).unwrap();
        assert_eq!(s.coeff(0, 0).unwrap(), &coeff(1));
        assert_eq!(s.coeff(0, 1).unwrap(), &coeff(-1));
        assert_eq!(
            s.extract_slice(SliceAxis::XPower(0)).unwrap(),
            UniSeries::polynomial(&[(0, 1), (1, -1), (4, -1)], 4)
        );
    }

    #[test]
    fn eul_rhs_basics() {
        let s = build_eul_rhs(15).unwrap();
        for j in 0..=6 {
            assert_eq!(s.coeff(j, 1).unwrap(), &coeff(-1));
        }
        for ((_, d), c) in s.iter() {
            if d >= 2 {
                assert_eq!(c, &coeff(0));
            }
        }
    }

    #[test]
    fn counts_at_weight_23() {
        let c = mzv_counts(23).unwrap();
        assert_eq!(c.d(23, 7), 4);
        assert_eq!(c.d(12, 4), 1);
        assert_eq!(c.m(12, 4), 0);
        assert_eq!(c.first_difference(), Some((12, vec![2, 4])));
        assert_eq!(c.first_mzv_excess(), Some((12, 4)));
        assert_eq!((c.d(12, 2), c.m(12, 2)), (1, 2));
        for w in (3..=23).step_by(2) {
            assert_eq!(c.d(w, 1), 1);
            assert_eq!(c.m(w, 1), 1);
        }
        assert_eq!(c.d(8, 2), 1);
        assert_eq!(c.d(11, 3), 1);
    }

    #[test]
    fn factor_index_admissibility() {
        assert_eq!(factor_index(23, 7), Some((1, 7)));
        assert_eq!(factor_index(12, 4), Some((0, 4)));
        assert_eq!(factor_index(12, 3), None);
        assert_eq!(factor_index(5, 2), None);
    }

    #[test]
    fn lowest_weight_matches_peel_of_slice() {
        let c = mzv_counts(21).unwrap();
        assert_eq!(c.lowest_weight(7), vec![1, 0, 0, 1, 1, 1, 1]);
        assert_eq!(
            lowest_weight_generator(4).unwrap(),
            UniSeries::from_ints(&[1, -1, 0, 0, -1])
        );
    }
}
