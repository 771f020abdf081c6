//! Growth root and limiting constant of the primitive counts.
//!
//! Floating point is confined to this module. Exact counts come from
//! [`crate::generators`] and are converted at the last step.

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::generators::{p_closed, primitive_counts};

fn quartic(r: f64) -> f64 {
    r.powi(4) - r.powi(3) - 1.0
}

fn quartic_derivative(r: f64) -> f64 {
    4.0 * r.powi(3) - 3.0 * r.powi(2)
}

/// The real root of `r^4 = r^3 + 1` in `(1, 2)`.
///
/// Bisection on `[1, 2]` (where `f(1) = -1`, `f(2) = 7`) narrows the bracket,
/// then a few Newton steps polish the root.
pub fn growth_root() -> f64 {
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    debug_assert!(quartic(lo) < 0.0 && quartic(hi) > 0.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if quartic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut r = 0.5 * (lo + hi);
    for _ in 0..4 {
        let step = quartic(r) / quartic_derivative(r);
        r -= step;
        if step.abs() < f64::EPSILON * r {
            break;
        }
    }
    r
}

fn poly_eval(terms: &[(i32, f64)], y: f64) -> f64 {
    terms.iter().map(|&(d, c)| c * y.powi(d)).sum()
}

/// `lim_{y -> 1/r} (1 - r y) p(y)`, evaluated analytically on the closed form
/// of `p(y)`.
///
/// All factors are regular at `y = 1/r` except `1 - y - y^4`, whose ratio
/// with `1 - r y` tends to `r / (1 + 4/r^3) = r^4 / (r^3 + 4)`.
pub fn growth_constant() -> f64 {
    let r = growth_root();
    let y = r.recip();
    let numerator = poly_eval(&[(4, 1.0), (8, -1.0), (10, -1.0), (12, -1.0), (17, -1.0)], y);
    let regular: f64 = [1, 2, 3, 6].iter().map(|&m| 1.0 - y.powi(m)).product();
    let vanishing_ratio = r.powi(4) / (r.powi(3) + 4.0);
    numerator * vanishing_ratio / regular
}

/// Numerical cross-check of [`growth_constant`]: evaluates
/// `(1 - r y) p(y)` on exact partial sums of `p` at points `y = t/r` with
/// `t -> 1` from below and Richardson-extrapolates to `t = 1`.
pub fn growth_constant_by_extrapolation(terms: usize) -> Result<f64> {
    let r = growth_root();
    let coeffs: Vec<f64> = p_closed(terms)?
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    // coefficients of (1 - r y) p(y); rescaled by r^-m to keep magnitudes near C
    let scaled: Vec<f64> = (0..coeffs.len())
        .map(|m| {
            let prev = if m == 0 { 0.0 } else { coeffs[m - 1] };
            (coeffs[m] - r * prev) / r.powi(m as i32)
        })
        .collect();
    let at = |t: f64| -> f64 {
        // Horner in t
        scaled.iter().rev().fold(0.0, |acc, c| acc * t + c)
    };
    // F(1 - h) = C + a h + b h^2 + ...; three-point Richardson in h
    let h = 1.0 / 65536.0;
    let (f1, f2, f4) = (at(1.0 - h), at(1.0 - h / 2.0), at(1.0 - h / 4.0));
    let r1 = 2.0 * f2 - f1;
    let r2 = 2.0 * f4 - f2;
    Ok((4.0 * r2 - r1) / 3.0)
}

/// `(m, P_m / r^m)` for `1 <= m <= max_m`.
pub fn ratio_table(max_m: usize) -> Result<Vec<(usize, f64)>> {
    let r = growth_root();
    Ok(primitive_counts(max_m)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let m = i + 1;
            (m, p.to_f64().unwrap_or(f64::NAN) / r.powi(m as i32))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub r: f64,
    pub c: f64,
    /// `|r^4 - r^3 - 1|`
    pub residual: f64,
    /// `|1 - 1/r - 1/r^4|`
    pub reciprocal_residual: f64,
    pub counts: Vec<i64>,
    pub ratios: Vec<(usize, f64)>,
}

impl AsymptoticReport {
    /// `|P_m/r^m - C|` is strictly decreasing over the last `window` entries.
    pub fn converging(&self, window: usize) -> bool {
        let tail: Vec<f64> = self
            .ratios
            .iter()
            .rev()
            .take(window)
            .map(|&(_, q)| (q - self.c).abs())
            .collect();
        tail.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn report(max_m: usize) -> Result<AsymptoticReport> {
    let r = growth_root();
    Ok(AsymptoticReport {
        r,
        c: growth_constant(),
        residual: quartic(r).abs(),
        reciprocal_residual: (1.0 - r.recip() - r.powi(-4)).abs(),
        counts: primitive_counts(max_m)?,
        ratios: ratio_table(max_m)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_value_and_residuals() {
        let r = growth_root();
        assert!((r - 1.38027756909761).abs() < 1e-12);
        assert!(quartic(r).abs() < 1e-13);
        assert!((r.recip() + r.powi(-4) - 1.0).abs() < 1e-12);
        assert!(quartic(1.0) * quartic(2.0) < 0.0);
    }

    #[test]
    fn constant_value() {
        assert!((growth_constant() - 1.06260548918755).abs() < 1e-11);
    }

    #[test]
    fn constant_routes_agree() {
        let numeric = growth_constant_by_extrapolation(200).unwrap();
        assert!((numeric - growth_constant()).abs() < 1e-10, "{numeric}");
    }

    #[test]
    fn ratio_table_first_entry() {
        let t = ratio_table(2).unwrap();
        assert_eq!(t[0].0, 1);
        assert!((t[0].1 - 1.0 / growth_root()).abs() < 1e-15);
        assert!((t[0].1 - 0.7245).abs() < 1e-4);
    }

    #[test]
    fn convergence_towards_constant() {
        assert!(report(60).unwrap().converging(10));
    }
}
