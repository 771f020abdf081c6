//! Euler transform, its inverse by product peeling, and a brute-force
//! multiset counter used as an independent oracle.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::series::{binomial_power, coeff_from_bigint, is_unit, BiSeries, Coefficient, UniSeries, Weights};

/// Sign convention of an infinite product representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductForm {
    /// `s = prod (1 - t)^(-e_t)`: the Euler transform.
    ProductOfInverses,
    /// `s = prod (1 - t)^(e_t)`.
    ProductPlain,
}

impl ProductForm {
    /// Exponent applied to `(1 - t)` when the factor carries exponent `e`.
    fn factor_exponent(self, e: i64) -> i64 {
        match self {
            ProductForm::ProductOfInverses => -e,
            ProductForm::ProductPlain => e,
        }
    }
}

/// Integer exponents over a grading. Absent indices are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedExponents<I: Ord> {
    entries: BTreeMap<I, i64>,
}

pub type UniExponents = GradedExponents<usize>;
/// Indexed by `(j, k)`, the powers of `x` and `y` in the factor `1 - x^j y^k`.
pub type BiExponents = GradedExponents<(usize, usize)>;

impl<I: Ord + Copy> GradedExponents<I> {
    pub fn new() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, index: I) -> i64 {
        self.entries.get(&index).copied().unwrap_or(0)
    }

    pub fn set(&mut self, index: I, value: i64) {
        if value == 0 {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    /// Nonzero entries in index order.
    pub fn iter(&self) -> impl Iterator<Item = (I, i64)> + '_ {
        self.entries.iter().map(|(&i, &e)| (i, e))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(I) -> bool) -> Self {
        self.iter().filter(|&(i, _)| keep(i)).collect()
    }
}

impl<I: Ord + Copy> Default for GradedExponents<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Ord + Copy> FromIterator<(I, i64)> for GradedExponents<I> {
    fn from_iter<T: IntoIterator<Item = (I, i64)>>(iter: T) -> Self {
        let mut out = Self::new();
        for (i, e) in iter {
            out.set(i, e);
        }
        out
    }
}

impl UniExponents {
    /// Exponents `e_1, e_2, ...` from a slice starting at degree 1.
    pub fn from_sequence(values: &[i64]) -> Self {
        values.iter().enumerate().map(|(i, &e)| (i + 1, e)).collect()
    }

    /// `e_1..=e_max` as a dense vector.
    pub fn to_sequence(&self, max_degree: usize) -> Vec<i64> {
        (1..=max_degree).map(|m| self.get(m)).collect()
    }
}

/// `(1 - y^step)^e` through degree `trunc`.
fn uni_factor(step: usize, e: i64, trunc: usize) -> UniSeries {
    let mut out = UniSeries::zero(trunc).coeffs().to_vec();
    for (n, c) in binomial_power(e, trunc / step).into_iter().enumerate() {
        out[n * step] = coeff_from_bigint(c);
    }
    UniSeries::from_coeffs(out)
}

/// `(1 - x^j y^k)^e` under the given weight bound.
fn bi_factor(weights: Weights, max_weight: usize, (j, k): (usize, usize), e: i64) -> BiSeries {
    let step = weights.of(j, k);
    let mut out = BiSeries::zero(weights, max_weight);
    for (n, c) in binomial_power(e, max_weight / step).into_iter().enumerate() {
        *out.coeff_mut(n * j, n * k).expect("within weight bound") = coeff_from_bigint(c);
    }
    out
}

/// `prod_{m >= min_degree} (1 - y^m)^(∓e_m)` through degree `trunc`.
pub fn product_expand(exp: &UniExponents, form: ProductForm, min_degree: usize, trunc: usize) -> Result<UniSeries> {
    let mut acc = UniSeries::one(trunc);
    for (m, e) in exp.iter() {
        if m < min_degree.max(1) || m > trunc {
            continue;
        }
        acc = &acc * &uni_factor(m, form.factor_exponent(e), trunc);
    }
    Ok(acc)
}

/// Euler transform `prod_{m >= min_degree} (1 - y^m)^(-e_m)`.
///
/// Works by sequential multiplication with negative-binomial expansions,
/// so every intermediate coefficient is an integer.
pub fn euler_expand(exp: &UniExponents, min_degree: usize, trunc: usize) -> Result<UniSeries> {
    if let Some((m, e)) = exp.iter().find(|&(_, e)| e < 0) {
        return Err(Error::NegativeExponent {
            index: m.to_string(),
            exponent: e,
        });
    }
    product_expand(exp, ProductForm::ProductOfInverses, min_degree, trunc)
}

fn exponent_from_residual<I: Debug>(c: &Coefficient, form: ProductForm, index: I) -> Result<i64> {
    let value = match form {
        ProductForm::ProductOfInverses => c.clone(),
        ProductForm::ProductPlain => -c.clone(),
    };
    if !value.is_integer() {
        return Err(Error::NonIntegerExponent {
            index: format!("{index:?}"),
            value: value.to_string(),
        });
    }
    value.to_integer().to_i64().ok_or_else(|| Error::NonIntegerExponent {
        index: format!("{index:?}"),
        value: value.to_string(),
    })
}

/// Recovers the exponents of `s = prod_{m >= 1} (1 - y^m)^(∓e_m)` through
/// the truncation order of `s`.
///
/// Degrees are processed in increasing order: after the factors below `m`
/// have been divided out, the residual is `1 ± e_m y^m + O(y^(m+1))`.
pub fn peel_uni(s: &UniSeries, form: ProductForm) -> Result<UniExponents> {
    if !is_unit(&s.coeffs()[0]) {
        return Err(Error::NonUnitConstant);
    }
    let n = s.trunc_order();
    let mut residual = s.clone();
    let mut out = UniExponents::new();
    for m in 1..=n {
        let e = exponent_from_residual(residual.coeff(m)?, form, m)?;
        if e != 0 {
            residual = &residual * &uni_factor(m, -form.factor_exponent(e), n);
            out.set(m, e);
        }
    }
    debug_assert_eq!(residual, UniSeries::one(n));
    Ok(out)
}

/// `prod (1 - x^j y^k)^(∓e_{j,k})` under the given weight bound.
pub fn expand_bi(exp: &BiExponents, form: ProductForm, weights: Weights, max_weight: usize) -> Result<BiSeries> {
    let mut acc = BiSeries::one(weights, max_weight);
    for ((j, k), e) in exp.iter() {
        if (j, k) == (0, 0) {
            return Err(Error::Inconsistent("factor (1 - x^0 y^0) is degenerate".into()));
        }
        if weights.of(j, k) > max_weight {
            continue;
        }
        acc = acc.try_mul(&bi_factor(weights, max_weight, (j, k), form.factor_exponent(e)))?;
    }
    Ok(acc)
}

/// Recovers the exponents of `s = prod (1 - x^j y^k)^(∓e_{j,k})`.
///
/// Monomials are processed by increasing weight, ties broken by increasing
/// power of `y`. Each factor first perturbs exactly its own monomial, so the
/// residual coefficient there is the exponent (up to sign).
pub fn peel_bi(s: &BiSeries, form: ProductForm) -> Result<BiExponents> {
    if !is_unit(s.coeff(0, 0)?) {
        return Err(Error::NonUnitConstant);
    }
    let weights = s.weights();
    let bound = s.max_weight();
    let mut residual = s.clone();
    let mut out = BiExponents::new();
    for jk in s.monomials_by_weight().into_iter().skip(1) {
        let e = exponent_from_residual(residual.coeff(jk.0, jk.1)?, form, jk)?;
        if e != 0 {
            residual = residual.try_mul(&bi_factor(weights, bound, jk, -form.factor_exponent(e)))?;
            out.set(jk, e);
        }
    }
    debug_assert!(residual.try_sub(&BiSeries::one(weights, bound))?.is_zero());
    Ok(out)
}

/// Counts multisets drawn from `e_m` distinct objects of each degree
/// `m >= min_degree` whose degrees sum to `target`.
///
/// Plain recursive enumeration: objects are visited in order of degree and a
/// multiplicity is chosen for each. No series arithmetic is involved.
pub fn multiset_oracle(exp: &UniExponents, min_degree: usize, target: usize) -> Result<u64> {
    let mut objects = Vec::new();
    for (m, e) in exp.iter() {
        if e < 0 {
            return Err(Error::NegativeExponent {
                index: m.to_string(),
                exponent: e,
            });
        }
        if m >= min_degree.max(1) && m <= target {
            objects.extend(std::iter::repeat_n(m, e as usize));
        }
    }

    fn count(objects: &[usize], remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let Some((&deg, rest)) = objects.split_first() else {
            return 0;
        };
        if deg > remaining {
            return 0;
        }
        (0..=remaining / deg).map(|k| count(rest, remaining - k * deg)).sum()
    }

    Ok(count(&objects, target))
}

/// Convenience: coefficients of a series as `i64`, failing on fractions.
pub fn integer_coeffs(s: &UniSeries) -> Result<Vec<i64>> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| crate::series::coeff_to_i64(c, format!("y^{d}")))
        .collect()
}
