//! Generating functions for the bigraded diagram counts `beta(m, u)` and the
//! primitive counts `P_m`.
//!
//! The central object is the rational generator
//!
//! ```text
//! b(x, y) = sum_{j,k} (beta(2j+k, 2j) - 1) x^j y^k
//!         = (b0 y^4 + b1 x y^3 + b2 x^2 y^2) / (1 - x^3)
//!           + (b3 x^3 y + b4 x^4) / ((1 - x^3)(1 - y - x^2))
//! ```
//!
//! with `b0 = b1 = b2/(1+y) = b3/(1-y^3) = 1 + b4 = 1/((1-y)(1-y^2)(1-y^3))`.
//! The diagonal generators `g_k` and column generators `h_j` are built from
//! their own closed forms so they can cross-check `b`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::series::{coeff_to_i64, BiSeries, SliceAxis, UniSeries, Weights};
use crate::transforms::{euler_expand, integer_coeffs, UniExponents};

/// One term `c * x^j y^k` of an integer polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub x: usize,
    pub y: usize,
    pub coeff: i64,
}

/// Integer polynomial in `x, y`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn new(terms: &[(usize, usize, i64)]) -> Self {
        let mut p = Self::default();
        for &(x, y, coeff) in terms {
            p.push(Term { x, y, coeff });
        }
        p
    }

    pub fn one() -> Self {
        Self::new(&[(0, 0, 1)])
    }

    /// Polynomial in `y` alone from `(degree, coeff)` pairs.
    pub fn in_y(terms: &[(usize, i64)]) -> Self {
        Self::new(&terms.iter().map(|&(d, c)| (0, d, c)).collect::<Vec<_>>())
    }

    /// Polynomial in `x` alone from `(degree, coeff)` pairs.
    pub fn in_x(terms: &[(usize, i64)]) -> Self {
        Self::new(&terms.iter().map(|&(d, c)| (d, 0, c)).collect::<Vec<_>>())
    }

    fn push(&mut self, t: Term) {
        if let Some(existing) = self.terms.iter_mut().find(|e| e.x == t.x && e.y == t.y) {
            existing.coeff += t.coeff;
        } else {
            self.terms.push(t);
        }
        self.terms.retain(|t| t.coeff != 0);
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant_term(&self) -> i64 {
        self.terms.iter().find(|t| t.x == 0 && t.y == 0).map_or(0, |t| t.coeff)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for a in &self.terms {
            for b in &other.terms {
                out.push(Term {
                    x: a.x + b.x,
                    y: a.y + b.y,
                    coeff: a.coeff * b.coeff,
                });
            }
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(Term { coeff: -t.coeff, ..*t });
        }
        out
    }

    pub fn to_bi(&self, weights: Weights, max_weight: usize) -> BiSeries {
        let terms: Vec<_> = self.terms.iter().map(|t| ((t.x, t.y), t.coeff)).collect();
        BiSeries::polynomial(weights, max_weight, &terms)
    }

    fn to_uni(&self, var: Var, trunc: usize) -> Result<UniSeries> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let (deg, other) = match var {
                Var::X => (t.x, t.y),
                Var::Y => (t.y, t.x),
            };
            if other != 0 {
                return Err(Error::Inconsistent(format!(
                    "term x^{} y^{} is not univariate in {var:?}",
                    t.x, t.y
                )));
            }
            terms.push((deg, t.coeff));
        }
        Ok(UniSeries::polynomial(&terms, trunc))
    }
}

/// Variable of a univariate expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `numerator / prod(denominators)` where each denominator has constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Poly,
    denominators: Vec<Poly>,
}

impl RationalGf {
    pub fn new(numerator: Poly, denominators: Vec<Poly>) -> Result<Self> {
        if denominators.iter().any(|d| d.constant_term() != 1) {
            return Err(Error::NonUnitConstant);
        }
        Ok(Self {
            numerator,
            denominators,
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominators(&self) -> &[Poly] {
        &self.denominators
    }

    /// Multiplies the numerator by a polynomial.
    pub fn times(&self, p: &Poly) -> Self {
        Self {
            numerator: self.numerator.mul(p),
            denominators: self.denominators.clone(),
        }
    }

    /// Appends a denominator factor.
    pub fn over(&self, d: Poly) -> Result<Self> {
        let mut denominators = self.denominators.clone();
        denominators.push(d);
        Self::new(self.numerator.clone(), denominators)
    }

    pub fn expand_bi(&self, weights: Weights, max_weight: usize) -> Result<BiSeries> {
        let mut acc = self.numerator.to_bi(weights, max_weight);
        for d in &self.denominators {
            acc = acc.try_div(&d.to_bi(weights, max_weight))?;
        }
        Ok(acc)
    }

    /// Expansion as a univariate series; every monomial must involve only `var`.
    pub fn expand(&self, var: Var, trunc: usize) -> Result<UniSeries> {
        let mut acc = self.numerator.to_uni(var, trunc)?;
        for d in &self.denominators {
            acc = acc.div(&d.to_uni(var, trunc)?)?;
        }
        Ok(acc)
    }
}

fn one_minus_y(m: usize) -> Poly {
    Poly::in_y(&[(0, 1), (m, -1)])
}

fn one_minus_x(m: usize) -> Poly {
    Poly::in_x(&[(0, 1), (m, -1)])
}

/// `1 / ((1-y)(1-y^2)(1-y^3))`, the common building block of the Ansatz.
pub fn partition_factor() -> RationalGf {
    RationalGf::new(Poly::one(), vec![one_minus_y(1), one_minus_y(2), one_minus_y(3)]).expect("unit denominators")
}

/// The five numerator pieces of the rational generator, all functions of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzPieces {
    pub b0: RationalGf,
    pub b1: RationalGf,
    pub b2: RationalGf,
    pub b3: RationalGf,
    pub b4: RationalGf,
}

impl AnsatzPieces {
    pub fn new() -> Self {
        let q = partition_factor();
        let cyclotomic = one_minus_y(1).mul(&one_minus_y(2)).mul(&one_minus_y(3));
        Self {
            b0: q.clone(),
            b1: q.clone(),
            b2: q.times(&Poly::in_y(&[(0, 1), (1, 1)])),
            b3: RationalGf::new(Poly::one(), vec![one_minus_y(1), one_minus_y(2)]).expect("unit denominators"),
            // q - 1 over the common denominator
            b4: RationalGf::new(Poly::one().sub(&cyclotomic), q.denominators().to_vec()).expect("unit denominators"),
        }
    }
}

impl Default for AnsatzPieces {
    fn default() -> Self {
        Self::new()
    }
}

fn monomial(weights: Weights, max_weight: usize, x: usize, y: usize) -> BiSeries {
    BiSeries::polynomial(weights, max_weight, &[((x, y), 1)])
}

/// The rational generator `b(x, y)` with weights `(2, 1)`, truncated at total
/// weight `max_weight` (i.e. through degree `m = 2j + k <= max_weight`).
pub fn build_b(max_weight: usize) -> Result<BiSeries> {
    let w = Weights::DEGREE;
    let p = AnsatzPieces::new();
    let piece = |r: &RationalGf, x: usize, y: usize| -> Result<BiSeries> {
        r.expand_bi(w, max_weight)?.try_mul(&monomial(w, max_weight, x, y))
    };

    let first = piece(&p.b0, 0, 4)?
        .try_add(&piece(&p.b1, 1, 3)?)?
        .try_add(&piece(&p.b2, 2, 2)?)?;
    let second = piece(&p.b3, 3, 1)?.try_add(&piece(&p.b4, 4, 0)?)?;

    let inv_x3 = one_minus_x(3).to_bi(w, max_weight).inverse()?;
    let coupling = Poly::new(&[(0, 0, 1), (0, 1, -1), (2, 0, -1)]).to_bi(w, max_weight);

    first
        .try_mul(&inv_x3)?
        .try_add(&second.try_mul(&inv_x3)?.try_div(&coupling)?)
}

/// `beta(m, u)` for `0 <= m <= max_m`, `0 <= u <= m`, plus `beta(1, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTable {
    max_m: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl BetaTable {
    pub fn max_m(&self) -> usize {
        self.max_m
    }

    /// `None` outside the stored grid (including `m > max_m`).
    pub fn get(&self, m: usize, u: usize) -> Option<i64> {
        self.entries.get(&(m, u)).copied()
    }

    /// Stored univalent counts for degree `m`, in increasing order.
    pub fn row(&self, m: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries.range((m, 0)..=(m, usize::MAX)).map(|(&(_, u), &b)| (u, b))
    }

    /// `P_m = sum_{u >= 2} beta(m, u)`.
    pub fn primitive_sum(&self, m: usize) -> i64 {
        self.row(m).filter(|&(u, _)| u >= 2).map(|(_, b)| b).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }
}

/// Fills `beta(m, u)` from `b(x, y)` truncated at weight `max_m`.
pub fn beta_table(max_m: usize) -> Result<BetaTable> {
    let b = build_b(max_m)?;
    let mut entries = BTreeMap::new();
    for m in 0..=max_m {
        for u in 0..=m {
            let value = if u % 2 == 1 {
                0
            } else {
                let (j, k) = (u / 2, m - u);
                let c = coeff_to_i64(b.coeff(j, k)?, format!("x^{j} y^{k}"))?;
                if c < 0 {
                    return Err(Error::Inconsistent(format!("negative coefficient {c} at x^{j} y^{k}")));
                }
                c + 1
            };
            entries.insert((m, u), value);
        }
    }
    if max_m >= 1 {
        // the only entry with u > m
        entries.insert((1, 2), 1);
    }
    Ok(BetaTable { max_m, entries })
}

/// Diagonal generator `g_k(x) = sum_j beta(2j+k, 2j) x^j` from its closed
/// pseudopolynomial form, `k <= 5`.
pub fn g_series(k: usize, trunc: usize) -> Result<UniSeries> {
    if k > 5 {
        return Err(Error::UnsupportedDiagonal(k));
    }
    let d = |m: usize| one_minus_x(m).to_uni(Var::X, trunc);
    let x = UniSeries::polynomial(&[(1, 1)], trunc);
    let mut g = UniSeries::one(trunc).div(&d(1)?)?;
    if k >= 1 {
        g = g.div(&d(3)?)?;
    }
    if k >= 2 {
        g = g.div(&d(2)?)?;
    }
    if k >= 3 {
        g = &g.div(&d(2)?)? + &x.div(&(&d(2)? * &d(3)?))?;
    }
    if k >= 4 {
        g = &g.div(&d(2)?)? + &UniSeries::one(trunc).div(&d(3)?)?;
    }
    if k >= 5 {
        g = &g.div(&d(2)?)? + &x.div(&d(2)?)?;
    }
    Ok(g)
}

/// Column generator `h_j(y) = sum_k (beta(2j+k, 2j) - 1) y^k`, `j <= 3`.
///
/// With `orientable_only` the `1/(1-y^3)` factor is dropped, giving the
/// orientable-surface variant.
pub fn h_series(j: usize, trunc: usize, orientable_only: bool) -> Result<UniSeries> {
    // h_0 = y^4 Q, h_1 = y^3 Q, h_2 = y^2 (1+y) Q, h_3 = y (1+y)(1+y^2) Q
    let numerator = match j {
        0 => Poly::in_y(&[(4, 1)]),
        1 => Poly::in_y(&[(3, 1)]),
        2 => Poly::in_y(&[(2, 1), (3, 1)]),
        3 => Poly::in_y(&[(1, 1), (2, 1)]).mul(&Poly::in_y(&[(0, 1), (2, 1)])),
        _ => return Err(Error::UnsupportedColumn(j)),
    };
    let mut denominators = vec![one_minus_y(1), one_minus_y(2)];
    if !orientable_only {
        denominators.push(one_minus_y(3));
    }
    RationalGf::new(numerator, denominators)?.expand(Var::Y, trunc)
}

/// The three floor-function families known in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloorFamily {
    /// `beta(2j+1, 2j) = floor((j+3)/3)`
    K1,
    /// `beta(2j+2, 2j) = floor(((j+3)^2 + 3)/12)`
    K2,
    /// `beta(m, 0) = 1 + floor(((m-1)^2 + 3)/12)`
    U0,
}

pub fn floor_formula(family: FloorFamily, n: u64) -> u64 {
    match family {
        FloorFamily::K1 => (n + 3) / 3,
        FloorFamily::K2 => ((n + 3).pow(2) + 3) / 12,
        // (m-1)^2 is well defined at m = 0
        FloorFamily::U0 => 1 + ((n as i128 - 1).pow(2) as u64 + 3) / 12,
    }
}

/// `p(y) = sum_{m>=1} (P_m - 1) y^m` from `b(y^2, y) - b(0, y) + y^4/((1-y)(1-y^2))`.
pub fn p_from_b(max_m: usize) -> Result<UniSeries> {
    let b = build_b(max_m)?;
    let diagonal = b.substitute_x()?;
    let x_free = b.extract_slice(SliceAxis::XPower(0))?;
    let tail = RationalGf::new(Poly::in_y(&[(4, 1)]), vec![one_minus_y(1), one_minus_y(2)])?.expand(Var::Y, max_m)?;
    Ok(&(&diagonal - &x_free) + &tail)
}

/// `p(y)` from its closed form
/// `(y^4 - y^8 - y^10 - y^12 - y^17) / ((1-y)(1-y^2)(1-y^3)(1-y^6)(1-y-y^4))`.
pub fn p_closed_form() -> RationalGf {
    RationalGf::new(
        Poly::in_y(&[(4, 1), (8, -1), (10, -1), (12, -1), (17, -1)]),
        vec![
            one_minus_y(1),
            one_minus_y(2),
            one_minus_y(3),
            one_minus_y(6),
            Poly::in_y(&[(0, 1), (1, -1), (4, -1)]),
        ],
    )
    .expect("unit denominators")
}

pub fn p_closed(max_m: usize) -> Result<UniSeries> {
    p_closed_form().expand(Var::Y, max_m)
}

/// `P_1..=P_max_m` from the closed form of `p(y)`.
pub fn primitive_counts(max_m: usize) -> Result<Vec<i64>> {
    let p = integer_coeffs(&p_closed(max_m)?)?;
    Ok(p[1..].iter().map(|c| c + 1).collect())
}

/// `V_1..=V_max_m`: `prod_{m>=2} (1-y^m)^(-P_m) = 1 + sum V_m y^m`.
pub fn knot_counts(max_m: usize) -> Result<Vec<i64>> {
    euler_counts(max_m, 2)
}

/// `F_1..=F_max_m`: `prod_{m>=1} (1-y^m)^(-P_m) = 1 + sum F_m y^m`.
pub fn framed_knot_counts(max_m: usize) -> Result<Vec<i64>> {
    euler_counts(max_m, 1)
}

fn euler_counts(max_m: usize, min_degree: usize) -> Result<Vec<i64>> {
    let p = UniExponents::from_sequence(&primitive_counts(max_m)?);
    let s = integer_coeffs(&euler_expand(&p, min_degree, max_m)?)?;
    Ok(s[1..].to_vec())
}
