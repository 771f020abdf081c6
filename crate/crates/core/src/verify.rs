//! Replays every published value, bound and identity against the engine.
//!
//! Reference data is a UTF-8, line-oriented, tab-separated file:
//!
//! ```text
//! # comment
//! id <TAB> location <TAB> kind <TAB> payload
//! ```
//!
//! Integer payloads are comma-separated. `decimal_constant` payloads are
//! `value,tolerance`; `identity` payloads are the range checked.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use crate::asymptotics::{growth_constant, growth_root};
use crate::error::{Error, Result};
use crate::generators::{
    beta_table, floor_formula, framed_knot_counts, g_series, h_series, knot_counts, p_closed, p_from_b,
    primitive_counts, BetaTable, FloorFamily,
};
use crate::mzv::{build_mzv_rhs, lowest_weight_generator, mzv_counts, MzvCounts, VERIFIED_LOWEST_WEIGHT_DEPTH};
use crate::series::SliceAxis;
use crate::transforms::{euler_expand, integer_coeffs, multiset_oracle, peel_uni, ProductForm, UniExponents};

/// Reference data shipped with the crate.
pub const DEFAULT_REFERENCE: &str = include_str!("../data/reference.tsv");

/// Environment variable overriding the reference data path.
pub const DATA_ENV: &str = "GFENUM_DATA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClaimKind {
    ExactValue,
    LowerBound,
    SaturatedBound,
    Sequence,
    DecimalConstant,
    Identity,
}

impl FromStr for ClaimKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "exact_value" => ClaimKind::ExactValue,
            "lower_bound" => ClaimKind::LowerBound,
            "saturated_bound" => ClaimKind::SaturatedBound,
            "sequence" => ClaimKind::Sequence,
            "decimal_constant" => ClaimKind::DecimalConstant,
            "identity" => ClaimKind::Identity,
            other => return Err(format!("unknown kind `{other}`")),
        })
    }
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimKind::ExactValue => "exact_value",
            ClaimKind::LowerBound => "lower_bound",
            ClaimKind::SaturatedBound => "saturated_bound",
            ClaimKind::Sequence => "sequence",
            ClaimKind::DecimalConstant => "decimal_constant",
            ClaimKind::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Integers(Vec<i64>),
    Decimal { value: f64, tolerance: f64 },
    Range(usize),
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Integers(v) => f.write_str(&join(v)),
            Payload::Decimal { value, tolerance } => write!(f, "{value} ± {tolerance:e}"),
            Payload::Range(n) => write!(f, "holds through {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub id: String,
    pub location: String,
    pub kind: ClaimKind,
    pub payload: Payload,
    pub line: usize,
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_integers(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer `{t}`: {e}")))
        .collect()
}

/// Parses reference data. Blank lines and `#` comments are skipped.
pub fn parse_reference(text: &str) -> Result<Vec<ReferenceEntry>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| Error::ReferenceData { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        let [id, location, kind, payload] = fields[..] else {
            return Err(err(format!("expected 4 tab-separated fields, found {}", fields.len())));
        };
        let kind: ClaimKind = kind.trim().parse().map_err(err)?;
        let payload = payload.trim();
        let payload = match kind {
            ClaimKind::DecimalConstant => {
                let (v, t) = payload
                    .split_once(',')
                    .ok_or_else(|| err("decimal payload must be `value,tolerance`".into()))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| err(format!("bad decimal `{s}`: {e}")))
                };
                Payload::Decimal {
                    value: parse(v)?,
                    tolerance: parse(t)?,
                }
            }
            ClaimKind::Identity => Payload::Range(
                payload
                    .parse()
                    .map_err(|e| err(format!("bad identity range `{payload}`: {e}")))?,
            ),
            ClaimKind::ExactValue | ClaimKind::LowerBound | ClaimKind::SaturatedBound => {
                let v = parse_integers(payload).map_err(err)?;
                if v.len() != 1 {
                    return Err(err(format!("{kind} takes a single integer")));
                }
                Payload::Integers(v)
            }
            ClaimKind::Sequence => Payload::Integers(parse_integers(payload).map_err(err)?),
        };
        let id = id.trim().to_string();
        if !seen.insert(id.clone()) {
            return Err(err(format!("duplicate claim id `{id}`")));
        }
        out.push(ReferenceEntry {
            id,
            location: location.trim().to_string(),
            kind,
            payload,
            line,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub id: String,
    pub location: String,
    pub kind: ClaimKind,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub results: Vec<ClaimResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Precomputed quantities shared by all claims.
struct Context {
    beta: BetaTable,
    primitives: Vec<i64>,
    knots: Vec<i64>,
    framed: Vec<i64>,
    mzv: MzvCounts,
    /// Identity outcomes depend only on name and range.
    identities: Mutex<HashMap<(String, usize), std::result::Result<(), String>>>,
}

const DEFAULT_DEGREE: usize = 40;
const DEFAULT_WEIGHT: usize = 23;

impl Context {
    fn new(entries: &[ReferenceEntry]) -> Result<Self> {
        let mut degree = DEFAULT_DEGREE;
        let mut weight = DEFAULT_WEIGHT;
        for e in entries {
            let n = match (&e.payload, e.kind) {
                (Payload::Range(n), _) => *n + 1,
                (Payload::Integers(v), ClaimKind::Sequence) => v.len() + 1,
                _ => 0,
            };
            if e.id.starts_with("identity.mzv") {
                weight = weight.max(n - 1);
            } else if !e.id.starts_with("identity.d3d") {
                degree = degree.max(n);
            }
            if let Some(m) =
                e.id.strip_prefix("beta.")
                    .and_then(|r| r.split('.').next()?.parse::<usize>().ok())
            {
                degree = degree.max(m);
            }
        }
        Ok(Self {
            beta: beta_table(degree)?,
            primitives: primitive_counts(degree)?,
            knots: knot_counts(degree)?,
            framed: framed_knot_counts(degree)?,
            mzv: mzv_counts(weight)?,
            identities: Mutex::default(),
        })
    }

    fn beta(&self, m: usize, u: usize) -> Option<i64> {
        self.beta.get(m, u)
    }

    fn p(&self, m: usize) -> i64 {
        self.primitives[m - 1]
    }
}

/// Outcome of evaluating one claim before comparison with its payload.
enum Computed {
    Integers(Vec<i64>),
    Decimal(f64),
    /// An identity: `Ok` or the first counterexample.
    Check(std::result::Result<(), String>),
    /// The claim id is not understood or lies outside the computed range.
    Unknown(String),
}

fn indices<const N: usize>(rest: &str) -> Option<[usize; N]> {
    let parts: Vec<usize> = rest.split('.').map(|p| p.parse().ok()).collect::<Option<_>>()?;
    parts.try_into().ok()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn evaluate(ctx: &Context, entry: &ReferenceEntry) -> Result<Computed> {
    let id = entry.id.as_str();
    let len = match &entry.payload {
        Payload::Integers(v) => v.len(),
        _ => 0,
    };
    let range = match entry.payload {
        Payload::Range(n) => n,
        _ => 0,
    };
    let (head, rest) = id.split_once('.').unwrap_or((id, ""));
    let missing = || Computed::Unknown(format!("no value computed for `{id}`"));

    Ok(match head {
        "beta" => match indices::<2>(rest).and_then(|[m, u]| ctx.beta(m, u)) {
            Some(b) => Computed::Integers(vec![b]),
            None => missing(),
        },
        "D" | "M" => match indices::<2>(rest) {
            Some([w, d]) if w <= ctx.mzv.max_weight() => {
                Computed::Integers(vec![if head == "D" { ctx.mzv.d(w, d) } else { ctx.mzv.m(w, d) }])
            }
            _ => missing(),
        },
        "tally" => match indices::<1>(rest) {
            Some([m]) if m <= ctx.beta.max_m() => {
                let mut v: Vec<i64> = ctx
                    .beta
                    .row(m)
                    .filter(|&(u, _)| u >= 2 && u % 2 == 0)
                    .map(|(_, b)| b)
                    .collect();
                v.push(ctx.beta.primitive_sum(m));
                Computed::Integers(v)
            }
            _ => missing(),
        },
        "seq" => {
            let take = |v: &[i64]| {
                if len <= v.len() {
                    Computed::Integers(v[..len].to_vec())
                } else {
                    missing()
                }
            };
            match rest {
                "P" => take(&ctx.primitives),
                "V" => take(&ctx.knots),
                "F" => take(&ctx.framed),
                "D3d" => {
                    let max_depth = ctx.mzv.max_weight() / 3;
                    if len <= max_depth {
                        Computed::Integers(ctx.mzv.lowest_weight(len))
                    } else {
                        missing()
                    }
                }
                _ => missing(),
            }
        }
        "mzv" => match rest {
            "first_difference_weight" => match ctx.mzv.first_difference() {
                Some((w, _)) => Computed::Integers(vec![w as i64]),
                None => missing(),
            },
            "first_excess" => match ctx.mzv.first_mzv_excess() {
                Some((w, d)) => Computed::Integers(vec![w as i64, d as i64]),
                None => missing(),
            },
            _ => missing(),
        },
        "const" => match rest {
            "r" => Computed::Decimal(growth_root()),
            "reciprocal_sum" => {
                let r = growth_root();
                Computed::Decimal(r.recip() + r.powi(-4))
            }
            "C" => Computed::Decimal(growth_constant()),
            _ => missing(),
        },
        "identity" => {
            let key = (rest.to_string(), range);
            let cached = ctx.identities.lock().expect("not poisoned").get(&key).cloned();
            let outcome = match cached {
                Some(o) => o,
                None => {
                    let o = identity(ctx, rest, range)?;
                    ctx.identities.lock().expect("not poisoned").insert(key, o.clone());
                    o
                }
            };
            Computed::Check(outcome)
        }
        _ => missing(),
    })
}

fn identity(ctx: &Context, name: &str, n: usize) -> Result<std::result::Result<(), String>> {
    let within_degree = n <= ctx.beta.max_m();
    let within_weight = n <= ctx.mzv.max_weight();
    let out_of_range = || Err(format!("range {n} exceeds computed range"));
    let beta = |m: usize, u: usize| ctx.beta(m, u).unwrap_or(-1);
    Ok(match name {
        "p_routes" => {
            let a = p_from_b(n)?;
            let b = p_closed(n)?;
            check(a == b, || {
                let d = (0..=n).find(|&d| a.coeff(d) != b.coeff(d)).unwrap_or(0);
                format!("routes differ at y^{d}")
            })
        }
        "row_sums" if within_degree => (1..=n).try_for_each(|m| {
            let s = ctx.beta.primitive_sum(m);
            check(s == ctx.p(m), || format!("m={m}: row sum {s} != P_m {}", ctx.p(m)))
        }),
        "vf_difference" if n < ctx.framed.len() => (1..=n).try_for_each(|m| {
            let (v, f1, f0) = (ctx.knots[m], ctx.framed[m], ctx.framed[m - 1]);
            check(v == f1 - f0, || {
                format!("V_{} = {v} != F_{} - F_{m} = {}", m + 1, m + 1, f1 - f0)
            })
        }),
        "euler_oracle" if within_degree => {
            let p = UniExponents::from_sequence(&ctx.primitives[..n]);
            let mut res = Ok(());
            for min_degree in [1, 2] {
                let series = integer_coeffs(&euler_expand(&p, min_degree, n)?)?;
                for (m, &s) in series.iter().enumerate() {
                    let o = multiset_oracle(&p, min_degree, m)? as i64;
                    if s != o {
                        res = Err(format!("min degree {min_degree}, m={m}: series {s} != oracle {o}"));
                    }
                }
            }
            res
        }
        "u2" if within_degree => (2..n).try_for_each(|m| {
            check(beta(m, 0) == beta(m + 1, 2), || {
                format!("beta({m},0) != beta({},2)", m + 1)
            })
        }),
        "k0" if within_degree => {
            (0..=n / 2).try_for_each(|j| check(beta(2 * j, 2 * j) == 1, || format!("beta({0},{0}) != 1", 2 * j)))
        }
        "k1" | "k2" | "u0" if within_degree => {
            let (family, offset) = match name {
                "k1" => (FloorFamily::K1, 1),
                "k2" => (FloorFamily::K2, 2),
                _ => (FloorFamily::U0, 0),
            };
            if family == FloorFamily::U0 {
                (0..=n).try_for_each(|m| {
                    let f = floor_formula(family, m as u64) as i64;
                    check(beta(m, 0) == f, || format!("beta({m},0) = {} != {f}", beta(m, 0)))
                })
            } else {
                (0..).take_while(|j| 2 * j + offset <= n).try_for_each(|j| {
                    let (m, u) = (2 * j + offset, 2 * j);
                    let f = floor_formula(family, j as u64) as i64;
                    check(beta(m, u) == f, || format!("beta({m},{u}) = {} != {f}", beta(m, u)))
                })
            }
        }
        "g_diagonals" if within_degree => {
            let mut res = Ok(());
            for k in 0..=5 {
                let g = integer_coeffs(&g_series(k, n / 2)?)?;
                for (j, &c) in g.iter().enumerate() {
                    if 2 * j + k <= n && c != beta(2 * j + k, 2 * j) {
                        res = Err(format!("g_{k}[{j}] = {c} != beta({},{})", 2 * j + k, 2 * j));
                    }
                }
            }
            res
        }
        "h_columns" if within_degree => {
            let mut res = Ok(());
            for j in 0..=3 {
                if 2 * j > n {
                    continue;
                }
                let h = integer_coeffs(&h_series(j, n - 2 * j, false)?)?;
                for (k, &c) in h.iter().enumerate() {
                    if c + 1 != beta(2 * j + k, 2 * j) {
                        res = Err(format!("h_{j}[{k}] + 1 = {} != beta({},{})", c + 1, 2 * j + k, 2 * j));
                    }
                }
            }
            res
        }
        "mzv_depth1" if within_weight => (3..=n).step_by(2).try_for_each(|w| {
            let d = ctx.mzv.d(w, 1);
            check(d == 1, || format!("D({w},1) = {d}"))
        }),
        "mzv_diagonals" if within_weight => mzv_counts(n)?.check_diagonals().map_err(|e| e.to_string()),
        "mzv_reexpansion" if within_weight => mzv_counts(n)?.check_reexpansion().map_err(|e| e.to_string()),
        "mzv_slice" => {
            let slice = build_mzv_rhs(n)?.extract_slice(SliceAxis::XPower(0))?;
            let expected = lowest_weight_generator(slice.trunc_order())?;
            check(slice == expected, || "x = 0 slice differs from 1 - y - y^4".into())
        }
        "d3d_extended" => {
            // exponents of 1/(1 - y - y^4) through y^n must re-expand exactly
            // and agree with the bivariate peel where it reaches
            let target = lowest_weight_generator(n)?.inverse()?;
            let exps = peel_uni(&target, ProductForm::ProductOfInverses)?;
            let reexpanded = euler_expand(&exps, 1, n)?;
            let reach = VERIFIED_LOWEST_WEIGHT_DEPTH.min(ctx.mzv.max_weight() / 3).min(n);
            let bivariate = ctx.mzv.lowest_weight(reach);
            check(reexpanded == target, || "re-expansion mismatch".into()).and_then(|_| {
                check(exps.to_sequence(reach) == bivariate, || {
                    format!("univariate {:?} != bivariate {bivariate:?}", exps.to_sequence(reach))
                })
            })
        }
        _ => out_of_range(),
    })
}

fn judge(entry: &ReferenceEntry, computed: Computed) -> ClaimResult {
    let expected = entry.payload.to_string();
    let (passed, actual) = match (computed, &entry.payload) {
        (Computed::Unknown(msg), _) => (false, msg),
        (Computed::Integers(got), Payload::Integers(want)) => {
            let passed = match entry.kind {
                ClaimKind::LowerBound => got.len() == 1 && got[0] >= want[0],
                _ => got == *want,
            };
            (passed, join(&got))
        }
        (Computed::Decimal(got), Payload::Decimal { value, tolerance }) => {
            ((got - value).abs() <= *tolerance, format!("{got:.15}"))
        }
        (Computed::Check(res), Payload::Range(_)) => match res {
            Ok(()) => (true, "holds".into()),
            Err(msg) => (false, msg),
        },
        _ => (false, format!("claim `{}` is not a {}", entry.id, entry.kind)),
    };
    ClaimResult {
        id: entry.id.clone(),
        location: entry.location.clone(),
        kind: entry.kind,
        passed,
        expected,
        actual,
    }
}

/// Engine values sized for a set of entries, reusable across runs over
/// entries with the same ids.
pub struct Verifier {
    ctx: Context,
}

impl Verifier {
    pub fn new(entries: &[ReferenceEntry]) -> Result<Self> {
        Ok(Self {
            ctx: Context::new(entries)?,
        })
    }

    pub fn check(&self, entry: &ReferenceEntry) -> Result<ClaimResult> {
        evaluate(&self.ctx, entry).map(|c| judge(entry, c))
    }

    /// Failing claims become report entries; only an internal
    /// inconsistency in the engine is returned as an error.
    pub fn run(&self, entries: &[ReferenceEntry]) -> Result<VerificationReport> {
        let results = entries.iter().map(|e| self.check(e)).collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport { results })
    }
}

/// Evaluates every entry.
pub fn run_entries(entries: &[ReferenceEntry]) -> Result<VerificationReport> {
    Verifier::new(entries)?.run(entries)
}

/// Runs the shipped reference set.
pub fn run_all() -> Result<VerificationReport> {
    run_entries(&parse_reference(DEFAULT_REFERENCE)?)
}

/// Number of individual values asserted, by kind.
pub fn assertion_counts(entries: &[ReferenceEntry]) -> BTreeMap<ClaimKind, usize> {
    let mut out = BTreeMap::new();
    for e in entries {
        let n = match &e.payload {
            Payload::Integers(v) => v.len(),
            _ => 1,
        };
        *out.entry(e.kind).or_insert(0) += n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shipped_reference() {
        let entries = parse_reference(DEFAULT_REFERENCE).unwrap();
        let table1 = entries.iter().filter(|e| e.location.starts_with("table1")).count();
        assert!(table1 >= 64, "{table1}");
        let seq: usize = entries
            .iter()
            .filter(|e| ["seq.P", "seq.V", "seq.F"].contains(&e.id.as_str()))
            .map(|e| match &e.payload {
                Payload::Integers(v) => v.len(),
                _ => 0,
            })
            .sum();
        assert_eq!(seq, 60);
        assert_eq!(entries.iter().filter(|e| e.id.starts_with("tally.")).count(), 8);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_reference("# c\nbeta.1.0\tt\texact_value\n").unwrap_err();
        assert!(matches!(err, Error::ReferenceData { line: 2, .. }));
        let err = parse_reference("a\tb\tnonsense\t1\n").unwrap_err();
        assert!(matches!(err, Error::ReferenceData { line: 1, .. }));
        let err = parse_reference("a\tb\texact_value\t1\na\tb\texact_value\t1\n").unwrap_err();
        assert!(matches!(err, Error::ReferenceData { line: 2, .. }));
        let err = parse_reference("c\tb\tdecimal_constant\t1.0\n").unwrap_err();
        assert!(matches!(err, Error::ReferenceData { line: 1, .. }));
    }

    #[test]
    fn lower_bound_semantics() {
        let entries = parse_reference("beta.12.0\tt\tlower_bound\t10\nbeta.12.2\tt\tlower_bound\t10\n").unwrap();
        let report = run_entries(&entries).unwrap();
        assert!(report.results[0].passed);
        assert!(!report.results[1].passed);
    }

    #[test]
    fn unknown_claims_fail_without_aborting() {
        let entries =
            parse_reference("beta.3.9\tt\texact_value\t1\nnope\tt\texact_value\t1\nbeta.4.4\tt\texact_value\t1\n")
                .unwrap();
        let report = run_entries(&entries).unwrap();
        assert_eq!(report.failed(), 2);
        assert!(report.results[2].passed);
    }
}
