//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or argument
//! error, 3 internal consistency error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::asymptotics;
use crate::error::Error;
use crate::generators::{beta_table, framed_knot_counts, knot_counts, primitive_counts};
use crate::mzv::{factor_index, mzv_counts, VERIFIED_LOWEST_WEIGHT_DEPTH};
use crate::verify::{self, parse_reference, run_entries, DATA_ENV, DEFAULT_REFERENCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

// F_m overflows i64 just past m = 93
const MAX_DEGREE: usize = 90;
const MAX_WEIGHT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "gfenum",
    version,
    about = "Exact enumerations of Vassiliev invariants and irreducible MZVs"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn degree(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 || n > MAX_DEGREE {
        return Err(format!("degree must be in 1..={MAX_DEGREE}"));
    }
    Ok(n)
}

fn table_degree(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n > MAX_DEGREE {
        return Err(format!("degree must be at most {MAX_DEGREE}"));
    }
    Ok(n)
}

fn weight(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if !(3..=MAX_WEIGHT).contains(&n) {
        return Err(format!("weight must be in 3..={MAX_WEIGHT}"));
    }
    Ok(n)
}

fn ratio_degree(s: &str) -> Result<usize, String> {
    let n = degree(s)?;
    if n < 2 {
        return Err("degree must be at least 2".into());
    }
    Ok(n)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid of beta(m, u): rows m, columns even u.
    Beta {
        #[arg(long, default_value_t = 20, value_parser = table_degree)]
        max_degree: usize,
    },
    /// Primitive counts P_m.
    Primitives {
        #[arg(long, default_value_t = 20, value_parser = degree)]
        max_degree: usize,
    },
    /// Vassiliev invariants of knots V_m.
    Knots {
        #[arg(long, default_value_t = 20, value_parser = degree)]
        max_degree: usize,
    },
    /// Vassiliev invariants of framed knots F_m.
    Framed {
        #[arg(long, default_value_t = 20, value_parser = degree)]
        max_degree: usize,
    },
    /// Irreducible MZV counts D(w, d), or Euler sum counts M(w, d).
    Mzv {
        #[arg(long, default_value_t = 23, value_parser = weight)]
        max_weight: usize,
        #[arg(long)]
        euler_sums: bool,
    },
    /// Growth root, limiting constant and ratio table.
    Asymptote {
        #[arg(long, default_value_t = 40, value_parser = ratio_degree)]
        max_degree: usize,
    },
    /// Replay the reference claims.
    Verify {
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Beta { .. } => "beta",
            Command::Primitives { .. } => "primitives",
            Command::Knots { .. } => "knots",
            Command::Framed { .. } => "framed",
            Command::Mzv { .. } => "mzv",
            Command::Asymptote { .. } => "asymptote",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Decimal already rendered as text.
    Decimal(String),
    Text(String),
    Empty,
}

impl Cell {
    fn tsv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Decimal(s) | Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Decimal(s) | Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

fn dec(x: f64) -> Cell {
    Cell::Decimal(format!("{x:.14}"))
}

fn sci(x: f64) -> Cell {
    Cell::Decimal(format!("{x:.3e}"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra key/value pairs, rendered as `# key<TAB>value` lines in TSV and
    /// under `meta` in JSON.
    pub meta: Vec<(String, Cell)>,
}

impl OutputTable {
    fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}\t{}\n", v.tsv()));
        }
        out.push_str(&self.columns.join("\t"));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::tsv).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("command".into(), json!(self.command));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        for (k, v) in &self.meta {
            meta.insert(k.clone(), v.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows, "meta": meta });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ReferenceData { .. } => CliError::Usage(e.to_string()),
            other => CliError::Internal(other),
        }
    }
}

fn counts_table(command: &str, column: &str, values: Vec<i64>) -> OutputTable {
    let mut t = OutputTable::new(command, &["m", column]);
    for (i, v) in values.into_iter().enumerate() {
        t.rows.push(vec![Cell::Int(i as i64 + 1), Cell::Int(v)]);
    }
    t
}

fn beta_grid(max_degree: usize) -> Result<OutputTable, CliError> {
    let beta = beta_table(max_degree)?;
    let max_u = if max_degree >= 1 { max_degree.max(2) } else { 0 };
    let us: Vec<usize> = (0..=max_u).step_by(2).collect();
    let headers: Vec<String> = std::iter::once("m".to_string())
        .chain(us.iter().map(|u| format!("u={u}")))
        .collect();
    let mut t = OutputTable::new("beta", &headers.iter().map(String::as_str).collect::<Vec<_>>());
    for m in 0..=max_degree {
        let mut row = vec![Cell::Int(m as i64)];
        row.extend(us.iter().map(|&u| beta.get(m, u).map_or(Cell::Empty, Cell::Int)));
        t.rows.push(row);
    }
    Ok(t)
}

fn mzv_table(max_weight: usize, euler_sums: bool) -> Result<OutputTable, CliError> {
    let counts = mzv_counts(max_weight)?;
    let column = if euler_sums { "M" } else { "D" };
    let mut t = OutputTable::new("mzv", &["w", "d", column, "note"]);
    for (w, d) in counts.gradings() {
        debug_assert!(factor_index(w, d).is_some());
        let value = if euler_sums { counts.m(w, d) } else { counts.d(w, d) };
        let note = if !euler_sums && w == 3 * d && d > VERIFIED_LOWEST_WEIGHT_DEPTH {
            Cell::Text("beyond verified range".into())
        } else {
            Cell::Empty
        };
        t.rows
            .push(vec![Cell::Int(w as i64), Cell::Int(d as i64), Cell::Int(value), note]);
    }
    Ok(t)
}

fn asymptote_table(max_degree: usize) -> Result<OutputTable, CliError> {
    let report = asymptotics::report(max_degree)?;
    let mut t = OutputTable::new("asymptote", &["m", "P_m", "P_m/r^m", "P_m/P_(m-1)"]);
    t.meta = vec![
        ("r".into(), dec(report.r)),
        ("C".into(), dec(report.c)),
        ("residual |r^4-r^3-1|".into(), sci(report.residual)),
        ("residual |1-1/r-1/r^4|".into(), sci(report.reciprocal_residual)),
    ];
    for (i, &(m, ratio)) in report.ratios.iter().enumerate() {
        let successive = if i == 0 {
            Cell::Empty
        } else {
            dec(report.counts[i] as f64 / report.counts[i - 1] as f64)
        };
        t.rows.push(vec![
            Cell::Int(m as i64),
            Cell::Int(report.counts[i]),
            dec(ratio),
            successive,
        ]);
    }
    Ok(t)
}

fn load_reference(data: Option<&PathBuf>) -> Result<String, CliError> {
    let path = data.cloned().or_else(|| std::env::var_os(DATA_ENV).map(PathBuf::from));
    match path {
        Some(p) => fs::read_to_string(&p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))),
        None => Ok(DEFAULT_REFERENCE.to_string()),
    }
}

fn verify_table(data: Option<&PathBuf>) -> Result<(OutputTable, bool), CliError> {
    let text = load_reference(data)?;
    let entries = parse_reference(&text)?;
    let report = run_entries(&entries)?;
    let mut t = OutputTable::new("verify", &["id", "location", "kind", "status", "expected", "actual"]);
    for r in &report.results {
        t.rows.push(vec![
            Cell::Text(r.id.clone()),
            Cell::Text(r.location.clone()),
            Cell::Text(r.kind.to_string()),
            Cell::Text(if r.passed { "pass" } else { "FAIL" }.into()),
            Cell::Text(r.expected.clone()),
            Cell::Text(r.actual.clone()),
        ]);
    }
    t.meta = vec![
        ("claims".into(), Cell::Int(report.results.len() as i64)),
        ("passed".into(), Cell::Int(report.passed() as i64)),
        ("failed".into(), Cell::Int(report.failed() as i64)),
    ];
    for (kind, n) in verify::assertion_counts(&entries) {
        t.meta.push((format!("assertions {kind}"), Cell::Int(n as i64)));
    }
    Ok((t, report.ok()))
}

/// Runs a parsed command. The flag is false when verification failed.
pub fn execute(cli: &Cli) -> Result<(OutputTable, bool), CliError> {
    let table = match &cli.command {
        Command::Beta { max_degree } => beta_grid(*max_degree)?,
        Command::Primitives { max_degree } => counts_table("primitives", "P_m", primitive_counts(*max_degree)?),
        Command::Knots { max_degree } => counts_table("knots", "V_m", knot_counts(*max_degree)?),
        Command::Framed { max_degree } => counts_table("framed", "F_m", framed_knot_counts(*max_degree)?),
        Command::Mzv { max_weight, euler_sums } => mzv_table(*max_weight, *euler_sums)?,
        Command::Asymptote { max_degree } => asymptote_table(*max_degree)?,
        Command::Verify { data } => return verify_table(data.as_ref()),
    };
    debug_assert_eq!(table.command, cli.command.name());
    Ok((table, true))
}

/// Parses `args` (including the program name), runs, writes output and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (table, ok) = match execute(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Internal(e)) => {
            eprintln!("internal error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let text = table.render(cli.format);
    let written = match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("gfenum").chain(args.iter().copied()))
    }

    #[test]
    fn defaults() {
        let cli = parse(&["beta"]).unwrap();
        assert_eq!(cli.format, Format::Tsv);
        assert!(matches!(cli.command, Command::Beta { max_degree: 20 }));
        let cli = parse(&["mzv"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::Mzv {
                max_weight: 23,
                euler_sums: false
            }
        ));
    }

    #[test]
    fn zero_degree_is_a_usage_error() {
        let err = parse(&["knots", "--max-degree", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        assert!(parse(&["primitives", "--max-degree", "x"]).is_err());
    }

    #[test]
    fn primitives_table() {
        let cli = parse(&["primitives", "--max-degree", "12"]).unwrap();
        let (t, ok) = execute(&cli).unwrap();
        assert!(ok);
        assert!(t.to_tsv().ends_with("12\t55\n"));
    }

    #[test]
    fn tsv_and_json_agree() {
        let cli = parse(&["beta", "--max-degree", "6"]).unwrap();
        let (t, _) = execute(&cli).unwrap();
        let doc: Value = serde_json::from_str(&t.to_json()).unwrap();
        let tsv = t.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(
            lines[0],
            doc["columns"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect::<Vec<_>>()
                .join("\t")
        );
        for (line, row) in lines[1..].iter().zip(doc["rows"].as_array().unwrap()) {
            let cells: Vec<String> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|v| match v {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            assert_eq!(*line, cells.join("\t"));
        }
        assert_eq!(doc["meta"]["command"], "beta");
    }
}
