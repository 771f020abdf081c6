use std::process::{Command, Output};

use gfenum::verify::DEFAULT_REFERENCE;

fn gfenum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfenum"))
        .args(args)
        .env_remove("GFENUM_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Non-comment TSV lines split into cells.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

#[test]
fn primitives_last_row() {
    let o = gfenum(&["primitives", "--max-degree", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("12\t55"));
}

#[test]
fn beta_cell_and_row_sums() {
    let o = gfenum(&["beta", "--max-degree", "14", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let grid = rows(&stdout(&o));
    let col = grid[0].iter().position(|c| c == "u=8").unwrap();
    assert_eq!(grid[15][0], "14");
    assert_eq!(grid[15][col], "26");

    let prims = rows(&stdout(&gfenum(&["primitives", "--max-degree", "14"])));
    for m in 1..=14 {
        let sum: i64 = grid[m + 1][2..]
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.parse::<i64>().unwrap())
            .sum();
        assert_eq!(prims[m][1], sum.to_string(), "m={m}");
    }
}

#[test]
fn zero_degree_is_usage_error() {
    for cmd in ["knots", "primitives", "framed"] {
        assert_eq!(gfenum(&[cmd, "--max-degree", "0"]).status.code(), Some(2));
    }
    assert_eq!(gfenum(&["nonsense"]).status.code(), Some(2));
    assert_eq!(gfenum(&["mzv", "--max-weight", "abc"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_formats_agree() {
    let a = gfenum(&["mzv", "--max-weight", "23"]);
    let b = gfenum(&["mzv", "--max-weight", "23"]);
    assert_eq!(a.stdout, b.stdout);

    let json = gfenum(&["--format", "json", "mzv", "--max-weight", "23"]);
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["meta"]["command"], "mzv");
    assert!(doc["meta"]["version"].is_string());
    let tsv = rows(&stdout(&a));
    assert_eq!(doc["columns"].as_array().unwrap().len(), tsv[0].len());
    let json_rows = doc["rows"].as_array().unwrap();
    assert_eq!(json_rows.len(), tsv.len() - 1);
    for (jr, tr) in json_rows.iter().zip(&tsv[1..]) {
        for (jc, tc) in jr.as_array().unwrap().iter().zip(tr) {
            let rendered = match jc {
                serde_json::Value::Null => String::new(),
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => {
                    assert!(n.is_i64());
                    n.to_string()
                }
                other => panic!("unexpected cell {other}"),
            };
            assert_eq!(&rendered, tc);
        }
    }
    let w23 = tsv.iter().find(|r| r[0] == "23" && r[1] == "7").unwrap();
    assert_eq!(w23[2], "4");
}

#[test]
fn euler_sums_and_verified_range_note() {
    let rows_m = rows(&stdout(&gfenum(&["mzv", "--max-weight", "12", "--euler-sums"])));
    assert_eq!(rows_m[0][2], "M");
    assert!(rows_m.iter().any(|r| r[..3] == ["12", "4", "0"]));
    let rows_d = rows(&stdout(&gfenum(&["mzv", "--max-weight", "24"])));
    let eight = rows_d.iter().find(|r| r[0] == "24" && r[1] == "8").unwrap();
    assert!(!eight[3].is_empty());
    let seven = rows_d.iter().find(|r| r[0] == "21" && r[1] == "7").unwrap();
    assert!(seven[3].is_empty());
}

#[test]
fn asymptote_reports_constants() {
    let o = gfenum(&["asymptote"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# r\t1.38027756909761"));
    assert!(text.contains("# C\t1.06260548918755"));
    assert!(!text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .any(|l| l.split('\t').nth(1).is_some_and(|c| c.contains('e'))));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.tsv");
    let o = gfenum(&["framed", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().last(), Some("20\t35222"));
}

#[test]
fn verify_shipped_and_mutated_data() {
    let o = gfenum(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# failed\t0"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ref.tsv");
    std::fs::write(
        &path,
        DEFAULT_REFERENCE.replace(
            "beta.11.8\ttable1 m=11 u=8\texact_value\t8",
            "beta.11.8\ttable1 m=11 u=8\texact_value\t9",
        ),
    )
    .unwrap();
    let o = gfenum(&["verify", "--data", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let fails: Vec<_> = rows(&stdout(&o))
        .into_iter()
        .filter(|r| r.get(3).is_some_and(|s| s == "FAIL"))
        .collect();
    assert_eq!(fails.len(), 1);
    assert_eq!(fails[0][0], "beta.11.8");

    let env = Command::new(env!("CARGO_BIN_EXE_gfenum"))
        .arg("verify")
        .env("GFENUM_DATA", &path)
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));

    std::fs::write(&path, "bad line without tabs\n").unwrap();
    assert_eq!(
        gfenum(&["verify", "--data", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        gfenum(&["verify", "--data", "/nonexistent/ref.tsv"]).status.code(),
        Some(2)
    );
}
