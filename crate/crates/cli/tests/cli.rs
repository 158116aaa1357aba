use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_multicover"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SINGLE: &str = "p msc 1 3\nd 2\ne 1\ne 1\ne 1\n";

#[test]
fn threshold_on_single_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "single.msc", SINGLE);
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "solve",
        "--input",
        &f,
        "--algo",
        "threshold",
    ])))
    .unwrap();
    assert_eq!(v["cover_size"], 2);
    assert_eq!(v["achieved_ratio"], 1.0);
    assert_eq!(v["opt_star"], "2");
}

#[test]
fn hybrid_json_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.msc");
    let f = f.to_str().unwrap();
    stdout(&run(&[
        "gen",
        "random",
        "--n",
        "25",
        "--m",
        "80",
        "--max-edge-size",
        "3",
        "--b-min",
        "2",
        "--b-max",
        "4",
        "--seed",
        "3",
        "--output",
        f,
    ]));
    let args = [
        "solve",
        "--input",
        f,
        "--algo",
        "hybrid",
        "--k",
        "2",
        "--epsilon",
        "1/2",
        "--trials",
        "10",
        "--seed",
        "42",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trials"], 10);
    assert_eq!(v["epsilon"], "1/2");
}

#[test]
fn exact_on_gap_k3() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.msc");
    let f = f.to_str().unwrap();
    stdout(&run(&["gen", "gap", "--k", "3", "--b", "1", "--output", f]));
    let v: Value =
        serde_json::from_str(&stdout(&run(&["solve", "--input", f, "--algo", "exact"]))).unwrap();
    assert_eq!(v["opt"], 3);
    assert_eq!(v["cover_size"], 3);
    assert_eq!(v["opt_star"], "7/4");
}

#[test]
fn gen_gap_k2_is_canonical() {
    let text = stdout(&run(&["gen", "gap", "--k", "2", "--b", "1"]));
    assert_eq!(text, "p msc 3 3\nd 1 1 1\ne 1 3\ne 2 3\ne 1 2\n");
}

#[test]
fn gen_random_reproducible() {
    let args = [
        "gen",
        "random",
        "--seed",
        "7",
        "--n",
        "10",
        "--m",
        "20",
        "--max-edge-size",
        "4",
        "--b-min",
        "2",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn gen_reduce_on_gap_base() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(
        dir.path(),
        "base.msc",
        "p msc 3 3\nd 1 1 1\ne 1 3\ne 2 3\ne 1 2\n",
    );
    let text = stdout(&run(&["gen", "reduce", "--input", &base, "--b", "2"]));
    // dual of {1,3,4},{2,3,4},{1,2,4}: one vertex per edge, one edge per base vertex
    assert_eq!(text, "p msc 3 4\nd 2 2 2\ne 1 3\ne 2 3\ne 1 2\ne 1 2 3\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.msc", "p msc 1 1\nd 1\ne 2\n");
    let infeasible = write(dir.path(), "inf.msc", "p msc 1 1\nd 2\ne 1\n");
    let single = write(dir.path(), "single.msc", SINGLE);
    assert_eq!(run(&["solve", "--input", &bad]).status.code(), Some(2));
    assert_eq!(
        run(&["solve", "--input", &infeasible]).status.code(),
        Some(3)
    );
    // δ = 2 admits ε ∈ [1/4, 1/2]
    assert_eq!(
        run(&["solve", "--input", &single, "--epsilon", "1/8"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["solve", "--input", &single, "--epsilon", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["gen", "gap", "--k", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "gen",
            "random",
            "--n",
            "5",
            "--m",
            "1",
            "--max-edge-size",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    let missing = dir.path().join("none.msc");
    assert_eq!(
        run(&["solve", "--input", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn dump_lp_writes_lp_file() {
    let dir = tempfile::tempdir().unwrap();
    let single = write(dir.path(), "single.msc", SINGLE);
    let lp = dir.path().join("x.lp");
    stdout(&run(&[
        "solve",
        "--input",
        &single,
        "--dump-lp",
        lp.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(lp).unwrap();
    assert!(text.contains("Minimize") && text.contains("v1: x1 + x2 + x3 >= 2"));
}

#[test]
fn bench_empty_corpus_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&run(&["bench", "--corpus", dir.path().to_str().unwrap()]));
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("instance,n,m,"));
}

fn strip_wall(csv: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(csv.as_bytes());
    let idx = r
        .headers()
        .unwrap()
        .iter()
        .position(|h| h == "wall_ms")
        .unwrap();
    r.records()
        .map(|rec| {
            rec.unwrap()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, f)| f.to_string())
                .collect()
        })
        .collect()
}

#[test]
fn bench_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path();
    for seed in 0..4 {
        let f = corpus.join(format!("r{seed}.msc"));
        stdout(&run(&[
            "gen",
            "random",
            "--n",
            "12",
            "--m",
            "30",
            "--max-edge-size",
            "3",
            "--b-min",
            "2",
            "--b-max",
            "3",
            "--seed",
            &seed.to_string(),
            "--output",
            f.to_str().unwrap(),
        ]));
    }
    write(corpus, "broken.msc", "p msc 2 1\n");
    write(corpus, "ignored.txt", "not an instance");
    let c = corpus.to_str().unwrap();
    let csv1 = stdout(&run(&["bench", "--corpus", c, "--seed", "5"]));
    let csv2 = stdout(&run(&["bench", "--corpus", c, "--seed", "5"]));
    assert_eq!(strip_wall(&csv1), strip_wall(&csv2));

    let mut reader = csv::Reader::from_reader(csv1.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    // 5 instances × 4 algorithms + summary
    assert_eq!(rows.len(), 21);
    assert_eq!(&rows[20][col("instance")], "SUMMARY");
    let ids: Vec<(&str, &str)> = rows[..20]
        .iter()
        .map(|r| {
            (
                r.get(col("instance")).unwrap(),
                r.get(col("algorithm")).unwrap(),
            )
        })
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for r in &rows {
        let f = &r[col("success_frequency")];
        if !f.is_empty() {
            let f: f64 = f.parse().unwrap();
            assert!((0.0..=1.0).contains(&f));
        }
        if &r[col("instance")] == "broken" {
            assert!(!r[col("error")].is_empty());
            continue;
        }
        if &r[col("algorithm")] == "threshold" && &r[col("instance")] != "SUMMARY" {
            let ratio: f64 = r[col("achieved_ratio")].parse().unwrap();
            let delta: f64 = r[col("delta")].parse().unwrap();
            assert!(ratio <= delta);
        }
    }

    let json = stdout(&run(&[
        "bench", "--corpus", c, "--seed", "5", "--format", "json",
    ]));
    let records: Vec<Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(&rows) {
        for (i, name) in headers.iter().enumerate() {
            if name == "wall_ms" {
                continue;
            }
            let field = &row[i];
            let value = &rec[name];
            let rendered = match value {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            if let (Ok(a), Ok(b)) = (field.parse::<f64>(), rendered.parse::<f64>()) {
                assert_eq!(a, b, "{name}");
            } else {
                assert_eq!(field, &rendered, "{name}");
            }
        }
    }
}

#[test]
fn gap_report_table() {
    let out = stdout(&run(&["gap-report", "--k-max", "3", "--format", "json"]));
    let rows: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["opt_star"], "3/2");
    assert_eq!(rows[0]["opt"], 2);
    assert_eq!(rows[1]["opt"], 3);
}
