use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_euler-census"));
    c.env_remove("EULER_CENSUS_THREADS");
    c
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.txt"))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-12)
}

/// Same shape and strings, numbers equal to 1e-9 relative; timings ignored.
fn assert_json_matches(got: &Value, want: &Value, path: &str) {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            let mut gk: Vec<_> = g.keys().collect();
            let mut wk: Vec<_> = w.keys().collect();
            gk.sort();
            wk.sort();
            assert_eq!(gk, wk, "keys at {path}");
            for (k, wv) in w {
                if k != "elapsed_ms" {
                    assert_json_matches(&g[k], wv, &format!("{path}.{k}"));
                }
            }
        }
        (Value::Array(g), Value::Array(w)) => {
            assert_eq!(g.len(), w.len(), "length at {path}");
            for (i, (a, b)) in g.iter().zip(w).enumerate() {
                assert_json_matches(a, b, &format!("{path}[{i}]"));
            }
        }
        (Value::Number(a), Value::Number(b)) => {
            assert!(close(a.as_f64().unwrap(), b.as_f64().unwrap()), "{path}: {a} vs {b}");
        }
        _ => assert_eq!(got, want, "at {path}"),
    }
}

fn check_json(args: &[&str], golden_name: &str) {
    let out = stdout(&run(bin().args(args)));
    let got: Value = serde_json::from_str(&out).unwrap();
    let want: Value = serde_json::from_str(&golden(golden_name)).unwrap();
    assert_json_matches(&got, &want, "$");
}

fn check_csv(args: &[&str], golden_name: &str) {
    let out = stdout(&run(bin().args(args)));
    let want = golden(golden_name);
    let (got_lines, want_lines): (Vec<_>, Vec<_>) = (out.lines().collect(), want.lines().collect());
    assert_eq!(got_lines.len(), want_lines.len());
    assert_eq!(got_lines[0], want_lines[0], "header");
    for (g, w) in got_lines.iter().zip(&want_lines).skip(1) {
        for (a, b) in g.split(',').zip(w.split(',')) {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!(close(x, y), "{a} vs {b} in {g}"),
                _ => assert_eq!(a, b, "in {g}"),
            }
        }
    }
}

#[test]
fn analyze_matches_golden() {
    check_json(&["analyze", fixture("k5").to_str().unwrap()], "analyze_k5.json");
    check_json(&["analyze", fixture("k4").to_str().unwrap()], "analyze_k4.json");
    check_json(&["analyze", fixture("bowtie").to_str().unwrap()], "analyze_bowtie.json");
}

#[test]
fn analyze_complete_graph_values() {
    let out = stdout(&run(bin().args(["analyze", fixture("k5").to_str().unwrap()])));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["spectral"]["lambda2"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert_eq!(v["spectral"]["t_exact"], "125");
    assert_eq!(v["k_ec"].as_f64(), Some(0.0));
}

#[test]
fn compare_matches_golden() {
    let k3 = fixture("k3");
    check_json(
        &["compare", k3.to_str().unwrap(), "--methods", "formula,exact,mc,quadrature", "--samples", "20000", "--seed", "3"],
        "compare_k3.json",
    );
    check_json(&["compare", fixture("c4").to_str().unwrap(), "--methods", "exact,quadrature"], "compare_c4.json");
    check_json(
        &["compare", fixture("bowtie").to_str().unwrap(), "--methods", "exact,mc", "--samples", "20000", "--seed", "11"],
        "compare_bowtie.json",
    );
}

#[test]
fn triangle_quadrature_agrees_with_exact() {
    let out = stdout(&run(bin().args(["compare", fixture("k3").to_str().unwrap(), "--methods", "exact,quadrature"])));
    let v: Value = serde_json::from_str(&out).unwrap();
    let exact = v["ln_ec_exact"].as_f64().unwrap();
    assert!((exact - 2f64.ln()).abs() < 1e-15);
    assert!((v["ln_ec_quadrature"].as_f64().unwrap() - exact).abs() <= 0.01 * exact);
}

#[test]
fn sweeps_match_golden() {
    check_csv(&["sweep", "--family", "kn", "--n", "3,5,7"], "sweep_kn.csv");
    check_csv(&["sweep", "--family", "cycle", "--n", "4..8"], "sweep_cycle.csv");
    check_csv(
        &["sweep", "--family", "random-even", "--n", "8,10", "--seed", "2", "--methods", "exact,mc", "--samples", "5000"],
        "sweep_random.csv",
    );
}

#[test]
fn sweep_records_instance_errors_and_writes_file() {
    let dir = std::env::temp_dir().join(format!("euler-census-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("kn.csv");
    stdout(&run(bin().args(["sweep", "--family", "kn", "--n", "4,5", "--out", out.to_str().unwrap()])));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("kn-4,4,6,") && !rows[1].ends_with(','));
    assert!(rows[2].starts_with("kn-5,") && rows[2].ends_with(','));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_does_not_depend_on_thread_cap() {
    let args = ["compare", "fixtures/octahedron.txt", "--methods", "exact,mc", "--samples", "30000", "--seed", "5"];
    let strip = |o: &Output| -> Value {
        let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
        for r in v["runs"].as_array_mut().unwrap() {
            r["elapsed_ms"] = Value::Null;
        }
        v
    };
    let one = strip(&run(bin().current_dir(root()).args(args).env("EULER_CENSUS_THREADS", "1")));
    let three = strip(&run(bin().current_dir(root()).args(args).env("EULER_CENSUS_THREADS", "3")));
    assert_eq!(one, three);
}

#[test]
fn gen_is_reproducible_and_valid() {
    let dir = std::env::temp_dir().join(format!("euler-census-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.txt"), dir.join("b.txt"));
    for p in [&a, &b] {
        let o = run(bin().args(["gen", "--n", "6", "--p", "0.8", "--seed", "1", "--out", p.to_str().unwrap()]));
        assert!(o.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let g = euler_census::parse_graph(std::str::from_utf8(&ta).unwrap()).unwrap();
    assert!(euler_census::validate(&g).all_ok());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(bin().current_dir(root()).args(args)).status.code();
    let empty = std::env::temp_dir().join(format!("euler-census-empty-{}.txt", std::process::id()));
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&["analyze", empty.to_str().unwrap()]), Some(2));
    std::fs::remove_file(&empty).unwrap();
    assert_eq!(code(&["analyze", "fixtures/k4.txt"]), Some(0));
    assert_eq!(code(&["analyze", "fixtures/missing.txt"]), Some(2));
    assert_eq!(code(&["compare", "fixtures/two_triangles.txt"]), Some(2));
    assert_eq!(code(&["compare", "fixtures/k4.txt"]), Some(2));
    assert_eq!(code(&["compare", "fixtures/k3.txt", "--methods", "nope"]), Some(2));
    assert_eq!(code(&["compare", "fixtures/k3.txt", "--methods", "mc", "--samples", "10"]), Some(2));
    assert_eq!(code(&["sweep", "--family", "petersen", "--n", "5"]), Some(2));
    assert_eq!(code(&["gen", "--n", "40", "--p", "1e-9", "--seed", "1", "--out", "/dev/null"]), Some(3));
    assert_eq!(code(&["gen", "--n", "6", "--p", "1.5", "--seed", "1", "--out", "/dev/null"]), Some(2));
    assert_eq!(code(&["bogus"]), Some(2));
    let capped = run(bin().current_dir(root()).args(["analyze", "fixtures/k3.txt"]).env("EULER_CENSUS_THREADS", "0"));
    assert_eq!(capped.status.code(), Some(0), "analyze ignores the worker cap");
    let capped = run(bin().current_dir(root()).args(["compare", "fixtures/k3.txt"]).env("EULER_CENSUS_THREADS", "0"));
    assert_eq!(capped.status.code(), Some(2));
}
