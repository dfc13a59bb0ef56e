use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hecke-farey"));
    c.env_remove("HECKE_FAREY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV table (comment lines and header removed).
fn rows(csv: &str) -> Vec<Vec<String>> {
    let body: String = csv.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    let mut r = csv::Reader::from_reader(body.as_bytes());
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

fn header(csv: &str) -> Vec<String> {
    let line = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    line.split(',').map(str::to_string).collect()
}

fn meta<'a>(csv: &'a str, key: &str) -> Option<&'a str> {
    csv.lines().find_map(|l| l.strip_prefix("# ")?.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn enumerate_classical_farey() {
    let out = ok(&["enumerate", "--q", "3", "--tau", "5", "--interval", "0,1"]);
    assert_eq!(
        header(&out),
        ["index", "x_exact", "y_exact", "x_float", "y_float", "slope_float", "region_index", "roof_float"]
    );
    let r = rows(&out);
    assert_eq!(r.len(), 11);
    assert_eq!((r[4][1].as_str(), r[4][2].as_str()), ("5/1", "2/1"));
    assert_eq!(r[4][5], "4.0000000000000002e-1");
    assert_eq!(meta(&out, "q"), Some("3"));
}

#[test]
fn enumerate_golden_unit_strip() {
    assert_eq!(rows(&ok(&["enumerate", "--q", "5", "--tau", "1"])).len(), 1);
    let r = rows(&ok(&["enumerate", "--q", "5", "--tau", "1", "--interval", "0,2"]));
    assert_eq!(r.len(), 2);
    assert_eq!((r[1][1].as_str(), r[1][2].as_str()), ("1,0/1", "0,1/1"));
}

#[test]
fn enumerate_negative_slopes() {
    let r = rows(&ok(&["enumerate", "--q", "3", "--tau", "5", "--interval", "-1,1"]));
    assert_eq!(r.len(), 21);
    assert_eq!(r[0][2], "-1/1");
}

#[test]
fn invalid_input_fails_with_message() {
    for args in [
        &["enumerate", "--q", "2", "--tau", "5"][..],
        &["enumerate", "--q", "3"],
        &["enumerate", "--q", "3", "--tau", "5", "--interval", "1,0"],
        &["orbit", "--q", "5", "--a", "2", "--b", "0"],
        &["stats", "mean-roof", "--q", "5", "--method", "montecarlo"],
        &["stats", "count-triangle", "--q", "3", "--tau", "10", "--e1", "1,0", "--e2", "2,0"],
        &["enumerate", "--q", "3", "--tau", "5", "--format", "xml"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(out.stdout.is_empty(), "{args:?} wrote output");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn orbit_rows() {
    let r = rows(&ok(&["orbit", "--q", "3", "--a", "1", "--b", "1", "--steps", "3"]));
    assert_eq!(r.len(), 3);
    for row in &r {
        assert_eq!(row[1..], r[0][1..]);
    }
    let r = rows(&ok(&["orbit", "--q", "5", "--a", "1", "--b", "1", "--steps", "1"]));
    assert_eq!((r[0][3].as_str(), r[0][4].as_str()), ("4", "1"));
}

#[test]
fn mean_roof_classical() {
    let out = ok(&["stats", "mean-roof", "--q", "3", "--tol", "1e-6"]);
    let v: f64 = rows(&out)[0][1].parse().unwrap();
    assert!((v - std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-5);
}

#[test]
fn cent_dist_table() {
    let out = ok(&["stats", "cent-dist", "--q", "5", "--grid", "0:0.1:5", "--samples", "1e6", "--seed", "1"]);
    let r = rows(&out);
    assert_eq!(r.len(), 51);
    assert_eq!(r[0][1].parse::<f64>().unwrap(), 1.0);
    let vals: Vec<f64> = r.iter().map(|row| row[1].parse().unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(meta(&out, "seed").or(meta(&out, "limiting.seed")), Some("1"));
}

#[test]
fn dirichlet_rows_pass() {
    let r = rows(&ok(&["stats", "dirichlet", "--q", "3", "--alpha", "7050459/9901099", "--count", "5"]));
    assert_eq!(r.len(), 5);
    assert!(r.iter().all(|row| row[7] == "true"));
}

#[test]
fn monte_carlo_output_ignores_thread_count() {
    let args = ["stats", "slope-gap", "--q", "5", "--grid", "0:0.5:4", "--samples", "300000", "--seed", "9"];
    let one = bin().args(args).args(["--threads", "1"]).output().unwrap();
    let many = bin().args(args).args(["--threads", "3"]).output().unwrap();
    let env = bin().args(args).env("HECKE_FAREY_THREADS", "2").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "q = 3\ntau = \"5\"\ninterval = \"0,1\"\nformat = \"json\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(&["--config", c, "enumerate"])).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
    let v: serde_json::Value = serde_json::from_str(&ok(&["--config", c, "enumerate", "--tau", "3"])).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert!(ok(&["--config", c, "enumerate", "--format", "csv"]).starts_with("# command=enumerate"));

    std::fs::write(&cfg, "q = 3\ncolour = \"red\"\n").unwrap();
    assert!(!run(&["--config", c, "enumerate"]).status.success());
}

#[test]
fn files_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ford.svg");
    ok(&["stats", "ford-svg", "--q", "5", "--tau", "10", "--interval", "0;lambda", "--output", out.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains("<svg") && svg.contains("<circle"));

    let cloud = dir.path().join("cloud.svg");
    let table = ok(&["stats", "square-equi", "--q", "5", "--tau", "20", "--grid-n", "4", "--svg", cloud.to_str().unwrap()]);
    assert_eq!(rows(&table).len(), 16);
    assert_eq!(meta(&table, "dihedral"), Some("true"));
    assert!(std::fs::read_to_string(&cloud).unwrap().contains("<circle"));

    let bad = dir.path().join("missing").join("x.csv");
    let r = run(&["enumerate", "--q", "3", "--tau", "5", "--output", bad.to_str().unwrap()]);
    assert!(!r.status.success());
    assert!(String::from_utf8_lossy(&r.stderr).contains("missing"));
}

#[test]
fn json_output_matches_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let commands: [&[&str]; 8] = [
        &["enumerate", "--q", "5", "--tau", "6"],
        &["orbit", "--q", "7", "--a", "1", "--b", "1/2"],
        &["stats", "mean-roof", "--q", "4", "--method", "both", "--samples", "20000", "--seed", "1"],
        &["stats", "slope-gap", "--q", "3", "--kind", "both", "--tau", "30", "--samples", "20000", "--seed", "2"],
        &["stats", "count-triangle", "--q", "3", "--tau", "30", "--e1", "1,0", "--e2", "1,1"],
        &["stats", "square-equi", "--q", "3", "--tau", "10", "--grid-n", "2"],
        &["stats", "ford-svg", "--q", "3", "--tau", "6"],
        &["stats", "dirichlet", "--q", "5", "--alpha", "1/3", "--count", "4"],
    ];
    for args in commands {
        let text = ok(&[args, &["--format", "json"]].concat());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest", "--q", "6"]);
    assert!(rows(&out).iter().all(|r| r[2] == "true"));
}
