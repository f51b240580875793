use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn asuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asuper"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verify_exits_zero_with_exact_reports() {
    let o = asuper(&["verify", "--p", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["exact"] == true && r["max_residual"] == 0.0));
}

#[test]
fn verify_matrix_small() {
    for p in 1..=6 {
        for n in 1..=6 {
            let o = asuper(&["verify", "--p", &p.to_string(), "--n", &n.to_string()]);
            assert_eq!(o.status.code(), Some(0), "p={p} n={n}");
        }
    }
}

#[test]
fn verify_suite_selection_and_usage_errors() {
    let o = asuper(&["verify", "--p", "1", "--n", "4", "--suite", "iop", "--format", "human"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = asuper(&["verify", "--p", "1", "--n", "4", "--suite", "hp"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asuper(&["verify", "--p", "1", "--n", "4", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--suite"));
    let o = asuper(&["verify", "--p", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dims() {
    let v = json(&asuper(&["dims", "--p", "2", "--n", "5"]));
    assert_eq!(v["dim"], 16);
    let v = json(&asuper(&["dims", "--p", "7", "--n", "5"]));
    assert_eq!(v["dim"], 32);
}

#[test]
fn gpf_in_each_mode() {
    let o = asuper(&["gpf", "--p", "2", "--fugacities", "1,2,3", "--format", "human"]);
    assert_eq!(stdout(&o), "18\n");
    let v = json(&asuper(&["gpf", "--p", "2", "--fugacities", "1,2,3", "--exact"]));
    assert_eq!(v["Z"], "18");
    let v = json(&asuper(&["gpf", "--p", "2", "--degenerate", "--x", "1", "--n", "5", "--route", "additive_2F1"]));
    assert_eq!(v["Z"], 16.0);
    assert_eq!(v["route"], "additive_2F1");
    let v = json(&asuper(&["gpf", "--p", "1", "--equidistant", "--x", "1", "--q", "0.5", "--n", "2", "--route", "phi21"]));
    assert_eq!(v["Z"], 2.5);
    let v = json(&asuper(&["gpf", "--p", "3", "--tau", "1", "--mu", "0", "--epsilon", "0,0,0"]));
    assert_eq!(v["Z"], 8.0);
}

#[test]
fn gpf_usage_errors() {
    let o = asuper(&["gpf", "--p", "2", "--fugacities", "1,2", "--degenerate", "--x", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asuper(&["gpf", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asuper(&["gpf", "--p", "2", "--fugacities", "1,-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--fugacities"));
    let o = asuper(&["gpf", "--p", "2", "--degenerate", "--x", "2", "--n", "4", "--route", "multiplicative_2F1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = asuper(&["gpf", "--p", "2", "--exact", "--tau", "1", "--mu", "0", "--epsilon", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn averages_report_round_trips() {
    let o = asuper(&["averages", "--p", "2", "--fugacities", "1,2,3", "--epsilon", "1,2,3", "--exact"]);
    let v = json(&o);
    assert_eq!(v["Z"], "18");
    assert_eq!(v["Nbar"], "14/9");
    assert_eq!(v["Ebar"], "31/9");
    assert_eq!(v["theta_bar"], serde_json::json!(["1/3", "5/9", "2/3"]));
    for key in ["p", "n", "route", "Z", "Nbar", "theta_bar", "Ebar"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let report = asuper_core::ThermoReport::<num_rational::BigRational>::from_json(&v).unwrap();
    let again = asuper_core::emit::json_string(&report.to_json());
    assert_eq!(again, stdout(&o));

    let o = asuper(&["averages", "--p", "2", "--fugacities", "0.3,1.7,2.9"]);
    let report = asuper_core::ThermoReport::<f64>::from_json(&json(&o)).unwrap();
    assert_eq!(asuper_core::emit::json_string(&report.to_json()), stdout(&o));
}

#[test]
fn averages_csv_and_special_modes() {
    let o = asuper(&["averages", "--p", "2", "--fugacities", "1,2,3", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p,n,route,Z,Nbar,theta_bar_1,theta_bar_2,theta_bar_3");
    assert!(lines.next().unwrap().starts_with("2,3,symfun,18,1.5555555555555556"));
    let v = json(&asuper(&["averages", "--p", "2", "--degenerate", "--x", "1", "--n", "5", "--exact"]));
    assert_eq!(v["Nbar"], "25/16");
    let v = json(&asuper(&["averages", "--p", "2", "--equidistant", "--x", "1", "--q", "1/2", "--n", "2", "--exact"]));
    assert_eq!(v["Nbar"], "5/6");
    let v = json(&asuper(&[
        "averages", "--p", "1", "--equidistant", "--n", "3", "--epsilon1", "0", "--delta", "1", "--mu", "0", "--tau", "1",
    ]));
    assert!(v["Ebar"].as_f64().unwrap() > 0.0);
    let v = json(&asuper(&["averages", "--p", "5", "--fugacities", "1,1"]));
    assert_eq!(v["clamped"], true);
    assert_eq!(v["Nbar"], 1.0);
}

#[test]
fn figure_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    let out_s = out.to_str().unwrap();
    let o = asuper(&["figure", "--id", "1", "--out", out_s]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("fig1.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 202);
    assert_eq!(lines[0], "y,p1,p2,p3,p4,p5");
    assert!(lines.iter().all(|l| l.split(',').count() == 6));
    let first = std::fs::read(out.join("fig1.csv")).unwrap();
    asuper(&["figure", "--id", "1", "--out", out_s]);
    assert_eq!(std::fs::read(out.join("fig1.csv")).unwrap(), first);
    assert!(Path::new(&out.join("fig1.json")).exists());

    let o = asuper(&["figure", "--id", "3", "--grid", "0.1:0.9:9", "--out", out_s]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("fig3.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10);
    let o = asuper(&["figure", "--id", "4", "--out", out_s]);
    assert_eq!(o.status.code(), Some(2));
    let o = asuper(&["figure", "--id", "2", "--grid", "-1:1", "--out", out_s]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("raw.csv");
    let args = [
        "sample", "--p", "2", "--n", "3", "--fugacities", "1,2,3", "--count", "20000", "--seed", "5",
        "--dump", dump.to_str().unwrap(),
    ];
    let a = asuper(&args);
    let b = asuper(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let nbar = v["nbar_hat"].as_f64().unwrap();
    assert!((nbar - 14.0 / 9.0).abs() < 5.0 * v["nbar_se"].as_f64().unwrap());
    assert_eq!(std::fs::read_to_string(&dump).unwrap().lines().count(), 20001);
    let o = asuper(&[
        "sample", "--p", "5", "--n", "20", "--fugacities", "1", "--count", "50000", "--seed", "1", "--method",
        "metropolis",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["acceptance_rate"].as_f64().is_some());
    let o = asuper(&[
        "sample", "--p", "2", "--n", "3", "--fugacities", "1,2,3", "--count", "10", "--seed", "1", "--method",
        "metropolis",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    let o = asuper(&["gpf", "--p", "2", "--fugacities", "1,2,3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["Z"], 18.0);
}
