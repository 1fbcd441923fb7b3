use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cohom1::Table;
use cohom1_core::profiles::{extend_profile, Space};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom1")).args(args).output().expect("spawn cohom1")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn table(text: &str) -> Table {
    Table::from_csv(text).unwrap()
}

#[test]
fn list_shows_spaces_and_figures() {
    let s = ok(&["list"]);
    for name in ["S4", "CP2", "S7", "B7", "E_p", "W1", "W2"] {
        assert!(s.contains(name), "{name}");
    }
    assert!(s.contains("pi/6"));
}

#[test]
fn s4_sample_starts_collapsed() {
    let t = table(&ok(&["sample", "--space", "S4", "--grid", "65"]));
    assert_eq!(t.headers[0], "t");
    assert_eq!(t.rows.len(), 65);
    let f1 = t.column("f1").unwrap();
    assert_eq!(f1[0], 0.0);
    assert!((f1[64] - 3.0).abs() < 1e-12);
}

#[test]
fn b7_sample_matches_library_extension() {
    let t = table(&ok(&["sample", "--space", "B7", "--range", "0:3L", "--grid", "101"]));
    let ts = t.column("t").unwrap();
    assert!((ts[100] - std::f64::consts::PI).abs() < 1e-15);
    let (f, g, h) = (t.column("f2").unwrap(), t.column("g2").unwrap(), t.column("h2").unwrap());
    for (j, &x) in ts.iter().enumerate() {
        let b = extend_profile(Space::B7, None, None, x).unwrap();
        assert_eq!((f[j], g[j], h[j]), (b.f[1], b.g[1], b.h[1]));
    }
}

#[test]
fn sample_rejects_bad_input() {
    assert_eq!(run(&["sample", "--space", "S4", "--range", "2:1"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--space", "E_p", "--p", "0"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--space", "S4", "--grid", "10"]).status.code(), Some(2));
    assert_eq!(run(&["sample", "--space", "S9"]).status.code(), Some(2));
}

#[test]
fn csv_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w2.csv");
    let p = path.to_str().unwrap();
    ok(&["sample", "--space", "W2", "--eps", "0.7", "--range", "0:4L", "--out", p]);
    let text = fs::read_to_string(&path).unwrap();
    let t = table(&text);
    assert_eq!(t.to_csv().unwrap(), text);
    assert!(t.rows.iter().flatten().all(|x| x.is_finite()));
}

#[test]
fn inverse_sample_marks_singular_points() {
    let t = table(&ok(&["sample", "--space", "B7", "--series", "inverse", "--range", "0:L", "--grid", "65"]));
    assert!(t.column("F1").unwrap()[0].is_nan());
    assert!(t.column("F1").unwrap()[32].is_finite());
}

fn polylines(svg: &str) -> usize {
    svg.matches("<polyline").count()
}

#[test]
fn plot_figure_3_panel() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s7.csv");
    ok(&["sample", "--space", "S7", "--range", "0:3L", "--out", csv.to_str().unwrap()]);
    let svg = ok(&["plot", "--in", csv.to_str().unwrap(), "--figure", "3", "--panel", "1"]);
    assert!(svg.starts_with("<svg"));
    assert_eq!(polylines(&svg), 3);
    for s in ["f1", "g1", "h1"] {
        assert!(svg.contains(&format!("id=\"series-{s}\"")), "{s}");
    }
}

fn first_and_last_point(svg: &str) -> (String, String) {
    let start = svg.find("points=\"").unwrap() + 8;
    let pts: Vec<&str> = svg[start..svg[start..].find('"').unwrap() + start].split_whitespace().collect();
    (pts[0].to_string(), pts[pts.len() - 1].to_string())
}

#[test]
fn plot_embedding_closes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("emb.csv");
    ok(&["hitchin", "--k", "3", "--emit", "embedding", "--out", csv.to_str().unwrap()]);
    let svg = ok(&["plot", "--in", csv.to_str().unwrap(), "--figure", "12"]);
    assert_eq!(polylines(&svg), 1);
    let (a, b) = first_and_last_point(&svg);
    assert_eq!(a, b);
}

#[test]
fn plot_rejects_missing_series() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    fs::write(&csv, "t,f1\n0.0,1.0\n1.0,2.0\n").unwrap();
    let o = run(&["plot", "--in", csv.to_str().unwrap(), "--figure", "3"]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&csv, "t,f1,g1,h1\n0.0,NaN,1.0,1.0\n1.0,NaN,2.0,2.0\n").unwrap();
    let o = run(&["plot", "--in", csv.to_str().unwrap(), "--figure", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("f1"));
    assert_eq!(run(&["plot", "--in", csv.to_str().unwrap(), "--figure", "13"]).status.code(), Some(2));
}

fn summary(text: &str) -> Value {
    let last = text.lines().last().unwrap();
    serde_json::from_str::<Value>(last).unwrap()["summary"].clone()
}

#[test]
fn verify_collapse_reports_json_lines() {
    let o = run(&["verify", "--suite", "collapse"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (checks, last) = lines.split_at(lines.len() - 1);
    assert!(checks.iter().all(|c| c["pass"] == true && c["suite"] == "collapse"));
    assert_eq!(last[0]["summary"]["checks"].as_u64().unwrap() as usize, checks.len());
    assert_eq!(last[0]["summary"]["pass"], true);
}

#[test]
fn config_file_is_honoured_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# test config\ngrid_n = 70\ntol.weyl = 1e-300\n").unwrap();
    let c = cfg.to_str().unwrap();

    let t = table(&ok(&["--config", c, "sample", "--space", "S4"]));
    assert_eq!(t.rows.len(), 70);
    let t = table(&ok(&["--config", c, "--grid", "80", "sample", "--space", "S4"]));
    assert_eq!(t.rows.len(), 80);

    let o = run(&["--config", c, "verify", "--suite", "weyl"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(summary(&stdout(&o))["pass"], false);
    let o = run(&["--config", c, "verify", "--suite", "weyl", "--tol", "weyl=1e-6"]);
    assert_eq!(o.status.code(), Some(0));

    fs::write(&cfg, "tol.nonsense = 1\n").unwrap();
    assert_eq!(run(&["--config", c, "list"]).status.code(), Some(2));
}

#[test]
fn classify_prints_survivors() {
    let s = ok(&["classify", "--template", "ex4", "--bound", "10"]);
    assert!(s.contains("survivors 5"), "{s}");
    assert!(s.contains("B7") && s.contains("P_4"));
    let s = ok(&["classify", "--template", "ex2", "--bound", "10"]);
    assert!(s.contains("survivors 0"));
}

#[test]
fn hitchin_emits_tables() {
    let t = table(&ok(&["hitchin", "--k", "4", "--emit", "curvature", "--grid", "65"]));
    assert_eq!(t.headers, ["t", "sec1", "sec2", "sec3"]);
    assert!(t.column("sec1").unwrap().iter().all(|&x| x > 0.0));
    let t = table(&ok(&["hitchin", "--k", "6", "--emit", "profile", "--grid", "65"]));
    assert_eq!(t.column("h").unwrap()[0], 0.0);
    assert_eq!(run(&["hitchin", "--k", "5", "--emit", "profile"]).status.code(), Some(2));
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn figure_writes_requested_formats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    ok(&["--output-dir", d, "--format", "svg", "figure", "8"]);
    assert_eq!(files(dir.path()), ["fig8_1.svg", "fig8_2.svg"]);
}
