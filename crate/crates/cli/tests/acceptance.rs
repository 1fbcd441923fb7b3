//! Acceptance criteria 1–9, one PASS/FAIL line each. Run with
//! `cargo test -p cohom1 --test acceptance -- --nocapture` to see the report.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cohom1_core::classify::{enumerate, golden_set, TemplateId};
use cohom1_core::groups::{self, DiagramParams};
use cohom1_core::hitchin::{embed_revolution, speed_defect, sphere_profile, turning};
use cohom1_core::verify::{self, Check, VerifyOptions, SLOPE_TOL, SPEED_TOL, TURNING_REL_TOL};

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Outcome {
    fn ok(&self) -> bool {
        self.pass && self.limit.is_none_or(|l| self.elapsed < l)
    }

    fn line(&self) -> String {
        let limit = self.limit.map_or(String::new(), |l| format!(" / limit {:.0}s", l.as_secs_f64()));
        format!(
            "criterion {}: {} {} ({}; {:.2}s{limit})",
            self.id,
            if self.ok() { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
        )
    }
}

fn timed<F: FnOnce() -> (bool, String)>(id: u32, title: &'static str, limit: Option<f64>, f: F) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = f();
    Outcome { id, title, pass, detail, elapsed: start.elapsed(), limit: limit.map(Duration::from_secs_f64) }
}

fn opts() -> VerifyOptions {
    VerifyOptions { grid_n: 1001 }
}

/// Pass when every hard check passes; detail names the first failure.
fn summarize(checks: &[Check]) -> (bool, String) {
    let failed: Vec<&Check> = checks.iter().filter(|c| c.failed_hard()).collect();
    let worst = checks
        .iter()
        .filter(|c| c.bound == verify::Bound::AtMost)
        .map(|c| c.measured / c.tolerance)
        .fold(0.0, f64::max);
    let mut detail = format!("{} checks, worst residual/tolerance {worst:.2e}", checks.len());
    if let Some(c) = failed.first() {
        detail.push_str(&format!(", {} failed, first: {} = {:e} vs {:e}", failed.len(), c.name, c.measured, c.tolerance));
    }
    (failed.is_empty(), detail)
}

fn collapse() -> Outcome {
    timed(1, "collapse identities", Some(1.0), || summarize(&verify::collapse().unwrap()))
}

fn symmetry() -> Outcome {
    timed(2, "Weyl symmetry rules", Some(5.0), || {
        let checks: Vec<Check> =
            verify::weyl(&opts()).unwrap().into_iter().filter(|c| !c.name.contains("Weyl order")).collect();
        summarize(&checks)
    })
}

fn weyl_orders() -> Outcome {
    timed(3, "Weyl orders", None, || {
        let expect = [("S4", 6), ("CP2", 4), ("S7", 12), ("B7", 6), ("E_p", 4), ("W2", 8)];
        let mut got = Vec::new();
        let mut pass = true;
        for (name, n) in expect {
            let params = DiagramParams { p: (name == "E_p").then_some(3), k: None, eps: None };
            let w = groups::weyl_order(&groups::catalog(name, &params).unwrap()).unwrap();
            pass &= w == n;
            got.push(format!("{name}={w}"));
        }
        (pass, got.join(" "))
    })
}

fn oracles() -> Outcome {
    timed(4, "oracle equivalence", Some(10.0), || summarize(&verify::oracle(&opts()).unwrap()))
}

fn is_embedding_check(c: &Check) -> bool {
    c.name.contains("rho'") || c.name.contains("h'(") || c.name.contains("total curvature")
}

fn hitchin_curvature() -> Outcome {
    timed(5, "Hitchin endpoints and curvature", Some(20.0), || {
        let checks: Vec<Check> =
            verify::hitchin_suite(&opts()).unwrap().into_iter().filter(|c| !is_embedding_check(c)).collect();
        summarize(&checks)
    })
}

fn embedding() -> Outcome {
    timed(6, "embedding and total curvature", Some(5.0), || {
        let mut pass = true;
        let mut parts = Vec::new();
        for k in [3u32, 4, 6] {
            let s = sphere_profile(k, 1001).unwrap();
            let e = embed_revolution(&s, 1001).unwrap();
            let speed = speed_defect(&s, &e, 1e-3 * s.l()).unwrap();
            let tr = turning(&s, 1e-5).unwrap();
            let target = 2.0 * PI * (1.0 + 1.0 / k as f64);
            let d0 = (tr.slope_start - 1.0).abs();
            let d1 = (tr.slope_end + 1.0 / k as f64).abs();
            let gb = (tr.total_curvature - target).abs() / target;
            let bf = (tr.total_curvature - tr.boundary_formula).abs() / target;
            pass &= speed < SPEED_TOL && d0 < SLOPE_TOL && d1 < SLOPE_TOL && gb < TURNING_REL_TOL && bf < TURNING_REL_TOL;
            parts.push(format!("k={k}: speed {speed:.1e} h'0 {d0:.1e} h'3L {d1:.1e} GB {gb:.1e}"));
        }
        (pass, parts.join("; "))
    })
}

fn classification() -> Outcome {
    timed(7, "classification golden sets", Some(1.0), || {
        let mut pass = true;
        let mut sizes = Vec::new();
        for id in TemplateId::ALL {
            let got: Vec<_> = enumerate(id, 20).unwrap().survivors;
            let want = golden_set(id, 20).unwrap();
            pass &= got.iter().copied().collect::<std::collections::BTreeSet<_>>() == want;
            sizes.push(format!("{id}={}", got.len()));
        }
        (pass, format!("N=20: {}", sizes.join(" ")))
    })
}

fn classification_stable() -> bool {
    (25..=50).step_by(5).all(|n| {
        TemplateId::ALL.iter().all(|&id| {
            let got: std::collections::BTreeSet<_> = enumerate(id, n).unwrap().survivors.into_iter().collect();
            got == golden_set(id, n).unwrap()
        })
    })
}

fn convexity() -> Outcome {
    timed(8, "inverse convexity", None, || {
        let checks = verify::convexity(&opts()).unwrap();
        let soft_fail = checks.iter().filter(|c| !c.hard && !c.pass).count();
        let (pass, detail) = summarize(&checks);
        (pass, format!("{detail}, {soft_fail} report-only below -1e-6"))
    })
}

fn bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cohom1")).args(args).output().unwrap()
}

fn emit_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let d = dir.to_str().unwrap();
    assert!(bin(&["--output-dir", d, "figure"]).status.success());
    for k in ["3", "4", "6"] {
        for what in ["curvature", "profile", "embedding"] {
            let out = dir.join(format!("hitchin_{k}_{what}.csv"));
            assert!(bin(&["hitchin", "--k", k, "--emit", what, "--out", out.to_str().unwrap()]).status.success());
        }
    }
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    timed(9, "determinism", Some(60.0), || {
        let v = bin(&["verify", "--suite", "all"]);
        let code = v.status.code();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let fa = emit_all(a.path());
        let fb = emit_all(b.path());
        let same = fa == fb;
        let svgs = fa.iter().filter(|(n, _)| n.ends_with(".svg")).count();
        let csvs = fa.len() - svgs;
        (code == Some(0) && same && svgs == 24, format!("verify all exit {code:?}; {csvs} CSV + {svgs} SVG identical: {same}"))
    })
}

#[test]
fn acceptance() {
    let mut outcomes = vec![collapse(), symmetry(), weyl_orders(), oracles(), hitchin_curvature(), embedding()];
    let mut c7 = classification();
    let stable = classification_stable();
    c7.pass &= stable;
    c7.detail.push_str(&format!("; stable up to N=50: {stable}"));
    outcomes.extend([c7, convexity(), determinism()]);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.ok()).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
