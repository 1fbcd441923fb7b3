//! Figure registry and the data generators shared with `sample` and
//! `hitchin`.

use cohom1_core::hitchin::{self, HitchinEnd, ProfileCurve};
use cohom1_core::numeric::linspace;
use cohom1_core::profiles::{MetricProfile, Space, SERIES_NAMES};

use crate::{CliError, Result, Table};

pub const INVERSE_NAMES: [&str; 9] = ["F1", "F2", "F3", "G1", "G2", "G3", "H1", "H2", "H3"];

/// The nine metric functions on an n-point grid of [a, b].
pub fn metric_table(prof: &MetricProfile, a: f64, b: f64, n: usize) -> Result<Table> {
    let mut t = Table::new(std::iter::once("t").chain(SERIES_NAMES));
    for x in linspace(a, b, n) {
        let vals = prof.extend(x)?.as_array();
        t.push(std::iter::once(x).chain(vals).collect());
    }
    Ok(t)
}

/// Inverse blocks (F, G, H) on the grid; NaN where a block is singular.
pub fn inverse_table(prof: &MetricProfile, a: f64, b: f64, n: usize) -> Result<Table> {
    let mut t = Table::new(std::iter::once("t").chain(INVERSE_NAMES));
    for x in linspace(a, b, n) {
        let mut row = vec![x; 10];
        for i in 0..3 {
            let (f, g, h) = match prof.inverse_block(i, x) {
                Ok(v) => v,
                Err(cohom1_core::Error::SingularBlock { .. }) => (f64::NAN, f64::NAN, f64::NAN),
                Err(e) => return Err(e.into()),
            };
            row[1 + i] = f;
            row[4 + i] = g;
            row[7 + i] = h;
        }
        t.push(row);
    }
    Ok(t)
}

/// Length functions √T_i in arc length on [0, L], endpoints by limits.
pub fn hitchin_lengths(k: u32, n: usize) -> Result<Table> {
    let table = hitchin::arclength_param(k, n)?;
    let m = table.metric;
    let smooth = m.endpoint_values(HitchinEnd::Smooth);
    let orb = m.endpoint_values(HitchinEnd::Orbifold);
    let mut t = Table::new(["t", "f1", "f2", "f3"]);
    let grid = linspace(0.0, table.l_total, n);
    for (j, &x) in grid.iter().enumerate() {
        let vals: [f64; 3] = if j == 0 {
            smooth
        } else if j == n - 1 {
            orb
        } else {
            let u = table.u_of_t(x)?;
            let v = m.eval_u(u);
            [v[0], v[1], v[2]]
        };
        t.push(std::iter::once(x).chain(vals.map(|v| v.max(0.0).sqrt())).collect());
    }
    Ok(t)
}

/// sec(γ′, X_i*) on the interior points of an n-point grid of [0, L].
pub fn hitchin_curvature_table(k: u32, n: usize) -> Result<Table> {
    let table = hitchin::arclength_param(k, n)?;
    let rep = hitchin::curvature_report(&table, n)?;
    let mut t = Table::new(["t", "sec1", "sec2", "sec3"]);
    for (j, &x) in rep.t.iter().enumerate() {
        t.push(vec![x, rep.sec[0][j], rep.sec[1][j], rep.sec[2][j]]);
    }
    Ok(t)
}

/// Profile h of the orbifold 2-sphere on [0, 3L].
pub fn sphere_table(k: u32, n: usize) -> Result<Table> {
    let sphere = hitchin::sphere_profile(k, n)?;
    let mut t = Table::new(["t", "h"]);
    for x in linspace(0.0, sphere.end(), n) {
        t.push(vec![x, sphere.eval(x)?.h]);
    }
    Ok(t)
}

/// Surface of revolution (ρ, z) of the orbifold 2-sphere.
pub fn embedding_table(k: u32, n: usize) -> Result<Table> {
    let sphere = hitchin::sphere_profile(k, n)?;
    let e = hitchin::embed_revolution(&sphere, n)?;
    let mut t = Table::new(["t", "rho", "z"]);
    for j in 0..e.t.len() {
        t.push(vec![e.t[j], e.rho[j], e.z[j]]);
    }
    Ok(t)
}

/// Where a panel's data comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    Metric { space: Space, p: Option<i64>, eps: Option<f64> },
    Inverse { space: Space, p: Option<i64>, eps: Option<f64> },
    HitchinLengths { k: u32 },
    HitchinCurvature { k: u32 },
    Sphere { k: u32 },
    Embedding { k: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub title: String,
    pub source: Source,
    /// Plotted range is [0, span·L].
    pub span: f64,
    pub x: &'static str,
    pub series: Vec<&'static str>,
    pub y_clip: Option<(f64, f64)>,
}

impl Panel {
    fn new(title: impl Into<String>, source: Source, span: f64, series: &[&'static str]) -> Self {
        Self { title: title.into(), source, span, x: "t", series: series.to_vec(), y_clip: None }
    }

    fn clip(mut self, lo: f64, hi: f64) -> Self {
        self.y_clip = Some((lo, hi));
        self
    }

    /// Length L of the fundamental interval, `None` when the x axis is not
    /// arc length.
    pub fn l(&self) -> Result<Option<f64>> {
        Ok(match self.source {
            Source::Metric { space, p, eps } | Source::Inverse { space, p, eps } => {
                Some(MetricProfile::new(space, p, eps)?.l)
            }
            Source::HitchinLengths { k } | Source::HitchinCurvature { k } | Source::Sphere { k } => {
                Some(hitchin::arclength_param(k, 257)?.l_total)
            }
            Source::Embedding { .. } => None,
        })
    }

    pub fn range_label(&self) -> String {
        if self.span == 1.0 {
            "[0,L]".into()
        } else {
            format!("[0,{}L]", self.span)
        }
    }

    pub fn generate(&self, n: usize) -> Result<Table> {
        match self.source {
            Source::Metric { space, p, eps } => {
                let prof = MetricProfile::new(space, p, eps)?;
                metric_table(&prof, 0.0, self.span * prof.l, n)
            }
            Source::Inverse { space, p, eps } => {
                let prof = MetricProfile::new(space, p, eps)?;
                inverse_table(&prof, 0.0, self.span * prof.l, n)
            }
            Source::HitchinLengths { k } => hitchin_lengths(k, n),
            Source::HitchinCurvature { k } => hitchin_curvature_table(k, n),
            Source::Sphere { k } => sphere_table(k, n),
            Source::Embedding { k } => embedding_table(k, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub id: u32,
    pub caption: &'static str,
    pub panels: Vec<Panel>,
}

const ALL9: [&str; 9] = SERIES_NAMES;
const FGH1: [&str; 3] = ["f1", "g1", "h1"];
const INV1: [&str; 3] = ["F1", "G1", "H1"];
const LENGTHS: [&str; 3] = ["f1", "f2", "f3"];
const SECS: [&str; 3] = ["sec1", "sec2", "sec3"];

fn metric(space: Space) -> Source {
    Source::Metric { space, p: None, eps: None }
}

fn inverse(space: Space, eps: Option<f64>) -> Source {
    Source::Inverse { space, p: None, eps }
}

pub fn figure(id: u32) -> Result<FigureSpec> {
    let half = Some(0.5);
    let (caption, panels) = match id {
        1 => (
            "All nine functions on [0,L]",
            vec![
                Panel::new("S7", metric(Space::S7), 1.0, &ALL9),
                Panel::new("B7", metric(Space::B7), 1.0, &ALL9),
            ],
        ),
        2 => (
            "The g functions of B7 on [0,L] and [0,3L]",
            vec![
                Panel::new("B7", metric(Space::B7), 1.0, &["g1", "g2", "g3"]),
                Panel::new("B7", metric(Space::B7), 3.0, &["g1", "g2", "g3"]),
            ],
        ),
        3 => (
            "f1, g1, h1 on [0,3L]",
            vec![
                Panel::new("S7", metric(Space::S7), 3.0, &FGH1),
                Panel::new("B7", metric(Space::B7), 3.0, &FGH1),
            ],
        ),
        4 => (
            "Inverse functions on [0,3L]",
            vec![
                Panel::new("S7", inverse(Space::S7, None), 3.0, &INV1).clip(-2.0, 6.0),
                Panel::new("B7", inverse(Space::B7, None), 3.0, &INV1).clip(-2.0, 6.0),
            ],
        ),
        5 => (
            "W1 and E_10 on [0,4L]",
            vec![
                Panel::new("W1 eps=0.5", Source::Metric { space: Space::W1, p: None, eps: half }, 4.0, &ALL9),
                Panel::new("E_10 eps=0.5", Source::Metric { space: Space::Ep, p: Some(10), eps: half }, 4.0, &ALL9),
            ],
        ),
        6 => (
            "W2 on [0,4L]",
            vec![
                Panel::new(
                    "W2 eps=0.5",
                    Source::Metric { space: Space::W2, p: None, eps: half },
                    4.0,
                    &["f1", "f2", "f3", "g1", "g2", "g3"],
                ),
                Panel::new("W2 eps=0.5", Source::Metric { space: Space::W2, p: None, eps: half }, 4.0, &["h1", "h2", "h3"]),
            ],
        ),
        7 => (
            "Inverse functions for W1 and W2",
            vec![
                Panel::new("W1 eps=0.5", inverse(Space::W1, half), 4.0, &INV1).clip(-6.0, 12.0),
                Panel::new("W2 eps=0.5", inverse(Space::W2, half), 4.0, &INV1).clip(-6.0, 12.0),
            ],
        ),
        8..=10 => {
            let k = [3, 4, 6][(id - 8) as usize];
            let caption = [
                "Hitchin k=3: length functions and curvatures",
                "Hitchin k=4: length functions and curvatures",
                "Hitchin k=6: length functions and curvatures",
            ][(id - 8) as usize];
            (
                caption,
                vec![
                    Panel::new(format!("k={k} lengths"), Source::HitchinLengths { k }, 1.0, &LENGTHS),
                    Panel::new(format!("k={k} curvature"), Source::HitchinCurvature { k }, 1.0, &SECS).clip(-2.0, 12.0),
                ],
            )
        }
        11 => (
            "Orbifold 2-sphere profiles on [0,3L]",
            vec![
                Panel::new("k=3", Source::Sphere { k: 3 }, 3.0, &["h"]),
                Panel::new("k=6", Source::Sphere { k: 6 }, 3.0, &["h"]),
            ],
        ),
        12 => {
            let emb = |k: u32| Panel {
                title: format!("k={k}"),
                source: Source::Embedding { k },
                span: 3.0,
                x: "rho",
                series: vec!["z"],
                y_clip: None,
            };
            ("Orbifold 2-spheres as surfaces of revolution", vec![emb(3), emb(6)])
        }
        _ => return Err(CliError::UnknownFigure(id)),
    };
    Ok(FigureSpec { id, caption, panels })
}

pub fn all_figures() -> Vec<FigureSpec> {
    (1..=12).filter_map(|id| figure(id).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ranges() {
        for f in all_figures() {
            assert_eq!(f.panels.len(), 2);
            for p in &f.panels {
                assert!([1.0, 3.0, 4.0].contains(&p.span), "figure {}", f.id);
            }
        }
        assert_eq!(figure(4).unwrap().panels[0].range_label(), "[0,3L]");
        assert!(figure(13).is_err());
    }

    #[test]
    fn s4_sample_starts_collapsed() {
        let prof = MetricProfile::new(Space::S4, None, None).unwrap();
        let t = metric_table(&prof, 0.0, prof.l, 5).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert_eq!(t.rows[0][1], 0.0);
    }
}
