//! Deterministic SVG line plots: fixed 800×600 canvas, one polyline per
//! series, coordinates printed with two decimals.

use std::fmt::Write;

use crate::Table;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const LEFT: f64 = 70.0;
const RIGHT: f64 = 120.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 9] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#7f7f7f",
];

/// What to draw from a table.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec<'a> {
    pub title: &'a str,
    pub x: &'a str,
    pub series: &'a [&'a str],
    /// Tick spacing on the x axis, labelled 0, L, 2L, ...
    pub l: Option<f64>,
    /// Fixed x extent; the data extent when `None`.
    pub x_range: Option<(f64, f64)>,
    pub y_clip: Option<(f64, f64)>,
    /// Close each curve by its reflection x ↦ −x, with equal axis scales.
    pub mirror: bool,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    left: f64,
    top: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) / (self.x1 - self.x0) * self.w
    }
    fn py(&self, y: f64) -> f64 {
        self.top + (self.y1 - y) / (self.y1 - self.y0) * self.h
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let m = raw / mag;
    let f = if m < 1.5 {
        1.0
    } else if m < 3.5 {
        2.0
    } else if m < 7.5 {
        5.0
    } else {
        10.0
    };
    f * mag
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|j| j as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn l_label(j: i64) -> String {
    match j {
        0 => "0".into(),
        1 => "L".into(),
        _ => format!("{j}L"),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render `spec` from `table`; the error string names the offending series.
pub fn render(spec: &PlotSpec, table: &Table) -> Result<String, String> {
    if spec.series.is_empty() {
        return Err("no series requested".into());
    }
    let xs = table.column(spec.x).ok_or_else(|| format!("column `{}` missing", spec.x))?;
    let mut curves = Vec::with_capacity(spec.series.len());
    for &name in spec.series {
        let ys = table.column(name).ok_or_else(|| format!("series `{name}` missing"))?;
        let mut pts: Vec<(f64, f64)> = xs
            .iter()
            .zip(&ys)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| (x, y))
            .collect();
        if pts.is_empty() {
            return Err(format!("series `{name}` is empty"));
        }
        if spec.mirror {
            let back: Vec<_> = pts.iter().rev().map(|&(x, y)| (-x, y)).collect();
            pts.extend(back);
        }
        curves.push((name, pts));
    }

    let all = curves.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        let y = match spec.y_clip {
            Some((lo, hi)) => y.clamp(lo, hi),
            None => y,
        };
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if let Some((a, b)) = spec.x_range {
        (x0, x1) = (a, b);
    }
    if let Some((lo, hi)) = spec.y_clip {
        y0 = y0.max(lo);
        y1 = y1.min(hi);
    }
    if x1 - x0 <= 0.0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= 0.0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    let (mut left, mut top) = (LEFT, TOP);
    let (mut w, mut h) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    if spec.mirror {
        let xpad = 0.05 * (x1 - x0);
        x0 -= xpad;
        x1 += xpad;
        let scale = (w / (x1 - x0)).min(h / (y1 - y0));
        let (nw, nh) = (scale * (x1 - x0), scale * (y1 - y0));
        left += 0.5 * (w - nw);
        top += 0.5 * (h - nh);
        w = nw;
        h = nh;
    }
    let fr = Frame { x0, x1, y0, y1, left, top, w, h };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot-area"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        fr.left, fr.top, fr.w, fr.h
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        fr.left + fr.w / 2.0,
        escape(spec.title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        fr.left, fr.top, fr.w, fr.h
    );

    let xticks: Vec<(f64, String)> = match spec.l {
        Some(l) if l > 0.0 => {
            let last = (x1 / l + 1e-9).floor() as i64;
            let first = (x0 / l - 1e-9).ceil() as i64;
            (first..=last).map(|j| (j as f64 * l, l_label(j))).collect()
        }
        _ => nice_ticks(x0, x1).into_iter().map(|v| (v, tick_label(v))).collect(),
    };
    let bottom = fr.top + fr.h;
    for (v, label) in &xticks {
        let px = fr.px(*v);
        let _ = writeln!(
            out,
            r#"<line class="xtick" x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            bottom + 5.0,
            bottom + 20.0
        );
    }
    for v in nice_ticks(y0, y1) {
        let py = fr.py(v);
        let _ = writeln!(
            out,
            r#"<line class="ytick" x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            fr.left - 5.0,
            fr.left,
            fr.left - 8.0,
            py + 4.0,
            tick_label(v)
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let py = fr.py(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#bbbbbb"/>"##,
            fr.left,
            fr.left + fr.w
        );
    }

    // Off-scale values are pinned just outside the frame and cut by the clip path.
    let (ylo, yhi) = (y0 - 0.1 * (y1 - y0), y1 + 0.1 * (y1 - y0));
    let _ = writeln!(out, r#"<g clip-path="url(#plot-area)" fill="none" stroke-width="1.5">"#);
    for (j, (name, pts)) in curves.iter().enumerate() {
        let mut coords = String::new();
        for (k, &(x, y)) in pts.iter().enumerate() {
            if k > 0 {
                coords.push(' ');
            }
            let _ = write!(coords, "{:.2},{:.2}", fr.px(x), fr.py(y.clamp(ylo, yhi)));
        }
        let _ = writeln!(
            out,
            r#"<polyline id="series-{}" stroke="{}" points="{coords}"/>"#,
            escape(name),
            PALETTE[j % PALETTE.len()]
        );
    }
    let _ = writeln!(out, "</g>");

    let lx = WIDTH - RIGHT + 15.0;
    for (j, (name, _)) in curves.iter().enumerate() {
        let ly = TOP + 15.0 + 20.0 * j as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="2"/><text class="legend" x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 25.0,
            PALETTE[j % PALETTE.len()],
            lx + 32.0,
            ly + 4.0,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Table {
        let mut t = Table::new(["t", "a", "b"]);
        for j in 0..11 {
            let x = j as f64 * 0.1;
            t.push(vec![x, x * x, if j == 5 { f64::NAN } else { 1.0 - x }]);
        }
        t
    }

    #[test]
    fn one_polyline_per_series() {
        let spec = PlotSpec { title: "demo", x: "t", series: &["a", "b"], l: Some(0.5), x_range: None, y_clip: None, mirror: false };
        let svg = render(&spec, &demo()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r#"id="series-a""#));
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert!(svg.contains(">2L</text>"));
        assert_eq!(svg, render(&spec, &demo()).unwrap());
    }

    #[test]
    fn missing_or_empty_series() {
        let spec = PlotSpec { title: "", x: "t", series: &["c"], l: None, x_range: None, y_clip: None, mirror: false };
        assert!(render(&spec, &demo()).is_err());
        let mut t = Table::new(["t", "a"]);
        t.push(vec![0.0, f64::NAN]);
        let spec = PlotSpec { series: &["a"], ..spec };
        assert!(render(&spec, &t).is_err());
        assert!(render(&PlotSpec { series: &[], ..spec }, &demo()).is_err());
    }

    #[test]
    fn mirror_closes_curve() {
        let mut t = Table::new(["rho", "z"]);
        for j in 0..=4 {
            let s = j as f64 * std::f64::consts::PI / 4.0;
            t.push(vec![s.sin(), -s.cos()]);
        }
        let spec = PlotSpec { title: "", x: "rho", series: &["z"], l: None, x_range: None, y_clip: None, mirror: true };
        let svg = render(&spec, &t).unwrap();
        let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        let v: Vec<&str> = pts.split(' ').collect();
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], v[9]);
    }

    #[test]
    fn ticks() {
        let t = nice_ticks(0.0, 1.0);
        assert_eq!(t.len(), 6);
        assert_eq!((t[0], t[5]), (0.0, 1.0));
        assert_eq!(tick_label(-0.0), "0");
        assert_eq!(tick_label(2.5), "2.5");
    }
}
