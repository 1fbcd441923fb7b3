//! Hitchin's self-dual Einstein orbifold metrics f(r)dr² + Σ T_i(r)dθ_i² with
//! normal cone angle 2π/k, k ∈ {3, 4, 6}: arc length, curvature along the
//! normal geodesic, the fixed-point orbifold 2-sphere and its embedding as a
//! surface of revolution.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numeric::{extrapolate_to_zero, horner, linspace, Dual, Quadrature, Scalar};

type D2 = Dual<Dual<f64>>;

/// Sample spacing (in the regular parameter u) for endpoint extrapolation.
const LIMIT_H0: f64 = 1e-3;
const LIMIT_LEVELS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitchinEnd {
    /// T₁ collapses (smooth singular orbit), t = 0.
    Smooth,
    /// Cone angle 2π/k, t = L.
    Orbifold,
}

/// Printed rational functions T₁, T₂, T₃, f of r for one k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HitchinMetric {
    pub k: u32,
    pub r_lo: f64,
    /// `f64::INFINITY` for k = 4.
    pub r_hi: f64,
}

impl HitchinMetric {
    pub fn new(k: u32) -> Result<Self> {
        let (r_lo, r_hi) = match k {
            3 => ((5f64.sqrt() - 1.0) / 2.0, 1.0),
            4 => (1.0, f64::INFINITY),
            6 => (2f64.sqrt() - 1.0, 1.0),
            _ => return Err(Error::InvalidParams(format!("k = {k}; only 3, 4, 6 are available"))),
        };
        Ok(Self { k, r_lo, r_hi })
    }

    /// (T₁, T₂, T₃, f) at r, no domain check.
    pub fn eval_raw<S: Scalar>(&self, r: S) -> [S; 4] {
        let hi = if self.r_hi.is_finite() { -r + self.r_hi } else { S::from_f64(0.0) };
        self.eval_split(r, r - self.r_lo, hi)
    }

    /// Same as [`Self::eval_raw`] at r = r(u), with r − r_lo and r_hi − r
    /// taken directly from u so the collapsing factors keep full precision.
    pub fn eval_u<S: Scalar>(&self, u: S) -> [S; 4] {
        let r = self.r_of_u(u);
        let span = 1.0 - self.r_lo;
        let v = -u + 1.0;
        let (lo, hi) = match self.k {
            3 => (u * u * span, v * (u + 1.0) * span),
            4 => return Self::k4_inverse(v * v),
            _ => ((-(v * v) + 1.0) * span, v * v * span),
        };
        self.eval_split(r, lo, hi)
    }

    /// k = 4 in s = 1/r, finite at the orbifold end s = 0.
    fn k4_inverse<S: Scalar>(s: S) -> [S; 4] {
        let a = horner(s, &[1.0, 1.0, 1.0]);
        let b = s + 2.0;
        let c = s * 2.0 + 1.0;
        let m = s * s - 1.0;
        [m * m / (a * b * c), s * a / (c * b * b), a / (c * c * b), s * s * s * a / (c * c * b * b)]
    }

    /// `lo` = r − r_lo and `hi` = r_hi − r (unused for k = 4).
    fn eval_split<S: Scalar>(&self, r: S, lo: S, hi: S) -> [S; 4] {
        match self.k {
            3 => {
                let d = horner(r, &[3.0, 7.0, 1.0, 1.0]);
                let d2 = d * d;
                // r² + r − 1 = (r − r_lo)(r + r_lo + 1)
                let q = lo * (r + (self.r_lo + 1.0));
                let q4 = horner(r, &[1.0, 1.0, 4.0]);
                let beta = (q / r).sqrt();
                // The sextic is (r² + r − 1)(r⁴ − 3r³ − r² − 17r − 4).
                let t1 = r * r * 80.0 * q * horner(r, &[1.0, -3.0, -1.0, -17.0, -4.0])
                    / (d2 * horner(r, &[3.0, -13.0, 1.0, 1.0]));
                // r − β = (1 − r)²(r + 1) / (r(r + β)); the squared cubic
                // factors as r²β²((r − 2)β ± 5)² and β² = q/r.
                let r_minus_beta = hi * hi * (r + 1.0) / (r * (r + beta));
                let lead = r * r * 5.0 * (r * 3.0 - 1.0) / (d2 * q4);
                let plus = (r - 2.0) * beta + 5.0;
                let minus = (r - 2.0) * beta - 5.0;
                let t2 = lead * r_minus_beta * (r + beta + 2.0) * plus * plus;
                let t3 = lead * (r + beta) * (r - beta + 2.0) * minus * minus;
                let f = (r * 3.0 - 1.0) * 5.0 * q4 * (r + 1.0) * (r + 1.0) / (q * d2);
                [t1, t2, t3, f]
            }
            4 => {
                let a = horner(r, &[1.0, 1.0, 1.0]);
                let b = r + 2.0;
                let c = r * 2.0 + 1.0;
                let one_minus = -(lo * (r + 1.0));
                [
                    one_minus * one_minus / (a * b * c),
                    a / (b * c * c),
                    r * a / (b * b * c),
                    a / (r * b * b * c * c),
                ]
            }
            _ => {
                let p1 = horner(r, &[3.0, 2.0, 1.0]);
                let p2 = horner(r, &[3.0, -2.0, 1.0]);
                // r² + 2r − 1 = (r − r_lo)(r + r_lo + 2)
                let p3 = lo * (r + (self.r_lo + 2.0));
                let p4 = horner(r, &[1.0, -2.0, 3.0]);
                let p5 = horner(r, &[1.0, -2.0, -1.0]);
                let p6 = horner(r, &[1.0, 2.0, 3.0]);
                let p7 = horner(r, &[1.0, 0.0, 1.0]);
                let t1 = p1 * p3 * p3 * p4 * p7 / (p2 * p5 * p5 * p6 * p6);
                let t2 = -(p2 * p4 * (r + 1.0).powi(3) * hi) / (p1 * p6 * p6 * p5);
                let t3 = -(p2 * p1 * r * 4.0) / (p6 * p6 * p5 * p4);
                let f = (r + 1.0) * p4 * p1 * p2 / (r * hi * p5 * p5 * p7 * p6 * p6);
                [t1, t2, t3, f]
            }
        }
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.r_lo && r <= self.r_hi
    }

    /// Regular parameter u ∈ [0, 1] with u = 0 at the smooth end; √f·dr/du
    /// stays bounded and positive up to both ends.
    pub fn r_of_u<S: Scalar>(&self, u: S) -> S {
        let span = 1.0 - self.r_lo;
        match self.k {
            3 => u * u * span + self.r_lo,
            4 => {
                let v = -u + 1.0;
                S::from_f64(1.0) / (v * v)
            }
            _ => {
                let v = -u + 1.0;
                -(v * v * span) + 1.0
            }
        }
    }

    pub fn dr_du<S: Scalar>(&self, u: S) -> S {
        let span = 1.0 - self.r_lo;
        match self.k {
            3 => u * (2.0 * span),
            4 => {
                let v = -u + 1.0;
                S::from_f64(2.0) / (v * v * v)
            }
            _ => (-u + 1.0) * (2.0 * span),
        }
    }

    /// dt/du = √f(r(u))·r′(u).
    pub fn speed<S: Scalar>(&self, u: S) -> S {
        self.eval_u(u)[3].sqrt() * self.dr_du(u)
    }

    /// Limit of `g(u)` at an end by Neville extrapolation in the offset.
    pub fn limit_at(&self, end: HitchinEnd, g: impl Fn(f64) -> f64) -> f64 {
        let hs: Vec<f64> = (0..LIMIT_LEVELS).map(|m| LIMIT_H0 / f64::powi(2.0, m as i32)).collect();
        let vs: Vec<f64> = hs
            .iter()
            .map(|&h| match end {
                HitchinEnd::Smooth => g(h),
                HitchinEnd::Orbifold => g(1.0 - h),
            })
            .collect();
        extrapolate_to_zero(&hs, &vs)
    }

    /// T₁, T₂, T₃ at an end: direct value when finite, else the limit.
    pub fn endpoint_values(&self, end: HitchinEnd) -> [f64; 3] {
        let u_end = match end {
            HitchinEnd::Smooth => 0.0,
            HitchinEnd::Orbifold => 1.0,
        };
        let direct = self.eval_u(u_end);
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = if direct[i].is_finite() {
                direct[i]
            } else {
                self.limit_at(end, |u| self.eval_u(u)[i])
            };
        }
        out
    }
}

/// (T₁, T₂, T₃, f) at r, with the printed domain enforced.
pub fn eval_hitchin(k: u32, r: f64) -> Result<[f64; 4]> {
    let m = HitchinMetric::new(k)?;
    if !m.contains(r) {
        return Err(Error::Domain(format!("r = {r} outside [{}, {}] for k = {k}", m.r_lo, m.r_hi)));
    }
    Ok(m.eval_raw(r))
}

/// Arc length t(u) tabulated on a uniform grid of the regular parameter.
#[derive(Debug, Clone)]
pub struct ArclengthTable {
    pub metric: HitchinMetric,
    pub u: Vec<f64>,
    pub r: Vec<f64>,
    pub t: Vec<f64>,
    pub l_total: f64,
}

fn quad() -> Quadrature {
    Quadrature { abs_tol: 1e-15, rel_tol: 1e-14, max_panels: 2000 }
}

impl ArclengthTable {
    pub fn build(metric: HitchinMetric, n_points: usize) -> Result<Self> {
        if n_points < 64 {
            return Err(Error::InvalidParams(format!("n_points = {n_points} must be >= 64")));
        }
        let u = linspace(0.0, 1.0, n_points);
        let mut t = Vec::with_capacity(n_points);
        t.push(0.0);
        for w in u.windows(2) {
            let dt = quad().run(|x| metric.speed(x), w[0], w[1])?;
            let last = *t.last().unwrap_or(&0.0);
            t.push(last + dt);
        }
        let r = u.iter().map(|&x| metric.r_of_u(x)).collect();
        let l_total = t[n_points - 1];
        Ok(Self { metric, u, r, t, l_total })
    }

    /// Arc length at parameter u.
    pub fn t_of_u(&self, u: f64) -> Result<f64> {
        let u = u.clamp(0.0, 1.0);
        let j = self.cell_of(&self.u, u);
        Ok(self.t[j] + quad().run(|x| self.metric.speed(x), self.u[j], u)?)
    }

    fn cell_of(&self, grid: &[f64], x: f64) -> usize {
        let n = grid.len();
        match grid.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(j) => j.min(n - 2),
            Err(j) => j.saturating_sub(1).min(n - 2),
        }
    }

    /// Parameter u with t(u) = t, by safeguarded Newton iteration.
    pub fn u_of_t(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.l_total).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, {}]", self.l_total)));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if t == self.l_total {
            return Ok(1.0);
        }
        let j = self.cell_of(&self.t, t);
        let (mut lo, mut hi) = (self.u[j], self.u[j + 1]);
        let frac = (t - self.t[j]) / (self.t[j + 1] - self.t[j]);
        let mut u = lo + frac * (hi - lo);
        for _ in 0..60 {
            let tu = self.t[j] + quad().run(|x| self.metric.speed(x), self.u[j], u)?;
            let err = tu - t;
            if err > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            if err.abs() <= 4.0 * f64::EPSILON * self.l_total {
                return Ok(u);
            }
            let mut next = u - err / self.metric.speed(u);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if next == u {
                return Ok(u);
            }
            u = next;
        }
        Ok(u)
    }

    /// (y, dy/dt, d²y/dt²) for y = √T_i, i 0-based, at parameter u.
    pub fn jet_at_u(&self, i: usize, u: f64) -> (f64, f64, f64) {
        let x = D2::second_order(u);
        let m = &self.metric;
        let vals = m.eval_u(x);
        let y = vals[i].sqrt();
        let w = vals[3].sqrt() * m.dr_du(x);
        let (y0, y1, y2) = y.jet();
        let (w0, w1, _) = w.jet();
        let yt = y1 / w0;
        let ytt = (y2 - y1 * w1 / w0) / (w0 * w0);
        (y0, yt, ytt)
    }

    /// (y, dy/dt, d²y/dt²) for y = √T_i at arc length t.
    pub fn jet(&self, i: usize, t: f64) -> Result<(f64, f64, f64)> {
        let u = self.u_of_t(t)?;
        Ok(self.jet_at_u(i, u))
    }

    /// ∫ g(u) du over the u-interval matching [t_a, t_b].
    pub fn integrate_in_u(&self, t_a: f64, t_b: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
        let ua = self.u_of_t(t_a)?;
        let ub = self.u_of_t(t_b)?;
        quad().run(g, ua, ub)
    }
}

/// Arc-length table with `n_points` grid values of the regular parameter.
pub fn arclength_param(k: u32, n_points: usize) -> Result<ArclengthTable> {
    ArclengthTable::build(HitchinMetric::new(k)?, n_points)
}

/// sec(γ′, X_i*) = −y″/y with y = √T_i, i 0-based, t ∈ (0, L).
pub fn curvature(table: &ArclengthTable, i: usize, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < table.l_total) {
        return Err(Error::Domain(format!("t = {t} not in the open interval (0, {})", table.l_total)));
    }
    let (y, _, ytt) = table.jet(i, t)?;
    if y <= 0.0 || !y.is_finite() {
        return Err(Error::Domain(format!("T_{} collapses at t = {t}", i + 1)));
    }
    Ok(-ytt / y)
}

pub fn hitchin_curvature(k: u32, i: usize, t: f64) -> Result<f64> {
    curvature(&arclength_param(k, 257)?, i, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub t: Vec<f64>,
    /// sec(γ′, X_i*) for i = 1, 2, 3 on `t`.
    pub sec: [Vec<f64>; 3],
    /// Maximal runs of negative values, as [first, last] grid times.
    pub negative_intervals: [Vec<(f64, f64)>; 3],
}

/// Curvatures on the interior points of an `n`-point uniform grid of [0, L].
pub fn curvature_report(table: &ArclengthTable, n: usize) -> Result<CurvatureReport> {
    let grid = linspace(0.0, table.l_total, n);
    let t: Vec<f64> = grid[1..n - 1].to_vec();
    let mut sec: [Vec<f64>; 3] = Default::default();
    for &x in &t {
        let u = table.u_of_t(x)?;
        for (i, s) in sec.iter_mut().enumerate() {
            let (y, _, ytt) = table.jet_at_u(i, u);
            s.push(-ytt / y);
        }
    }
    let negative_intervals = [0, 1, 2].map(|i| negative_runs(&t, &sec[i]));
    Ok(CurvatureReport { t, sec, negative_intervals })
}

fn negative_runs(t: &[f64], v: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (j, &x) in v.iter().enumerate() {
        match (x < 0.0, start) {
            (true, None) => start = Some(j),
            (false, Some(s)) => {
                out.push((t[s], t[j - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((t[s], t[v.len() - 1]));
    }
    out
}

/// Value, first and second derivative of a profile curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub h: f64,
    pub dh: f64,
    pub d2h: f64,
}

/// A rotationally symmetric metric ds² + h(s)²dθ² on [0, end].
pub trait ProfileCurve {
    fn end(&self) -> f64;
    fn eval(&self, s: f64) -> Result<ProfilePoint>;
    /// Points where the curve is only piecewise given.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// ∫_a^b F(h′(s), h″(s)) ds over a subinterval free of breakpoints.
    fn integrate(&self, a: f64, b: f64, g: &dyn Fn(f64, f64) -> f64) -> Result<f64> {
        quad().run(
            |s| match self.eval(s) {
                Ok(p) => g(p.dh, p.d2h),
                Err(_) => f64::NAN,
            },
            a,
            b,
        )
    }
}

/// A profile given by closures for h, h′ and h″.
pub struct FnProfile<F: Fn(f64) -> ProfilePoint> {
    pub end: f64,
    pub f: F,
}

impl<F: Fn(f64) -> ProfilePoint> ProfileCurve for FnProfile<F> {
    fn end(&self) -> f64 {
        self.end
    }
    fn eval(&self, s: f64) -> Result<ProfilePoint> {
        Ok((self.f)(s))
    }
}

/// The fixed-point orbifold 2-sphere: h = √T₁/2 on [0, L], √T₃(2L − s)/2 on
/// [L, 2L] and √T₂(s − 2L)/2 on [2L, 3L].
#[derive(Debug, Clone)]
pub struct SphereProfile {
    pub table: ArclengthTable,
}

pub const SEAM_MATCH_TOL: f64 = 1e-8;

impl SphereProfile {
    pub fn new(table: ArclengthTable) -> Result<Self> {
        let m = table.metric;
        let smooth = m.endpoint_values(HitchinEnd::Smooth);
        let orb = m.endpoint_values(HitchinEnd::Orbifold);
        let l = table.l_total;
        for (t, a, b) in [(l, orb[0], orb[2]), (2.0 * l, smooth[2], smooth[1])] {
            let d = 0.5 * (a.sqrt() - b.sqrt()).abs();
            if !(d <= SEAM_MATCH_TOL) {
                return Err(Error::SeamMismatch { t, detail: format!("k = {}: profile jumps by {d:e}", m.k) });
            }
        }
        Ok(Self { table })
    }

    pub fn l(&self) -> f64 {
        self.table.l_total
    }

    /// (block index, local time, orientation sign) of s ∈ [0, 3L].
    fn piece(&self, s: f64) -> (usize, f64, f64) {
        let l = self.l();
        if s <= l {
            (0, s, 1.0)
        } else if s <= 2.0 * l {
            (2, (2.0 * l - s).max(0.0), -1.0)
        } else {
            (1, (s - 2.0 * l).min(l), 1.0)
        }
    }

    /// Gaussian curvature K = −h″/h of the sphere at s.
    pub fn gauss_curvature(&self, s: f64) -> Result<f64> {
        let p = self.eval(s)?;
        Ok(-p.d2h / p.h)
    }

    /// sec(γ′, X_i*) continued to all s by the same pattern: K evaluated at
    /// s + 2(i − 1)L, with K even and 6L-periodic.
    pub fn extended_sec(&self, i: usize, s: f64) -> Result<f64> {
        let l6 = 6.0 * self.l();
        let mut x = (s + 2.0 * i as f64 * self.l()).rem_euclid(l6);
        if x > 3.0 * self.l() {
            x = l6 - x;
        }
        self.gauss_curvature(x)
    }
}

impl ProfileCurve for SphereProfile {
    fn end(&self) -> f64 {
        3.0 * self.l()
    }

    fn eval(&self, s: f64) -> Result<ProfilePoint> {
        if !(0.0..=self.end()).contains(&s) {
            return Err(Error::Domain(format!("s = {s} outside [0, {}]", self.end())));
        }
        let (i, t, sign) = self.piece(s);
        let u = self.table.u_of_t(t)?;
        let (y, yt, ytt) = if u == 0.0 || u == 1.0 {
            let end = if u == 0.0 { HitchinEnd::Smooth } else { HitchinEnd::Orbifold };
            let m = &self.table.metric;
            let y = m.endpoint_values(end)[i].max(0.0).sqrt();
            let yt = m.limit_at(end, |v| self.table.jet_at_u(i, v).1);
            let ytt = m.limit_at(end, |v| self.table.jet_at_u(i, v).2);
            (y, yt, ytt)
        } else {
            self.table.jet_at_u(i, u)
        };
        Ok(ProfilePoint { h: 0.5 * y, dh: 0.5 * sign * yt, d2h: 0.5 * ytt })
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.l(), 2.0 * self.l()]
    }

    fn integrate(&self, a: f64, b: f64, g: &dyn Fn(f64, f64) -> f64) -> Result<f64> {
        let (i, ta, sign) = self.piece(0.5 * (a + b));
        let (_, t_a, _) = self.piece(a);
        let (_, t_b, _) = self.piece(b);
        let _ = ta;
        let table = &self.table;
        let val = table.integrate_in_u(t_a.min(t_b), t_a.max(t_b), |u| {
            let (_, yt, ytt) = table.jet_at_u(i, u);
            g(0.5 * sign * yt, 0.5 * ytt) * table.metric.speed(u)
        })?;
        Ok(val)
    }
}

/// The orbifold 2-sphere profile for k, from an arc-length table of `n` points.
pub fn sphere_profile(k: u32, n: usize) -> Result<SphereProfile> {
    SphereProfile::new(arclength_param(k, n)?)
}

/// Surface of revolution (ρ(s), z(s)) = (h(s), ∫₀ˢ √(1 − h′²)).
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionProfile {
    pub t: Vec<f64>,
    pub rho: Vec<f64>,
    pub z: Vec<f64>,
}

fn split_at(a: f64, b: f64, bps: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts = vec![a];
    cuts.extend(bps.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

fn height_increment<P: ProfileCurve + ?Sized>(p: &P, a: f64, b: f64) -> Result<f64> {
    let mut z = 0.0;
    for (x, y) in split_at(a, b, &p.breakpoints()) {
        z += p.integrate(x, y, &|dh, _| (1.0 - dh * dh).max(0.0).sqrt())?;
    }
    Ok(z)
}

/// Embed the profile on an `n`-point uniform grid; fails where |h′| > 1.
pub fn embed_revolution<P: ProfileCurve + ?Sized>(p: &P, n: usize) -> Result<RevolutionProfile> {
    let t = linspace(0.0, p.end(), n);
    let mut rho = Vec::with_capacity(n);
    let mut worst: Option<(f64, f64, f64)> = None;
    for &s in &t {
        let q = p.eval(s)?;
        rho.push(q.h);
        if q.dh.abs() > 1.0 + 1e-9 {
            worst = Some(match worst {
                None => (s, s, q.dh.abs()),
                Some((a, _, m)) => (a, s, m.max(q.dh.abs())),
            });
        }
    }
    if let Some((t0, t1, max_slope)) = worst {
        return Err(Error::Embedding { t0, t1, max_slope });
    }
    let mut z = vec![0.0];
    for w in t.windows(2) {
        let last = *z.last().unwrap_or(&0.0);
        z.push(last + height_increment(p, w[0], w[1])?);
    }
    Ok(RevolutionProfile { t, rho, z })
}

/// Largest |ρ′² + z′² − 1| over grid points at least `margin` away from the
/// ends and breakpoints; derivatives by Richardson-extrapolated central
/// differences of the computed ρ and z with step `delta`.
pub fn speed_defect<P: ProfileCurve + ?Sized>(
    p: &P,
    prof: &RevolutionProfile,
    delta: f64,
) -> Result<f64> {
    let mut cuts = p.breakpoints();
    cuts.push(0.0);
    cuts.push(p.end());
    let margin = 2.5 * delta;
    let mut worst: f64 = 0.0;
    for (j, &s) in prof.t.iter().enumerate() {
        if cuts.iter().any(|&c| (s - c).abs() < margin) {
            continue;
        }
        let z_at = |x: f64| -> Result<f64> {
            if x >= s {
                Ok(prof.z[j] + height_increment(p, s, x)?)
            } else {
                Ok(prof.z[j] - height_increment(p, x, s)?)
            }
        };
        let rho_at = |x: f64| p.eval(x).map(|q| q.h);
        let d = |f: &dyn Fn(f64) -> Result<f64>, h: f64| -> Result<f64> { Ok((f(s + h)? - f(s - h)?) / (2.0 * h)) };
        let rich = |f: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
            Ok((4.0 * d(f, 0.5 * delta)? - d(f, delta)?) / 3.0)
        };
        let dr = rich(&rho_at)?;
        let dz = rich(&z_at)?;
        worst = worst.max((dr * dr + dz * dz - 1.0).abs());
    }
    Ok(worst)
}

/// Gauss–Bonnet bookkeeping for the orbifold sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningReport {
    /// One-sided numerical h′(0⁺).
    pub slope_start: f64,
    /// One-sided numerical h′(end⁻).
    pub slope_end: f64,
    /// 2π ∫ K h ds = 2π ∫ −h″ ds by quadrature.
    pub total_curvature: f64,
    /// 2π(h′(0) − h′(end)).
    pub boundary_formula: f64,
}

pub fn turning<P: ProfileCurve + ?Sized>(p: &P, delta: f64) -> Result<TurningReport> {
    let end = p.end();
    let h0 = p.eval(0.0)?.h;
    let h1 = p.eval(end)?.h;
    // Second-order one-sided differences.
    let slope_start = (-3.0 * h0 + 4.0 * p.eval(delta)?.h - p.eval(2.0 * delta)?.h) / (2.0 * delta);
    let slope_end = (3.0 * h1 - 4.0 * p.eval(end - delta)?.h + p.eval(end - 2.0 * delta)?.h) / (2.0 * delta);
    let mut integral = 0.0;
    for (a, b) in split_at(0.0, end, &p.breakpoints()) {
        integral += p.integrate(a, b, &|_, d2h| -d2h)?;
    }
    Ok(TurningReport {
        slope_start,
        slope_end,
        total_curvature: 2.0 * PI * integral,
        boundary_formula: 2.0 * PI * (slope_start - slope_end),
    })
}

/// Fraction of midpoints of an `n`-cell grid on [0, 3L] where all three
/// extended curvatures are positive.
pub fn positive_fraction(sphere: &SphereProfile, n: usize) -> Result<f64> {
    let end = sphere.end();
    let mut count = 0usize;
    for j in 0..n {
        let s = (j as f64 + 0.5) * end / n as f64;
        let mut all = true;
        for i in 0..3 {
            if sphere.extended_sec(i, s)? <= 0.0 {
                all = false;
                break;
            }
        }
        if all {
            count += 1;
        }
    }
    Ok(count as f64 / n as f64)
}

/// Largest deviation between the chain-rule curvature and Richardson
/// central differences of y = √T_i on the uniform t-grid, measured as
/// |a − b| / max(|a|, 1) over grid points in [margin·L, (1 − margin)·L].
pub fn fd_agreement(table: &ArclengthTable, n: usize, margin: f64) -> Result<[f64; 3]> {
    let grid = linspace(0.0, table.l_total, n);
    let h = grid[1] - grid[0];
    let us: Vec<f64> = grid.iter().map(|&t| table.u_of_t(t)).collect::<Result<_>>()?;
    let mut out = [0.0f64; 3];
    for (i, o) in out.iter_mut().enumerate() {
        let y: Vec<f64> = us.iter().map(|&u| table.jet_at_u(i, u).0).collect();
        for j in 2..n - 2 {
            let t = grid[j];
            if t < margin * table.l_total || t > (1.0 - margin) * table.l_total {
                continue;
            }
            let d1 = (y[j + 1] - 2.0 * y[j] + y[j - 1]) / (h * h);
            let d2 = (y[j + 2] - 2.0 * y[j] + y[j - 2]) / (4.0 * h * h);
            let fd = -((4.0 * d1 - d2) / 3.0) / y[j];
            let (yy, _, ytt) = table.jet_at_u(i, us[j]);
            let chain = -ytt / yy;
            *o = o.max((chain - fd).abs() / chain.abs().max(1.0));
        }
    }
    Ok(out)
}

/// k = 3 T₂, T₃ exactly as printed, with β = √((r + r² − 1)/r). Loses
/// precision near r_lo; the evaluators above use the reduced form.
pub fn k3_printed_t23(r: f64) -> (f64, f64) {
    let d = 3.0 * r.powi(3) + 7.0 * r * r + r + 1.0;
    let beta = ((r + r * r - 1.0) / r).sqrt();
    let c = 2.0 - 3.0 * r - r * r + r.powi(3);
    let den = d * d * (r * r + r - 1.0) * (r * r + r + 4.0);
    let lead = 5.0 * r * (3.0 * r - 1.0);
    let t2 = lead * (r - beta) * (r + beta + 2.0) * (c + 5.0 * beta * r).powi(2) / den;
    let t3 = lead * (r + beta) * (r - beta + 2.0) * (c - 5.0 * beta * r).powi(2) / den;
    (t2, t3)
}
