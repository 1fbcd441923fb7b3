//! Closed-form metric functions along the normal geodesic, their Weyl
//! symmetry extension, inverse 2×2 blocks and collapse directions.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::{self, DiagramParams, IdentityComponent};

pub const SEAM_TOL: f64 = 1e-10;
pub const SINGULAR_DET: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    S4,
    CP2,
    S7,
    B7,
    /// Eschenburg space E_p.
    Ep,
    W1,
    W2,
}

impl Space {
    pub const ALL: [Space; 7] = [Space::S4, Space::CP2, Space::S7, Space::B7, Space::Ep, Space::W1, Space::W2];

    pub fn name(self) -> &'static str {
        match self {
            Space::S4 => "S4",
            Space::CP2 => "CP2",
            Space::S7 => "S7",
            Space::B7 => "B7",
            Space::Ep => "E_p",
            Space::W1 => "W1",
            Space::W2 => "W2",
        }
    }

    pub fn symmetry(self) -> SymmetryRule {
        match self {
            Space::S4 | Space::S7 | Space::B7 => SymmetryRule::Cyclic3,
            Space::CP2 => SymmetryRule::Reflect2,
            Space::W2 => SymmetryRule::Modified4,
            Space::Ep | Space::W1 => SymmetryRule::Even2,
        }
    }

    /// Only f is defined (single-factor actions).
    pub fn is_diagonal(self) -> bool {
        matches!(self, Space::S4 | Space::CP2)
    }

    pub fn uses_p(self) -> bool {
        self == Space::Ep
    }

    pub fn uses_eps(self) -> bool {
        matches!(self, Space::Ep | Space::W1 | Space::W2)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S4" => Ok(Space::S4),
            "CP2" => Ok(Space::CP2),
            "S7" => Ok(Space::S7),
            "B7" => Ok(Space::B7),
            "E_P" | "EP" | "E" => Ok(Space::Ep),
            "W1" => Ok(Space::W1),
            "W2" => Ok(Space::W2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryRule {
    Cyclic3,
    Reflect2,
    Modified4,
    Even2,
}

impl SymmetryRule {
    /// Number of L-intervals covered by one extension period.
    pub fn span_in_l(self) -> f64 {
        match self {
            SymmetryRule::Cyclic3 => 3.0,
            SymmetryRule::Reflect2 => 2.0,
            SymmetryRule::Modified4 | SymmetryRule::Even2 => 4.0,
        }
    }

    /// Reflections about t = 0 and t = L.
    pub fn reflections(self) -> (Reflection, Reflection) {
        const ID: [usize; 3] = [0, 1, 2];
        const SWAP23: [usize; 3] = [0, 2, 1];
        const SWAP13: [usize; 3] = [2, 1, 0];
        const PLUS: [f64; 3] = [1.0, 1.0, 1.0];
        match self {
            SymmetryRule::Cyclic3 => (
                Reflection { perm: SWAP23, hsign: PLUS },
                Reflection { perm: SWAP13, hsign: PLUS },
            ),
            SymmetryRule::Reflect2 => (
                Reflection { perm: ID, hsign: PLUS },
                Reflection { perm: SWAP13, hsign: PLUS },
            ),
            SymmetryRule::Modified4 => (
                Reflection { perm: ID, hsign: [1.0, -1.0, -1.0] },
                Reflection { perm: SWAP13, hsign: [-1.0, 1.0, -1.0] },
            ),
            SymmetryRule::Even2 => (
                Reflection { perm: ID, hsign: PLUS },
                Reflection { perm: ID, hsign: [1.0, -1.0, -1.0] },
            ),
        }
    }
}

/// F_i(2c − t) = F_{perm[i]}(t) for f and g, with an extra sign on h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub perm: [usize; 3],
    pub hsign: [f64; 3],
}

impl Reflection {
    pub fn apply(&self, b: &MetricBlocks) -> MetricBlocks {
        let mut out = MetricBlocks::default();
        for i in 0..3 {
            let s = self.perm[i];
            out.f[i] = b.f[s];
            out.g[i] = b.g[s];
            out.h[i] = self.hsign[i] * b.h[s];
        }
        out
    }
}

/// f_i = |X_i*|², g_i = |Y_i*|², h_i = ⟨X_i*, Y_i*⟩ for i = 1..3 (stored 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricBlocks {
    pub f: [f64; 3],
    pub g: [f64; 3],
    pub h: [f64; 3],
}

impl MetricBlocks {
    /// The nine values in the order f1 f2 f3 g1 g2 g3 h1 h2 h3.
    pub fn as_array(&self) -> [f64; 9] {
        [
            self.f[0], self.f[1], self.f[2], self.g[0], self.g[1], self.g[2], self.h[0], self.h[1],
            self.h[2],
        ]
    }

    pub fn max_abs_diff(&self, o: &MetricBlocks) -> f64 {
        self.as_array()
            .iter()
            .zip(o.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn det(&self, i: usize) -> f64 {
        self.f[i] * self.g[i] - self.h[i] * self.h[i]
    }

    /// a²f_i + 2ab·h_i + b²g_i.
    pub fn slope_form(&self, i: usize, a: i64, b: i64) -> f64 {
        let (a, b) = (a as f64, b as f64);
        a * a * self.f[i] + 2.0 * a * b * self.h[i] + b * b * self.g[i]
    }
}

pub const SERIES_NAMES: [&str; 9] = ["f1", "f2", "f3", "g1", "g2", "g3", "h1", "h2", "h3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Minus,
    Plus,
}

/// A slope pair (a, b) whose action field vanishes at a singular orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapseDirection {
    /// 0-based block index.
    pub index: usize,
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricProfile {
    pub space: Space,
    pub p: i64,
    pub eps: f64,
    pub l: f64,
    pub symmetry: SymmetryRule,
}

pub const DEFAULT_EPS: f64 = 0.5;
pub const DEFAULT_P: i64 = 10;

impl MetricProfile {
    /// `p` is used by E_p only and `eps` by E_p, W1 and W2.
    pub fn new(space: Space, p: Option<i64>, eps: Option<f64>) -> Result<Self> {
        let p = if space == Space::W1 { 1 } else { p.unwrap_or(DEFAULT_P) };
        let eps = eps.unwrap_or(DEFAULT_EPS);
        if space.uses_p() && p < 1 {
            return Err(Error::InvalidParams(format!("p = {p} must be >= 1")));
        }
        if space.uses_eps() && !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParams(format!("eps = {eps} must be positive")));
        }
        let l = match space {
            Space::S4 | Space::B7 => PI / 3.0,
            Space::CP2 | Space::W2 => PI / 4.0,
            Space::S7 => PI / 6.0,
            Space::Ep | Space::W1 => PI / 2.0,
        };
        Ok(Self { space, p, eps, l, symmetry: space.symmetry() })
    }

    pub fn t_max(&self) -> f64 {
        self.symmetry.span_in_l() * self.l
    }

    fn diagram_params(&self) -> DiagramParams {
        DiagramParams { p: Some(self.p), k: None, eps: Some(self.eps) }
    }

    /// Printed formulas evaluated at any real t (analytic continuation).
    /// For S7 and B7 indices 2, 3 come from index 1 through
    /// X₂(t) = X₁(t + 2L), X₃(t) = X₁(2L − t).
    pub fn closed_form(&self, t: f64) -> Result<MetricBlocks> {
        let eps = self.eps;
        let mut b = MetricBlocks::default();
        match self.space {
            Space::S4 => {
                let (s, c) = t.sin_cos();
                let r3 = 3f64.sqrt();
                b.f = [4.0 * s * s, (r3 * c - s).powi(2), (r3 * c + s).powi(2)];
            }
            Space::CP2 => {
                b.f = [t.sin().powi(2), (2.0 * t).cos().powi(2), t.cos().powi(2)];
            }
            Space::S7 | Space::B7 => {
                let one = |t: f64| -> (f64, f64, f64) {
                    let (s, c) = t.sin_cos();
                    if self.space == Space::S7 {
                        (1.0, 8.0 * c * c + 1.0, 4.0 * c * c - 1.0)
                    } else {
                        (
                            (5.0 + 4.0 * s * s - 4.0 * c) / 5.0,
                            (5.0 + 4.0 * s * s + 4.0 * c) / 5.0,
                            -(1.0 - 4.0 * c * c) / 5.0,
                        )
                    }
                };
                let l2 = 2.0 * self.l;
                for (i, tt) in [t, t + l2, l2 - t].into_iter().enumerate() {
                    let (f, g, h) = one(tt);
                    b.f[i] = f;
                    b.g[i] = g;
                    b.h[i] = h;
                }
            }
            Space::Ep => {
                let p = self.p as f64;
                let c2 = t.cos().powi(2);
                let c4 = c2 * c2;
                let alpha = (p - 1.0).powi(2) * (eps - 1.0) * c4
                    + (p - 1.0) * (p - 1.0 - eps * (2.0 * p + 1.0)) * c2
                    + eps * (p * p + p + 1.0);
                if alpha <= 0.0 {
                    return Err(Error::Domain(format!("alpha({t}) = {alpha} <= 0 for p = {p}, eps = {eps}")));
                }
                let pre = eps / (4.0 * alpha);
                b.f[0] = pre
                    * ((3.0 * eps * (p - 2.0).powi(2) - 4.0 * p * p + 8.0 * p - 16.0) * c4
                        + (4.0 * p * p - 8.0 * p + 16.0 - 6.0 * eps * p * (p - 2.0)) * c2
                        + 3.0 * eps * p * p);
                b.g[0] = pre
                    * ((p - 1.0).powi(2) * (3.0 * eps - 4.0) * c4
                        + (2.0 * p - 2.0) * (2.0 * p - 2.0 - 3.0 * eps * (p + 1.0)) * c2
                        + 3.0 * eps * (p + 1.0).powi(2));
                b.h[0] = -pre
                    * ((p - 1.0) * (3.0 * eps * (p - 2.0) - 4.0 * p + 4.0) * c4
                        + (4.0 * (p - 1.0).powi(2) - 6.0 * eps * (p * p - p - 1.0)) * c2
                        + 3.0 * eps * p * (p + 1.0));
                fill_eschenburg_23(&mut b, eps, t);
            }
            Space::W1 => {
                let c2 = t.cos().powi(2);
                b.f[0] = 0.25 * ((eps - 4.0) * c2 * c2 + 2.0 * (eps + 2.0) * c2 + eps);
                b.g[0] = eps;
                b.h[0] = -0.5 * eps * (c2 + 1.0);
                fill_eschenburg_23(&mut b, eps, t);
            }
            Space::W2 => {
                let (s, c) = t.sin_cos();
                let (s2, c2) = (2.0 * t).sin_cos();
                b.f = [
                    4.0 * s * s + 4.0 * eps * c * c,
                    4.0 * c2 * c2 + eps * s2 * s2,
                    4.0 * c * c + 4.0 * eps * s * s,
                ];
                b.g = [eps; 3];
                b.h = [2.0 * eps * c, -eps * s2, -2.0 * eps * s];
            }
        }
        Ok(b)
    }

    /// The nine functions on the fundamental interval [0, L].
    pub fn eval(&self, t: f64) -> Result<MetricBlocks> {
        if !(0.0..=self.l).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, {}] for {}", self.l, self.space)));
        }
        self.closed_form(t)
    }

    /// Extension by the Weyl reflections to any real t.
    pub fn continuation(&self, t: f64) -> Result<MetricBlocks> {
        let (minus, plus) = self.symmetry.reflections();
        if t < 0.0 {
            Ok(minus.apply(&self.continuation(-t)?))
        } else if t > self.l {
            Ok(plus.apply(&self.continuation(2.0 * self.l - t)?))
        } else {
            self.closed_form(t)
        }
    }

    /// One-sided mismatches of the reflection rule at t = 0 and t = L.
    pub fn seam_mismatch(&self) -> Result<(f64, f64)> {
        let (minus, plus) = self.symmetry.reflections();
        let b0 = self.closed_form(0.0)?;
        let bl = self.closed_form(self.l)?;
        Ok((minus.apply(&b0).max_abs_diff(&b0), plus.apply(&bl).max_abs_diff(&bl)))
    }

    /// The nine functions on [0, T_max] through the symmetry rule.
    pub fn extend(&self, t: f64) -> Result<MetricBlocks> {
        let t_max = self.t_max();
        if !(0.0..=t_max).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [0, {t_max}] for {}", self.space)));
        }
        let (m0, ml) = self.seam_mismatch()?;
        for (seam, m) in [(0.0, m0), (self.l, ml)] {
            if m > SEAM_TOL {
                return Err(Error::SeamMismatch {
                    t: seam,
                    detail: format!("{}: one-sided values differ by {m:e}", self.space),
                });
            }
        }
        self.continuation(t)
    }

    /// Inverse of block i (0-based) of the extended profile:
    /// (F, G, H) = (g, f, −h)/det; for diagonal spaces (1/f, 0, 0).
    pub fn inverse_block(&self, i: usize, t: f64) -> Result<(f64, f64, f64)> {
        let b = self.extend(t)?;
        if self.space.is_diagonal() {
            if b.f[i] <= SINGULAR_DET {
                return Err(Error::SingularBlock { index: i + 1, t, det: b.f[i] });
            }
            return Ok((1.0 / b.f[i], 0.0, 0.0));
        }
        let det = b.det(i);
        if det <= SINGULAR_DET {
            return Err(Error::SingularBlock { index: i + 1, t, det });
        }
        Ok((b.g[i] / det, b.f[i] / det, -b.h[i] / det))
    }

    /// Slopes of K₀ at the given end, read off the catalog diagram.
    /// A ΔS³ end yields (1, 1) on all three indices.
    pub fn collapse_directions(&self, end: End) -> Result<Vec<CollapseDirection>> {
        let d = groups::catalog(self.space.name(), &self.diagram_params())?;
        let k = match end {
            End::Minus => &d.k_minus,
            End::Plus => &d.k_plus,
        };
        match &k.identity_component {
            IdentityComponent::Circle(c) => {
                let index = axis_index(c.axis_l)?;
                Ok(vec![CollapseDirection { index, a: c.p, b: c.q }])
            }
            IdentityComponent::Diagonal3Sphere => {
                Ok((0..3).map(|index| CollapseDirection { index, a: 1, b: 1 }).collect())
            }
            IdentityComponent::Trivial => Err(Error::Unsupported("no collapsing direction at a trivial end".into())),
        }
    }

    pub fn end_time(&self, end: End) -> f64 {
        match end {
            End::Minus => 0.0,
            End::Plus => self.l,
        }
    }
}

fn fill_eschenburg_23(b: &mut MetricBlocks, eps: f64, t: f64) {
    let c = t.cos();
    let f23 = 1.0 + (eps - 1.0) * c * c;
    b.f[1] = f23;
    b.f[2] = f23;
    b.g[1] = eps;
    b.g[2] = eps;
    b.h[1] = -eps * c;
    b.h[2] = -eps * c;
}

fn axis_index(axis: groups::Quat) -> Result<usize> {
    let c = [axis.i, axis.j, axis.k];
    c.iter()
        .position(|x| (x.abs() - 1.0).abs() < 1e-12)
        .ok_or_else(|| Error::Unsupported(format!("collapse axis {axis} is not a coordinate axis")))
}

pub fn eval_profile(space: Space, p: Option<i64>, eps: Option<f64>, t: f64) -> Result<MetricBlocks> {
    MetricProfile::new(space, p, eps)?.eval(t)
}

pub fn extend_profile(space: Space, p: Option<i64>, eps: Option<f64>, t: f64) -> Result<MetricBlocks> {
    MetricProfile::new(space, p, eps)?.extend(t)
}

pub fn inverse_block(space: Space, p: Option<i64>, eps: Option<f64>, i: usize, t: f64) -> Result<(f64, f64, f64)> {
    MetricProfile::new(space, p, eps)?.inverse_block(i, t)
}

pub fn collapse_direction(space: Space, p: Option<i64>, eps: Option<f64>, end: End) -> Result<Vec<CollapseDirection>> {
    MetricProfile::new(space, p, eps)?.collapse_directions(end)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn s4_at_pi_over_6() {
        let b = eval_profile(Space::S4, None, None, PI / 6.0).unwrap();
        assert!(close(b.f[0], 1.0, 1e-14) && close(b.f[1], 1.0, 1e-14) && close(b.f[2], 4.0, 1e-14));
    }

    #[test]
    fn b7_at_zero() {
        let b = eval_profile(Space::B7, None, None, 0.0).unwrap();
        assert!(close(b.f[0], 0.2, 1e-15) && close(b.g[0], 1.8, 1e-15) && close(b.h[0], 0.6, 1e-15));
    }

    #[test]
    fn eschenburg_at_zero() {
        for p in [1, 2, 10] {
            for eps in [0.3, 0.5, 0.9] {
                let b = eval_profile(Space::Ep, Some(p), Some(eps), 0.0).unwrap();
                assert!(close(b.f[0], eps, 1e-14), "{p} {eps}");
                assert!(close(b.g[0], eps, 1e-14));
                assert!(close(b.h[0], -eps, 1e-14));
            }
        }
    }

    #[test]
    fn w2_at_l() {
        let eps = 0.7;
        let b = eval_profile(Space::W2, None, Some(eps), PI / 4.0).unwrap();
        assert!(close(b.f[1], eps, 1e-14) && close(b.g[1], eps, 1e-15) && close(b.h[1], -eps, 1e-15));
    }

    #[test]
    fn range_is_enforced() {
        assert!(eval_profile(Space::S4, None, None, 1.1).is_err());
        assert!(extend_profile(Space::CP2, None, None, PI / 2.0 + 1e-9).is_err());
        assert!(extend_profile(Space::CP2, None, None, PI / 2.0).is_ok());
    }

    #[test]
    fn inverse_block_examples() {
        let (f, _, _) = inverse_block(Space::S4, None, None, 0, PI / 2.0).unwrap();
        assert!(close(f, 0.25, 1e-15));
        let (f, _, _) = inverse_block(Space::B7, None, None, 0, PI / 2.0).unwrap();
        assert!(close(f, 9.0 / 16.0, 1e-14));
        assert!(matches!(
            inverse_block(Space::B7, None, None, 0, 0.0),
            Err(Error::SingularBlock { .. })
        ));
    }

    #[test]
    fn collapse_examples() {
        let s7 = collapse_direction(Space::S7, None, None, End::Minus).unwrap();
        assert_eq!(s7, vec![CollapseDirection { index: 0, a: -3, b: 1 }]);
        let w2 = collapse_direction(Space::W2, None, None, End::Plus).unwrap();
        assert_eq!(w2, vec![CollapseDirection { index: 1, a: 1, b: 1 }]);
        let e = collapse_direction(Space::Ep, Some(4), None, End::Minus).unwrap();
        assert_eq!(e.len(), 3);
    }
}
