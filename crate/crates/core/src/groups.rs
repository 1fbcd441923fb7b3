//! Quaternions, the group S³×S³, finite and circle subgroups, group diagrams
//! and Weyl group computations.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

pub const SNAP_TOL: f64 = 1e-9;
pub const MEMBER_TOL: f64 = 1e-9;
const WEYL_SEARCH_BOUND: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub re: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quat {
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, i: f64, j: f64, k: f64) -> Self {
        Self { re, i, j, k }
    }

    pub fn conj(self) -> Self {
        Quat::new(self.re, -self.i, -self.j, -self.k)
    }

    pub fn norm2(self) -> f64 {
        self.re * self.re + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn dot(self, o: Quat) -> f64 {
        self.re * o.re + self.i * o.i + self.j * o.j + self.k * o.k
    }

    pub fn scale(self, s: f64) -> Self {
        Quat::new(self.re * s, self.i * s, self.j * s, self.k * s)
    }

    pub fn add(self, o: Quat) -> Self {
        Quat::new(self.re + o.re, self.i + o.i, self.j + o.j, self.k + o.k)
    }

    /// Inverse of a nonzero quaternion.
    pub fn inverse(self) -> Self {
        self.conj().scale(1.0 / self.norm2())
    }

    pub fn is_unit(self) -> bool {
        (self.norm2() - 1.0).abs() <= 1e-12
    }

    pub fn is_imaginary(self) -> bool {
        self.re.abs() <= 1e-12
    }

    pub fn max_abs_diff(self, o: Quat) -> f64 {
        (self.re - o.re)
            .abs()
            .max((self.i - o.i).abs())
            .max((self.j - o.j).abs())
            .max((self.k - o.k).abs())
    }

    /// Replace each component by the nearest value of
    /// {0, ±1/2, ±1/√2, ±√3/2, ±1} when it lies within `SNAP_TOL`.
    pub fn snapped(self) -> Self {
        Quat::new(snap(self.re), snap(self.i), snap(self.j), snap(self.k))
    }

    /// True when exactly one component is ±1 and the rest vanish.
    pub fn is_axis_aligned(self) -> bool {
        let c = [self.re, self.i, self.j, self.k];
        let ones = c.iter().filter(|x| (x.abs() - 1.0).abs() <= SNAP_TOL).count();
        let zeros = c.iter().filter(|x| x.abs() <= SNAP_TOL).count();
        ones == 1 && zeros == 3
    }
}

fn snap(x: f64) -> f64 {
    const GRID: [f64; 5] = [0.0, 0.5, FRAC_1_SQRT_2, 0.866_025_403_784_438_6, 1.0];
    for g in GRID {
        if (x.abs() - g).abs() <= SNAP_TOL {
            return if x < 0.0 { -g } else { g };
        }
    }
    x
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        Quat::new(
            self.re * o.re - self.i * o.i - self.j * o.j - self.k * o.k,
            self.re * o.i + self.i * o.re + self.j * o.k - self.k * o.j,
            self.re * o.j - self.i * o.k + self.j * o.re + self.k * o.i,
            self.re * o.k + self.i * o.j - self.j * o.i + self.k * o.re,
        )
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.re, self.i, self.j, self.k)
    }
}

/// `cos(angle) + sin(angle)·axis` for a unit imaginary `axis`.
pub fn quat_exp(axis: Quat, angle: f64) -> Result<Quat> {
    if !axis.is_unit() || !axis.is_imaginary() {
        return Err(Error::Domain(format!("exp axis {axis} is not a unit imaginary quaternion")));
    }
    Ok(Quat::ONE.scale(angle.cos()).add(axis.scale(angle.sin())))
}

fn exp_unchecked(axis: Quat, angle: f64) -> Quat {
    Quat::ONE.scale(angle.cos()).add(axis.scale(angle.sin()))
}

/// An element of S³×S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GElem {
    pub left: Quat,
    pub right: Quat,
}

impl GElem {
    pub const IDENTITY: GElem = GElem { left: Quat::ONE, right: Quat::ONE };

    pub const fn new(left: Quat, right: Quat) -> Self {
        Self { left, right }
    }

    /// Element of the first factor only.
    pub const fn left_only(q: Quat) -> Self {
        Self { left: q, right: Quat::ONE }
    }

    pub fn inverse(self) -> Self {
        GElem::new(self.left.conj(), self.right.conj())
    }

    pub fn snapped(self) -> Self {
        GElem::new(self.left.snapped(), self.right.snapped())
    }

    pub fn max_abs_diff(self, o: GElem) -> f64 {
        self.left.max_abs_diff(o.left).max(self.right.max_abs_diff(o.right))
    }

    pub fn is_axis_aligned(self) -> bool {
        self.left.is_axis_aligned() && self.right.is_axis_aligned()
    }

    pub fn pow(self, n: usize) -> Self {
        let mut acc = GElem::IDENTITY;
        for _ in 0..n {
            acc = (acc * self).snapped();
        }
        acc
    }

    /// Conjugate `x` by `self`: self·x·self⁻¹.
    pub fn conjugate(self, x: GElem) -> GElem {
        self * x * self.inverse()
    }
}

impl Mul for GElem {
    type Output = GElem;
    fn mul(self, o: GElem) -> GElem {
        GElem::new(self.left * o.left, self.right * o.right)
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSubgroup {
    pub name: String,
    pub elements: Vec<GElem>,
}

impl FiniteSubgroup {
    /// Closure of `generators` under multiplication, with snapping.
    pub fn generate(name: &str, generators: &[GElem]) -> Result<Self> {
        let mut elements = vec![GElem::IDENTITY];
        let mut frontier = vec![GElem::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = (x * g).snapped();
                if !elements.iter().any(|e| e.max_abs_diff(y) <= SNAP_TOL) {
                    elements.push(y);
                    frontier.push(y);
                    if elements.len() > 4096 {
                        return Err(Error::IllFormed(format!("{name}: generated group is not finite")));
                    }
                }
            }
        }
        Ok(Self { name: name.to_string(), elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: GElem, tol: f64) -> bool {
        self.elements.iter().any(|e| e.max_abs_diff(g) <= tol)
    }

    pub fn is_axis_aligned(&self) -> bool {
        self.elements.iter().all(|e| e.is_axis_aligned())
    }
}

/// True iff some element of `h` is within `tol` of `g` componentwise.
pub fn in_subgroup(g: GElem, h: &FiniteSubgroup, tol: f64) -> bool {
    h.contains(g, tol)
}

/// t ↦ (exp(p·axis_l·t), exp(q·axis_r·t)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleGroup {
    pub axis_l: Quat,
    pub p: i64,
    pub axis_r: Quat,
    pub q: i64,
}

impl CircleGroup {
    pub fn new(axis_l: Quat, p: i64, axis_r: Quat, q: i64) -> Result<Self> {
        for a in [axis_l, axis_r] {
            if !a.is_unit() || !a.is_imaginary() {
                return Err(Error::Domain(format!("circle axis {a} is not a unit imaginary quaternion")));
            }
        }
        if p == 0 && q == 0 {
            return Err(Error::Domain("circle slopes (0, 0) do not define a circle".into()));
        }
        Ok(Self { axis_l, p, axis_r, q })
    }

    /// Both factors on the same axis, the common case in the catalog.
    pub fn on_axis(axis: Quat, p: i64, q: i64) -> Result<Self> {
        Self::new(axis, p, axis, q)
    }

    pub fn at(&self, t: f64) -> GElem {
        GElem::new(
            exp_unchecked(self.axis_l, self.p as f64 * t),
            exp_unchecked(self.axis_r, self.q as f64 * t),
        )
    }

    pub fn slopes(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    /// Membership of `g` in the image of the circle.
    pub fn contains(&self, g: GElem, tol: f64) -> bool {
        let (axis, n, comp) = if self.p != 0 {
            (self.axis_l, self.p, g.left)
        } else {
            (self.axis_r, self.q, g.right)
        };
        // comp must be cos(nt) + sin(nt)·axis
        let theta = comp.dot(axis).atan2(comp.re);
        let m = n.unsigned_abs() as i64;
        (0..m).any(|s| {
            let t = (theta + 2.0 * PI * s as f64) / n as f64;
            self.at(t).max_abs_diff(g) <= tol
        })
    }

    /// Parameter step between consecutive axis-aligned points of the circle.
    fn aligned_step(&self) -> f64 {
        let g = gcd(self.p.unsigned_abs(), self.q.unsigned_abs());
        PI / (2.0 * g as f64)
    }

    fn axes_aligned(&self) -> bool {
        self.axis_l.is_axis_aligned() && self.axis_r.is_axis_aligned()
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdentityComponent {
    Circle(CircleGroup),
    Diagonal3Sphere,
    Trivial,
}

/// K = ⋃ c·K₀ over the coset representatives `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotropyGroup {
    pub identity_component: IdentityComponent,
    pub coset_reps: Vec<GElem>,
}

impl IsotropyGroup {
    pub fn circle(c: CircleGroup, coset_reps: Vec<GElem>) -> Self {
        Self { identity_component: IdentityComponent::Circle(c), coset_reps }
    }

    pub fn circle_group(&self) -> Option<&CircleGroup> {
        match &self.identity_component {
            IdentityComponent::Circle(c) => Some(c),
            _ => None,
        }
    }

    /// Dimension of the normal slice, ℓ = dim K − dim H + 1 (H finite).
    pub fn slice_dim(&self) -> usize {
        match self.identity_component {
            IdentityComponent::Circle(_) => 2,
            IdentityComponent::Diagonal3Sphere => 4,
            IdentityComponent::Trivial => 1,
        }
    }

    fn identity_contains(&self, g: GElem, tol: f64) -> bool {
        match &self.identity_component {
            IdentityComponent::Circle(c) => c.contains(g, tol),
            IdentityComponent::Diagonal3Sphere => g.left.max_abs_diff(g.right) <= tol,
            IdentityComponent::Trivial => g.max_abs_diff(GElem::IDENTITY) <= tol,
        }
    }

    pub fn contains(&self, g: GElem, tol: f64) -> bool {
        self.identity_contains(g, tol)
            || self
                .coset_reps
                .iter()
                .any(|c| self.identity_contains(c.inverse() * g, tol))
    }

    /// Every coset representative maps K₀ onto itself under conjugation.
    pub fn reps_normalize_identity(&self, tol: f64) -> bool {
        let samples = [0.3, 1.1, 2.5];
        self.coset_reps.iter().all(|c| {
            samples.iter().all(|&t| match &self.identity_component {
                IdentityComponent::Circle(k0) => k0.contains(c.conjugate(k0.at(t)), tol),
                IdentityComponent::Diagonal3Sphere => {
                    let x = GElem::new(
                        exp_unchecked(Quat::new(0.0, 0.6, 0.0, 0.8), t),
                        exp_unchecked(Quat::new(0.0, 0.6, 0.0, 0.8), t),
                    );
                    self.identity_contains(c.conjugate(x), tol)
                }
                IdentityComponent::Trivial => true,
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagramParams {
    pub p: Option<i64>,
    pub k: Option<i64>,
    pub eps: Option<f64>,
}

impl DiagramParams {
    pub fn with_p(p: i64) -> Self {
        Self { p: Some(p), ..Self::default() }
    }

    pub fn with_k(k: i64) -> Self {
        Self { k: Some(k), ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupDiagram {
    pub name: String,
    pub h: FiniteSubgroup,
    pub k_minus: IsotropyGroup,
    pub k_plus: IsotropyGroup,
    /// Half-geodesic length; 1 for diagrams without a distinguished metric.
    pub l: f64,
    pub params: DiagramParams,
    /// Identification with another catalog entry, when known.
    pub label: Option<String>,
}

impl GroupDiagram {
    /// H ⊂ K⁻ ∩ K⁺ within `tol`.
    pub fn h_in_both(&self, tol: f64) -> bool {
        self.h
            .elements
            .iter()
            .all(|&g| self.k_minus.contains(g, tol) && self.k_plus.contains(g, tol))
    }
}

pub const CATALOG_NAMES: [&str; 10] = ["S4", "CP2", "S7", "B7", "E_p", "W1", "W2", "P_k", "Q_k", "R"];

pub(crate) fn delta_q() -> Result<FiniteSubgroup> {
    FiniteSubgroup::generate(
        "ΔQ",
        &[GElem::new(Quat::I, Quat::I), GElem::new(Quat::J, Quat::J)],
    )
}

pub(crate) fn z2_z4_i() -> Result<FiniteSubgroup> {
    FiniteSubgroup::generate(
        "{(±1,±1),(±i,±i)}",
        &[GElem::new(Quat::I, Quat::I), GElem::new(Quat::ONE, -Quat::ONE)],
    )
}

fn with_h(k0: CircleGroup, h: &FiniteSubgroup) -> IsotropyGroup {
    IsotropyGroup::circle(k0, h.elements.clone())
}

fn require(p: Option<i64>, what: &str, name: &str) -> Result<i64> {
    match p {
        Some(v) if v >= 1 => Ok(v),
        Some(v) => Err(Error::InvalidParams(format!("{name}: {what} = {v} must be >= 1"))),
        None => Err(Error::InvalidParams(format!("{name}: missing parameter {what}"))),
    }
}

fn eschenburg(name: &str, p: i64, params: DiagramParams) -> Result<GroupDiagram> {
    let sign = |e: i64| if e % 2 == 0 { Quat::ONE } else { -Quat::ONE };
    let h = FiniteSubgroup::generate("Z2", &[GElem::new(sign(p + 1), sign(p))])?;
    let k_minus = IsotropyGroup {
        identity_component: IdentityComponent::Diagonal3Sphere,
        coset_reps: h.elements.clone(),
    };
    let k_plus = IsotropyGroup::circle(CircleGroup::on_axis(Quat::I, p + 1, p)?, vec![]);
    Ok(GroupDiagram {
        name: name.into(),
        h,
        k_minus,
        k_plus,
        l: PI / 2.0,
        params,
        label: None,
    })
}

/// Group diagram of a catalog space.
pub fn catalog(name: &str, params: &DiagramParams) -> Result<GroupDiagram> {
    let params = *params;
    let d = match name {
        "S4" | "CP2" => {
            let s4 = name == "S4";
            let h = if s4 {
                FiniteSubgroup::generate("Q", &[GElem::left_only(Quat::I), GElem::left_only(Quat::J)])?
            } else {
                FiniteSubgroup::generate("{±1,±j}", &[GElem::left_only(Quat::J)])?
            };
            let k_minus = IsotropyGroup::circle(
                CircleGroup::new(Quat::I, 1, Quat::I, 0)?,
                vec![GElem::left_only(Quat::J)],
            );
            let plus_reps = if s4 { vec![GElem::left_only(Quat::I)] } else { vec![] };
            let k_plus = IsotropyGroup::circle(CircleGroup::new(Quat::J, 1, Quat::J, 0)?, plus_reps);
            GroupDiagram {
                name: name.into(),
                h,
                k_minus,
                k_plus,
                l: if s4 { PI / 3.0 } else { PI / 4.0 },
                params,
                label: None,
            }
        }
        "S7" | "B7" => {
            let h = delta_q()?;
            let k_minus = with_h(CircleGroup::on_axis(Quat::I, -3, 1)?, &h);
            let plus = if name == "S7" {
                CircleGroup::on_axis(Quat::J, 1, 1)?
            } else {
                CircleGroup::on_axis(Quat::J, 1, -3)?
            };
            let k_plus = with_h(plus, &h);
            GroupDiagram {
                name: name.into(),
                h,
                k_minus,
                k_plus,
                l: if name == "S7" { PI / 6.0 } else { PI / 3.0 },
                params,
                label: None,
            }
        }
        "E_p" => {
            let p = require(params.p, "p", name)?;
            eschenburg(name, p, params)?
        }
        "W1" => {
            let mut d = eschenburg(name, 1, DiagramParams { p: Some(1), ..params })?;
            d.label = Some("E_1".into());
            d
        }
        "W2" => {
            let h = FiniteSubgroup::generate(
                "{(±1,±1),(±j,±j)}",
                &[GElem::new(Quat::J, Quat::J), GElem::new(Quat::ONE, -Quat::ONE)],
            )?;
            let k_minus = with_h(CircleGroup::on_axis(Quat::I, 1, -2)?, &h);
            let k_plus = with_h(CircleGroup::on_axis(Quat::J, 1, 1)?, &h);
            GroupDiagram { name: name.into(), h, k_minus, k_plus, l: PI / 4.0, params, label: None }
        }
        "P_k" => {
            let k = require(params.k, "k", name)?;
            let h = delta_q()?;
            let k_minus = with_h(CircleGroup::on_axis(Quat::I, 1, 1)?, &h);
            let k_plus = with_h(CircleGroup::on_axis(Quat::J, 1 + 2 * k, 1 - 2 * k)?, &h);
            let label = (k == 1).then(|| "S7".to_string());
            GroupDiagram { name: name.into(), h, k_minus, k_plus, l: 1.0, params, label }
        }
        "Q_k" => {
            let k = require(params.k, "k", name)?;
            let h = z2_z4_i()?;
            let k_minus = with_h(CircleGroup::on_axis(Quat::I, 1, 1)?, &h);
            let k_plus = with_h(CircleGroup::on_axis(Quat::J, k, k + 1)?, &h);
            let label = (k == 1).then(|| "W2".to_string());
            GroupDiagram { name: name.into(), h, k_minus, k_plus, l: 1.0, params, label }
        }
        "R" => {
            let h = z2_z4_i()?;
            let k_minus = with_h(CircleGroup::on_axis(Quat::I, 1, 2)?, &h);
            let k_plus = with_h(CircleGroup::on_axis(Quat::J, 3, 1)?, &h);
            GroupDiagram { name: name.into(), h, k_minus, k_plus, l: 1.0, params, label: None }
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    if !d.h_in_both(MEMBER_TOL) {
        return Err(Error::IllFormed(format!("{name}: H is not contained in both K±")));
    }
    Ok(d)
}

/// Weyl element of a singular isotropy group with circle identity component:
/// half of the first return of the circle to H.
pub fn weyl_rep(k: &IsotropyGroup, h: &FiniteSubgroup) -> Result<GElem> {
    let c = k.circle_group().ok_or_else(|| {
        Error::Unsupported("Weyl representative requires a circle identity component".into())
    })?;
    if !h.is_axis_aligned() || !c.axes_aligned() {
        return Err(Error::Unsupported("Weyl search needs axis-aligned H and circle axes".into()));
    }
    let step = c.aligned_step();
    let steps = (2.0 * PI / step).round() as usize;
    for m in 1..=steps {
        let t0 = step * m as f64;
        if h.contains(c.at(t0).snapped(), MEMBER_TOL) {
            return Ok(c.at(0.5 * t0).snapped());
        }
    }
    Err(Error::IllFormed("circle does not meet H within one period".into()))
}

/// (w₋, w₊). For a 3-dimensional ΔS³ identity component w₋ = (−1, −1).
pub fn weyl_pair(d: &GroupDiagram) -> Result<(GElem, GElem)> {
    let w = |k: &IsotropyGroup| match k.identity_component {
        IdentityComponent::Diagonal3Sphere => Ok(GElem::new(-Quat::ONE, -Quat::ONE)),
        _ => weyl_rep(k, &d.h),
    };
    Ok((w(&d.k_minus)?, w(&d.k_plus)?))
}

/// |W| = 2n for the least n with (w₊w₋)ⁿ ∈ H.
pub fn weyl_order(d: &GroupDiagram) -> Result<usize> {
    let (wm, wp) = weyl_pair(d)?;
    let a = (wp * wm).snapped();
    let mut acc = GElem::IDENTITY;
    for n in 1..=WEYL_SEARCH_BOUND {
        acc = (acc * a).snapped();
        if d.h.contains(acc, MEMBER_TOL) {
            return Ok(2 * n);
        }
    }
    Err(Error::SearchExhausted(format!(
        "{}: (w+w-)^n not in H for n <= {WEYL_SEARCH_BOUND}",
        d.name
    )))
}

/// Normal weight k with H ∩ K₀ = Z_k.
pub fn normal_weight(k0: &CircleGroup, h: &FiniteSubgroup) -> usize {
    h.elements.iter().filter(|&&g| k0.contains(g, MEMBER_TOL)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_examples() {
        assert!(quat_exp(Quat::I, PI / 2.0).unwrap().max_abs_diff(Quat::I) < 1e-15);
        assert!(quat_exp(Quat::J, PI).unwrap().max_abs_diff(-Quat::ONE) < 1e-15);
        let e = quat_exp(Quat::I, PI / 4.0).unwrap();
        assert!(e.max_abs_diff(Quat::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0)) < 1e-15);
        assert!(quat_exp(Quat::new(0.0, 2.0, 0.0, 0.0), 1.0).is_err());
        assert!(quat_exp(Quat::new(0.6, 0.8, 0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn quaternion_units() {
        assert_eq!(Quat::I * Quat::J, Quat::K);
        assert_eq!(Quat::J * Quat::K, Quat::I);
        assert_eq!(Quat::K * Quat::I, Quat::J);
        assert_eq!(Quat::I * Quat::I, -Quat::ONE);
    }

    #[test]
    fn membership_in_delta_q() {
        let dq = delta_q().unwrap();
        assert_eq!(dq.order(), 8);
        assert!(in_subgroup(GElem::new(Quat::I, Quat::I), &dq, 1e-12));
        assert!(!in_subgroup(GElem::new(Quat::ONE, -Quat::ONE), &dq, 1e-12));
        let e = quat_exp(Quat::I, PI / 4.0).unwrap();
        assert!(!in_subgroup(GElem::new(e, e), &dq, 1e-12));
    }

    #[test]
    fn snapping_grid() {
        let q = Quat::new(0.5 + 1e-11, -FRAC_1_SQRT_2 - 1e-10, 0.3, 1e-12).snapped();
        assert_eq!(q, Quat::new(0.5, -FRAC_1_SQRT_2, 0.3, 0.0));
    }

    #[test]
    fn circle_membership() {
        let c = CircleGroup::on_axis(Quat::I, -3, 1).unwrap();
        assert!(c.contains(GElem::new(Quat::I, Quat::I), 1e-12));
        assert!(!c.contains(GElem::new(Quat::J, Quat::J), 1e-12));
    }
}
