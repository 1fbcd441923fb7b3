//! Slope arithmetic for cohomogeneity one diagrams of S³×S³ with circle
//! singular isotropy groups, and the resulting case analysis of the five
//! primitive families.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::{self, gcd, CircleGroup, FiniteSubgroup, GElem, Quat};

/// Slopes (p, q) of a circle t ↦ (e^{apt}, e^{aqt}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlopePair {
    pub p: i64,
    pub q: i64,
}

impl SlopePair {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn neg(self) -> Self {
        Self::new(-self.p, -self.q)
    }

    pub fn swap(self) -> Self {
        Self::new(self.q, self.p)
    }

    pub fn is_reduced(self) -> bool {
        gcd(self.p.unsigned_abs(), self.q.unsigned_abs()) == 1
    }

    pub fn has_zero(self) -> bool {
        self.p == 0 || self.q == 0
    }

    pub fn is_unit_diagonal(self) -> bool {
        self.p.abs() == 1 && self.q.abs() == 1
    }

    /// Divide out the common factor.
    pub fn reduced(self) -> Self {
        let g = gcd(self.p.unsigned_abs(), self.q.unsigned_abs()).max(1) as i64;
        Self::new(self.p / g, self.q / g)
    }
}

impl fmt::Display for SlopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl From<(i64, i64)> for SlopePair {
    fn from((p, q): (i64, i64)) -> Self {
        Self::new(p, q)
    }
}

/// Lemma (a), (b): constraint on the slopes of a circle singular orbit
/// whose normal weight is k.
pub fn lemma_ab(p: i64, q: i64, k: i64) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidParams(format!("normal weight k = {k} must be >= 1")));
    }
    Ok(match k {
        1 => false,
        2 => (p + q).abs() == 1 || (p - q).abs() == 1,
        _ => (p.abs() == 1 && q.abs() == 1) || (2 * p + 2 * q).abs() == k || (2 * p - 2 * q).abs() == k,
    })
}

/// Lemma (c): min{|p₊|,|p₋|} = min{|q₊|,|q₋|} = 1.
pub fn lemma_c(minus: SlopePair, plus: SlopePair) -> bool {
    minus.p.abs().min(plus.p.abs()) == 1 && minus.q.abs().min(plus.q.abs()) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateId {
    Ex1a,
    Ex1b,
    Ex2,
    Ex3,
    Ex4,
}

impl TemplateId {
    pub const ALL: [TemplateId; 5] = [Self::Ex1a, Self::Ex1b, Self::Ex2, Self::Ex3, Self::Ex4];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ex1a => "EX1A",
            Self::Ex1b => "EX1B",
            Self::Ex2 => "EX2",
            Self::Ex3 => "EX3",
            Self::Ex4 => "EX4",
        }
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TemplateId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(format!("template {s:?}; expected one of ex1a, ex1b, ex2, ex3, ex4")))
    }
}

/// Congruence conditions on one side's slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Congruence {
    Any,
    /// p even, q odd.
    EvenOdd,
    OddOdd,
    /// p ≡ q ≡ 1 mod 4, up to reversing the circle.
    OneMod4,
}

impl Congruence {
    pub fn admits(self, s: SlopePair) -> bool {
        let odd = |x: i64| x.rem_euclid(2) == 1;
        match self {
            Self::Any => true,
            Self::EvenOdd => !odd(s.p) && odd(s.q),
            Self::OddOdd => odd(s.p) && odd(s.q),
            Self::OneMod4 => odd(s.p) && (s.p - s.q).rem_euclid(4) == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SideRule {
    pub axis: Quat,
    pub congruence: Congruence,
}

/// One of the five primitive families: principal isotropy H, and for each
/// circle side the axis and slope congruences. `minus` is `None` when K⁻ is
/// the diagonal ΔS³·H.
#[derive(Debug, Clone)]
pub struct FamilyTemplate {
    pub id: TemplateId,
    pub h: FiniteSubgroup,
    pub minus: Option<SideRule>,
    pub plus: SideRule,
}

impl FamilyTemplate {
    pub fn new(id: TemplateId) -> Result<Self> {
        let side = |axis, congruence| SideRule { axis, congruence };
        let (h, minus, plus) = match id {
            TemplateId::Ex1a => (
                FiniteSubgroup::generate("{e}", &[])?,
                None,
                side(Quat::I, Congruence::Any),
            ),
            TemplateId::Ex1b => (
                FiniteSubgroup::generate("Z2", &[GElem::new(Quat::ONE, -Quat::ONE)])?,
                None,
                side(Quat::I, Congruence::EvenOdd),
            ),
            TemplateId::Ex2 => (
                FiniteSubgroup::generate("Z4", &[GElem::new(Quat::I, Quat::I)])?,
                Some(side(Quat::I, Congruence::OneMod4)),
                side(Quat::J, Congruence::Any),
            ),
            TemplateId::Ex3 => (
                groups::z2_z4_i()?,
                Some(side(Quat::I, Congruence::OddOdd)),
                side(Quat::J, Congruence::EvenOdd),
            ),
            TemplateId::Ex4 => (
                groups::delta_q()?,
                Some(side(Quat::I, Congruence::OneMod4)),
                side(Quat::J, Congruence::OneMod4),
            ),
        };
        Ok(Self { id, h, minus, plus })
    }

    pub fn is_two_sided(&self) -> bool {
        self.minus.is_some()
    }

    /// Lemma (c) needs H = ΔQ or {(±1,±1),(±i,±i)}.
    pub fn lemma_c_applies(&self) -> bool {
        matches!(self.id, TemplateId::Ex3 | TemplateId::Ex4)
    }

    /// k with H ∩ K₀ = Z_k for the circle with slopes `s` on `rule.axis`.
    pub fn normal_weight(&self, rule: &SideRule, s: SlopePair) -> Result<i64> {
        let c = CircleGroup::on_axis(rule.axis, s.p, s.q)?;
        Ok(groups::normal_weight(&c, &self.h) as i64)
    }

    fn zero_tag(&self) -> Exclusion {
        match self.id {
            TemplateId::Ex1a | TemplateId::Ex1b => Exclusion::ProductLemma,
            _ => Exclusion::NotGroupPrimitive,
        }
    }

    /// Orbit of a configuration under the normalizations allowed for this family.
    pub fn orbit(&self, c: Config) -> Vec<Config> {
        let signs = [1i64, -1];
        let mut out = Vec::new();
        match (self.id, c.minus) {
            (TemplateId::Ex1a | TemplateId::Ex1b, _) | (_, None) => {
                for a in signs {
                    for b in signs {
                        out.push(Config { minus: c.minus, plus: SlopePair::new(a * c.plus.p, b * c.plus.q) });
                    }
                }
            }
            (TemplateId::Ex3, Some(m)) => {
                for bits in 0..16u32 {
                    let s = |n: u32| if bits >> n & 1 == 1 { -1 } else { 1 };
                    let mm = SlopePair::new(s(0) * m.p, s(1) * m.q);
                    let pp = SlopePair::new(s(2) * c.plus.p, s(3) * c.plus.q);
                    out.push(Config { minus: Some(mm), plus: pp });
                    out.push(Config { minus: Some(mm.swap()), plus: pp.swap() });
                }
            }
            (_, Some(m)) => {
                for a in signs {
                    for b in signs {
                        let mm = SlopePair::new(a * m.p, a * m.q);
                        let pp = SlopePair::new(b * c.plus.p, b * c.plus.q);
                        for (x, y) in [(mm, pp), (mm.swap(), pp.swap())] {
                            out.push(Config { minus: Some(x), plus: y });
                            if self.id == TemplateId::Ex4 {
                                out.push(Config { minus: Some(y), plus: x });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Lexicographically smallest orbit element, entries ordered by
    /// (|x|, x < 0).
    pub fn canonicalize(&self, c: Config) -> Config {
        self.orbit(c).into_iter().min_by_key(|x| x.key()).unwrap_or(c)
    }
}

/// Slopes on both sides of a diagram; `minus` is `None` for ΔS³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub minus: Option<SlopePair>,
    pub plus: SlopePair,
}

impl Config {
    pub fn new(minus: Option<(i64, i64)>, plus: (i64, i64)) -> Self {
        Self { minus: minus.map(SlopePair::from), plus: plus.into() }
    }

    fn key(&self) -> Vec<(i64, bool)> {
        let mut v = Vec::with_capacity(4);
        if let Some(m) = self.minus {
            v.extend([m.p, m.q]);
        }
        v.extend([self.plus.p, self.plus.q]);
        v.into_iter().map(|x| (x.abs(), x < 0)).collect()
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.minus {
            Some(m) => write!(f, "{{{m}, {}}}", self.plus),
            None => write!(f, "{{ΔS3, {}}}", self.plus),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Ep(i64),
    B7,
    R,
    Pk(i64),
    Qk(i64),
    None,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Ep(p) => write!(f, "E_{p}"),
            Label::B7 => f.write_str("B7"),
            Label::R => f.write_str("R"),
            Label::Pk(k) => write!(f, "P_{k}"),
            Label::Qk(k) => write!(f, "Q_{k}"),
            Label::None => f.write_str("none"),
        }
    }
}

/// Why a configuration was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exclusion {
    /// gcd(p, q) ≠ 1: the same circle as a reduced pair.
    NotReduced,
    /// A zero slope in the families with a ΔS³ singular orbit.
    ProductLemma,
    /// A zero slope, or both circles inside one twisted diagonal.
    NotGroupPrimitive,
    LemmaA,
    LemmaB,
    LemmaC,
}

impl Exclusion {
    pub fn tag(self) -> &'static str {
        match self {
            Self::NotReduced => "not reduced",
            Self::ProductLemma => "product-lemma",
            Self::NotGroupPrimitive => "not group primitive",
            Self::LemmaA => "lemma (a)",
            Self::LemmaB => "lemma (b)",
            Self::LemmaC => "lemma (c)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Survivor {
    pub config: Config,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub template: TemplateId,
    pub bound: i64,
    /// Canonical representatives, sorted.
    pub survivors: Vec<Survivor>,
    /// Number of raw configurations dropped by each filter.
    pub exclusions: BTreeMap<Exclusion, usize>,
}

impl ClassificationResult {
    pub fn labels(&self) -> Vec<Label> {
        self.survivors.iter().map(|s| s.label).collect()
    }

    pub fn configs(&self) -> BTreeSet<Config> {
        self.survivors.iter().map(|s| s.config).collect()
    }
}

fn side_candidates(rule: &SideRule, n: i64) -> impl Iterator<Item = SlopePair> + '_ {
    (-n..=n)
        .flat_map(move |p| (-n..=n).map(move |q| SlopePair::new(p, q)))
        .filter(move |s| (s.p, s.q) != (0, 0) && rule.congruence.admits(*s))
}

fn lemma_tag(k: i64) -> Exclusion {
    if k <= 2 {
        Exclusion::LemmaA
    } else {
        Exclusion::LemmaB
    }
}

/// Side filter: primitivity of the slopes, then lemma (a)/(b).
fn check_side(t: &FamilyTemplate, rule: &SideRule, s: SlopePair) -> Result<std::result::Result<(), Exclusion>> {
    if s.has_zero() {
        return Ok(Err(t.zero_tag()));
    }
    if !s.is_reduced() {
        return Ok(Err(Exclusion::NotReduced));
    }
    let k = t.normal_weight(rule, s)?;
    if k < 1 || !lemma_ab(s.p, s.q, k)? {
        return Ok(Err(lemma_tag(k.max(1))));
    }
    Ok(Ok(()))
}

/// Both circles (±1,±1) lie in one graph {(x, σ(x))} of an automorphism σ.
fn twisted_diagonal(minus: SlopePair, plus: SlopePair) -> bool {
    minus.is_unit_diagonal() && plus.is_unit_diagonal()
}

fn finish(t: &FamilyTemplate, n: i64, raw: Vec<Config>, exclusions: BTreeMap<Exclusion, usize>) -> ClassificationResult {
    let canon: BTreeSet<Config> = raw.into_iter().map(|c| t.canonicalize(c)).collect();
    let mut survivors: Vec<Survivor> = canon
        .into_iter()
        .map(|config| Survivor { config, label: label_of(t, config) })
        .collect();
    survivors.sort_by(|a, b| a.config.key().cmp(&b.config.key()));
    ClassificationResult { template: t.id, bound: n, survivors, exclusions }
}

/// All configurations with |p±|, |q±| ≤ n satisfying the family's
/// congruences that pass every filter, up to normalization.
pub fn enumerate(id: TemplateId, n: i64) -> Result<ClassificationResult> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("bound N = {n} must be >= 3")));
    }
    let t = FamilyTemplate::new(id)?;
    let mut excl: BTreeMap<Exclusion, usize> = BTreeMap::new();
    let mut pass_side = |rule: &SideRule| -> Result<Vec<SlopePair>> {
        let mut kept = Vec::new();
        for s in side_candidates(rule, n) {
            match check_side(&t, rule, s)? {
                Ok(()) => kept.push(s),
                Err(e) => *excl.entry(e).or_default() += 1,
            }
        }
        Ok(kept)
    };
    let plus = pass_side(&t.plus)?;
    let mut raw = Vec::new();
    match &t.minus {
        None => raw.extend(plus.iter().map(|&p| Config { minus: None, plus: p })),
        Some(rule) => {
            let minus = pass_side(rule)?;
            for &m in &minus {
                for &p in &plus {
                    if twisted_diagonal(m, p) {
                        *excl.entry(Exclusion::NotGroupPrimitive).or_default() += 1;
                    } else if t.lemma_c_applies() && !lemma_c(m, p) {
                        *excl.entry(Exclusion::LemmaC).or_default() += 1;
                    } else {
                        raw.push(Config { minus: Some(m), plus: p });
                    }
                }
            }
        }
    }
    Ok(finish(&t, n, raw, excl))
}

/// Independent brute force over all tuples, filters applied in the
/// opposite order to [`enumerate`].
pub fn enumerate_reverse(id: TemplateId, n: i64) -> Result<ClassificationResult> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("bound N = {n} must be >= 3")));
    }
    let t = FamilyTemplate::new(id)?;
    let mut excl: BTreeMap<Exclusion, usize> = BTreeMap::new();
    let mut weights: HashMap<(bool, SlopePair), i64> = HashMap::new();
    let mut weight = |minus: bool, rule: &SideRule, s: SlopePair| -> Result<i64> {
        if let Some(&k) = weights.get(&(minus, s)) {
            return Ok(k);
        }
        let k = t.normal_weight(rule, s)?;
        weights.insert((minus, s), k);
        Ok(k)
    };
    let mut raw = Vec::new();
    let minus_list: Vec<Option<SlopePair>> = match &t.minus {
        None => vec![None],
        Some(rule) => (-n..=n)
            .flat_map(|p| (-n..=n).map(move |q| Some(SlopePair::new(p, q))))
            .filter(|s| s.is_some_and(|s| rule.congruence.admits(s)))
            .collect(),
    };
    for m in minus_list {
        for pp in -n..=n {
            for pq in -n..=n {
                let p = SlopePair::new(pp, pq);
                if !t.plus.congruence.admits(p) {
                    continue;
                }
                let sides: Vec<(bool, &SideRule, SlopePair)> = match (m, &t.minus) {
                    (Some(ms), Some(rule)) => vec![(false, &t.plus, p), (true, rule, ms)],
                    _ => vec![(false, &t.plus, p)],
                };
                let verdict = (|| -> Result<Option<Exclusion>> {
                    if let Some(ms) = m {
                        if t.lemma_c_applies() && !lemma_c(ms, p) {
                            return Ok(Some(Exclusion::LemmaC));
                        }
                        if twisted_diagonal(ms, p) {
                            return Ok(Some(Exclusion::NotGroupPrimitive));
                        }
                    }
                    for &(is_minus, rule, s) in &sides {
                        if s.p == 0 && s.q == 0 {
                            return Ok(Some(t.zero_tag()));
                        }
                        let k = if s.has_zero() { 0 } else { weight(is_minus, rule, s)? };
                        if k >= 1 && !lemma_ab(s.p, s.q, k)? {
                            return Ok(Some(lemma_tag(k)));
                        }
                    }
                    for &(_, _, s) in &sides {
                        if !s.is_reduced() && !s.has_zero() {
                            return Ok(Some(Exclusion::NotReduced));
                        }
                        if s.has_zero() {
                            return Ok(Some(t.zero_tag()));
                        }
                    }
                    Ok(None)
                })()?;
                match verdict {
                    Some(e) => *excl.entry(e).or_default() += 1,
                    None => raw.push(Config { minus: m, plus: p }),
                }
            }
        }
    }
    Ok(finish(&t, n, raw, excl))
}

/// Label by matching the canonical form against canonicalized instances of
/// the known families.
pub fn label_of(t: &FamilyTemplate, c: Config) -> Label {
    let c = t.canonicalize(c);
    let bound = c.key().iter().map(|x| x.0).max().unwrap_or(0) + 2;
    let hit = |inst: Config| t.canonicalize(inst) == c;
    match t.id {
        TemplateId::Ex1a | TemplateId::Ex1b => (1..=bound)
            .find(|&m| hit(Config { minus: None, plus: eschenburg_slopes(m) }))
            .map_or(Label::None, Label::Ep),
        TemplateId::Ex3 => {
            if hit(Config::new(Some((1, 3)), (2, 1))) {
                Label::R
            } else {
                (1..=bound)
                    .find(|&p| hit(Config::new(Some((1, 1)), (p, p + 1))))
                    .map_or(Label::None, Label::Qk)
            }
        }
        TemplateId::Ex4 => {
            if hit(Config::new(Some((1, -3)), (-3, 1))) {
                Label::B7
            } else {
                (1..=bound)
                    .find(|&k| hit(Config::new(Some((1, 1)), (1 + 2 * k, 1 - 2 * k))))
                    .map_or(Label::None, Label::Pk)
            }
        }
        TemplateId::Ex2 => Label::None,
    }
}

/// Plus-side slopes of E_m in the even/odd normalization.
fn eschenburg_slopes(m: i64) -> SlopePair {
    if m % 2 == 1 {
        SlopePair::new(m + 1, m)
    } else {
        SlopePair::new(m, m + 1)
    }
}

/// Expected survivors at bound n, built from the family patterns.
pub fn golden_set(id: TemplateId, n: i64) -> Result<BTreeSet<Survivor>> {
    let t = FamilyTemplate::new(id)?;
    let mut out = BTreeSet::new();
    let mut add = |c: Config, label: Label| {
        out.insert(Survivor { config: t.canonicalize(c), label });
    };
    match id {
        TemplateId::Ex1a | TemplateId::Ex2 => {}
        TemplateId::Ex1b => {
            for m in 1..n {
                add(Config { minus: None, plus: eschenburg_slopes(m) }, Label::Ep(m));
            }
        }
        TemplateId::Ex3 => {
            add(Config::new(Some((1, 3)), (2, 1)), Label::R);
            for p in 1..n {
                add(Config::new(Some((1, 1)), (p, p + 1)), Label::Qk(p));
            }
        }
        TemplateId::Ex4 => {
            add(Config::new(Some((1, -3)), (-3, 1)), Label::B7);
            for k in 1..=(n - 1) / 2 {
                add(Config::new(Some((1, 1)), (1 + 2 * k, 1 - 2 * k)), Label::Pk(k));
            }
        }
    }
    Ok(out)
}

/// Slopes of the circle actions on the twistor-type bundles over a
/// Hitchin orbifold with cone angle 2π/k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleSlopes {
    pub frame: ([i64; 3], [i64; 3]),
    pub selfdual: (SlopePair, SlopePair),
    pub antiselfdual: (SlopePair, SlopePair),
}

pub fn bundle_slopes(k: i64) -> Result<BundleSlopes> {
    if k < 1 {
        return Err(Error::InvalidParams(format!("k = {k} must be >= 1")));
    }
    Ok(BundleSlopes {
        frame: ([1, 1, 3], [k, -(k + 2), k - 2]),
        selfdual: (SlopePair::new(1, 1), SlopePair::new(k, -(k + 2))),
        antiselfdual: (SlopePair::new(1, 3), SlopePair::new(k, k - 2)),
    })
}

/// Family of the self-dual bundle's reduced slopes: P_m for k = 2m − 1
/// and Q_m for k = 2m.
pub fn selfdual_label(k: i64) -> Result<Label> {
    let b = bundle_slopes(k)?;
    let c = Config { minus: Some(b.selfdual.0.reduced()), plus: b.selfdual.1.reduced() };
    let id = if k % 2 == 1 { TemplateId::Ex4 } else { TemplateId::Ex3 };
    Ok(label_of(&FamilyTemplate::new(id)?, c))
}

/// Family of the anti-self-dual bundle's reduced slopes, with all signs
/// ignored.
pub fn antiselfdual_label(k: i64) -> Result<Label> {
    let b = bundle_slopes(k)?;
    let c = Config { minus: Some(b.antiselfdual.0.reduced()), plus: b.antiselfdual.1.reduced() };
    let t3 = FamilyTemplate::new(TemplateId::Ex3)?;
    let canon = t3.canonicalize(c);
    if canon == t3.canonicalize(Config::new(Some((1, 3)), (2, 1))) {
        return Ok(Label::R);
    }
    if canon == t3.canonicalize(Config::new(Some((1, -3)), (-3, 1))) {
        return Ok(Label::B7);
    }
    Ok(label_of(&t3, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_examples() {
        assert!(lemma_ab(2, 1, 2).unwrap());
        assert!(!lemma_ab(3, 1, 2).unwrap());
        assert!(lemma_ab(1, 1, 4).unwrap());
        assert!(!lemma_ab(2, 1, 1).unwrap());
        assert!(lemma_ab(1, 1, 0).is_err());
        assert!(lemma_c(SlopePair::new(1, 1), SlopePair::new(5, -3)));
        assert!(lemma_c(SlopePair::new(1, 3), SlopePair::new(2, 1)));
        assert!(!lemma_c(SlopePair::new(3, 5), SlopePair::new(2, 7)));
    }

    #[test]
    fn printed_normal_weights() {
        let w = |id, minus: bool, s: (i64, i64)| {
            let t = FamilyTemplate::new(id).unwrap();
            let rule = if minus { t.minus.clone().unwrap() } else { t.plus.clone() };
            t.normal_weight(&rule, s.into()).unwrap()
        };
        assert_eq!(w(TemplateId::Ex1a, false, (2, 3)), 1);
        assert_eq!(w(TemplateId::Ex1b, false, (2, 3)), 2);
        assert_eq!(w(TemplateId::Ex2, true, (5, 1)), 4);
        assert_eq!(w(TemplateId::Ex2, false, (3, 1)), 2);
        assert_eq!(w(TemplateId::Ex2, false, (2, 1)), 1);
        assert_eq!(w(TemplateId::Ex3, true, (1, 3)), 4);
        assert_eq!(w(TemplateId::Ex3, false, (2, 1)), 2);
        assert_eq!(w(TemplateId::Ex4, true, (1, -3)), 4);
        assert_eq!(w(TemplateId::Ex4, false, (5, -3)), 4);
    }

    #[test]
    fn ex3_at_ten() {
        let r = enumerate(TemplateId::Ex3, 10).unwrap();
        let labels = r.labels();
        assert!(labels.contains(&Label::R));
        for p in 1..=9 {
            assert!(labels.contains(&Label::Qk(p)));
        }
        assert_eq!(labels.len(), 10);
    }

    #[test]
    fn ex4_at_ten() {
        let r = enumerate(TemplateId::Ex4, 10).unwrap();
        let mut labels = r.labels();
        labels.sort();
        assert_eq!(labels, vec![Label::B7, Label::Pk(1), Label::Pk(2), Label::Pk(3), Label::Pk(4)]);
    }

    #[test]
    fn ex2_empty() {
        assert!(enumerate(TemplateId::Ex2, 10).unwrap().survivors.is_empty());
    }

    #[test]
    fn bundles() {
        assert_eq!(antiselfdual_label(3).unwrap(), Label::B7);
        assert_eq!(antiselfdual_label(4).unwrap(), Label::R);
        for m in 1..6 {
            assert_eq!(selfdual_label(2 * m - 1).unwrap(), Label::Pk(m));
            assert_eq!(selfdual_label(2 * m).unwrap(), Label::Qk(m));
        }
    }
}
