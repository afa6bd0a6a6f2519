//! Reversibility, Følner search, approximate invariant means, vector-state
//! defects and a consistency audit of the amenability implication graph.
//!
//! Every ratio and deviation is an exact rational. Positive verdicts on a
//! window are bounded evidence; a disjoint pair of principal ideals is a
//! proof of non-reversibility.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{LabError, Result};
use crate::ideal_engine::IdealEngine;
use crate::semigroup::{CancellativityReport, Element, ModelKind, SemigroupModel};

/// `{"num": …, "den": …}` with decimal strings so that no precision is lost.
pub fn rational_json(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub side: Side,
    pub radius: usize,
    pub holds_on_window: bool,
    /// First pair `(p, q)` in ball order with `pP ∩ qP = ∅` (left) or
    /// `Pp ∩ Pq = ∅` (right).
    pub witness: Option<(Element, Element)>,
    pub pairs_checked: usize,
    /// `"ideal-engine"` or `"common-multiple"`.
    pub method: &'static str,
}

impl ReversibilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": "reversible",
            "side": self.side.to_string(),
            "radius": self.radius,
            "result": if self.holds_on_window { "PASS" } else { "WITNESS" },
            "holds_on_window": self.holds_on_window,
            "witness": self.witness.as_ref().map(|(p, q)| vec![p.to_string(), q.to_string()]),
            "pairs_checked": self.pairs_checked,
            "method": self.method,
            "bounded_evidence": self.holds_on_window,
        })
    }
}

/// Decides `pP ∩ qP ≠ ∅` for all `p, q` in `ball(radius)`.
pub fn check_left_reversible(model: &SemigroupModel, radius: usize) -> Result<ReversibilityReport> {
    reversibility(model, radius, Side::Left)
}

/// Decides `Pp ∩ Pq ≠ ∅` for all `p, q` in `ball(radius)`, as the left
/// check on the opposite model.
pub fn check_right_reversible(model: &SemigroupModel, radius: usize) -> Result<ReversibilityReport> {
    let op = SemigroupModel::opposite(model.clone());
    let mut report = reversibility(&op, radius, Side::Left)?;
    report.side = Side::Right;
    Ok(report)
}

fn reversibility(model: &SemigroupModel, radius: usize, side: Side) -> Result<ReversibilityReport> {
    if radius == 0 {
        return Err(LabError::Budget("reversibility radius must be at least 1".into()));
    }
    let ball = model.ball(radius);
    let engine = IdealEngine::new(model).ok();
    let disjoint = |p: &Element, q: &Element| -> Result<bool> {
        match &engine {
            Some(e) => Ok(e.intersect(&e.principal(p)?, &e.principal(q)?)?.is_empty_form()),
            None => Ok(model.common_right_multiple(p, q)?.is_none()),
        }
    };
    let rows: Vec<Result<Option<Element>>> = ball
        .par_iter()
        .map(|p| {
            for q in &ball {
                if disjoint(p, q)? {
                    return Ok(Some(q.clone()));
                }
            }
            Ok(None)
        })
        .collect();
    let mut witness = None;
    let mut pairs_checked = 0;
    for (p, row) in ball.iter().zip(rows) {
        match row? {
            Some(q) => {
                pairs_checked += ball.iter().position(|x| *x == q).expect("q from ball") + 1;
                witness = Some((p.clone(), q));
                break;
            }
            None => pairs_checked += ball.len(),
        }
    }
    Ok(ReversibilityReport {
        side,
        radius,
        holds_on_window: witness.is_none(),
        witness,
        pairs_checked,
        method: if engine.is_some() { "ideal-engine" } else { "common-multiple" },
    })
}

/// `|pF Δ F| / |F|` for a nonempty finite `F`.
pub fn vector_state_defect(model: &SemigroupModel, f: &[Element], p: &Element) -> Result<BigRational> {
    model.check(p)?;
    for x in f {
        model.check(x)?;
    }
    let set: BTreeSet<Element> = f.iter().cloned().collect();
    if set.is_empty() {
        return Err(LabError::Precondition("F must be nonempty".into()));
    }
    Ok(defect(model, &set, p))
}

fn defect(model: &SemigroupModel, f: &BTreeSet<Element>, p: &Element) -> BigRational {
    let pf: BTreeSet<Element> = f.iter().map(|x| model.mul_unchecked(p, x)).collect();
    ratio(pf.symmetric_difference(f).count(), f.len())
}

/// Search limits for [`folner_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FolnerBudget {
    /// `C` must lie in this ball.
    pub radius: usize,
    /// Largest candidate size.
    pub max_size: usize,
    /// Balls above this size are not greedily trimmed.
    pub trim_limit: usize,
}

impl Default for FolnerBudget {
    fn default() -> Self {
        FolnerBudget { radius: 4, max_size: 10_000, trim_limit: 160 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerCertificate {
    pub f: Vec<Element>,
    pub c: Vec<Element>,
    pub epsilon: BigRational,
    /// `p ↦ |pF Δ F|/|F|` in the order of `c`.
    pub ratios: Vec<(Element, BigRational)>,
    pub shape: String,
}

impl FolnerCertificate {
    pub fn max_ratio(&self) -> BigRational {
        self.ratios.iter().map(|(_, r)| r.clone()).max().unwrap_or_else(BigRational::zero)
    }

    /// Re-checks every ratio from scratch.
    pub fn verify(&self, model: &SemigroupModel) -> Result<bool> {
        if self.f.is_empty() {
            return Ok(false);
        }
        for (p, r) in &self.ratios {
            let d = vector_state_defect(model, &self.f, p)?;
            if d != *r || d >= self.epsilon {
                return Ok(false);
            }
        }
        Ok(self.ratios.iter().map(|(p, _)| p).eq(self.c.iter()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "result": "CERTIFICATE",
            "shape": self.shape,
            "size": self.f.len(),
            "F": self.f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "C": self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "epsilon": rational_json(&self.epsilon),
            "ratios": self.ratios.iter().map(|(p, r)| json!({ "p": p.to_string(), "ratio": rational_json(r) })).collect::<Vec<_>>(),
            "max_ratio": rational_json(&self.max_ratio()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerExhausted {
    pub c: Vec<Element>,
    pub epsilon: BigRational,
    pub best_ratio: BigRational,
    pub best_set: Vec<Element>,
    pub best_shape: String,
    pub candidates_tried: usize,
    pub budget: FolnerBudget,
}

impl FolnerExhausted {
    pub fn to_json(&self) -> Value {
        json!({
            "result": "EXHAUSTED",
            "C": self.c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "epsilon": rational_json(&self.epsilon),
            "best_ratio": rational_json(&self.best_ratio),
            "best_shape": self.best_shape,
            "best_size": self.best_set.len(),
            "best_set": self.best_set.iter().take(64).map(|x| x.to_string()).collect::<Vec<_>>(),
            "candidates_tried": self.candidates_tried,
            "budget": { "radius": self.budget.radius, "max_size": self.budget.max_size, "trim_limit": self.budget.trim_limit },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FolnerOutcome {
    Certificate(FolnerCertificate),
    Exhausted(FolnerExhausted),
}

impl FolnerOutcome {
    pub fn certificate(&self) -> Option<&FolnerCertificate> {
        match self {
            FolnerOutcome::Certificate(c) => Some(c),
            FolnerOutcome::Exhausted(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FolnerOutcome::Certificate(c) => c.to_json(),
            FolnerOutcome::Exhausted(e) => e.to_json(),
        }
    }
}

struct Scored {
    score: BigRational,
    set: BTreeSet<Element>,
    shape: String,
}

impl Scored {
    /// Total order on `(ratio, size, lexicographic F)`.
    fn better_than(&self, other: &Scored) -> bool {
        (&self.score, self.set.len(), &self.set) < (&other.score, other.set.len(), &other.set)
    }
}

fn max_defect(model: &SemigroupModel, f: &BTreeSet<Element>, c: &[Element]) -> BigRational {
    c.iter().map(|p| defect(model, f, p)).max().unwrap_or_else(BigRational::zero)
}

/// Candidate sets in increasing size: boxes for free abelian monoids,
/// initial segments for numerical semigroups, balls otherwise. Produced
/// lazily since the search usually stops early.
fn candidates<'a>(
    model: &'a SemigroupModel,
    budget: &'a FolnerBudget,
) -> Box<dyn Iterator<Item = (String, BTreeSet<Element>)> + 'a> {
    match model.base().0.kind() {
        ModelKind::FreeAbelianMonoid { rank } => {
            let rank = *rank;
            Box::new(
                (1usize..)
                    .take_while(move |n| n.checked_pow(rank as u32).is_some_and(|s| s <= budget.max_size))
                    .map(move |n| (format!("box {n}^{rank}"), box_set(rank, n))),
            )
        }
        ModelKind::Numerical(s) => {
            let mut set = BTreeSet::new();
            Box::new((0u64..).filter(|n| s.contains(*n)).map_while(move |n| {
                if set.len() >= budget.max_size {
                    return None;
                }
                set.insert(Element::Integer(n));
                Some((format!("S ∩ [0,{}]", n), set.clone()))
            }))
        }
        _ => {
            let mut prev = 0;
            Box::new(
                (0..)
                    .map(|r| (format!("ball {r}"), model.ball(r).into_iter().collect::<BTreeSet<_>>()))
                    .take_while(move |(_, set)| {
                        // a ball that stops growing is the whole (finite) monoid
                        let go = set.len() <= budget.max_size && (prev == 0 || set.len() > prev);
                        prev = set.len();
                        go
                    }),
            )
        }
    }
}

/// `{0,…,n−1}^rank`.
fn box_set(rank: usize, n: usize) -> BTreeSet<Element> {
    let mut set = BTreeSet::new();
    let mut idx = vec![0u32; rank];
    loop {
        set.insert(Element::Exponents(idx.clone()));
        let mut i = 0;
        while i < rank {
            idx[i] += 1;
            if (idx[i] as usize) < n {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == rank {
            return set;
        }
    }
}

/// Removes elements one at a time while the maximal defect strictly drops.
fn trim(model: &SemigroupModel, c: &[Element], start: Scored) -> Scored {
    let mut cur = start;
    while cur.set.len() > 1 {
        let best = cur
            .set
            .par_iter()
            .map(|x| {
                let mut s = cur.set.clone();
                s.remove(x);
                (max_defect(model, &s, c), x.clone())
            })
            .min()
            .expect("nonempty");
        if best.0 >= cur.score {
            break;
        }
        cur.set.remove(&best.1);
        cur.score = best.0;
        cur.shape = format!("{} trimmed", cur.shape.trim_end_matches(" trimmed"));
    }
    cur
}

/// Looks for a finite `F` with `|pF Δ F|/|F| < ε` for every `p ∈ C`.
///
/// Candidates are tried in increasing size and the first success is
/// returned; on failure the best candidate under the order
/// `(ratio, size, F)` is reported.
pub fn folner_search(
    model: &SemigroupModel,
    c: &[Element],
    epsilon: &BigRational,
    budget: &FolnerBudget,
) -> Result<FolnerOutcome> {
    if !epsilon.is_positive() {
        return Err(LabError::Precondition("epsilon must be positive".into()));
    }
    if budget.radius == 0 || budget.max_size == 0 {
        return Err(LabError::Budget("Følner budget must be positive".into()));
    }
    let ball: BTreeSet<Element> = model.ball(budget.radius).into_iter().collect();
    for p in c {
        model.check(p)?;
        if !ball.contains(p) {
            return Err(LabError::Precondition(format!("{p} lies outside ball({})", budget.radius)));
        }
    }
    let trims = !matches!(
        model.base().0.kind(),
        ModelKind::FreeAbelianMonoid { .. } | ModelKind::Numerical(_)
    );
    let mut best: Option<Scored> = None;
    let mut tried = 0;
    for (shape, set) in candidates(model, budget) {
        tried += 1;
        let mut cand = Scored { score: max_defect(model, &set, c), set, shape };
        if trims && cand.score >= *epsilon && cand.set.len() <= budget.trim_limit {
            cand = trim(model, c, cand);
        }
        if cand.score < *epsilon {
            let f: Vec<Element> = cand.set.into_iter().collect();
            let fs: BTreeSet<Element> = f.iter().cloned().collect();
            let ratios = c.iter().map(|p| (p.clone(), defect(model, &fs, p))).collect();
            return Ok(FolnerOutcome::Certificate(FolnerCertificate {
                f,
                c: c.to_vec(),
                epsilon: epsilon.clone(),
                ratios,
                shape: cand.shape,
            }));
        }
        if best.as_ref().is_none_or(|b| cand.better_than(b)) {
            best = Some(cand);
        }
    }
    let best = best.expect("at least the singleton candidate");
    Ok(FolnerOutcome::Exhausted(FolnerExhausted {
        c: c.to_vec(),
        epsilon: epsilon.clone(),
        best_ratio: best.score,
        best_set: best.set.into_iter().collect(),
        best_shape: best.shape,
        candidates_tried: tried,
        budget: *budget,
    }))
}

/// A finitely supported probability measure on the model with exact
/// rational weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMean {
    weights: BTreeMap<Element, BigRational>,
}

impl DiscreteMean {
    /// Drops zero weights; rejects negative weights and total mass ≠ 1.
    pub fn new(weights: BTreeMap<Element, BigRational>) -> Result<Self> {
        if weights.values().any(|w| w.is_negative()) {
            return Err(LabError::Precondition("negative weight".into()));
        }
        let total: BigRational = weights.values().cloned().sum();
        if !total.is_one() {
            return Err(LabError::Precondition(format!("total mass {total} is not 1")));
        }
        Ok(DiscreteMean { weights: weights.into_iter().filter(|(_, w)| !w.is_zero()).collect() })
    }

    /// `1_F/|F|`.
    pub fn uniform(f: &[Element]) -> Result<Self> {
        let set: BTreeSet<Element> = f.iter().cloned().collect();
        if set.is_empty() {
            return Err(LabError::Precondition("F must be nonempty".into()));
        }
        let w = ratio(1, set.len());
        Ok(DiscreteMean { weights: set.into_iter().map(|x| (x, w.clone())).collect() })
    }

    pub fn point_mass(x: Element) -> Self {
        DiscreteMean { weights: BTreeMap::from([(x, BigRational::one())]) }
    }

    pub fn weights(&self) -> &BTreeMap<Element, BigRational> {
        &self.weights
    }

    pub fn weight(&self, x: &Element) -> BigRational {
        self.weights.get(x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_mass(&self) -> BigRational {
        self.weights.values().cloned().sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.weights
                .iter()
                .map(|(x, w)| json!({ "element": x.to_string(), "weight": rational_json(w) }))
                .collect(),
        )
    }
}

/// The uniform mean on the certificate's set.
pub fn mean_from_folner(cert: &FolnerCertificate) -> Result<DiscreteMean> {
    DiscreteMean::uniform(&cert.f)
}

fn check_support(model: &SemigroupModel, mu: &DiscreteMean, p: &Element) -> Result<()> {
    model.check(p)?;
    mu.weights.keys().try_for_each(|x| model.check(x))
}

/// `‖μ − μ(p⊔)‖₁` with `μ(p⊔)(q) = μ(pq)`.
pub fn mean_deviation(model: &SemigroupModel, mu: &DiscreteMean, p: &Element) -> Result<BigRational> {
    check_support(model, mu, p)?;
    let mut support: BTreeSet<Element> = mu.weights.keys().cloned().collect();
    support.extend(mu.weights.keys().filter_map(|s| model.ldiv_unchecked(p, s)));
    Ok(support
        .iter()
        .map(|q| (mu.weight(q) - mu.weight(&model.mul_unchecked(p, q))).abs())
        .sum())
}

/// `‖μ(p⁻¹⊔) − μ‖₁` where `μ(p⁻¹⊔)(q) = μ(p⁻¹q)` on `pP` and `0` off it.
pub fn pushforward_deviation(model: &SemigroupModel, mu: &DiscreteMean, p: &Element) -> Result<BigRational> {
    check_support(model, mu, p)?;
    let shifted: HashMap<Element, BigRational> =
        mu.weights.iter().map(|(x, w)| (model.mul_unchecked(p, x), w.clone())).collect();
    let mut support: BTreeSet<Element> = mu.weights.keys().cloned().collect();
    support.extend(shifted.keys().cloned());
    Ok(support
        .iter()
        .map(|q| (shifted.get(q).cloned().unwrap_or_else(BigRational::zero) - mu.weight(q)).abs())
        .sum())
}

/// `Σ_{q ∉ pP} μ(q)`, the gap between the two deviations:
/// `‖μ(p⁻¹⊔) − μ‖ = ‖μ − μ(p⊔)‖ + Σ_{q∉pP} μ(q)`.
pub fn boundary_mass(model: &SemigroupModel, mu: &DiscreteMean, p: &Element) -> Result<BigRational> {
    check_support(model, mu, p)?;
    Ok(mu
        .weights
        .iter()
        .filter(|(q, _)| model.ldiv_unchecked(p, q).is_none())
        .map(|(_, w)| w.clone())
        .sum())
}

/// Left-reversibility verdict, which for cancellative `P` embedding in a
/// group decides the existence of a non-zero character on the semigroup
/// C*-algebra.
pub fn character_exists_proxy(model: &SemigroupModel, radius: usize) -> Result<bool> {
    let c = model.check_cancellativity_window(radius);
    if !(c.left_ok && c.right_ok) {
        return Err(LabError::Precondition("model is not cancellative on the window".into()));
    }
    Ok(check_left_reversible(model, radius)?.holds_on_window)
}

/// Ore–Dubreil tests: cancellative and right reversible gives an embedding
/// with `G = P⁻¹P`; cancellative and left reversible gives `G = PP⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreReport {
    pub cancellativity: CancellativityReport,
    pub left: ReversibilityReport,
    pub right: ReversibilityReport,
}

impl OreReport {
    pub fn cancellative(&self) -> bool {
        self.cancellativity.left_ok && self.cancellativity.right_ok
    }

    /// Embeds with `G = P⁻¹P` (on the window).
    pub fn left_ore(&self) -> bool {
        self.cancellative() && self.right.holds_on_window
    }

    /// Embeds with `G = PP⁻¹` (on the window).
    pub fn right_ore(&self) -> bool {
        self.cancellative() && self.left.holds_on_window
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radius": self.left.radius,
            "cancellative": self.cancellative(),
            "left_reversible": self.left.holds_on_window,
            "right_reversible": self.right.holds_on_window,
            "left_ore": self.left_ore(),
            "right_ore": self.right_ore(),
        })
    }
}

pub fn ore_embeddability(model: &SemigroupModel, radius: usize) -> Result<OreReport> {
    Ok(OreReport {
        cancellativity: model.check_cancellativity_window(radius),
        left: check_left_reversible(model, radius)?,
        right: check_right_reversible(model, radius)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditParams {
    pub radius: usize,
    pub epsilon: BigRational,
    pub budget: FolnerBudget,
}

impl Default for AuditParams {
    fn default() -> Self {
        AuditParams { radius: 3, epsilon: ratio(1, 4), budget: FolnerBudget::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditStatus {
    Consistent,
    Contradiction,
    Skipped,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditStatus::Consistent => "consistent",
            AuditStatus::Contradiction => "CONTRADICTION",
            AuditStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: &'static str,
    pub status: AuditStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub model: String,
    pub params: AuditParams,
    pub folner: FolnerOutcome,
    pub ore: OreReport,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.status != AuditStatus::Contradiction)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model,
            "radius": self.params.radius,
            "epsilon": rational_json(&self.params.epsilon),
            "result": if self.consistent() { "CONSISTENT" } else { "CONTRADICTION" },
            "folner": self.folner.to_json(),
            "left_reversible": self.ore.left.to_json(),
            "right_reversible": self.ore.right.to_json(),
            "ore": self.ore.to_json(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.to_string(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn layer_of(model: &SemigroupModel, radius: usize) -> HashMap<Element, usize> {
    let mut out = HashMap::new();
    for r in 0..=radius {
        for x in model.ball(r) {
            out.entry(x).or_insert(r);
        }
    }
    out
}

/// Runs every proxy on one model and flags result patterns that the
/// implication graph `1) ⇔ 2) ⇔ 3) ⇒ 4) ⇒ 5)`, `5) ⇒` left reversible
/// rules out. A contradiction signals a bug in this crate.
pub fn implication_audit(model: &SemigroupModel, params: &AuditParams) -> Result<AuditReport> {
    let c = model.generators().to_vec();
    let folner = folner_search(model, &c, &params.epsilon, &params.budget)?;
    let ore = ore_embeddability(model, params.radius)?;
    let mut checks = Vec::new();
    let verdict = |name, ok: bool, detail: String| {
        let status = if ok { AuditStatus::Consistent } else { AuditStatus::Contradiction };
        AuditCheck { name, status, detail }
    };
    let skip = |name, detail: &str| AuditCheck { name, status: AuditStatus::Skipped, detail: detail.into() };

    match folner.certificate() {
        Some(cert) => {
            checks.push(verdict("certificate", cert.verify(model)?, format!("|F| = {}, max ratio {}", cert.f.len(), cert.max_ratio())));
            let mu = mean_from_folner(cert)?;
            let mut means_ok = mu.total_mass().is_one();
            let mut vs_ok = true;
            for (p, r) in &cert.ratios {
                let dev = mean_deviation(model, &mu, p)?;
                let push_dev = pushforward_deviation(model, &mu, p)?;
                let bnd = boundary_mass(model, &mu, p)?;
                means_ok &= dev <= *r && push_dev == &dev + &bnd && push_dev == *r;
                vs_ok &= vector_state_defect(model, &cert.f, p)? == *r;
            }
            checks.push(verdict("approximate-mean", means_ok, "‖μ − μ(p⊔)‖ ≤ ‖μ(p⁻¹⊔) − μ‖ = |pF Δ F|/|F|".into()));
            checks.push(verdict("vector-state", vs_ok, "‖V_pξ − ξ‖² = |pF Δ F|/|F| < ε".into()));
            // Disjoint pP, qP force |pF Δ F| + |qF Δ F| ≥ 2|F|, while the
            // defect of a product of k generators is at most kε.
            match &ore.left.witness {
                Some((p, q)) => {
                    let layers = layer_of(model, params.radius);
                    let k = layers[p] + layers[q];
                    let bound = &params.epsilon * BigRational::from_integer(BigInt::from(k));
                    checks.push(verdict(
                        "folner-vs-left-reversible",
                        bound >= ratio(2, 1),
                        format!("witness ({p}, {q}) has total length {k}; certificate bound {bound}"),
                    ));
                }
                None => checks.push(verdict("folner-vs-left-reversible", true, "left reversible on the window".into())),
            }
        }
        None => {
            checks.push(skip("certificate", "no certificate within budget"));
            checks.push(skip("approximate-mean", "no certificate"));
            checks.push(skip("vector-state", "no certificate"));
            checks.push(skip("folner-vs-left-reversible", "no certificate"));
        }
    }
    if model.is_commutative() {
        checks.push(verdict(
            "commutative-reversible",
            ore.left.holds_on_window && ore.right.holds_on_window,
            "commutative monoids are reversible on both sides".into(),
        ));
    } else {
        checks.push(skip("commutative-reversible", "not commutative"));
    }
    if ore.cancellative() {
        let chi = character_exists_proxy(model, params.radius)?;
        checks.push(verdict("character", chi == ore.left.holds_on_window, format!("non-zero character: {chi}")));
    } else {
        checks.push(skip("character", "not cancellative on the window"));
    }
    Ok(AuditReport { model: model.to_string(), params: params.clone(), folner, ore, checks })
}
