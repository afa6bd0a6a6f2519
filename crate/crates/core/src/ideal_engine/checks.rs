use serde_json::{json, Value};

use super::{family::ideal_parameters, ConstructibleFamily, IdealEngine, RightIdeal};
use crate::error::{LabError, Result};
use crate::ring_ideals::strong_approx_witness;
use crate::semigroup::{Element, SemigroupModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceVerdict {
    Pass,
    /// `x` equals the union of `covers`, each a proper subideal of `x`.
    CounterExample { x: RightIdeal, covers: Vec<RightIdeal> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub verdict: IndependenceVerdict,
    pub ideals_checked: usize,
    /// A pass on an incomplete family is evidence about the enumerated
    /// ideals only.
    pub bounded: bool,
    pub window_radius: usize,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.verdict == IndependenceVerdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            IndependenceVerdict::Pass => json!({ "result": "PASS" }),
            IndependenceVerdict::CounterExample { x, covers } => json!({
                "result": "COUNTEREXAMPLE",
                "ideal": x.to_string(),
                "ideal_parameters": ideal_parameters(x),
                "covers": covers.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
        };
        json!({
            "check": "independence",
            "verdict": verdict,
            "ideals_checked": self.ideals_checked,
            "bounded_evidence": self.bounded,
            "window_radius": self.window_radius,
        })
    }
}

/// Exact test whether `x` is the union of `ys`, all of which lie inside `x`.
fn is_covered(engine: &IdealEngine, x: &RightIdeal, ys: &[RightIdeal]) -> Result<bool> {
    if ys.contains(x) {
        return Ok(true);
    }
    match x {
        RightIdeal::Principal(p) => Ok(ys.iter().any(|y| engine.member(y, p))),
        RightIdeal::Coset { ideal, .. } => {
            let subs: Vec<_> = ys
                .iter()
                .map(|y| match y {
                    RightIdeal::Coset { ideal, .. } => *ideal,
                    _ => unreachable!("same form family"),
                })
                .collect();
            // a point (b, w) with w outside every smaller ring ideal
            Ok(strong_approx_witness(ideal, &subs)?.is_none())
        }
        RightIdeal::Tail { .. } => Ok(engine.make_union(ys.to_vec()) == *x),
        _ => Ok(false),
    }
}

/// Searches the family for an ideal that is a finite union of properly
/// smaller ideals of the family.
///
/// Cover decisions use the exact canonical forms; a counterexample is then
/// cross-checked by membership on `ball(window_radius)`. Union forms are
/// not tested as candidates.
pub fn check_independence(
    family: &ConstructibleFamily,
    window_radius: usize,
) -> Result<IndependenceReport> {
    let engine = family.engine();
    let atoms: Vec<&RightIdeal> = family
        .ideals()
        .filter(|x| !matches!(x, RightIdeal::Empty | RightIdeal::Union(_)))
        .collect();
    let mut checked = 0;
    for x in &atoms {
        checked += 1;
        let subs: Vec<RightIdeal> = atoms
            .iter()
            .filter(|y| *y != x && engine.atom_subset(y, x))
            .map(|y| (*y).clone())
            .collect();
        if subs.is_empty() || !is_covered(engine, x, &subs)? {
            continue;
        }
        // drop the largest members first so the cover keeps the smallest
        let mut cover = subs;
        let mut i = 0;
        while i < cover.len() {
            let mut trial = cover.clone();
            trial.remove(i);
            if !trial.is_empty() && is_covered(engine, x, &trial)? {
                cover = trial;
            } else {
                i += 1;
            }
        }
        for e in family.model().ball(window_radius) {
            let lhs = engine.member(x, &e);
            let rhs = cover.iter().any(|y| engine.member(y, &e));
            if lhs != rhs {
                return Err(LabError::Verification(format!(
                    "cover of {x} disagrees with membership at {e}"
                )));
            }
        }
        return Ok(IndependenceReport {
            verdict: IndependenceVerdict::CounterExample { x: (*x).clone(), covers: cover },
            ideals_checked: checked,
            bounded: !family.is_complete(),
            window_radius,
        });
    }
    Ok(IndependenceReport {
        verdict: IndependenceVerdict::Pass,
        ideals_checked: checked,
        bounded: !family.is_complete(),
        window_radius,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiLatticeVerdict {
    Pass,
    /// A nonempty constructible ideal that is not principal.
    Witness(RightIdeal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiLatticeReport {
    pub verdict: QuasiLatticeVerdict,
    pub ideals_checked: usize,
    pub bounded: bool,
}

impl QuasiLatticeReport {
    pub fn passed(&self) -> bool {
        self.verdict == QuasiLatticeVerdict::Pass
    }

    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            QuasiLatticeVerdict::Pass => json!({ "result": "PASS" }),
            QuasiLatticeVerdict::Witness(x) => json!({
                "result": "WITNESS",
                "ideal": x.to_string(),
                "ideal_parameters": ideal_parameters(x),
            }),
        };
        json!({
            "check": "quasi-lattice",
            "verdict": verdict,
            "ideals_checked": self.ideals_checked,
            "bounded_evidence": self.bounded,
        })
    }
}

/// Checks that every nonempty ideal of the family is principal. Each
/// claimed generator `g` is cross-checked against membership on
/// `ball(window_radius)`.
pub fn check_quasi_lattice(
    family: &ConstructibleFamily,
    window_radius: usize,
) -> Result<QuasiLatticeReport> {
    let engine = family.engine();
    let model = family.model();
    let window = model.ball(window_radius);
    let mut checked = 0;
    for x in family.ideals() {
        if matches!(x, RightIdeal::Empty | RightIdeal::Union(_)) {
            continue;
        }
        checked += 1;
        match engine.principal_generator(x)? {
            None => {
                return Ok(QuasiLatticeReport {
                    verdict: QuasiLatticeVerdict::Witness(x.clone()),
                    ideals_checked: checked,
                    bounded: !family.is_complete(),
                })
            }
            Some(g) => {
                for e in &window {
                    if engine.member(x, e) != model.ldiv_unchecked(&g, e).is_some() {
                        return Err(LabError::Verification(format!(
                            "{x} differs from {g}P at {e}"
                        )));
                    }
                }
            }
        }
    }
    Ok(QuasiLatticeReport {
        verdict: QuasiLatticeVerdict::Pass,
        ideals_checked: checked,
        bounded: !family.is_complete(),
    })
}

/// For `F′ ⊆ F`, returns `X ⊇ Y` with
/// `(⋂F′) ∖ ⋃(F∖F′) = X ∖ Y`: `X = ⋂F′` and `Y` the union of the
/// `X ∩ Z` over `Z ∈ F∖F′`. The identity is checked on
/// `ball(window_radius)`.
pub fn boolean_difference_form(
    family: &ConstructibleFamily,
    f: &[RightIdeal],
    f_prime: &[RightIdeal],
    window_radius: usize,
) -> Result<(RightIdeal, RightIdeal)> {
    if !family.is_union_closed() {
        return Err(LabError::Precondition("family must be union-closed".into()));
    }
    if f_prime.is_empty() {
        return Err(LabError::Precondition("F′ must be nonempty".into()));
    }
    let engine = family.engine();
    let f: Vec<RightIdeal> = f.iter().map(|z| engine.normalize(z)).collect::<Result<_>>()?;
    let fp: Vec<RightIdeal> = f_prime.iter().map(|z| engine.normalize(z)).collect::<Result<_>>()?;
    for z in f.iter() {
        if !family.contains(z) {
            return Err(LabError::Precondition(format!("{z} is not in the family")));
        }
    }
    if let Some(z) = fp.iter().find(|z| !f.contains(z)) {
        return Err(LabError::Precondition(format!("{z} is in F′ but not in F")));
    }
    let mut x = fp[0].clone();
    for z in &fp[1..] {
        x = engine.meet(&x, z);
    }
    let rest: Vec<&RightIdeal> = f.iter().filter(|z| !fp.contains(z)).collect();
    let mut y = RightIdeal::Empty;
    for z in &rest {
        y = engine.make_union(vec![y, engine.meet(&x, z)]);
    }
    if !engine.is_subset(&y, &x)? {
        return Err(LabError::Verification(format!("{y} is not inside {x}")));
    }
    for e in family.model().ball(window_radius) {
        let lhs = fp.iter().all(|z| engine.member(z, &e)) && !rest.iter().any(|z| engine.member(z, &e));
        let rhs = engine.member(&x, &e) && !engine.member(&y, &e);
        if lhs != rhs {
            return Err(LabError::Verification(format!("difference form fails at {e}")));
        }
    }
    Ok((x, y))
}

#[derive(Debug, Clone)]
enum Step {
    Mul(Element),
    Pre(Element),
}

/// Checks `q₁⁻¹p₁⋯q_m⁻¹p_m p_m⁻¹q_m⋯p₁⁻¹q₁ X = (q₁⁻¹p₁⋯q_m⁻¹p_m P) ∩ X`
/// for `word = [(q₁,p₁), …, (q_m,p_m)]`.
///
/// Both sides are evaluated pointwise on `ball(window_radius)` by folding
/// multiplications and divisions, and also compared as canonical forms.
pub fn verify_qpint(
    model: &SemigroupModel,
    x: &RightIdeal,
    word: &[(Element, Element)],
    window_radius: usize,
) -> Result<bool> {
    let engine = IdealEngine::new(model)?;
    for (q, p) in word {
        model.check(q)?;
        model.check(p)?;
    }
    let x = engine.normalize(x)?;
    let mut steps = Vec::with_capacity(4 * word.len());
    for (q, p) in word {
        steps.push(Step::Pre(q.clone()));
        steps.push(Step::Mul(p.clone()));
    }
    for (q, p) in word.iter().rev() {
        steps.push(Step::Pre(p.clone()));
        steps.push(Step::Mul(q.clone()));
    }
    let word_ideal = RightIdeal::Word(word.to_vec());
    for e in model.ball(window_radius) {
        let mut y = Some(e.clone());
        for s in &steps {
            y = y.and_then(|y| match s {
                Step::Pre(q) => Some(model.mul_unchecked(q, &y)),
                Step::Mul(p) => model.ldiv_unchecked(p, &y),
            });
        }
        let lhs = y.is_some_and(|y| engine.member(&x, &y));
        let rhs = engine.member(&word_ideal, &e) && engine.member(&x, &e);
        if lhs != rhs {
            return Ok(false);
        }
    }
    let mut lhs = x.clone();
    for s in steps.iter().rev() {
        lhs = match s {
            Step::Mul(p) => engine.lm(p, &lhs),
            Step::Pre(q) => engine.pre(q, &lhs),
        };
    }
    let rhs = engine.intersect(&word_ideal, &x)?;
    Ok(lhs == rhs)
}
