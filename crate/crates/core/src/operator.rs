//! The left regular representation `V_p ε_x = ε_{px}` truncated to a
//! finite window `W = ball(r)` of `ℓ²(P)`.
//!
//! Matrices are exact integer arrays. Truncation breaks the operator
//! identities near the edge of the window, so every comparison is made on
//! interior columns: basis vectors whose whole trajectory under the
//! operators involved stays inside `W`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use ndarray::Array2;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{LabError, Result};
use crate::group;
use crate::ideal_engine::{word_contains, ConstructibleFamily, IdealEngine, RightIdeal};
use crate::semigroup::{Element, SemigroupModel};

pub type OperatorMatrix = Array2<i64>;

/// A word `[(p₁,q₁), …, (p_m,q_m)]` standing for `V_{p₁}*V_{q₁}⋯V_{p_m}*V_{q_m}`.
pub type OperatorWord = Vec<(Element, Element)>;

/// One factor of an operator product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    V(Element),
    VStar(Element),
    E(RightIdeal),
}

/// A product matrix together with the columns on which it agrees with the
/// operator on `ℓ²(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedMatrix {
    pub matrix: OperatorMatrix,
    pub interior: Vec<bool>,
}

impl MaskedMatrix {
    pub fn interior_len(&self) -> usize {
        self.interior.iter().filter(|b| **b).count()
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedRepresentation {
    model: SemigroupModel,
    engine: Option<IdealEngine>,
    radius: usize,
    window: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl TruncatedRepresentation {
    pub fn build(model: &SemigroupModel, radius: usize) -> Result<Self> {
        if radius == 0 {
            return Err(LabError::Budget("radius must be at least 1".into()));
        }
        let window = model.ball(radius);
        let index = window.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        Ok(TruncatedRepresentation {
            model: model.clone(),
            engine: IdealEngine::new(model).ok(),
            radius,
            window,
            index,
        })
    }

    pub fn model(&self) -> &SemigroupModel {
        &self.model
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn window(&self) -> &[Element] {
        &self.window
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Window points whose images under any `≤ k` steps, each a
    /// multiplication by or a division by one of `tested`, stay in `W`.
    pub fn interior(&self, k: usize, tested: &[Element]) -> Vec<bool> {
        let n = self.len();
        let mut cur = vec![true; n];
        for _ in 0..k {
            let prev = cur.clone();
            let inside = |y: &Element| self.index_of(y).is_some_and(|j| prev[j]);
            for (i, x) in self.window.iter().enumerate() {
                if !prev[i] {
                    continue;
                }
                cur[i] = tested.iter().all(|t| {
                    inside(&self.model.mul_unchecked(t, x))
                        && self.model.ldiv_unchecked(t, x).is_none_or(|y| inside(&y))
                });
            }
        }
        cur
    }

    fn membership(&self, x: &RightIdeal, e: &Element) -> Result<bool> {
        match (x, &self.engine) {
            (RightIdeal::Word(pairs), _) => Ok(word_contains(&self.model, pairs, e)),
            (_, Some(engine)) => engine.contains(x, e),
            (_, None) => Err(LabError::Unsupported(format!(
                "ideal forms other than words for {}",
                self.model
            ))),
        }
    }

    fn check_ideal(&self, x: &RightIdeal) -> Result<RightIdeal> {
        match x {
            RightIdeal::Word(pairs) => {
                for (q, p) in pairs {
                    self.model.check(q)?;
                    self.model.check(p)?;
                }
                Ok(x.clone())
            }
            _ => match &self.engine {
                Some(engine) => engine.normalize(x),
                None => Err(LabError::Unsupported(format!(
                    "ideal forms other than words for {}",
                    self.model
                ))),
            },
        }
    }

    /// `V_p` on the window. Columns `x` with `px ∉ W` are zero.
    pub fn matrix_v(&self, p: &Element) -> Result<OperatorMatrix> {
        self.model.check(p)?;
        let n = self.len();
        let mut m = Array2::zeros((n, n));
        for (j, x) in self.window.iter().enumerate() {
            if let Some(i) = self.index_of(&self.model.mul_unchecked(p, x)) {
                m[[i, j]] = 1;
            }
        }
        Ok(m)
    }

    /// Columns of `V_p` that leave the window.
    pub fn boundary_columns(&self, p: &Element) -> Result<Vec<usize>> {
        self.model.check(p)?;
        Ok((0..self.len())
            .filter(|j| self.index_of(&self.model.mul_unchecked(p, &self.window[*j])).is_none())
            .collect())
    }

    pub fn matrix_v_star(&self, p: &Element) -> Result<OperatorMatrix> {
        Ok(self.matrix_v(p)?.reversed_axes())
    }

    /// The diagonal projection `E_X`.
    pub fn matrix_e(&self, x: &RightIdeal) -> Result<OperatorMatrix> {
        let x = self.check_ideal(x)?;
        let n = self.len();
        let mut m = Array2::zeros((n, n));
        for (i, e) in self.window.iter().enumerate() {
            if self.membership(&x, e)? {
                m[[i, i]] = 1;
            }
        }
        Ok(m)
    }

    fn op_matrix(&self, op: &Op) -> Result<OperatorMatrix> {
        match op {
            Op::V(p) => self.matrix_v(p),
            Op::VStar(p) => self.matrix_v_star(p),
            Op::E(x) => self.matrix_e(x),
        }
    }

    /// Product `op₁·op₂⋯op_k` of the truncated matrices, with the columns
    /// whose trajectory (applying `op_k` first) never leaves the window.
    pub fn product(&self, ops: &[Op]) -> Result<MaskedMatrix> {
        let n = self.len();
        let mut matrix = Array2::eye(n);
        let mut checked: Vec<Op> = Vec::with_capacity(ops.len());
        for op in ops {
            let op = match op {
                Op::E(x) => Op::E(self.check_ideal(x)?),
                o => o.clone(),
            };
            matrix = matmul(&matrix, &self.op_matrix(&op)?);
            checked.push(op);
        }
        let mut interior = vec![true; n];
        for (j, x) in self.window.iter().enumerate() {
            let mut y = x.clone();
            for op in checked.iter().rev() {
                match op {
                    Op::V(p) => {
                        y = self.model.mul_unchecked(p, &y);
                        if self.index_of(&y).is_none() {
                            interior[j] = false;
                            break;
                        }
                    }
                    Op::VStar(p) => match self.model.ldiv_unchecked(p, &y) {
                        None => break,
                        Some(z) => {
                            if self.index_of(&z).is_none() {
                                interior[j] = false;
                                break;
                            }
                            y = z;
                        }
                    },
                    Op::E(x) => {
                        if !self.membership(x, &y)? {
                            break;
                        }
                    }
                }
            }
        }
        Ok(MaskedMatrix { matrix, interior })
    }

    /// `V_{p₁}*V_{q₁}⋯V_{p_m}*V_{q_m}` with non-interior columns zeroed.
    ///
    /// Fails with [`LabError::WordTooLong`] when no column of the window
    /// stays inside it along the word.
    pub fn evaluate_word(&self, word: &[(Element, Element)]) -> Result<MaskedMatrix> {
        let ops: Vec<Op> =
            word.iter().flat_map(|(p, q)| [Op::VStar(p.clone()), Op::V(q.clone())]).collect();
        let mut m = self.product(&ops)?;
        if m.interior_len() == 0 {
            return Err(LabError::WordTooLong { len: word.len(), needed: 2 * word.len() });
        }
        for (j, inside) in m.interior.iter().enumerate() {
            if !inside {
                m.matrix.column_mut(j).fill(0);
            }
        }
        Ok(m)
    }

    /// Dense text dump: a header line with the window ordering, then the
    /// rows.
    pub fn dump(&self, m: &OperatorMatrix) -> String {
        let mut out = String::from("# window:");
        for x in &self.window {
            write!(out, " {x}").expect("string write");
        }
        out.push('\n');
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Integer matrix product that skips zero entries of the left factor.
fn matmul(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    let (n, k) = a.dim();
    let mut out = Array2::zeros((n, b.ncols()));
    for i in 0..n {
        for l in 0..k {
            let v = a[[i, l]];
            if v != 0 {
                let row = b.row(l);
                let mut dst = out.row_mut(i);
                dst.zip_mut_with(&row, |d, s| *d += v * s);
            }
        }
    }
    out
}

/// The diagonal part of `T`.
pub fn conditional_expectation(t: &OperatorMatrix) -> OperatorMatrix {
    let n = t.nrows();
    let mut out = Array2::zeros((n, n));
    for i in 0..n {
        out[[i, i]] = t[[i, i]];
    }
    out
}

/// The ideal `q_m⁻¹p_m⋯q₁⁻¹p₁P` attached to a word.
pub fn word_ideal(word: &[(Element, Element)]) -> RightIdeal {
    RightIdeal::Word(word.iter().rev().map(|(p, q)| (q.clone(), p.clone())).collect())
}

fn agree_on(a: &OperatorMatrix, b: &OperatorMatrix, cols: &[bool]) -> Option<usize> {
    (0..a.ncols()).find(|j| cols[*j] && a.column(*j) != b.column(*j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePlan {
    /// Every element of this ball is paired with every family ideal.
    pub exhaustive_radius: usize,
    /// Additional seeded random samples.
    pub random_samples: usize,
    /// Ball from which random elements are drawn.
    pub random_radius: usize,
    pub seed: u64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan { exhaustive_radius: 2, random_samples: 50, random_radius: 3, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: &'static str,
    pub elements: Vec<String>,
    pub ideals: Vec<String>,
    pub column: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationTally {
    pub checked: usize,
    pub failed: usize,
    /// Columns actually compared, summed over all checks.
    pub columns: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub tallies: BTreeMap<&'static str, RelationTally>,
    pub failures: Vec<RelationFailure>,
    pub plan: SamplePlan,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.tallies.values().all(|t| t.failed == 0 && t.checked > 0)
    }

    pub fn to_json(&self) -> Value {
        let tallies: serde_json::Map<String, Value> = self
            .tallies
            .iter()
            .map(|(k, t)| {
                (k.to_string(), json!({ "checked": t.checked, "failed": t.failed, "columns": t.columns }))
            })
            .collect();
        json!({
            "relations": tallies,
            "failures": self.failures.iter().take(20).map(|f| json!({
                "relation": f.relation,
                "elements": f.elements,
                "ideals": f.ideals,
                "column": f.column,
            })).collect::<Vec<_>>(),
            "seed": self.plan.seed,
            "exhaustive_radius": self.plan.exhaustive_radius,
            "random_samples": self.plan.random_samples,
            "all_passed": self.all_passed(),
        })
    }
}

pub const RELATIONS: [&str; 8] =
    ["I.(i)", "I.(ii)", "II.(i)", "II.(ii)", "II.(iii)", "II∪.(iv)", "v*_v", "isometry"];

enum Task {
    Mult(Element, Element),
    Conj(Element, RightIdeal),
    Meet(RightIdeal, RightIdeal),
    Isometry(Element),
    Unit,
    Zero,
}

/// Checks relations I, II, II∪ and `V_p*E_XV_p = E_{p⁻¹X}` entrywise on
/// interior columns. Right-hand ideals (`pX`, `p⁻¹X`, `X∩Y`, `X∪Y`) come
/// from the ideal engine, so the suite compares the two modules.
pub fn verify_relations(
    rep: &TruncatedRepresentation,
    family: &ConstructibleFamily,
    plan: &SamplePlan,
) -> Result<RelationReport> {
    if family.model() != rep.model() {
        return Err(LabError::ModelMismatch);
    }
    let engine = family.engine();
    let ideals: Vec<RightIdeal> = family.ideals().cloned().collect();
    let elems = rep.model.ball(plan.exhaustive_radius);
    let mut tasks = vec![Task::Unit, Task::Zero];
    for p in &elems {
        tasks.push(Task::Isometry(p.clone()));
        for q in &elems {
            tasks.push(Task::Mult(p.clone(), q.clone()));
        }
        for x in &ideals {
            tasks.push(Task::Conj(p.clone(), x.clone()));
        }
    }
    for (i, x) in ideals.iter().enumerate() {
        for y in &ideals[i..] {
            tasks.push(Task::Meet(x.clone(), y.clone()));
        }
    }
    let pool = rep.model.ball(plan.random_radius);
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random_samples {
        let p = pool.choose(&mut rng).expect("ball contains the unit").clone();
        let q = pool.choose(&mut rng).expect("ball contains the unit").clone();
        let x = ideals.choose(&mut rng).expect("family has P").clone();
        let y = ideals.choose(&mut rng).expect("family has P").clone();
        tasks.push(Task::Isometry(p.clone()));
        tasks.push(Task::Mult(p.clone(), q));
        tasks.push(Task::Conj(p, x.clone()));
        tasks.push(Task::Meet(x, y));
    }

    type Outcome = Vec<(&'static str, usize, Option<RelationFailure>)>;
    let run = |task: &Task| -> Result<Outcome> {
        let n = rep.len();
        let all = vec![true; n];
        let mut out: Outcome = Vec::new();
        let mut cmp = |name: &'static str,
                       lhs: &OperatorMatrix,
                       rhs: &OperatorMatrix,
                       cols: &[bool],
                       elements: Vec<String>,
                       ideals: Vec<String>| {
            let used = cols.iter().filter(|b| **b).count();
            let fail = agree_on(lhs, rhs, cols).map(|j| RelationFailure {
                relation: name,
                elements,
                ideals,
                column: rep.window[j].to_string(),
            });
            out.push((name, used, fail));
        };
        match task {
            Task::Unit => {
                let e = rep.matrix_e(&engine.full())?;
                cmp("II.(i)", &e, &Array2::eye(n), &all, vec![], vec!["P".into()]);
            }
            Task::Zero => {
                let e = rep.matrix_e(&RightIdeal::Empty)?;
                cmp("II.(ii)", &e, &Array2::zeros((n, n)), &all, vec![], vec!["∅".into()]);
            }
            Task::Isometry(p) => {
                let m = rep.product(&[Op::VStar(p.clone()), Op::V(p.clone())])?;
                cmp("isometry", &m.matrix, &Array2::eye(n), &m.interior, vec![p.to_string()], vec![]);
            }
            Task::Mult(p, q) => {
                let pq = rep.model.mul_unchecked(p, q);
                let lhs = rep.product(&[Op::V(pq)])?;
                let rhs = rep.product(&[Op::V(p.clone()), Op::V(q.clone())])?;
                let cols: Vec<bool> =
                    lhs.interior.iter().zip(&rhs.interior).map(|(a, b)| *a && *b).collect();
                cmp("I.(i)", &lhs.matrix, &rhs.matrix, &cols, vec![p.to_string(), q.to_string()], vec![]);
            }
            Task::Conj(p, x) => {
                let lhs = rep.product(&[Op::V(p.clone()), Op::E(x.clone()), Op::VStar(p.clone())])?;
                let rhs = rep.matrix_e(&engine.left_mult(p, x)?)?;
                cmp("I.(ii)", &lhs.matrix, &rhs, &lhs.interior, vec![p.to_string()], vec![x.to_string()]);
                let lhs = rep.product(&[Op::VStar(p.clone()), Op::E(x.clone()), Op::V(p.clone())])?;
                let rhs = rep.matrix_e(&engine.preimage(p, x)?)?;
                cmp("v*_v", &lhs.matrix, &rhs, &lhs.interior, vec![p.to_string()], vec![x.to_string()]);
            }
            Task::Meet(x, y) => {
                let ex = rep.matrix_e(x)?;
                let ey = rep.matrix_e(y)?;
                let exy = rep.matrix_e(&engine.intersect(x, y)?)?;
                let names = vec![x.to_string(), y.to_string()];
                cmp("II.(iii)", &exy, &matmul(&ex, &ey), &all, vec![], names.clone());
                let eu = rep.matrix_e(&engine.union(x, y)?)?;
                cmp("II∪.(iv)", &eu, &(&ex + &ey - &exy), &all, vec![], names);
            }
        }
        Ok(out)
    };
    let outcomes: Vec<Outcome> = tasks.par_iter().map(run).collect::<Result<_>>()?;
    let mut tallies: BTreeMap<&'static str, RelationTally> =
        RELATIONS.iter().map(|r| (*r, RelationTally::default())).collect();
    let mut failures = Vec::new();
    for (name, cols, fail) in outcomes.into_iter().flatten() {
        let t = tallies.get_mut(name).expect("known relation");
        t.checked += 1;
        t.columns += cols;
        if let Some(f) = fail {
            t.failed += 1;
            failures.push(f);
        }
    }
    Ok(RelationReport { tallies, failures, plan: *plan })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IIIGCheck {
    /// Whether `p₁⁻¹q₁⋯p_m⁻¹q_m = e` in the group.
    pub identity: bool,
    pub holds: bool,
    pub interior_columns: usize,
}

/// If the word multiplies to `e` in the enveloping group, checks that it
/// evaluates to `E_{q_m⁻¹p_m⋯q₁⁻¹p₁P}` on the interior; otherwise checks
/// that its diagonal vanishes there.
pub fn verify_iiig(rep: &TruncatedRepresentation, word: &[(Element, Element)]) -> Result<IIIGCheck> {
    for (p, q) in word {
        rep.model.check(p)?;
        rep.model.check(q)?;
    }
    let identity = group::word_product(&rep.model, word).is_identity();
    let m = rep.evaluate_word(word)?;
    let holds = if identity {
        let ideal = match &rep.engine {
            Some(engine) => engine.normalize(&word_ideal(word))?,
            None => word_ideal(word),
        };
        let e = rep.matrix_e(&ideal)?;
        agree_on(&m.matrix, &e, &m.interior).is_none()
    } else {
        (0..rep.len()).all(|j| !m.interior[j] || m.matrix[[j, j]] == 0)
    };
    Ok(IIIGCheck { identity, holds, interior_columns: m.interior_len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FceReport {
    pub words: usize,
    /// Words whose diagonal vanishes on the interior.
    pub zero: usize,
    /// Words whose diagonal is a nonzero `E_X` on the interior.
    pub projection: usize,
    /// Words with no interior column in the window.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl FceReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each word, the diagonal part of its operator must be zero or the
/// projection onto the word's ideal on interior columns; for words with
/// group product `e` the operator must already be diagonal. Words with no
/// interior column are counted as skipped.
pub fn verify_fce(rep: &TruncatedRepresentation, words: &[OperatorWord]) -> Result<FceReport> {
    let results: Vec<Option<(bool, bool, Option<String>)>> = words
        .par_iter()
        .map(|w| -> Result<Option<(bool, bool, Option<String>)>> {
            let m = match rep.evaluate_word(w) {
                Err(LabError::WordTooLong { .. }) => return Ok(None),
                r => r?,
            };
            let d = conditional_expectation(&m.matrix);
            let zero = (0..rep.len()).all(|j| !m.interior[j] || d[[j, j]] == 0);
            let ideal = match &rep.engine {
                Some(engine) => engine.normalize(&word_ideal(w))?,
                None => word_ideal(w),
            };
            let e = rep.matrix_e(&ideal)?;
            let proj = agree_on(&d, &e, &m.interior).is_none();
            let mut fail = None;
            if !zero && !proj {
                fail = Some(format!("{} has diagonal outside the projections", describe(w)));
            }
            if group::word_product(&rep.model, w).is_identity()
                && agree_on(&d, &m.matrix, &m.interior).is_some()
            {
                fail = Some(format!("{} has product e but is not diagonal", describe(w)));
            }
            Ok(Some((zero, proj && !zero, fail)))
        })
        .collect::<Result<_>>()?;
    let mut report = FceReport { words: words.len(), ..Default::default() };
    for r in results {
        let Some((zero, proj, fail)) = r else {
            report.skipped += 1;
            continue;
        };
        report.zero += usize::from(zero);
        report.projection += usize::from(proj);
        if let Some(f) = fail {
            report.failures.push(f);
        }
    }
    Ok(report)
}

pub fn describe(word: &[(Element, Element)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|(p, q)| format!("V*({p})V({q})")).collect::<Vec<_>>().join("·")
}

/// Seeded random words with `1..=max_len` pairs drawn from
/// `ball(element_radius)`.
pub fn random_words(
    model: &SemigroupModel,
    count: usize,
    max_len: usize,
    element_radius: usize,
    seed: u64,
) -> Vec<OperatorWord> {
    let pool = model.ball(element_radius);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            (0..len)
                .map(|_| {
                    let p = pool.choose(&mut rng).expect("nonempty ball").clone();
                    let q = pool.choose(&mut rng).expect("nonempty ball").clone();
                    (p, q)
                })
                .collect()
        })
        .collect()
}

/// Every word of `1..=max_len` pairs over `ball(element_radius)`.
pub fn all_words(model: &SemigroupModel, max_len: usize, element_radius: usize) -> Vec<OperatorWord> {
    let pool = model.ball(element_radius);
    let mut out: Vec<OperatorWord> = Vec::new();
    let mut layer: Vec<OperatorWord> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for p in &pool {
                for q in &pool {
                    let mut v = w.clone();
                    v.push((p.clone(), q.clone()));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn indicator(rep: &TruncatedRepresentation, f: &[Element]) -> Result<Vec<i64>> {
    let mut v = vec![0i64; rep.len()];
    for x in f {
        let i = rep
            .index_of(x)
            .ok_or_else(|| LabError::Precondition(format!("{x} lies outside the window")))?;
        v[i] = 1;
    }
    Ok(v)
}

fn apply(m: &OperatorMatrix, v: &[i64]) -> Vec<i64> {
    m.rows().into_iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn distinct(f: &[Element]) -> Result<usize> {
    let mut s: Vec<&Element> = f.iter().collect();
    s.sort();
    s.dedup();
    if s.is_empty() || s.len() != f.len() {
        return Err(LabError::Precondition("F must be a nonempty set".into()));
    }
    Ok(s.len())
}

/// `‖V_pξ − ξ‖²` for `ξ = |F|^{-1/2}·1_F`, by matrix arithmetic. Needs
/// `pF ⊆ W`.
pub fn vector_state_defect_matrix(
    rep: &TruncatedRepresentation,
    p: &Element,
    f: &[Element],
) -> Result<BigRational> {
    let n = distinct(f)?;
    for x in f {
        if rep.index_of(&rep.model.mul_unchecked(p, x)).is_none() {
            return Err(LabError::Precondition(format!("{p}·{x} leaves the window")));
        }
    }
    let xi = indicator(rep, f)?;
    let v = apply(&rep.matrix_v(p)?, &xi);
    let sq: i64 = v.iter().zip(&xi).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(BigRational::new(BigInt::from(sq), BigInt::from(n)))
}

/// `⟨Tξ, ξ⟩` for `T` the evaluated word and `ξ = |F|^{-1/2}·1_F`, with
/// `F` inside the word's interior.
pub fn vector_state_value(
    rep: &TruncatedRepresentation,
    word: &[(Element, Element)],
    f: &[Element],
) -> Result<BigRational> {
    let n = distinct(f)?;
    let xi = indicator(rep, f)?;
    let m = rep.evaluate_word(word)?;
    for x in f {
        let i = rep.index_of(x).expect("checked by indicator");
        if !m.interior[i] {
            return Err(LabError::Precondition(format!("{x} is not interior for the word")));
        }
    }
    let v = apply(&m.matrix, &xi);
    let s: i64 = v.iter().zip(&xi).map(|(a, b)| a * b).sum();
    Ok(BigRational::new(BigInt::from(s), BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_engine::FamilyOptions;

    fn nat() -> SemigroupModel {
        SemigroupModel::abelian(1).unwrap()
    }

    fn k(n: u32) -> Element {
        Element::Exponents(vec![n])
    }

    fn w(s: &str) -> Element {
        Element::Word(s.bytes().map(|b| b - b'a').collect())
    }

    #[test]
    fn windows() {
        assert_eq!(TruncatedRepresentation::build(&nat(), 10).unwrap().len(), 11);
        let f = SemigroupModel::free(2).unwrap();
        assert_eq!(TruncatedRepresentation::build(&f, 3).unwrap().len(), 15);
        assert!(TruncatedRepresentation::build(&f, 0).is_err());
    }

    #[test]
    fn shift_matrix() {
        let rep = TruncatedRepresentation::build(&nat(), 10).unwrap();
        let v = rep.matrix_v(&k(1)).unwrap();
        for j in 0..11 {
            for i in 0..11 {
                assert_eq!(v[[i, j]], i64::from(i == j + 1));
            }
        }
        assert_eq!(rep.boundary_columns(&k(1)).unwrap(), vec![10]);
        assert_eq!(rep.matrix_e(&RightIdeal::Principal(k(0))).unwrap(), Array2::<i64>::eye(11));
        assert_eq!(rep.matrix_e(&RightIdeal::Empty).unwrap(), Array2::<i64>::zeros((11, 11)));
    }

    #[test]
    fn interior_shrinks() {
        let rep = TruncatedRepresentation::build(&nat(), 12).unwrap();
        let tested = [k(1), k(2)];
        let i1 = rep.interior(1, &tested);
        let i2 = rep.interior(2, &tested);
        assert!(i1.iter().zip(&i2).all(|(a, b)| *a || !*b));
        assert_eq!(i2.iter().filter(|b| **b).count(), 9);
    }

    #[test]
    fn word_examples() {
        let rep = TruncatedRepresentation::build(&nat(), 12).unwrap();
        let m = rep.evaluate_word(&[]).unwrap();
        assert_eq!(m.matrix, Array2::<i64>::eye(13));
        let word = vec![(k(1), k(2)), (k(2), k(1))];
        let m = rep.evaluate_word(&word).unwrap();
        let e = rep.matrix_e(&RightIdeal::Principal(k(1))).unwrap();
        assert!(agree_on(&m.matrix, &e, &m.interior).is_none());
        assert!(verify_iiig(&rep, &word).unwrap().holds);
        let c = verify_iiig(&rep, &[(k(0), k(1))]).unwrap();
        assert!(!c.identity && c.holds);

        let f = SemigroupModel::free(2).unwrap();
        let rep = TruncatedRepresentation::build(&f, 3).unwrap();
        let m = rep.evaluate_word(&[(w("a"), w("b"))]).unwrap();
        assert!(m.matrix.iter().all(|v| *v == 0));
        assert!(m.interior_len() > 0);
    }

    #[test]
    fn word_too_long() {
        let rep = TruncatedRepresentation::build(&nat(), 2).unwrap();
        let word = vec![(k(0), k(3))];
        assert!(matches!(rep.evaluate_word(&word), Err(LabError::WordTooLong { .. })));
    }

    #[test]
    fn relation_suite_on_naturals() {
        let m = nat();
        let rep = TruncatedRepresentation::build(&m, 12).unwrap();
        let fam = ConstructibleFamily::compute(&m, FamilyOptions::new(3)).unwrap();
        let plan = SamplePlan { random_samples: 10, seed: 7, ..Default::default() };
        let r = verify_relations(&rep, &fam, &plan).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures);
    }

    #[test]
    fn fce_on_naturals() {
        let m = nat();
        let rep = TruncatedRepresentation::build(&m, 12).unwrap();
        let words = random_words(&m, 50, 3, 2, 1);
        let r = verify_fce(&rep, &words).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures);
        assert_eq!(r.words, 50);
        let r = verify_fce(&rep, &[vec![]]).unwrap();
        assert_eq!(r.projection, 1);
    }

    #[test]
    fn conditional_expectation_kills_shifts() {
        let rep = TruncatedRepresentation::build(&nat(), 5).unwrap();
        let v = rep.matrix_v(&k(1)).unwrap();
        assert!(conditional_expectation(&v).iter().all(|x| *x == 0));
        let e = rep.matrix_e(&RightIdeal::Principal(k(2))).unwrap();
        assert_eq!(conditional_expectation(&e), e);
    }

    #[test]
    fn vector_state_matches_count() {
        let rep = TruncatedRepresentation::build(&nat(), 12).unwrap();
        let f: Vec<Element> = (0..5).map(k).collect();
        let d = vector_state_defect_matrix(&rep, &k(1), &f).unwrap();
        assert_eq!(d, BigRational::new(2.into(), 5.into()));
        let v = vector_state_value(&rep, &[(k(0), k(1))], &f).unwrap();
        assert_eq!(v, BigRational::new(4.into(), 5.into()));
    }

    #[test]
    fn opposite_axb_words_use_word_forms() {
        let m = SemigroupModel::opposite(SemigroupModel::axb(crate::RingDescriptor::Integers));
        let rep = TruncatedRepresentation::build(&m, 2).unwrap();
        let p = m.generators()[1].clone();
        let c = verify_iiig(&rep, &[(p.clone(), p)]).unwrap();
        assert!(c.identity && c.holds);
    }
}
