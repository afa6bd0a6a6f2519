//! Canonical forms for constructible right ideals and the exact operations
//! on them: left multiplication, pre-images, intersections, unions,
//! membership and inclusion.
//!
//! Each model family has its own canonical form so that equality of forms
//! is equality of subsets:
//!
//! * free monoids (and their opposites) and free abelian monoids use
//!   principal ideals `pP`;
//! * numerical semigroups use a finite sporadic part plus a tail;
//! * ax+b semigroups use coset ideals `(b+I)×I^reg`.

mod checks;
mod family;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{LabError, Result};
use crate::lattice;
use crate::ring::{fit, RingDescriptor, RingElem};
use crate::ring_ideals::RingIdeal;
use crate::semigroup::{Element, ModelKind, NumericalSemigroup, SemigroupModel};

pub use checks::{
    boolean_difference_form, check_independence, check_quasi_lattice, verify_qpint,
    IndependenceReport, IndependenceVerdict, QuasiLatticeReport, QuasiLatticeVerdict,
};
pub use family::{ConstructibleFamily, FamilyOptions, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RightIdeal {
    Empty,
    /// `pP`.
    Principal(Element),
    /// `(residue + ideal) × ideal^reg` in an ax+b semigroup.
    Coset { residue: RingElem, ideal: RingIdeal },
    /// `(sporadic ∪ [threshold, ∞)) ∩ S` in a numerical semigroup `S`.
    ///
    /// Canonical when `threshold` is the least `s ∈ S` with
    /// `S ∩ [s, ∞)` inside the ideal and `sporadic` lists the members
    /// below it.
    Tail { threshold: u64, sporadic: BTreeSet<u64> },
    /// Finite union of canonical atoms, kept as a sorted antichain.
    Union(Vec<RightIdeal>),
    /// `q₁⁻¹p₁⋯q_m⁻¹p_m P` for pairs `(q_i, p_i)`. Never produced by the
    /// engine; normalized on entry.
    Word(Vec<(Element, Element)>),
}

impl RightIdeal {
    pub fn is_empty_form(&self) -> bool {
        matches!(self, RightIdeal::Empty)
    }

    pub fn tail(threshold: u64, sporadic: &[u64]) -> Self {
        RightIdeal::Tail { threshold, sporadic: sporadic.iter().copied().collect() }
    }

    fn atoms(&self) -> Vec<&RightIdeal> {
        match self {
            RightIdeal::Empty => Vec::new(),
            RightIdeal::Union(a) => a.iter().collect(),
            x => vec![x],
        }
    }

    /// Short name of the form, used in reports.
    pub fn form_name(&self) -> &'static str {
        match self {
            RightIdeal::Empty => "empty",
            RightIdeal::Principal(_) => "principal",
            RightIdeal::Coset { .. } => "coset",
            RightIdeal::Tail { .. } => "tail",
            RightIdeal::Union(_) => "union",
            RightIdeal::Word(_) => "word",
        }
    }
}

fn is_unit_form(x: &Element) -> bool {
    match x {
        Element::Word(w) => w.is_empty(),
        Element::Exponents(v) => v.iter().all(|e| *e == 0),
        Element::Integer(n) => *n == 0,
        Element::Affine { b, a } => b.is_zero() && *a == RingElem::ONE,
    }
}

impl fmt::Display for RightIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RightIdeal::Empty => write!(f, "∅"),
            RightIdeal::Principal(p) if is_unit_form(p) => write!(f, "P"),
            RightIdeal::Principal(p) => write!(f, "{p}P"),
            RightIdeal::Coset { residue, ideal } => write!(f, "Coset({residue}, {ideal})"),
            RightIdeal::Tail { threshold, sporadic } => {
                let s: Vec<String> = sporadic.iter().map(|x| x.to_string()).collect();
                write!(f, "Tail({{{}}}, {threshold})", s.join(","))
            }
            RightIdeal::Union(atoms) => {
                let s: Vec<String> = atoms.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", s.join(" ∪ "))
            }
            RightIdeal::Word(pairs) => {
                for (q, p) in pairs {
                    write!(f, "{q}⁻¹{p}·")?;
                }
                write!(f, "P")
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Forms {
    Prefix,
    Lattice,
    Numeric(NumericalSemigroup),
    Affine(RingDescriptor),
}

/// Exact operations on constructible right ideals of one model.
#[derive(Debug, Clone)]
pub struct IdealEngine {
    model: SemigroupModel,
    forms: Forms,
}

impl IdealEngine {
    pub fn new(model: &SemigroupModel) -> Result<Self> {
        let (base, flipped) = model.base();
        let forms = match base.kind() {
            ModelKind::FreeMonoid { .. } => Forms::Prefix,
            ModelKind::FreeAbelianMonoid { .. } => Forms::Lattice,
            ModelKind::Numerical(s) => Forms::Numeric(s.clone()),
            ModelKind::Axb(r) if !flipped => Forms::Affine(*r),
            ModelKind::Axb(_) => {
                return Err(LabError::Unsupported(
                    "constructible right ideals of the opposite ax+b semigroup".into(),
                ))
            }
            ModelKind::Opposite(_) => unreachable!("base strips opposites"),
        };
        Ok(IdealEngine { model: model.clone(), forms })
    }

    pub fn model(&self) -> &SemigroupModel {
        &self.model
    }

    pub fn full(&self) -> RightIdeal {
        match &self.forms {
            Forms::Prefix | Forms::Lattice => RightIdeal::Principal(self.model.unit()),
            Forms::Numeric(_) => RightIdeal::tail(0, &[]),
            Forms::Affine(r) => RightIdeal::Coset { residue: RingElem::ZERO, ideal: RingIdeal::unit(*r) },
        }
    }

    /// Canonical form of `pP`.
    pub fn principal(&self, p: &Element) -> Result<RightIdeal> {
        self.model.check(p)?;
        Ok(self.principal_unchecked(p))
    }

    fn principal_unchecked(&self, p: &Element) -> RightIdeal {
        match (&self.forms, p) {
            (Forms::Numeric(s), Element::Integer(n)) => {
                let n = *n;
                tail_from(s, n + s.conductor(), |k| k >= n && s.contains(k - n))
            }
            (Forms::Affine(r), Element::Affine { b, a }) => {
                let ideal = RingIdeal::principal(*r, *a).expect("a is nonzero");
                RightIdeal::Coset { residue: ideal.reduce(*b), ideal }
            }
            _ => RightIdeal::Principal(p.clone()),
        }
    }

    fn numeric(&self) -> &NumericalSemigroup {
        match &self.forms {
            Forms::Numeric(s) => s,
            _ => unreachable!("tail forms only reach numerical engines"),
        }
    }

    fn ring(&self) -> RingDescriptor {
        match &self.forms {
            Forms::Affine(r) => *r,
            _ => unreachable!("coset forms only reach ax+b engines"),
        }
    }

    /// Brings any accepted form into canonical form.
    pub fn normalize(&self, x: &RightIdeal) -> Result<RightIdeal> {
        match (x, &self.forms) {
            (RightIdeal::Empty, _) => Ok(RightIdeal::Empty),
            (RightIdeal::Principal(p), _) => self.principal(p),
            (RightIdeal::Coset { residue, ideal }, Forms::Affine(r)) => {
                if ideal.ring() != *r || !r.contains(residue) {
                    return Err(LabError::RingMismatch);
                }
                Ok(RightIdeal::Coset { residue: ideal.reduce(*residue), ideal: *ideal })
            }
            (RightIdeal::Tail { threshold, sporadic }, Forms::Numeric(s)) => {
                let t = *threshold;
                Ok(tail_from(s, t, |k| k >= t || sporadic.contains(&k)))
            }
            (RightIdeal::Union(atoms), _) => {
                let atoms = atoms.iter().map(|a| self.normalize(a)).collect::<Result<Vec<_>>>()?;
                Ok(self.make_union(atoms))
            }
            (RightIdeal::Word(pairs), _) => {
                let mut acc = self.full();
                for (q, p) in pairs.iter().rev() {
                    acc = self.left_mult(p, &acc)?;
                    acc = self.preimage(q, &acc)?;
                }
                Ok(acc)
            }
            _ => Err(LabError::ModelMismatch),
        }
    }

    /// Canonical form of `pX`.
    pub fn left_mult(&self, p: &Element, x: &RightIdeal) -> Result<RightIdeal> {
        self.model.check(p)?;
        let x = self.normalize(x)?;
        Ok(self.lm(p, &x))
    }

    fn lm(&self, p: &Element, x: &RightIdeal) -> RightIdeal {
        match x {
            RightIdeal::Empty => RightIdeal::Empty,
            RightIdeal::Principal(q) => self.principal_unchecked(&self.model.mul_unchecked(p, q)),
            RightIdeal::Coset { residue, ideal } => {
                let r = self.ring();
                let Element::Affine { b: beta, a: alpha } = p else { unreachable!() };
                let ideal = ideal.scale(*alpha).expect("alpha is nonzero");
                let residue = ideal.reduce(*beta + r.mul(*alpha, *residue));
                RightIdeal::Coset { residue, ideal }
            }
            RightIdeal::Tail { threshold, .. } => {
                let s = self.numeric();
                let Element::Integer(g) = p else { unreachable!() };
                let g = *g;
                tail_from(s, g + threshold + s.conductor(), |k| {
                    k >= g && tail_contains(s, x, k - g)
                })
            }
            RightIdeal::Union(atoms) => {
                self.make_union(atoms.iter().map(|a| self.lm(p, a)).collect())
            }
            RightIdeal::Word(_) => unreachable!("normalized"),
        }
    }

    /// Canonical form of `p⁻¹X = {y : py ∈ X}`.
    pub fn preimage(&self, p: &Element, x: &RightIdeal) -> Result<RightIdeal> {
        self.model.check(p)?;
        let x = self.normalize(x)?;
        Ok(self.pre(p, &x))
    }

    fn pre(&self, p: &Element, x: &RightIdeal) -> RightIdeal {
        match x {
            RightIdeal::Empty => RightIdeal::Empty,
            RightIdeal::Principal(q) => match (&self.forms, p, q) {
                (Forms::Lattice, Element::Exponents(u), Element::Exponents(v)) => {
                    RightIdeal::Principal(Element::Exponents(
                        u.iter().zip(v).map(|(a, b)| b.saturating_sub(*a)).collect(),
                    ))
                }
                _ => {
                    if let Some(r) = self.model.ldiv_unchecked(p, q) {
                        RightIdeal::Principal(r)
                    } else if self.model.ldiv_unchecked(q, p).is_some() {
                        self.full()
                    } else {
                        RightIdeal::Empty
                    }
                }
            },
            RightIdeal::Coset { residue, ideal } => {
                let r = self.ring();
                let Element::Affine { b: beta, a: alpha } = p else { unreachable!() };
                let j = ideal.preimage(*alpha).expect("same ring");
                // α·x ∈ (residue − β) + I
                let mut gens: Vec<lattice::Row> =
                    r.integral_basis().into_iter().map(|w| r.coords(r.mul(*alpha, w))).collect();
                gens.extend(ideal.basis().into_iter().map(|w| r.coords(w)));
                match lattice::solve(&gens, &r.coords(*residue - *beta)) {
                    None => RightIdeal::Empty,
                    Some(c) => {
                        let x0 = combo(r, &c[..r.degree()]);
                        RightIdeal::Coset { residue: j.reduce(x0), ideal: j }
                    }
                }
            }
            RightIdeal::Tail { threshold, .. } => {
                let s = self.numeric();
                let Element::Integer(g) = p else { unreachable!() };
                tail_from(s, *threshold, |k| tail_contains(s, x, g + k))
            }
            RightIdeal::Union(atoms) => {
                self.make_union(atoms.iter().map(|a| self.pre(p, a)).collect())
            }
            RightIdeal::Word(_) => unreachable!("normalized"),
        }
    }

    pub fn intersect(&self, x: &RightIdeal, y: &RightIdeal) -> Result<RightIdeal> {
        let x = self.normalize(x)?;
        let y = self.normalize(y)?;
        Ok(self.meet(&x, &y))
    }

    fn meet(&self, x: &RightIdeal, y: &RightIdeal) -> RightIdeal {
        match (x, y) {
            (RightIdeal::Empty, _) | (_, RightIdeal::Empty) => RightIdeal::Empty,
            (RightIdeal::Union(_), _) | (_, RightIdeal::Union(_)) => {
                let mut parts = Vec::new();
                for a in x.atoms() {
                    for b in y.atoms() {
                        parts.push(self.meet(a, b));
                    }
                }
                self.make_union(parts)
            }
            (RightIdeal::Principal(p), RightIdeal::Principal(q)) => match (&self.forms, p, q) {
                (Forms::Lattice, Element::Exponents(u), Element::Exponents(v)) => {
                    RightIdeal::Principal(Element::Exponents(
                        u.iter().zip(v).map(|(a, b)| *a.max(b)).collect(),
                    ))
                }
                _ => {
                    if self.model.ldiv_unchecked(p, q).is_some() {
                        y.clone()
                    } else if self.model.ldiv_unchecked(q, p).is_some() {
                        x.clone()
                    } else {
                        RightIdeal::Empty
                    }
                }
            },
            (
                RightIdeal::Coset { residue: b, ideal: i },
                RightIdeal::Coset { residue: d, ideal: j },
            ) => {
                let r = self.ring();
                // b + i = d + j with i ∈ I, j ∈ J
                let mut gens: Vec<lattice::Row> = i.basis().into_iter().map(|w| r.coords(w)).collect();
                gens.extend(j.basis().into_iter().map(|w| r.coords(-w)));
                match lattice::solve(&gens, &r.coords(*d - *b)) {
                    None => RightIdeal::Empty,
                    Some(c) => {
                        let ib = i.basis();
                        let mut point = *b;
                        for (k, w) in ib.iter().enumerate() {
                            point = point + w.scale(fit(c[k]));
                        }
                        let ideal = i.intersect(j).expect("same ring");
                        RightIdeal::Coset { residue: ideal.reduce(point), ideal }
                    }
                }
            }
            (RightIdeal::Tail { threshold: t1, .. }, RightIdeal::Tail { threshold: t2, .. }) => {
                let s = self.numeric();
                tail_from(s, *t1.max(t2), |k| tail_contains(s, x, k) && tail_contains(s, y, k))
            }
            _ => unreachable!("both operands come from the same form family"),
        }
    }

    pub fn union(&self, x: &RightIdeal, y: &RightIdeal) -> Result<RightIdeal> {
        let x = self.normalize(x)?;
        let y = self.normalize(y)?;
        Ok(self.make_union(vec![x, y]))
    }

    /// Canonical union of canonical forms. Numerical tails are closed
    /// under unions; other forms become a sorted antichain of atoms.
    fn make_union(&self, parts: Vec<RightIdeal>) -> RightIdeal {
        let mut atoms: Vec<RightIdeal> = Vec::new();
        for p in parts {
            match p {
                RightIdeal::Empty => {}
                RightIdeal::Union(a) => atoms.extend(a),
                a => atoms.push(a),
            }
        }
        if let Forms::Numeric(s) = &self.forms {
            if atoms.is_empty() {
                return RightIdeal::Empty;
            }
            let bound = atoms
                .iter()
                .map(|a| match a {
                    RightIdeal::Tail { threshold, .. } => *threshold,
                    _ => unreachable!(),
                })
                .max()
                .expect("nonempty");
            return tail_from(s, bound, |k| atoms.iter().any(|a| tail_contains(s, a, k)));
        }
        atoms.sort();
        atoms.dedup();
        let keep: Vec<RightIdeal> = atoms
            .iter()
            .enumerate()
            .filter(|(i, a)| {
                !atoms.iter().enumerate().any(|(j, b)| *i != j && self.atom_subset(a, b))
            })
            .map(|(_, a)| a.clone())
            .collect();
        match keep.len() {
            0 => RightIdeal::Empty,
            1 => keep.into_iter().next().expect("one atom"),
            _ => RightIdeal::Union(keep),
        }
    }

    fn atom_subset(&self, x: &RightIdeal, y: &RightIdeal) -> bool {
        match (x, y) {
            (RightIdeal::Empty, _) => true,
            (_, RightIdeal::Empty) => false,
            (RightIdeal::Principal(p), RightIdeal::Principal(q)) => {
                self.model.ldiv_unchecked(q, p).is_some()
            }
            (
                RightIdeal::Coset { residue: b, ideal: i },
                RightIdeal::Coset { residue: d, ideal: j },
            ) => i.is_subset_of(j) && j.contains(&(*b - *d)),
            (RightIdeal::Tail { threshold: t1, .. }, RightIdeal::Tail { threshold: t2, .. }) => {
                let s = self.numeric();
                (0..*t1.max(t2)).all(|k| !tail_contains(s, x, k) || tail_contains(s, y, k))
            }
            _ => unreachable!("both operands come from the same form family"),
        }
    }

    /// Exact inclusion `X ⊆ Y`.
    pub fn is_subset(&self, x: &RightIdeal, y: &RightIdeal) -> Result<bool> {
        let x = self.normalize(x)?;
        let y = self.normalize(y)?;
        Ok(x.atoms().iter().all(|a| y.atoms().iter().any(|b| self.atom_subset(a, b))))
    }

    /// Exact membership. Elements outside the model's underlying set (such
    /// as 1 in ⟨2,3⟩) belong to no ideal.
    pub fn contains(&self, x: &RightIdeal, e: &Element) -> Result<bool> {
        match self.model.check(e) {
            Ok(()) => {}
            Err(LabError::InvalidElement(_)) => return Ok(false),
            Err(err) => return Err(err),
        }
        Ok(self.member(x, e))
    }

    fn member(&self, x: &RightIdeal, e: &Element) -> bool {
        match x {
            RightIdeal::Empty => false,
            RightIdeal::Principal(p) => self.model.ldiv_unchecked(p, e).is_some(),
            RightIdeal::Coset { residue, ideal } => match e {
                Element::Affine { b, a } => ideal.contains(a) && ideal.contains(&(*b - *residue)),
                _ => false,
            },
            RightIdeal::Tail { .. } => match e {
                Element::Integer(n) => tail_contains(self.numeric(), x, *n),
                _ => false,
            },
            RightIdeal::Union(atoms) => atoms.iter().any(|a| self.member(a, e)),
            RightIdeal::Word(pairs) => word_contains(&self.model, pairs, e),
        }
    }

    /// Whether a canonical non-union ideal is principal. Coset ideals are
    /// principal exactly when their ring ideal is.
    pub fn principal_generator(&self, x: &RightIdeal) -> Result<Option<Element>> {
        let x = self.normalize(x)?;
        Ok(match &x {
            RightIdeal::Empty | RightIdeal::Union(_) => None,
            RightIdeal::Principal(p) => Some(p.clone()),
            RightIdeal::Coset { residue, ideal } => {
                let rep = crate::ring_ideals::is_principal(ideal)?;
                rep.generator.map(|a| Element::Affine { b: *residue, a })
            }
            RightIdeal::Tail { threshold, sporadic } => {
                let m = sporadic.iter().next().copied().unwrap_or(*threshold);
                let g = Element::Integer(m);
                (self.principal_unchecked(&g) == x).then_some(g)
            }
            RightIdeal::Word(_) => unreachable!("normalized"),
        })
    }
}

/// Membership in `q₁⁻¹p₁⋯q_m⁻¹p_m P`, folding from the outside in: multiply
/// by `q₁`, divide by `p₁`, and so on. Needs only the model, so it also
/// serves models without canonical ideal forms.
pub fn word_contains(model: &SemigroupModel, pairs: &[(Element, Element)], x: &Element) -> bool {
    let mut y = x.clone();
    for (q, p) in pairs {
        let qy = model.mul_unchecked(q, &y);
        match model.ldiv_unchecked(p, &qy) {
            Some(z) => y = z,
            None => return false,
        }
    }
    true
}

/// `Σ c_k·basis_k` over the integral basis.
fn combo(r: RingDescriptor, c: &[i128]) -> RingElem {
    r.integral_basis()
        .into_iter()
        .zip(c)
        .fold(RingElem::ZERO, |acc, (w, k)| acc + w.scale(fit(*k)))
}

fn tail_contains(s: &NumericalSemigroup, x: &RightIdeal, k: u64) -> bool {
    match x {
        RightIdeal::Tail { threshold, sporadic } => {
            s.contains(k) && (k >= *threshold || sporadic.contains(&k))
        }
        _ => unreachable!(),
    }
}

/// Canonical tail of the ideal `{k ∈ S : pred(k)}`, given that every
/// `k ≥ bound` in `S` satisfies `pred`.
fn tail_from(s: &NumericalSemigroup, bound: u64, pred: impl Fn(u64) -> bool) -> RightIdeal {
    let mut t = (bound..).find(|k| s.contains(*k)).expect("semigroup is cofinite");
    for k in (0..bound).rev() {
        if s.contains(k) {
            if pred(k) {
                t = k;
            } else {
                break;
            }
        }
    }
    let sporadic = (0..t).filter(|k| s.contains(*k) && pred(*k)).collect();
    RightIdeal::Tail { threshold: t, sporadic }
}
