//! Concrete left-cancellative monoids with canonical element forms.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{LabError, Result};
use crate::lattice;
use crate::ring::{RingDescriptor, RingElem};

/// A numerical semigroup `⟨g₁, …, g_k⟩ ⊆ ℕ` with coprime generators.
///
/// Membership is decided through the Apéry set with respect to the
/// multiplicity `m`: `x ∈ S` iff `x ≥ apery[x mod m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    apery: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        let gens: Vec<u64> = generators.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if gens.is_empty() || gens[0] == 0 {
            return Err(LabError::Parse("numerical semigroup needs positive generators".into()));
        }
        if gens.iter().fold(0, |g, x| num_integer::gcd(g, *x)) != 1 {
            return Err(LabError::Parse(format!("generators {gens:?} are not coprime")));
        }
        let m = gens[0] as usize;
        // shortest paths over residues mod m
        let mut apery = vec![u64::MAX; m];
        apery[0] = 0;
        let mut done = vec![false; m];
        for _ in 0..m {
            let (r, w) = apery
                .iter()
                .enumerate()
                .filter(|(i, _)| !done[*i])
                .min_by_key(|(_, w)| **w)
                .map(|(i, w)| (i, *w))
                .expect("residue left");
            done[r] = true;
            for g in &gens[1..] {
                let nr = (r + *g as usize) % m;
                if w + g < apery[nr] {
                    apery[nr] = w + g;
                }
            }
        }
        Ok(NumericalSemigroup { generators: gens, apery })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn apery_set(&self) -> &[u64] {
        &self.apery
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.apery[(x % self.multiplicity()) as usize]
    }

    /// Largest integer not in the semigroup, `None` for ℕ itself.
    pub fn frobenius(&self) -> Option<u64> {
        let max = *self.apery.iter().max().expect("nonempty");
        (max > 0).then(|| max - self.multiplicity())
    }

    /// Smallest `c` with `[c, ∞) ⊆ S`.
    pub fn conductor(&self) -> u64 {
        self.frobenius().map_or(0, |f| f + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModelKind {
    FreeMonoid { rank: usize },
    FreeAbelianMonoid { rank: usize },
    Numerical(NumericalSemigroup),
    Axb(RingDescriptor),
    Opposite(Box<SemigroupModel>),
}

/// Canonical element forms. Opposite models reuse the forms of the inner
/// model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Word over generator indices.
    Word(Vec<u8>),
    /// Exponent vector.
    Exponents(Vec<u32>),
    Integer(u64),
    /// `(b, a)` acting as `x ↦ b + a·x`, `a ≠ 0`.
    Affine { b: RingElem, a: RingElem },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) if w.is_empty() => write!(f, "e"),
            Element::Word(w) => {
                for l in w {
                    write!(f, "{}", (b'a' + l) as char)?;
                }
                Ok(())
            }
            Element::Exponents(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Element::Integer(n) => write!(f, "{n}"),
            Element::Affine { b, a } => write!(f, "({b},{a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupModel {
    kind: ModelKind,
    generators: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellativityReport {
    pub radius: usize,
    pub left_ok: bool,
    pub right_ok: bool,
    /// First violating triple `(p, x, y)` with `px = py` (left) or
    /// `xp = yp` (right) and `x ≠ y`.
    pub left_witness: Option<(Element, Element, Element)>,
    pub right_witness: Option<(Element, Element, Element)>,
}

impl SemigroupModel {
    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(LabError::Parse(format!("free monoid rank {rank} out of range 1..=26")));
        }
        let generators = (0..rank as u8).map(|i| Element::Word(vec![i])).collect();
        Ok(SemigroupModel { kind: ModelKind::FreeMonoid { rank }, generators })
    }

    pub fn abelian(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(LabError::Parse("free abelian monoid needs rank ≥ 1".into()));
        }
        let generators = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Element::Exponents(v)
            })
            .collect();
        Ok(SemigroupModel { kind: ModelKind::FreeAbelianMonoid { rank }, generators })
    }

    pub fn numerical(generators: &[u64]) -> Result<Self> {
        let s = NumericalSemigroup::new(generators)?;
        let gens = s.generators().iter().map(|g| Element::Integer(*g)).collect();
        Ok(SemigroupModel { kind: ModelKind::Numerical(s), generators: gens })
    }

    /// The ax+b semigroup `R ⋊ R^reg`. Generators: `(1,1), (0,2), (0,3)`,
    /// plus `(ω,1)` and `(0,1+ω)` for quadratic rings.
    pub fn axb(ring: RingDescriptor) -> Self {
        let aff = |b: RingElem, a: RingElem| Element::Affine { b, a };
        let mut generators = vec![
            aff(RingElem::ONE, RingElem::ONE),
            aff(RingElem::ZERO, RingElem::int(2)),
            aff(RingElem::ZERO, RingElem::int(3)),
        ];
        if ring.degree() == 2 {
            generators.insert(1, aff(ring.omega(), RingElem::ONE));
            generators.push(aff(RingElem::ZERO, RingElem::new(1, 1)));
        }
        SemigroupModel { kind: ModelKind::Axb(ring), generators }
    }

    pub fn opposite(inner: SemigroupModel) -> Self {
        let generators = inner.generators.clone();
        SemigroupModel { kind: ModelKind::Opposite(Box::new(inner)), generators }
    }

    /// Replaces the distinguished generating set. Every listed element must
    /// belong to the model; generation of the whole monoid is the caller's
    /// responsibility.
    pub fn with_generators(mut self, generators: Vec<Element>) -> Result<Self> {
        for g in &generators {
            self.check(g)?;
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Innermost non-opposite model and whether an odd number of
    /// `Opposite` wrappers surround it.
    pub fn base(&self) -> (&SemigroupModel, bool) {
        match &self.kind {
            ModelKind::Opposite(inner) => {
                let (b, flipped) = inner.base();
                (b, !flipped)
            }
            _ => (self, false),
        }
    }

    pub fn is_commutative(&self) -> bool {
        matches!(
            self.base().0.kind,
            ModelKind::FreeAbelianMonoid { .. } | ModelKind::Numerical(_)
        ) || matches!(self.base().0.kind, ModelKind::FreeMonoid { rank: 1 })
    }

    pub fn ring(&self) -> Option<RingDescriptor> {
        match self.base().0.kind {
            ModelKind::Axb(r) => Some(r),
            _ => None,
        }
    }

    pub fn unit(&self) -> Element {
        match &self.kind {
            ModelKind::FreeMonoid { .. } => Element::Word(Vec::new()),
            ModelKind::FreeAbelianMonoid { rank } => Element::Exponents(vec![0; *rank]),
            ModelKind::Numerical(_) => Element::Integer(0),
            ModelKind::Axb(_) => Element::Affine { b: RingElem::ZERO, a: RingElem::ONE },
            ModelKind::Opposite(inner) => inner.unit(),
        }
    }

    /// Checks that `x` is a well-formed element of this model.
    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = match (&self.kind, x) {
            (ModelKind::FreeMonoid { rank }, Element::Word(w)) => {
                w.iter().all(|l| (*l as usize) < *rank)
            }
            (ModelKind::FreeAbelianMonoid { rank }, Element::Exponents(v)) => v.len() == *rank,
            (ModelKind::Numerical(s), Element::Integer(n)) => s.contains(*n),
            (ModelKind::Axb(r), Element::Affine { b, a }) => {
                !a.is_zero() && r.contains(a) && r.contains(b)
            }
            (ModelKind::Opposite(inner), x) => return inner.check(x),
            _ => return Err(LabError::ModelMismatch),
        };
        if ok {
            Ok(())
        } else {
            Err(LabError::InvalidElement(x.to_string()))
        }
    }

    pub fn multiply(&self, p: &Element, q: &Element) -> Result<Element> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.mul_unchecked(p, q))
    }

    pub(crate) fn mul_unchecked(&self, p: &Element, q: &Element) -> Element {
        match (&self.kind, p, q) {
            (ModelKind::Opposite(inner), p, q) => inner.mul_unchecked(q, p),
            (ModelKind::FreeMonoid { .. }, Element::Word(u), Element::Word(v)) => {
                Element::Word(u.iter().chain(v).copied().collect())
            }
            (ModelKind::FreeAbelianMonoid { .. }, Element::Exponents(u), Element::Exponents(v)) => {
                Element::Exponents(u.iter().zip(v).map(|(a, b)| a + b).collect())
            }
            (ModelKind::Numerical(_), Element::Integer(a), Element::Integer(b)) => {
                Element::Integer(a + b)
            }
            (
                ModelKind::Axb(r),
                Element::Affine { b: b1, a: a1 },
                Element::Affine { b: b2, a: a2 },
            ) => Element::Affine { b: *b1 + r.mul(*a1, *b2), a: r.mul(*a1, *a2) },
            _ => unreachable!("elements were checked against the model"),
        }
    }

    /// The unique `x` with `p·x = y`, if any.
    pub fn left_divide(&self, p: &Element, y: &Element) -> Result<Option<Element>> {
        self.check(p)?;
        self.check(y)?;
        Ok(self.ldiv_unchecked(p, y))
    }

    /// The unique `x` with `x·p = y`, if any.
    pub fn right_divide(&self, p: &Element, y: &Element) -> Result<Option<Element>> {
        self.check(p)?;
        self.check(y)?;
        Ok(self.rdiv_unchecked(p, y))
    }

    pub(crate) fn ldiv_unchecked(&self, p: &Element, y: &Element) -> Option<Element> {
        match (&self.kind, p, y) {
            (ModelKind::Opposite(inner), p, y) => inner.rdiv_unchecked(p, y),
            (ModelKind::FreeMonoid { .. }, Element::Word(u), Element::Word(v)) => {
                v.strip_prefix(u.as_slice()).map(|s| Element::Word(s.to_vec()))
            }
            (ModelKind::Numerical(s), Element::Integer(a), Element::Integer(b)) => {
                b.checked_sub(*a).filter(|x| s.contains(*x)).map(Element::Integer)
            }
            (ModelKind::Axb(r), Element::Affine { b: pb, a: pa }, Element::Affine { b, a }) => {
                let c = r.div_exact(*a, *pa)?;
                let d = r.div_exact(*b - *pb, *pa)?;
                Some(Element::Affine { b: d, a: c })
            }
            _ => self.commutative_divide(p, y),
        }
    }

    pub(crate) fn rdiv_unchecked(&self, p: &Element, y: &Element) -> Option<Element> {
        match (&self.kind, p, y) {
            (ModelKind::Opposite(inner), p, y) => inner.ldiv_unchecked(p, y),
            (ModelKind::FreeMonoid { .. }, Element::Word(u), Element::Word(v)) => {
                v.strip_suffix(u.as_slice()).map(|s| Element::Word(s.to_vec()))
            }
            (ModelKind::Axb(r), Element::Affine { b: pb, a: pa }, Element::Affine { b, a }) => {
                // (xb, xa)(pb, pa) = (xb + xa·pb, xa·pa)
                let xa = r.div_exact(*a, *pa)?;
                Some(Element::Affine { b: *b - r.mul(xa, *pb), a: xa })
            }
            (ModelKind::Numerical(_), _, _) => self.ldiv_unchecked(p, y),
            _ => self.commutative_divide(p, y),
        }
    }

    fn commutative_divide(&self, p: &Element, y: &Element) -> Option<Element> {
        match (p, y) {
            (Element::Exponents(u), Element::Exponents(v)) => u
                .iter()
                .zip(v)
                .map(|(a, b)| b.checked_sub(*a))
                .collect::<Option<Vec<_>>>()
                .map(Element::Exponents),
            _ => None,
        }
    }

    /// All products of at most `r` generators, in breadth-first order of
    /// first appearance (right multiplication by generators in order).
    pub fn ball(&self, r: usize) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::new();
        let mut out = vec![self.unit()];
        seen.insert(self.unit());
        let mut frontier = out.clone();
        for _ in 0..r {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.generators {
                    let y = self.mul_unchecked(x, g);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Exhaustive left and right cancellation test over `ball(r)`.
    pub fn check_cancellativity_window(&self, r: usize) -> CancellativityReport {
        let ball = self.ball(r);
        let find = |left: bool| {
            for p in &ball {
                let mut images: HashMap<Element, &Element> = HashMap::new();
                for x in &ball {
                    let img = if left { self.mul_unchecked(p, x) } else { self.mul_unchecked(x, p) };
                    if let Some(prev) = images.insert(img, x) {
                        return Some((p.clone(), prev.clone(), x.clone()));
                    }
                }
            }
            None
        };
        let left_witness = find(true);
        let right_witness = find(false);
        CancellativityReport {
            radius: r,
            left_ok: left_witness.is_none(),
            right_ok: right_witness.is_none(),
            left_witness,
            right_witness,
        }
    }

    /// An element of `pP ∩ qP`, or `None` when the two principal right
    /// ideals are disjoint. Exact for every model.
    pub fn common_right_multiple(&self, p: &Element, q: &Element) -> Result<Option<Element>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.crm(p, q))
    }

    /// An element of `Pp ∩ Pq`, or `None` when disjoint.
    pub fn common_left_multiple(&self, p: &Element, q: &Element) -> Result<Option<Element>> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.clm(p, q))
    }

    fn crm(&self, p: &Element, q: &Element) -> Option<Element> {
        match &self.kind {
            ModelKind::Opposite(inner) => inner.clm(p, q),
            ModelKind::FreeMonoid { .. } => {
                if self.ldiv_unchecked(p, q).is_some() {
                    Some(q.clone())
                } else if self.ldiv_unchecked(q, p).is_some() {
                    Some(p.clone())
                } else {
                    None
                }
            }
            ModelKind::Axb(r) => {
                let (Element::Affine { b: b1, a: a1 }, Element::Affine { b: b2, a: a2 }) = (p, q)
                else {
                    unreachable!()
                };
                // b1 + a1·d1 = b2 + a2·d2
                let mut gens = Vec::new();
                for w in r.integral_basis() {
                    gens.push(r.coords(r.mul(*a1, w)));
                }
                for w in r.integral_basis() {
                    gens.push(r.coords(-r.mul(*a2, w)));
                }
                let coeffs = lattice::solve(&gens, &r.coords(*b2 - *b1))?;
                let deg = r.degree();
                let d1 = r.elem_from_coords(&reorder(r, &coeffs[..deg]));
                let x = Element::Affine { b: d1, a: *a2 };
                Some(self.mul_unchecked(p, &x))
            }
            _ => Some(self.mul_unchecked(p, q)),
        }
    }

    fn clm(&self, p: &Element, q: &Element) -> Option<Element> {
        match &self.kind {
            ModelKind::Opposite(inner) => inner.crm(p, q),
            ModelKind::FreeMonoid { .. } => {
                if self.rdiv_unchecked(p, q).is_some() {
                    Some(q.clone())
                } else if self.rdiv_unchecked(q, p).is_some() {
                    Some(p.clone())
                } else {
                    None
                }
            }
            ModelKind::Axb(r) => {
                let (Element::Affine { b: b1, a: a1 }, Element::Affine { b: b2, a: a2 }) = (p, q)
                else {
                    unreachable!()
                };
                // (a1·b2, a2)·p = (a2·b1, a1)·q = (a1b2 + a2b1, a1a2)
                let x = Element::Affine { b: r.mul(*a1, *b2), a: *a2 };
                let _ = b1;
                Some(self.mul_unchecked(&x, p))
            }
            _ => Some(self.mul_unchecked(p, q)),
        }
    }
}

/// Coefficients of `{1, ω}` from lattice solve coordinates (which follow
/// the integral basis order) into `coords` layout.
fn reorder(r: &RingDescriptor, coeffs: &[i128]) -> Vec<i128> {
    match r {
        RingDescriptor::Integers => vec![coeffs[0]],
        RingDescriptor::Quadratic { .. } => vec![coeffs[1], coeffs[0]],
    }
}

impl fmt::Display for SemigroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModelKind::FreeMonoid { rank } => write!(f, "free:{rank}"),
            ModelKind::FreeAbelianMonoid { rank } => write!(f, "abelian:{rank}"),
            ModelKind::Numerical(s) => {
                let g: Vec<String> = s.generators().iter().map(|x| x.to_string()).collect();
                write!(f, "numerical:{}", g.join(","))
            }
            ModelKind::Axb(r) => write!(f, "axb:{r}"),
            ModelKind::Opposite(inner) => write!(f, "op({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Element {
        Element::Word(s.bytes().map(|b| b - b'a').collect())
    }

    fn aff(b: i64, a: i64) -> Element {
        Element::Affine { b: RingElem::int(b), a: RingElem::int(a) }
    }

    fn axb_z() -> SemigroupModel {
        SemigroupModel::axb(RingDescriptor::Integers)
    }

    #[test]
    fn multiply_examples() {
        let m = SemigroupModel::abelian(2).unwrap();
        let p = Element::Exponents(vec![1, 0]);
        let q = Element::Exponents(vec![0, 1]);
        assert_eq!(m.multiply(&p, &q).unwrap(), Element::Exponents(vec![1, 1]));
        assert_eq!(axb_z().multiply(&aff(1, 2), &aff(3, 4)).unwrap(), aff(7, 8));
        let n = SemigroupModel::numerical(&[2, 3]).unwrap();
        assert_eq!(
            n.multiply(&Element::Integer(2), &Element::Integer(3)).unwrap(),
            Element::Integer(5)
        );
        assert_eq!(m.multiply(&p, &Element::Integer(2)), Err(LabError::ModelMismatch));
    }

    #[test]
    fn divide_examples() {
        let n = SemigroupModel::abelian(1).unwrap();
        let e = |k| Element::Exponents(vec![k]);
        assert_eq!(n.left_divide(&e(2), &e(5)).unwrap(), Some(e(3)));
        assert_eq!(axb_z().left_divide(&aff(0, 2), &aff(1, 2)).unwrap(), None);
        for m in [axb_z(), SemigroupModel::free(2).unwrap()] {
            let y = m.ball(2).pop().unwrap();
            assert_eq!(m.left_divide(&m.unit(), &y).unwrap(), Some(y));
        }
        let f = SemigroupModel::free(2).unwrap();
        assert_eq!(f.left_divide(&w("a"), &w("ab")).unwrap(), Some(w("b")));
        assert_eq!(f.right_divide(&w("b"), &w("ab")).unwrap(), Some(w("a")));
    }

    #[test]
    fn balls() {
        let f = SemigroupModel::free(2).unwrap();
        assert_eq!(f.ball(1), vec![w(""), w("a"), w("b")]);
        assert_eq!(f.ball(3).len(), 15);
        let a = SemigroupModel::abelian(2).unwrap();
        let e = |x, y| Element::Exponents(vec![x, y]);
        assert_eq!(a.ball(2), vec![e(0, 0), e(1, 0), e(0, 1), e(2, 0), e(1, 1), e(0, 2)]);
        let n = SemigroupModel::numerical(&[2, 3]).unwrap();
        let got: Vec<u64> = n
            .ball(2)
            .into_iter()
            .map(|x| match x {
                Element::Integer(k) => k,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![0, 2, 3, 4, 5, 6]);
        assert_eq!(n.ball(0), vec![Element::Integer(0)]);
    }

    #[test]
    fn numerical_semigroup_structure() {
        let s = NumericalSemigroup::new(&[3, 5]).unwrap();
        assert_eq!(s.apery_set(), &[0, 10, 5]);
        assert_eq!(s.frobenius(), Some(7));
        assert!(!s.contains(7) && s.contains(8) && !s.contains(4));
        assert_eq!(NumericalSemigroup::new(&[1]).unwrap().frobenius(), None);
        assert!(NumericalSemigroup::new(&[2, 4]).is_err());
    }

    #[test]
    fn cancellativity_windows() {
        let rep = SemigroupModel::free(2).unwrap().check_cancellativity_window(3);
        assert!(rep.left_ok && rep.right_ok);
        let rep = axb_z().check_cancellativity_window(3);
        assert!(rep.left_ok && rep.right_ok);
        let rep = SemigroupModel::opposite(axb_z()).check_cancellativity_window(3);
        assert!(rep.left_ok);
    }

    #[test]
    fn common_multiples() {
        let m = axb_z();
        assert_eq!(m.common_right_multiple(&aff(0, 2), &aff(1, 2)).unwrap(), None);
        let x = m.common_right_multiple(&aff(1, 2), &aff(0, 3)).unwrap().unwrap();
        assert!(m.left_divide(&aff(1, 2), &x).unwrap().is_some());
        assert!(m.left_divide(&aff(0, 3), &x).unwrap().is_some());
        let y = m.common_left_multiple(&aff(0, 2), &aff(1, 2)).unwrap().unwrap();
        assert!(m.right_divide(&aff(0, 2), &y).unwrap().is_some());
        assert!(m.right_divide(&aff(1, 2), &y).unwrap().is_some());
        let f = SemigroupModel::free(2).unwrap();
        assert_eq!(f.common_right_multiple(&w("a"), &w("b")).unwrap(), None);
        assert_eq!(f.common_right_multiple(&w("a"), &w("ab")).unwrap(), Some(w("ab")));
    }

    #[test]
    fn double_opposite_matches_inner() {
        let m = axb_z();
        let oo = SemigroupModel::opposite(SemigroupModel::opposite(m.clone()));
        let ball = m.ball(2);
        assert_eq!(oo.ball(2), ball);
        for p in &ball {
            for q in &ball {
                assert_eq!(oo.multiply(p, q).unwrap(), m.multiply(p, q).unwrap());
                assert_eq!(oo.left_divide(p, q).unwrap(), m.left_divide(p, q).unwrap());
            }
        }
    }

    #[test]
    fn quadratic_axb_generators() {
        let r = RingDescriptor::quadratic(-5).unwrap();
        let m = SemigroupModel::axb(r);
        assert_eq!(m.generators().len(), 5);
        assert!(m.check(&Element::Affine { b: RingElem::ONE, a: RingElem::ZERO }).is_err());
    }
}
