//! Normal forms in the enveloping groups of the models: free groups,
//! ℤᵏ, ℤ, and the ax+b group over the fraction field of the ring.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{RingDescriptor, RingElem};
use crate::semigroup::{Element, ModelKind, SemigroupModel};

/// An element of a quadratic field (or ℚ) as `re + om·ω` with rational
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    pub re: BigRational,
    pub om: BigRational,
}

impl FieldElem {
    fn from_ring(x: RingElem) -> Self {
        FieldElem { re: BigRational::from_integer(x.re.into()), om: BigRational::from_integer(x.om.into()) }
    }

    fn zero() -> Self {
        FieldElem { re: BigRational::zero(), om: BigRational::zero() }
    }

    fn one() -> Self {
        FieldElem { re: BigRational::one(), om: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    fn add(&self, o: &FieldElem) -> FieldElem {
        FieldElem { re: &self.re + &o.re, om: &self.om + &o.om }
    }

    fn neg(&self) -> FieldElem {
        FieldElem { re: -&self.re, om: -&self.om }
    }

    fn mul(&self, o: &FieldElem, ring: RingDescriptor) -> FieldElem {
        let (t, n) = ring.omega_relation();
        let (t, n) = (BigRational::from_integer(t.into()), BigRational::from_integer(n.into()));
        let be = &self.om * &o.om;
        FieldElem {
            re: &self.re * &o.re - &n * &be,
            om: &self.re * &o.om + &self.om * &o.re + &t * &be,
        }
    }

    fn inv(&self, ring: RingDescriptor) -> FieldElem {
        let (t, n) = ring.omega_relation();
        let (t, n) = (BigRational::from_integer(t.into()), BigRational::from_integer(n.into()));
        // conj(a + bω) = (a + tb) − bω, norm = a² + tab + nb²
        let (a, b) = (&self.re, &self.om);
        let norm = a * a + &t * a * b + &n * b * b;
        FieldElem { re: (a + &t * b) / &norm, om: -b / &norm }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum GroupElem {
    /// Freely reduced word of `(letter, exponent ±1)`.
    Free(Vec<(u8, i8)>),
    Vector(Vec<i64>),
    /// `x ↦ b + a·x` over the fraction field.
    Affine { b: FieldElem, a: FieldElem },
}

impl GroupElem {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElem::Free(w) => w.is_empty(),
            GroupElem::Vector(v) => v.iter().all(|x| *x == 0),
            GroupElem::Affine { b, a } => b.is_zero() && *a == FieldElem::one(),
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Free(w) if w.is_empty() => write!(f, "e"),
            GroupElem::Free(w) => {
                for (l, e) in w {
                    let c = (b'a' + l) as char;
                    if *e < 0 {
                        write!(f, "{c}⁻¹")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
            GroupElem::Vector(v) => write!(f, "{v:?}"),
            GroupElem::Affine { b, a } => write!(f, "(({}, {}), ({}, {}))", b.re, b.om, a.re, a.om),
        }
    }
}

/// Multiplies out `x₁^{±1} ⋯ x_k^{±1}` in the group the model embeds in.
///
/// The opposite of a model embeds in the opposite group, so its products
/// are evaluated in reverse order in the inner group.
pub fn evaluate(model: &SemigroupModel, factors: &[(Element, bool)]) -> GroupElem {
    match model.kind() {
        ModelKind::Opposite(inner) => {
            let rev: Vec<(Element, bool)> = factors.iter().rev().cloned().collect();
            evaluate(inner, &rev)
        }
        ModelKind::FreeMonoid { .. } => {
            let mut out: Vec<(u8, i8)> = Vec::new();
            for (x, inv) in factors {
                let Element::Word(w) = x else { unreachable!("checked elements") };
                let letters: Vec<(u8, i8)> = if *inv {
                    w.iter().rev().map(|l| (*l, -1)).collect()
                } else {
                    w.iter().map(|l| (*l, 1)).collect()
                };
                for (l, e) in letters {
                    if out.last() == Some(&(l, -e)) {
                        out.pop();
                    } else {
                        out.push((l, e));
                    }
                }
            }
            GroupElem::Free(out)
        }
        ModelKind::FreeAbelianMonoid { rank } => {
            let mut v = vec![0i64; *rank];
            for (x, inv) in factors {
                let Element::Exponents(e) = x else { unreachable!("checked elements") };
                for (acc, k) in v.iter_mut().zip(e) {
                    *acc += if *inv { -i64::from(*k) } else { i64::from(*k) };
                }
            }
            GroupElem::Vector(v)
        }
        ModelKind::Numerical(_) => {
            let mut s = 0i64;
            for (x, inv) in factors {
                let Element::Integer(n) = x else { unreachable!("checked elements") };
                let n = *n as i64;
                s += if *inv { -n } else { n };
            }
            GroupElem::Vector(vec![s])
        }
        ModelKind::Axb(r) => {
            let mut acc_b = FieldElem::zero();
            let mut acc_a = FieldElem::one();
            for (x, inv) in factors {
                let Element::Affine { b, a } = x else { unreachable!("checked elements") };
                let (mut fb, mut fa) = (FieldElem::from_ring(*b), FieldElem::from_ring(*a));
                if *inv {
                    // (b, a)⁻¹ = (−b/a, 1/a)
                    let ai = fa.inv(*r);
                    fb = fb.mul(&ai, *r).neg();
                    fa = ai;
                }
                // (B, A)(b, a) = (B + A·b, A·a)
                acc_b = acc_b.add(&acc_a.mul(&fb, *r));
                acc_a = acc_a.mul(&fa, *r);
            }
            GroupElem::Affine { b: acc_b, a: acc_a }
        }
    }
}

/// `p₁⁻¹q₁⋯p_m⁻¹q_m` for `word = [(p₁,q₁), …]`.
pub fn word_product(model: &SemigroupModel, word: &[(Element, Element)]) -> GroupElem {
    let factors: Vec<(Element, bool)> =
        word.iter().flat_map(|(p, q)| [(p.clone(), true), (q.clone(), false)]).collect();
    evaluate(model, &factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naturals_word_product() {
        let m = SemigroupModel::abelian(1).unwrap();
        let k = |n| Element::Exponents(vec![n]);
        assert!(word_product(&m, &[(k(1), k(2)), (k(2), k(1))]).is_identity());
        assert!(!word_product(&m, &[(k(0), k(1))]).is_identity());
    }

    #[test]
    fn free_group_reduction() {
        let m = SemigroupModel::free(2).unwrap();
        let w = |s: &str| Element::Word(s.bytes().map(|b| b - b'a').collect());
        assert!(word_product(&m, &[(w("ab"), w("ab"))]).is_identity());
        assert!(!word_product(&m, &[(w("a"), w("b"))]).is_identity());
        // a⁻¹·ab·b⁻¹·e = e
        assert!(word_product(&m, &[(w("a"), w("ab")), (w("b"), w(""))]).is_identity());
    }

    #[test]
    fn affine_group_inverse() {
        let r = RingDescriptor::quadratic(-5).unwrap();
        let m = SemigroupModel::axb(r);
        let x = Element::Affine { b: RingElem::new(1, 1), a: RingElem::new(2, -1) };
        assert!(word_product(&m, &[(x.clone(), x.clone())]).is_identity());
        let y = Element::Affine { b: RingElem::int(3), a: RingElem::int(2) };
        assert!(!word_product(&m, &[(x, y)]).is_identity());
    }

    #[test]
    fn opposite_reverses_products() {
        let m = SemigroupModel::opposite(SemigroupModel::axb(RingDescriptor::Integers));
        let p = Element::Affine { b: RingElem::int(1), a: RingElem::int(2) };
        let q = Element::Affine { b: RingElem::int(0), a: RingElem::int(3) };
        let pq = m.multiply(&p, &q).unwrap();
        // p⁻¹·(p∘q)·q⁻¹... as a word: (p, pq), (q, e)
        let e = m.unit();
        assert!(word_product(&m, &[(p, pq), (q, e)]).is_identity());
    }
}
