//! Text forms for models, elements, rings, ring ideals and rationals.
//!
//! Models: `free:2`, `abelian:3`, `numerical:2,3`, `axb:Z`,
//! `axb:Q(sqrt(-5))`, `op(<model>)`. Elements use the `Display` forms:
//! `ab` or `e`, `(1,0)`, `5`, `(b,a)` with ring elements like `1+w`.
//! Ideals: `6Z` or `6` over ℤ, `(g1,g2,…)` in general.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{LabError, Result};
use crate::ring::{RingDescriptor, RingElem};
use crate::ring_ideals::RingIdeal;
use crate::semigroup::{Element, ModelKind, SemigroupModel};

fn err(what: &str, s: &str) -> LabError {
    LabError::Parse(format!("{what}: {s:?}"))
}

fn strip(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| err(what, s))
}

/// Splits at commas outside parentheses.
pub fn split_top(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(err("unbalanced parentheses", s));
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(err("unbalanced parentheses", s));
    }
    out.push(cur);
    Ok(out)
}

fn unwrap_parens(s: &str) -> Option<&str> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0;
    for ch in inner.chars() {
        match ch {
            '(' => depth += 1,
            ')' if depth == 0 => return None,
            ')' => depth -= 1,
            _ => {}
        }
    }
    Some(inner)
}

/// `Z` or `Q(sqrt(d))`.
pub fn parse_ring(s: &str) -> Result<RingDescriptor> {
    let t = strip(s);
    if t == "Z" {
        return Ok(RingDescriptor::Integers);
    }
    let d = t
        .strip_prefix("Q(sqrt(")
        .and_then(|r| r.strip_suffix("))"))
        .ok_or_else(|| err("expected Z or Q(sqrt(d))", s))?;
    RingDescriptor::quadratic(parse_int(d, "radicand")?)
}

pub fn parse_model(s: &str) -> Result<SemigroupModel> {
    let t = strip(s);
    if let Some(inner) = t.strip_prefix("op(").and_then(|r| r.strip_suffix(')')) {
        return Ok(SemigroupModel::opposite(parse_model(inner)?));
    }
    let (kind, arg) = t.split_once(':').ok_or_else(|| err("expected <kind>:<args>", s))?;
    match kind {
        "free" => SemigroupModel::free(parse_int(arg, "rank")?),
        "abelian" => SemigroupModel::abelian(parse_int(arg, "rank")?),
        "numerical" => {
            let gens = arg.split(',').map(|g| parse_int(g, "generator")).collect::<Result<Vec<u64>>>()?;
            SemigroupModel::numerical(&gens)
        }
        "axb" => Ok(SemigroupModel::axb(parse_ring(arg)?)),
        _ => Err(err("unknown model kind", kind)),
    }
}

/// `a + b·w` written as a signed sum of integer and `w` terms, e.g.
/// `1+w`, `-2w`, `3-w`.
pub fn parse_ring_elem(ring: RingDescriptor, s: &str) -> Result<RingElem> {
    let t = strip(s);
    if t.is_empty() {
        return Err(err("empty ring element", s));
    }
    let (mut re, mut om) = (0i64, 0i64);
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (is_w, digits) = match body.strip_suffix('w') {
            Some(c) => (true, c.strip_suffix('*').unwrap_or(c)),
            None => (false, body),
        };
        let v: i64 = if is_w && digits.is_empty() { 1 } else { parse_int(digits, "ring element")? };
        let v = if neg { -v } else { v };
        if is_w {
            om += v;
        } else {
            re += v;
        }
    }
    let x = RingElem::new(re, om);
    if !ring.contains(&x) {
        return Err(err("w is not available over Z", s));
    }
    Ok(x)
}

pub fn parse_element(model: &SemigroupModel, s: &str) -> Result<Element> {
    let t = strip(s);
    let (base, _) = model.base();
    let x = match base.kind() {
        ModelKind::FreeMonoid { .. } if t == "e" || t == "ε" => Element::Word(Vec::new()),
        ModelKind::FreeMonoid { .. } => {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(err("expected a word over a, b, …", s));
            }
            Element::Word(t.bytes().map(|b| b - b'a').collect())
        }
        ModelKind::FreeAbelianMonoid { .. } => {
            let inner = unwrap_parens(&t).unwrap_or(&t);
            let v = inner.split(',').map(|x| parse_int(x, "exponent")).collect::<Result<Vec<u32>>>()?;
            Element::Exponents(v)
        }
        ModelKind::Numerical(_) => Element::Integer(parse_int(&t, "integer")?),
        ModelKind::Axb(r) => {
            let inner = unwrap_parens(&t).ok_or_else(|| err("expected (b,a)", s))?;
            let parts = split_top(inner)?;
            let [b, a] = parts.as_slice() else { return Err(err("expected (b,a)", s)) };
            Element::Affine { b: parse_ring_elem(*r, b)?, a: parse_ring_elem(*r, a)? }
        }
        ModelKind::Opposite(_) => unreachable!("base strips opposites"),
    };
    model.check(&x)?;
    Ok(x)
}

/// Comma-separated elements; tuple elements keep their parentheses.
pub fn parse_elements(model: &SemigroupModel, s: &str) -> Result<Vec<Element>> {
    let t = strip(s);
    if matches!(model.base().0.kind(), ModelKind::FreeAbelianMonoid { rank: 1 }) && !t.contains('(') {
        return t.split(',').map(|x| parse_element(model, x)).collect();
    }
    split_top(&t)?.iter().map(|x| parse_element(model, x)).collect()
}

/// `nZ` or `n` over ℤ; `(g1,g2,…)` over any ring.
pub fn parse_ideal(ring: RingDescriptor, s: &str) -> Result<RingIdeal> {
    let t = strip(s);
    let gens: Vec<RingElem> = match unwrap_parens(&t) {
        Some(inner) => split_top(inner)?.iter().map(|g| parse_ring_elem(ring, g)).collect::<Result<_>>()?,
        None => vec![parse_ring_elem(ring, t.strip_suffix('Z').unwrap_or(&t))?],
    };
    RingIdeal::from_generators(ring, &gens)
}

/// `a/b` or `a`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = strip(s);
    let (n, d) = t.split_once('/').unwrap_or((&t, "1"));
    let n: BigInt = parse_int(n, "numerator")?;
    let d: BigInt = parse_int(d, "denominator")?;
    if d.is_zero() {
        return Err(err("zero denominator", s));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn models_round_trip() {
        for s in ["free:2", "abelian:3", "numerical:2,3", "axb:Z", "axb:Q(sqrt(-5))", "op(axb:Z)", "op(free:2)"] {
            assert_eq!(parse_model(s).unwrap().to_string(), s);
        }
        assert!(parse_model("free:0").is_err());
        assert!(parse_model("numerical:2,4").is_err());
        assert!(parse_model("group:2").is_err());
    }

    #[test]
    fn ring_elements() {
        let r = RingDescriptor::quadratic(-5).unwrap();
        assert_eq!(parse_ring_elem(r, "1+w").unwrap(), RingElem::new(1, 1));
        assert_eq!(parse_ring_elem(r, "-2w").unwrap(), RingElem::new(0, -2));
        assert_eq!(parse_ring_elem(r, "3-w").unwrap(), RingElem::new(3, -1));
        assert!(parse_ring_elem(RingDescriptor::Integers, "w").is_err());
    }

    #[test]
    fn elements() {
        let m = parse_model("axb:Q(sqrt(-5))").unwrap();
        let x = parse_element(&m, "(1+w, 2)").unwrap();
        assert_eq!(x.to_string(), "(1+w,2)");
        assert!(parse_element(&m, "(1,0)").is_err());
        let f = parse_model("free:2").unwrap();
        assert_eq!(parse_element(&f, "e").unwrap(), Element::Word(vec![]));
        assert!(parse_element(&f, "ac").is_err());
        let a = parse_model("abelian:2").unwrap();
        assert_eq!(parse_elements(&a, "(1,0),(0,1)").unwrap().len(), 2);
        let n = parse_model("abelian:1").unwrap();
        assert_eq!(parse_elements(&n, "1,2").unwrap().len(), 2);
    }

    #[test]
    fn ideals_and_rationals() {
        let r = RingDescriptor::quadratic(-5).unwrap();
        assert_eq!(parse_ideal(r, "(2, 1+w)").unwrap().norm(), 2);
        assert_eq!(parse_ideal(RingDescriptor::Integers, "6Z").unwrap().norm(), 6);
        assert_eq!(parse_rational("2/20").unwrap(), BigRational::new(1.into(), 10.into()));
        assert!(parse_rational("1/0").is_err());
    }
}
