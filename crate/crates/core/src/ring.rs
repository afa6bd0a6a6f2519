//! Rings of integers of ℤ and of quadratic fields.
//!
//! A quadratic ring `Q(sqrt(d))` is represented on the integral basis
//! `{1, ω}` with `ω = sqrt(d)` when `d ≢ 1 (mod 4)` and `ω = (1 + sqrt(d))/2`
//! otherwise. In both cases `ω² = t·ω − n` for the integers returned by
//! [`RingDescriptor::omega_relation`].
//!
//! Arithmetic is exact on `i64` coordinates with `i128` intermediates; an
//! overflow panics rather than wrapping.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    Integers,
    Quadratic { d: i64 },
}

/// An element `re + om·ω`. Over ℤ, `om` is always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElem {
    pub re: i64,
    pub om: i64,
}

pub(crate) fn fit(v: i128) -> i64 {
    i64::try_from(v).expect("ring arithmetic overflowed i64")
}

pub(crate) fn is_squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Integer square root of a nonnegative number.
pub(crate) fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl RingElem {
    pub const ZERO: RingElem = RingElem { re: 0, om: 0 };
    pub const ONE: RingElem = RingElem { re: 1, om: 0 };

    pub fn new(re: i64, om: i64) -> Self {
        RingElem { re, om }
    }

    pub fn int(re: i64) -> Self {
        RingElem { re, om: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.om == 0
    }

    pub fn scale(self, k: i64) -> Self {
        RingElem::new(
            fit(self.re as i128 * k as i128),
            fit(self.om as i128 * k as i128),
        )
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, o: RingElem) -> RingElem {
        RingElem::new(
            self.re.checked_add(o.re).expect("ring arithmetic overflowed i64"),
            self.om.checked_add(o.om).expect("ring arithmetic overflowed i64"),
        )
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, o: RingElem) -> RingElem {
        RingElem::new(
            self.re.checked_sub(o.re).expect("ring arithmetic overflowed i64"),
            self.om.checked_sub(o.om).expect("ring arithmetic overflowed i64"),
        )
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::new(-self.re, -self.om)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.om) {
            (re, 0) => write!(f, "{re}"),
            (0, om) => write!(f, "{}w", coeff(om)),
            (re, om) if om < 0 => write!(f, "{re}-{}w", coeff(-om)),
            (re, om) => write!(f, "{re}+{}w", coeff(om)),
        }
    }
}

fn coeff(c: i64) -> String {
    match c {
        1 => String::new(),
        -1 => "-".to_string(),
        c => c.to_string(),
    }
}

impl RingDescriptor {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(LabError::Parse(format!(
                "Q(sqrt({d})) needs a squarefree d different from 0 and 1"
            )));
        }
        Ok(RingDescriptor::Quadratic { d })
    }

    /// Rank of the ring as a ℤ-module.
    pub fn degree(&self) -> usize {
        match self {
            RingDescriptor::Integers => 1,
            RingDescriptor::Quadratic { .. } => 2,
        }
    }

    /// `(t, n)` with `ω² = t·ω − n`.
    pub fn omega_relation(&self) -> (i64, i64) {
        match *self {
            RingDescriptor::Integers => (0, 0),
            RingDescriptor::Quadratic { d } if d.rem_euclid(4) == 1 => (1, (1 - d) / 4),
            RingDescriptor::Quadratic { d } => (0, -d),
        }
    }

    pub fn discriminant(&self) -> i64 {
        match *self {
            RingDescriptor::Integers => 1,
            RingDescriptor::Quadratic { d } if d.rem_euclid(4) == 1 => d,
            RingDescriptor::Quadratic { d } => 4 * d,
        }
    }

    pub fn is_imaginary(&self) -> bool {
        matches!(*self, RingDescriptor::Quadratic { d } if d < 0)
    }

    pub fn omega(&self) -> RingElem {
        RingElem::new(0, 1)
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        self.degree() == 2 || x.om == 0
    }

    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        let (t, n) = self.omega_relation();
        let (a, b, c, e) = (x.re as i128, x.om as i128, y.re as i128, y.om as i128);
        let be = b * e;
        RingElem::new(
            fit(a * c - n as i128 * be),
            fit(a * e + b * c + t as i128 * be),
        )
    }

    /// Signed field norm.
    pub fn norm(&self, x: RingElem) -> i128 {
        let (t, n) = self.omega_relation();
        let (a, b) = (x.re as i128, x.om as i128);
        match self {
            RingDescriptor::Integers => a,
            RingDescriptor::Quadratic { .. } => a * a + t as i128 * a * b + n as i128 * b * b,
        }
    }

    pub fn conj(&self, x: RingElem) -> RingElem {
        let (t, _) = self.omega_relation();
        match self {
            RingDescriptor::Integers => x,
            RingDescriptor::Quadratic { .. } => {
                RingElem::new(fit(x.re as i128 + t as i128 * x.om as i128), -x.om)
            }
        }
    }

    /// `x / y` when the quotient lies in the ring.
    pub fn div_exact(&self, x: RingElem, y: RingElem) -> Option<RingElem> {
        if y.is_zero() {
            return None;
        }
        match self {
            RingDescriptor::Integers => {
                if x.re % y.re == 0 {
                    Some(RingElem::int(x.re / y.re))
                } else {
                    None
                }
            }
            RingDescriptor::Quadratic { .. } => {
                let (t, n) = self.omega_relation();
                let yc = self.conj(y);
                // x * conj(y) with i128 to avoid intermediate overflow
                let (a, b, c, e) = (x.re as i128, x.om as i128, yc.re as i128, yc.om as i128);
                let be = b * e;
                let re = a * c - n as i128 * be;
                let om = a * e + b * c + t as i128 * be;
                let nm = self.norm(y);
                if re % nm == 0 && om % nm == 0 {
                    Some(RingElem::new(fit(re / nm), fit(om / nm)))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_unit(&self, x: RingElem) -> bool {
        self.norm(x).abs() == 1
    }

    /// Coordinates used by the lattice routines: `[om, re]` for quadratic
    /// rings so that echelon form puts the ℤ-part last, `[re]` over ℤ.
    pub(crate) fn coords(&self, x: RingElem) -> Vec<i128> {
        match self {
            RingDescriptor::Integers => vec![x.re as i128],
            RingDescriptor::Quadratic { .. } => vec![x.om as i128, x.re as i128],
        }
    }

    pub(crate) fn elem_from_coords(&self, v: &[i128]) -> RingElem {
        match self {
            RingDescriptor::Integers => RingElem::int(fit(v[0])),
            RingDescriptor::Quadratic { .. } => RingElem::new(fit(v[1]), fit(v[0])),
        }
    }

    /// `{1}` over ℤ, `{1, ω}` otherwise.
    pub fn integral_basis(&self) -> Vec<RingElem> {
        match self {
            RingDescriptor::Integers => vec![RingElem::ONE],
            RingDescriptor::Quadratic { .. } => vec![RingElem::ONE, self.omega()],
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}
