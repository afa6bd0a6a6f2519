//! Nonzero ideals of ℤ and of quadratic rings of integers in Hermite
//! normal form, with factorization into prime ideals, principality
//! decisions, the `c⁻¹(aR)` representation and strong-approximation
//! witnesses.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{LabError, Result};
use crate::lattice::{self, Row};
use crate::ring::{fit, isqrt, RingDescriptor, RingElem};

/// A nonzero ideal `aℤ + (b + c·ω)ℤ` with `0 ≤ b < a` and `c > 0`.
///
/// Over ℤ the ideal is `aℤ` and `b = 0`, `c = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingIdeal {
    ring: RingDescriptor,
    a: i64,
    b: i64,
    c: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<(RingIdeal, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalityReport {
    pub principal: bool,
    pub generator: Option<RingElem>,
    /// Largest `|ω-coefficient|` searched; the search is complete up to it.
    pub search_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalRepresentation {
    pub a: RingElem,
    pub c: RingElem,
    /// Number of ring elements whose membership was compared directly.
    pub points_checked: usize,
    pub region_norm: i64,
}

impl RingIdeal {
    pub fn unit(ring: RingDescriptor) -> Self {
        RingIdeal { ring, a: 1, b: 0, c: 1 }
    }

    /// `nℤ` for `n ≠ 0`.
    pub fn integers(n: i64) -> Result<Self> {
        Self::from_generators(RingDescriptor::Integers, &[RingElem::int(n)])
    }

    pub fn principal(ring: RingDescriptor, x: RingElem) -> Result<Self> {
        Self::from_generators(ring, &[x])
    }

    /// The ideal generated by the given ring elements.
    pub fn from_generators(ring: RingDescriptor, gens: &[RingElem]) -> Result<Self> {
        let mut rows: Vec<Row> = Vec::new();
        for g in gens {
            if !ring.contains(g) {
                return Err(LabError::InvalidElement(format!("{g} is not in {ring}")));
            }
            for w in ring.integral_basis() {
                rows.push(ring.coords(ring.mul(*g, w)));
            }
        }
        Self::from_rows(ring, &rows)
    }

    fn from_rows(ring: RingDescriptor, rows: &[Row]) -> Result<Self> {
        let h = lattice::hnf(rows);
        if h.len() != ring.degree() {
            return Err(LabError::Precondition("the zero ideal is excluded".into()));
        }
        Ok(match ring {
            RingDescriptor::Integers => RingIdeal { ring, a: fit(h[0][0]), b: 0, c: 1 },
            RingDescriptor::Quadratic { .. } => RingIdeal {
                ring,
                a: fit(h[1][1]),
                b: fit(h[0][1]),
                c: fit(h[0][0]),
            },
        })
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    /// HNF entries `(a, b, c)`.
    pub fn hnf(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// ℤ-basis `{a, b + c·ω}` (just `{a}` over ℤ).
    pub fn basis(&self) -> Vec<RingElem> {
        match self.ring {
            RingDescriptor::Integers => vec![RingElem::int(self.a)],
            RingDescriptor::Quadratic { .. } => {
                vec![RingElem::int(self.a), RingElem::new(self.b, self.c)]
            }
        }
    }

    fn rows(&self) -> Vec<Row> {
        self.basis().into_iter().map(|x| self.ring.coords(x)).collect()
    }

    pub fn norm(&self) -> i64 {
        self.a * self.c
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        if !self.ring.contains(x) {
            return false;
        }
        match self.ring {
            RingDescriptor::Integers => x.re % self.a == 0,
            RingDescriptor::Quadratic { .. } => {
                if x.om % self.c != 0 {
                    return false;
                }
                let k = (x.om / self.c) as i128;
                (x.re as i128 - k * self.b as i128) % self.a as i128 == 0
            }
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RingIdeal) -> bool {
        self.ring == other.ring && self.basis().iter().all(|x| other.contains(x))
    }

    fn same_ring(&self, other: &RingIdeal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(LabError::RingMismatch)
        }
    }

    pub fn product(&self, other: &RingIdeal) -> Result<RingIdeal> {
        self.same_ring(other)?;
        let mut gens = Vec::new();
        for x in self.basis() {
            for y in other.basis() {
                gens.push(self.ring.mul(x, y));
            }
        }
        Self::from_generators(self.ring, &gens)
    }

    pub fn sum(&self, other: &RingIdeal) -> Result<RingIdeal> {
        self.same_ring(other)?;
        let mut rows = self.rows();
        rows.extend(other.rows());
        Self::from_rows(self.ring, &rows)
    }

    pub fn intersect(&self, other: &RingIdeal) -> Result<RingIdeal> {
        self.same_ring(other)?;
        Self::from_rows(self.ring, &lattice::intersect(&self.rows(), &other.rows()))
    }

    pub fn is_coprime_to(&self, other: &RingIdeal) -> Result<bool> {
        Ok(self.sum(other)?.is_unit())
    }

    pub fn pow(&self, k: u32) -> RingIdeal {
        let mut acc = RingIdeal::unit(self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `x·I`.
    pub fn scale(&self, x: RingElem) -> Result<RingIdeal> {
        let gens: Vec<RingElem> = self.basis().into_iter().map(|y| self.ring.mul(x, y)).collect();
        Self::from_generators(self.ring, &gens)
    }

    /// Pre-image `x⁻¹I = {r : x·r ∈ I}` of the ideal under multiplication
    /// by a nonzero `x`, computed as `(xR ∩ I) / x`.
    pub fn preimage(&self, x: RingElem) -> Result<RingIdeal> {
        let xr = RingIdeal::principal(self.ring, x)?;
        let meet = xr.intersect(self)?;
        let gens = meet
            .basis()
            .into_iter()
            .map(|y| {
                self.ring
                    .div_exact(y, x)
                    .ok_or_else(|| LabError::Verification("xR ∩ I not divisible by x".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(self.ring, &gens)
    }

    /// Canonical residue of `x` modulo the ideal: the representative with
    /// `0 ≤ om < c` and `0 ≤ re < a`.
    pub fn reduce(&self, x: RingElem) -> RingElem {
        match self.ring {
            RingDescriptor::Integers => RingElem::int(x.re.rem_euclid(self.a)),
            RingDescriptor::Quadratic { .. } => {
                let k = x.om.div_euclid(self.c);
                let y = x - RingElem::new(self.b, self.c).scale(k);
                RingElem::new(y.re.rem_euclid(self.a), y.om)
            }
        }
    }

    /// All canonical residues of `R/I`, in lexicographic order.
    pub fn residues(&self) -> impl Iterator<Item = RingElem> + '_ {
        let (a, c) = (self.a, self.c);
        (0..c).flat_map(move |om| (0..a).map(move |re| self.reduce(RingElem::new(re, om))))
    }

    /// Nonzero elements `k₁·a + k₂·(b + cω)` with `|kᵢ| ≤ bound`, sorted by
    /// absolute norm (ties: smaller coordinates, positive first).
    pub fn small_elements(&self, bound: i64) -> Vec<RingElem> {
        let basis = self.basis();
        let mut out = Vec::new();
        let k2_range = if basis.len() == 2 { -bound..=bound } else { 0..=0 };
        for k2 in k2_range {
            for k1 in -bound..=bound {
                let mut x = basis[0].scale(k1);
                if basis.len() == 2 {
                    x = x + basis[1].scale(k2);
                }
                if !x.is_zero() {
                    out.push(x);
                }
            }
        }
        sort_by_size(self.ring, &mut out);
        out
    }
}

pub(crate) fn size_key(ring: RingDescriptor, x: &RingElem) -> (i128, i64, i64, bool, bool) {
    (
        ring.norm(*x).abs(),
        x.re.abs(),
        x.om.abs(),
        x.re < 0,
        x.om < 0,
    )
}

pub(crate) fn sort_by_size(ring: RingDescriptor, xs: &mut [RingElem]) {
    xs.sort_by_key(|x| size_key(ring, x));
}

impl fmt::Display for RingIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring {
            RingDescriptor::Integers => write!(f, "{}Z", self.a),
            RingDescriptor::Quadratic { .. } => {
                write!(f, "({}, {})", self.a, RingElem::new(self.b, self.c))
            }
        }
    }
}

fn rational_prime_divisors(mut n: i64) -> Vec<i64> {
    n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// Decomposition type of the rational prime `p` from the quadratic
/// character of the discriminant. Over ℤ every prime is inert.
pub fn splitting(ring: RingDescriptor, p: i64) -> Splitting {
    if ring == RingDescriptor::Integers {
        return Splitting::Inert;
    }
    let d = ring.discriminant();
    if p == 2 {
        return match d.rem_euclid(8) {
            1 => Splitting::Split,
            5 => Splitting::Inert,
            _ => Splitting::Ramified,
        };
    }
    // Euler's criterion
    let (mut base, mut e, mut acc) = (d.rem_euclid(p) as i128, (p - 1) / 2, 1i128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as i128;
        }
        base = base * base % p as i128;
        e >>= 1;
    }
    match acc {
        0 => Splitting::Ramified,
        1 => Splitting::Split,
        _ => Splitting::Inert,
    }
}

/// Prime ideals lying over the rational prime `p`, via the roots of the
/// minimal polynomial `X² − tX + n` of `ω` modulo `p`.
pub fn primes_above(ring: RingDescriptor, p: i64) -> Vec<RingIdeal> {
    match ring {
        RingDescriptor::Integers => vec![RingIdeal::integers(p).expect("p ≠ 0")],
        RingDescriptor::Quadratic { .. } => {
            let (t, n) = ring.omega_relation();
            let roots: Vec<i64> = (0..p)
                .filter(|r| {
                    let v = *r as i128 * *r as i128 - t as i128 * *r as i128 + n as i128;
                    v.rem_euclid(p as i128) == 0
                })
                .collect();
            if roots.is_empty() {
                return vec![RingIdeal::principal(ring, RingElem::int(p)).expect("p ≠ 0")];
            }
            roots
                .into_iter()
                .map(|r| {
                    RingIdeal::from_generators(ring, &[RingElem::int(p), RingElem::new(-r, 1)])
                        .expect("nonzero")
                })
                .collect()
        }
    }
}

/// Largest `k` with `I ⊆ P^k`.
pub fn valuation(prime: &RingIdeal, ideal: &RingIdeal) -> u32 {
    let mut k = 0;
    let mut power = *prime;
    while ideal.is_subset_of(&power) {
        k += 1;
        power = power.product(prime).expect("same ring");
    }
    k
}

impl PrimeFactorization {
    pub fn product(&self, ring: RingDescriptor) -> RingIdeal {
        self.factors
            .iter()
            .fold(RingIdeal::unit(ring), |acc, (p, e)| {
                acc.product(&p.pow(*e)).expect("same ring")
            })
    }

    pub fn exponent_of(&self, prime: &RingIdeal) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == prime)
            .map_or(0, |(_, e)| *e)
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Prime factorization, checked by recomposition.
pub fn factor(ideal: &RingIdeal) -> Result<PrimeFactorization> {
    let ring = ideal.ring();
    let mut factors = Vec::new();
    for p in rational_prime_divisors(ideal.norm()) {
        for prime in primes_above(ring, p) {
            let v = valuation(&prime, ideal);
            if v > 0 {
                factors.push((prime, v));
            }
        }
    }
    factors.sort_by_key(|(p, _)| (p.norm(), *p));
    let fact = PrimeFactorization { factors };
    if fact.product(ring) != *ideal {
        return Err(LabError::Verification(format!(
            "factorization {fact} does not recompose to {ideal}"
        )));
    }
    Ok(fact)
}

fn unit_search_cap() -> i64 {
    10_000_000
}

/// Smallest `b ≥ 1` admitting a unit `a + bω`, together with that unit.
fn fundamental_unit(ring: RingDescriptor) -> Result<RingElem> {
    let (t, _) = ring.omega_relation();
    let disc = ring.discriminant() as i128;
    for b in 1..=unit_search_cap() {
        for sign in [-4i128, 4] {
            let s2 = disc * b as i128 * b as i128 + sign;
            let s = isqrt(s2);
            if s < 0 || s * s != s2 {
                continue;
            }
            for s in [s, -s] {
                let num = s - t as i128 * b as i128;
                if num % 2 == 0 {
                    let u = RingElem::new(fit(num / 2), b);
                    if ring.is_unit(u) {
                        return Ok(u);
                    }
                }
            }
        }
    }
    Err(LabError::SearchExhausted {
        what: format!("fundamental unit of {ring}"),
        bound: unit_search_cap() as u64,
    })
}

/// Upper bound on `|ω-coefficient|` of some generator of a principal ideal
/// of norm `n`. Integer-only: uses `ε ≤ |u| + |v|·⌈|ω|⌉` for the unit.
fn generator_coefficient_bound(ring: RingDescriptor, n: i64) -> Result<i64> {
    let disc = ring.discriminant() as i128;
    let n = n as i128;
    if disc < 0 {
        return Ok(fit(isqrt(4 * n / -disc) + 1));
    }
    let unit = fundamental_unit(ring)?;
    let (t, _) = ring.omega_relation();
    let omega_ceil = (t.abs() as i128 + isqrt(disc) + 2) / 2 + 1;
    let eps = unit.re.abs() as i128 + unit.om.abs() as i128 * omega_ceil;
    Ok(fit(isqrt(4 * n * eps / disc) + 1))
}

/// Decides whether the ideal is principal by enumerating elements of norm
/// `±N(I)` with bounded `ω`-coefficient. The bound is proven sufficient for
/// both imaginary and real quadratic rings, so a negative answer is exact.
pub fn is_principal(ideal: &RingIdeal) -> Result<PrincipalityReport> {
    let ring = ideal.ring();
    if ring == RingDescriptor::Integers {
        return Ok(PrincipalityReport {
            principal: true,
            generator: Some(RingElem::int(ideal.norm())),
            search_bound: 0,
        });
    }
    let n = ideal.norm() as i128;
    let bound = generator_coefficient_bound(ring, ideal.norm())?;
    let (t, _) = ring.omega_relation();
    let disc = ring.discriminant() as i128;
    let mut candidates = Vec::new();
    for b in -bound..=bound {
        // norm = ((2a + tb)² − D·b²)/4
        for sign in [1i128, -1] {
            let s2 = sign * 4 * n + disc * b as i128 * b as i128;
            let s = isqrt(s2);
            if s < 0 || s * s != s2 {
                continue;
            }
            for s in [s, -s] {
                let num = s - t as i128 * b as i128;
                if num % 2 == 0 {
                    candidates.push(RingElem::new(fit(num / 2), b));
                }
            }
        }
    }
    sort_by_size(ring, &mut candidates);
    for x in candidates {
        if ideal.contains(&x) && RingIdeal::principal(ring, x)? == *ideal {
            return Ok(PrincipalityReport {
                principal: true,
                generator: Some(x),
                search_bound: bound,
            });
        }
    }
    Ok(PrincipalityReport {
        principal: false,
        generator: None,
        search_bound: bound,
    })
}

const ELEMENT_SEARCH_BOUND: i64 = 40;

/// Checks `{x ∈ R : c·x ∈ aR} = I` exactly (as ideals) and by direct
/// membership comparison on all ring elements of absolute norm at most
/// `region_norm` (boxed by coordinates for real quadratic rings).
pub fn verify_fractional_representation(
    ideal: &RingIdeal,
    a: RingElem,
    c: RingElem,
    region_norm: i64,
) -> Result<usize> {
    let ring = ideal.ring();
    if a.is_zero() || c.is_zero() {
        return Err(LabError::Verification("a and c must be nonzero".into()));
    }
    let ar = RingIdeal::principal(ring, a)?;
    let pre = ar.preimage(c)?;
    if pre != *ideal {
        return Err(LabError::Verification(format!(
            "c⁻¹(aR) = {pre}, expected {ideal} (a = {a}, c = {c})"
        )));
    }
    let k = isqrt(4 * region_norm as i128) as i64 + 1;
    let om_range = if ring.degree() == 2 { -k..=k } else { 0..=0 };
    let mut checked = 0;
    for om in om_range {
        for re in -k..=k {
            let x = RingElem::new(re, om);
            if ring.norm(x).abs() > region_norm as i128 {
                continue;
            }
            checked += 1;
            if ideal.contains(&x) != ar.contains(&ring.mul(c, x)) {
                return Err(LabError::Verification(format!(
                    "membership of {x} differs between I and c⁻¹(aR)"
                )));
            }
        }
    }
    Ok(checked)
}

fn exact_valuations(x: RingElem, targets: &[(RingIdeal, u32)]) -> bool {
    targets.iter().all(|(p, v)| {
        p.pow(*v).contains(&x) && !p.pow(v + 1).contains(&x)
    })
}

/// Finds `a, c` with `I = c⁻¹(aR)`.
///
/// `a` is the smallest element of `I` with `aR = I·I_a` and `I_a` coprime
/// to the primes of `I`; `c` is the smallest element of `I_a` with
/// `cR = I_a·I_c`, `I_c` coprime to `I_a` and to the primes of `I`. The
/// pair is verified before it is returned.
pub fn fractional_representation(ideal: &RingIdeal) -> Result<FractionalRepresentation> {
    const REGION_NORM: i64 = 100;
    let ring = ideal.ring();
    let own = factor(ideal)?.factors;
    let a = ideal
        .small_elements(ELEMENT_SEARCH_BOUND)
        .into_iter()
        .find(|x| exact_valuations(*x, &own))
        .ok_or(LabError::SearchExhausted {
            what: format!("element a of {ideal} with exact valuations"),
            bound: ELEMENT_SEARCH_BOUND as u64,
        })?;
    let a_fact = factor(&RingIdeal::principal(ring, a)?)?;
    let cofactor: Vec<(RingIdeal, u32)> = a_fact
        .factors
        .iter()
        .filter(|(p, _)| own.iter().all(|(q, _)| q != p))
        .cloned()
        .collect();
    let i_a = PrimeFactorization { factors: cofactor.clone() }.product(ring);
    let mut conditions = cofactor.clone();
    conditions.extend(own.iter().map(|(p, _)| (*p, 0)));
    let c = i_a
        .small_elements(ELEMENT_SEARCH_BOUND)
        .into_iter()
        .find(|x| exact_valuations(*x, &conditions))
        .ok_or(LabError::SearchExhausted {
            what: format!("element c of {i_a} coprime to the primes of {ideal}"),
            bound: ELEMENT_SEARCH_BOUND as u64,
        })?;
    let points_checked = verify_fractional_representation(ideal, a, c, REGION_NORM)?;
    Ok(FractionalRepresentation {
        a,
        c,
        points_checked,
        region_norm: REGION_NORM,
    })
}

/// An element `x ∈ I` lying in none of the listed subideals, or `None`
/// when one of them equals `I`.
///
/// The search runs over a complete residue system modulo
/// `Q = ∏ Pᵢ^(νᵢ+1) · ∏ P_j` (primes of `I` with their exponents, then the
/// remaining primes of the subideals) and accepts the first residue with
/// `x ∈ Pᵢ^νᵢ ∖ Pᵢ^(νᵢ+1)` and `x ∉ P_j`. Such a residue always exists.
pub fn strong_approx_witness(
    ideal: &RingIdeal,
    subideals: &[RingIdeal],
) -> Result<Option<RingElem>> {
    let ring = ideal.ring();
    for s in subideals {
        ideal.same_ring(s)?;
        if !s.is_subset_of(ideal) {
            return Err(LabError::Precondition(format!("{s} is not contained in {ideal}")));
        }
    }
    if subideals.iter().any(|s| s == ideal) {
        return Ok(None);
    }
    let own = factor(ideal)?.factors;
    let mut others: BTreeSet<RingIdeal> = BTreeSet::new();
    for s in subideals {
        for (p, _) in factor(s)?.factors {
            if own.iter().all(|(q, _)| *q != p) {
                others.insert(p);
            }
        }
    }
    let mut modulus = RingIdeal::unit(ring);
    for (p, v) in &own {
        modulus = modulus.product(&p.pow(v + 1))?;
    }
    for p in &others {
        modulus = modulus.product(p)?;
    }
    let mut conditions = own.clone();
    conditions.extend(others.iter().map(|p| (*p, 0)));

    let (ma, _, _) = modulus.hnf();
    let shift = modulus.basis().last().copied().expect("nonempty basis");
    let mut residues: Vec<RingElem> = modulus
        .residues()
        .map(|x| {
            // smallest representative among a few translates
            let mut cands = vec![x, x - RingElem::int(ma)];
            if ring.degree() == 2 {
                let y = x - shift;
                cands.push(y);
                cands.push(y - RingElem::int(ma));
                cands.push(y + RingElem::int(ma));
            }
            cands.into_iter().min_by_key(|y| size_key(ring, y)).expect("nonempty")
        })
        .collect();
    sort_by_size(ring, &mut residues);
    for x in residues {
        if exact_valuations(x, &conditions) {
            if subideals.iter().any(|s| s.contains(&x)) || !ideal.contains(&x) {
                return Err(LabError::Verification(format!(
                    "approximation element {x} violates the covering conditions"
                )));
            }
            return Ok(Some(x));
        }
    }
    // Not reachable for Dedekind rings; kept as a bounded fallback.
    Ok(ideal
        .small_elements(ELEMENT_SEARCH_BOUND)
        .into_iter()
        .find(|x| subideals.iter().all(|s| !s.contains(x))))
}

/// Embedding of rings used by the functoriality checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingEmbedding {
    Identity,
    /// ℤ into a quadratic ring, sending 1 to 1.
    IntegersInto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessCheck {
    pub condition: char,
    pub ideals: Vec<RingIdeal>,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessReport {
    pub checks: Vec<FlatnessCheck>,
}

impl FlatnessReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks, for every test ideal `I` and pair `I, J`:
/// (a) `φ(I)S ∩ φ(R) = φ(I)` and (b) `φ(I)S ∩ φ(J)S = φ(I ∩ J)S`.
pub fn check_flatness_conditions(
    source: RingDescriptor,
    target: RingDescriptor,
    embedding: RingEmbedding,
    test_ideals: &[RingIdeal],
) -> Result<FlatnessReport> {
    match embedding {
        RingEmbedding::Identity if source == target => {}
        RingEmbedding::IntegersInto if source == RingDescriptor::Integers => {}
        _ => {
            return Err(LabError::Unsupported(format!(
                "embedding {embedding:?} from {source} into {target}"
            )))
        }
    }
    for i in test_ideals {
        if i.ring() != source {
            return Err(LabError::RingMismatch);
        }
    }
    let extend = |i: &RingIdeal| RingIdeal::from_generators(target, &i.basis());
    // φ(R) ∩ J, pulled back to R
    let contract = |j: &RingIdeal| -> Result<RingIdeal> {
        match embedding {
            RingEmbedding::Identity => Ok(*j),
            RingEmbedding::IntegersInto => RingIdeal::integers(j.hnf().0),
        }
    };
    let mut checks = Vec::new();
    for i in test_ideals {
        let back = contract(&extend(i)?)?;
        let holds = back == *i;
        checks.push(FlatnessCheck {
            condition: 'a',
            ideals: vec![*i],
            holds,
            witness: (!holds).then(|| format!("(φ(I)S) ∩ φ(R) = {back}")),
        });
    }
    for (k, i) in test_ideals.iter().enumerate() {
        for j in &test_ideals[k + 1..] {
            let lhs = extend(i)?.intersect(&extend(j)?)?;
            let rhs = extend(&i.intersect(j)?)?;
            let holds = lhs == rhs;
            checks.push(FlatnessCheck {
                condition: 'b',
                ideals: vec![*i, *j],
                holds,
                witness: (!holds).then(|| format!("{lhs} ≠ {rhs}")),
            });
        }
    }
    Ok(FlatnessReport { checks })
}

#[cfg(test)]
mod tests {
    #[test]
    fn splitting_matches_primes_above() {
        for d in [-5, -1, 2, 3, 5, -3, 13] {
            let r = RingDescriptor::quadratic(d).unwrap();
            for p in [2, 3, 5, 7, 11, 13] {
                let above = primes_above(r, p);
                let expect = match (above.len(), above[0].norm()) {
                    (2, _) => Splitting::Split,
                    (1, n) if n == p => Splitting::Ramified,
                    _ => Splitting::Inert,
                };
                assert_eq!(splitting(r, p), expect, "d = {d}, p = {p}");
            }
        }
    }

    use super::*;

    fn zi(n: i64) -> RingIdeal {
        RingIdeal::integers(n).unwrap()
    }

    fn r5() -> RingDescriptor {
        RingDescriptor::quadratic(-5).unwrap()
    }

    fn p2() -> RingIdeal {
        RingIdeal::from_generators(r5(), &[RingElem::int(2), RingElem::new(1, 1)]).unwrap()
    }

    fn p3() -> RingIdeal {
        RingIdeal::from_generators(r5(), &[RingElem::int(3), RingElem::new(1, 1)]).unwrap()
    }

    #[test]
    fn integer_ideal_arithmetic() {
        assert_eq!(zi(2).product(&zi(3)).unwrap(), zi(6));
        assert_eq!(zi(4).intersect(&zi(6)).unwrap(), zi(12));
        assert_eq!(zi(2).intersect(&zi(2)).unwrap(), zi(2));
        assert_eq!(zi(4).sum(&zi(6)).unwrap(), zi(2));
        assert_eq!(zi(-6), zi(6));
        assert!(RingIdeal::integers(0).is_err());
    }

    #[test]
    fn p2_squared_is_two() {
        let two = RingIdeal::principal(r5(), RingElem::int(2)).unwrap();
        assert_eq!(p2().product(&p2()).unwrap(), two);
        assert_eq!(p2().hnf(), (2, 1, 1));
        assert_eq!(p2().norm(), 2);
    }

    #[test]
    fn unit_ideal_is_neutral() {
        let r = RingIdeal::unit(r5());
        assert_eq!(p3().product(&r).unwrap(), p3());
        assert_eq!(zi(5).product(&RingIdeal::unit(RingDescriptor::Integers)).unwrap(), zi(5));
    }

    #[test]
    fn coprime_intersection_is_product() {
        let meet = p2().intersect(&p3()).unwrap();
        assert_eq!(meet, p2().product(&p3()).unwrap());
        assert!(p2().is_coprime_to(&p3()).unwrap());
        assert_eq!(meet, RingIdeal::principal(r5(), RingElem::new(1, 1)).unwrap());
    }

    #[test]
    fn ring_mismatch() {
        assert_eq!(zi(2).product(&p2()), Err(LabError::RingMismatch));
    }

    #[test]
    fn principality() {
        let rep = is_principal(&p2()).unwrap();
        assert!(!rep.principal);
        let two = RingIdeal::principal(r5(), RingElem::int(2)).unwrap();
        let rep = is_principal(&two).unwrap();
        assert!(rep.principal);
        assert_eq!(rep.generator, Some(RingElem::int(2)));
        assert!(is_principal(&zi(7)).unwrap().principal);
    }

    #[test]
    fn principality_real_quadratic() {
        // Q(sqrt(10)) has class number 2: (2, √10) is not principal
        let r = RingDescriptor::quadratic(10).unwrap();
        let p = RingIdeal::from_generators(r, &[RingElem::int(2), RingElem::new(0, 1)]).unwrap();
        assert!(!is_principal(&p).unwrap().principal);
        // Q(sqrt(2)) is a PID; 7 = (3+√2)(3-√2)
        let r = RingDescriptor::quadratic(2).unwrap();
        let p = RingIdeal::from_generators(r, &[RingElem::int(7), RingElem::new(3, 1)]).unwrap();
        let rep = is_principal(&p).unwrap();
        assert!(rep.principal);
        assert_eq!(r.norm(rep.generator.unwrap()).abs(), 7);
    }

    #[test]
    fn factorizations() {
        let f = factor(&zi(12)).unwrap();
        assert_eq!(f.factors, vec![(zi(2), 2), (zi(3), 1)]);
        let two = RingIdeal::principal(r5(), RingElem::int(2)).unwrap();
        assert_eq!(factor(&two).unwrap().factors, vec![(p2(), 2)]);
        let g = RingIdeal::principal(r5(), RingElem::new(1, 1)).unwrap();
        assert_eq!(factor(&g).unwrap().factors, vec![(p2(), 1), (p3(), 1)]);
        assert!(factor(&RingIdeal::unit(r5())).unwrap().factors.is_empty());
    }

    #[test]
    fn inert_prime_in_gaussian_integers() {
        let r = RingDescriptor::quadratic(-1).unwrap();
        let three = RingIdeal::principal(r, RingElem::int(3)).unwrap();
        assert_eq!(factor(&three).unwrap().factors, vec![(three, 1)]);
        assert_eq!(primes_above(r, 5).len(), 2);
        assert_eq!(primes_above(r, 2).len(), 1);
    }

    #[test]
    fn fractional_representation_examples() {
        let rep = fractional_representation(&zi(6)).unwrap();
        assert_eq!((rep.a, rep.c), (RingElem::int(6), RingElem::ONE));
        let rep = fractional_representation(&zi(4)).unwrap();
        assert_eq!((rep.a, rep.c), (RingElem::int(4), RingElem::ONE));
        let rep = fractional_representation(&p2()).unwrap();
        assert!(rep.points_checked > 0);
        verify_fractional_representation(&p2(), rep.a, rep.c, 100).unwrap();
        // the pair (2, 1+√-5) also represents P₂
        verify_fractional_representation(&p2(), RingElem::int(2), RingElem::new(1, 1), 100)
            .unwrap();
        assert!(verify_fractional_representation(&p2(), RingElem::int(2), RingElem::ONE, 100)
            .is_err());
    }

    #[test]
    fn strong_approximation_examples() {
        assert_eq!(
            strong_approx_witness(&zi(2), &[zi(4), zi(6)]).unwrap(),
            Some(RingElem::int(2))
        );
        let z = RingIdeal::unit(RingDescriptor::Integers);
        assert_eq!(
            strong_approx_witness(&z, &[zi(2), zi(3), zi(5)]).unwrap(),
            Some(RingElem::ONE)
        );
        assert_eq!(strong_approx_witness(&zi(2), &[zi(4), zi(2)]).unwrap(), None);
        let two = RingIdeal::principal(r5(), RingElem::int(2)).unwrap();
        let p2p3 = p2().product(&p3()).unwrap();
        let x = strong_approx_witness(&p2(), &[two, p2p3]).unwrap().unwrap();
        assert_eq!(valuation(&p2(), &RingIdeal::principal(r5(), x).unwrap()), 1);
        assert_eq!(valuation(&p3(), &RingIdeal::principal(r5(), x).unwrap()), 0);
        assert!(strong_approx_witness(&zi(4), &[zi(2)]).is_err());
    }

    #[test]
    fn flatness_examples() {
        let gauss = RingDescriptor::quadratic(-1).unwrap();
        let rep = check_flatness_conditions(
            RingDescriptor::Integers,
            gauss,
            RingEmbedding::IntegersInto,
            &[zi(2), zi(3)],
        )
        .unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.checks.len(), 3);
        let rep = check_flatness_conditions(
            RingDescriptor::Integers,
            RingDescriptor::Integers,
            RingEmbedding::Identity,
            &[zi(4), zi(6)],
        )
        .unwrap();
        assert!(rep.all_hold());
        assert!(check_flatness_conditions(gauss, RingDescriptor::Integers, RingEmbedding::IntegersInto, &[])
            .is_err());
    }

    #[test]
    fn preimage_and_residues() {
        // (1+√-5)⁻¹(2R) = P₂
        let two = RingIdeal::principal(r5(), RingElem::int(2)).unwrap();
        assert_eq!(two.preimage(RingElem::new(1, 1)).unwrap(), p2());
        assert_eq!(zi(6).preimage(RingElem::int(4)).unwrap(), zi(3));
        assert_eq!(p2().residues().count(), 2);
        assert_eq!(zi(5).reduce(RingElem::int(-3)), RingElem::int(2));
    }
}
