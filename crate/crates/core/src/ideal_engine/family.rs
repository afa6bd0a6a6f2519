use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{IdealEngine, RightIdeal};
use crate::error::Result;
use crate::semigroup::{Element, SemigroupModel};

/// How an ideal first entered the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    Seed,
    LeftMult { p: Element, of: RightIdeal },
    Preimage { p: Element, of: RightIdeal },
    Intersection(RightIdeal, RightIdeal),
    Union(RightIdeal, RightIdeal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyOptions {
    /// Number of closure rounds.
    pub depth: usize,
    pub union_closed: bool,
    /// Close under pairwise intersections. Turning this off yields the
    /// ideals reachable by left multiplications and pre-images alone.
    pub intersections: bool,
    /// Expansion stops (incomplete) once the family exceeds this size.
    pub max_ideals: usize,
}

impl FamilyOptions {
    pub fn new(depth: usize) -> Self {
        FamilyOptions { depth, union_closed: false, intersections: true, max_ideals: 20_000 }
    }

    pub fn union_closed(mut self, yes: bool) -> Self {
        self.union_closed = yes;
        self
    }

    pub fn intersections(mut self, yes: bool) -> Self {
        self.intersections = yes;
        self
    }
}

/// Constructible right ideals reachable from `{P, ∅}` within a number of
/// closure rounds.
#[derive(Debug, Clone)]
pub struct ConstructibleFamily {
    engine: IdealEngine,
    ideals: BTreeMap<RightIdeal, TraceStep>,
    options: FamilyOptions,
    complete: bool,
    rounds: usize,
}

impl ConstructibleFamily {
    /// Closure of `{P, ∅}` under left multiplication and pre-images by the
    /// generators and pairwise intersections (and unions when requested).
    ///
    /// Each round applies the operations to the ideals found in the
    /// previous round. `complete` is set when a round adds nothing, which
    /// certifies a fixed point.
    pub fn compute(model: &SemigroupModel, options: FamilyOptions) -> Result<Self> {
        let engine = IdealEngine::new(model)?;
        let mut ideals = BTreeMap::new();
        ideals.insert(engine.full(), TraceStep::Seed);
        ideals.insert(RightIdeal::Empty, TraceStep::Seed);
        let mut frontier: Vec<RightIdeal> = ideals.keys().cloned().collect();
        let gens = model.generators().to_vec();
        let mut complete = false;
        let mut rounds = 0;
        while rounds < options.depth && ideals.len() <= options.max_ideals {
            rounds += 1;
            let mut candidates: Vec<(RightIdeal, TraceStep)> = frontier
                .par_iter()
                .flat_map_iter(|x| {
                    let mut out = Vec::with_capacity(2 * gens.len());
                    for g in &gens {
                        out.push((engine.lm(g, x), TraceStep::LeftMult { p: g.clone(), of: x.clone() }));
                        out.push((engine.pre(g, x), TraceStep::Preimage { p: g.clone(), of: x.clone() }));
                    }
                    out
                })
                .collect();
            if options.intersections || options.union_closed {
                let in_frontier: BTreeSet<&RightIdeal> = frontier.iter().collect();
                let all: Vec<&RightIdeal> = ideals.keys().collect();
                let mut pairs: Vec<(&RightIdeal, &RightIdeal)> = Vec::new();
                for x in &frontier {
                    for y in &all {
                        if !(in_frontier.contains(*y) && *y < x) {
                            pairs.push((x, *y));
                        }
                    }
                }
                let more: Vec<(RightIdeal, TraceStep)> = pairs
                    .par_iter()
                    .flat_map_iter(|(x, y)| {
                        let mut out = Vec::with_capacity(2);
                        if options.intersections {
                            out.push((
                                engine.meet(x, y),
                                TraceStep::Intersection((*x).clone(), (*y).clone()),
                            ));
                        }
                        if options.union_closed {
                            out.push((
                                engine.make_union(vec![(*x).clone(), (*y).clone()]),
                                TraceStep::Union((*x).clone(), (*y).clone()),
                            ));
                        }
                        out
                    })
                    .collect();
                candidates.extend(more);
            }
            let mut next = Vec::new();
            for (ideal, step) in candidates {
                if !ideals.contains_key(&ideal) {
                    ideals.insert(ideal.clone(), step);
                    next.push(ideal);
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            next.sort();
            frontier = next;
        }
        Ok(ConstructibleFamily { engine, ideals, options, complete, rounds })
    }

    pub fn engine(&self) -> &IdealEngine {
        &self.engine
    }

    pub fn model(&self) -> &SemigroupModel {
        self.engine.model()
    }

    pub fn ideals(&self) -> impl Iterator<Item = &RightIdeal> {
        self.ideals.keys()
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn contains(&self, x: &RightIdeal) -> bool {
        self.ideals.contains_key(x)
    }

    pub fn trace(&self, x: &RightIdeal) -> Option<&TraceStep> {
        self.ideals.get(x)
    }

    /// True iff the closure reached a fixed point within the depth.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_union_closed(&self) -> bool {
        self.options.union_closed
    }

    pub fn options(&self) -> FamilyOptions {
        self.options
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn to_json(&self) -> Value {
        let ideals: Vec<Value> =
            self.ideals.iter().map(|(x, t)| json!({
                "form": x.form_name(),
                "display": x.to_string(),
                "parameters": ideal_parameters(x),
                "trace": trace_json(t),
            })).collect();
        json!({
            "model": self.model().to_string(),
            "depth": self.options.depth,
            "rounds": self.rounds,
            "union_closed": self.options.union_closed,
            "complete": self.complete,
            "size": self.ideals.len(),
            "ideals": ideals,
        })
    }
}

pub(crate) fn ideal_parameters(x: &RightIdeal) -> Value {
    match x {
        RightIdeal::Empty => json!({}),
        RightIdeal::Principal(p) => json!({ "generator": p.to_string() }),
        RightIdeal::Coset { residue, ideal } => {
            let (a, b, c) = ideal.hnf();
            json!({
                "residue": residue.to_string(),
                "ideal": ideal.to_string(),
                "hnf": [a, b, c],
                "norm": ideal.norm(),
            })
        }
        RightIdeal::Tail { threshold, sporadic } => {
            json!({ "threshold": threshold, "sporadic": sporadic.iter().collect::<Vec<_>>() })
        }
        RightIdeal::Union(atoms) => {
            json!({ "atoms": atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>() })
        }
        RightIdeal::Word(pairs) => json!({
            "pairs": pairs.iter().map(|(q, p)| [q.to_string(), p.to_string()]).collect::<Vec<_>>()
        }),
    }
}

fn trace_json(t: &TraceStep) -> Value {
    match t {
        TraceStep::Seed => json!({ "op": "seed" }),
        TraceStep::LeftMult { p, of } => {
            json!({ "op": "left_mult", "element": p.to_string(), "of": of.to_string() })
        }
        TraceStep::Preimage { p, of } => {
            json!({ "op": "preimage", "element": p.to_string(), "of": of.to_string() })
        }
        TraceStep::Intersection(x, y) => {
            json!({ "op": "intersection", "of": [x.to_string(), y.to_string()] })
        }
        TraceStep::Union(x, y) => json!({ "op": "union", "of": [x.to_string(), y.to_string()] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    #[test]
    fn free_monoid_family_is_principal() {
        let m = SemigroupModel::free(2).unwrap();
        let f = ConstructibleFamily::compute(&m, FamilyOptions::new(3)).unwrap();
        // words of length ≤ 3 plus the empty set
        assert_eq!(f.len(), 15 + 1);
        assert!(!f.is_complete());
        assert!(f.ideals().all(|x| matches!(x, RightIdeal::Principal(_) | RightIdeal::Empty)));
    }

    #[test]
    fn naturals_depth_two() {
        let m = SemigroupModel::abelian(1).unwrap();
        let f = ConstructibleFamily::compute(&m, FamilyOptions::new(2)).unwrap();
        let k = |n| RightIdeal::Principal(Element::Exponents(vec![n]));
        let want: Vec<RightIdeal> = vec![RightIdeal::Empty, k(0), k(1), k(2)];
        assert_eq!(f.ideals().cloned().collect::<Vec<_>>(), want);
    }

    #[test]
    fn numerical_family_contains_non_principal_tail() {
        let m = SemigroupModel::numerical(&[2, 3]).unwrap();
        let f = ConstructibleFamily::compute(&m, FamilyOptions::new(3)).unwrap();
        assert!(f.contains(&RightIdeal::tail(2, &[])));
    }

    #[test]
    fn axb_family_is_cosets() {
        let m = SemigroupModel::axb(RingDescriptor::Integers);
        let f = ConstructibleFamily::compute(&m, FamilyOptions::new(2)).unwrap();
        assert!(f.len() > 4);
        assert!(f.ideals().all(|x| matches!(x, RightIdeal::Coset { .. } | RightIdeal::Empty)));
    }

    #[test]
    fn json_lists_every_ideal_with_trace() {
        let m = SemigroupModel::numerical(&[2, 3]).unwrap();
        let f = ConstructibleFamily::compute(&m, FamilyOptions::new(2)).unwrap();
        let json = f.to_json();
        assert_eq!(json["size"], f.len());
        assert_eq!(json["ideals"].as_array().unwrap().len(), f.len());
        assert_eq!(json["ideals"][0]["trace"]["op"], "seed");
    }
}
