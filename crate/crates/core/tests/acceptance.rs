//! Acceptance criteria 1–8. Each prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use semigroup_lab::amenability::vector_state_defect;
use semigroup_lab::ideal_engine::{ConstructibleFamily, FamilyOptions};
use semigroup_lab::operator::{
    all_words, random_words, vector_state_defect_matrix, verify_fce, verify_iiig, verify_relations, SamplePlan,
    TruncatedRepresentation, RELATIONS,
};
use semigroup_lab::parse::parse_model;
use semigroup_lab::ring_ideals::{
    factor, fractional_representation, is_principal, strong_approx_witness, RingIdeal,
};
use semigroup_lab::{Element, RingDescriptor, RingElem, SemigroupModel};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (i32, Value, Vec<u8>) {
    cli_env(args, &[])
}

fn cli_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_semigroup-lab"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v, out.stdout)
}

fn rat(v: &Value) -> BigRational {
    let n: BigInt = v["num"].as_str().expect("num").parse().expect("integer");
    let d: BigInt = v["den"].as_str().expect("den").parse().expect("integer");
    BigRational::new(n, d)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f()?;
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{r} [{:.2}s]", took.as_secs_f64()))
}

/// Words over {a, b} of length at most `n`, as display strings.
fn words_up_to(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::from(["e".to_string()]);
    let mut layer = vec![String::new()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w| [format!("{w}a"), format!("{w}b")]).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(5), || {
        let (code, v, _) = cli(&["ideals", "--model", "free:2", "--depth", "4"]);
        ensure(code == 0, format!("ideals exit {code}"))?;
        let ideals = v["report"]["ideals"].as_array().ok_or("no ideals")?;
        let mut gens = BTreeSet::new();
        let mut empty = 0;
        for x in ideals {
            match x["form"].as_str() {
                Some("empty") => empty += 1,
                Some("principal") => {
                    gens.insert(x["parameters"]["generator"].as_str().ok_or("generator")?.to_string());
                }
                other => return Err(format!("non-principal form {other:?}")),
            }
        }
        ensure(empty == 1, "expected exactly one empty ideal")?;
        ensure(gens == words_up_to(4), "principal generators differ from all words of length ≤ 4")?;
        let (code, v, _) = cli(&["check", "independence", "--model", "free:2", "--depth", "4"]);
        ensure(code == 0, format!("independence exit {code}: {}", v["report"]))?;
        Ok(format!("{} ideals = ∅ + all wP with |w| ≤ 4; independence exit 0", ideals.len()))
    })
}

/// Numerical semigroup ⟨2,3⟩ up to `n` from generator sums.
fn numerical_set(n: u64) -> BTreeSet<u64> {
    let mut s = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for g in [2, 3] {
            if x + g <= n && s.insert(x + g) {
                frontier.push(x + g);
            }
        }
    }
    s
}

/// Tail-form parameters as a subset of `{0,…,n}`.
fn tail_set(params: &Value, n: u64) -> BTreeSet<u64> {
    let t = params["threshold"].as_u64().expect("threshold");
    let mut s: BTreeSet<u64> = params["sporadic"].as_array().expect("sporadic").iter().map(|x| x.as_u64().unwrap()).collect();
    s.extend(t..=n);
    s
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(5), || {
        let (code, v, _) = cli(&["check", "independence", "--model", "numerical:2,3", "--depth", "4"]);
        ensure(code == 1, format!("independence exit {code}"))?;
        let verdict = &v["report"]["verdict"];
        const N: u64 = 200;
        let s = numerical_set(N);
        let x = tail_set(&verdict["ideal_parameters"], N);
        let expect_x: BTreeSet<u64> = s.iter().copied().filter(|k| *k >= 2).collect();
        ensure(x == expect_x, "X is not {2,3,4,…}")?;
        // the covers are named by display; rebuild them from the family
        let (_, fam, _) = cli(&["ideals", "--model", "numerical:2,3", "--depth", "4"]);
        let covers: Vec<&str> = verdict["covers"].as_array().ok_or("covers")?.iter().map(|c| c.as_str().unwrap()).collect();
        let mut cover_sets = Vec::new();
        for c in &covers {
            let entry = fam["report"]["ideals"]
                .as_array()
                .unwrap()
                .iter()
                .find(|i| i["display"] == *c)
                .ok_or(format!("cover {c} not in family"))?;
            cover_sets.push(tail_set(&entry["parameters"], N));
        }
        let shift = |k: u64| -> BTreeSet<u64> { s.iter().map(|x| x + k).filter(|x| *x <= N).collect() };
        let expect_covers = BTreeSet::from([shift(2), shift(3)]);
        let got: BTreeSet<BTreeSet<u64>> = cover_sets.iter().cloned().collect();
        ensure(got == expect_covers, "covers are not {2+P, 3+P}")?;
        // brute-force subset oracle: proper subsets whose union is X on {0,…,200}
        let union: BTreeSet<u64> = cover_sets.iter().flatten().copied().collect();
        ensure(union == x, "union of covers differs from X")?;
        ensure(cover_sets.iter().all(|c| c.is_subset(&x) && *c != x), "a cover is not a proper subset")?;
        Ok(format!("X = {} covered by {:?}; oracle on {{0,…,{N}}} agrees", verdict["ideal"], covers))
    })
}

fn criterion_3() -> Outcome {
    let (code, v, _) = cli(&["ideals", "--model", "axb:Z", "--depth", "3"]);
    ensure(code == 0, format!("ideals exit {code}"))?;
    let model = parse_model("axb:Z").map_err(|e| e.to_string())?;
    let fam = ConstructibleFamily::compute(&model, FamilyOptions::new(3)).map_err(|e| e.to_string())?;
    let window = model.ball(4);
    let ideals = v["report"]["ideals"].as_array().ok_or("no ideals")?;
    for x in ideals {
        match x["form"].as_str() {
            Some("empty") => {}
            Some("coset") => {
                let n: i64 = x["parameters"]["norm"].as_i64().ok_or("norm")?;
                let b: i64 = x["parameters"]["residue"].as_str().ok_or("residue")?.parse().map_err(|_| "residue")?;
                ensure(0 <= b && b < n, format!("residue {b} not reduced mod {n}"))?;
                // (b + nℤ) × nℤ^reg, checked against engine membership on the window
                let ideal = fam.ideals().find(|i| i.to_string() == x["display"].as_str().unwrap()).ok_or("display")?;
                for e in &window {
                    let Element::Affine { b: eb, a: ea } = e else { return Err("non-affine element".into()) };
                    let expect = (eb.re - b).rem_euclid(n) == 0 && ea.re.rem_euclid(n) == 0;
                    let got = fam.engine().contains(ideal, e).map_err(|e| e.to_string())?;
                    ensure(got == expect, format!("{e} ∈ {}: {got}, expected {expect}", x["display"]))?;
                }
            }
            other => return Err(format!("unexpected form {other:?}")),
        }
    }
    let (code, _, _) = cli(&["check", "quasi-lattice", "--model", "axb:Z", "--depth", "3"]);
    ensure(code == 0, format!("quasi-lattice exit {code}"))?;
    let (code, v, _) = cli(&["check", "reversible", "--model", "axb:Z", "--side", "left"]);
    ensure(code == 1, format!("left reversible exit {code}"))?;
    ensure(v["report"]["witness"] == serde_json::json!(["(0,2)", "(1,2)"]), format!("witness {}", v["report"]["witness"]))?;
    let (code, _, _) = cli(&["check", "reversible", "--model", "axb:Z", "--side", "right", "--radius", "3"]);
    ensure(code == 0, format!("right reversible exit {code}"))?;
    Ok(format!("{} ideals all (b+nZ)×nZ^reg or ∅; QL exit 0; left witness ((0,2),(1,2)); right exit 0", ideals.len()))
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(10), || {
        let r = RingDescriptor::quadratic(-5).map_err(|e| e.to_string())?;
        let p2 = RingIdeal::from_generators(r, &[RingElem::int(2), RingElem::new(1, 1)]).map_err(|e| e.to_string())?;
        let two = RingIdeal::principal(r, RingElem::int(2)).map_err(|e| e.to_string())?;
        let f = factor(&two).map_err(|e| e.to_string())?;
        ensure(f.factors == vec![(p2, 2)], format!("factor(2R) = {:?}", f.factors))?;
        ensure(p2.pow(2) == two, "P₂² ≠ 2R")?;
        ensure(!is_principal(&p2).map_err(|e| e.to_string())?.principal, "P₂ reported principal")?;
        let rep = fractional_representation(&p2).map_err(|e| e.to_string())?;
        // P₂ = {x + y√-5 : x ≡ y mod 2}; compare with c·x ∈ aR on norm ≤ 100
        let mut checked = 0;
        for x in -10i64..=10 {
            for y in -4i64..=4 {
                let e = RingElem::new(x, y);
                if r.norm(e) > 100 {
                    continue;
                }
                let in_p2 = (x - y).rem_euclid(2) == 0;
                let via_rep = r.div_exact(r.mul(rep.c, e), rep.a).is_some();
                ensure(in_p2 == via_rep, format!("membership of {e} disagrees"))?;
                checked += 1;
            }
        }
        let sub = |n| RingIdeal::integers(n).unwrap();
        let w = strong_approx_witness(&sub(2), &[sub(4), sub(6)]).map_err(|e| e.to_string())?;
        ensure(w == Some(RingElem::int(2)), format!("strong approximation gave {w:?}"))?;
        Ok(format!("2R = P₂², P₂ non-principal, (a,c) = ({}, {}) exact on {checked} points, witness 2", rep.a, rep.c))
    })
}

fn criterion_5() -> Outcome {
    let (code, v, _) = cli(&["folner", "--model", "abelian:1", "--eps", "1/10"]);
    ensure(code == 0, format!("ℕ folner exit {code}"))?;
    let rep = &v["report"];
    let size = rep["size"].as_i64().ok_or("size")?;
    let expect_f: Vec<String> = (0..size).map(|k| format!("({k})")).collect();
    ensure(rep["F"] == serde_json::json!(expect_f), "F is not an initial interval")?;
    let two_over = q(2, size);
    let m = &rep["means"][0];
    ensure(rat(&m["ratio"]) == two_over, "ratio ≠ 2/|F|")?;
    let dev = rat(&m["mean_deviation"]);
    let bnd = rat(&m["boundary_mass"]);
    let push = rat(&m["pushforward_deviation"]);
    ensure(push == &dev + &bnd, "‖μ(p⁻¹⊔) − μ‖ ≠ ‖μ − μ(p⊔)‖ + boundary")?;
    ensure(push == two_over, "‖μ(p⁻¹⊔) − μ‖ ≠ 2/|F|")?;
    ensure(dev == q(1, size) && bnd == q(1, size), "deviation or boundary mass not 1/|F|")?;

    let (code, v, _) = cli(&["folner", "--model", "abelian:2", "--eps", "1/10"]);
    ensure(code == 0, format!("ℕ² folner exit {code}"))?;
    ensure(v["report"]["size"] == 441, "ℕ² certificate is not the 21×21 box")?;
    for r in v["report"]["ratios"].as_array().ok_or("ratios")? {
        ensure(rat(&r["ratio"]) == q(2, 21), "ℕ² ratio ≠ 2/21")?;
    }

    let (code, v, _) = cli(&["folner", "--model", "free:2", "--eps", "1/2"]);
    ensure(code == 1 && v["report"]["result"] == "EXHAUSTED", format!("free:2 folner exit {code}"))?;
    let best = rat(&v["report"]["best_ratio"]);
    ensure(best >= q(1, 1), format!("free:2 best ratio {best} < 1"))?;

    let (code, v, _) = cli(&["audit"]);
    ensure(code == 0, format!("audit exit {code}: {}", v["report"]["result"]))?;
    Ok(format!(
        "ℕ: |F| = {size}, ratio {two_over} = ‖μ−μ(p⊔)‖ {dev} + boundary {bnd}; ℕ² 2/21; free:2 EXHAUSTED best {best}; audit exit 0"
    ))
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut notes = Vec::new();
        for (spec, radius) in [("abelian:1", 12), ("free:2", 5)] {
            let model = parse_model(spec).map_err(|e| e.to_string())?;
            let rep = TruncatedRepresentation::build(&model, radius).map_err(|e| e.to_string())?;
            let fam = ConstructibleFamily::compute(&model, FamilyOptions::new(2)).map_err(|e| e.to_string())?;
            let plan = SamplePlan { exhaustive_radius: 2, random_samples: 50, random_radius: 3, seed: 7 };
            let rel = verify_relations(&rep, &fam, &plan).map_err(|e| e.to_string())?;
            ensure(rel.all_passed(), format!("{spec}: relation failures {:?}", rel.failures.first()))?;
            for name in RELATIONS {
                ensure(rel.tallies[name].checked > 0, format!("{spec}: {name} never checked"))?;
            }
            let mut identity_words = 0;
            for w in all_words(&model, 3, 1) {
                let c = verify_iiig(&rep, &w).map_err(|e| e.to_string())?;
                ensure(c.holds, format!("{spec}: III_G fails on a word"))?;
                identity_words += usize::from(c.identity);
            }
            ensure(identity_words > 0, "no word with product e")?;
            let words = random_words(&model, 50, 3, 2, 7);
            let fce = verify_fce(&rep, &words).map_err(|e| e.to_string())?;
            ensure(fce.all_passed(), format!("{spec}: {:?}", fce.failures.first()))?;
            notes.push(format!("{spec}: relations ok, {identity_words} III_G words, 𝓔_r {} zero/{} proj", fce.zero, fce.projection));
        }
        Ok(notes.join("; "))
    })
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    for spec in semigroup_lab::cli::MODEL_ZOO {
        let model: SemigroupModel = parse_model(spec).map_err(|e| e.to_string())?;
        let radius = if model.generators().len() > 3 { 3 } else { 4 };
        let rep = TruncatedRepresentation::build(&model, radius).map_err(|e| e.to_string())?;
        let inner = model.ball(radius - 2);
        let shifts = model.ball(2);
        for _ in 0..20 {
            let k = rng.gen_range(1..=inner.len());
            let f: Vec<Element> = inner.choose_multiple(&mut rng, k).cloned().collect();
            let p = shifts.choose(&mut rng).expect("nonempty").clone();
            let by_matrix = vector_state_defect_matrix(&rep, &p, &f).map_err(|e| e.to_string())?;
            let by_count = vector_state_defect(&model, &f, &p).map_err(|e| e.to_string())?;
            // independent count of |pF Δ F|
            let fs: BTreeSet<&Element> = f.iter().collect();
            let pf: BTreeSet<Element> = f.iter().map(|x| model.multiply(&p, x).unwrap()).collect();
            let sym = pf.iter().filter(|y| !fs.contains(y)).count() + f.iter().filter(|x| !pf.contains(*x)).count();
            let oracle = q(sym as i64, f.len() as i64);
            ensure(by_matrix == oracle && by_count == oracle, format!("{spec}: {by_matrix} / {by_count} / {oracle}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} (F, p) pairs over {} models agree exactly", semigroup_lab::cli::MODEL_ZOO.len()))
}

fn criterion_8() -> Outcome {
    let runs: [&[&str]; 6] = [
        &["ideals", "--model", "numerical:2,3", "--depth", "4"],
        &["check", "independence", "--model", "numerical:2,3", "--depth", "4"],
        &["folner", "--model", "abelian:2", "--eps", "1/10"],
        &["opmodel", "--model", "free:2", "--radius", "5", "--words", "50", "--seed", "7"],
        &["opmodel", "--model", "abelian:1", "--radius", "12", "--words", "50", "--seed", "7"],
        &["audit"],
    ];
    for args in runs {
        let (_, _, a) = cli(args);
        let (_, _, b) = cli(args);
        let (_, _, c) = cli_env(args, &[("SEMIGROUP_LAB_THREADS", "1")]);
        ensure(!a.is_empty() && a == b && b == c, format!("output of {args:?} differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across 3 runs (incl. single-threaded)", runs.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 quasi-lattice family shape", criterion_1),
        ("2 independence failure witness", criterion_2),
        ("3 ax+b over Z", criterion_3),
        ("4 Dedekind arithmetic", criterion_4),
        ("5 Følner and amenability", criterion_5),
        ("6 operator identities", criterion_6),
        ("7 vector-state identity", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
