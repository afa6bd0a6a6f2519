use proptest::prelude::*;
use semigroup_lab::ring_ideals::{
    check_flatness_conditions, factor, fractional_representation, is_principal, primes_above, splitting,
    strong_approx_witness, verify_fractional_representation, RingEmbedding, RingIdeal, Splitting,
};
use semigroup_lab::{RingDescriptor, RingElem};

const RADICANDS: [i64; 6] = [-5, -1, -3, 2, 5, -6];

fn ring(i: usize) -> RingDescriptor {
    RingDescriptor::quadratic(RADICANDS[i]).unwrap()
}

fn elem() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -4i64..=4).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
}

fn ideal(r: RingDescriptor, gens: &[(i64, i64)]) -> RingIdeal {
    let g: Vec<RingElem> = gens.iter().map(|(a, b)| RingElem::new(*a, *b)).collect();
    RingIdeal::from_generators(r, &g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn element_norm_is_multiplicative(i in 0..RADICANDS.len(), x in elem(), y in elem()) {
        let r = ring(i);
        let (x, y) = (RingElem::new(x.0, x.1), RingElem::new(y.0, y.1));
        prop_assert_eq!(r.norm(r.mul(x, y)), r.norm(x) * r.norm(y));
        prop_assert_eq!(r.div_exact(r.mul(x, y), y), Some(x));
    }

    #[test]
    fn ideal_norm_is_multiplicative(i in 0..RADICANDS.len(), x in elem(), y in elem(), z in elem()) {
        let r = ring(i);
        let a = ideal(r, &[x, y]);
        let b = ideal(r, &[z]);
        prop_assert_eq!(a.product(&b).unwrap().norm(), a.norm() * b.norm());
    }

    #[test]
    fn intersection_times_sum_is_product(i in 0..RADICANDS.len(), x in elem(), y in elem(), z in elem()) {
        let r = ring(i);
        let a = ideal(r, &[x, y]);
        let b = ideal(r, &[z]);
        let lhs = a.intersect(&b).unwrap().product(&a.sum(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.product(&b).unwrap());
    }

    #[test]
    fn factorization_recomposes(i in 0..RADICANDS.len(), x in elem(), y in elem()) {
        let r = ring(i);
        let a = ideal(r, &[x, y]);
        let f = factor(&a).unwrap();
        prop_assert_eq!(f.product(r), a);
        for (p, e) in &f.factors {
            prop_assert!(*e > 0);
            prop_assert!(a.is_subset_of(&p.pow(*e)));
            prop_assert!(!a.is_subset_of(&p.pow(*e + 1)));
        }
    }

    #[test]
    fn fractional_representation_is_exact(i in 0..RADICANDS.len(), x in elem(), y in elem()) {
        let r = ring(i);
        let a = ideal(r, &[x, y]);
        prop_assume!(a.norm() <= 60);
        let rep = fractional_representation(&a).unwrap();
        prop_assert!(verify_fractional_representation(&a, rep.a, rep.c, 50).is_ok());
    }

    #[test]
    fn strong_approximation_over_integers(n in 1i64..40, ks in proptest::collection::vec(2i64..6, 1..4)) {
        let big = RingIdeal::integers(n).unwrap();
        let subs: Vec<RingIdeal> = ks.iter().map(|k| RingIdeal::integers(n * k).unwrap()).collect();
        let w = strong_approx_witness(&big, &subs).unwrap().expect("ℤ is never a finite union of proper ideals");
        prop_assert!(big.contains(&w));
        prop_assert!(subs.iter().all(|s| !s.contains(&w)));
    }

    #[test]
    fn strong_approximation_in_quadratic_rings(i in 0..RADICANDS.len(), x in elem(), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let r = ring(i);
        let a = ideal(r, &[x]);
        let subs: Vec<RingIdeal> = primes_above(r, p).iter().map(|q| a.product(q).unwrap()).collect();
        let w = strong_approx_witness(&a, &subs).unwrap().expect("proper subideals never cover");
        prop_assert!(a.contains(&w));
        prop_assert!(subs.iter().all(|s| !s.contains(&w)));
    }
}

#[test]
fn two_ramifies_in_minus_five() {
    let r = RingDescriptor::quadratic(-5).unwrap();
    let p2 = ideal(r, &[(2, 0), (1, 1)]);
    assert_eq!(factor(&ideal(r, &[(2, 0)])).unwrap().factors, vec![(p2, 2)]);
    assert_eq!(splitting(r, 2), Splitting::Ramified);
    let rep = is_principal(&p2).unwrap();
    assert!(!rep.principal && rep.generator.is_none());
    assert!(is_principal(&ideal(r, &[(1, 1)])).unwrap().principal);
}

#[test]
fn six_has_two_factorizations_but_one_ideal_factorization() {
    let r = RingDescriptor::quadratic(-5).unwrap();
    let six = ideal(r, &[(6, 0)]);
    let f = factor(&six).unwrap();
    let exps: Vec<u32> = f.factors.iter().map(|(_, e)| *e).collect();
    assert_eq!(exps.iter().sum::<u32>(), 4);
    assert_eq!(f.product(r), six);
    assert_eq!(factor(&ideal(r, &[(1, 1)])).unwrap().product(r).norm(), 6);
}

#[test]
fn strong_approximation_detects_a_cover() {
    let z = RingIdeal::integers(2).unwrap();
    assert_eq!(strong_approx_witness(&z, &[z]).unwrap(), None);
    assert!(strong_approx_witness(&z, &[RingIdeal::integers(3).unwrap()]).is_err());
}

#[test]
fn splitting_matches_primes_above() {
    for i in 0..RADICANDS.len() {
        let r = ring(i);
        for p in [2, 3, 5, 7, 11, 13] {
            let above = primes_above(r, p);
            let expect = match splitting(r, p) {
                Splitting::Split => 2,
                _ => 1,
            };
            assert_eq!(above.len(), expect, "{r} p={p}");
        }
    }
}

#[test]
fn flatness_for_integers_into_gaussian_and_minus_five() {
    let tests: Vec<RingIdeal> = [2, 3, 6].iter().map(|n| RingIdeal::integers(*n).unwrap()).collect();
    for d in [-1, -5] {
        let target = RingDescriptor::quadratic(d).unwrap();
        let rep = check_flatness_conditions(RingDescriptor::Integers, target, RingEmbedding::IntegersInto, &tests)
            .unwrap();
        assert!(rep.all_hold(), "{rep:?}");
    }
}
