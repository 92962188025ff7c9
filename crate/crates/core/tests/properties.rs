use proptest::prelude::*;

use monoext::bounds;
use monoext::{
    ArctanSum, Extension, FinitePoset, Form, Point, PosetDepth, PosetDomain, UtilityDataset, VectorDomain,
};

fn leq(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

fn lt(x: &[f64], y: &[f64]) -> bool {
    leq(x, y) && x != y
}

fn brute_a(s: &[(Vec<f64>, f64)], x: &[f64]) -> f64 {
    s.iter().filter(|(y, _)| leq(y, x)).map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
}

fn brute_b(s: &[(Vec<f64>, f64)], x: &[f64]) -> f64 {
    s.iter().filter(|(y, _)| leq(x, y)).map(|p| p.1).fold(f64::INFINITY, f64::min)
}

fn coords(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-6i32..=6).prop_map(|c| c as f64), k)
}

/// Distinct small-grid points with arbitrary integer values.
fn samples(k: usize) -> impl Strategy<Value = Vec<(Vec<f64>, f64)>> {
    prop::collection::vec((coords(k), (-10i32..=10).prop_map(|v| v as f64)), 1..25).prop_map(|mut v| {
        v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        v.dedup_by(|a, b| a.0 == b.0);
        v
    })
}

/// Distinct points made strictly increasing by a sum-based value.
fn increasing(k: usize) -> impl Strategy<Value = Vec<(Vec<f64>, f64)>> {
    samples(k).prop_map(|v| {
        v.into_iter().map(|(x, noise)| { let s: f64 = x.iter().sum(); (x, 3.0 * s + noise.abs() * 0.1) }).collect()
    })
}

fn ds(k: usize, s: &[(Vec<f64>, f64)]) -> UtilityDataset<VectorDomain> {
    UtilityDataset::from_points(k, s.iter().map(|(x, v)| (Point::new(x.clone()).unwrap(), *v))).unwrap()
}

proptest! {
    #[test]
    fn bounds_match_brute_force(s in samples(2), q in coords(2)) {
        let d = ds(2, &s);
        let b = bounds::bounds(&d, &Point::new(q.clone()).unwrap()).unwrap();
        prop_assert_eq!(b.a.to_f64(), brute_a(&s, &q));
        prop_assert_eq!(b.b.to_f64(), brute_b(&s, &q));
    }

    #[test]
    fn separable_iff_strictly_increasing(s in samples(2)) {
        let strict = s.iter().all(|(x, fx)| s.iter().all(|(y, fy)| !lt(x, y) || fx < fy));
        let d = ds(2, &s);
        prop_assert_eq!(d.is_strictly_increasing(), strict);
        prop_assert_eq!(d.is_separably_increasing(), strict);
        prop_assert_eq!(d.separability_violation().is_none(), strict);
    }

    #[test]
    fn extension_is_monotone_and_restricts(s in increasing(3), x in coords(3), step in coords(3)) {
        let d = ds(3, &s);
        let e = Extension::new(d, ArctanSum::default(), Form::Canonical).unwrap();
        for (p, v) in &s {
            prop_assert_eq!(e.eval(&Point::new(p.clone()).unwrap()).unwrap().f, *v);
        }
        let y: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b.abs()).collect();
        if lt(&x, &y) {
            let fx = e.eval(&Point::new(x).unwrap()).unwrap().f;
            let fy = e.eval(&Point::new(y).unwrap()).unwrap().f;
            prop_assert!(fy > fx);
        }
    }

    #[test]
    fn forms_agree(s in increasing(2), q in prop::collection::vec(-8.0f64..8.0, 2), lo in -3.0f64..3.0, w in 0.1f64..5.0) {
        let e = Extension::new(ds(2, &s), ArctanSum::new(lo, lo + w).unwrap(), Form::Canonical).unwrap();
        let report = e.check_form_agreement(&[Point::new(q).unwrap()], 1e-9).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn poset_bounds_use_reflexive_order(edges in prop::collection::vec((0usize..8, 0usize..8), 0..16),
                                        picks in prop::collection::vec(any::<bool>(), 8)) {
        let ids: Vec<String> = (0..8).map(|i| format!("e{i}")).collect();
        // orient every edge upward in index order so the relation is acyclic
        let rel: Vec<(String, String)> = edges.iter().filter(|(a, b)| a != b)
            .map(|&(a, b)| (ids[a.min(b)].clone(), ids[a.max(b)].clone())).collect();
        let poset = FinitePoset::build(&ids, &rel).unwrap();
        let rep = poset.utility_representation();
        let sampled: Vec<(String, f64)> = (0..8).filter(|&i| picks[i]).map(|i| (ids[i].clone(), rep[i] * 10.0)).collect();
        let domain = PosetDomain::new(poset.clone());
        let d = UtilityDataset::from_ids(domain, &sampled).unwrap();
        prop_assert!(d.is_separably_increasing());
        for x in 0..8 {
            let b = bounds::bounds(&d, &x).unwrap();
            let a_brute = sampled.iter().filter(|(s, _)| poset.le(poset.index_of(s).unwrap(), x))
                .map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let b_brute = sampled.iter().filter(|(s, _)| poset.le(x, poset.index_of(s).unwrap()))
                .map(|p| p.1).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(b.a.to_f64(), a_brute);
            prop_assert_eq!(b.b.to_f64(), b_brute);
        }
        let base = PosetDepth::new(&poset, 0.0, 1.0).unwrap();
        let e = Extension::new(d, base, Form::Canonical).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                if poset.gt(x, y) {
                    prop_assert!(e.eval(&x).unwrap().f > e.eval(&y).unwrap().f);
                }
            }
        }
    }
}
