//! Property tests for invariants of the library.

mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use branchfold::chart::{chart_index, reduce_chart, CodimTwoModel, IndexFraction};
use branchfold::cone::{
    angle_of_model, law_of_cosines, model_of_angle, recognize_rational, MAX_ANGLE_DENOMINATOR, RATIONALITY_TOLERANCE,
};
use branchfold::covering::{coverings_isomorphic, fox_complete};
use branchfold::fixtures::*;
use branchfold::perm::{PermGroup, Permutation};
use branchfold::simplicial::{is_pseudo_manifold, Complex};

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn complexes() -> Vec<Complex> {
    vec![
        octahedron(),
        projective_plane(),
        polygon(5),
        disk(4),
        Complex::from_top(&[vec![1, 2, 3, 4], vec![1, 2, 3, 5], vec![1, 2, 4, 5], vec![1, 3, 4, 5], vec![2, 3, 4, 5]])
            .unwrap(),
    ]
}

proptest! {
    #[test]
    fn group_laws(a in perm_strategy(6), b in perm_strategy(6), c in perm_strategy(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&Permutation::identity(6)), a.clone());
        prop_assert_eq!(a.compose(&b).apply(1), a.apply(b.apply(1)));
    }

    #[test]
    fn group_order_matches_closure(a in perm_strategy(5), b in perm_strategy(5)) {
        let g = PermGroup::generate(5, &[a.clone(), b.clone()]).unwrap();
        let images = |p: &Permutation| p.images().iter().map(|&x| x as usize - 1).collect::<Vec<_>>();
        let oracle = common::closure(5, &[images(&a), images(&b)]);
        prop_assert_eq!(g.order(), oracle.len());
        let orbit = g.orbits().into_iter().find(|o| o.contains(&1)).unwrap();
        prop_assert_eq!(g.order(), orbit.len() * g.stabilizer(1).order());
        let h = PermGroup::generate(5, &[a]).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert!(g.core(&h).unwrap().is_normal_in(&g));
    }

    #[test]
    fn coprime_models_round_trip_through_angles(h in 1u64..60, k in 1u64..60) {
        prop_assume!(common::gcd(h, k) == 1);
        let m = CodimTwoModel::new(h, k).unwrap();
        prop_assert_eq!(model_of_angle(&angle_of_model(m)), Some(m));
        prop_assert_eq!(m.index(), IndexFraction::new(h, k));
    }

    #[test]
    fn rationals_are_recognized(p in 0u64..5000, q in 1u64..=MAX_ANGLE_DENOMINATOR) {
        let r = recognize_rational(p as f64 / q as f64, RATIONALITY_TOLERANCE, MAX_ANGLE_DENOMINATOR).unwrap();
        let g = common::gcd(p, q).max(1);
        prop_assert_eq!((r.num, r.den), if p == 0 { (0, 1) } else { (p / g, q / g) });
    }

    #[test]
    fn cone_distance_is_symmetric_and_monotone(
        k in prop::sample::select(vec![-1.0, -0.25, 0.0, 0.5, 1.0]),
        a in 0.0f64..1.5, b in 0.0f64..1.5, t1 in 0.0f64..PI, t2 in 0.0f64..PI,
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!((law_of_cosines(k, a, b, lo) - law_of_cosines(k, b, a, lo)).abs() < 1e-12);
        prop_assert!(law_of_cosines(k, a, b, lo) <= law_of_cosines(k, a, b, hi) + 1e-12);
        prop_assert!((law_of_cosines(k, a, b, 0.0) - (a - b).abs()).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subdivision_preserves_euler_and_pseudo_manifold(i in 0usize..5) {
        let c = &complexes()[i];
        let s = c.subdivide_once();
        prop_assert_eq!(s.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(is_pseudo_manifold(&s).holds(), is_pseudo_manifold(c).holds());
        prop_assert_eq!(s.dim(), c.dim());
    }

    #[test]
    fn cones_are_contractible_in_euler(i in 0usize..5) {
        let c = &complexes()[i];
        let cone = c.cone(c.max_vertex() + 1).unwrap();
        prop_assert_eq!(cone.euler_characteristic(), 1);
    }

    #[test]
    fn regauging_gives_isomorphic_coverings(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mc = random_octahedron_cocycle(&mut rng);
        let mut gauge = BTreeMap::new();
        for (i, t) in mc.base.top_simplices().into_iter().enumerate() {
            let g = rotation(mc.sheets as u32, (seed as u32).wrapping_add(i as u32) % mc.sheets as u32, mc.sheets);
            gauge.insert(t.clone(), g);
        }
        let f = fox_complete(&mc).unwrap();
        let g = fox_complete(&mc.regauge(&gauge).unwrap()).unwrap();
        prop_assert!(coverings_isomorphic(&f, &g).unwrap());
        prop_assert_eq!(f.degree, mc.sheets);
    }

    #[test]
    fn index_is_reduced_fraction_and_reduction_is_idempotent(h in 1u32..5, k in 1u32..5) {
        let c = disk_chart(h, k);
        let g = common::gcd(h as u64, k as u64);
        prop_assert_eq!(chart_index(&c).unwrap(), IndexFraction::new(h as u64 / g, k as u64 / g));
        let r = reduce_chart(&c).unwrap();
        prop_assert_eq!(r.n.order() as u64, g);
        prop_assert!(r.chart.is_reduced());
        let again = reduce_chart(&r.chart).unwrap();
        prop_assert!(again.n.is_trivial());
        prop_assert_eq!(chart_index(&r.chart).unwrap(), chart_index(&c).unwrap());
    }
}
