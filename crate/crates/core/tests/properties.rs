use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankone::corr::{random_heis_point, BoundaryChart};
use rankone::heisen::{cc_distance, cygan_distance, dilation, riemannian_distance, CcMethod, HeisPoint};
use rankone::hypmodel::{
    curvature_eigensplit, distance, gromov_product_ideal, gromov_product_point, is_delta_triple, plane_delta, sampling,
    visual_product_closed_form, Isometry, ModelSpace,
};
use rankone::verify::{run_suite, ModelChoice, Suite, VerifyConfig};

fn models() -> impl Strategy<Value = ModelSpace> {
    prop_oneof![Just(ModelSpace::real(2)), Just(ModelSpace::real(3)), Just(ModelSpace::complex(2))]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_triangle_inequality(m in models(), seed: u64) {
        let mut r = rng(seed);
        let [x, y, z] = [0; 3].map(|_| sampling::point(m, 3.0, &mut r));
        let (xy, yz, xz) = (distance(&x, &y).unwrap(), distance(&y, &z).unwrap(), distance(&x, &z).unwrap());
        prop_assert!(xz <= xy + yz + 1e-9);
    }

    #[test]
    fn isometries_preserve_distance_and_products(m in models(), seed: u64) {
        let mut r = rng(seed);
        let [x, y, o] = [0; 3].map(|_| sampling::point(m, 2.0, &mut r));
        let g = Isometry::random(m, 1.0, &mut r);
        let [gx, gy, go] = [&x, &y, &o].map(|p| g.apply_point(p).unwrap());
        prop_assert!((distance(&x, &y).unwrap() - distance(&gx, &gy).unwrap()).abs() <= 1e-9);
        let before = gromov_product_point(&x, &y, &o).unwrap();
        let after = gromov_product_point(&gx, &gy, &go).unwrap();
        prop_assert!((before - after).abs() <= 1e-9);
    }

    #[test]
    fn ideal_products_form_delta_triples(m in models(), seed: u64) {
        let mut r = rng(seed);
        let o = sampling::point(m, 1.0, &mut r);
        let [a, b, c] = [0; 3].map(|_| sampling::ideal(m, &mut r));
        let p = [(&a, &b), (&b, &c), (&a, &c)].map(|(x, y)| gromov_product_ideal(x, y, &o).unwrap());
        prop_assert!(is_delta_triple(p[0], p[1], p[2], plane_delta() + 1e-6));
    }

    #[test]
    fn visual_function_satisfies_ptolemy(m in models(), seed: u64) {
        let mut r = rng(seed);
        let o = sampling::point(m, 1.0, &mut r);
        let [x, y, u, v] = [0; 4].map(|_| sampling::ideal(m, &mut r));
        let d = |a, b| (-visual_product_closed_form(a, b, &o)).exp();
        let slack = d(&x, &u) * d(&y, &v) + d(&x, &v) * d(&y, &u) - d(&x, &y) * d(&u, &v);
        prop_assert!(slack >= -1e-9);
    }

    #[test]
    fn real_models_have_no_fast_eigenspace(n in 2usize..4, seed: u64) {
        let m = ModelSpace::real(n);
        let mut r = rng(seed);
        let x = sampling::point(m, 1.0, &mut r);
        let (u, v) = (sampling::unit_tangent(&x, &mut r), sampling::unit_tangent(&x, &mut r));
        let v = v.sub(&u.scaled(u.inner(&v)));
        let (_, fast) = curvature_eigensplit(&u, &v).unwrap();
        prop_assert!(fast.norm() <= 1e-12);
    }

    #[test]
    fn cc_distance_is_left_invariant_and_homogeneous(seed: u64, lambda in 0.2f64..5.0) {
        let mut r = rng(seed);
        let m = ModelSpace::complex(2);
        let [p, q, g] = [0; 3].map(|_| random_heis_point(m, 2.0, &mut r));
        let d = cc_distance(&p, &q, CcMethod::Shooting).unwrap();
        let moved = cc_distance(&g.mul(&p).unwrap(), &g.mul(&q).unwrap(), CcMethod::Shooting).unwrap();
        prop_assert!((d - moved).abs() <= 1e-6 * d.max(1.0));
        let scaled = cc_distance(&dilation(lambda, &p).unwrap(), &dilation(lambda, &q).unwrap(), CcMethod::Shooting).unwrap();
        prop_assert!((scaled - lambda * d).abs() <= 1e-6 * scaled.max(1.0));
    }

    #[test]
    fn cc_triangle_inequality(seed: u64) {
        let mut r = rng(seed);
        let m = ModelSpace::complex(2);
        let [p, q, s] = [0; 3].map(|_| random_heis_point(m, 2.0, &mut r));
        let d = |a: &HeisPoint, b: &HeisPoint| cc_distance(a, b, CcMethod::Shooting).unwrap();
        prop_assert!(d(&p, &s) <= d(&p, &q) + d(&q, &s) + 1e-9);
    }

    #[test]
    fn cygan_distance_is_left_invariant_and_homogeneous(seed: u64, lambda in 0.2f64..5.0) {
        let mut r = rng(seed);
        let m = ModelSpace::complex(2);
        let [p, q, g] = [0; 3].map(|_| random_heis_point(m, 2.0, &mut r));
        let d = cygan_distance(&p, &q).unwrap();
        prop_assert!((d - cygan_distance(&g.mul(&p).unwrap(), &g.mul(&q).unwrap()).unwrap()).abs() <= 1e-9);
        let scaled = cygan_distance(&dilation(lambda, &p).unwrap(), &dilation(lambda, &q).unwrap()).unwrap();
        prop_assert!((scaled - lambda * d).abs() <= 1e-9 * scaled.max(1.0));
    }

    #[test]
    fn embedded_distances_are_left_invariant(m in models(), seed: u64) {
        let mut r = rng(seed);
        let o = sampling::point(m, 1.0, &mut r);
        let bc = BoundaryChart::from_center(sampling::ideal(m, &mut r), o).unwrap();
        let hc = bc.horo();
        let [p, q, g] = [0; 3].map(|_| random_heis_point(m, 1.5, &mut r));
        let d = |a: &HeisPoint, b: &HeisPoint| distance(&hc.embed(a).unwrap(), &hc.embed(b).unwrap()).unwrap();
        prop_assert!((d(&p, &q) - d(&g.mul(&p).unwrap(), &g.mul(&q).unwrap())).abs() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn riemannian_distance_is_below_cc(x in -1.0f64..1.0, y in -1.0f64..1.0, t in -1.0f64..1.0) {
        let o = HeisPoint::identity(1);
        let q = HeisPoint::planar(Complex64::new(x, y), t);
        prop_assume!(x.abs() + y.abs() + t.abs() > 1e-2);
        let cc = cc_distance(&o, &q, CcMethod::Shooting).unwrap();
        let dh = riemannian_distance(&o, &q).unwrap();
        prop_assert!(dh <= cc * (1.0 + 1e-6));
    }
}

#[test]
fn stored_outcomes_are_recomputable() {
    for model in [ModelChoice::RealH2, ModelChoice::ComplexH2] {
        let cfg =
            VerifyConfig { model, suite: Suite::All, samples: 4, seed: 7, diameter_samples: 20, ..Default::default() };
        let report = run_suite(&cfg).unwrap();
        assert!(!report.records.is_empty());
        assert!(report.records.iter().all(|r| r.is_consistent()));
    }
}
