//! Reference values. High-precision values were produced by
//! `scripts/oracles.py` and frozen here.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankone::corr::{spherical_distance, BoundaryChart};
use rankone::heisen::{cc_distance, riemannian_distance, CcMethod, HeisPoint};
use rankone::hypmodel::{distance, plane_delta, sampling, ModelSpace, ProjectivePoint};
use rankone::tri::{default_offset, equiradial_ideal, separated_points};
use rankone::vector::CVector;
use rankone::verify::{opposite_ideal, PaperConstants};

fn close(actual: f64, expected: f64, tol: f64) {
    assert!((actual - expected).abs() <= tol * expected.abs().max(1.0), "{actual} vs {expected}");
}

#[test]
fn hyperbolicity_constant_of_the_plane() {
    close(plane_delta(), 0.962423650119206895, 1e-15);
    assert_eq!(format!("{:.4}", plane_delta()), "0.9624");
}

#[test]
fn derived_constants() {
    let c = PaperConstants::new(None);
    close(c.c1, 0.28103488553034706835, 1e-14);
    close(c.c2, 4.3596534046582432904, 1e-14);
    close(c.c3, 3.5009197062051980831, 1e-14);
    close(c.c2_prime, 144.50473368213797428, 1e-13);
}

/// Endpoints of unit-length circular arcs, integrated independently.
const ARCS: [(f64, f64); 3] = [
    (0.95885107720840600055, 0.15852901519210349335),
    (0.66499665773603628729, 0.31765333243779253088),
    (0.047040002686622407367, 0.17442820828330349647),
];

#[test]
fn carnot_caratheodory_arc_lengths() {
    let o = HeisPoint::identity(1);
    for (r, t) in ARCS {
        for q in [HeisPoint::planar(Complex64::new(r, 0.0), t), HeisPoint::planar(Complex64::new(0.0, -r), -t)] {
            close(cc_distance(&o, &q, CcMethod::Shooting).unwrap(), 1.0, 1e-10);
        }
    }
    let (r, t) = ARCS[1];
    let q = HeisPoint::planar(Complex64::from_polar(r, 0.4), t);
    close(cc_distance(&o, &q, CcMethod::Variational).unwrap(), 1.0, 1e-4);
}

#[test]
fn vertical_carnot_caratheodory_distance() {
    let o = HeisPoint::identity(2);
    let q = HeisPoint::new(CVector::zeros(2), 1.0);
    close(cc_distance(&o, &q, CcMethod::Shooting).unwrap(), 2.5066282746310005024, 1e-12);
}

#[test]
fn complex_ball_distance() {
    let m = ModelSpace::complex(2);
    let point = |a: Complex64, b: Complex64| {
        ProjectivePoint::new(m, CVector::from_slice(&[a, b, Complex64::new(1.0, 0.0)])).unwrap()
    };
    let p = point(Complex64::new(0.3, 0.1), Complex64::new(0.0, -0.2));
    let q = point(Complex64::new(-0.4, 0.0), Complex64::new(0.25, 0.3));
    close(distance(&p, &q).unwrap(), 0.99657235497469643888, 1e-12);
}

#[test]
fn horosphere_chart_sharp_cases() {
    let m = ModelSpace::complex(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o = sampling::point(m, 1.0, &mut rng);
    let bc = BoundaryChart::from_center(sampling::ideal(m, &mut rng), o).unwrap();
    let hc = bc.horo();
    let base = hc.embed(&HeisPoint::identity(1)).unwrap();
    let vertical = hc.embed(&HeisPoint::planar(Complex64::new(0.0, 0.0), 0.7)).unwrap();
    let horizontal = hc.embed(&HeisPoint::planar(Complex64::from_polar(0.9, 1.1), 0.0)).unwrap();
    close(distance(&base, &vertical).unwrap(), 0.65266656608235578681, 1e-12);
    close(distance(&base, &horizontal).unwrap(), 0.87209933770348105301, 1e-12);
}

#[test]
fn real_ideal_triangles_are_congruent() {
    let m = ModelSpace::real(2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let [a, b, c] = [0; 3].map(|_| sampling::ideal(m, &mut rng));
        let t = equiradial_ideal(&a, &b, &c).unwrap();
        for d in t.pairwise_distances().unwrap() {
            close(d, plane_delta(), 1e-8);
        }
        let sep = separated_points(&t, default_offset()).unwrap();
        close(sep.separation, 3.963216793733433697, 1e-8);
    }
}

#[test]
fn antipodal_points_in_the_real_plane() {
    let m = ModelSpace::real(2);
    let o = m.origin();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let xi = sampling::ideal(m, &mut rng);
    let eta = opposite_ideal(&o, &xi).unwrap();
    close(spherical_distance(&o, &xi, &eta).unwrap(), PI / 2.0, 1e-3);
}

#[test]
fn vertical_ratio_is_two_pi() {
    let o = HeisPoint::identity(1);
    let q = HeisPoint::planar(Complex64::new(0.0, 0.0), 0.01);
    let cc = cc_distance(&o, &q, CcMethod::Shooting).unwrap();
    let dh = riemannian_distance(&o, &q).unwrap();
    close(cc * cc / dh / (2.0 * PI), 1.0, 2e-2);
}
