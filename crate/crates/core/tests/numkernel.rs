use std::f64::consts::{E, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use resdyn_core::numkernel::{
    adaptive_quad, bessel_j1, erfc_complex, gamma, poly_roots, sqrt_poscut, upper_gamma, upper_gamma_mhalf, Polynomial,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Case = (&'static str, fn(f64) -> Complex64, f64, f64, Complex64);

fn battery() -> Vec<Case> {
    vec![
        ("sin", |x| c(x.sin(), 0.0), 0.0, PI, c(2.0, 0.0)),
        ("cube", |x| c(x.powi(3), 0.0), 0.0, 1.0, c(0.25, 0.0)),
        ("exp", |x| c(x.exp(), 0.0), 0.0, 1.0, c(E - 1.0, 0.0)),
        ("lorentz", |x| c(1.0 / (1.0 + x * x), 0.0), 0.0, 1.0, c(PI / 4.0, 0.0)),
        ("sqrt", |x| c(x.sqrt(), 0.0), 0.0, 1.0, c(2.0 / 3.0, 0.0)),
        ("inv_sqrt", |x| c(1.0 / x.sqrt(), 0.0), 0.0, 1.0, c(2.0, 0.0)),
        ("log", |x| c(x.ln(), 0.0), 0.0, 1.0, c(-1.0, 0.0)),
        ("log_sq", |x| c(x.ln().powi(2), 0.0), 0.0, 1.0, c(2.0, 0.0)),
        ("cos50", |x| c((50.0 * x).cos(), 0.0), 0.0, PI, c(0.0, 0.0)),
        ("gauss", |x| c((-x * x).exp(), 0.0), 0.0, 1.0, c(0.746_824_132_812_427, 0.0)),
        ("x_eix", |x| x * c(0.0, x).exp(), 0.0, 2.0 * PI, c(0.0, -2.0 * PI)),
        ("runge", |x| c(1.0 / (1.0 + 25.0 * x * x), 0.0), -1.0, 1.0, c(0.4 * 5f64.atan(), 0.0)),
        ("kink", |x| c((x - 1.0 / 3.0).abs(), 0.0), 0.0, 1.0, c(5.0 / 18.0, 0.0)),
        ("sin_sq", |x| c(x.sin().powi(2), 0.0), 0.0, PI, c(PI / 2.0, 0.0)),
        ("inv", |x| c(1.0 / x, 0.0), 1.0, E, c(1.0, 0.0)),
        ("chirp", |x| c(0.0, -10.0 * x).exp(), 0.0, 1.0, (c(1.0, 0.0) - c(0.0, -10.0).exp()) / c(0.0, 10.0)),
        ("exp_cos", |x| c(x.exp() * x.cos(), 0.0), 0.0, PI / 2.0, c(((PI / 2.0).exp() - 1.0) / 2.0, 0.0)),
        ("x10", |x| c(x.powi(10), 0.0), 0.0, 1.0, c(1.0 / 11.0, 0.0)),
        ("narrow_peak", |x| c(1.0 / (x * x + 0.01), 0.0), -1.0, 1.0, c(20.0 * 10f64.atan(), 0.0)),
        ("semicircle", |x| c((1.0 - x * x).max(0.0).sqrt(), 0.0), -1.0, 1.0, c(PI / 2.0, 0.0)),
    ]
}

#[test]
fn quadrature_estimates_are_conservative() {
    for (name, f, a, b, exact) in battery() {
        let r = adaptive_quad(f, a, b, 1e-10, 1e-8).unwrap();
        let err = (r.value - exact).norm();
        let floor = 16.0 * f64::EPSILON * exact.norm().max(1.0);
        assert!(err <= 3.0 * r.abs_error_estimate.max(floor), "{name}: err {err:e} est {:e}", r.abs_error_estimate);
        assert!(r.evaluations >= 1);
    }
}

#[test]
fn quadrature_is_deterministic() {
    let f = |x: f64| c((7.0 * x).sin() * x.sqrt(), x.cos());
    let a = adaptive_quad(f, 0.0, 3.0, 1e-12, 1e-10).unwrap();
    let b = adaptive_quad(f, 0.0, 3.0, 1e-12, 1e-10).unwrap();
    assert_eq!(a, b);
}

fn j1_d1(x: f64, h: f64) -> f64 {
    (-bessel_j1(x + 2.0 * h) + 8.0 * bessel_j1(x + h) - 8.0 * bessel_j1(x - h) + bessel_j1(x - 2.0 * h)) / (12.0 * h)
}

fn j1_d2(x: f64, h: f64) -> f64 {
    (-bessel_j1(x + 2.0 * h) + 16.0 * bessel_j1(x + h) - 30.0 * bessel_j1(x) + 16.0 * bessel_j1(x - h)
        - bessel_j1(x - 2.0 * h))
        / (12.0 * h * h)
}

#[test]
fn bessel_satisfies_its_ode() {
    let h = 1e-2;
    let mut x = 0.5;
    while x <= 30.0 {
        let res = x * x * j1_d2(x, h) + x * j1_d1(x, h) + (x * x - 1.0) * bessel_j1(x);
        assert!(res.abs() < 1e-6, "x = {x}: residual {res:e}");
        x += 0.25;
    }
}

#[test]
fn bessel_is_odd_and_matches_hankel_leading_term() {
    for x in [0.3, 2.0, 11.9, 12.1, 40.0, 900.0] {
        assert_eq!(bessel_j1(-x), -bessel_j1(x));
    }
    let lead = (2.0 / (PI * 50.0)).sqrt() * (50.0 - 0.75 * PI).cos();
    assert!((bessel_j1(50.0) - lead).abs() < 1e-2 * lead.abs());
}

fn j1_integral(x: f64) -> f64 {
    adaptive_quad(|s| c((s - x * s.sin()).cos(), 0.0), 0.0, PI, 1e-13, 1e-12).unwrap().value.re / PI
}

/// Γ(a, z) along the ray z + s, s ≥ 0.
fn upper_gamma_ray(a: f64, z: Complex64) -> Complex64 {
    let f = |s: f64| {
        let tau = z + s;
        (tau.ln() * (a - 1.0) - tau).exp()
    };
    adaptive_quad(f, 0.0, 60.0 + z.re.abs(), 1e-15, 1e-13).unwrap().value
}

fn erfc_ray(z: Complex64) -> Complex64 {
    let f = |s: f64| (-(z + s) * (z + s)).exp();
    adaptive_quad(f, 0.0, 12.0, 1e-16, 1e-13).unwrap().value * (2.0 / PI.sqrt())
}

#[test]
fn special_functions_match_integral_oracles() {
    let mut checked = 0;
    for x in [0.1, 1.0, 2.5, 4.0, 7.3, 11.0, 12.5, 19.0, 30.0] {
        let (v, o) = (bessel_j1(x), j1_integral(x));
        assert!((v - o).abs() < 1e-12, "J1({x}) {v} vs {o}");
        checked += 1;
    }
    for (a, z) in [
        (-0.5, c(1.0, 0.0)),
        (-0.5, c(0.3, 0.0)),
        (-0.5, c(2.0, 3.0)),
        (-0.5, c(0.5, -4.0)),
        (-0.5, c(-1.5, 2.0)),
        (1.5, c(3.0, 1.0)),
        (2.5, c(0.7, -0.2)),
        (0.5, c(10.0, 5.0)),
    ] {
        let v = if a == -0.5 { upper_gamma_mhalf(z).unwrap() } else { upper_gamma(a, z).unwrap() };
        let o = upper_gamma_ray(a, z);
        assert!((v - o).norm() < 1e-10 * o.norm().max(1.0), "Γ({a}, {z}) {v} vs {o}");
        checked += 1;
    }
    for z in [c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.5), c(2.0, -1.0), c(-0.7, 0.3), c(0.1, 2.0), c(3.0, 0.2), c(1.0, -2.5)]
    {
        let (v, o) = (erfc_complex(z), erfc_ray(z));
        assert!((v - o).norm() < 1e-10 * o.norm().max(1.0), "erfc({z}) {v} vs {o}");
        checked += 1;
    }
    assert_eq!(checked, 25);
}

#[test]
fn incomplete_gamma_limits() {
    let z = c(100.0, 0.0);
    let v = upper_gamma_mhalf(z).unwrap();
    let lead = z.powf(-1.5) * (-z).exp();
    assert!(((v - lead) / lead).norm() < 0.02);
    assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
    // The leading term alone is off by |a − 1|/|z| = 1.5/|z|; with the first correction the
    // remainder drops below 1/|z|.
    for z in [c(60.0, 10.0), c(80.0, -30.0), c(51.0, 0.0)] {
        let v = upper_gamma_mhalf(z).unwrap();
        let two_term = z.powf(-1.5) * (-z).exp() * (1.0 - 1.5 / z);
        assert!(((v - two_term) / two_term).norm() < 1.0 / z.norm());
    }
}

#[test]
fn erfc_reflection() {
    let two = c(2.0, 0.0);
    assert!((erfc_complex(-two) - (2.0 - erfc_complex(two))).norm() < 1e-12);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let z = c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let lhs = erfc_complex(-z);
        let rhs = 2.0 - erfc_complex(z);
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "{z}");
    }
}

#[test]
fn sqrt_poscut_reconstructs_its_argument() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        let e = c(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
        let w = sqrt_poscut(e);
        assert!((w * w - e).norm() < 1e-14 * e.norm().max(1.0), "{e}");
        assert!(w.im >= 0.0);
    }
    assert!((sqrt_poscut(c(-4.0, 0.0)) - c(0.0, 2.0)).norm() < 1e-15);
    assert!((sqrt_poscut(c(4.0, 0.0)) - 2.0).norm() < 1e-15);
    assert!((sqrt_poscut(c(4.0, -0.0)) + 2.0).norm() < 1e-15);
}

#[test]
fn unit_roots() {
    let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    let roots = poly_roots(&p, 1e-12).unwrap();
    for target in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
        assert!(roots.iter().any(|r| (r - target).norm() < 1e-12));
    }
}

fn max_matching_error(found: &[Complex64], expected: &[Complex64]) -> f64 {
    let mut used = vec![false; found.len()];
    let mut worst: f64 = 0.0;
    for e in expected {
        let (k, d) = found
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, r)| (k, (r - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

fn separated(roots: &[Complex64]) -> bool {
    roots.iter().enumerate().all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > 0.1))
}

proptest! {
    #[test]
    fn construct_then_solve(raw in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..=6)) {
        let roots: Vec<Complex64> = raw.iter().map(|&(re, im)| c(re, im)).collect();
        prop_assume!(separated(&roots));
        let p = Polynomial::from_roots(&roots).unwrap();
        let found = poly_roots(&p, 1e-10).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        prop_assert!(max_matching_error(&found, &roots) < 1e-8);
    }

    #[test]
    fn real_polynomials_give_conjugate_pairs(coeffs in prop::collection::vec(-3.0f64..3.0, 5)) {
        prop_assume!(coeffs[4].abs() > 0.1);
        let p = Polynomial::from_real(&coeffs).unwrap();
        let found = poly_roots(&p, 1e-9).unwrap();
        for r in &found {
            prop_assert!(found.iter().any(|s| (s - r.conj()).norm() < 1e-9));
        }
    }

    #[test]
    fn bessel_oddness(x in -1e4f64..1e4) {
        prop_assert_eq!(bessel_j1(-x), -bessel_j1(x));
    }

    #[test]
    fn gamma_conjugation(re in 0.01f64..40.0, im in -40.0f64..40.0) {
        let z = c(re, im);
        let a = upper_gamma_mhalf(z.conj()).unwrap();
        let b = upper_gamma_mhalf(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-13 * b.norm());
    }
}
