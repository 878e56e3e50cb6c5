//! Bessel-integral kernels ∫ e^{iEt'} J₁(2bt')/t' dt' over finite and semi-infinite ranges.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Result;
use crate::numkernel::bessel::hankel_coefficients_j1;
use crate::numkernel::{adaptive_quad_points, bessel_j1, panel_points, power_exp_tail, Tolerances};

/// Argument 2bt' beyond which the Hankel expansion replaces quadrature.
const ASYMPTOTIC_ARG: f64 = 50.0;
const HANKEL_TERMS: usize = 40;

/// J₁(2bt)/t, continuous at t = 0.
pub fn j1_ratio(b: f64, t: f64) -> f64 {
    if t == 0.0 {
        b
    } else {
        bessel_j1(2.0 * b * t) / t
    }
}

/// Time after which tails are integrated analytically.
pub fn crossover_time(b: f64) -> f64 {
    ASYMPTOTIC_ARG / (2.0 * b)
}

fn panel_width(b: f64, e: Complex64) -> f64 {
    2.0 * PI / (e.re.abs() + 2.0 * b)
}

/// ∫ₜ₀^∞ e^{iEt'} J₁(2bt')/t' dt' from the Hankel expansion of J₁; requires 2bt₀ ≥ 50.
///
/// For Im E < 0 the integral diverges and the value is its analytic continuation.
pub fn asymptotic_tail(b: f64, e: Complex64, t0: f64) -> Result<Complex64> {
    let x0 = 2.0 * b * t0;
    let i = Complex64::new(0.0, 1.0);
    let phase_p = Complex64::from_polar(1.0, -0.75 * PI);
    let phase_m = Complex64::from_polar(1.0, 0.75 * PI);
    let omega_p = e + 2.0 * b;
    let omega_m = e - 2.0 * b;
    let mut ik = Complex64::new(1.0, 0.0);
    let mut scale = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, a) in hankel_coefficients_j1(HANKEL_TERMS).into_iter().enumerate() {
        if k > 0 {
            ik *= i;
            scale /= 2.0 * b;
        }
        let size = a.abs() * x0.powi(-(k as i32));
        if k > 0 && size < 1e-18 {
            break;
        }
        let p = 1.5 + k as f64;
        let plus = power_exp_tail(p, t0, omega_p)?;
        let minus = power_exp_tail(p, t0, omega_m)?;
        sum += a * scale * (ik * phase_p * plus + ik.conj() * phase_m * minus);
    }
    Ok(sum / (4.0 * PI * b).sqrt())
}

/// L(E, t₀) = ∫ₜ₀^∞ e^{iEt'} J₁(2bt')/t' dt' for t₀ ≥ 0.
pub fn bessel_tail(b: f64, e: Complex64, t0: f64, tol: Tolerances) -> Result<Complex64> {
    let tc = crossover_time(b).max(t0);
    let mut value = asymptotic_tail(b, e, tc)?;
    if t0 < tc {
        let i = Complex64::new(0.0, 1.0);
        let pts = panel_points(t0, tc, panel_width(b, e));
        let q = adaptive_quad_points(|s| (i * e * s).exp() * j1_ratio(b, s), &pts, tol)?;
        value += q.value;
    }
    Ok(value)
}

/// ∫₀^∞ e^{iEt'} J₁(2bt')/t' dt'.
pub fn bessel_transform(b: f64, e: Complex64, tol: Tolerances) -> Result<Complex64> {
    bessel_tail(b, e, 0.0, tol)
}

/// ∫₀ᵗ e^{−iE(t−t')} J₁(2bt')/t' dt' for t ≥ 0.
pub fn bessel_convolution(b: f64, e: Complex64, t: f64, tol: Tolerances) -> Result<Complex64> {
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let i = Complex64::new(0.0, 1.0);
    let pts = panel_points(0.0, t, panel_width(b, e));
    let q = adaptive_quad_points(|s| (-i * e * (t - s)).exp() * j1_ratio(b, s), &pts, tol)?;
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_matches_quadrature_for_real_energy() {
        let b = 1.0;
        let e = Complex64::new(0.7, 0.0);
        let tol = Tolerances::new(1e-13, 1e-12);
        let t0 = crossover_time(b);
        let t1 = 400.0;
        let direct = adaptive_quad_points(
            |s| (Complex64::new(0.0, 1.0) * e * s).exp() * j1_ratio(b, s),
            &panel_points(t0, t1, 1.0),
            tol,
        )
        .unwrap()
        .value;
        let via_tails = asymptotic_tail(b, e, t0).unwrap() - asymptotic_tail(b, e, t1).unwrap();
        assert!((direct - via_tails).norm() < 1e-11, "{direct} vs {via_tails}");
    }

    #[test]
    fn transform_of_zero_energy() {
        // ∫₀^∞ J₁(2bt)/t dt = 1
        let v = bessel_transform(1.3, Complex64::new(0.0, 0.0), Tolerances::new(1e-13, 1e-12)).unwrap();
        assert!((v - 1.0).norm() < 1e-10);
    }

    #[test]
    fn laplace_closed_form() {
        // ∫₀^∞ e^{−st} J₁(2bt)/t dt = (√(s²+4b²) − s)/(2b)
        let b = 0.8;
        let s = Complex64::new(0.4, -1.1);
        let e = Complex64::new(0.0, 1.0) * s;
        let v = bessel_transform(b, e, Tolerances::new(1e-13, 1e-12)).unwrap();
        let exact = ((s * s + 4.0 * b * b).sqrt() - s) / (2.0 * b);
        assert!((v - exact).norm() < 1e-10, "{v} vs {exact}");
    }
}
