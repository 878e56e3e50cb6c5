//! Faddeeva function and complementary error function at complex argument.
//!
//! Uses Weideman's rational approximation with 40 terms in the upper half-plane.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const N: usize = 40;

struct Weideman {
    l: f64,
    coeffs: [f64; N],
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m = 2 * N;
        let m2 = 2 * m;
        let l = (N as f64 / 2f64.sqrt()).sqrt();
        // samples at k = −M+1 … M−1, with a leading zero
        let mut f = vec![0.0; m2];
        for (idx, k) in (-(m as i64) + 1..m as i64).enumerate() {
            let theta = k as f64 * PI / m as f64;
            let t = l * (0.5 * theta).tan();
            f[idx + 1] = (-t * t).exp() * (l * l + t * t);
        }
        let shifted: Vec<f64> = (0..m2).map(|i| f[(i + m) % m2]).collect();
        let mut a = [0.0; N];
        for j in 1..=N {
            let mut re = 0.0;
            for (n, &v) in shifted.iter().enumerate() {
                re += v * (2.0 * PI * (j * n) as f64 / m2 as f64).cos();
            }
            a[N - j] = re / m2 as f64;
        }
        Weideman { l, coeffs: a }
    })
}

fn faddeeva_upper(z: Complex64) -> Complex64 {
    let w = weideman();
    let i = Complex64::new(0.0, 1.0);
    let den = w.l - i * z;
    let zz = (w.l + i * z) / den;
    let p = w.coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * zz + c);
    2.0 * p / (den * den) + (1.0 / PI.sqrt()) / den
}

/// Faddeeva function w(z) = e^{−z²} erfc(−iz).
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.im >= 0.0 {
        faddeeva_upper(z)
    } else {
        2.0 * (-z * z).exp() - faddeeva_upper(-z)
    }
}

/// erfc(z) for complex z.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.re >= 0.0 {
        (-z * z).exp() * faddeeva(i * z)
    } else {
        2.0 - (-z * z).exp() * faddeeva(-i * z)
    }
}

/// Scaled complementary error function e^{z²} erfc(z).
pub fn erfcx_complex(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.re >= 0.0 {
        faddeeva(i * z)
    } else {
        2.0 * (z * z).exp() - faddeeva(-i * z)
    }
}
