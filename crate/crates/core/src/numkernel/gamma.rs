//! Gamma and upper incomplete gamma functions.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(a) for real a that is not a non-positive integer.
pub fn gamma(a: f64) -> f64 {
    if a == a.round() && a <= 0.0 {
        return f64::NAN;
    }
    let twice = 2.0 * a;
    if twice == twice.round() && twice.abs() < 340.0 && (twice as i64) % 2 != 0 {
        return gamma_half_integer(a);
    }
    if a < 0.5 {
        return PI / ((PI * a).sin() * gamma(1.0 - a));
    }
    let x = a - 1.0;
    let mut s = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * s
}

fn gamma_half_integer(a: f64) -> f64 {
    let mut v = PI.sqrt();
    let mut cur = 0.5;
    while cur < a {
        v *= cur;
        cur += 1.0;
    }
    while cur > a {
        cur -= 1.0;
        v /= cur;
    }
    v
}

const SERIES_RADIUS: f64 = 2.0;

/// Upper incomplete gamma Γ(a, z) on the principal branch.
pub fn upper_gamma(a: f64, z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite() && a.is_finite()) {
        return Err(Error::Domain("non-finite incomplete gamma argument".into()));
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Domain(format!("Γ({a}, z) is ambiguous on the negative real axis (z = {z})")));
    }
    if z.norm() == 0.0 {
        return if a > 0.0 {
            Ok(Complex64::new(gamma(a), 0.0))
        } else {
            Err(Error::Domain(format!("Γ({a}, 0) diverges")))
        };
    }
    if z.norm() < SERIES_RADIUS {
        if a == a.round() && a <= 0.0 {
            return Err(Error::Domain(format!("series for Γ({a}, z) requires non-integer order")));
        }
        Ok(Complex64::new(gamma(a), 0.0) - lower_series(a, z))
    } else {
        continued_fraction(a, z)
    }
}

/// Γ(−1/2, z).
pub fn upper_gamma_mhalf(z: Complex64) -> Result<Complex64> {
    upper_gamma(-0.5, z)
}

fn lower_series(a: f64, z: Complex64) -> Complex64 {
    let za = (a * z.ln()).exp();
    let mut zn = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fact = 1.0;
    for n in 0..200 {
        if n > 0 {
            fact *= n as f64;
            zn *= -z;
        }
        let term = zn / (fact * (a + n as f64));
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    za * sum
}

fn continued_fraction(a: f64, z: Complex64) -> Result<Complex64> {
    let tiny = Complex64::new(1e-150, 0.0);
    let mut b = z + 1.0 - a;
    let mut c = Complex64::new(1.0, 0.0) / tiny;
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = b + d * an;
        if d.norm() < 1e-150 {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < 1e-150 {
            c = tiny;
        }
        d = Complex64::new(1.0, 0.0) / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 4.0 * f64::EPSILON {
            return Ok((a * z.ln() - z).exp() * h);
        }
    }
    Err(Error::Domain(format!("continued fraction for Γ({a}, {z}) did not converge")))
}

/// ∫ₓ₀^∞ τ^{−p} e^{iωτ} dτ for x₀ > 0, analytically continued in ω off the upper half-plane.
pub fn power_exp_tail(p: f64, x0: f64, omega: Complex64) -> Result<Complex64> {
    if !(x0 > 0.0) {
        return Err(Error::Domain("power tail needs a positive lower limit".into()));
    }
    if omega.norm() == 0.0 {
        return if p > 1.0 {
            Ok(Complex64::new(x0.powf(1.0 - p) / (p - 1.0), 0.0))
        } else {
            Err(Error::Domain("non-oscillatory power tail diverges".into()))
        };
    }
    let s = Complex64::new(0.0, -1.0) * omega;
    let g = upper_gamma(1.0 - p, s * x0)?;
    Ok(((p - 1.0) * s.ln()).exp() * g)
}
