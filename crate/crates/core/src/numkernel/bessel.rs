//! Bessel functions of the first kind.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SERIES_MAX: f64 = 4.0;
const HANKEL_MIN: f64 = 25.0;

/// J₁(x) for real x.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax == 0.0 {
        0.0
    } else if ax <= SERIES_MAX {
        j1_series(ax)
    } else if ax < HANKEL_MIN {
        miller(1, ax)[1]
    } else {
        j1_hankel(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// J₀(x) for real x.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        1.0
    } else if ax < HANKEL_MIN {
        miller(0, ax)[0]
    } else {
        let (p, q) = hankel_pq(0.0, ax);
        let (s, c) = ax.sin_cos();
        // χ = x − π/4
        let cos_chi = (c + s) * FRAC_1_SQRT_2;
        let sin_chi = (s - c) * FRAC_1_SQRT_2;
        (2.0 / (PI * ax)).sqrt() * (p * cos_chi - q * sin_chi)
    }
}

/// J₀(x), …, J_nmax(x) by Miller's backward recurrence.
pub fn bessel_jn_sequence(nmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; nmax + 1];
        v[0] = 1.0;
        return v;
    }
    let mut v = miller(nmax, x.abs());
    if x < 0.0 {
        for (k, jk) in v.iter_mut().enumerate() {
            if k % 2 == 1 {
                *jk = -*jk;
            }
        }
    }
    v
}

fn j1_series(x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = h;
    let mut sum = h;
    for m in 1..40 {
        term *= -h2 / (m as f64 * (m + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let top = nmax.max(x.ceil() as usize) + 30 + (12.0 * x.max(1.0).cbrt()) as usize;
    let start = top + top % 2;
    let mut out = vec![0.0; nmax + 1];
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // `cur` now holds J_{k-1}
        let idx = k - 1;
        if idx <= nmax {
            out[idx] = cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Hankel asymptotic P and Q series for order ν.
fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn j1_hankel(x: f64) -> f64 {
    let (p, q) = hankel_pq(1.0, x);
    let (s, c) = x.sin_cos();
    // χ = x − 3π/4
    let cos_chi = (s - c) * FRAC_1_SQRT_2;
    let sin_chi = -(s + c) * FRAC_1_SQRT_2;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Coefficients aₖ(1) of the Hankel expansion of J₁.
pub fn hankel_coefficients_j1(n: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(n);
    let mut term = 1.0;
    for k in 0..n {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (4.0 - odd * odd) / (k as f64 * 8.0);
        }
        a.push(term);
    }
    a
}
