//! Exceptional point of the resonance–antiresonance pair.

use super::params::TDotParams;
use super::spectrum::{discrete_spectrum, p4_polynomial};
use crate::error::{Error, Result};

/// Discriminant of P₄ in λ, from the Sylvester resultant of P₄ and P₄'.
pub fn p4_discriminant(p: &TDotParams) -> Result<f64> {
    let (poly, _) = p4_polynomial(p)?;
    let a: Vec<f64> = poly.coeffs().iter().map(|c| c.re).collect();
    Ok(discriminant(&a))
}

/// Discriminant of a real polynomial given by ascending coefficients.
pub fn discriminant(a: &[f64]) -> f64 {
    let n = a.len() - 1;
    let da: Vec<f64> = (1..=n).map(|k| k as f64 * a[k]).collect();
    let size = 2 * n - 1;
    let mut m = vec![vec![0.0; size]; size];
    // rows of P shifted n−1 times, rows of P' shifted n times; descending coefficients
    for r in 0..n - 1 {
        for k in 0..=n {
            m[r][r + k] = a[n - k];
        }
    }
    for r in 0..n {
        for k in 0..n {
            m[n - 1 + r][r + k] = da[n - 1 - k];
        }
    }
    let res = determinant(m);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * res / a[n]
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= factor * m[col][c];
            }
        }
    }
    det
}

fn complex_count(p: &TDotParams) -> Result<usize> {
    Ok(discrete_spectrum(p)?.states.iter().filter(|s| s.class.is_complex()).count())
}

/// ε₁ at which the resonance pair coalesces, by bisection on the discriminant sign.
pub fn ep_locate(p: &TDotParams, eps1_lo: f64, eps1_hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (eps1_lo.min(eps1_hi), eps1_lo.max(eps1_hi));
    let at = |e: f64| p.with_eps1(e);
    if complex_count(&at(lo))? == complex_count(&at(hi))? {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut d_lo = p4_discriminant(&at(lo))?;
    let d_hi = p4_discriminant(&at(hi))?;
    if d_lo.signum() == d_hi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) || hi - lo <= 1e-13 * mid.abs().max(1.0) {
            break;
        }
        let d = p4_discriminant(&at(mid))?;
        if d == 0.0 {
            return Ok(mid);
        }
        if d.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
