//! Ratio r(t), Zeno time and short- and long-time approximations of the resonant component.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use super::components::component_chi;
use super::spectrum::{energy_of, Spectrum};
use crate::error::{Error, Result};

/// r(t) = |χ_R(t)/χ_R(−t)|².
pub fn ratio_r(s: &Spectrum, t: f64) -> Result<f64> {
    let n = s.resonant_index()?;
    let fwd = component_chi(s, n, t)?;
    let bwd = component_chi(s, n, -t)?;
    if bwd.norm() < 1e-300 {
        return Err(Error::Underflow(t));
    }
    Ok((fwd / bwd).norm_sqr())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoReport {
    pub t0: f64,
    pub tz: f64,
    /// |Im t₀| / |Re t₀| of the complex expression before taking the real part.
    pub imag_fraction: f64,
    /// False when |Im E_R| ≥ |Re E_R|.
    pub assumption_holds: bool,
}

/// Zeno time from the resonant root.
pub fn zeno_time(s: &Spectrum) -> Result<ZenoReport> {
    let r = s.resonant()?;
    Ok(zeno_time_from(r.lam, r.energy))
}

/// t₀ = Re[(2 log λ − πi)/(iE)] for an arbitrary (λ, E) pair.
pub fn zeno_time_from(lam: Complex64, energy: Complex64) -> ZenoReport {
    let i = Complex64::new(0.0, 1.0);
    let t0c = (2.0 * lam.ln() - PI * i) / (i * energy);
    ZenoReport {
        t0: t0c.re.abs(),
        tz: 1.0 / energy.re.abs(),
        imag_fraction: t0c.im.abs() / t0c.re.abs(),
        assumption_holds: energy.im.abs() < energy.re.abs(),
    }
}

/// Root λ (|λ| > 1) of E = −b(λ + 1/λ).
pub fn second_sheet_lambda(b: f64, energy: Complex64) -> Complex64 {
    let disc = (energy * energy - 4.0 * b * b).sqrt();
    let a = (-energy + disc) / (2.0 * b);
    let c = (-energy - disc) / (2.0 * b);
    let lam = if a.norm() > c.norm() { a } else { c };
    debug_assert!((energy_of(b, lam) - energy).norm() < 1e-9 * (1.0 + energy.norm()));
    lam
}

/// Short-time resonant probability with J₁(2bt) ≈ bt.
pub fn short_time_resonant_prob(s: &Spectrum, t: f64) -> Result<f64> {
    Ok(short_time_resonant_amplitude(s, t)?.norm_sqr())
}

/// Amplitude whose squared modulus is the short-time resonant probability.
pub fn short_time_resonant_amplitude(s: &Spectrum, t: f64) -> Result<Complex64> {
    let r = s.resonant()?;
    let b = s.params.b;
    let i = Complex64::new(0.0, 1.0);
    let e = r.energy;
    let bracket = 1.0 - (b * r.lam / e) * ((i * e * t).exp() - 1.0);
    Ok(r.weight_w / r.lam * (-i * e * t).exp() * bracket)
}

/// Long-time form of the resonant component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongTimeAmplitude {
    /// power_law + pole.
    pub value: Complex64,
    /// Band-edge t^{−3/2} contribution.
    pub power_law: Complex64,
    /// Surviving exponential pole term (zero for t < 0).
    pub pole: Complex64,
    /// b|t| > 50.
    pub valid: bool,
}

fn band_edge_brackets(b: f64, e: Complex64, bt: f64) -> (Complex64, Complex64) {
    let up = Complex64::from_polar(1.0, 2.0 * bt);
    let down = up.conj();
    let em = Complex64::from_polar(1.0, -FRAC_PI_4);
    let ep = em.conj();
    let forward = b * em / (2.0 * b + e) * up + b * ep / (2.0 * b - e) * down;
    let backward = b * em / (2.0 * b - e) * up + b * ep / (2.0 * b + e) * down;
    (forward, backward)
}

/// Asymptotic resonant component at signed time t.
pub fn longtime_asymptotic(s: &Spectrum, t: f64) -> Result<LongTimeAmplitude> {
    let r = s.resonant()?;
    if t == 0.0 {
        return Err(Error::Domain("long-time form diverges at t = 0".into()));
    }
    let b = s.params.b;
    let i = Complex64::new(0.0, 1.0);
    let bt = b * t.abs();
    let (fwd, bwd) = band_edge_brackets(b, r.energy, bt);
    let envelope = r.weight_w / (2.0 * PI.sqrt()) * bt.powf(-1.5);
    let (power_law, pole) = if t >= 0.0 {
        (i * envelope * fwd, r.dyad_phi * (-i * r.energy * t).exp())
    } else {
        (-i * envelope * bwd, Complex64::new(0.0, 0.0))
    };
    Ok(LongTimeAmplitude { value: power_law + pole, power_law, pole, valid: bt > 50.0 })
}

/// Long-time limit of r(t) from the band-edge brackets alone.
pub fn longtime_ratio(s: &Spectrum, t: f64) -> Result<f64> {
    let r = s.resonant()?;
    let (fwd, bwd) = band_edge_brackets(s.params.b, r.energy, s.params.b * t.abs());
    Ok((fwd / bwd).norm_sqr())
}
