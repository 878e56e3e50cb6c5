//! Survival amplitude and its T-symmetric decomposition into per-state components.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::kernel::{asymptotic_tail, bessel_convolution, bessel_tail, bessel_transform, crossover_time};
use super::spectrum::{f_lambda, DiscreteState, Spectrum, StateClass};
use crate::error::{Error, Result};
use crate::numkernel::{adaptive_quad_points, panel_points, Tolerances};

/// Which part of a decomposed amplitude to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    State(usize),
    Total,
}

/// Initial-state phase θ for (|d₁⟩ + e^{iθ}|d₂⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaState {
    pub theta: f64,
}

impl ThetaState {
    pub fn new(theta: f64) -> Self {
        Self { theta: theta.rem_euclid(2.0 * PI) }
    }
}

/// Forward form e^{−iEt}/λ − i∫₀ᵗ e^{−iE(t−t')} J₁(2bt')/t' dt' for t ≥ 0.
fn forward(b: f64, lam: Complex64, e: Complex64, t: f64, tol: Tolerances) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let phase = (-i * e * t).exp();
    if t <= crossover_time(b) {
        Ok(phase / lam - i * bessel_convolution(b, e, t, tol)?)
    } else {
        let total = bessel_transform(b, e, tol)?;
        Ok(phase * (1.0 / lam - i * total) + i * phase * asymptotic_tail(b, e, t)?)
    }
}

/// Resonant kernel at t = −τ < 0: −i e^{iEτ} ∫_τ^∞ e^{−iEs} J₁(2bs)/s ds.
fn resonant_backward(b: f64, e: Complex64, tau: f64, tol: Tolerances) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    Ok(-i * (i * e * tau).exp() * bessel_tail(b, -e, tau, tol)?)
}

fn resonant_kernel(b: f64, lam: Complex64, e: Complex64, t: f64, tol: Tolerances) -> Result<Complex64> {
    if t >= 0.0 {
        forward(b, lam, e, t, tol)
    } else {
        resonant_backward(b, e, -t, tol)
    }
}

/// Time dependence of state n with unit weight; component_chi multiplies it by wₙ.
pub fn component_kernel(s: &Spectrum, n: usize, t: f64) -> Result<Complex64> {
    let st = s.state(n)?;
    state_kernel(s.params.b, st, t, s.tol)
}

fn state_kernel(b: f64, st: &DiscreteState, t: f64, tol: Tolerances) -> Result<Complex64> {
    match st.class {
        StateClass::Resonant => resonant_kernel(b, st.lam, st.energy, t, tol),
        StateClass::AntiResonant => Ok(resonant_kernel(b, st.lam.conj(), st.energy.conj(), -t, tol)?.conj()),
        StateClass::Bound | StateClass::AntiBound => {
            if t >= 0.0 {
                forward(b, st.lam, st.energy, t, tol)
            } else {
                Ok(forward(b, st.lam, st.energy, -t, tol)?.conj())
            }
        }
    }
}

/// ⟨d₁|χₙ(t)⟩.
pub fn component_chi(s: &Spectrum, n: usize, t: f64) -> Result<Complex64> {
    Ok(s.state(n)?.weight_w * component_kernel(s, n, t)?)
}

/// Σₙ ⟨d₁|χₙ(t)⟩.
pub fn survival_components_sum(s: &Spectrum, t: f64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..s.len() {
        sum += component_chi(s, n, t)?;
    }
    Ok(sum)
}

/// Weight (wₙ + e^{iθ}qₙ)/√2 of state n for the θ initial state.
pub fn theta_weight(st: &DiscreteState, th: ThetaState) -> Complex64 {
    (st.weight_w + Complex64::from_polar(1.0, th.theta) * st.weight_q) * FRAC_1_SQRT_2
}

/// ⟨d₁|ψ_θ(t)⟩ restricted to one state or summed over all.
pub fn theta_amplitude(s: &Spectrum, th: ThetaState, sel: Selector, t: f64) -> Result<Complex64> {
    match sel {
        Selector::State(n) => Ok(theta_weight(s.state(n)?, th) * component_kernel(s, n, t)?),
        Selector::Total => {
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..s.len() {
                sum += theta_weight(&s.states[n], th) * component_kernel(s, n, t)?;
            }
            Ok(sum)
        }
    }
}

/// A(t) from bound-state poles plus quadrature around the unit circle.
pub fn survival_direct(s: &Spectrum, t: f64) -> Result<Complex64> {
    let p = &s.params;
    let b = p.b;
    let i = Complex64::new(0.0, 1.0);
    let mut sum: Complex64 = s
        .states
        .iter()
        .filter(|st| st.class == StateClass::Bound)
        .map(|st| st.dyad_phi * (-i * st.energy * t).exp())
        .sum();

    let prefactor = 2.0 * p.g * p.g * p.lead_strength() * b / PI;
    if prefactor != 0.0 {
        let width = (2.0 * PI / (2.0 * b * t.abs() + 1.0)).min(0.25);
        let pts = panel_points(0.0, PI, width);
        let q = adaptive_quad_points(
            |k| {
                let lam = Complex64::from_polar(1.0, k);
                let f = f_lambda(p, lam).unwrap_or(Complex64::new(f64::NAN, 0.0));
                let sin = k.sin();
                (i * 2.0 * b * t * k.cos()).exp() * (sin * sin / f.norm_sqr())
            },
            &pts,
            Tolerances::new(s.tol.abs / prefactor, s.tol.rel),
        );
        sum += prefactor * q?.value;
    }
    Ok(sum)
}

/// The projected resonance term ⟨d₁|φ_R⟩e^{−iE_R t}⟨φ̃_R|d₁⟩.
pub fn isolated_residue_amplitude(s: &Spectrum, t: f64) -> Result<Complex64> {
    let r = s.resonant()?;
    Ok(r.dyad_phi * (Complex64::new(0.0, -1.0) * r.energy * t).exp())
}

/// Direct forward evaluation for any class and t ≥ 0, bypassing the reflection rules.
pub fn component_chi_forward(s: &Spectrum, n: usize, t: f64) -> Result<Complex64> {
    if t < 0.0 {
        return Err(Error::Domain("forward form needs t ≥ 0".into()));
    }
    let st = s.state(n)?;
    Ok(st.weight_w * forward(s.params.b, st.lam, st.energy, t, s.tol)?)
}
