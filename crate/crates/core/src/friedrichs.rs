//! Friedrichs model: one level coupled to a half-line continuum with a √ω form factor.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numkernel::{
    adaptive_quad_points, erfcx_complex, panel_points, poly_roots, power_exp_tail, Polynomial, Tolerances,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FriedrichsParams {
    pub omega1: f64,
    pub beta: f64,
    pub g: f64,
}

impl FriedrichsParams {
    pub fn new(omega1: f64, beta: f64, g: f64) -> Result<Self> {
        let p = Self { omega1, beta, g };
        p.validate()?;
        Ok(p)
    }

    /// ω₁ = 1, β = 0.5, g = 0.1.
    pub fn reference() -> Self {
        Self { omega1: 1.0, beta: 0.5, g: 0.1 }
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.omega1, self.beta, self.g].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParams("Friedrichs parameters must be finite".into()));
        }
        if !(self.beta > 0.0) {
            return Err(Error::InvalidParams(format!("beta must be positive, got {}", self.beta)));
        }
        Ok(())
    }

    fn kappa(&self) -> f64 {
        2.0 * PI * self.g * self.g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// η(E) on the physical sheet for real E < 0.
fn eta_negative(p: &FriedrichsParams, e: f64) -> f64 {
    let sb = p.beta.sqrt();
    e - p.omega1 + p.kappa() * sb / (sb + (-e).sqrt())
}

fn eta_negative_derivative(p: &FriedrichsParams, e: f64) -> f64 {
    let sb = p.beta.sqrt();
    let se = (-e).sqrt();
    1.0 + 0.5 * p.kappa() * sb / (se * (sb + se).powi(2))
}

/// ⟨1|(E − H ± i0)⁻¹|1⟩ for real E; single-valued for E < 0.
pub fn green_function(p: &FriedrichsParams, e: f64, side: Side) -> Result<Complex64> {
    p.validate()?;
    if !e.is_finite() {
        return Err(Error::Domain("energy must be finite".into()));
    }
    let denom = if e < 0.0 {
        Complex64::new(eta_negative(p, e), 0.0)
    } else {
        let s = (p.beta * e).sqrt();
        let s = if side == Side::Above { s } else { -s };
        e - p.omega1 + p.kappa() * Complex64::new(p.beta, s) / (p.beta + e)
    };
    if denom.norm() < 1e-12 {
        return Err(Error::PoleProximity(e));
    }
    Ok(1.0 / denom)
}

/// Q(E) = [(E+β)(E−ω₁) + 2πg²β]² + (2πg²)²βE.
pub fn quartic(p: &FriedrichsParams) -> Result<Polynomial> {
    let k = p.kappa();
    let (b, w) = (p.beta, p.omega1);
    // P(E) = E² + (β−ω₁)E + β(κ−ω₁)
    let c0 = b * (k - w);
    let c1 = b - w;
    Polynomial::from_real(&[c0 * c0, 2.0 * c0 * c1 + k * k * b, c1 * c1 + 2.0 * c0, 2.0 * c1, 1.0])
}

/// Monic cubic C(E) = Q(E)/(E + β).
pub fn cubic(p: &FriedrichsParams) -> Result<Polynomial> {
    let q = quartic(p)?;
    let (c, _) = q.deflate(Complex64::new(-p.beta, 0.0));
    Polynomial::new(c.into_iter().map(|z| Complex64::new(z.re, 0.0)).collect())
}

/// The three poles of the cut integrand and their partial-fraction weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FriedrichsPoles {
    pub e_bound: f64,
    pub e_res: Complex64,
    pub e_ares: Complex64,
    pub w_bound: Complex64,
    pub w_res: Complex64,
    pub w_ares: Complex64,
    /// 1/η'(E_B) when E_B is a zero of the physical-sheet η, otherwise zero.
    pub bound_residue: f64,
    pub bound_on_physical_sheet: bool,
}

impl FriedrichsPoles {
    pub fn energy(&self, n: Pole) -> Complex64 {
        match n {
            Pole::Bound => Complex64::new(self.e_bound, 0.0),
            Pole::Resonant => self.e_res,
            Pole::AntiResonant => self.e_ares,
        }
    }

    pub fn weight(&self, n: Pole) -> Complex64 {
        match n {
            Pole::Bound => self.w_bound,
            Pole::Resonant => self.w_res,
            Pole::AntiResonant => self.w_ares,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pole {
    Bound,
    Resonant,
    AntiResonant,
}

impl Pole {
    pub const ALL: [Pole; 3] = [Pole::Bound, Pole::Resonant, Pole::AntiResonant];

    pub fn short(&self) -> &'static str {
        match self {
            Pole::Bound => "B",
            Pole::Resonant => "R",
            Pole::AntiResonant => "AR",
        }
    }
}

pub fn friedrichs_poles(p: &FriedrichsParams) -> Result<FriedrichsPoles> {
    p.validate()?;
    let q = quartic(p)?;
    let scale = q.max_coeff().max(1.0);
    let (_, rem) = q.deflate(Complex64::new(-p.beta, 0.0));
    if rem.norm() > 1e-12 * scale {
        return Err(Error::Domain(format!("E = −β is not a root of Q (remainder {rem})")));
    }
    let c = cubic(p)?;
    let roots = poly_roots(&c, 1e-12)?;
    let real: Vec<_> = roots.iter().filter(|z| z.im == 0.0).collect();
    let lower: Vec<_> = roots.iter().filter(|z| z.im < 0.0).collect();
    if real.len() != 1 || lower.len() != 1 || real[0].re >= 0.0 {
        return Err(Error::UnexpectedRootPattern(roots));
    }
    let e_bound = real[0].re;
    let e_res = *lower[0];
    let cscale = c.max_coeff().max(1.0);
    for &r in &roots {
        if c.eval(r).norm() > 1e-10 * cscale {
            return Err(Error::UnexpectedRootPattern(roots));
        }
    }
    let dc = c.derivative().expect("cubic has a derivative");
    let two_g2 = 2.0 * p.g * p.g;
    let w_bound = Complex64::new((two_g2 / dc.eval(Complex64::new(e_bound, 0.0))).re, 0.0);
    let w_res = two_g2 / dc.eval(e_res);

    let eta_b = eta_negative(p, e_bound);
    let physical = eta_b.abs() < 1e-8 * (1.0 + e_bound.abs() + p.omega1.abs());
    let bound_residue = if physical { 1.0 / eta_negative_derivative(p, e_bound) } else { 0.0 };

    Ok(FriedrichsPoles {
        e_bound,
        e_res,
        e_ares: e_res.conj(),
        w_bound,
        w_res,
        w_ares: w_res.conj(),
        bound_residue,
        bound_on_physical_sheet: physical,
    })
}

/// Cut density 2g²(E+β)√(βE)/Q(E) for E ≥ 0.
pub fn cut_density(p: &FriedrichsParams, e: f64) -> f64 {
    let q = quartic(p).expect("validated parameters").eval(Complex64::new(e, 0.0)).re;
    2.0 * p.g * p.g * (e + p.beta) * (p.beta * e).sqrt() / q
}

/// Partial-fraction form √(βE) Σₙ Wₙ/(E − Eₙ) of the cut density.
pub fn cut_density_partial_fractions(p: &FriedrichsPoles, beta: f64, e: f64) -> Complex64 {
    let s = (beta * e).sqrt();
    Pole::ALL.iter().map(|&n| s * p.weight(n) / (e - p.energy(n))).sum()
}

/// Value with a flag telling whether the asymptotic regime applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptote {
    pub value: Complex64,
    pub valid: bool,
}

/// Poles plus the cached branch check for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct FriedrichsModel {
    pub params: FriedrichsParams,
    pub poles: FriedrichsPoles,
    pub tol: Tolerances,
    e_max: f64,
}

const TAIL_TERMS: usize = 40;
const BRANCH_CHECK_TOL: f64 = 1e-6;

impl FriedrichsModel {
    /// Computes poles and checks the erfc branch against quadrature at t = ±1/|E_R|.
    pub fn new(params: FriedrichsParams) -> Result<Self> {
        Self::with_tolerances(params, Tolerances::default())
    }

    pub fn with_tolerances(params: FriedrichsParams, tol: Tolerances) -> Result<Self> {
        let poles = friedrichs_poles(&params)?;
        let e_max = (50.0 * params.beta).max(50.0 * poles.e_res.norm());
        let model = Self { params, poles, tol, e_max };
        let tc = 1.0 / poles.e_res.norm();
        for n in Pole::ALL {
            for t in [tc, -tc] {
                let closed = model.a_component(n, t)?;
                let quadrature = model.a_component_quadrature(n, t)?;
                if (closed - quadrature).norm() > BRANCH_CHECK_TOL * closed.norm().max(1e-3) {
                    return Err(Error::BranchCheckFailed { component: n.short(), closed, quadrature });
                }
            }
        }
        Ok(model)
    }

    pub fn e_max(&self) -> f64 {
        self.e_max
    }

    fn chirp_points(&self, t: f64) -> Vec<f64> {
        let umax = self.e_max.sqrt();
        let width = (2.0 * PI / (2.0 * umax * t.abs() + 1.0)).min(0.25);
        panel_points(0.0, umax, width)
    }

    /// ∫₀^∞ cut_density(E) e^{−iEt} dE, with the power tail beyond E_max integrated analytically.
    pub fn a_cut_direct(&self, t: f64) -> Result<Complex64> {
        let p = &self.params;
        let q = quartic(p)?;
        let two_g2 = 2.0 * p.g * p.g;
        let sb = p.beta.sqrt();
        let i = Complex64::new(0.0, 1.0);
        let body = adaptive_quad_points(
            |u| {
                let e = u * u;
                let qe = q.eval(Complex64::new(e, 0.0)).re;
                (-i * e * t).exp() * (2.0 * u * two_g2 * (e + p.beta) * sb * u / qe)
            },
            &self.chirp_points(t),
            self.tol,
        )?;
        Ok(body.value + two_g2 * sb * self.inverse_cubic_tail(t)?)
    }

    /// ∫_{E_max}^∞ √E e^{−iEt}/C(E) dE from the expansion of 1/C in powers of 1/E.
    fn inverse_cubic_tail(&self, t: f64) -> Result<Complex64> {
        let c = cubic(&self.params)?;
        let cc: Vec<f64> = c.coeffs().iter().map(|z| z.re).collect();
        let mut d = vec![0.0; TAIL_TERMS];
        let omega = Complex64::new(-t, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..TAIL_TERMS {
            d[j] = if j == 0 { 1.0 } else { 0.0 };
            for (m, &coef) in [cc[2], cc[1], cc[0]].iter().enumerate() {
                if j > m {
                    d[j] -= coef * d[j - 1 - m];
                }
            }
            let size = d[j].abs() * self.e_max.powf(-1.5 - j as f64);
            sum += d[j] * power_exp_tail(2.5 + j as f64, self.e_max, omega)?;
            if j > 2 && size < 1e-20 {
                break;
            }
        }
        Ok(sum)
    }

    /// Closed-form component Aₙ(t); diverges as |t|^{−1/2} at t = 0.
    pub fn a_component(&self, n: Pole, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Err(Error::Domain("individual components diverge at t = 0".into()));
        }
        let w = self.poles.weight(n);
        let z = (-self.poles.energy(n)).sqrt();
        let s = Complex64::new(0.0, t).sqrt();
        let sb = self.params.beta.sqrt();
        Ok(w * sb * (PI.sqrt() / s - PI * z * erfcx_complex(z * s)))
    }

    /// Σₙ Aₙ(t), finite at t = 0.
    pub fn a_component_sum(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            let sb = self.params.beta.sqrt();
            let sum: Complex64 = Pole::ALL.iter().map(|&n| self.poles.weight(n) * (-self.poles.energy(n)).sqrt()).sum();
            return Ok(-PI * sb * sum);
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for n in Pole::ALL {
            sum += self.a_component(n, t)?;
        }
        Ok(sum)
    }

    /// Aₙ(t) by direct quadrature of its defining integral.
    pub fn a_component_quadrature(&self, n: Pole, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return Err(Error::Domain("component integral diverges at t = 0".into()));
        }
        let en = self.poles.energy(n);
        let w = self.poles.weight(n);
        let sb = self.params.beta.sqrt();
        let i = Complex64::new(0.0, 1.0);
        let body = adaptive_quad_points(
            |u| {
                let e = u * u;
                (-i * e * t).exp() * (2.0 * u * u) / (e - en)
            },
            &self.chirp_points(t),
            Tolerances::new(self.tol.abs / (w.norm() * sb).max(1e-300), self.tol.rel),
        )?;
        // √E/(E − Eₙ) = Σⱼ Eₙʲ E^{−1/2−j}
        let omega = Complex64::new(-t, 0.0);
        let mut tail = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for j in 0..TAIL_TERMS {
            tail += pow * power_exp_tail(0.5 + j as f64, self.e_max, omega)?;
            pow *= en;
            if (pow.norm() * self.e_max.powf(-0.5 - j as f64)) < 1e-20 {
                break;
            }
        }
        Ok(w * sb * (body.value + tail))
    }

    /// Large-negative-time form of A_R(t); valid for −t|E_R| ≥ 10.
    pub fn a_component_asymptotic(&self, t: f64) -> Asymptote {
        let er = self.poles.e_res;
        let z = (-er).sqrt();
        let w = z * Complex64::new(0.0, t).sqrt();
        let value = self.poles.w_res * (PI * self.params.beta).sqrt() * z / (2.0 * w * w * w);
        Asymptote { value, valid: -t * er.norm() >= 10.0 }
    }

    /// A(t) = bound term + cut integral.
    pub fn survival_total(&self, t: f64) -> Result<Complex64> {
        let bound = self.poles.bound_residue * Complex64::new(0.0, -self.poles.e_bound * t).exp();
        Ok(bound + self.a_cut_direct(t)?)
    }

    /// A(t) with the cut integral replaced by the erfc component sum.
    pub fn survival_from_components(&self, t: f64) -> Result<Complex64> {
        let bound = self.poles.bound_residue * Complex64::new(0.0, -self.poles.e_bound * t).exp();
        Ok(bound + self.a_component_sum(t)?)
    }
}
