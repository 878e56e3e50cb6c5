//! Point spectrum of the lattice model: roots of P₄(λ), residue weights and classification.

use num_complex::Complex64;

use super::params::TDotParams;
use crate::error::{Error, Result};
use crate::numkernel::{poly_roots, Polynomial, Tolerances};

const ROOT_TOL: f64 = 1e-10;
const REAL_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-9;

/// f(λ) = h(λ)·[−b(λ+1/λ) − ε₂ + λT] − g².
pub fn f_lambda(p: &TDotParams, lam: Complex64) -> Result<Complex64> {
    let h = h_lambda(p, lam)?;
    let second = -p.b * (lam + 1.0 / lam) - p.eps2 + lam * p.lead_strength();
    Ok(h * second - p.g * p.g)
}

/// h(λ) = −b(λ+1/λ) − ε₁.
pub fn h_lambda(p: &TDotParams, lam: Complex64) -> Result<Complex64> {
    if lam.norm() == 0.0 {
        return Err(Error::Domain("h(λ) is singular at λ = 0".into()));
    }
    Ok(-p.b * (lam + 1.0 / lam) - p.eps1)
}

/// E = −b(λ + 1/λ).
pub fn energy_of(b: f64, lam: Complex64) -> Complex64 {
    -b * (lam + 1.0 / lam)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateClass {
    Bound,
    AntiBound,
    Resonant,
    AntiResonant,
}

impl StateClass {
    pub fn label(&self) -> &'static str {
        match self {
            StateClass::Bound => "bound",
            StateClass::AntiBound => "anti-bound",
            StateClass::Resonant => "resonant",
            StateClass::AntiResonant => "anti-resonant",
        }
    }

    pub fn short(&self) -> &'static str {
        match self {
            StateClass::Bound => "B",
            StateClass::AntiBound => "AB",
            StateClass::Resonant => "R",
            StateClass::AntiResonant => "AR",
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, StateClass::Resonant | StateClass::AntiResonant)
    }
}

/// Classifies a root by its position relative to the unit circle.
pub fn classify(lam: Complex64, energy: Complex64) -> Result<StateClass> {
    if (lam.norm() - 1.0).abs() < UNIT_TOL {
        return Err(Error::Unclassifiable(lam));
    }
    if lam.im.abs() < REAL_TOL {
        return Ok(if lam.norm() < 1.0 { StateClass::Bound } else { StateClass::AntiBound });
    }
    Ok(if energy.im < 0.0 { StateClass::Resonant } else { StateClass::AntiResonant })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteState {
    pub lam: Complex64,
    pub energy: Complex64,
    pub class: StateClass,
    /// wₙ = λₙ⟨d₁|ψₙ⟩⟨ψ̃ₙ|d₁⟩.
    pub weight_w: Complex64,
    /// ⟨d₁|φₙ⟩⟨φ̃ₙ|d₁⟩ = (1/λₙ − λₙ)wₙ.
    pub dyad_phi: Complex64,
    /// qₙ = λₙ⟨d₁|ψₙ⟩⟨ψ̃ₙ|d₂⟩.
    pub weight_q: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumWarning {
    /// Two roots closer than 1e-8; the parameters sit near an exceptional point.
    NearDegenerate { gap: f64 },
    /// T = b, so P₄ drops to a cubic and only three states exist.
    DegenerateLeadCoupling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub params: TDotParams,
    pub states: Vec<DiscreteState>,
    pub warnings: Vec<SpectrumWarning>,
    pub tol: Tolerances,
}

impl Spectrum {
    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, n: usize) -> Result<&DiscreteState> {
        self.states.get(n).ok_or(Error::StateIndex(n))
    }

    pub fn index_of(&self, class: StateClass) -> Option<usize> {
        self.states.iter().position(|s| s.class == class)
    }

    pub fn resonant_index(&self) -> Result<usize> {
        self.index_of(StateClass::Resonant).ok_or(Error::NoResonance)
    }

    pub fn resonant(&self) -> Result<&DiscreteState> {
        Ok(&self.states[self.resonant_index()?])
    }

    pub fn count(&self, class: StateClass) -> usize {
        self.states.iter().filter(|s| s.class == class).count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.warnings.contains(&SpectrumWarning::DegenerateLeadCoupling)
    }

    /// Σₙ wₙ/λₙ, equal to one by completeness.
    pub fn completeness(&self) -> Complex64 {
        self.states.iter().map(|s| s.weight_w / s.lam).sum()
    }
}

/// P₄(λ) = [(bλ²+ε₁λ+b)((b−T)λ²+ε₂λ+b) − g²λ²]/b², and whether T = b trimmed it to a cubic.
pub fn p4_polynomial(p: &TDotParams) -> Result<(Polynomial, bool)> {
    p.validate()?;
    let b = p.b;
    let t = p.lead_strength();
    let degenerate = (b - t).abs() <= 1e-12 * b;
    let lead = if degenerate { 0.0 } else { b - t };
    let c = [
        b * b,
        b * p.eps2 + p.eps1 * b,
        b * lead + p.eps1 * p.eps2 + b * b - p.g * p.g,
        p.eps1 * lead + b * p.eps2,
        b * lead,
    ];
    let scale = b * b;
    let poly = Polynomial::from_real(&c.map(|x| x / scale))?;
    Ok((poly, degenerate))
}

/// Roots, residue weights and classes of the point spectrum.
pub fn discrete_spectrum(p: &TDotParams) -> Result<Spectrum> {
    let (poly, degenerate) = p4_polynomial(p)?;
    let roots = poly_roots(&poly, ROOT_TOL)?;
    let b = p.b;
    let t = p.lead_strength();

    let mut states = Vec::with_capacity(roots.len());
    for &lam in &roots {
        let (_, dp) = poly.eval_with_derivative(lam);
        // P₄' carries the 1/b² normalization
        let dpu = dp * (b * b);
        let q2 = (t - b) * lam * lam - p.eps2 * lam - b;
        let weight_w = b * q2 / dpu;
        let weight_q = -b * p.g * lam / dpu;
        let energy = energy_of(b, lam);
        let class = classify(lam, energy)?;
        states.push(DiscreteState { lam, energy, class, weight_w, dyad_phi: (1.0 / lam - lam) * weight_w, weight_q });
    }
    enforce_conjugate_pairs(&mut states);
    states.sort_by(|x, y| x.class.cmp(&y.class).then(x.lam.re.total_cmp(&y.lam.re)));

    let mut warnings = Vec::new();
    if degenerate {
        warnings.push(SpectrumWarning::DegenerateLeadCoupling);
    }
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    if gap < 1e-8 {
        warnings.push(SpectrumWarning::NearDegenerate { gap });
    }
    Ok(Spectrum { params: *p, states, warnings, tol: Tolerances::default() })
}

fn enforce_conjugate_pairs(states: &mut [DiscreteState]) {
    let Some(r) = states.iter().position(|s| s.class == StateClass::Resonant) else {
        return;
    };
    let Some(a) = states.iter().position(|s| s.class == StateClass::AntiResonant) else {
        return;
    };
    let res = states[r];
    states[a] = DiscreteState {
        lam: res.lam.conj(),
        energy: res.energy.conj(),
        class: StateClass::AntiResonant,
        weight_w: res.weight_w.conj(),
        dyad_phi: res.dyad_phi.conj(),
        weight_q: res.weight_q.conj(),
    };
}
