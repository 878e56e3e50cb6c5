use crate::error::{Error, Result};

/// Parameters of the T-shaped two-dot lattice model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TDotParams {
    pub b: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub g: f64,
    pub t2l: f64,
    pub t2r: f64,
}

impl TDotParams {
    pub fn new(b: f64, eps1: f64, eps2: f64, g: f64, t2l: f64, t2r: f64) -> Result<Self> {
        let p = Self { b, eps1, eps2, g, t2l, t2r };
        p.validate()?;
        Ok(p)
    }

    /// b = 1, ε₁ = 0.2, ε₂ = 0, g = 0.4, t₂L = t₂R = 1.
    pub fn reference() -> Self {
        Self { b: 1.0, eps1: 0.2, eps2: 0.0, g: 0.4, t2l: 1.0, t2r: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.b, self.eps1, self.eps2, self.g, self.t2l, self.t2r];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("all lattice parameters must be finite".into()));
        }
        if !(self.b > 0.0) {
            return Err(Error::InvalidParams(format!("hopping b must be positive, got {}", self.b)));
        }
        Ok(())
    }

    /// T = (t₂L² + t₂R²)/b.
    pub fn lead_strength(&self) -> f64 {
        (self.t2l * self.t2l + self.t2r * self.t2r) / self.b
    }

    pub fn with_eps1(mut self, eps1: f64) -> Self {
        self.eps1 = eps1;
        self
    }
}

/// A wave number in the first Brillouin zone with its band energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrillouinPoint {
    pub k: f64,
    pub energy: f64,
}

impl BrillouinPoint {
    pub fn new(k: f64, b: f64) -> Self {
        let pi = std::f64::consts::PI;
        let mut k = (k + pi).rem_euclid(2.0 * pi) - pi;
        if k <= -pi {
            k += 2.0 * pi;
        }
        Self { k, energy: -2.0 * b * k.cos() }
    }

    pub fn lambda(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(1.0, self.k)
    }
}
