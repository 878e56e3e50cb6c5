//! Amplitude time series and the registry of interchangeable amplitude representations.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::friedrichs::FriedrichsModel;
use crate::lattice::{
    dynamics::short_time_resonant_amplitude, isolated_residue_amplitude, longtime_asymptotic, survival_components_sum,
    survival_direct, theta_amplitude, Selector, Spectrum, ThetaState,
};
use crate::oracle::{build_hamiltonian, propagate, InitialState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    DirectContour,
    BesselComponentSum,
    Oracle,
    IsolatedResidue,
    ShortTime,
    LongTimeAsymptotic,
    FriedrichsCut,
    FriedrichsErfc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentTag {
    Total,
    State(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSeries {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    pub representation: Representation,
    pub component: ComponentTag,
}

impl AmplitudeSeries {
    pub fn new(
        times: Vec<f64>,
        values: Vec<Complex64>,
        representation: Representation,
        component: ComponentTag,
    ) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::Domain("times and values differ in length".into()));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("series times must be strictly increasing".into()));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain("series contains non-finite values".into()));
        }
        Ok(Self { times, values, representation, component })
    }
}

/// Evaluates `f` on every grid point in parallel; output order follows `times`.
pub fn par_grid<T, F>(times: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    times.par_iter().map(|&t| f(t)).collect()
}

/// One way of computing the survival amplitude of a configured model.
pub trait AmplitudeModel: Send + Sync {
    fn name(&self) -> &'static str;
    fn representation(&self) -> Representation;
    fn amplitude(&self, t: f64) -> Result<Complex64>;

    fn series(&self, times: &[f64]) -> Result<AmplitudeSeries> {
        let values = par_grid(times, |t| self.amplitude(t))?;
        AmplitudeSeries::new(times.to_vec(), values, self.representation(), ComponentTag::Total)
    }
}

/// Model state shared by every representation.
#[derive(Debug, Clone)]
pub enum ModelContext {
    Lattice { spectrum: Spectrum, theta: Option<ThetaState>, oracle_sites: usize },
    Friedrichs(FriedrichsModel),
}

impl ModelContext {
    fn lattice(&self, name: &str) -> Result<(&Spectrum, Option<ThetaState>, usize)> {
        match self {
            ModelContext::Lattice { spectrum, theta, oracle_sites } => Ok((spectrum, *theta, *oracle_sites)),
            ModelContext::Friedrichs(_) => {
                Err(Error::Domain(format!("representation '{name}' needs the lattice model")))
            }
        }
    }

    fn friedrichs(&self, name: &str) -> Result<&FriedrichsModel> {
        match self {
            ModelContext::Friedrichs(m) => Ok(m),
            ModelContext::Lattice { .. } => {
                Err(Error::Domain(format!("representation '{name}' needs the Friedrichs model")))
            }
        }
    }
}

struct DirectContour(Spectrum);

impl AmplitudeModel for DirectContour {
    fn name(&self) -> &'static str {
        "direct-contour"
    }
    fn representation(&self) -> Representation {
        Representation::DirectContour
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        survival_direct(&self.0, t)
    }
}

struct BesselComponents(Spectrum, Option<ThetaState>);

impl AmplitudeModel for BesselComponents {
    fn name(&self) -> &'static str {
        "bessel-components"
    }
    fn representation(&self) -> Representation {
        Representation::BesselComponentSum
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        match self.1 {
            Some(th) => theta_amplitude(&self.0, th, Selector::Total, t),
            None => survival_components_sum(&self.0, t),
        }
    }
}

struct LatticeOracle {
    spectrum: Spectrum,
    theta: Option<ThetaState>,
    sites: usize,
}

impl LatticeOracle {
    fn run(&self, times: &[f64]) -> Result<Vec<Complex64>> {
        let l = build_hamiltonian(&self.spectrum.params, self.sites)?;
        let init = self.theta.map_or(InitialState::D1, |th| InitialState::Theta(th.theta));
        Ok(propagate(&l, init, times)?.d1)
    }
}

impl AmplitudeModel for LatticeOracle {
    fn name(&self) -> &'static str {
        "lattice-oracle"
    }
    fn representation(&self) -> Representation {
        Representation::Oracle
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        Ok(self.run(&[t])?[0])
    }
    fn series(&self, times: &[f64]) -> Result<AmplitudeSeries> {
        AmplitudeSeries::new(times.to_vec(), self.run(times)?, Representation::Oracle, ComponentTag::Total)
    }
}

struct IsolatedResidue(Spectrum, usize);

impl AmplitudeModel for IsolatedResidue {
    fn name(&self) -> &'static str {
        "isolated-residue"
    }
    fn representation(&self) -> Representation {
        Representation::IsolatedResidue
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        isolated_residue_amplitude(&self.0, t)
    }
    fn series(&self, times: &[f64]) -> Result<AmplitudeSeries> {
        let values = par_grid(times, |t| self.amplitude(t))?;
        AmplitudeSeries::new(times.to_vec(), values, self.representation(), ComponentTag::State(self.1))
    }
}

struct ShortTime(Spectrum, usize);

impl AmplitudeModel for ShortTime {
    fn name(&self) -> &'static str {
        "short-time"
    }
    fn representation(&self) -> Representation {
        Representation::ShortTime
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        short_time_resonant_amplitude(&self.0, t)
    }
    fn series(&self, times: &[f64]) -> Result<AmplitudeSeries> {
        let values = par_grid(times, |t| self.amplitude(t))?;
        AmplitudeSeries::new(times.to_vec(), values, self.representation(), ComponentTag::State(self.1))
    }
}

struct LongTime(Spectrum, usize);

impl AmplitudeModel for LongTime {
    fn name(&self) -> &'static str {
        "long-time"
    }
    fn representation(&self) -> Representation {
        Representation::LongTimeAsymptotic
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        Ok(longtime_asymptotic(&self.0, t)?.value)
    }
    fn series(&self, times: &[f64]) -> Result<AmplitudeSeries> {
        let values = par_grid(times, |t| self.amplitude(t))?;
        AmplitudeSeries::new(times.to_vec(), values, self.representation(), ComponentTag::State(self.1))
    }
}

struct FriedrichsCut(FriedrichsModel);

impl AmplitudeModel for FriedrichsCut {
    fn name(&self) -> &'static str {
        "friedrichs-cut"
    }
    fn representation(&self) -> Representation {
        Representation::FriedrichsCut
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        self.0.survival_total(t)
    }
}

struct FriedrichsErfc(FriedrichsModel);

impl AmplitudeModel for FriedrichsErfc {
    fn name(&self) -> &'static str {
        "friedrichs-erfc"
    }
    fn representation(&self) -> Representation {
        Representation::FriedrichsErfc
    }
    fn amplitude(&self, t: f64) -> Result<Complex64> {
        self.0.survival_from_components(t)
    }
}

pub type Factory = fn(&ModelContext) -> Result<Box<dyn AmplitudeModel>>;

/// Representations registered by name and built on demand for a model.
pub struct RepresentationRegistry {
    entries: Vec<(&'static str, Factory)>,
}

impl Default for RepresentationRegistry {
    fn default() -> Self {
        let mut r = Self { entries: Vec::new() };
        r.register("direct-contour", |ctx| {
            let (s, theta, _) = ctx.lattice("direct-contour")?;
            if theta.is_some() {
                return Err(Error::Domain("direct-contour only covers the d1 initial state".into()));
            }
            Ok(Box::new(DirectContour(s.clone())))
        });
        r.register("bessel-components", |ctx| {
            let (s, theta, _) = ctx.lattice("bessel-components")?;
            Ok(Box::new(BesselComponents(s.clone(), theta)))
        });
        r.register("lattice-oracle", |ctx| {
            let (s, theta, sites) = ctx.lattice("lattice-oracle")?;
            Ok(Box::new(LatticeOracle { spectrum: s.clone(), theta, sites }))
        });
        r.register("isolated-residue", |ctx| {
            let (s, _, _) = ctx.lattice("isolated-residue")?;
            Ok(Box::new(IsolatedResidue(s.clone(), s.resonant_index()?)))
        });
        r.register("short-time", |ctx| {
            let (s, _, _) = ctx.lattice("short-time")?;
            Ok(Box::new(ShortTime(s.clone(), s.resonant_index()?)))
        });
        r.register("long-time", |ctx| {
            let (s, _, _) = ctx.lattice("long-time")?;
            Ok(Box::new(LongTime(s.clone(), s.resonant_index()?)))
        });
        r.register("friedrichs-cut", |ctx| Ok(Box::new(FriedrichsCut(ctx.friedrichs("friedrichs-cut")?.clone()))));
        r.register("friedrichs-erfc", |ctx| Ok(Box::new(FriedrichsErfc(ctx.friedrichs("friedrichs-erfc")?.clone()))));
        r
    }
}

impl RepresentationRegistry {
    /// Adds or replaces a representation.
    pub fn register(&mut self, name: &'static str, factory: Factory) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(entry) => entry.1 = factory,
            None => self.entries.push((name, factory)),
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn create(&self, name: &str, ctx: &ModelContext) -> Result<Box<dyn AmplitudeModel>> {
        let (_, factory) = self
            .entries
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::UnknownRepresentation(name.to_string()))?;
        factory(ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{discrete_spectrum, TDotParams};

    fn lattice_ctx() -> ModelContext {
        let spectrum = discrete_spectrum(&TDotParams::reference()).unwrap();
        ModelContext::Lattice { spectrum, theta: None, oracle_sites: 200 }
    }

    #[test]
    fn registry_lists_builtins() {
        let r = RepresentationRegistry::default();
        assert!(r.names().contains(&"direct-contour"));
        assert!(r.names().contains(&"friedrichs-erfc"));
        assert!(matches!(r.create("nope", &lattice_ctx()), Err(Error::UnknownRepresentation(_))));
    }

    #[test]
    fn representations_agree_on_lattice() {
        let r = RepresentationRegistry::default();
        let ctx = lattice_ctx();
        let times = [-3.0, 0.0, 1.5, 6.0];
        let a = r.create("direct-contour", &ctx).unwrap().series(&times).unwrap();
        let b = r.create("bessel-components", &ctx).unwrap().series(&times).unwrap();
        let c = r.create("lattice-oracle", &ctx).unwrap().series(&times).unwrap();
        for k in 0..times.len() {
            assert!((a.values[k] - b.values[k]).norm() < 1e-8);
            assert!((a.values[k] - c.values[k]).norm() < 1e-8);
        }
        assert_eq!(c.representation, Representation::Oracle);
    }

    #[test]
    fn wrong_model_is_rejected() {
        let r = RepresentationRegistry::default();
        assert!(r.create("friedrichs-cut", &lattice_ctx()).is_err());
    }

    #[test]
    fn series_requires_increasing_times() {
        let v = vec![Complex64::new(1.0, 0.0); 2];
        assert!(AmplitudeSeries::new(vec![1.0, 1.0], v, Representation::Oracle, ComponentTag::Total).is_err());
    }
}
