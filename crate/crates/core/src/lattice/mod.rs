//! T-shaped two-dot lattice coupled to two semi-infinite leads.

pub mod components;
pub mod dynamics;
pub mod ep;
pub mod kernel;
pub mod params;
pub mod spectrum;

pub use components::{
    component_chi, component_kernel, isolated_residue_amplitude, survival_components_sum, survival_direct,
    theta_amplitude, Selector, ThetaState,
};
pub use dynamics::{
    longtime_asymptotic, longtime_ratio, ratio_r, short_time_resonant_prob, zeno_time, zeno_time_from,
    LongTimeAmplitude, ZenoReport,
};
pub use ep::{ep_locate, p4_discriminant};
pub use params::{BrillouinPoint, TDotParams};
pub use spectrum::{
    classify, discrete_spectrum, f_lambda, h_lambda, DiscreteState, Spectrum, SpectrumWarning, StateClass,
};
