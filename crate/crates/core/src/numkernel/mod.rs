//! Numeric kernel: polynomial roots, quadrature and special functions.

pub mod bessel;
pub mod branch;
pub mod erf;
pub mod gamma;
pub mod poly;
pub mod quad;

pub use bessel::{bessel_j0, bessel_j1, bessel_jn_sequence};
pub use branch::sqrt_poscut;
pub use erf::{erfc_complex, erfcx_complex, faddeeva};
pub use gamma::{gamma, power_exp_tail, upper_gamma, upper_gamma_mhalf};
pub use poly::{poly_roots, Polynomial};
pub use quad::{adaptive_quad, adaptive_quad_points, panel_points, QuadratureResult, Tolerances};
