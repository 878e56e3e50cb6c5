//! Square root with its branch cut along the positive real axis.

use num_complex::Complex64;

/// Returns w with w² = E, cut along E > 0.
///
/// For E = x > 0 the sign of the (possibly signed-zero) imaginary part selects
/// the side: +0 gives +√x, −0 gives −√x. On the negative axis w = i√|E|.
pub fn sqrt_poscut(e: Complex64) -> Complex64 {
    Complex64::new(0.0, 1.0) * (-e).sqrt()
}
