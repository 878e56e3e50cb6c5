//! Globally adaptive 21-point Gauss–Kronrod quadrature of complex-valued integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208091544262,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Default absolute and relative quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { abs: 1e-10, rel: 1e-8 }
    }
}

impl Tolerances {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    pub fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl std::ops::Add for QuadratureResult {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            abs_error_estimate: self.abs_error_estimate + rhs.abs_error_estimate,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut resg = Complex64::new(0.0, 0.0);
    let mut resk = fc * WGK[10];
    let mut resabs = WGK[10] * fc.norm();
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let x = half * XGK[jtw];
        let f1 = f(centre - x);
        let f2 = f(centre + x);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += (f1 + f2) * WG[j];
        resk += (f1 + f2) * WGK[jtw];
        resabs += WGK[jtw] * (f1.norm() + f2.norm());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let x = half * XGK[jtwm1];
        let f1 = f(centre - x);
        let f2 = f(centre + x);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += (f1 + f2) * WGK[jtwm1];
        resabs += WGK[jtwm1] * (f1.norm() + f2.norm());
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).norm() + (fv2[j] - reskh).norm());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

/// Maximum number of bisections before giving up.
pub const MAX_SUBDIVISIONS: usize = 20_000;

/// Integrates `f` over `[a, b]`; the endpoints themselves are never sampled.
pub fn adaptive_quad<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    adaptive_quad_points(f, &[a, b], Tolerances::new(abs_tol, rel_tol))
}

/// Integrates over consecutive panels `points[0] < points[1] < …`, refining globally.
pub fn adaptive_quad_points<F>(f: F, points: &[f64], tol: Tolerances) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    if points.len() < 2 {
        return Err(Error::Domain("quadrature needs at least two breakpoints".into()));
    }
    if !(tol.abs > 0.0 && tol.rel > 0.0) {
        return Err(Error::Domain("quadrature tolerances must be positive".into()));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::Domain(format!("invalid quadrature panel [{}, {}]", w[0], w[1])));
        }
    }

    let mut segments: Vec<Segment> = points.windows(2).map(|w| gk21(&f, w[0], w[1])).collect();
    let mut evaluations = 21 * segments.len();
    let limit = MAX_SUBDIVISIONS.max(4 * segments.len());

    loop {
        let value: Complex64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= tol.target(value) {
            return Ok(QuadratureResult { value, abs_error_estimate: error, evaluations });
        }
        if segments.len() >= limit {
            return Err(Error::MaxSubdivisions { value, estimate: error, limit });
        }
        let (worst, _) =
            segments
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.error > acc.1 { (i, s.error) } else { acc });
        let seg = segments[worst];
        let mid = 0.5 * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) || (seg.b - seg.a) < 1e-14 * (seg.a.abs() + seg.b.abs()) {
            return Err(Error::ToleranceNotMet { value, estimate: error });
        }
        segments[worst] = gk21(&f, seg.a, mid);
        segments.push(gk21(&f, mid, seg.b));
        evaluations += 42;
    }
}

/// Breakpoints splitting `[a, b]` into panels no longer than `width`.
pub fn panel_points(a: f64, b: f64, width: f64) -> Vec<f64> {
    let n = (((b - a) / width).ceil() as usize).max(1);
    let mut pts: Vec<f64> = (0..n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    pts.push(b);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn sine_over_half_period() {
        let r = adaptive_quad(real(f64::sin), 0.0, PI, 1e-12, 1e-12).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-13);
        assert!(r.evaluations >= 21);
    }

    #[test]
    fn cubic_is_exact() {
        let r = adaptive_quad(real(|x| x * x * x), 0.0, 1.0, 1e-12, 1e-12).unwrap();
        assert!((r.value.re - 0.25).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity_is_integrable() {
        let r = adaptive_quad(real(|x: f64| 1.0 / x.sqrt()), 0.0, 1.0, 1e-10, 1e-10).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn complex_oscillation() {
        let r = adaptive_quad(|x| Complex64::new(0.0, 3.0 * x).exp(), 0.0, 10.0, 1e-12, 1e-12).unwrap();
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 3.0);
        assert!((r.value - exact).norm() < 1e-11);
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(adaptive_quad(real(|x| x), 1.0, 0.0, 1e-10, 1e-8).is_err());
    }

    #[test]
    fn panels_cover_interval() {
        let p = panel_points(0.0, 10.0, 3.0);
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], 0.0);
        assert_eq!(*p.last().unwrap(), 10.0);
    }
}
