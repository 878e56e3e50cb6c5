//! Complex polynomials and a simultaneous-iteration root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Polynomial with coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("non-finite polynomial coefficient".into()));
        }
        if coeffs.len() < 2 {
            return Err(Error::Domain("polynomial degree must be at least 1".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= r * ck;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() < 2 {
            return None;
        }
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
        Polynomial::new(c).ok()
    }

    /// Synthetic division by (z − root); returns quotient coefficients and remainder.
    pub fn deflate(&self, root: Complex64) -> (Vec<Complex64>, Complex64) {
        let n = self.degree();
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        let mut acc = self.coeffs[n];
        for k in (0..n).rev() {
            q[k] = acc;
            acc = self.coeffs[k] + acc * root;
        }
        (q, acc)
    }

    /// Scaled residual |p(z)| / max(1, max|coeff|).
    pub fn scaled_residual(&self, z: Complex64) -> f64 {
        self.eval(z).norm() / self.max_coeff().max(1.0)
    }
}

const MAX_ITER: usize = 500;

/// All roots of `p` with multiplicity, sorted by real then imaginary part.
///
/// Aberth iteration from a perturbed circle followed by Newton polishing.
/// Roots of real polynomials are symmetrized into exact conjugate pairs.
pub fn poly_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    if !(tol > 0.0) {
        return Err(Error::Domain("root tolerance must be positive".into()));
    }
    let n = p.degree();
    let c = p.coeffs();
    let mut roots = if n == 1 { vec![-c[0] / c[1]] } else { aberth(p)? };
    for r in roots.iter_mut() {
        *r = newton_polish(p, *r);
    }
    if p.is_real() {
        symmetrize_conjugates(&mut roots);
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let residual = roots.iter().map(|&r| p.scaled_residual(r)).fold(0.0, f64::max);
    if !(residual <= tol) {
        return Err(Error::NonConvergence { best: roots, residual });
    }
    Ok(roots)
}

fn initial_radius(p: &Polynomial) -> f64 {
    let n = p.degree();
    let c = p.coeffs();
    let lead = p.leading().norm();
    // geometric mean of the root moduli, guarded against zero constant terms
    let r = (c[0].norm() / lead).powf(1.0 / n as f64);
    if r > 0.0 && r.is_finite() {
        r
    } else {
        1.0 + c.iter().map(|x| x.norm()).fold(0.0, f64::max) / lead
    }
}

fn aberth(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let radius = initial_radius(p);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * (1.0 + 0.01 * k as f64), angle)
        })
        .collect();

    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (pv, dpv) = p.eval_with_derivative(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
    }
    // Aberth stalls near multiple roots; polishing and the residual test decide.
    Ok(z)
}

fn newton_polish(p: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut res = p.eval(z).norm();
    for _ in 0..8 {
        let (pv, dpv) = p.eval_with_derivative(z);
        if dpv.norm() == 0.0 || pv.norm() == 0.0 {
            break;
        }
        let cand = z - pv / dpv;
        let cand_res = p.eval(cand).norm();
        if !(cand_res < res) {
            break;
        }
        z = cand;
        res = cand_res;
    }
    z
}

fn symmetrize_conjugates(roots: &mut [Complex64]) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let self_gap = 2.0 * roots[i].im.abs();
        let partner = (0..n)
            .filter(|&j| !used[j])
            .map(|j| (j, (roots[i] - roots[j].conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match partner {
            Some((j, gap)) if gap < self_gap && roots[i].im * roots[j].im < 0.0 => {
                used[j] = true;
                let avg = (roots[i] + roots[j].conj()) * 0.5;
                roots[i] = avg;
                roots[j] = avg.conj();
            }
            _ => roots[i].im = 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let r = poly_roots(&p, 1e-12).unwrap();
        let expected = [c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)];
        for (a, b) in r.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn linear_and_trimmed() {
        let p = Polynomial::new(vec![c(2.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(poly_roots(&p, 1e-12).unwrap(), vec![c(2.0, 0.0)]);
    }

    #[test]
    fn constant_is_rejected() {
        assert!(Polynomial::from_real(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn deflation_matches_quotient() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(-2.0, 0.5), c(3.0, 0.0)]).unwrap();
        let (q, rem) = p.deflate(c(3.0, 0.0));
        assert!(rem.norm() < 1e-13);
        let q = Polynomial::new(q).unwrap();
        let r = poly_roots(&q, 1e-12).unwrap();
        assert!((r[0] - c(-2.0, 0.5)).norm() < 1e-12);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn conjugate_pairs_are_exact() {
        let p = Polynomial::from_real(&[5.0, -2.0, 3.0, 1.0, 2.0]).unwrap();
        let r = poly_roots(&p, 1e-12).unwrap();
        let complex: Vec<_> = r.iter().filter(|z| z.im != 0.0).collect();
        for z in &complex {
            assert!(complex.iter().any(|w| **w == z.conj()));
        }
    }

    #[test]
    fn double_root_is_resolved() {
        let p = Polynomial::from_roots(&[c(0.5, 0.0), c(0.5, 0.0), c(-1.0, 0.0)]).unwrap();
        let r = poly_roots(&p, 1e-12).unwrap();
        assert!((r[1] - c(0.5, 0.0)).norm() < 1e-6);
        assert!((r[2] - c(0.5, 0.0)).norm() < 1e-6);
    }
}
