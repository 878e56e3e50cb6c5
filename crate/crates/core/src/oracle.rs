//! Brute-force propagation of the truncated tight-binding lattice.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::lattice::TDotParams;
use crate::numkernel::bessel_jn_sequence;

pub const D1: usize = 0;
pub const D2: usize = 1;

/// Largest Chebyshev argument R·Δt per step.
const MAX_STEP_ARG: f64 = 40.0;
const SERIES_CUTOFF: f64 = 1e-17;

/// Dots plus N sites on each lead, stored as a sparse symmetric matrix.
#[derive(Debug, Clone)]
pub struct TruncatedLattice {
    pub params: TDotParams,
    pub n_sites_per_lead: usize,
    diag: Vec<f64>,
    neighbours: Vec<Vec<(usize, f64)>>,
}

impl TruncatedLattice {
    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    /// Site index of lead site x ∈ 1..=N on the left (`right = false`) or right lead.
    pub fn lead_site(&self, x: usize, right: bool) -> usize {
        1 + x + if right { self.n_sites_per_lead } else { 0 }
    }

    pub fn safe_horizon(&self) -> f64 {
        self.n_sites_per_lead as f64 / (2.0 * self.params.b)
    }

    /// Gershgorin bound on the spectral radius.
    pub fn spectral_bound(&self) -> f64 {
        self.diag
            .iter()
            .zip(&self.neighbours)
            .map(|(d, row)| d.abs() + row.iter().map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn element(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.diag[i];
        }
        self.neighbours[i].iter().filter(|(k, _)| *k == j).map(|(_, v)| *v).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            for &(j, v) in &self.neighbours[i] {
                m[i][j] += v;
            }
        }
        m
    }

    fn apply_scaled(&self, x: &[Complex64], out: &mut [Complex64], scale: f64) {
        for i in 0..x.len() {
            let mut acc = x[i] * self.diag[i];
            for &(j, v) in &self.neighbours[i] {
                acc += x[j] * v;
            }
            out[i] = acc * scale;
        }
    }

    fn add_bond(&mut self, i: usize, j: usize, v: f64) {
        self.neighbours[i].push((j, v));
        self.neighbours[j].push((i, v));
    }
}

/// Hamiltonian on 2 + 2N sites: dots d₁, d₂ then the left and right leads.
pub fn build_hamiltonian(p: &TDotParams, n: usize) -> Result<TruncatedLattice> {
    p.validate()?;
    if n < 50 {
        return Err(Error::InvalidParams(format!("need at least 50 sites per lead, got {n}")));
    }
    let dim = 2 + 2 * n;
    let mut diag = vec![0.0; dim];
    diag[D1] = p.eps1;
    diag[D2] = p.eps2;
    let mut l = TruncatedLattice { params: *p, n_sites_per_lead: n, diag, neighbours: vec![Vec::new(); dim] };
    l.add_bond(D1, D2, -p.g);
    for (right, t2) in [(false, p.t2l), (true, p.t2r)] {
        let first = l.lead_site(1, right);
        l.add_bond(D2, first, -t2);
        for x in 1..n {
            let (a, c) = (l.lead_site(x, right), l.lead_site(x + 1, right));
            l.add_bond(a, c, -p.b);
        }
    }
    Ok(l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    D1,
    D2,
    /// (|d₁⟩ + e^{iθ}|d₂⟩)/√2.
    Theta(f64),
}

impl InitialState {
    fn vector(&self, dim: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        match *self {
            InitialState::D1 => v[D1] = Complex64::new(1.0, 0.0),
            InitialState::D2 => v[D2] = Complex64::new(1.0, 0.0),
            InitialState::Theta(theta) => {
                v[D1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                v[D2] = Complex64::from_polar(FRAC_1_SQRT_2, theta);
            }
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub times: Vec<f64>,
    /// ⟨d₁|e^{−iHt}|init⟩.
    pub d1: Vec<Complex64>,
    /// ⟨d₂|e^{−iHt}|init⟩.
    pub d2: Vec<Complex64>,
    /// Largest |‖ψ(t)‖² − 1| over the grid.
    pub norm_deviation: f64,
    pub safe_horizon: f64,
    /// Set when the grid extends past the safe horizon.
    pub reflection_warning: bool,
}

/// Propagates `initial` to every time in `times` by Chebyshev expansion.
pub fn propagate(l: &TruncatedLattice, initial: InitialState, times: &[f64]) -> Result<PropagationResult> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("non-finite propagation time".into()));
    }
    let dim = l.dimension();
    let radius = l.spectral_bound() * (1.0 + 1e-12) + 1e-300;
    let psi0 = initial.vector(dim);

    let mut d1 = vec![Complex64::new(0.0, 0.0); times.len()];
    let mut d2 = d1.clone();
    let mut norm_deviation: f64 = 0.0;

    for forward in [true, false] {
        let mut order: Vec<usize> =
            (0..times.len()).filter(|&i| if forward { times[i] >= 0.0 } else { times[i] < 0.0 }).collect();
        order.sort_by(|&a, &b| times[a].abs().total_cmp(&times[b].abs()));
        let mut psi = psi0.clone();
        let mut now = 0.0;
        let mut work = Workspace::new(dim);
        for idx in order {
            let target = times[idx];
            let span = target - now;
            let steps = ((span.abs() * radius) / MAX_STEP_ARG).ceil().max(1.0) as usize;
            if span != 0.0 {
                for _ in 0..steps {
                    chebyshev_step(l, &mut psi, span / steps as f64, radius, &mut work);
                }
            }
            now = target;
            d1[idx] = psi[D1];
            d2[idx] = psi[D2];
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
            norm_deviation = norm_deviation.max((norm - 1.0).abs());
        }
    }

    let safe_horizon = l.safe_horizon();
    let reflection_warning = times.iter().any(|t| t.abs() > safe_horizon);
    Ok(PropagationResult { times: times.to_vec(), d1, d2, norm_deviation, safe_horizon, reflection_warning })
}

struct Workspace {
    prev: Vec<Complex64>,
    cur: Vec<Complex64>,
    next: Vec<Complex64>,
    acc: Vec<Complex64>,
}

impl Workspace {
    fn new(dim: usize) -> Self {
        let z = vec![Complex64::new(0.0, 0.0); dim];
        Self { prev: z.clone(), cur: z.clone(), next: z.clone(), acc: z }
    }
}

fn chebyshev_step(l: &TruncatedLattice, psi: &mut [Complex64], dt: f64, radius: f64, w: &mut Workspace) {
    let x = radius * dt;
    let kmax = (x.abs() + 20.0 + 10.0 * x.abs().cbrt()).ceil() as usize;
    let jn = bessel_jn_sequence(kmax, x);
    let mut last = kmax;
    while last > 1 && jn[last].abs() < SERIES_CUTOFF {
        last -= 1;
    }
    let minus_i = Complex64::new(0.0, -1.0);
    let scale = 1.0 / radius;

    w.prev.copy_from_slice(psi);
    l.apply_scaled(psi, &mut w.cur, scale);
    let c1 = 2.0 * minus_i * jn[1];
    for i in 0..psi.len() {
        w.acc[i] = psi[i] * jn[0] + w.cur[i] * c1;
    }
    let mut phase = minus_i;
    for k in 2..=last {
        phase *= minus_i;
        l.apply_scaled(&w.cur, &mut w.next, 2.0 * scale);
        let ck = 2.0 * jn[k] * phase;
        for i in 0..psi.len() {
            let v = w.next[i] - w.prev[i];
            w.next[i] = v;
            w.acc[i] += v * ck;
        }
        std::mem::swap(&mut w.prev, &mut w.cur);
        std::mem::swap(&mut w.cur, &mut w.next);
    }
    psi.copy_from_slice(&w.acc);
}
