//! Subcommand implementations.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use resdyn_core::friedrichs::{FriedrichsModel, FriedrichsParams, Pole};
use resdyn_core::lattice::dynamics::short_time_resonant_amplitude;
use resdyn_core::lattice::{
    component_chi, discrete_spectrum, ep_locate, isolated_residue_amplitude, p4_discriminant, ratio_r,
    short_time_resonant_prob, survival_direct, theta_amplitude, zeno_time, DiscreteState, Selector, Spectrum,
    SpectrumWarning, StateClass, TDotParams, ThetaState,
};
use resdyn_core::oracle::{build_hamiltonian, propagate, InitialState};
use resdyn_core::series::{par_grid, ModelContext, RepresentationRegistry};

use crate::config::{Format, ModelParams, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Product, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Survival,
    Ratio,
    Zeno,
    Friedrichs,
    EpLocate,
    OracleCheck,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Survival => "survival",
            Command::Ratio => "ratio",
            Command::Zeno => "zeno",
            Command::Friedrichs => "friedrichs",
            Command::EpLocate => "ep-locate",
            Command::OracleCheck => "oracle-check",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Survival | Command::Ratio | Command::OracleCheck => Format::Csv,
            Command::Spectrum | Command::Zeno | Command::Friedrichs | Command::EpLocate => Format::Json,
        }
    }
}

/// Result of a command: the main product, JSON sidecars keyed by file suffix, warnings,
/// and a failure to report after the product has been written.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub product: Product,
    pub sidecars: Vec<(&'static str, Value)>,
    pub warnings: Vec<String>,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn new(product: Product) -> Self {
        Self { product, sidecars: Vec::new(), warnings: Vec::new(), failure: None }
    }
}

pub fn execute(cmd: Command, cfg: &RunConfig, format: Format) -> CliResult<Outcome> {
    if let Some(intended) = &cfg.command {
        if intended != cmd.name() {
            return Err(CliError::Config(format!("configuration is for '{intended}', not '{}'", cmd.name())));
        }
    }
    match cmd {
        Command::Spectrum => spectrum(cfg, format),
        Command::Survival => survival(cfg),
        Command::Ratio => ratio(cfg),
        Command::Zeno => zeno(cfg),
        Command::Friedrichs => friedrichs(cfg),
        Command::EpLocate => ep(cfg),
        Command::OracleCheck => oracle_check(cfg),
    }
}

/// (sweep value, parameters) for every sweep point, or the single configured point.
fn sweep_points(cfg: &RunConfig) -> CliResult<Vec<(Option<f64>, ModelParams)>> {
    match &cfg.sweep {
        None => Ok(vec![(None, cfg.model)]),
        Some(s) => s.values().into_iter().map(|v| Ok((Some(v), s.parameter.apply(&cfg.model, v)?))).collect(),
    }
}

fn sweep_column(cfg: &RunConfig) -> Vec<String> {
    cfg.sweep.iter().map(|s| s.parameter.name().to_string()).collect()
}

fn tdot(params: &ModelParams, cmd: &str) -> CliResult<TDotParams> {
    match params {
        ModelParams::Tdot(p) => Ok(*p),
        ModelParams::Friedrichs(_) => Err(CliError::Config(format!("'{cmd}' needs model = tdot"))),
    }
}

fn friedrichs_params(params: &ModelParams, cmd: &str) -> CliResult<FriedrichsParams> {
    match params {
        ModelParams::Friedrichs(p) => Ok(*p),
        ModelParams::Tdot(_) => Err(CliError::Config(format!("'{cmd}' needs model = friedrichs"))),
    }
}

fn lattice_spectrum(p: &TDotParams, cfg: &RunConfig) -> CliResult<Spectrum> {
    Ok(discrete_spectrum(p)?.with_tolerances(cfg.tolerances))
}

fn with_sweep(value: Option<f64>, mut row: Vec<Cell>) -> Vec<Cell> {
    if let Some(v) = value {
        row.insert(0, Cell::Num(v));
    }
    row
}

fn c_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn params_json(p: &ModelParams) -> Value {
    match p {
        ModelParams::Tdot(p) => {
            json!({ "b": p.b, "eps1": p.eps1, "eps2": p.eps2, "g": p.g, "t2l": p.t2l, "t2r": p.t2r })
        }
        ModelParams::Friedrichs(p) => json!({ "omega1": p.omega1, "beta": p.beta, "g": p.g }),
    }
}

fn warning_json(w: &SpectrumWarning) -> Value {
    match w {
        SpectrumWarning::NearDegenerate { gap } => json!({ "kind": "near-degenerate", "gap": gap }),
        SpectrumWarning::DegenerateLeadCoupling => json!({ "kind": "degenerate-lead-coupling" }),
    }
}

/// Column labels B1, B2, R, AR, AB1, … with an index only when a class repeats.
fn state_labels(s: &Spectrum) -> Vec<String> {
    s.states
        .iter()
        .enumerate()
        .map(|(n, st)| {
            let short = st.class.short();
            if s.count(st.class) > 1 {
                let k = s.states[..n].iter().filter(|o| o.class == st.class).count() + 1;
                format!("{short}{k}")
            } else {
                short.to_string()
            }
        })
        .collect()
}

fn state_json(st: &DiscreteState) -> Value {
    json!({
        "class": st.class.label(),
        "re_lambda": st.lam.re,
        "im_lambda": st.lam.im,
        "abs_lambda": st.lam.norm(),
        "re_energy": st.energy.re,
        "im_energy": st.energy.im,
        "re_w": st.weight_w.re,
        "im_w": st.weight_w.im,
        "re_q": st.weight_q.re,
        "im_q": st.weight_q.im,
    })
}

fn spectrum(cfg: &RunConfig, format: Format) -> CliResult<Outcome> {
    if let ModelParams::Friedrichs(_) = cfg.model {
        return friedrichs(cfg);
    }
    let points = sweep_points(cfg)?;
    let spectra: Vec<Spectrum> =
        points.par_iter().map(|(_, p)| lattice_spectrum(&tdot(p, "spectrum")?, cfg)).collect::<CliResult<_>>()?;

    if format == Format::Csv {
        let mut cols = sweep_column(cfg);
        cols.extend(
            ["index", "class", "re_lambda", "im_lambda", "re_energy", "im_energy", "re_w", "im_w"].map(String::from),
        );
        let mut table = Table::new(cols);
        for ((value, _), s) in points.iter().zip(&spectra) {
            for (n, st) in s.states.iter().enumerate() {
                let row = vec![
                    Cell::Int(n as i64),
                    Cell::Text(st.class.label().to_string()),
                    st.lam.re.into(),
                    st.lam.im.into(),
                    st.energy.re.into(),
                    st.energy.im.into(),
                    st.weight_w.re.into(),
                    st.weight_w.im.into(),
                ];
                table.push(with_sweep(*value, row));
            }
        }
        return Ok(Outcome::new(Product::Table(table)));
    }

    let records: Vec<Value> = points
        .iter()
        .zip(&spectra)
        .map(|((value, p), s)| {
            json!({
                "sweep_value": value,
                "params": params_json(p),
                "completeness": c_json(s.completeness()),
                "warnings": s.warnings.iter().map(warning_json).collect::<Vec<_>>(),
                "states": s.states.iter().map(state_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Outcome::new(Product::Report(json!({
        "model": "tdot",
        "sweep_parameter": cfg.sweep.map(|s| s.parameter.name()),
        "records": records,
    }))))
}

/// Maps registry construction failures: a missing resonance stays a regime error, the rest
/// are configuration mistakes.
fn create_error(e: resdyn_core::Error) -> CliError {
    if e.is_regime() {
        CliError::from(e)
    } else {
        CliError::Config(e.to_string())
    }
}

fn push_pair(cols: &mut Vec<Cell>, z: Complex64) {
    cols.push(z.re.into());
    cols.push(z.im.into());
}

fn survival(cfg: &RunConfig) -> CliResult<Outcome> {
    let times = cfg.time.points();
    let registry = RepresentationRegistry::default();
    let points = sweep_points(cfg)?;
    let opts = &cfg.survival;

    let blocks: Vec<(Vec<String>, Vec<Vec<Cell>>)> = points
        .par_iter()
        .map(|(value, params)| -> CliResult<_> {
            let mut names: Vec<String> = Vec::new();
            let mut series: Vec<Vec<Complex64>> = Vec::new();
            let total = match params {
                ModelParams::Tdot(p) => {
                    let s = lattice_spectrum(p, cfg)?;
                    let theta = opts.theta.map(ThetaState::new);
                    let rep = opts.representation.clone().unwrap_or_else(|| {
                        if theta.is_some() { "bessel-components" } else { "direct-contour" }.to_string()
                    });
                    let ctx = ModelContext::Lattice { spectrum: s.clone(), theta, oracle_sites: cfg.oracle_sites };
                    let total = registry.create(&rep, &ctx).map_err(create_error)?.series(&times)?;
                    if opts.components {
                        for (n, label) in state_labels(&s).into_iter().enumerate() {
                            let values = match theta {
                                Some(th) => par_grid(&times, |t| theta_amplitude(&s, th, Selector::State(n), t))?,
                                None => par_grid(&times, |t| component_chi(&s, n, t))?,
                            };
                            names.push(label);
                            series.push(values);
                        }
                    }
                    if opts.isolated_residue {
                        names.push("xi_R".into());
                        series.push(par_grid(&times, |t| isolated_residue_amplitude(&s, t))?);
                    }
                    if opts.short_time {
                        names.push("short_R".into());
                        series.push(par_grid(&times, |t| short_time_resonant_amplitude(&s, t))?);
                    }
                    total
                }
                ModelParams::Friedrichs(p) => {
                    if opts.theta.is_some() || opts.isolated_residue || opts.short_time {
                        return Err(CliError::Config(
                            "theta, isolated_residue and short_time apply only to model = tdot".into(),
                        ));
                    }
                    let m = FriedrichsModel::with_tolerances(*p, cfg.tolerances)?;
                    let rep = opts.representation.clone().unwrap_or_else(|| "friedrichs-cut".to_string());
                    let total = registry
                        .create(&rep, &ModelContext::Friedrichs(m.clone()))
                        .map_err(create_error)?
                        .series(&times)?;
                    if opts.components {
                        if times.contains(&0.0) {
                            return Err(CliError::Config(
                                "Friedrichs components diverge at t = 0; choose a grid that skips it".into(),
                            ));
                        }
                        for n in Pole::ALL {
                            names.push(n.short().to_string());
                            series.push(par_grid(&times, |t| m.a_component(n, t))?);
                        }
                    }
                    total
                }
            };
            let rows = times
                .iter()
                .enumerate()
                .map(|(k, &t)| {
                    let a = total.values[k];
                    let mut row = vec![Cell::Num(t), a.re.into(), a.im.into(), a.norm_sqr().into()];
                    for s in &series {
                        push_pair(&mut row, s[k]);
                    }
                    with_sweep(*value, row)
                })
                .collect();
            Ok((names, rows))
        })
        .collect::<CliResult<_>>()?;

    let names = &blocks[0].0;
    if blocks.iter().any(|(n, _)| n != names) {
        return Err(CliError::Regime(
            "state classes change across the sweep; split the sweep at the exceptional point".into(),
        ));
    }
    let mut cols = sweep_column(cfg);
    cols.extend(["t", "ReA", "ImA", "absA2"].map(String::from));
    for n in names {
        cols.push(format!("Re_{n}"));
        cols.push(format!("Im_{n}"));
    }
    let mut table = Table::new(cols);
    for (_, rows) in blocks {
        for row in rows {
            table.push(row);
        }
    }
    Ok(Outcome::new(Product::Table(table)))
}

/// Regime error for a spectrum without a resonant pair, naming the ε₁ bracket that contains the EP.
fn no_resonance(p: &TDotParams) -> CliError {
    let step = 0.05 * p.b;
    let mut prev = p.eps1;
    for k in 1..=160 {
        let e = p.eps1 + step * k as f64;
        let has_pair = discrete_spectrum(&p.with_eps1(e)).map(|s| s.count(StateClass::Resonant) == 1).unwrap_or(false);
        if has_pair {
            let located =
                ep_locate(p, prev, e).map(|x| format!(" (exceptional point at eps1 = {x:.9})")).unwrap_or_default();
            return CliError::Regime(format!(
                "no resonance at eps1 = {}: the resonant pair appears only to the right of the exceptional point, \
                 in the eps1 bracket [{prev:.6}, {e:.6}]{located}",
                p.eps1
            ));
        }
        prev = e;
    }
    CliError::Regime(format!(
        "no resonance at eps1 = {} and none found for eps1 up to {:.6}",
        p.eps1,
        p.eps1 + 160.0 * step
    ))
}

fn resonant_spectrum(p: &TDotParams, cfg: &RunConfig) -> CliResult<Spectrum> {
    let s = lattice_spectrum(p, cfg)?;
    if s.count(StateClass::Resonant) == 0 {
        return Err(no_resonance(p));
    }
    Ok(s)
}

fn zeno_json(s: &Spectrum) -> CliResult<Value> {
    let z = zeno_time(s)?;
    let r = s.resonant()?;
    Ok(json!({
        "t0": z.t0,
        "tz": z.tz,
        "imag_fraction": z.imag_fraction,
        "assumption_holds": z.assumption_holds,
        "re_energy": r.energy.re,
        "im_energy": r.energy.im,
        "re_lambda": r.lam.re,
        "im_lambda": r.lam.im,
        "short_time_prob_plus_t0": short_time_resonant_prob(s, z.t0)?,
        "short_time_prob_minus_t0": short_time_resonant_prob(s, -z.t0)?,
    }))
}

fn ratio(cfg: &RunConfig) -> CliResult<Outcome> {
    let times = cfg.time.points();
    let points = sweep_points(cfg)?;
    let blocks: Vec<(Vec<Vec<Cell>>, Value)> = points
        .par_iter()
        .map(|(value, params)| -> CliResult<_> {
            let s = resonant_spectrum(&tdot(params, "ratio")?, cfg)?;
            let r = par_grid(&times, |t| ratio_r(&s, t))?;
            let rows = times
                .iter()
                .zip(&r)
                .map(|(&t, &r)| with_sweep(*value, vec![Cell::Num(t), r.into(), r.log10().into()]))
                .collect();
            let mut z = zeno_json(&s)?;
            if let Some(v) = value {
                z["sweep_value"] = json!(v);
            }
            Ok((rows, z))
        })
        .collect::<CliResult<_>>()?;

    let mut cols = sweep_column(cfg);
    cols.extend(["t", "r", "log10_r"].map(String::from));
    let mut table = Table::new(cols);
    let mut reports = Vec::new();
    for (rows, z) in blocks {
        rows.into_iter().for_each(|r| table.push(r));
        reports.push(z);
    }
    let sidecar = if cfg.sweep.is_some() { Value::Array(reports) } else { reports.pop().unwrap() };
    let mut out = Outcome::new(Product::Table(table));
    out.sidecars.push(("zeno.json", sidecar));
    Ok(out)
}

fn zeno(cfg: &RunConfig) -> CliResult<Outcome> {
    let points = sweep_points(cfg)?;
    let reports: Vec<Value> = points
        .par_iter()
        .map(|(value, params)| {
            let s = resonant_spectrum(&tdot(params, "zeno")?, cfg)?;
            let mut z = zeno_json(&s)?;
            if let Some(v) = value {
                z["sweep_value"] = json!(v);
            }
            Ok(z)
        })
        .collect::<CliResult<_>>()?;
    let report = if cfg.sweep.is_some() { json!({ "records": reports }) } else { reports.into_iter().next().unwrap() };
    let mut out = Outcome::new(Product::Report(report.clone()));
    let invalid = match &report {
        Value::Object(m) if m.contains_key("records") => {
            m["records"].as_array().unwrap().iter().any(|r| r["assumption_holds"] == false)
        }
        r => r["assumption_holds"] == false,
    };
    if invalid {
        out.warnings.push("|Im E_R| ≥ |Re E_R|: the Zeno-time estimate is outside its assumption".into());
    }
    Ok(out)
}

fn friedrichs(cfg: &RunConfig) -> CliResult<Outcome> {
    let p = friedrichs_params(&cfg.model, "friedrichs")?;
    let m = FriedrichsModel::with_tolerances(p, cfg.tolerances)?;
    let poles = &m.poles;
    let a0 = m.survival_total(0.0)?;
    Ok(Outcome::new(Product::Report(json!({
        "omega1": p.omega1,
        "beta": p.beta,
        "g": p.g,
        "e_bound": poles.e_bound,
        "bound_on_physical_sheet": poles.bound_on_physical_sheet,
        "bound_residue": poles.bound_residue,
        "e_res_re": poles.e_res.re,
        "e_res_im": poles.e_res.im,
        "w_bound_re": poles.w_bound.re,
        "w_bound_im": poles.w_bound.im,
        "w_res_re": poles.w_res.re,
        "w_res_im": poles.w_res.im,
        "inverse_abs_e_res": 1.0 / poles.e_res.norm(),
        "decay_rate": 2.0 * poles.e_res.im.abs(),
        "e_max": m.e_max(),
        "survival_at_zero_re": a0.re,
        "survival_at_zero_im": a0.im,
    }))))
}

fn ep(cfg: &RunConfig) -> CliResult<Outcome> {
    let p = tdot(&cfg.model, "ep-locate")?;
    let (lo, hi) =
        cfg.ep_bracket.ok_or_else(|| CliError::Config("ep-locate needs an [ep] section with lo and hi".into()))?;
    let star = ep_locate(&p, lo, hi)?;
    let at = discrete_spectrum(&p.with_eps1(star))?;
    let outer: Vec<Complex64> = at.states.iter().filter(|s| s.lam.norm() > 1.0).map(|s| s.lam).collect();
    let gap = outer
        .iter()
        .enumerate()
        .flat_map(|(i, a)| outer[i + 1..].iter().map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min);
    Ok(Outcome::new(Product::Report(json!({
        "eps1_star": star,
        "bracket_lo": lo,
        "bracket_hi": hi,
        "discriminant_lo": p4_discriminant(&p.with_eps1(lo))?,
        "discriminant_hi": p4_discriminant(&p.with_eps1(hi))?,
        "lambda_gap": gap,
    }))))
}

fn oracle_check(cfg: &RunConfig) -> CliResult<Outcome> {
    let p = tdot(&cfg.model, "oracle-check")?;
    let s = lattice_spectrum(&p, cfg)?;
    let times = cfg.time.points();
    let theta = cfg.survival.theta.map(ThetaState::new);
    let lattice = build_hamiltonian(&p, cfg.oracle_sites)?;
    let init = theta.map_or(InitialState::D1, |th| InitialState::Theta(th.theta));
    let prop = propagate(&lattice, init, &times)?;
    let contour = match theta {
        Some(th) => par_grid(&times, |t| theta_amplitude(&s, th, Selector::Total, t))?,
        None => par_grid(&times, |t| survival_direct(&s, t))?,
    };
    let mut table = Table::new(["t", "Re_contour", "Im_contour", "Re_oracle", "Im_oracle", "abs_diff"]);
    let mut worst: f64 = 0.0;
    for (k, &t) in times.iter().enumerate() {
        let (a, b) = (contour[k], prop.d1[k]);
        let d = (a - b).norm();
        worst = worst.max(d);
        table.push(vec![Cell::Num(t), a.re.into(), a.im.into(), b.re.into(), b.im.into(), d.into()]);
    }
    let mut out = Outcome::new(Product::Table(table));
    if prop.reflection_warning {
        out.warnings.push(format!(
            "grid extends past the reflection-free horizon t = {} of the {}-site lattice",
            prop.safe_horizon, cfg.oracle_sites
        ));
    }
    if worst > cfg.oracle_tolerance {
        out.failure = Some(CliError::Numeric(format!(
            "contour and lattice propagation differ by {worst:e} (tolerance {:e})",
            cfg.oracle_tolerance
        )));
    }
    Ok(out)
}
