//! Run configuration: flat `key = value` lines grouped under `[section]` headers.
//!
//! ```text
//! schema_version = 1
//! command = survival          # optional; checked against the subcommand
//! model = tdot                # tdot | friedrichs
//!
//! [tdot]        b, eps1, eps2, g, t2l, t2r
//! [friedrichs]  omega1, beta, g
//! [time]        t_min, t_max, n_points
//! [tolerances]  abs, rel
//! [output]      path, format (csv | json)
//! [sweep]       parameter, lo, hi, n
//! [survival]    representation, components, theta, isolated_residue, short_time
//! [oracle]      sites, tolerance
//! [ep]          lo, hi
//! ```
//!
//! Comments start with `#` or `;` at the beginning of a line. Unknown sections or keys are errors.

use std::collections::BTreeMap;
use std::path::PathBuf;

use ini::Ini;
use resdyn_core::friedrichs::FriedrichsParams;
use resdyn_core::lattice::TDotParams;
use resdyn_core::numkernel::Tolerances;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown output format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Tdot(TDotParams),
    Friedrichs(FriedrichsParams),
}

impl ModelParams {
    pub fn name(&self) -> &'static str {
        match self {
            ModelParams::Tdot(_) => "tdot",
            ModelParams::Friedrichs(_) => "friedrichs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
}

impl TimeGrid {
    /// A single point is accepted only when t_min = t_max.
    pub fn new(t_min: f64, t_max: f64, n_points: usize) -> CliResult<Self> {
        if !(t_min.is_finite() && t_max.is_finite()) {
            return Err(CliError::Config("time grid bounds must be finite".into()));
        }
        let ok = match n_points {
            0 => false,
            1 => t_min == t_max,
            _ => t_min < t_max,
        };
        if !ok {
            return Err(CliError::Config(format!(
                "invalid time grid: t_min = {t_min}, t_max = {t_max}, n_points = {n_points}"
            )));
        }
        Ok(Self { t_min, t_max, n_points })
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.n_points)
    }
}

/// n evenly spaced values with exact endpoints.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| if k == n - 1 { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 }).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    B,
    Eps1,
    Eps2,
    G,
    T2l,
    T2r,
    Omega1,
    Beta,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::B => "b",
            SweepParam::Eps1 => "eps1",
            SweepParam::Eps2 => "eps2",
            SweepParam::G => "g",
            SweepParam::T2l => "t2l",
            SweepParam::T2r => "t2r",
            SweepParam::Omega1 => "omega1",
            SweepParam::Beta => "beta",
        }
    }

    fn parse(s: &str) -> CliResult<Self> {
        Ok(match s {
            "b" => SweepParam::B,
            "eps1" => SweepParam::Eps1,
            "eps2" => SweepParam::Eps2,
            "g" => SweepParam::G,
            "t2l" => SweepParam::T2l,
            "t2r" => SweepParam::T2r,
            "omega1" => SweepParam::Omega1,
            "beta" => SweepParam::Beta,
            other => return Err(CliError::Config(format!("unknown sweep parameter '{other}'"))),
        })
    }

    /// Returns `params` with this parameter set to `v`.
    pub fn apply(&self, params: &ModelParams, v: f64) -> CliResult<ModelParams> {
        let bad = || {
            CliError::Config(format!("sweep parameter '{}' does not belong to model '{}'", self.name(), params.name()))
        };
        match *params {
            ModelParams::Tdot(p) => {
                let mut q = p;
                match self {
                    SweepParam::B => q.b = v,
                    SweepParam::Eps1 => q.eps1 = v,
                    SweepParam::Eps2 => q.eps2 = v,
                    SweepParam::G => q.g = v,
                    SweepParam::T2l => q.t2l = v,
                    SweepParam::T2r => q.t2r = v,
                    SweepParam::Omega1 | SweepParam::Beta => return Err(bad()),
                }
                q.validate()?;
                Ok(ModelParams::Tdot(q))
            }
            ModelParams::Friedrichs(p) => {
                let mut q = p;
                match self {
                    SweepParam::Omega1 => q.omega1 = v,
                    SweepParam::Beta => q.beta = v,
                    SweepParam::G => q.g = v,
                    _ => return Err(bad()),
                }
                q.validate()?;
                Ok(ModelParams::Friedrichs(q))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurvivalOptions {
    /// Registry name of the representation used for the total amplitude.
    pub representation: Option<String>,
    pub components: bool,
    pub theta: Option<f64>,
    pub isolated_residue: bool,
    pub short_time: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Option<String>,
    pub model: ModelParams,
    pub time: TimeGrid,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub sweep: Option<Sweep>,
    pub survival: SurvivalOptions,
    pub oracle_sites: usize,
    pub oracle_tolerance: f64,
    pub ep_bracket: Option<(f64, f64)>,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("", &["schema_version", "command", "model"]),
    ("tdot", &["b", "eps1", "eps2", "g", "t2l", "t2r"]),
    ("friedrichs", &["omega1", "beta", "g"]),
    ("time", &["t_min", "t_max", "n_points"]),
    ("tolerances", &["abs", "rel"]),
    ("output", &["path", "format"]),
    ("sweep", &["parameter", "lo", "hi", "n"]),
    ("survival", &["representation", "components", "theta", "isolated_residue", "short_time"]),
    ("oracle", &["sites", "tolerance"]),
    ("ep", &["lo", "hi"]),
];

/// Parsed sections: section name ("" for the preamble) → key → raw value.
struct Raw(BTreeMap<String, BTreeMap<String, String>>);

impl Raw {
    fn parse(text: &str) -> CliResult<Self> {
        let ini = Ini::load_from_str(text).map_err(|e| CliError::Config(format!("malformed config: {e}")))?;
        let mut map: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for (section, props) in ini.iter() {
            let name = section.unwrap_or("").to_string();
            let allowed = SECTIONS
                .iter()
                .find(|(s, _)| *s == name)
                .map(|(_, keys)| *keys)
                .ok_or_else(|| CliError::Config(format!("unknown section [{name}]")))?;
            let entry = map.entry(name.clone()).or_default();
            for (k, v) in props.iter() {
                if !allowed.contains(&k) {
                    return Err(CliError::Config(format!("unknown key '{k}' in section [{name}]")));
                }
                if entry.insert(k.to_string(), v.trim().to_string()).is_some() {
                    return Err(CliError::Config(format!("duplicate key '{k}' in section [{name}]")));
                }
            }
        }
        Ok(Raw(map))
    }

    fn has(&self, section: &str) -> bool {
        self.0.get(section).is_some_and(|s| !s.is_empty())
    }

    fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.0.get(section).and_then(|s| s.get(key)).map(String::as_str)
    }

    fn f64_or(&self, section: &str, key: &str, default: Option<f64>) -> CliResult<f64> {
        match self.get(section, key) {
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Config(format!("[{section}] {key}: '{v}' is not a finite number"))),
            None => default.ok_or_else(|| CliError::Config(format!("[{section}] {key} is required"))),
        }
    }

    fn usize_or(&self, section: &str, key: &str, default: Option<usize>) -> CliResult<usize> {
        match self.get(section, key) {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("[{section}] {key}: '{v}' is not a non-negative integer"))),
            None => default.ok_or_else(|| CliError::Config(format!("[{section}] {key} is required"))),
        }
    }

    fn bool_or(&self, section: &str, key: &str, default: bool) -> CliResult<bool> {
        match self.get(section, key) {
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(v) => Err(CliError::Config(format!("[{section}] {key}: '{v}' is not true or false"))),
            None => Ok(default),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let raw = Raw::parse(text)?;
        let version =
            raw.get("", "schema_version").ok_or_else(|| CliError::Config("schema_version is required".into()))?;
        if version.parse::<u32>().ok() != Some(SCHEMA_VERSION) {
            return Err(CliError::Config(format!(
                "unsupported schema_version '{version}' (expected {SCHEMA_VERSION})"
            )));
        }

        let model = match raw.get("", "model").unwrap_or("tdot") {
            "tdot" => {
                let d = TDotParams::reference();
                ModelParams::Tdot(TDotParams::new(
                    raw.f64_or("tdot", "b", Some(d.b))?,
                    raw.f64_or("tdot", "eps1", Some(d.eps1))?,
                    raw.f64_or("tdot", "eps2", Some(d.eps2))?,
                    raw.f64_or("tdot", "g", Some(d.g))?,
                    raw.f64_or("tdot", "t2l", Some(d.t2l))?,
                    raw.f64_or("tdot", "t2r", Some(d.t2r))?,
                )?)
            }
            "friedrichs" => {
                let d = FriedrichsParams::reference();
                ModelParams::Friedrichs(FriedrichsParams::new(
                    raw.f64_or("friedrichs", "omega1", Some(d.omega1))?,
                    raw.f64_or("friedrichs", "beta", Some(d.beta))?,
                    raw.f64_or("friedrichs", "g", Some(d.g))?,
                )?)
            }
            other => return Err(CliError::Config(format!("unknown model '{other}'"))),
        };

        let time = TimeGrid::new(
            raw.f64_or("time", "t_min", Some(-10.0))?,
            raw.f64_or("time", "t_max", Some(10.0))?,
            raw.usize_or("time", "n_points", Some(201))?,
        )?;

        let d = Tolerances::default();
        let tolerances = Tolerances::new(
            raw.f64_or("tolerances", "abs", Some(d.abs))?,
            raw.f64_or("tolerances", "rel", Some(d.rel))?,
        );
        if !(tolerances.abs > 0.0 && tolerances.rel > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }

        let sweep = if raw.has("sweep") {
            let parameter = SweepParam::parse(
                raw.get("sweep", "parameter")
                    .ok_or_else(|| CliError::Config("[sweep] parameter is required".into()))?,
            )?;
            let s = Sweep {
                parameter,
                lo: raw.f64_or("sweep", "lo", None)?,
                hi: raw.f64_or("sweep", "hi", None)?,
                n: raw.usize_or("sweep", "n", None)?,
            };
            let ordered = match s.n {
                0 => false,
                1 => s.lo <= s.hi,
                _ => s.lo < s.hi,
            };
            if !ordered {
                return Err(CliError::Config(format!("invalid sweep bounds [{}, {}] with n = {}", s.lo, s.hi, s.n)));
            }
            parameter.apply(&model, s.lo)?;
            Some(s)
        } else {
            None
        };

        let survival = SurvivalOptions {
            representation: raw.get("survival", "representation").map(str::to_string),
            components: raw.bool_or("survival", "components", false)?,
            theta: raw.get("survival", "theta").map(|_| raw.f64_or("survival", "theta", None)).transpose()?,
            isolated_residue: raw.bool_or("survival", "isolated_residue", false)?,
            short_time: raw.bool_or("survival", "short_time", false)?,
        };

        let oracle_sites = raw.usize_or("oracle", "sites", Some(800))?;
        if oracle_sites < 50 {
            return Err(CliError::Config("[oracle] sites must be at least 50".into()));
        }

        let ep_bracket = if raw.has("ep") {
            let (lo, hi) = (raw.f64_or("ep", "lo", None)?, raw.f64_or("ep", "hi", None)?);
            if lo >= hi {
                return Err(CliError::Config(format!("[ep] bracket [{lo}, {hi}] is not ordered")));
            }
            Some((lo, hi))
        } else {
            None
        };

        Ok(Self {
            command: raw.get("", "command").map(str::to_string),
            model,
            time,
            tolerances,
            output_path: raw.get("output", "path").map(PathBuf::from),
            format: raw.get("output", "format").map(str::parse).transpose()?,
            sweep,
            survival,
            oracle_sites,
            oracle_tolerance: raw.f64_or("oracle", "tolerance", Some(1e-4))?,
            ep_bracket,
        })
    }
}
