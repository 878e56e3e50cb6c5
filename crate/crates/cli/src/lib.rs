//! Command-line front end: configuration, figure recipes and CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod recipes;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use commands::{execute, Command, Outcome};
use config::{Format, RunConfig};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "resdyn", version, about = "Resonance spectra and survival amplitudes of open quantum systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Bundled figure recipe (fig2, fig5, fig6a, fig6b, fig6c, fig8a, fig8b, fig8c, fig9, fig11).
    #[arg(long, global = true, value_name = "NAME")]
    pub recipe: Option<String>,

    /// Output file; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,

    /// Worker threads; falls back to RESDYN_THREADS.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CliCommand {
    /// Discrete spectrum, optionally swept over one parameter.
    Spectrum,
    /// Survival amplitude with optional per-state columns.
    Survival,
    /// Ratio r(t) of resonant to anti-resonant probability, with a Zeno-time sidecar.
    Ratio,
    /// Zeno time t₀ of the resonance.
    Zeno,
    /// Poles and weights of the Friedrichs model.
    Friedrichs,
    /// Exceptional point inside an ε₁ bracket.
    EpLocate,
    /// Contour amplitudes against brute-force lattice propagation.
    OracleCheck,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Self {
        match c {
            CliCommand::Spectrum => Command::Spectrum,
            CliCommand::Survival => Command::Survival,
            CliCommand::Ratio => Command::Ratio,
            CliCommand::Zeno => Command::Zeno,
            CliCommand::Friedrichs => Command::Friedrichs,
            CliCommand::EpLocate => Command::EpLocate,
            CliCommand::OracleCheck => Command::OracleCheck,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

pub fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    let text = match (&cli.config, &cli.recipe) {
        (Some(_), Some(_)) => return Err(CliError::Config("give either --config or --recipe, not both".into())),
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?,
        (None, Some(name)) => recipes::recipe(name)
            .ok_or_else(|| {
                CliError::Config(format!("unknown recipe '{name}' (available: {})", recipes::names().join(", ")))
            })?
            .to_string(),
        (None, None) => return Err(CliError::Config("either --config or --recipe is required".into())),
    };
    RunConfig::parse(&text)
}

fn thread_count(cli: &Cli) -> CliResult<Option<usize>> {
    let n = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var("RESDYN_THREADS") {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Config(format!("RESDYN_THREADS='{v}' is not a positive integer")))?,
            ),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    Ok(n)
}

/// Path of a sidecar next to `out`: `ratio.csv` → `ratio.zeno.json`.
pub fn sidecar_path(out: &Path, suffix: &str) -> PathBuf {
    out.with_extension(suffix)
}

fn write(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Runs one CLI invocation and writes its output; returns the outcome for inspection.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let cfg = load_config(cli)?;
    let command: Command = cli.command.into();
    let format = cli.format.map(Format::from).or(cfg.format).unwrap_or(command.default_format());
    let threads = thread_count(cli)?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let outcome = pool.install(|| execute(command, &cfg, format))?;

    let out = cli.out.clone().or(cfg.output_path.clone());
    write(out.as_deref(), &outcome.product.render(format)?)?;
    if let Some(path) = &out {
        for (suffix, value) in &outcome.sidecars {
            write(Some(&sidecar_path(path, suffix)), &output::pretty(value))?;
        }
    }
    Ok(outcome)
}
