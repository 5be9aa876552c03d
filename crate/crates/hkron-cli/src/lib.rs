//! `hkron`: command-line access to Hilbert Eisenstein series, Kronecker
//! series layers, cusp-form extraction and the consistency checks.

pub mod commands;
pub mod config;
pub mod encode;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::Outcome;
use config::{Format, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
        }
    }
}

impl From<hilbert_kronecker::Error> for CliError {
    fn from(e: hilbert_kronecker::Error) -> Self {
        match e {
            hilbert_kronecker::Error::Unsupported(msg) => CliError::Unsupported(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hkron", version, about = "Exact Hilbert–Kronecker series computations")]
pub struct Cli {
    #[command(flatten)]
    pub settings: Settings,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Settings {
    /// Field discriminant (1 for Q).
    #[arg(long, global = true)]
    pub disc: Option<i64>,
    /// Largest weight computed.
    #[arg(long, global = true)]
    pub kmax: Option<i64>,
    /// Fourier coefficients are kept for trace(ν) <= this bound.
    #[arg(long, global = true)]
    pub trace_bound: Option<i64>,
    /// Largest X, Y exponent kept (defaults to kmax).
    #[arg(long, global = true)]
    pub xy_degree: Option<i64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key = value file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ζ_F(1−k) for even k <= kmax.
    Zeta,
    /// q-expansion of G_{F,k}.
    Eisenstein {
        #[arg(long)]
        k: Option<i64>,
    },
    /// Layers of the Kronecker series, one per even weight.
    KroneckerExpand {
        #[arg(long)]
        k: Option<i64>,
    },
    /// Eisenstein term, structural invariants and cusp rank for every even k <= kmax.
    Verify,
    /// The cusp eigenform and its period polynomials at weight k.
    Extract {
        #[arg(long)]
        k: Option<i64>,
    },
    /// Rankin–Cohen consistency of layer k, for one (p, q) or all of them.
    RcCheck {
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
    },
    /// Lifting assembly against the theta quotient over Q.
    ThetaOracle {
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

impl Settings {
    fn overrides(&self) -> Overrides {
        Overrides {
            disc: self.disc,
            kmax: self.kmax,
            trace_bound: self.trace_bound,
            xy_degree: self.xy_degree,
            format: self.format,
            out: self.out.clone(),
        }
    }
}

/// Resolves the configuration for `cli`: flags > config file > defaults.
pub fn resolve_config(cli: &Cli) -> Result<(RunConfig, bool), CliError> {
    let file = match &cli.settings.config {
        Some(path) => config::read_config(path)?,
        None => Overrides::default(),
    };
    let merged = cli.settings.overrides().over(file);
    let xy_explicit = merged.xy_degree.is_some();
    Ok((RunConfig::resolve(merged)?, xy_explicit))
}

/// The rendered document plus the process exit code.
pub struct Rendered {
    pub body: String,
    pub exit_code: u8,
}

fn render(cfg: &RunConfig, outcome: &Outcome) -> String {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "field": {"disc": cfg.disc},
                "truncation": {"trace_bound": cfg.trace_bound, "kmax": cfg.kmax, "xy_degree": cfg.xy_degree},
                "results": outcome.results,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => format!(
            "disc {}  kmax {}  trace_bound {}  xy_degree {}\n{}",
            cfg.disc, cfg.kmax, cfg.trace_bound, cfg.xy_degree, outcome.text
        ),
    }
}

/// Runs a parsed command line and renders its output.
pub fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let (base, xy_explicit) = resolve_config(cli)?;
    let (cfg, outcome) = match &cli.command {
        Command::Zeta => (base.clone(), commands::zeta(&base)?),
        Command::Eisenstein { k } => {
            let k = k.unwrap_or(base.kmax);
            let cfg = base.covering(k, xy_explicit);
            let out = commands::eisenstein_cmd(&cfg, k)?;
            (cfg, out)
        }
        Command::KroneckerExpand { k } => {
            let cfg = k.map_or(base.clone(), |k| base.covering(k, xy_explicit));
            let out = commands::kronecker_expand(&cfg, *k)?;
            (cfg, out)
        }
        Command::Verify => (base.clone(), commands::verify(&base)?),
        Command::Extract { k } => {
            let k = k.unwrap_or(base.kmax);
            let cfg = base.covering(k, xy_explicit);
            let out = commands::extract(&cfg, k)?;
            (cfg, out)
        }
        Command::RcCheck { k, p, q } => {
            let k = k.unwrap_or(base.kmax);
            let cfg = base.covering(k, xy_explicit);
            let out = commands::rc_check(&cfg, k, *p, *q)?;
            (cfg, out)
        }
        Command::ThetaOracle { order } => {
            // The oracle lives over Q whatever the configured field.
            let cfg = RunConfig { disc: 1, ..base };
            let out = commands::theta_oracle(*order)?;
            (cfg, out)
        }
    };
    let body = render(&cfg, &outcome);
    let exit_code = outcome.status.exit_code();
    if let Some(path) = &cfg.out {
        fs::write(path, &body)?;
        return Ok(Rendered {
            body: String::new(),
            exit_code,
        });
    }
    Ok(Rendered { body, exit_code })
}
