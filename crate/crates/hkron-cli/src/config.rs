//! Run configuration: command-line flags over a key=value file over defaults.

use std::fs;
use std::path::{Path, PathBuf};

use hilbert_kronecker::check_disc;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Settings that may come from flags or from the config file. `None` means
/// "not given at this level".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub disc: Option<i64>,
    pub kmax: Option<i64>,
    pub trace_bound: Option<i64>,
    pub xy_degree: Option<i64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            disc: self.disc.or(lower.disc),
            kmax: self.kmax.or(lower.kmax),
            trace_bound: self.trace_bound.or(lower.trace_bound),
            xy_degree: self.xy_degree.or(lower.xy_degree),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub disc: i64,
    pub kmax: i64,
    pub trace_bound: i64,
    pub xy_degree: i64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_DISC: i64 = 5;
pub const DEFAULT_KMAX: i64 = 8;
pub const DEFAULT_TRACE_BOUND: i64 = 4;

impl RunConfig {
    /// Resolves defaults and validates. `xy_degree` defaults to `kmax`.
    pub fn resolve(o: Overrides) -> Result<RunConfig, CliError> {
        let kmax = o.kmax.unwrap_or(DEFAULT_KMAX);
        let cfg = RunConfig {
            disc: o.disc.unwrap_or(DEFAULT_DISC),
            kmax,
            trace_bound: o.trace_bound.unwrap_or(DEFAULT_TRACE_BOUND),
            xy_degree: o.xy_degree.unwrap_or(kmax),
            format: o.format.unwrap_or_default(),
            out: o.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        check_disc(self.disc).map_err(|e| CliError::Config(e.to_string()))?;
        if self.kmax < 2 || self.kmax % 2 != 0 {
            return Err(CliError::Config(format!(
                "kmax must be even and >= 2, got {}",
                self.kmax
            )));
        }
        if self.trace_bound < 1 {
            return Err(CliError::Config(format!(
                "trace_bound must be >= 1, got {}",
                self.trace_bound
            )));
        }
        if self.xy_degree < 0 {
            return Err(CliError::Config(format!(
                "xy_degree must be >= 0, got {}",
                self.xy_degree
            )));
        }
        Ok(())
    }

    /// A copy with `kmax` raised to at least `k`; an explicit weight beyond
    /// the configured range widens the computation rather than failing.
    /// `xy_degree` follows only when it was left at its default.
    pub fn covering(&self, k: i64, xy_explicit: bool) -> RunConfig {
        let mut c = self.clone();
        if k > c.kmax {
            c.kmax = k;
            if !xy_explicit {
                c.xy_degree = k;
            }
        }
        c
    }
}

fn parse_int(key: &str, value: &str, line: usize) -> Result<i64, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("line {line}: {key} expects an integer, got {value:?}")))
}

/// Parses `key = value` lines. Blank lines and `#` comments are ignored;
/// keys may use `_` or `-`.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {line}: expected key = value, got {body:?}")))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "disc" => o.disc = Some(parse_int(&key, value, line)?),
            "kmax" | "k_max" => o.kmax = Some(parse_int(&key, value, line)?),
            "trace_bound" => o.trace_bound = Some(parse_int(&key, value, line)?),
            "xy_degree" => o.xy_degree = Some(parse_int(&key, value, line)?),
            "format" => {
                o.format = Some(match value {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    _ => return Err(CliError::Config(format!("line {line}: format must be json or text"))),
                })
            }
            "out" => o.out = Some(PathBuf::from(value)),
            _ => return Err(CliError::Config(format!("line {line}: unknown key {key:?}"))),
        }
    }
    Ok(o)
}

pub fn read_config(path: &Path) -> Result<Overrides, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}
