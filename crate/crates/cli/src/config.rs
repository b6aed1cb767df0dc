use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use qmod_core::{ModuleKind, Params, TruncationWindow};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qmod_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(
                qmod_core::Error::InvalidParameter(_) | qmod_core::Error::OutsideWindow { .. },
            ) => 2,
            CliError::Core(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn config<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Config(msg.into()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Module kind: podles, suq2-basic or suq2-dlssv.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    /// Number of levels `k < N`.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// `|l| <= L` for the basic SU_q(2) module.
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long)]
    pub jmax: Option<usize>,
    /// Interior margin in levels.
    #[arg(long)]
    pub margin: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// TOML file whose keys override the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub kind: Option<String>,
    pub q: Option<f64>,
    pub s: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    pub jmax: Option<usize>,
    pub margin: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub qs: Option<Vec<f64>>,
    pub ss: Option<Vec<f64>>,
    pub k: Option<usize>,
    pub sign: Option<String>,
}

pub fn read_file_config(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
}

pub const DEFAULT_TOL: f64 = 1e-8;
pub const MIN_LEVELS: usize = 10;
pub const MIN_L: usize = 3;
pub const MIN_JMAX: usize = 4;

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub kind: ModuleKind,
    pub params: Params,
    pub window: TruncationWindow,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Common {
    pub fn merge(&mut self, f: &FileConfig) {
        macro_rules! over {
            ($($field:ident),*) => {$(
                if let Some(v) = &f.$field {
                    self.$field = Some(v.clone());
                }
            )*};
        }
        over!(kind, q, s, n, l, jmax, margin, tol, format, output);
    }

    /// Loads the config file (if any), merges it, and returns the file
    /// contents for command-specific keys.
    pub fn load(&mut self) -> CliResult<FileConfig> {
        match self.config.clone() {
            Some(path) => {
                let f = read_file_config(&path)?;
                self.merge(&f);
                Ok(f)
            }
            None => Ok(FileConfig::default()),
        }
    }

    pub fn kind_or(&self, default: ModuleKind) -> CliResult<ModuleKind> {
        match &self.kind {
            None => Ok(default),
            Some(k) => ModuleKind::parse(k)
                .map_or_else(|| config(format!("unknown module kind '{k}'")), Ok),
        }
    }

    pub fn resolve(&self, kind: ModuleKind) -> CliResult<RunConfig> {
        let q = self.q.unwrap_or(0.5);
        let params = match kind {
            ModuleKind::Podles => Params::new(q, self.s.unwrap_or(1.0)),
            _ => {
                if self.s.is_some() {
                    return config(format!("--s does not apply to {kind}"));
                }
                Params::suq2(q)
            }
        };
        params
            .validate(kind)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let mut window = match kind.default_window() {
            TruncationWindow::Podles { n, margin } => TruncationWindow::Podles {
                n: self.n.unwrap_or(n),
                margin,
            },
            TruncationWindow::SUq2Basic { n, l, margin } => TruncationWindow::SUq2Basic {
                n: self.n.unwrap_or(n),
                l: self.l.unwrap_or(l),
                margin,
            },
            TruncationWindow::Dlssv { two_jmax, margin } => TruncationWindow::Dlssv {
                two_jmax: self.jmax.map_or(two_jmax, |j| 2 * j),
                margin,
            },
        };
        if let Some(m) = self.margin {
            window = window.with_margin(m);
        }
        match window {
            TruncationWindow::Podles { n, .. } | TruncationWindow::SUq2Basic { n, .. }
                if n < MIN_LEVELS =>
            {
                return config(format!("window below minimum: N = {n} < {MIN_LEVELS}"));
            }
            TruncationWindow::SUq2Basic { l, .. } if l < MIN_L => {
                return config(format!("window below minimum: L = {l} < {MIN_L}"));
            }
            TruncationWindow::Dlssv { two_jmax, .. } if two_jmax < 2 * MIN_JMAX => {
                return config(format!(
                    "window below minimum: jmax = {} < {MIN_JMAX}",
                    two_jmax / 2
                ));
            }
            _ => {}
        }
        window
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return config(format!("tolerance {tol} must be positive"));
        }
        Ok(RunConfig {
            kind,
            params,
            window,
            tol,
            format: self.format.unwrap_or_default(),
            output: self.output.clone(),
        })
    }
}

/// Comma-separated numbers.
pub fn parse_list(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad number '{t}'")))
        })
        .collect()
}
