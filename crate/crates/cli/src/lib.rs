//! Suite runner, report writer and CSV emitters behind the `penta` binary.

pub mod emit;
pub mod report;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use penta_core::clifford::{standard_gamma_set, ConventionSet, GammaSet};
use serde::Serialize;

pub use report::{Check, Status, SuiteReport, PLUMBING, SCHEMA_VERSION};

pub const DEFAULT_SEED: u64 = 20;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o failure on {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::IoFailure { path: path.to_path_buf(), source }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Clifford,
    Conformal,
    Fivegeom,
    Spinormap,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 4] = [Suite::Clifford, Suite::Conformal, Suite::Fivegeom, Suite::Spinormap];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Conformal => "conformal",
            Suite::Fivegeom => "fivegeom",
            Suite::Spinormap => "spinormap",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Suite::Clifford, Suite::Conformal, Suite::Fivegeom, Suite::Spinormap, Suite::All]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| CliError::ConfigInvalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Markdown => "md",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub suite: Suite,
    pub convention_override: Option<ConventionSet>,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub format: Format,
}

impl RunConfig {
    pub fn new(suite: Suite, output_dir: impl Into<PathBuf>) -> Self {
        Self { suite, convention_override: None, seed: DEFAULT_SEED, output_dir: output_dir.into(), format: Format::Json }
    }

    pub fn convention(&self) -> ConventionSet {
        self.convention_override.unwrap_or_else(ConventionSet::standard)
    }

    pub fn gamma_set(&self) -> Result<GammaSet, CliError> {
        let c = self.convention();
        standard_gamma_set(c).map_err(|e| CliError::ConfigInvalid(format!("convention {c}: {e}")))
    }

    pub fn report_path(&self) -> PathBuf {
        self.output_dir.join(format!("report_{}.{}", self.suite, self.format.extension()))
    }
}

pub fn parse_convention(id: &str) -> Result<ConventionSet, CliError> {
    id.parse().map_err(|e| CliError::ConfigInvalid(format!("{e}")))
}

/// Runs the selected suite(s); the report carries every check in a fixed order.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteReport, CliError> {
    let gs = cfg.gamma_set()?;
    let selected: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in selected {
        checks.extend(match s {
            Suite::Clifford => suites::clifford::run(&gs),
            Suite::Conformal => suites::conformal::run(cfg.seed),
            Suite::Fivegeom => suites::fivegeom::run(cfg.seed),
            Suite::Spinormap => suites::spinormap::run(&gs, cfg.seed),
            Suite::All => unreachable!(),
        });
    }
    let versions = BTreeMap::from([
        ("penta-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("penta-core".to_string(), penta_core::VERSION.to_string()),
    ]);
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite: cfg.suite.to_string(),
        convention: gs.convention.id(),
        seed: cfg.seed,
        versions,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        checks,
    })
}

/// Writes the report in the configured format and returns its path.
pub fn write_report(cfg: &RunConfig, report: &SuiteReport) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;
    let path = cfg.report_path();
    let body = match cfg.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    std::fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}
