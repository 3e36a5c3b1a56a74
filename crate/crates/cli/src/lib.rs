//! The `dgk` command-line front end: argument parsing, dispatch, JSON reports and the
//! result cache.

pub mod cache;
pub mod commands;
pub mod input;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::Parser;
use dgk_core::Field;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use cache::{Cache, CacheError};
pub use commands::{Command, Params};
pub use input::Input;

pub const TOOL: &str = "dgk";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_ENV: &str = "DGK_CACHE";

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Exact homological computations for connected DG algebras.
#[derive(Clone, Debug, Parser)]
#[command(name = "dgk", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Presentation or structure-constant JSON file.
    pub input: PathBuf,
    /// Degree window D.
    #[arg(long, value_parser = parse_positive)]
    pub max_degree: Option<usize>,
    /// Stage window S.
    #[arg(long, value_parser = parse_positive)]
    pub max_stage: Option<usize>,
    /// Word length bound L for bar and cobar checks.
    #[arg(long, value_parser = parse_positive)]
    pub bar_length: Option<usize>,
    /// Field override: Q or GF(p).
    #[arg(long, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Seed for randomized representatives and searches.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cache directory; the DGK_CACHE environment variable takes precedence.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Recompute on a cache hit and fail unless the bytes agree.
    #[arg(long)]
    pub verify_cache: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(dgk_core::Error),
    #[error(transparent)]
    Internal(dgk_core::Error),
    #[error("cache hit for {key} differs from recomputation")]
    CacheMismatch { key: String },
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl From<dgk_core::Error> for CliError {
    fn from(e: dgk_core::Error) -> CliError {
        use dgk_core::Error::*;
        match e {
            Invariant(_)
            | RepresentativeNotInIP(_)
            | LiftFailed(_)
            | DimensionMismatch { .. }
            | NotContained
            | DivisionByZero => CliError::Internal(e),
            _ => CliError::Input(e),
        }
    }
}

impl CliError {
    /// 1 for usage and input errors, 2 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) | CliError::Cache(_) => 1,
            CliError::Internal(_) | CliError::CacheMismatch { .. } => 2,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input_sha256: &'a str,
    field: String,
    #[serde(flatten)]
    params: &'a Params,
    result: Value,
}

fn cache_dir(config: &RunConfig) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| config.cache.clone())
}

/// Runs one command and returns the report text (pretty JSON with a trailing newline).
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let text = fs::read_to_string(&config.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", config.input.display())))?;
    let (input, canonical) = Input::parse(&text, config.field)?;
    let params = commands::params(
        config.command,
        &input,
        config.max_degree,
        config.max_stage,
        config.bar_length,
        config.seed,
    );
    let field = input.field().name();
    let input_sha256 = cache::sha256_hex(canonical.as_bytes());
    let compute = || -> Result<String, CliError> {
        let v = commands::run_command(config.command, &input, &params)?;
        Ok(serde_json::to_string(&v).expect("values serialize"))
    };
    let result = match cache_dir(config) {
        None => compute()?,
        Some(dir) => {
            let cache = Cache::open(dir)?;
            let params_json = serde_json::to_string(&params).expect("params serialize");
            let key = cache::key_of(&[
                TOOL.as_bytes(),
                VERSION.as_bytes(),
                config.command.name().as_bytes(),
                field.as_bytes(),
                params_json.as_bytes(),
                canonical.as_bytes(),
            ]);
            match cache.get(&key) {
                Ok(Some(hit)) => {
                    log::info!("cache hit {key}");
                    if config.verify_cache && compute()? != hit {
                        return Err(CliError::CacheMismatch { key });
                    }
                    hit
                }
                miss => {
                    if let Err(e) = miss {
                        log::warn!("{e}; recomputing");
                    }
                    let value = compute()?;
                    cache.put(&key, &value)?;
                    value
                }
            }
        }
    };
    let envelope = Envelope {
        tool: TOOL,
        version: VERSION,
        command: config.command.name(),
        input_sha256: &input_sha256,
        field,
        params: &params,
        result: serde_json::from_str(&result)
            .map_err(|e| CliError::Internal(dgk_core::Error::Invariant(e.to_string())))?,
    };
    let mut out = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
    out.push('\n');
    Ok(out)
}

/// Full process behaviour: parse arguments, run, write the report. Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dgk: {e}");
            return e.exit_code();
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &report) {
                eprintln!("dgk: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{report}"),
    }
    0
}
