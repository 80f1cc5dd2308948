use std::path::PathBuf;
use std::str::FromStr;

use crate::coxeter::{parse_type, CoxeterType};
use crate::error::{Error, Result};
use crate::faraway::{default_sample_rate, BuildOptions};

/// Default cap on enumerated elements (flats per level, group elements).
pub const DEFAULT_LIMIT: u128 = 1_000_000;

/// Environment variable that overrides the cache directory.
pub const CACHE_ENV: &str = "FARFLAT_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?}; expected markdown, csv or json"
            ))),
        }
    }
}

/// Settings shared by every command, validated before any computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub group: CoxeterType,
    pub max_codim: usize,
    pub limit: u128,
    /// `None` leaves the thread pool at its default size.
    pub workers: Option<usize>,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    /// Geometric core/support cross-check rate (1 = every flat).
    pub sample_rate: u32,
}

impl RunConfig {
    /// A configuration for `group` with the lattice built to `max_codim`
    /// (the full rank when `None`) and every other field at its default.
    pub fn new(group: &str, max_codim: Option<usize>) -> Result<Self> {
        let group = parse_type(group)?;
        let max_codim = max_codim.unwrap_or(group.rank());
        let sample_rate = default_sample_rate(group.rank());
        let config = Self {
            group,
            max_codim,
            limit: DEFAULT_LIMIT,
            workers: None,
            format: OutputFormat::Markdown,
            cache_dir: None,
            sample_rate,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.group.rank();
        if self.max_codim == 0 || self.max_codim > n {
            return Err(Error::InvalidArgument(format!(
                "max codimension {} outside 1..={n} for {}",
                self.max_codim, self.group
            )));
        }
        if self.limit == 0 {
            return Err(Error::InvalidArgument("limit must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidArgument(
                "worker count must be positive".into(),
            ));
        }
        if self.sample_rate == 0 {
            return Err(Error::InvalidArgument(
                "sample rate must be positive".into(),
            ));
        }
        if let Some(dir) = &self.cache_dir {
            if dir.exists() && !dir.is_dir() {
                return Err(Error::InvalidArgument(format!(
                    "cache path {} is not a directory",
                    dir.display()
                )));
            }
        }
        Ok(())
    }

    pub fn build_options(&self) -> BuildOptions {
        BuildOptions {
            flat_limit: usize::try_from(self.limit).unwrap_or(usize::MAX),
            sample_rate: self.sample_rate,
        }
    }

    /// Runs `f` inside a thread pool of the configured size.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(f()),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w)
                    .build()
                    .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}
