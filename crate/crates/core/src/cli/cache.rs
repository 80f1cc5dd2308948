use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::arrangement::IntersectionLattice;
use crate::coxeter::{parse_type, RootSet, RootSystem};
use crate::error::{Error, Result};
use crate::faraway::Context;
use crate::invariants::{os_exponents, OSData};

/// First line of every cache file; bump when the layout changes.
pub const MAGIC: &str = "FFLT1";

/// On-disk lattice with its derived data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub group: String,
    pub digest: String,
    pub max_codim: usize,
    /// Root indices of every flat, one list per codimension.
    pub levels: Vec<Vec<Vec<usize>>>,
    pub labels: Vec<String>,
    pub mobius: Vec<i64>,
    /// OS exponents per orbit, in orbit order; `None` when out of reach.
    pub os: Vec<Option<OSData>>,
}

fn os_per_orbit(ctx: &Context) -> Vec<Option<OSData>> {
    ctx.orbits()
        .types
        .iter()
        .map(|t| os_exponents(ctx.lattice(), t.representative).ok())
        .collect()
}

impl CacheFile {
    pub fn from_context(ctx: &Context) -> Self {
        let levels = ctx
            .lattice()
            .levels_as_root_sets()
            .into_iter()
            .map(|level| level.iter().map(|r| r.iter().collect()).collect())
            .collect();
        Self {
            group: ctx.coxeter_type().to_string(),
            digest: ctx.system().root_order_digest(),
            max_codim: ctx.lattice().max_codim(),
            levels,
            labels: ctx.orbits().types.iter().map(|t| t.label.clone()).collect(),
            mobius: ctx.mobius().to_vec(),
            os: os_per_orbit(ctx),
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = format!("{MAGIC}\n").into_bytes();
        serde_json::to_writer(&mut out, self).map_err(|e| Error::Cache(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let newline = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Cache("missing header line".into()))?;
        if &bytes[..newline] != MAGIC.as_bytes() {
            return Err(Error::Cache(format!(
                "bad magic {:?}, expected {MAGIC}",
                String::from_utf8_lossy(&bytes[..newline])
            )));
        }
        serde_json::from_slice(&bytes[newline + 1..]).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn store(&self, path: &Path) -> Result<()> {
        let dir = path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let bytes = self.to_bytes()?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(&bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }

    /// Rebuilds the context, rejecting the file if the root order has
    /// changed or any stored value disagrees with a recomputation.
    pub fn into_context(self, sample_rate: u32) -> Result<Context> {
        let ctype = parse_type(&self.group)?;
        let system = Arc::new(RootSystem::generate(&ctype)?);
        let digest = system.root_order_digest();
        if digest != self.digest {
            return Err(Error::Cache(format!(
                "stale cache: root order digest {} does not match {digest}",
                self.digest
            )));
        }
        if self.levels.len() != self.max_codim + 1 {
            return Err(Error::Cache("level count does not match max_codim".into()));
        }
        let n = system.num_roots();
        let mut levels = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let mut sets = Vec::with_capacity(level.len());
            for flat in level {
                if let Some(&bad) = flat.iter().find(|&&i| i >= n) {
                    return Err(Error::Cache(format!("root index {bad} out of range")));
                }
                sets.push(flat.iter().copied().collect::<RootSet>());
            }
            levels.push(sets);
        }
        let lattice = IntersectionLattice::from_levels(system, levels)
            .map_err(|e| Error::Cache(e.to_string()))?;
        let ctx = Context::from_lattice(lattice, sample_rate)?;
        let fresh = Self::from_context(&ctx);
        if fresh != self {
            return Err(Error::Cache(
                "stored derived data disagrees with recomputation".into(),
            ));
        }
        Ok(ctx)
    }
}

/// `<dir>/<group>-c<max_codim>.fflt`, with the group symbol reduced to
/// filename-safe characters.
pub fn cache_path(dir: &Path, config: &RunConfig) -> PathBuf {
    let name: String = config
        .group
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{name}-c{}.fflt", config.max_codim))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Stored,
    /// The file was rejected and rebuilt; the reason is kept.
    Replaced(String),
}

/// Loads the context from the cache directory when possible, otherwise
/// builds it (and stores it if a directory is configured).
pub fn load_or_build(config: &RunConfig) -> Result<(Context, CacheStatus)> {
    let Some(dir) = &config.cache_dir else {
        let ctx = Context::build(&config.group, config.max_codim, config.build_options())?;
        return Ok((ctx, CacheStatus::Disabled));
    };
    let path = cache_path(dir, config);
    let mut rejected = None;
    if path.exists() {
        match CacheFile::load(&path).and_then(|c| c.into_context(config.sample_rate)) {
            Ok(ctx) => return Ok((ctx, CacheStatus::Hit)),
            Err(e @ Error::Cache(_)) => rejected = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    let ctx = Context::build(&config.group, config.max_codim, config.build_options())?;
    CacheFile::from_context(&ctx).store(&path)?;
    let status = rejected.map_or(CacheStatus::Stored, CacheStatus::Replaced);
    Ok((ctx, status))
}
