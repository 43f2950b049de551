//! On-disk cache of Lee-number tables, one JSON file per `(q, n)`.
//!
//! Entries are stored as decimal power-basis coefficients and reloaded
//! through [`LeeNumberTable::from_coefficients`], which re-runs the table
//! checksums. Unreadable or stale files are rebuilt and overwritten.

use std::path::{Path, PathBuf};

use leelp_core::leenum::{lee_number_table, LeeNumberTable};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CACHE_ENV: &str = "LEELP_CACHE_DIR";
pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredTable {
    pub version: u32,
    pub q: u32,
    pub n: usize,
    /// Row-major entries, each a coefficient vector in the power basis.
    pub coefficients: Vec<Vec<String>>,
}

impl StoredTable {
    pub fn from_table(table: &LeeNumberTable) -> StoredTable {
        StoredTable {
            version: CACHE_FORMAT_VERSION,
            q: table.q(),
            n: table.n(),
            coefficients: table.coefficients().map(|c| c.iter().map(BigInt::to_string).collect()).collect(),
        }
    }

    pub fn into_table(self) -> CliResult<LeeNumberTable> {
        if self.version != CACHE_FORMAT_VERSION {
            return Err(CliError::Usage(format!("cache format version {} is not {CACHE_FORMAT_VERSION}", self.version)));
        }
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| c.iter().map(|s| s.parse::<BigInt>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Usage(format!("bad coefficient in cache: {e}")))?;
        Ok(LeeNumberTable::from_coefficients(self.q, self.n, coefficients)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    /// Uses the directory named by `LEELP_CACHE_DIR`, or no cache if unset.
    pub fn from_env() -> TableCache {
        TableCache { dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from) }
    }

    pub fn disabled() -> TableCache {
        TableCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> TableCache {
        TableCache { dir: Some(dir.into()) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path(&self, q: u32, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("lee-q{q}-n{n}-v{CACHE_FORMAT_VERSION}.json")))
    }

    fn load(path: &Path, q: u32, n: usize) -> Option<LeeNumberTable> {
        let text = std::fs::read_to_string(path).ok()?;
        let stored: StoredTable = serde_json::from_str(&text).ok()?;
        if stored.q != q || stored.n != n {
            return None;
        }
        stored.into_table().ok()
    }

    fn store(path: &Path, table: &LeeNumberTable) -> CliResult<()> {
        let dir = path.parent().unwrap_or(Path::new("."));
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let text = serde_json::to_string(&StoredTable::from_table(table))?;
        // write then rename so a concurrent reader never sees a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
    }

    /// Returns the cached table for `(q, n)`, building and storing it on a miss.
    pub fn table(&self, q: u32, n: usize) -> CliResult<LeeNumberTable> {
        let Some(path) = self.path(q, n) else {
            return Ok(lee_number_table(q, n)?);
        };
        if let Some(t) = Self::load(&path, q, n) {
            return Ok(t);
        }
        let table = lee_number_table(q, n)?;
        Self::store(&path, &table)?;
        Ok(table)
    }
}
