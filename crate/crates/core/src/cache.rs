//! On-disk memo of [`Tables`].
//!
//! The cache is never trusted: everything loaded is re-derived and compared
//! by [`Tables::from_parts`], and any mismatch, parse failure or version skew
//! degrades to a warning plus a fresh computation.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Tables, WeightSet};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    /// `b_values[n] = b(n)`; index 0 is unused and stored as 0.
    pub b_values: Vec<u64>,
    pub w_sets: BTreeMap<u64, WeightSet>,
    pub max_prepared_n: u64,
}

impl CacheFile {
    pub fn from_tables(tables: &Tables) -> Self {
        let mut b_values = vec![0];
        b_values.extend_from_slice(tables.bl().b_values());
        let w_sets = tables
            .memoized_sets()
            .iter()
            .enumerate()
            .map(|(i, w)| (i as u64 + 1, w.clone()))
            .collect();
        Self {
            version: CACHE_VERSION,
            b_values,
            w_sets,
            max_prepared_n: tables.prepared_up_to(),
        }
    }

    /// Validates the contents against recomputation.
    pub fn into_tables(self) -> Result<Tables> {
        if self.version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "version {} (expected {CACHE_VERSION})",
                self.version
            )));
        }
        if self.b_values.first() != Some(&0) {
            return Err(Error::Cache(
                "b_values must start with a 0 placeholder".into(),
            ));
        }
        let mut memo = Vec::with_capacity(self.w_sets.len());
        for (i, (n, set)) in self.w_sets.into_iter().enumerate() {
            if n != i as u64 + 1 {
                return Err(Error::Cache(format!("w_sets skips from {i} to {n}")));
            }
            memo.push(set);
        }
        Tables::from_parts(&self.b_values[1..], memo, self.max_prepared_n)
            .map_err(|e| Error::Cache(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Writes through a sibling temporary file so readers never see a
    /// partial cache.
    pub fn write(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp).map_err(io)?;
        serde_json::to_writer(&mut f, self).map_err(|e| Error::Cache(e.to_string()))?;
        f.write_all(b"\n").map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

#[derive(Debug)]
pub struct Loaded {
    pub tables: Tables,
    pub warnings: Vec<String>,
    /// The file is missing, rejected, or smaller than what was needed.
    pub stale: bool,
}

/// Tables prepared up to `max_n`, seeded from `path` when it holds a valid
/// cache.
pub fn load_tables(path: &Path, max_n: u64) -> Result<Loaded> {
    let mut warnings = Vec::new();
    let cached = if path.exists() {
        match CacheFile::read(path).and_then(CacheFile::into_tables) {
            Ok(t) => Some(t),
            Err(e) => {
                warnings.push(format!("ignoring cache {}: {e}", path.display()));
                None
            }
        }
    } else {
        None
    };
    let stale = cached.as_ref().is_none_or(|t| t.prepared_up_to() < max_n);
    let mut tables = cached.unwrap_or_default();
    tables.prepare(max_n)?;
    Ok(Loaded {
        tables,
        warnings,
        stale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = std::env::temp_dir().join(format!("reach-cache-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tables.json");

        let t = Tables::prepared(5000).unwrap();
        CacheFile::from_tables(&t).write(&path).unwrap();
        let loaded = load_tables(&path, 3000).unwrap();
        assert!(loaded.warnings.is_empty());
        assert!(!loaded.stale);
        assert_eq!(loaded.tables, t);
        assert_eq!(loaded.tables.wsize(5000).unwrap(), 24746694);

        let grown = load_tables(&path, 6000).unwrap();
        assert!(grown.stale);
        assert_eq!(grown.tables.prepared_up_to(), 6000);

        fs::write(&path, "{ not json").unwrap();
        let broken = load_tables(&path, 100).unwrap();
        assert_eq!(broken.warnings.len(), 1);
        assert!(broken.stale);
        assert_eq!(broken.tables, Tables::prepared(100).unwrap());

        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rejects_version_and_tampering() {
        let t = Tables::prepared(200).unwrap();
        let mut file = CacheFile::from_tables(&t);
        file.version = 0;
        assert!(matches!(file.clone().into_tables(), Err(Error::Cache(_))));

        let mut file = CacheFile::from_tables(&t);
        file.b_values[8] = 47;
        assert!(file.into_tables().is_err());

        let mut file = CacheFile::from_tables(&t);
        file.w_sets.insert(3, WeightSet::interval(3, 9));
        assert!(file.into_tables().is_err());

        let file = CacheFile::from_tables(&t);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"w_sets\":{\"1\":[[1,1]]"));
        let back: CacheFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_tables().unwrap(), t);
    }
}
