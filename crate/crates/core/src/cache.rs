//! On-disk cache of character tables, one JSON file per group.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::chartab::{CharTable, TableRecord};
use crate::error::Result;
use crate::matgroup::{ConjugacyData, Flavor, GroupSpec};
use crate::ring::Mode;

/// Bumped whenever the table encoding or the class ordering changes.
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "COXETER_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub p: u32,
    pub k: u32,
    pub r: u32,
    pub mode: Mode,
    pub flavor: Flavor,
}

impl From<GroupSpec> for CacheKey {
    fn from(s: GroupSpec) -> Self {
        CacheKey { p: s.ring.p, k: s.ring.k, r: s.ring.r, mode: s.ring.mode, flavor: s.flavor }
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    format_version: u32,
    key: CacheKey,
    table: TableRecord,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    /// The cache named by `COXETER_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, spec: GroupSpec) -> PathBuf {
        let k = CacheKey::from(spec);
        self.dir.join(format!("v{FORMAT_VERSION}")).join(format!(
            "{}-p{}-k{}-r{}-{}.json",
            k.flavor.as_str(),
            k.p,
            k.k,
            k.r,
            k.mode.as_str()
        ))
    }

    /// A cached table, or `None` when absent, stale or not matching `classes`.
    pub fn load(&self, spec: GroupSpec, classes: &ConjugacyData) -> Result<Option<CharTable>> {
        let path = self.path(spec);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let Ok(entry) = serde_json::from_slice::<CacheEntry>(&bytes) else { return Ok(None) };
        if entry.format_version != FORMAT_VERSION || entry.key != CacheKey::from(spec) {
            return Ok(None);
        }
        Ok(CharTable::from_record(&entry.table, classes).ok())
    }

    pub fn store(&self, spec: GroupSpec, table: &CharTable, classes: &ConjugacyData) -> Result<PathBuf> {
        let path = self.path(spec);
        let parent = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(parent)?;
        let entry = CacheEntry { format_version: FORMAT_VERSION, key: spec.into(), table: table.to_record(classes) };
        let tmp = parent.join(format!(".{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::matgroup::MatrixGroup;
    use crate::ring::RingSpec;

    #[test]
    fn round_trip_and_versioning() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let spec = GroupSpec::new(RingSpec::new(3, 1, 1, Mode::Mixed).unwrap(), Flavor::Gl);
        let g = MatrixGroup::new(spec).unwrap();
        let classes = g.conjugacy_classes();
        assert!(cache.load(spec, &classes).unwrap().is_none());
        let table = character_table(&g, &classes).unwrap();
        let path = cache.store(spec, &table, &classes).unwrap();
        assert!(path.to_string_lossy().contains("v1"));
        let back = cache.load(spec, &classes).unwrap().unwrap();
        assert_eq!(back.len(), table.len());
        for (a, b) in back.characters().iter().zip(table.characters()) {
            assert!(a.same_values(b));
        }
        let other = GroupSpec::new(RingSpec::new(3, 1, 1, Mode::Equal).unwrap(), Flavor::Gl);
        assert!(cache.load(other, &classes).unwrap().is_none());
        fs::write(&path, b"{\"format_version\": 0}").unwrap();
        assert!(cache.load(spec, &classes).unwrap().is_none());
    }
}
