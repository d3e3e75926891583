use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{Invariant, PIPELINE_VERSION};
use crate::error::Result;
use crate::fpgroup::AbelianGroup;

/// On-disk store of `Iⁿ` values, addressed by the diagram text, `n` and the
/// pipeline version.
#[derive(Clone, Debug)]
pub struct InvariantCache {
    dir: PathBuf,
    version: String,
}

impl InvariantCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        Self::with_version(dir, PIPELINE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(InvariantCache { dir, version: version.to_string() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, diagram: &str, n: usize) -> String {
        let mut h = Sha256::new();
        h.update(diagram.as_bytes());
        h.update(b"\0");
        h.update(n.to_string().as_bytes());
        h.update(b"\0");
        h.update(self.version.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, diagram: &str, n: usize) -> PathBuf {
        self.dir.join(format!("{}.json", self.key(diagram, n)))
    }

    /// A stored value, or `None` on a miss or an unreadable entry.
    pub fn lookup(&self, diagram: &str, n: usize) -> Option<Invariant> {
        let text = fs::read_to_string(self.path(diagram, n)).ok()?;
        let groups: Vec<AbelianGroup> = serde_json::from_str(&text).ok()?;
        Some(groups.into_iter().collect())
    }

    pub fn store(&self, diagram: &str, n: usize, value: &Invariant) -> Result<()> {
        let groups: Vec<&AbelianGroup> = value.iter().collect();
        let path = self.path(diagram, n);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&groups)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = InvariantCache::new(dir.path()).unwrap();
        let value: Invariant = [AbelianGroup::free(1), AbelianGroup::from_cyclic(1, &[3])].into_iter().collect();
        let d = "[[2,5],[1,3],[2,4],[3,5],[1,4]]";
        assert_eq!(cache.lookup(d, 2), None);
        cache.store(d, 2, &value).unwrap();
        assert_eq!(cache.lookup(d, 2), Some(value.clone()));
        assert_eq!(cache.lookup(d, 3), None);
        assert_eq!(cache.lookup("[[2,5],[1,3],[2,4],[3,5],[4,1]]", 2), None);
        let bumped = InvariantCache::with_version(dir.path(), "2").unwrap();
        assert_eq!(bumped.lookup(d, 2), None);
    }
}
