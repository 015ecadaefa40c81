//! Content-addressed on-disk store for reduced Groebner bases.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::error::{AlgebraError, Result};

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| AlgebraError::Io(e.to_string()))?;
        Ok(DiskCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key_hash(key: &str) -> String {
        hex::encode(Sha256::digest(key.as_bytes()))
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.gb", Self::key_hash(key)))
    }

    /// Stored lines for `key`. The first line repeats the key, so hash
    /// collisions and foreign files are rejected.
    pub fn load(&self, key: &str) -> Option<Vec<String>> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let mut lines = text.lines();
        if lines.next()? != key_line(key) {
            return None;
        }
        Some(lines.map(str::to_string).collect())
    }

    /// Writes via a temporary file and rename, so readers never see a
    /// partially written entry.
    pub fn store(&self, key: &str, lines: &[String]) -> Result<()> {
        let target = self.path_for(key);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            Self::key_hash(key),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let io = |e: std::io::Error| AlgebraError::Io(e.to_string());
        let mut f = fs::File::create(&tmp).map_err(io)?;
        writeln!(f, "{}", key_line(key)).map_err(io)?;
        for l in lines {
            writeln!(f, "{l}").map_err(io)?;
        }
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &target).map_err(io)?;
        Ok(())
    }

    /// Number of entries and total bytes.
    pub fn stats(&self) -> Result<(usize, u64)> {
        let mut n = 0;
        let mut bytes = 0;
        for e in fs::read_dir(&self.dir).map_err(|e| AlgebraError::Io(e.to_string()))? {
            let e = e.map_err(|e| AlgebraError::Io(e.to_string()))?;
            if e.path().extension().is_some_and(|x| x == "gb") {
                n += 1;
                bytes += e.metadata().map(|m| m.len()).unwrap_or(0);
            }
        }
        Ok((n, bytes))
    }

    /// Removes every entry; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        for e in fs::read_dir(&self.dir).map_err(|e| AlgebraError::Io(e.to_string()))? {
            let p = e.map_err(|e| AlgebraError::Io(e.to_string()))?.path();
            if p.extension().is_some_and(|x| x == "gb" || x == "tmp") {
                fs::remove_file(&p).map_err(|e| AlgebraError::Io(e.to_string()))?;
                n += 1;
            }
        }
        Ok(n)
    }
}

fn key_line(key: &str) -> String {
    format!("# {}", key.replace('\n', " "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_and_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache::new(dir.path()).unwrap();
        assert!(c.load("k").is_none());
        c.store("k", &["x0^2 - x1".into(), "x1".into()]).unwrap();
        assert_eq!(c.load("k").unwrap(), vec!["x0^2 - x1".to_string(), "x1".to_string()]);
        assert!(c.load("other").is_none());
        assert_eq!(c.stats().unwrap().0, 1);
        assert_eq!(c.clear().unwrap(), 1);
    }
}
