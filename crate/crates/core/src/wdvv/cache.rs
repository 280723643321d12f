//! Write-once invariant cache with optional file persistence.
//!
//! File format: one record per line, `<canonical key>\t<num>/<den>`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::exact::rational::{display, parse};
use crate::exact::Rational;

use super::query::InvariantQuery;

#[derive(Debug, Default)]
pub struct MemoCache {
    entries: BTreeMap<InvariantQuery, Rational>,
    path: Option<PathBuf>,
    dirty: bool,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

impl MemoCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; later `save` calls write back to it.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut cache = MemoCache {
            path: Some(path.clone()),
            ..Self::default()
        };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(io_err(&path, e)),
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad =
                || Error::Malformed(format!("{}:{}: bad cache record", path.display(), i + 1));
            let (key, value) = line.split_once('\t').ok_or_else(bad)?;
            let q: InvariantQuery = key.parse().map_err(|_| bad())?;
            let v = parse(value).ok_or_else(bad)?;
            cache.insert(q, v)?;
        }
        cache.dirty = false;
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, q: &InvariantQuery) -> Option<&Rational> {
        self.entries.get(q)
    }

    /// Inserting a different value under an existing key is an internal error.
    pub fn insert(&mut self, q: InvariantQuery, v: Rational) -> Result<()> {
        match self.entries.get(&q) {
            Some(old) if *old != v => Err(Error::Internal(format!(
                "cache conflict for {q}: stored {}, new {}",
                display(old),
                display(&v)
            ))),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(q, v);
                self.dirty = true;
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&InvariantQuery, &Rational)> {
        self.entries.iter()
    }

    /// Atomically rewrites the backing file (temp file + rename). No-op for an
    /// in-memory cache or when nothing changed.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = self.path.clone() else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| io_err(&path, e))?;
        for (q, v) in &self.entries {
            writeln!(tmp, "{q}\t{}/{}", v.numer(), v.denom()).map_err(|e| io_err(&path, e))?;
        }
        tmp.as_file().sync_all().map_err(|e| io_err(&path, e))?;
        tmp.persist(&path).map_err(|e| io_err(&path, e.error))?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn write_once() {
        let mut c = MemoCache::in_memory();
        let q = InvariantQuery::points(2, vec![4]);
        c.insert(q.clone(), ratio(1, 8)).unwrap();
        c.insert(q.clone(), ratio(2, 16)).unwrap();
        assert!(matches!(c.insert(q, ratio(1, 7)), Err(Error::Internal(_))));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.tsv");
        let mut c = MemoCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.insert(InvariantQuery::points(2, vec![0, 4]), ratio(0, 1))
            .unwrap();
        c.insert(InvariantQuery::new(3, 0, 1, vec![0, 2, 2, 0]), ratio(-3, 4))
            .unwrap();
        c.save().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("d=3;l=0;m=1;rs=2,2,0,0\t-3/4\n"));
        assert!(text.contains("d=2;l=0;m=0;rs=4,0\t0/1\n"));
        let back = MemoCache::open(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(
            back.get(&InvariantQuery::new(3, 0, 1, vec![2, 2, 0, 0])),
            Some(&ratio(-3, 4))
        );
    }

    #[test]
    fn malformed_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tsv");
        std::fs::write(&path, "d=1;l=0;m=0;rs=0,0 1\n").unwrap();
        assert!(matches!(MemoCache::open(&path), Err(Error::Malformed(_))));
    }
}
