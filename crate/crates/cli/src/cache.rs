//! Content-addressed JSON cache for expensive tables.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::fingerprint;

pub const CACHE_ENV: &str = "TENSORION_CACHE_DIR";

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    pub hits: usize,
    pub misses: usize,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache {
            dir: Some(dir.into()),
            hits: 0,
            misses: 0,
        }
    }

    /// A cache that always rebuilds.
    pub fn disabled() -> Cache {
        Cache {
            dir: None,
            hits: 0,
            misses: 0,
        }
    }

    /// `$TENSORION_CACHE_DIR` if set, else `<out>/.cache`.
    pub fn for_output(out: &Path) -> Cache {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d),
            _ => Cache::new(out.join(".cache")),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, kind: &str, key: &impl Serialize) -> Option<PathBuf> {
        let d = self.dir.as_ref()?;
        Some(d.join(format!("{kind}-{}.json", &fingerprint(&(kind, key))[..32])))
    }

    /// Loads the entry for `(kind, key)` or builds, stores and returns it. A corrupt
    /// entry is rebuilt.
    pub fn get_or_build<T, F>(&mut self, kind: &str, key: &impl Serialize, build: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let Some(path) = self.path(kind, key) else {
            self.misses += 1;
            return build();
        };
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(v) = serde_json::from_slice(&bytes) {
                self.hits += 1;
                return Ok(v);
            }
        }
        self.misses += 1;
        let v = build()?;
        let dir = path.parent().expect("cache entries live in a directory");
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&v)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(v)
    }
}
