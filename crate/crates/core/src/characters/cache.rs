use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use sha2::{Digest, Sha256};

use super::weyl_character;
use crate::error::{Error, Result};
use crate::rootdata::{CartanType, RootDatum, Weight};
use crate::symalg::LaurentPoly;

/// Bumped whenever the on-disk record layout or the character conventions
/// change; it is hashed into every file name.
pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterKey {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub highest_weight: Weight,
    pub vars: Vec<String>,
}

impl CharacterKey {
    pub fn new(datum: &RootDatum, highest_weight: &Weight) -> Self {
        CharacterKey {
            cartan_type: datum.cartan_type,
            rank: datum.rank,
            highest_weight: highest_weight.clone(),
            vars: super::satake_vars(datum.dim()),
        }
    }

    /// Sidecar line stored at the top of each cache file.
    pub fn key_line(&self) -> String {
        format!(
            "key: {} {} {}",
            self.cartan_type, self.rank, self.highest_weight
        )
    }

    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("schema {CACHE_SCHEMA_VERSION}\n").as_bytes());
        h.update(self.key_line().as_bytes());
        h.update(b"\nvars:");
        for v in &self.vars {
            h.update(b" ");
            h.update(v.as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn relative_path(&self) -> PathBuf {
        PathBuf::from("chars")
            .join(format!("{}{}", self.cartan_type, self.rank))
            .join(format!("{}.lp", self.content_hash()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    /// `(directory name, file count, total bytes)` per `<type><rank>`.
    pub groups: Vec<(String, usize, u64)>,
}

impl CacheStats {
    pub fn files(&self) -> usize {
        self.groups.iter().map(|g| g.1).sum()
    }

    pub fn bytes(&self) -> u64 {
        self.groups.iter().map(|g| g.2).sum()
    }
}

/// Memoizes Weyl characters in memory and, when a root is configured, on
/// disk under `<root>/chars/<type><rank>/<hash>.lp`.
///
/// Readers never block each other. Files are written to a temporary file in
/// the target directory and renamed into place.
#[derive(Debug, Default)]
pub struct CharacterCache {
    root: Option<PathBuf>,
    memory: RwLock<HashMap<CharacterKey, Arc<LaurentPoly>>>,
}

impl CharacterCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn on_disk(root: impl Into<PathBuf>) -> Self {
        CharacterCache {
            root: Some(root.into()),
            memory: RwLock::default(),
        }
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    pub fn character(&self, datum: &RootDatum, lambda: &Weight) -> Result<Arc<LaurentPoly>> {
        let key = CharacterKey::new(datum, lambda);
        if let Some(hit) = self.memory.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = match self.load(&key) {
            Some(p) => p,
            None => {
                let p = weyl_character(datum, lambda)?;
                self.store(&key, &p)?;
                p
            }
        };
        let value = Arc::new(value);
        let mut guard = self.memory.write().expect("cache lock");
        Ok(guard.entry(key).or_insert(value).clone())
    }

    /// Reads a cached record; unreadable or mismatching files count as misses.
    fn load(&self, key: &CharacterKey) -> Option<LaurentPoly> {
        let path = self.root.as_ref()?.join(key.relative_path());
        let text = fs::read_to_string(path).ok()?;
        let (first, record) = text.split_once('\n')?;
        if first != key.key_line() {
            return None;
        }
        let p = LaurentPoly::from_record(record).ok()?;
        (p.vars() == key.vars.as_slice()).then_some(p)
    }

    fn store(&self, key: &CharacterKey, p: &LaurentPoly) -> Result<()> {
        let Some(root) = &self.root else {
            return Ok(());
        };
        let path = root.join(key.relative_path());
        let dir = path.parent().expect("cache path has a parent");
        let cache_err = |e: std::io::Error| Error::Cache(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(cache_err)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(cache_err)?;
        tmp.write_all(key.key_line().as_bytes()).map_err(cache_err)?;
        tmp.write_all(b"\n").map_err(cache_err)?;
        tmp.write_all(p.to_record().as_bytes()).map_err(cache_err)?;
        tmp.persist(&path)
            .map_err(|e| Error::Cache(format!("{}: {}", path.display(), e.error)))?;
        Ok(())
    }

    /// Removes every cached character file and empties the memory layer.
    pub fn clear(&self) -> Result<()> {
        self.memory.write().expect("cache lock").clear();
        let Some(root) = &self.root else {
            return Ok(());
        };
        let chars = root.join("chars");
        if chars.exists() {
            fs::remove_dir_all(&chars)
                .map_err(|e| Error::Cache(format!("{}: {e}", chars.display())))?;
        }
        Ok(())
    }

    pub fn stats(&self) -> Result<CacheStats> {
        let mut stats = CacheStats::default();
        let Some(root) = &self.root else {
            return Ok(stats);
        };
        let chars = root.join("chars");
        if !chars.exists() {
            return Ok(stats);
        }
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", chars.display()));
        let mut groups: Vec<_> = fs::read_dir(&chars)
            .map_err(io)?
            .filter_map(|e| e.ok())
            .filter(|e| e.path().is_dir())
            .collect();
        groups.sort_by_key(|e| e.file_name());
        for group in groups {
            let mut count = 0;
            let mut bytes = 0;
            for f in fs::read_dir(group.path()).map_err(io)?.filter_map(|e| e.ok()) {
                if f.path().extension().is_some_and(|x| x == "lp") {
                    count += 1;
                    bytes += f.metadata().map(|m| m.len()).unwrap_or(0);
                }
            }
            stats
                .groups
                .push((group.file_name().to_string_lossy().into_owned(), count, bytes));
        }
        Ok(stats)
    }
}
