//! Persistent memoization of split+tag results with encounter bookkeeping.
//!
//! Each entry remembers the first time an identifier was seen, the most
//! recent encounter, and how often it was requested, all as UNIX timestamps
//! in seconds. The persisted JSON document is keyed to the hash of the model
//! that produced it; loading against a different model silently starts empty
//! so stale annotations can never be served.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::IdentifierContext;
use crate::pipeline::{AnnotatedWord, Tagger};
use crate::Scalar;

const FORMAT_VERSION: u32 = 1;

/// Seconds since the UNIX epoch.
pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// One memoized annotation with its encounter bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub annotation: Vec<AnnotatedWord>,
    pub first_seen: u64,
    pub last_seen: u64,
    pub count: u64,
}

fn key_for(identifier: &str, context: IdentifierContext) -> String {
    // Context first; a tab never occurs in a context name.
    format!("{}\t{}", context.as_str(), identifier)
}

#[derive(Debug, Default)]
struct Inner {
    entries: HashMap<String, CacheEntry>,
    dirty: bool,
}

/// Concurrent annotation cache with optional JSON persistence.
#[derive(Debug)]
pub struct Cache {
    inner: Mutex<Inner>,
    model_version: String,
    path: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct PersistedCache {
    version: u32,
    model_version: String,
    entries: HashMap<String, CacheEntry>,
}

impl Cache {
    /// In-memory cache without persistence.
    pub fn in_memory(model_version: impl Into<String>) -> Self {
        Cache {
            inner: Mutex::new(Inner::default()),
            model_version: model_version.into(),
            path: None,
        }
    }

    /// Opens a persistent cache, loading entries recorded under the same
    /// model version. A missing file starts empty; a file written by a
    /// different model version is discarded. Unreadable storage is a
    /// [`Error::CacheUnavailable`], letting callers fall back to uncached
    /// tagging.
    pub fn open(path: &Path, model_version: impl Into<String>) -> Result<Self> {
        let model_version = model_version.into();
        let mut entries = HashMap::new();
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let persisted: PersistedCache = serde_json::from_str(&text)
                    .map_err(|e| Error::CacheUnavailable(format!("{}: {e}", path.display())))?;
                if persisted.version == FORMAT_VERSION
                    && persisted.model_version == model_version
                {
                    entries = persisted.entries;
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => {
                return Err(Error::CacheUnavailable(format!("{}: {e}", path.display())));
            }
        }
        Ok(Cache {
            inner: Mutex::new(Inner {
                entries,
                dirty: false,
            }),
            model_version,
            path: Some(path.to_path_buf()),
        })
    }

    pub fn model_version(&self) -> &str {
        &self.model_version
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// On hit, records the encounter (count + 1, last_seen = now) and returns
    /// the updated entry; on miss, returns nothing and records nothing.
    pub fn lookup(
        &self,
        identifier: &str,
        context: IdentifierContext,
        now: u64,
    ) -> Option<CacheEntry> {
        let mut inner = self.inner.lock().expect("cache lock");
        let entry = inner.entries.get_mut(&key_for(identifier, context))?;
        entry.count += 1;
        entry.last_seen = now;
        let snapshot = entry.clone();
        inner.dirty = true;
        Some(snapshot)
    }

    /// Creates the entry for a key that has never been seen.
    pub fn store(
        &self,
        identifier: &str,
        context: IdentifierContext,
        annotation: Vec<AnnotatedWord>,
        now: u64,
    ) -> Result<CacheEntry> {
        let key = key_for(identifier, context);
        let mut inner = self.inner.lock().expect("cache lock");
        if inner.entries.contains_key(&key) {
            return Err(Error::DuplicateCacheEntry(key));
        }
        let entry = CacheEntry {
            annotation,
            first_seen: now,
            last_seen: now,
            count: 1,
        };
        inner.entries.insert(key, entry.clone());
        inner.dirty = true;
        Ok(entry)
    }

    /// Writes the cache to its file if anything changed since the last
    /// flush. Writes go to a sibling temp file first and are renamed into
    /// place.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let snapshot = {
            let mut inner = self.inner.lock().expect("cache lock");
            if !inner.dirty {
                return Ok(());
            }
            inner.dirty = false;
            PersistedCache {
                version: FORMAT_VERSION,
                model_version: self.model_version.clone(),
                entries: inner.entries.clone(),
            }
        };
        let json = serde_json::to_string_pretty(&snapshot).expect("cache serializes");
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        std::fs::write(&tmp, json)
            .and_then(|()| std::fs::rename(&tmp, path))
            .map_err(|e| Error::CacheUnavailable(format!("{}: {e}", path.display())))?;
        Ok(())
    }
}

/// Tags through the cache: hits return the memoized annotation with updated
/// bookkeeping, misses run the tagger and store the result. The boolean is
/// true for hits. Two racing misses resolve to one store and one hit, so N
/// requests always add up to an encounter count of N.
pub fn tag_cached<F: Scalar>(
    tagger: &Tagger<F>,
    cache: &Cache,
    identifier: &str,
    context: IdentifierContext,
    now: u64,
) -> Result<(CacheEntry, bool)> {
    if let Some(entry) = cache.lookup(identifier, context, now) {
        return Ok((entry, true));
    }
    let annotation = tagger.tag_identifier(identifier, context)?;
    match cache.store(identifier, context, annotation, now) {
        Ok(entry) => Ok((entry, false)),
        Err(Error::DuplicateCacheEntry(_)) => {
            let entry = cache
                .lookup(identifier, context, now)
                .expect("entry exists after duplicate store");
            Ok((entry, true))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::ScalarTag;

    fn sample_annotation() -> Vec<AnnotatedWord> {
        vec![
            AnnotatedWord {
                word: "bit".to_string(),
                tag: ScalarTag::NM,
                is_dictionary_word: true,
            },
            AnnotatedWord {
                word: "set".to_string(),
                tag: ScalarTag::N,
                is_dictionary_word: true,
            },
        ]
    }

    const CTX: IdentifierContext = IdentifierContext::Declaration;

    #[test]
    fn miss_on_fresh_cache() {
        let cache = Cache::in_memory("m1");
        assert!(cache.lookup("bitSet", CTX, 10).is_none());
        assert_eq!(cache.len(), 0);
    }

    #[test]
    fn store_then_hit_increments_without_touching_first_seen() {
        let cache = Cache::in_memory("m1");
        let stored = cache.store("bitSet", CTX, sample_annotation(), 100).unwrap();
        assert_eq!((stored.first_seen, stored.last_seen, stored.count), (100, 100, 1));
        let hit = cache.lookup("bitSet", CTX, 150).unwrap();
        assert_eq!(hit.count, 2);
        assert_eq!(hit.first_seen, 100);
        assert_eq!(hit.last_seen, 150);
        assert_eq!(hit.annotation, sample_annotation());
        let hit2 = cache.lookup("bitSet", CTX, 220).unwrap();
        assert_eq!(hit2.count, 3);
        assert_eq!(hit2.last_seen, 220);
    }

    #[test]
    fn key_includes_context() {
        let cache = Cache::in_memory("m1");
        cache.store("bitSet", CTX, sample_annotation(), 1).unwrap();
        assert!(cache
            .lookup("bitSet", IdentifierContext::Function, 2)
            .is_none());
    }

    #[test]
    fn duplicate_store_is_a_contract_violation() {
        let cache = Cache::in_memory("m1");
        cache.store("bitSet", CTX, sample_annotation(), 1).unwrap();
        assert!(matches!(
            cache.store("bitSet", CTX, sample_annotation(), 2),
            Err(Error::DuplicateCacheEntry(_))
        ));
    }

    #[test]
    fn persistence_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        {
            let cache = Cache::open(&path, "m1").unwrap();
            cache.store("bitSet", CTX, sample_annotation(), 42).unwrap();
            cache.lookup("bitSet", CTX, 50);
            cache.flush().unwrap();
        }
        let reloaded = Cache::open(&path, "m1").unwrap();
        assert_eq!(reloaded.len(), 1);
        let entry = reloaded.lookup("bitSet", CTX, 60).unwrap();
        assert_eq!(entry.first_seen, 42);
        assert_eq!(entry.count, 3);
        assert_eq!(entry.annotation, sample_annotation());
    }

    #[test]
    fn model_version_mismatch_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        {
            let cache = Cache::open(&path, "m1").unwrap();
            cache.store("bitSet", CTX, sample_annotation(), 42).unwrap();
            cache.flush().unwrap();
        }
        let other = Cache::open(&path, "m2").unwrap();
        assert!(other.is_empty());
    }

    #[test]
    fn corrupt_file_reports_cache_unavailable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        std::fs::write(&path, "{ not json").unwrap();
        assert!(matches!(
            Cache::open(&path, "m1"),
            Err(Error::CacheUnavailable(_))
        ));
    }

    #[test]
    fn concurrent_hits_never_lose_updates() {
        let cache = std::sync::Arc::new(Cache::in_memory("m1"));
        cache.store("bitSet", CTX, sample_annotation(), 1).unwrap();
        let mut handles = Vec::new();
        for t in 0..8 {
            let cache = cache.clone();
            handles.push(std::thread::spawn(move || {
                for i in 0..50 {
                    cache.lookup("bitSet", CTX, 2 + t * 50 + i);
                }
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        let entry = cache.lookup("bitSet", CTX, 9999).unwrap();
        assert_eq!(entry.count, 1 + 8 * 50 + 1);
    }

    #[test]
    fn flush_without_path_or_changes_is_a_no_op() {
        let cache = Cache::in_memory("m1");
        cache.flush().unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let cache = Cache::open(&path, "m1").unwrap();
        cache.flush().unwrap();
        assert!(!path.exists());
    }
}
