//! On-disk Weyl-character cache and a thread-safe memo layered on top of it.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, RwLock};

use frobenius_core::{CartanType, Character, CharacterMemo, Weight};

use crate::json::{character_from_json, character_to_json};

/// One JSON file per `(type, λ)`, e.g. `G2_1_1.json`.
///
/// Never fails hard: unreadable or corrupt entries count as misses, and the
/// first failed write disables the cache with a warning.
#[derive(Debug)]
pub struct DiskCache {
    dir: Option<PathBuf>,
    disabled: AtomicBool,
}

impl DiskCache {
    pub fn disabled() -> Self {
        DiskCache { dir: None, disabled: AtomicBool::new(true) }
    }

    pub fn open(dir: impl Into<PathBuf>) -> Self {
        let dir = dir.into();
        if let Err(e) = fs::create_dir_all(&dir) {
            eprintln!("warning: cache directory {} is unusable ({e}); caching disabled", dir.display());
            return Self::disabled();
        }
        DiskCache { dir: Some(dir), disabled: AtomicBool::new(false) }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some() && !self.disabled.load(Ordering::Relaxed)
    }

    pub fn entry_path(&self, ty: CartanType, lambda: &Weight) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut name = ty.to_string();
        for c in lambda.coords() {
            name.push('_');
            name.push_str(&c.to_string());
        }
        name.push_str(".json");
        Some(dir.join(name))
    }

    pub fn get(&self, ty: CartanType, lambda: &Weight) -> Option<Character> {
        if !self.is_enabled() {
            return None;
        }
        let text = fs::read_to_string(self.entry_path(ty, lambda)?).ok()?;
        let c = character_from_json(&text).ok()?;
        // a well-formed file for the wrong key is as good as corrupt
        (c.cartan_type() == ty && c.get(lambda).is_some_and(|m| *m == 1.into())).then_some(c)
    }

    pub fn put(&self, ty: CartanType, lambda: &Weight, c: &Character) {
        if !self.is_enabled() {
            return;
        }
        let Some(path) = self.entry_path(ty, lambda) else { return };
        // write-then-rename so concurrent readers never see a torn file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let result = fs::write(&tmp, character_to_json(c)).and_then(|()| fs::rename(&tmp, &path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            if !self.disabled.swap(true, Ordering::Relaxed) {
                eprintln!("warning: cannot write cache entry {} ({e}); caching disabled", path.display());
            }
        }
    }
}

/// Write-once memo shared across threads, backed by a [`DiskCache`].
#[derive(Debug)]
pub struct SharedMemo {
    ty: CartanType,
    map: RwLock<HashMap<Weight, Arc<Character>>>,
    disk: DiskCache,
}

impl SharedMemo {
    pub fn new(ty: CartanType, disk: DiskCache) -> Self {
        SharedMemo { ty, map: RwLock::new(HashMap::new()), disk }
    }

    pub fn in_memory(ty: CartanType) -> Self {
        Self::new(ty, DiskCache::disabled())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl CharacterMemo for SharedMemo {
    fn lookup(&self, lambda: &Weight) -> Option<Arc<Character>> {
        if let Some(c) = self.map.read().unwrap().get(lambda) {
            return Some(c.clone());
        }
        let c = Arc::new(self.disk.get(self.ty, lambda)?);
        Some(self.map.write().unwrap().entry(*lambda).or_insert(c).clone())
    }

    fn store(&self, lambda: Weight, character: Arc<Character>) -> Arc<Character> {
        let mut map = self.map.write().unwrap();
        if let Some(existing) = map.get(&lambda) {
            return existing.clone();
        }
        map.insert(lambda, character.clone());
        drop(map);
        self.disk.put(self.ty, &lambda, &character);
        character
    }
}
