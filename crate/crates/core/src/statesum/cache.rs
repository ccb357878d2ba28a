use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;

use crate::compiler::{compile_sixj, Dcr, SixJLabels};
use crate::error::Result;

/// Counters of a [`DcrCache`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub compiles: u64,
    pub entries: usize,
}

/// Compiled 6j-symbols keyed by the canonical representative of their
/// tetrahedral symmetry class. Entries are never removed.
#[derive(Default)]
pub struct DcrCache {
    map: RwLock<HashMap<SixJLabels, Arc<Dcr>>>,
    hits: AtomicU64,
    misses: AtomicU64,
    compiles: AtomicU64,
}

impl DcrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, labels: SixJLabels) -> Result<Arc<Dcr>> {
        let key = labels.canonical();
        if let Some(d) = self.map.read().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(d.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        // compile outside the lock; a concurrent insert of the same key wins
        let dcr = Arc::new(compile_sixj(key)?);
        self.compiles.fetch_add(1, Ordering::Relaxed);
        Ok(self.map.write().entry(key).or_insert(dcr).clone())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            compiles: self.compiles.load(Ordering::Relaxed),
            entries: self.map.read().len(),
        }
    }
}
