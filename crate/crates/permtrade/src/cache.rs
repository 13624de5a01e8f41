//! Memoised exact counts, keyed by poset and method.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use permtrade_core::poset::{count_ideals, count_linear_extensions, ExtensionMethod, IdealMethod, Poset};
use permtrade_core::{BigCount, Budget, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Method {
    Ideals(IdealMethod),
    Extensions(ExtensionMethod),
}

/// Results are stored per `(poset hash, method)` and the poset itself is
/// kept to rule out hash collisions.
#[derive(Default)]
pub struct CountCache {
    entries: Mutex<HashMap<(u64, Method), Vec<(Poset, BigCount)>>>,
}

fn poset_hash(p: &Poset) -> u64 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    h.finish()
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get_or(&self, p: &Poset, m: Method, compute: impl FnOnce() -> Result<BigCount>) -> Result<BigCount> {
        let key = (poset_hash(p), m);
        if let Some(hit) = self
            .entries
            .lock()
            .unwrap()
            .get(&key)
            .and_then(|v| v.iter().find(|(q, _)| q == p))
        {
            return Ok(hit.1.clone());
        }
        let value = compute()?;
        self.entries
            .lock()
            .unwrap()
            .entry(key)
            .or_default()
            .push((p.clone(), value.clone()));
        Ok(value)
    }

    pub fn ideals(&self, p: &Poset, method: IdealMethod, budget: Budget) -> Result<BigCount> {
        self.get_or(p, Method::Ideals(method), || count_ideals(p, method, budget))
    }

    pub fn extensions(&self, p: &Poset, method: ExtensionMethod, budget: Budget) -> Result<BigCount> {
        self.get_or(p, Method::Extensions(method), || {
            count_linear_extensions(p, method, budget)
        })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
