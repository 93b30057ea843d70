//! Per-process memo of groups, class data, tables and classified tori.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::cache::TableCache;
use crate::chartab::{character_table, CharTable};
use crate::error::Result;
use crate::matgroup::{ConjugacyData, GroupSpec, MatrixGroup, ReductionHom};
use crate::ring::RingSpec;
use crate::torus::{CoxeterTorus, TorusCharClass};

type Slot<V> = Arc<Mutex<Option<Arc<V>>>>;

struct Memo<K, V> {
    slots: Mutex<HashMap<K, Slot<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    fn new() -> Self {
        Memo { slots: Mutex::new(HashMap::new()) }
    }

    fn get_or_try(&self, key: &K, build: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        let slot = self.slots.lock().expect("memo lock").entry(key.clone()).or_default().clone();
        let mut guard = slot.lock().expect("slot lock");
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let v = Arc::new(build()?);
        *guard = Some(v.clone());
        Ok(v)
    }
}

pub struct GroupData {
    pub group: MatrixGroup,
    pub classes: ConjugacyData,
}

pub struct TorusData {
    pub torus: CoxeterTorus,
    pub classes: Vec<TorusCharClass>,
}

/// Shared, lazily built objects. Safe to use from several threads.
pub struct Workbench {
    cache: Option<TableCache>,
    groups: Memo<GroupSpec, GroupData>,
    tables: Memo<GroupSpec, CharTable>,
    homs: Memo<(GroupSpec, u32), ReductionHom>,
    tori: Memo<RingSpec, TorusData>,
}

impl Default for Workbench {
    fn default() -> Self {
        Self::new(None)
    }
}

impl Workbench {
    pub fn new(cache: Option<TableCache>) -> Self {
        Workbench { cache, groups: Memo::new(), tables: Memo::new(), homs: Memo::new(), tori: Memo::new() }
    }

    pub fn cache(&self) -> Option<&TableCache> {
        self.cache.as_ref()
    }

    pub fn group(&self, spec: GroupSpec) -> Result<Arc<GroupData>> {
        self.groups.get_or_try(&spec, || {
            let group = MatrixGroup::new(spec)?;
            let classes = group.conjugacy_classes();
            Ok(GroupData { group, classes })
        })
    }

    pub fn table(&self, spec: GroupSpec) -> Result<Arc<CharTable>> {
        let data = self.group(spec)?;
        self.tables.get_or_try(&spec, || {
            if let Some(cache) = &self.cache {
                if let Some(t) = cache.load(spec, &data.classes)? {
                    return Ok(t);
                }
            }
            let t = character_table(&data.group, &data.classes)?;
            if let Some(cache) = &self.cache {
                cache.store(spec, &t, &data.classes)?;
            }
            Ok(t)
        })
    }

    /// Reduction `G_r -> G_{r'}`.
    pub fn reduction(&self, spec: GroupSpec, r_to: u32) -> Result<Arc<ReductionHom>> {
        self.homs.get_or_try(&(spec, r_to), || {
            let source = self.group(spec)?;
            let target = self.group(spec.at_level(r_to))?;
            source.group.reduction_to(&target.group)
        })
    }

    pub fn torus(&self, spec: RingSpec) -> Result<Arc<TorusData>> {
        self.tori.get_or_try(&spec, || {
            let torus = CoxeterTorus::new(spec)?;
            let classes = torus.classify_all()?;
            Ok(TorusData { torus, classes })
        })
    }
}
