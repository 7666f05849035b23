//! JSON-lines result cache. First line is a version header; any mismatch or
//! damage discards the whole file, since rule-table edits change results.

use crate::record::ResultRecord;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct Header {
    engine_version: String,
}

#[derive(Default)]
pub struct Cache {
    map: BTreeMap<(i64, i64, i64), ResultRecord>,
}

impl Cache {
    /// Missing, stale or corrupt files load as an empty cache.
    pub fn load(path: &Path) -> Cache {
        let mut cache = Cache::default();
        let Ok(text) = std::fs::read_to_string(path) else {
            return cache;
        };
        let mut lines = text.lines();
        let current = serde_json::to_string(&Header {
            engine_version: cohsys::engine_version(),
        })
        .unwrap();
        if lines.next() != Some(current.as_str()) {
            return cache;
        }
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let Ok(rec) = serde_json::from_str::<ResultRecord>(line) else {
                return Cache::default();
            };
            cache.map.insert((rec.n, rec.d, rec.k), rec);
        }
        cache
    }

    pub fn get(&self, n: i64, d: i64, k: i64) -> Option<&ResultRecord> {
        self.map.get(&(n, d, k))
    }

    pub fn insert(&mut self, rec: ResultRecord) {
        self.map.insert((rec.n, rec.d, rec.k), rec);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        let mut out = serde_json::to_string(&Header {
            engine_version: cohsys::engine_version(),
        })?;
        for rec in self.map.values() {
            out.push('\n');
            out.push_str(&rec.to_json());
        }
        out.push('\n');
        std::fs::write(path, out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cohsys::types::SystemType;
    use cohsys::Classifier;

    #[test]
    fn survives_round_trip_and_rejects_other_versions() {
        let dir = std::env::temp_dir().join("cohsys-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");

        let cl = Classifier::new();
        let mut cache = Cache::default();
        cache.insert(ResultRecord::classify(&cl, &SystemType::new(6, 7, 4).unwrap(), false));
        cache.save(&path).unwrap();

        let loaded = Cache::load(&path);
        assert_eq!(loaded.len(), 1);
        assert_eq!(loaded.get(6, 7, 4), cache.get(6, 7, 4));

        // Foreign version header: wholesale invalidation.
        let text = std::fs::read_to_string(&path).unwrap();
        let stale = text.replacen(&cohsys::engine_version(), "0.0.0+0", 1);
        std::fs::write(&path, stale).unwrap();
        assert!(Cache::load(&path).is_empty());
        std::fs::remove_file(&path).unwrap();
    }
}
