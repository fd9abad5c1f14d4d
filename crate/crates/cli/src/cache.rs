//! One JSON file per fingerprint.

use std::path::PathBuf;

use crate::job::{ResultRecord, VERSION};

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(&self, fingerprint: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{fingerprint}.json")))
    }

    /// Unreadable or stale files count as misses.
    pub fn load(&self, fingerprint: &str) -> Option<ResultRecord> {
        let text = std::fs::read_to_string(self.path(fingerprint)?).ok()?;
        let rec: ResultRecord = serde_json::from_str(&text).ok()?;
        (rec.fingerprint == fingerprint && rec.version == VERSION).then_some(rec)
    }

    /// Best effort: a read-only cache dir only costs recomputation.
    pub fn store(&self, rec: &ResultRecord) {
        let (Some(dir), Some(path)) = (&self.dir, self.path(&rec.fingerprint)) else {
            return;
        };
        let Ok(text) = serde_json::to_string(rec) else { return };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        // Write then rename, so concurrent scans never see half a record.
        let tmp = dir.join(format!(".{}.{}.tmp", rec.fingerprint, std::process::id()));
        if std::fs::write(&tmp, text).is_ok() && std::fs::rename(&tmp, &path).is_err() {
            let _ = std::fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().join("c")));
        let rec = ResultRecord {
            fingerprint: "ab".into(),
            version: VERSION.into(),
            subcommand: "h0n".into(),
            payload: json!({"torsion": [2, 2], "free_rank": 0, "value": [0.1, -1e-300]}),
            timings_ms: [("total".to_string(), 1.5)].into_iter().collect(),
            verified: vec![],
            cached: false,
        };
        assert!(cache.load("ab").is_none());
        cache.store(&rec);
        let back = cache.load("ab").unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.payload.to_string(), rec.payload.to_string());
        assert!(cache.load("cd").is_none());
        assert!(Cache::default().load("ab").is_none());
    }
}
