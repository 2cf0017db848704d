//! On-disk cache of Macdonald data, one JSON record per `(kind, partition)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qvir::macdonald::MacStore;
use qvir::symfunc::SymFuncJson;
use qvir::{Partition, SymFunc};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const KINDS: [&str; 4] = ["P", "Q", "J", "H"];

#[derive(Serialize, Deserialize)]
struct Record {
    schema: u32,
    kind: String,
    partition: Partition,
    value: SymFuncJson,
}

pub struct DiskStore {
    root: PathBuf,
}

impl DiskStore {
    pub fn open(root: &Path) -> Result<DiskStore> {
        fs::create_dir_all(root).with_context(|| format!("creating cache dir {}", root.display()))?;
        Ok(DiskStore { root: root.to_path_buf() })
    }

    fn path(&self, kind: &str, lam: &Partition) -> PathBuf {
        let name = if lam.is_empty() {
            "empty".to_string()
        } else {
            lam.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("-")
        };
        self.root.join(format!("v{SCHEMA_VERSION}-{kind}-{name}.json"))
    }

    pub fn get(&self, kind: &str, lam: &Partition) -> Option<SymFunc> {
        let path = self.path(kind, lam);
        let text = fs::read_to_string(&path).ok()?;
        let parsed = serde_json::from_str::<Record>(&text)
            .map_err(|e| e.to_string())
            .and_then(|r| {
                if r.schema != SCHEMA_VERSION || r.kind != kind || &r.partition != lam {
                    return Err("record does not match its key".to_string());
                }
                SymFunc::from_json(&r.value).map_err(|e| e.to_string())
            });
        match parsed {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("warning: ignoring corrupt cache record {}: {e}", path.display());
                None
            }
        }
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn put(&self, kind: &str, lam: &Partition, value: &SymFunc) -> Result<()> {
        let rec = Record {
            schema: SCHEMA_VERSION,
            kind: kind.to_string(),
            partition: lam.clone(),
            value: value.to_json(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
        serde_json::to_writer(&mut tmp, &rec)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(kind, lam))?;
        Ok(())
    }

    /// Removes every cache record; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let mut n = 0;
        for entry in fs::read_dir(&self.root)? {
            let entry = entry?;
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if name.starts_with('v') && name.ends_with(".json") || name.starts_with(".tmp") {
                fs::remove_file(entry.path())?;
                n += 1;
            }
        }
        Ok(n)
    }
}

impl MacStore for DiskStore {
    fn load(&self, kind: &str, lam: &Partition) -> Option<SymFunc> {
        self.get(kind, lam)
    }

    fn save(&self, kind: &str, lam: &Partition, value: &SymFunc) {
        if let Err(e) = self.put(kind, lam, value) {
            eprintln!("warning: could not write cache record: {e:#}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let st = DiskStore::open(dir.path()).unwrap();
        let lam: Partition = "2,1".parse().unwrap();
        let v = SymFunc::p(lam.clone()).scale(&qvir::Coeff::q());
        st.put("P", &lam, &v).unwrap();
        assert_eq!(st.get("P", &lam), Some(v));
        fs::write(st.path("P", &lam), "{ not json").unwrap();
        assert_eq!(st.get("P", &lam), None);
        assert_eq!(st.clear().unwrap(), 1);
        assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
    }
}
