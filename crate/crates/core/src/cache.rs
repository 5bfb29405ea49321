//! On-disk cache for Gram–Schmidt output.
//!
//! One JSONL file per computation context, named by a stable digest of the
//! context id. The first line is a versioned header; every further line is
//! one record: the partition, the variable count it was constructed in,
//! and the monomial-basis coefficients as canonical strings. Corrupt or
//! mismatched lines are skipped and the polynomial recomputed — cached
//! data is never trusted blindly.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::partition::Partition;
use crate::ratfunc::RatFunc;
use crate::symseries::SymSeries;
use crate::vars::VarSet;

pub const CACHE_SCHEMA: &str = "macsel-cache/1";

#[derive(Serialize, Deserialize)]
struct Header {
    schema: String,
    context: String,
}

#[derive(Serialize, Deserialize)]
struct Record {
    lambda: Partition,
    n: usize,
    coeffs: Vec<(Partition, String)>,
}

pub struct PolyCache {
    dir: PathBuf,
    context: String,
    field: VarSet,
    path: PathBuf,
    state: Mutex<CacheState>,
}

struct CacheState {
    records: BTreeMap<Partition, Vec<(Partition, String)>>,
    appender: Option<File>,
}

/// Digest used in the cache file name; stable across runs.
fn digest(s: &str) -> String {
    // FNV-1a, 64 bit.
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{:016x}", h)
}

impl PolyCache {
    /// Opens (or creates) the cache file for the given context under `dir`.
    pub fn open(dir: &Path, context: &str, field: &VarSet) -> Result<Self, Error> {
        fs::create_dir_all(dir).map_err(|e| Error::CacheIo(e.to_string()))?;
        let path = dir.join(format!("poly-{}.jsonl", digest(context)));
        let mut records = BTreeMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::CacheIo(e.to_string()))?;
            let mut lines = BufReader::new(file).lines();
            let header_ok = match lines.next() {
                Some(Ok(first)) => serde_json::from_str::<Header>(&first)
                    .map(|h| h.schema == CACHE_SCHEMA && h.context == context)
                    .unwrap_or(false),
                _ => false,
            };
            if header_ok {
                for line in lines {
                    let line = match line {
                        Ok(l) => l,
                        Err(_) => break,
                    };
                    if let Ok(rec) = serde_json::from_str::<Record>(&line) {
                        // Validate coefficient strings before trusting them.
                        if rec
                            .coeffs
                            .iter()
                            .all(|(_, s)| RatFunc::from_cache_string(field, s).is_ok())
                        {
                            records.insert(rec.lambda, rec.coeffs);
                        }
                    }
                    // Corrupt record: skipped, recomputed on demand.
                }
            } else {
                // Stale or foreign file: start over.
                records.clear();
                fs::remove_file(&path).ok();
            }
        }
        Ok(PolyCache {
            dir: dir.to_path_buf(),
            context: context.to_string(),
            field: field.clone(),
            path,
            state: Mutex::new(CacheState {
                records,
                appender: None,
            }),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.state.lock().unwrap().records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lambdas(&self) -> Vec<Partition> {
        self.state.lock().unwrap().records.keys().cloned().collect()
    }

    pub fn get(&self, lambda: &Partition) -> Option<SymSeries> {
        let state = self.state.lock().unwrap();
        let coeffs = state.records.get(lambda)?;
        let n = lambda.weight().max(1) as usize;
        let mut s = SymSeries::zero(&self.field, n, lambda.weight());
        for (mu, cs) in coeffs {
            match RatFunc::from_cache_string(&self.field, cs) {
                Ok(c) => s.coeffs.insert(mu.clone(), c),
                Err(_) => return None,
            };
        }
        Some(s)
    }

    pub fn put(&self, lambda: &Partition, series: &SymSeries) -> Result<(), Error> {
        let mut state = self.state.lock().unwrap();
        if state.records.contains_key(lambda) {
            return Ok(());
        }
        let coeffs: Vec<(Partition, String)> = series
            .coeffs
            .iter()
            .map(|(mu, c)| (mu.clone(), c.to_cache_string()))
            .collect();
        if state.appender.is_none() {
            let fresh = !self.path.exists();
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| Error::CacheIo(e.to_string()))?;
            if fresh {
                let header = Header {
                    schema: CACHE_SCHEMA.to_string(),
                    context: self.context.clone(),
                };
                writeln!(f, "{}", serde_json::to_string(&header).unwrap())
                    .map_err(|e| Error::CacheIo(e.to_string()))?;
            }
            state.appender = Some(f);
        }
        let rec = Record {
            lambda: lambda.clone(),
            n: series.n,
            coeffs: coeffs.clone(),
        };
        let f = state.appender.as_mut().unwrap();
        writeln!(f, "{}", serde_json::to_string(&rec).unwrap())
            .map_err(|e| Error::CacheIo(e.to_string()))?;
        f.flush().map_err(|e| Error::CacheIo(e.to_string()))?;
        state.records.insert(lambda.clone(), coeffs);
        Ok(())
    }

    /// Removes every cache file in the directory.
    pub fn clear_dir(dir: &Path) -> Result<usize, Error> {
        let mut removed = 0;
        if dir.exists() {
            for entry in fs::read_dir(dir).map_err(|e| Error::CacheIo(e.to_string()))? {
                let entry = entry.map_err(|e| Error::CacheIo(e.to_string()))?;
                let name = entry.file_name();
                let name = name.to_string_lossy();
                if name.starts_with("poly-") && name.ends_with(".jsonl") {
                    fs::remove_file(entry.path()).map_err(|e| Error::CacheIo(e.to_string()))?;
                    removed += 1;
                }
            }
        }
        Ok(removed)
    }

    /// Record count per cache file in the directory.
    pub fn list_dir(dir: &Path) -> Result<Vec<(String, usize)>, Error> {
        let mut out = Vec::new();
        if dir.exists() {
            let mut entries: Vec<_> = fs::read_dir(dir)
                .map_err(|e| Error::CacheIo(e.to_string()))?
                .filter_map(|e| e.ok())
                .collect();
            entries.sort_by_key(|e| e.file_name());
            for entry in entries {
                let name = entry.file_name().to_string_lossy().to_string();
                if name.starts_with("poly-") && name.ends_with(".jsonl") {
                    let f = File::open(entry.path()).map_err(|e| Error::CacheIo(e.to_string()))?;
                    let count = BufReader::new(f).lines().count().saturating_sub(1);
                    out.push((name, count));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    #[test]
    fn cache_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let field = VarSet::qt();
        let cache = PolyCache::open(dir.path(), "test-ctx", &field).unwrap();
        let lam = Partition::of(&[2]);
        let mut s = SymSeries::zero(&field, 2, 2);
        s.coeffs
            .insert(Partition::of(&[2]), RatFunc::one(&field));
        s.coeffs.insert(
            Partition::of(&[1, 1]),
            RatFunc::var(&field, "q").unwrap(),
        );
        cache.put(&lam, &s).unwrap();
        drop(cache);

        let cache2 = PolyCache::open(dir.path(), "test-ctx", &field).unwrap();
        assert_eq!(cache2.len(), 1);
        let got = cache2.get(&lam).unwrap();
        assert_eq!(got.coeffs, s.coeffs);

        // Corrupt the record line: reopened cache must skip it.
        let path = dir
            .path()
            .read_dir()
            .unwrap()
            .next()
            .unwrap()
            .unwrap()
            .path();
        let content = std::fs::read_to_string(&path).unwrap();
        let mut lines: Vec<&str> = content.lines().collect();
        let corrupted = format!("{}GARBAGE", lines[1]);
        lines[1] = &corrupted;
        std::fs::write(&path, lines.join("\n")).unwrap();
        let cache3 = PolyCache::open(dir.path(), "test-ctx", &field).unwrap();
        assert_eq!(cache3.len(), 0);

        // Foreign context: file is dropped entirely.
        let cache4 = PolyCache::open(dir.path(), "other-ctx", &field).unwrap();
        assert_eq!(cache4.len(), 0);
    }
}
