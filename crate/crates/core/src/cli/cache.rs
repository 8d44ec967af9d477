//! Append-only JSON-lines cache of length results.
//!
//! Each line is `{"key": ..., "result": ...}`. The key is built from the
//! normalized coefficients, the field and the search height. Later lines win
//! on duplicate keys.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, FieldDescriptor, Rational};

pub fn cache_key(f: &BinaryForm, field: FieldDescriptor, height: u64) -> String {
    let coeffs: Vec<String> = f.normalized().iter().map(format_rational).collect();
    format!("{}|{}|{}", coeffs.join(","), field, height)
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: BTreeMap<String, Value>,
}

impl ResultCache {
    /// Load the file at `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = BTreeMap::new();
        if path.exists() {
            for (n, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let v: Value = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("cache line {}: {e}", n + 1)))?;
                let key = v["key"]
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("cache line {} has no key", n + 1)))?;
                entries.insert(key.to_string(), v["result"].clone());
            }
        }
        Ok(Self { path, entries })
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    /// Record a result and append it to the file.
    pub fn insert(&mut self, key: String, result: Value) -> Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(file, "{}", json!({ "key": key, "result": result }))?;
        self.entries.insert(key, result);
        Ok(())
    }

    /// A random sample of about a tenth of the keys (at least one when the
    /// cache is nonempty).
    pub fn audit_sample<R: Rng>(&self, rng: &mut R) -> Vec<String> {
        let keys: Vec<&String> = self.entries.keys().collect();
        let n = keys.len().div_ceil(10);
        keys.choose_multiple(rng, n).map(|k| (*k).clone()).collect()
    }
}

/// Split a key back into its normalized coefficients, field and height.
pub fn parse_key(key: &str) -> Result<(BinaryForm, FieldDescriptor, u64)> {
    let bad = || Error::Parse(format!("malformed cache key '{key}'"));
    let mut parts = key.rsplitn(3, '|');
    let height: u64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let field: FieldDescriptor = parts.next().ok_or_else(bad)?.parse()?;
    let coeffs = parts.next().ok_or_else(bad)?;
    let a: Vec<Rational> = coeffs
        .split(',')
        .map(crate::exactnum::parse_rational)
        .collect::<Result<_>>()?;
    Ok((BinaryForm::from_normalized(a)?, field, height))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn key_parses_back() {
        let f = BinaryForm::from_ints(&[3, 0, -20, 0, 10, 0]);
        let k = FieldDescriptor::quadratic(-2).unwrap();
        assert_eq!(cache_key(&f, k, 64), "3/1,0/1,-2/1,0/1,2/1,0/1|Q(sqrt -2)|64");
        let (h, field, height) = parse_key(&cache_key(&f, k, 64)).unwrap();
        assert_eq!(h, f);
        assert_eq!((field, height), (k, 64));
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let mut c = ResultCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.insert("a".into(), json!({"x": 1})).unwrap();
        c.insert("b".into(), json!(2)).unwrap();
        c.insert("a".into(), json!(3)).unwrap();
        let c = ResultCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get("a"), Some(&json!(3)));
        let sample = c.audit_sample(&mut StdRng::seed_from_u64(0));
        assert_eq!(sample.len(), 1);
    }
}
