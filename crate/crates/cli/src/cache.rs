//! Checksummed on-disk cache of the exact tables, log-factorial sums and constants.

use std::fs;
use std::path::{Path, PathBuf};

use gammalab_core::exact::{
    lcm_table_snapshot, preload_lcm_table, preload_stirling_rows, stirling_rows_snapshot, Nat,
};
use gammalab_core::mp::{
    constant_snapshot, log_factorial_precisions, log_factorial_snapshot, preload_constant, preload_log_factorials,
    Ball, BigFloat, Constant, ErrBound,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheKind {
    #[serde(rename = "d_n")]
    Lcm,
    StirlingRow,
    LogFactorial,
    Constant,
}

impl CacheKind {
    fn dir_name(self) -> &'static str {
        match self {
            CacheKind::Lcm => "d_n",
            CacheKind::StirlingRow => "stirling_row",
            CacheKind::LogFactorial => "log_factorial",
            CacheKind::Constant => "constant",
        }
    }

    const ALL: [CacheKind; 4] = [CacheKind::Lcm, CacheKind::StirlingRow, CacheKind::LogFactorial, CacheKind::Constant];
}

/// One cache file: integer strings (or encoded balls) plus a SHA-256 over kind, key and values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub kind: CacheKind,
    pub key: String,
    pub values: Vec<String>,
    pub checksum: String,
}

impl CacheEntry {
    pub fn new(kind: CacheKind, key: String, values: Vec<String>) -> Self {
        let checksum = checksum(kind, &key, &values);
        CacheEntry { kind, key, values, checksum }
    }

    pub fn is_intact(&self) -> bool {
        self.checksum == checksum(self.kind, &self.key, &self.values)
    }
}

fn checksum(kind: CacheKind, key: &str, values: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(kind.dir_name().as_bytes());
    h.update([0]);
    h.update(key.as_bytes());
    for v in values {
        h.update([0]);
        h.update(v.as_bytes());
    }
    hex::encode(h.finalize())
}

/// `mantissa exponent radius_mantissa radius_exponent`, exact.
pub fn encode_ball(b: &Ball) -> String {
    let r = b.rad();
    format!("{} {} {} {}", b.mid().mantissa(), b.mid().exponent(), r.mantissa(), r.exponent())
}

pub fn decode_ball(s: &str) -> Option<Ball> {
    let mut it = s.split(' ');
    let mant: BigInt = it.next()?.parse().ok()?;
    let exp: i64 = it.next()?.parse().ok()?;
    let rm: u64 = it.next()?.parse().ok()?;
    let re: i64 = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(Ball::new(BigFloat::from_parts(mant, exp), ErrBound::from_parts(rm, re)))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub loaded: u32,
    pub rejected: u32,
    pub written: u32,
}

pub struct DiskCache {
    dir: PathBuf,
    pub stats: CacheStats,
}

impl DiskCache {
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        for kind in CacheKind::ALL {
            fs::create_dir_all(dir.join(kind.dir_name()))?;
        }
        Ok(DiskCache { dir: dir.to_path_buf(), stats: CacheStats::default() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: CacheKind, key: &str) -> PathBuf {
        self.dir.join(kind.dir_name()).join(format!("{key}.json"))
    }

    /// Reads every entry and seeds the in-process tables. Entries that fail the
    /// checksum or the content checks are deleted and counted as rejected.
    pub fn load_all(&mut self) -> Result<(), CliError> {
        for kind in CacheKind::ALL {
            let mut files: Vec<PathBuf> = fs::read_dir(self.dir.join(kind.dir_name()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            for path in files {
                let accepted = fs::read(&path)
                    .ok()
                    .and_then(|bytes| serde_json::from_slice::<CacheEntry>(&bytes).ok())
                    .filter(|e| e.kind == kind && e.is_intact())
                    .is_some_and(|e| install(&e));
                if accepted {
                    self.stats.loaded += 1;
                } else {
                    self.stats.rejected += 1;
                    let _ = fs::remove_file(&path);
                }
            }
        }
        Ok(())
    }

    /// Writes the current in-process tables.
    pub fn store_all(&mut self) -> Result<(), CliError> {
        for entry in snapshot_entries() {
            let path = self.path(entry.kind, &entry.key);
            let bytes = serde_json::to_vec(&entry)?;
            if fs::read(&path).ok().as_deref() == Some(bytes.as_slice()) {
                continue;
            }
            let tmp = path.with_extension("json.tmp");
            fs::write(&tmp, &bytes)?;
            fs::rename(&tmp, &path)?;
            self.stats.written += 1;
        }
        Ok(())
    }
}

fn parse_nats(s: &str) -> Option<Vec<Nat>> {
    s.split(' ').map(|t| t.parse().ok()).collect()
}

fn install(e: &CacheEntry) -> bool {
    match e.kind {
        CacheKind::Lcm => match e.values.iter().map(|v| v.parse::<Nat>().ok()).collect::<Option<Vec<_>>>() {
            Some(values) => preload_lcm_table(values),
            None => false,
        },
        CacheKind::StirlingRow => match e.values.iter().map(|v| parse_nats(v)).collect::<Option<Vec<_>>>() {
            Some(rows) => preload_stirling_rows(rows),
            None => false,
        },
        CacheKind::LogFactorial => {
            let Some(p) = e.key.strip_prefix('p').and_then(|k| k.parse::<u32>().ok()) else { return false };
            match e.values.iter().map(|v| decode_ball(v)).collect::<Option<Vec<_>>>() {
                Some(values) => preload_log_factorials(p, values),
                None => false,
            }
        }
        CacheKind::Constant => {
            let Some((name, p)) = e.key.rsplit_once("-p") else { return false };
            let (Some(c), Ok(p)) = (Constant::from_name(name), p.parse::<u32>()) else { return false };
            match e.values.as_slice() {
                [v] => match decode_ball(v) {
                    Some(b) if !b.rad().is_zero() && b.rad().log2() <= 1.0 - p as f64 + 2.0 => {
                        preload_constant(c, p, b);
                        true
                    }
                    _ => false,
                },
                _ => false,
            }
        }
    }
}

fn snapshot_entries() -> Vec<CacheEntry> {
    let mut out = Vec::new();
    let d = lcm_table_snapshot();
    if d.len() > 1 {
        out.push(CacheEntry::new(CacheKind::Lcm, "table".into(), d.iter().map(|v| v.to_string()).collect()));
    }
    let rows = stirling_rows_snapshot();
    if rows.len() > 1 {
        let values = rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        out.push(CacheEntry::new(CacheKind::StirlingRow, "rows".into(), values));
    }
    for p in log_factorial_precisions() {
        let values = log_factorial_snapshot(p);
        if values.len() > 2 {
            out.push(CacheEntry::new(
                CacheKind::LogFactorial,
                format!("p{p}"),
                values.iter().map(encode_ball).collect(),
            ));
        }
    }
    for (c, p, b) in constant_snapshot() {
        out.push(CacheEntry::new(CacheKind::Constant, format!("{}-p{p}", c.name()), vec![encode_ball(&b)]));
    }
    out
}
