use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::cache::CacheStats;

/// Record of one invocation, written as JSON beside the data file.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command_line: Vec<String>,
    pub command: String,
    pub policy: PolicySummary,
    pub seed: u64,
    pub n_range: Option<String>,
    pub jobs: usize,
    pub format: &'static str,
    pub output: Option<String>,
    pub suites: Vec<SuiteCount>,
    pub cache: Option<CacheSummary>,
    pub timings: Timings,
    pub exit_code: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolicySummary {
    pub bits: Option<u32>,
    pub frac_bits: u32,
    pub guard_bits: u32,
    pub max_bits: u32,
    pub auto_escalate: bool,
    pub tail_eps: Option<String>,
    pub tail_method: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteCount {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

impl SuiteCount {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteCount { name: name.into(), passed: 0, failed: 0 }
    }

    pub fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CacheSummary {
    pub dir: String,
    #[serde(flatten)]
    pub stats: CacheStats,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
    pub stages: Vec<StageTiming>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageTiming {
    pub label: String,
    pub seconds: f64,
}

/// `out.csv` → `out.csv.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}
