use std::time::Duration;

use invbasis::RunStats;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsReport {
    pub schema: u32,
    pub algorithm: String,
    pub input: String,
    pub c1: u64,
    pub c2: u64,
    pub syz: u64,
    pub hd: u64,
    pub redz: u64,
    pub chen: u64,
    pub basis_size: usize,
    pub max_deg: u32,
    pub time_ms: u64,
    pub mem_bytes: u64,
}

impl StatsReport {
    pub fn new(algorithm: &str, input: &str, stats: &RunStats, chen: usize, elapsed: Duration, mem: usize) -> Self {
        StatsReport {
            schema: SCHEMA_VERSION,
            algorithm: algorithm.to_string(),
            input: input.to_string(),
            c1: stats.c1,
            c2: stats.c2,
            syz: stats.syz,
            hd: stats.hd,
            redz: stats.redz,
            chen: chen as u64,
            basis_size: stats.basis_size,
            max_deg: stats.max_deg,
            time_ms: elapsed.as_millis() as u64,
            mem_bytes: mem as u64,
        }
    }

    /// Zeroes the machine-dependent fields.
    pub fn stabilized(mut self) -> Self {
        self.time_ms = 0;
        self.mem_bytes = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}
