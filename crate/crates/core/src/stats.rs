use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Counters for one run, mirroring the usual benchmark table columns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    /// Items discarded by the product criterion.
    pub c1: u64,
    /// Items discarded by the chain criterion.
    pub c2: u64,
    /// Items discarded by a recorded syzygy signature.
    pub syz: u64,
    /// Reductions that ended in zero.
    pub redz: u64,
    /// Queue items discarded by Hilbert-driven pruning.
    pub hd: u64,
    pub basis_size: usize,
    pub max_deg: u32,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunStats {
    /// Adds the counters of another run (used when a driver performs
    /// several completions). Basis size and degree are taken from `other`.
    pub fn accumulate(&mut self, other: &RunStats) {
        self.c1 += other.c1;
        self.c2 += other.c2;
        self.syz += other.syz;
        self.redz += other.redz;
        self.hd += other.hd;
        self.basis_size = other.basis_size;
        self.max_deg = other.max_deg;
        self.elapsed += other.elapsed;
    }
}
