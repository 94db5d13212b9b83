use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Runtime accounting for one stream: storage high-water mark and the work
/// spent on each ingest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsLedger {
    /// Edges accepted into the stream.
    pub total_edges: u64,
    pub skipped_loops: u64,
    /// Most edge records held at once (certificate + buffer + recompute).
    pub peak_stored_edges: usize,
    /// The limit `peak_stored_edges` is checked against.
    pub storage_limit: usize,
    pub recompute_count: u64,
    /// work units per ingest call -> number of calls
    pub work_histogram: BTreeMap<u64, u64>,
    pub max_ingest_work: u64,
    pub total_ingest_work: u64,
    /// Work spent after the last edge: draining and the final group.
    pub finalize_work: u64,
}

impl MetricsLedger {
    pub(crate) fn new(storage_limit: usize) -> Self {
        Self {
            storage_limit,
            ..Self::default()
        }
    }

    pub(crate) fn record_ingest(&mut self, units: u64) {
        *self.work_histogram.entry(units).or_insert(0) += 1;
        self.max_ingest_work = self.max_ingest_work.max(units);
        self.total_ingest_work += units;
    }

    pub(crate) fn observe_storage(&mut self, stored: usize) {
        self.peak_stored_edges = self.peak_stored_edges.max(stored);
    }

    pub fn ingest_calls(&self) -> u64 {
        self.work_histogram.values().sum()
    }

    pub fn mean_ingest_work(&self) -> f64 {
        match self.ingest_calls() {
            0 => 0.0,
            calls => self.total_ingest_work as f64 / calls as f64,
        }
    }
}
