//! JSON documents written next to layouts and join outputs.
//!
//! Run reports hold only values determined by the inputs and flags, so two
//! identical runs write identical bytes. Wall-clock measurements go to a
//! separate `timing.json`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use tilecraft_core::{PartitionLayout, QualityReport};

use crate::error::{io_err, Result};

/// Quality figures of a layout plus its assignment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quality {
    pub n: usize,
    pub k: usize,
    pub payloads: Vec<u64>,
    pub build_counts: Vec<usize>,
    pub payload_stddev: f64,
    pub boundary_ratio_lambda: f64,
    pub max_payload: u64,
    pub min_payload: u64,
    pub mean_payload: f64,
}

impl Quality {
    pub fn new(n: usize, q: QualityReport) -> Self {
        Self {
            n,
            k: q.k,
            payloads: q.payloads,
            build_counts: q.build_counts,
            payload_stddev: q.payload_stddev,
            boundary_ratio_lambda: q.boundary_ratio_lambda,
            max_payload: q.max_payload,
            min_payload: q.min_payload,
            mean_payload: q.mean_payload,
        }
    }
}

/// `report.json`: partition quality plus the run parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub payload: usize,
    #[serde(flatten)]
    pub quality: Quality,
    /// set for sampled runs
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling_gamma: Option<f64>,
    /// payload the partitioner saw on the sample
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling_payload: Option<usize>,
    /// set for parallel runs
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub buckets: Option<usize>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(layout: &PartitionLayout, payload: usize, quality: Quality) -> Self {
        Self {
            algorithm: layout.algorithm.tag().to_string(),
            payload,
            quality,
            sampling_gamma: layout.sampling_gamma,
            sampling_payload: layout.sampling_gamma.map(|_| layout.payload),
            buckets: None,
            warnings: layout.warnings.clone(),
        }
    }
}

/// `timing.json`, in milliseconds. `partition_ms` covers the partitioner call
/// only, no file IO.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub load_ms: f64,
    pub partition_ms: f64,
    pub assignment_ms: f64,
}

/// `summary.json` of a join run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JoinSummary {
    pub algorithm: String,
    pub payload: usize,
    pub k: usize,
    pub r_count: usize,
    pub s_count: usize,
    pub pair_count: usize,
    pub dedup_removed: u64,
    pub per_tile_pair_counts: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_match: Option<bool>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(io_err(path))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(io_err(path))?;
    Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
}

/// Milliseconds since `start`.
pub fn elapsed_ms(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
