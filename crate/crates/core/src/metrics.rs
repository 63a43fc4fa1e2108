//! Partition-quality statistics and the analytical join-cost model.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::masj::Assignment;
use crate::partition::PartitionLayout;

/// Population standard deviation of partition payloads.
pub fn payload_stddev(payloads: &[u64]) -> Result<f64> {
    if payloads.is_empty() {
        return Err(Error::InvalidConfig("payload list is empty".into()));
    }
    let n = payloads.len() as f64;
    let mean = payloads.iter().map(|&p| p as f64).sum::<f64>() / n;
    let var = payloads.iter().map(|&p| (p as f64 - mean) * (p as f64 - mean)).sum::<f64>() / n;
    Ok(libm::sqrt(var))
}

/// Boundary object ratio: `total_assigned / n - 1`.
pub fn boundary_ratio(total_assigned: u64, n: u64) -> Result<f64> {
    if n == 0 || total_assigned < n {
        return Err(Error::MissingAssignments { total: total_assigned, n });
    }
    Ok(total_assigned as f64 / n as f64 - 1.0)
}

/// Parameters of the join-cost model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostModel {
    /// fraction of replicated boundary objects
    pub alpha: f64,
    /// per-object de-duplication cost
    pub beta: f64,
    /// partition count
    pub k: u64,
}

impl CostModel {
    pub fn new(alpha: f64, beta: f64, k: u64) -> Result<Self> {
        if !(alpha >= 0.0 && beta >= 0.0 && k >= 1 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidConfig(alloc::format!(
                "cost model needs alpha >= 0, beta >= 0, k >= 1 (got {alpha}, {beta}, {k})"
            )));
        }
        Ok(Self { alpha, beta, k })
    }
}

/// `(1 + alpha)^2 * |R| * |S| / k + beta * (|R| + |S|)`.
pub fn estimated_join_cost(n_r: u64, n_s: u64, model: &CostModel) -> f64 {
    let grow = 1.0 + model.alpha;
    grow * grow * n_r as f64 * n_s as f64 / model.k as f64 + model.beta * (n_r + n_s) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub k: usize,
    /// assigned objects per partition, replicas included
    pub payloads: Vec<u64>,
    /// grouped objects per partition at build time, before replication
    pub build_counts: Vec<usize>,
    pub payload_stddev: f64,
    pub boundary_ratio_lambda: f64,
    pub max_payload: u64,
    pub min_payload: u64,
    pub mean_payload: f64,
}

pub fn quality_report(
    layout: &PartitionLayout,
    assignment: &Assignment,
    n: usize,
) -> Result<QualityReport> {
    let k = layout.len();
    let payloads = assignment.partition_counts(k);
    report_from_payloads(payloads, layout.build_counts(), n)
}

/// Builds a report from per-partition assigned counts.
pub fn report_from_payloads(
    payloads: Vec<u64>,
    build_counts: Vec<usize>,
    n: usize,
) -> Result<QualityReport> {
    let total: u64 = payloads.iter().sum();
    let lambda = boundary_ratio(total, n as u64)?;
    let stddev = payload_stddev(&payloads)?;
    Ok(QualityReport {
        k: payloads.len(),
        max_payload: payloads.iter().copied().max().unwrap_or(0),
        min_payload: payloads.iter().copied().min().unwrap_or(0),
        mean_payload: total as f64 / payloads.len() as f64,
        payload_stddev: stddev,
        boundary_ratio_lambda: lambda,
        payloads,
        build_counts,
    })
}
