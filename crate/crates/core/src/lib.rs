//! Spatial data partitioning for tile-parallel query processing.
//!
//! The crate implements six partitioners (fixed grid, binary split, strip,
//! boundary-optimized strip, Hilbert curve and sort-tile-recursive), boundary
//! object replication, partition-quality metrics, sampled partitioning, the
//! anchor-based coarse bucketing used by the parallel pipeline, and the
//! tile-level spatial join with its brute-force oracle.
//!
//! It is `no_std` and only needs `alloc`; threads, files and the command line
//! live in the `tilecraft` crate.
#![no_std]

extern crate alloc;

pub mod anchors;
pub mod error;
pub mod geom;
pub mod hilbert;
pub mod join;
pub mod masj;
pub mod metrics;
pub mod partition;
pub mod sampling;
pub mod synth;

mod fenwick;
mod index;

pub use error::{Error, Result};
pub use geom::{
    centroid, rect_contains, rect_intersects, spatial_universe, Axis, Dataset, Point, Rect,
    SpatialObject,
};
pub use hilbert::{hilbert_index, DEFAULT_HILBERT_ORDER};
pub use masj::{masj_assign, replica_fraction, Assignment, AssignmentEntry};
pub use metrics::{
    boundary_ratio, estimated_join_cost, payload_stddev, quality_report, CostModel, QualityReport,
};
pub use partition::{
    partition, partition_bos, partition_bsp, partition_fg, partition_hc, partition_slc,
    partition_str, Algorithm, HomeRule, Partition, PartitionLayout,
};
