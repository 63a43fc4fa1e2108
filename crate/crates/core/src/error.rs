use alloc::string::String;

/// Errors raised by the partitioning core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("invalid rectangle ({min_x}, {min_y}, {max_x}, {max_y})")]
    InvalidRect { min_x: f64, min_y: f64, max_x: f64, max_y: f64 },
    #[error("duplicate object id {0}")]
    DuplicateId(u64),
    #[error("payload must be at least 1")]
    InvalidPayload,
    #[error("hilbert order must be in 1..=31, got {0}")]
    InvalidOrder(u32),
    #[error("point outside universe")]
    PointOutsideUniverse,
    #[error("coverage violation: object {0} intersects no partition")]
    CoverageViolation(u64),
    #[error("missing assignments: {total} entries for {n} objects")]
    MissingAssignments { total: u64, n: u64 },
    #[error("sample too small")]
    SampleTooSmall,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
