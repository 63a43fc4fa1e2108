//! The six partitioners behind one interface: dataset + payload bound -> layout.
//!
//! Every partitioner attributes each object to exactly one partition at build
//! time using its centroid, so the build counts always sum to the dataset
//! size. Replicating boundary objects into every partition they touch is left
//! to [`crate::masj`].

mod bsp;
mod fg;
mod hc;
mod str_pack;
mod strip;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{Axis, Dataset, Point, Rect};

pub use bsp::partition_bsp;
pub use fg::partition_fg;
pub use hc::partition_hc;
pub use str_pack::partition_str;
pub use strip::{crossing_count, partition_bos, partition_slc};

/// Partitioning algorithm. `Slc` carries the axis strips are cut along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Fg,
    Bsp,
    Slc(Axis),
    Bos,
    Hc,
    Str,
}

impl Algorithm {
    /// All six algorithms, SLC cutting along x.
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Fg,
        Algorithm::Bsp,
        Algorithm::Slc(Axis::X),
        Algorithm::Bos,
        Algorithm::Hc,
        Algorithm::Str,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Fg => "FG",
            Algorithm::Bsp => "BSP",
            Algorithm::Slc(_) => "SLC",
            Algorithm::Bos => "BOS",
            Algorithm::Hc => "HC",
            Algorithm::Str => "STR",
        }
    }

    /// HC and STR produce overlapping boundaries that need not cover the universe.
    pub fn is_overlapping(self) -> bool {
        matches!(self, Algorithm::Hc | Algorithm::Str)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fg" => Ok(Algorithm::Fg),
            "bsp" => Ok(Algorithm::Bsp),
            "slc" => Ok(Algorithm::Slc(Axis::X)),
            "bos" => Ok(Algorithm::Bos),
            "hc" => Ok(Algorithm::Hc),
            "str" => Ok(Algorithm::Str),
            other => Err(Error::InvalidConfig(alloc::format!("unknown algorithm {other:?}"))),
        }
    }
}

/// How [`crate::masj::masj_assign`] picks an object's home partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomeRule {
    /// Lowest-id partition whose boundary contains the centroid. Used for
    /// layouts that tile their universe.
    Centroid,
    /// The partition the object was grouped into at build time. Used for
    /// overlapping layouts and for concatenated per-bucket layouts.
    BuildGroup,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    pub id: usize,
    pub boundary: Rect,
    /// Objects grouped into this partition by the algorithm, before replication.
    pub build_count: usize,
    /// Ids of those objects, in the order they were grouped.
    pub members: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionLayout {
    pub algorithm: Algorithm,
    pub payload: usize,
    pub partitions: Vec<Partition>,
    pub home_rule: HomeRule,
    /// Set when the layout was built from a sample with this ratio.
    pub sampling_gamma: Option<f64>,
    pub warnings: Vec<String>,
}

impl PartitionLayout {
    pub(crate) fn from_groups(
        algorithm: Algorithm,
        payload: usize,
        home_rule: HomeRule,
        groups: Vec<(Rect, Vec<u64>)>,
    ) -> Self {
        let partitions = groups
            .into_iter()
            .enumerate()
            .map(|(id, (boundary, members))| Partition {
                id,
                boundary,
                build_count: members.len(),
                members,
            })
            .collect();
        Self {
            algorithm,
            payload,
            partitions,
            home_rule,
            sampling_gamma: None,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn build_counts(&self) -> Vec<usize> {
        self.partitions.iter().map(|p| p.build_count).collect()
    }

    /// MBR of all partition boundaries.
    pub fn extent(&self) -> Option<Rect> {
        let mut it = self.partitions.iter().map(|p| p.boundary);
        let first = it.next()?;
        Some(it.fold(first, |u, r| u.union(&r)))
    }

    /// Same partitions, ignoring provenance and warnings.
    pub fn same_partitions(&self, other: &PartitionLayout) -> bool {
        self.partitions == other.partitions
    }
}

/// Runs `algorithm` on `data` with payload bound `b`.
pub fn partition(data: &Dataset, algorithm: Algorithm, b: usize) -> Result<PartitionLayout> {
    match algorithm {
        Algorithm::Fg => partition_fg(data, b),
        Algorithm::Bsp => partition_bsp(data, b),
        Algorithm::Slc(axis) => partition_slc(data, b, axis),
        Algorithm::Bos => partition_bos(data, b),
        Algorithm::Hc => partition_hc(data, b),
        Algorithm::Str => partition_str(data, b),
    }
}

pub(crate) fn check_payload(b: usize) -> Result<()> {
    if b == 0 {
        Err(Error::InvalidPayload)
    } else {
        Ok(())
    }
}

/// `ceil(sqrt(n / b))`, computed exactly: the smallest m with `m^2 * b >= n`.
pub fn grid_side(n: usize, b: usize) -> usize {
    let n = n as u128;
    let b = b.max(1) as u128;
    let mut m = libm::ceil(libm::sqrt(n as f64 / b as f64)) as u128;
    m = m.max(1);
    while m * m * b < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 1) * b >= n {
        m -= 1;
    }
    m as usize
}

/// An object reduced to what the partitioners need.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Item {
    pub id: u64,
    pub c: Point,
    pub mbr: Rect,
}

impl Item {
    pub fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.c.x,
            Axis::Y => self.c.y,
        }
    }
}

pub(crate) fn items(data: &Dataset) -> Vec<Item> {
    data.objects().iter().map(|o| Item { id: o.id, c: o.mbr.centroid(), mbr: o.mbr }).collect()
}

/// Orders items by centroid coordinate along `axis`, ties by id.
pub(crate) fn cmp_along(axis: Axis) -> impl Fn(&Item, &Item) -> Ordering {
    move |a, b| a.coord(axis).total_cmp(&b.coord(axis)).then(a.id.cmp(&b.id))
}

pub(crate) fn mbr_of(items: &[Item]) -> Rect {
    let first = items[0].mbr;
    items[1..].iter().fold(first, |u, it| u.union(&it.mbr))
}

pub(crate) fn ids_of(items: &[Item]) -> Vec<u64> {
    items.iter().map(|it| it.id).collect()
}
