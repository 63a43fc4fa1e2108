//! Coarse bucketing for the two-level parallel pipeline.
//!
//! A seeded sample of centroids is ranked along the Hilbert curve and
//! equally spaced rank quantiles become bucket cut values. Buckets are
//! left-closed, right-open rank intervals; the last one is closed on the
//! right. Because the key is a curve rank, buckets keep a global total order.

use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Dataset, Rect, SpatialObject};
use crate::hilbert::{hilbert_index, DEFAULT_HILBERT_ORDER};
use crate::partition::{Algorithm, HomeRule, PartitionLayout};

/// Anchor sample size used when none is given.
pub const DEFAULT_ANCHOR_SAMPLE: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ParallelConfig {
    pub coarse_payload: usize,
    pub anchor_sample_size: usize,
    pub fine_algorithm: Algorithm,
    pub fine_payload: usize,
    pub workers: usize,
    pub seed: u64,
}

impl ParallelConfig {
    pub fn new(fine_algorithm: Algorithm, fine_payload: usize, coarse_payload: usize) -> Self {
        Self {
            coarse_payload,
            anchor_sample_size: DEFAULT_ANCHOR_SAMPLE,
            fine_algorithm,
            fine_payload,
            workers: 1,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coarse_payload == 0
            || self.anchor_sample_size == 0
            || self.fine_payload == 0
            || self.workers == 0
        {
            return Err(Error::InvalidConfig(
                "coarse payload, anchor sample, fine payload and workers must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnchorList {
    /// strictly increasing Hilbert-rank cut values
    pub anchors: Vec<u64>,
    pub coarse_payload: usize,
    pub warnings: Vec<String>,
}

impl AnchorList {
    pub fn bucket_count(&self) -> usize {
        self.anchors.len() + 1
    }
}

/// Picks `ceil(|R| / coarse_payload) - 1` rank quantiles of a seeded sample of
/// `min(anchor_sample_size, |R|)` objects.
pub fn build_anchors(data: &Dataset, cfg: &ParallelConfig) -> Result<AnchorList> {
    cfg.validate()?;
    let n = data.len();
    let buckets = n.div_ceil(cfg.coarse_payload);
    let mut list = AnchorList {
        anchors: Vec::new(),
        coarse_payload: cfg.coarse_payload,
        warnings: Vec::new(),
    };
    if buckets <= 1 {
        return Ok(list);
    }
    let size = cfg.anchor_sample_size.min(n);
    if size < buckets {
        return Err(Error::InvalidConfig(alloc::format!(
            "anchor sample of {size} objects cannot cut {buckets} buckets"
        )));
    }
    let u = data.universe();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut ranks = rand::seq::index::sample(&mut rng, n, size)
        .into_iter()
        .map(|i| hilbert_index(data.objects()[i].mbr.centroid(), &u, DEFAULT_HILBERT_ORDER))
        .collect::<Result<Vec<u64>>>()?;
    ranks.sort_unstable();
    if ranks[0] == ranks[size - 1] {
        list.warnings.push(alloc::format!(
            "all {size} sampled objects share Hilbert rank {}; using a single bucket",
            ranks[0]
        ));
        return Ok(list);
    }
    list.anchors = (1..buckets).map(|j| ranks[j * size / buckets]).collect();
    list.anchors.dedup();
    Ok(list)
}

/// Bucket of a Hilbert rank: the number of anchors at or below it.
pub fn bucket_of_rank(rank: u64, anchors: &AnchorList) -> usize {
    anchors.anchors.partition_point(|&a| a <= rank)
}

pub fn coarse_assign(obj: &SpatialObject, anchors: &AnchorList, universe: &Rect) -> Result<usize> {
    let rank = hilbert_index(obj.mbr.centroid(), universe, DEFAULT_HILBERT_ORDER)?;
    Ok(bucket_of_rank(rank, anchors))
}

/// Bucket index of every object, in dataset order.
pub fn bucket_ids(data: &Dataset, anchors: &AnchorList) -> Result<Vec<usize>> {
    let u = data.universe();
    data.objects().iter().map(|o| coarse_assign(o, anchors, &u)).collect()
}

/// Groups objects by bucket, preserving input order within each bucket.
/// Empty buckets are dropped; the rest stay in bucket order.
pub fn group_buckets(data: &Dataset, ids: &[usize], bucket_count: usize) -> Result<Vec<Dataset>> {
    let mut groups: Vec<Vec<SpatialObject>> = alloc::vec![Vec::new(); bucket_count];
    for (o, &b) in data.objects().iter().zip(ids) {
        groups[b].push(o.clone());
    }
    groups.into_iter().filter(|g| !g.is_empty()).map(Dataset::from_unique).collect()
}

/// Splits the dataset into its non-empty buckets.
pub fn split_buckets(data: &Dataset, anchors: &AnchorList) -> Result<Vec<Dataset>> {
    group_buckets(data, &bucket_ids(data, anchors)?, anchors.bucket_count())
}

/// Concatenates per-bucket layouts in bucket order and renumbers partitions
/// globally. Homes follow build groups, since the pieces need not tile the
/// full universe.
pub fn concat_layouts(
    algorithm: Algorithm,
    payload: usize,
    parts: Vec<PartitionLayout>,
) -> PartitionLayout {
    let mut warnings = Vec::new();
    let mut groups = Vec::new();
    for layout in parts {
        warnings.extend(layout.warnings);
        groups.extend(layout.partitions.into_iter().map(|p| (p.boundary, p.members)));
    }
    let mut out = PartitionLayout::from_groups(algorithm, payload, HomeRule::BuildGroup, groups);
    out.warnings = warnings;
    out
}
