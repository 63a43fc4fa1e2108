//! Worker-pool drivers: two-level parallel partitioning, parallel replication
//! and the tile-parallel join.
//!
//! Each call builds a pool of at most `workers` threads that is torn down
//! (threads joined) before the call returns. Work units are independent and
//! results are merged in a fixed order, so outputs do not depend on the
//! worker count.

use rayon::prelude::*;
use tilecraft_core::anchors::{
    bucket_ids, build_anchors, concat_layouts, group_buckets, ParallelConfig,
};
use tilecraft_core::join::{join_tile, merge_tile_pairs, JoinResult, Tile};
use tilecraft_core::masj::Assigner;
use tilecraft_core::partition::partition;
use tilecraft_core::{Assignment, Dataset, PartitionLayout};

use crate::error::{Error, Result};

/// Runs `op` inside a scoped pool of `workers` threads.
pub fn with_pool<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> Result<R> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build_scoped(|thread| thread.run(), |pool| pool.install(op))
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

/// Anchor-based coarse bucketing followed by per-bucket fine partitioning on
/// the worker pool. Per-bucket layouts are concatenated in bucket order with
/// global partition ids. With a single non-empty bucket the fine layout is
/// returned as-is.
pub fn parallel_partition(data: &Dataset, cfg: &ParallelConfig) -> Result<PartitionLayout> {
    let anchors = build_anchors(data, cfg)?;
    with_pool(cfg.workers, || -> Result<PartitionLayout> {
        let u = data.universe();
        let ids: Vec<usize> = if anchors.anchors.is_empty() {
            vec![0; data.len()]
        } else {
            data.objects()
                .par_iter()
                .map(|o| tilecraft_core::anchors::coarse_assign(o, &anchors, &u))
                .collect::<tilecraft_core::Result<_>>()?
        };
        let buckets = group_buckets(data, &ids, anchors.bucket_count())?;
        let mut layouts = buckets
            .par_iter()
            .map(|b| partition(b, cfg.fine_algorithm, cfg.fine_payload))
            .collect::<tilecraft_core::Result<Vec<_>>>()?;
        let mut layout = if layouts.len() == 1 {
            layouts.pop().expect("one layout")
        } else {
            concat_layouts(cfg.fine_algorithm, cfg.fine_payload, layouts)
        };
        layout.warnings.splice(0..0, anchors.warnings.iter().cloned());
        Ok(layout)
    })?
}

/// Sequential reference for [`parallel_partition`]: same buckets, partitioned
/// one after another.
pub fn sequential_bucket_partition(
    data: &Dataset,
    cfg: &ParallelConfig,
) -> Result<PartitionLayout> {
    let anchors = build_anchors(data, cfg)?;
    let ids = bucket_ids(data, &anchors)?;
    let buckets = group_buckets(data, &ids, anchors.bucket_count())?;
    let mut layouts = Vec::new();
    for b in &buckets {
        layouts.push(partition(b, cfg.fine_algorithm, cfg.fine_payload)?);
    }
    Ok(if layouts.len() == 1 {
        layouts.pop().expect("one layout")
    } else {
        concat_layouts(cfg.fine_algorithm, cfg.fine_payload, layouts)
    })
}

const ASSIGN_CHUNK: usize = 4096;

/// [`tilecraft_core::masj_assign`] with objects spread over the pool.
pub fn parallel_assign(
    data: &Dataset,
    layout: &PartitionLayout,
    workers: usize,
) -> Result<Assignment> {
    let assigner = Assigner::new(layout);
    let chunks = with_pool(workers, || {
        data.objects()
            .par_chunks(ASSIGN_CHUNK)
            .map(|chunk| assigner.assign_all(chunk))
            .collect::<tilecraft_core::Result<Vec<_>>>()
    })??;
    Ok(assigner.finish(chunks.into_iter().flatten().collect()))
}

/// Joins tiles on the pool and merges them in tile order.
pub fn parallel_tile_join(tiles: &[Tile], workers: usize) -> Result<JoinResult> {
    let per_tile = with_pool(workers, || tiles.par_iter().map(join_tile).collect::<Vec<_>>())?;
    Ok(merge_tile_pairs(per_tile))
}
