//! Tile-level spatial join over co-partitioned datasets.
//!
//! Both inputs are replicated into a shared layout; each tile is joined on its
//! own and the per-tile results are merged with a global pair de-duplication.
//! The join predicate is closed MBR intersection.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Result;
use crate::geom::{Dataset, Rect, SpatialObject};
use crate::masj::Assigner;
use crate::partition::PartitionLayout;

/// An `(r_id, s_id)` result pair.
pub type Pair = (u64, u64);

/// Objects of both inputs assigned to one tile, each list sorted by id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tile {
    pub r: Vec<(u64, Rect)>,
    pub s: Vec<(u64, Rect)>,
}

impl Tile {
    pub fn is_empty(&self) -> bool {
        self.r.is_empty() || self.s.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JoinResult {
    /// sorted, no duplicates
    pub pairs: Vec<Pair>,
    pub per_tile_pair_counts: Vec<u64>,
    pub dedup_removed: u64,
}

/// Replicates both inputs into `layout`; tile `i` holds every object assigned
/// to partition `i`.
pub fn copartition(
    r: &[SpatialObject],
    s: &[SpatialObject],
    layout: &PartitionLayout,
) -> Result<Vec<Tile>> {
    let assigner = Assigner::new(layout);
    let mut tiles = alloc::vec![Tile::default(); layout.len()];
    let mut scratch = Vec::new();
    let mut entries = Vec::new();
    for (side, objects) in [(0, r), (1, s)] {
        for o in objects {
            entries.clear();
            assigner.assign_into(o, &mut scratch, &mut entries)?;
            for e in &entries {
                let tile = &mut tiles[e.partition_id];
                let list = if side == 0 { &mut tile.r } else { &mut tile.s };
                list.push((o.id, o.mbr));
            }
        }
    }
    for t in &mut tiles {
        t.r.sort_unstable_by_key(|e| e.0);
        t.s.sort_unstable_by_key(|e| e.0);
    }
    Ok(tiles)
}

/// Intersecting pairs within one tile, sorted. Plane sweep on `min_x`.
pub fn join_tile(tile: &Tile) -> Vec<Pair> {
    let mut out = Vec::new();
    if tile.is_empty() {
        return out;
    }
    let by_min_x = |v: &[(u64, Rect)]| {
        let mut v = v.to_vec();
        v.sort_unstable_by(|a, b| a.1.min_x.total_cmp(&b.1.min_x).then(a.0.cmp(&b.0)));
        v
    };
    let (rs, ss) = (by_min_x(&tile.r), by_min_x(&tile.s));
    let (mut i, mut j) = (0, 0);
    while i < rs.len() && j < ss.len() {
        if rs[i].1.min_x <= ss[j].1.min_x {
            let (rid, r) = rs[i];
            for &(sid, s) in ss[j..].iter().take_while(|(_, s)| s.min_x <= r.max_x) {
                if r.min_y <= s.max_y && s.min_y <= r.max_y {
                    out.push((rid, sid));
                }
            }
            i += 1;
        } else {
            let (sid, s) = ss[j];
            for &(rid, r) in rs[i..].iter().take_while(|(_, r)| r.min_x <= s.max_x) {
                if r.min_y <= s.max_y && s.min_y <= r.max_y {
                    out.push((rid, sid));
                }
            }
            j += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Merges per-tile pair lists (in tile order) and removes duplicates found in
/// more than one tile.
pub fn merge_tile_pairs(per_tile: Vec<Vec<Pair>>) -> JoinResult {
    let per_tile_pair_counts: Vec<u64> = per_tile.iter().map(|v| v.len() as u64).collect();
    let total: u64 = per_tile_pair_counts.iter().sum();
    let set: BTreeSet<Pair> = per_tile.into_iter().flatten().collect();
    let pairs: Vec<Pair> = set.into_iter().collect();
    JoinResult { dedup_removed: total - pairs.len() as u64, pairs, per_tile_pair_counts }
}

/// Joins every tile sequentially. Empty tiles contribute zero pairs.
pub fn tile_join(tiles: &[Tile]) -> JoinResult {
    merge_tile_pairs(tiles.iter().map(join_tile).collect())
}

/// Exhaustive all-pairs MBR intersection, sorted.
pub fn brute_join(r: &[SpatialObject], s: &[SpatialObject]) -> Vec<Pair> {
    let mut out = Vec::new();
    for a in r {
        for b in s {
            if a.mbr.intersects(&b.mbr) {
                out.push((a.id, b.id));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Both inputs in one dataset with fresh ids (R first, then S), for building a
/// layout shared by both sides of a join.
pub fn merged_for_layout(r: &[SpatialObject], s: &[SpatialObject]) -> Result<Dataset> {
    Dataset::from_rects(r.iter().chain(s).map(|o| o.mbr))
}
