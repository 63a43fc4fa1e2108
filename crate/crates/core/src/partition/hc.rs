use alloc::vec::Vec;

use super::{check_payload, ids_of, items, mbr_of, Algorithm, HomeRule, Item, PartitionLayout};
use crate::error::Result;
use crate::geom::Dataset;
use crate::hilbert::{hilbert_index, DEFAULT_HILBERT_ORDER};

/// Hilbert-curve grouping: sort by the curve rank of each centroid (ties by
/// id) and cut the sequence into runs of `b`. A partition's boundary is the
/// MBR of its members, so boundaries may overlap and leave gaps.
pub fn partition_hc(data: &Dataset, b: usize) -> Result<PartitionLayout> {
    check_payload(b)?;
    let u = data.universe();
    let mut ranked: Vec<(u64, Item)> = items(data)
        .into_iter()
        .map(|it| Ok((hilbert_index(it.c, &u, DEFAULT_HILBERT_ORDER)?, it)))
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.id.cmp(&b.1.id)));
    let sorted: Vec<Item> = ranked.into_iter().map(|(_, it)| it).collect();
    let groups = sorted.chunks(b).map(|g| (mbr_of(g), ids_of(g))).collect();
    Ok(PartitionLayout::from_groups(Algorithm::Hc, b, HomeRule::BuildGroup, groups))
}
