use alloc::vec::Vec;

use super::{
    check_payload, cmp_along, grid_side, ids_of, items, mbr_of, Algorithm, HomeRule,
    PartitionLayout,
};
use crate::error::Result;
use crate::geom::{Axis, Dataset};

/// Sort-tile-recursive packing: `m = ceil(sqrt(|R| / b))` vertical slabs of
/// `ceil(|R| / m)` objects by centroid x, each slab cut into runs of at most
/// `b` objects by centroid y. Boundaries are the MBRs of the runs.
pub fn partition_str(data: &Dataset, b: usize) -> Result<PartitionLayout> {
    check_payload(b)?;
    let m = grid_side(data.len(), b);
    let slab = data.len().div_ceil(m);
    let mut its = items(data);
    its.sort_by(cmp_along(Axis::X));

    let mut groups = Vec::new();
    for slab_items in its.chunks_mut(slab) {
        slab_items.sort_by(cmp_along(Axis::Y));
        groups.extend(slab_items.chunks(b).map(|run| (mbr_of(run), ids_of(run))));
    }
    Ok(PartitionLayout::from_groups(Algorithm::Str, b, HomeRule::BuildGroup, groups))
}
