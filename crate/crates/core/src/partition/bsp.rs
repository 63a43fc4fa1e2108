use alloc::format;
use alloc::vec::Vec;

use super::{check_payload, cmp_along, ids_of, items, Algorithm, HomeRule, Item, PartitionLayout};
use crate::error::Result;
use crate::geom::{Axis, Dataset, Rect};

/// A candidate median cut of a region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Cut {
    pub axis: Axis,
    pub at: f64,
    pub area_product: f64,
}

/// Median cut along `axis` for items already sorted along it: the lower
/// `ceil(n/2)` items go left, the line sits midway between the two middle
/// centroids.
pub(crate) fn median_cut(region: &Rect, sorted: &[Item], axis: Axis) -> Cut {
    let h = sorted.len().div_ceil(2);
    let at = (sorted[h - 1].coord(axis) + sorted[h].coord(axis)) / 2.0;
    let extent = region.max(axis.other()) - region.min(axis.other());
    let left = (at - region.min(axis)) * extent;
    let right = (region.max(axis) - at) * extent;
    Cut { axis, at, area_product: left * right }
}

/// Binary split: recursively halves any region holding more than `b`
/// centroids at the median, choosing the axis whose children have the larger
/// area product (ties go to x). Regions whose centroids all coincide cannot be
/// split; they become oversized leaves and a warning is recorded.
///
/// Leaves are emitted depth-first, lower child first.
pub fn partition_bsp(data: &Dataset, b: usize) -> Result<PartitionLayout> {
    check_payload(b)?;
    let mut leaves = Vec::new();
    let mut warnings = Vec::new();
    let mut stack = alloc::vec![(data.universe(), items(data))];

    while let Some((region, mut its)) = stack.pop() {
        if its.len() <= b {
            leaves.push((region, ids_of(&its)));
            continue;
        }
        let first = its[0].c;
        if its.iter().all(|it| it.c == first) {
            warnings.push(format!(
                "non-separable leaf: {} coincident centroids at ({}, {}) exceed payload {b}",
                its.len(),
                first.x,
                first.y
            ));
            leaves.push((region, ids_of(&its)));
            continue;
        }

        its.sort_by(cmp_along(Axis::X));
        let cut_x = median_cut(&region, &its, Axis::X);
        let mut by_y = its.clone();
        by_y.sort_by(cmp_along(Axis::Y));
        let cut_y = median_cut(&region, &by_y, Axis::Y);

        let (cut, mut sorted) =
            if cut_x.area_product >= cut_y.area_product { (cut_x, its) } else { (cut_y, by_y) };
        let upper_items = sorted.split_off(sorted.len().div_ceil(2));
        let mut lower = region;
        lower.set_max(cut.axis, cut.at);
        let mut upper = region;
        upper.set_min(cut.axis, cut.at);
        // pushed upper first so the lower child is emitted first
        stack.push((upper, upper_items));
        stack.push((lower, sorted));
    }

    let mut layout = PartitionLayout::from_groups(Algorithm::Bsp, b, HomeRule::Centroid, leaves);
    layout.warnings = warnings;
    Ok(layout)
}
