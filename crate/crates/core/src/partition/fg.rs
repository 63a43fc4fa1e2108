use alloc::vec;
use alloc::vec::Vec;

use super::{check_payload, grid_side, Algorithm, HomeRule, PartitionLayout};
use crate::error::Result;
use crate::geom::{Dataset, Rect};

/// Fixed grid: an `m x m` grid of equal cells over the universe with
/// `m = ceil(sqrt(|R| / b))`. Empty cells are kept.
///
/// Cells are numbered row-major from the lower-left corner. A centroid lying
/// on a shared cell edge is counted in the lower-numbered cell.
pub fn partition_fg(data: &Dataset, b: usize) -> Result<PartitionLayout> {
    check_payload(b)?;
    let u = data.universe();
    let m = grid_side(data.len(), b);
    let xs = edges(u.min_x, u.max_x, m);
    let ys = edges(u.min_y, u.max_y, m);

    let mut members: Vec<Vec<u64>> = vec![Vec::new(); m * m];
    for o in data.objects() {
        let c = o.mbr.centroid();
        let col = xs[1..m].partition_point(|&e| e < c.x);
        let row = ys[1..m].partition_point(|&e| e < c.y);
        members[row * m + col].push(o.id);
    }

    let groups = members
        .into_iter()
        .enumerate()
        .map(|(i, ids)| {
            let (row, col) = (i / m, i % m);
            (Rect { min_x: xs[col], min_y: ys[row], max_x: xs[col + 1], max_y: ys[row + 1] }, ids)
        })
        .collect();
    Ok(PartitionLayout::from_groups(Algorithm::Fg, b, HomeRule::Centroid, groups))
}

fn edges(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    let span = hi - lo;
    let mut e: Vec<f64> = (0..=m).map(|i| lo + span * i as f64 / m as f64).collect();
    e[m] = hi;
    e
}
