//! Hilbert curve ranks on a `2^order x 2^order` grid laid over a universe.
//!
//! The curve starts in the lower-left cell, visits the upper-left quadrant
//! second and ends in the lower-right cell.

use crate::error::{Error, Result};
use crate::geom::{Point, Rect};

/// Grid order used by the partitioners: 65536 x 65536 cells.
pub const DEFAULT_HILBERT_ORDER: u32 = 16;

/// Curve rank of grid cell `(x, y)` on a `2^order` grid.
pub fn cell_rank(x: u32, y: u32, order: u32) -> u64 {
    let (mut x, mut y) = (x as u64, y as u64);
    let mut d = 0u64;
    let mut s = 1u64 << (order - 1);
    while s > 0 {
        let rx = u64::from(x & s != 0);
        let ry = u64::from(y & s != 0);
        d += s * s * ((3 * rx) ^ ry);
        x &= s - 1;
        y &= s - 1;
        // rotate the quadrant so the sub-curve has the base orientation
        if ry == 0 {
            if rx == 1 {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            core::mem::swap(&mut x, &mut y);
        }
        s >>= 1;
    }
    d
}

/// Grid cell containing `p`. Points on the universe's max edge fall into the last cell.
pub fn grid_cell(p: Point, universe: &Rect, order: u32) -> Result<(u32, u32)> {
    if !(1..=31).contains(&order) {
        return Err(Error::InvalidOrder(order));
    }
    if !universe.contains_point(p) {
        return Err(Error::PointOutsideUniverse);
    }
    let side = 1u64 << order;
    let axis_cell = |v: f64, lo: f64, hi: f64| -> u32 {
        let span = hi - lo;
        if span <= 0.0 {
            return 0;
        }
        let c = libm::floor((v - lo) / span * side as f64);
        (c.max(0.0) as u64).min(side - 1) as u32
    };
    Ok((
        axis_cell(p.x, universe.min_x, universe.max_x),
        axis_cell(p.y, universe.min_y, universe.max_y),
    ))
}

/// Hilbert rank of `p` within `universe`, in `[0, 4^order)`.
pub fn hilbert_index(p: Point, universe: &Rect, order: u32) -> Result<u64> {
    let (x, y) = grid_cell(p, universe, order)?;
    Ok(cell_rank(x, y, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit() -> Rect {
        Rect::new(0., 0., 1., 1.).unwrap()
    }

    #[test]
    fn order_one_base_case() {
        let centers = [(0.25, 0.25), (0.25, 0.75), (0.75, 0.75), (0.75, 0.25)];
        for (rank, (x, y)) in centers.iter().enumerate() {
            assert_eq!(hilbert_index(Point::new(*x, *y), &unit(), 1).unwrap(), rank as u64);
        }
    }

    #[test]
    fn starts_at_origin() {
        assert_eq!(hilbert_index(Point::new(0.01, 0.01), &unit(), 2).unwrap(), 0);
    }

    #[test]
    fn max_edge_clamps_to_last_cell() {
        assert_eq!(grid_cell(Point::new(1.0, 1.0), &unit(), 3).unwrap(), (7, 7));
        assert_eq!(grid_cell(Point::new(1.0, 0.0), &unit(), 3).unwrap(), (7, 0));
    }

    #[test]
    fn rejects_outside_points_and_bad_orders() {
        assert_eq!(
            hilbert_index(Point::new(1.5, 0.5), &unit(), 4),
            Err(Error::PointOutsideUniverse)
        );
        assert_eq!(hilbert_index(Point::new(0.5, 0.5), &unit(), 0), Err(Error::InvalidOrder(0)));
        assert_eq!(hilbert_index(Point::new(0.5, 0.5), &unit(), 32), Err(Error::InvalidOrder(32)));
        assert!(hilbert_index(Point::new(0.5, 0.5), &unit(), 31).is_ok());
    }

    #[test]
    fn degenerate_universe_maps_to_cell_zero() {
        let u = Rect::new(2., 2., 2., 2.).unwrap();
        assert_eq!(hilbert_index(Point::new(2., 2.), &u, 16).unwrap(), 0);
    }

    #[test]
    fn bijective_and_adjacent_up_to_order_six() {
        for order in 1..=6u32 {
            let side = 1u32 << order;
            let mut by_rank = vec![None; (side * side) as usize];
            for x in 0..side {
                for y in 0..side {
                    let d = cell_rank(x, y, order) as usize;
                    assert!(by_rank[d].is_none(), "rank {d} hit twice at order {order}");
                    by_rank[d] = Some((x as i64, y as i64));
                }
            }
            let cells: alloc::vec::Vec<_> = by_rank.into_iter().map(Option::unwrap).collect();
            for w in cells.windows(2) {
                let dist = (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs();
                assert_eq!(dist, 1, "order {order}: {:?} -> {:?}", w[0], w[1]);
            }
        }
    }
}
