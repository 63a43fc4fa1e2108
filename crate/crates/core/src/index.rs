//! R-tree over partition boundaries for intersection lookups.

use alloc::vec::Vec;

use rstar::primitives::{GeomWithData, Rectangle};
use rstar::{RTree, AABB};

use crate::geom::Rect;

type Entry = GeomWithData<Rectangle<[f64; 2]>, usize>;

pub(crate) struct PartitionIndex {
    tree: RTree<Entry>,
    boundaries: Vec<Rect>,
}

impl PartitionIndex {
    pub(crate) fn new(boundaries: Vec<Rect>) -> Self {
        let entries = boundaries
            .iter()
            .enumerate()
            .map(|(i, r)| {
                GeomWithData::new(
                    Rectangle::from_corners([r.min_x, r.min_y], [r.max_x, r.max_y]),
                    i,
                )
            })
            .collect();
        Self { tree: RTree::bulk_load(entries), boundaries }
    }

    /// Ids of every boundary intersecting `r` (closed), ascending.
    pub(crate) fn intersecting(&self, r: &Rect, out: &mut Vec<usize>) {
        out.clear();
        let env = AABB::from_corners([r.min_x, r.min_y], [r.max_x, r.max_y]);
        out.extend(
            self.tree
                .locate_in_envelope_intersecting(&env)
                .map(|e| e.data)
                .filter(|&i| self.boundaries[i].intersects(r)),
        );
        out.sort_unstable();
    }

    pub(crate) fn boundary(&self, id: usize) -> &Rect {
        &self.boundaries[id]
    }
}
