use alloc::vec::Vec;

use super::{check_payload, cmp_along, ids_of, items, Algorithm, HomeRule, Item, PartitionLayout};
use crate::error::Result;
use crate::fenwick::Fenwick;
use crate::geom::{Axis, Dataset, Rect};

/// Strip partitioning: sort centroids along `axis` and slice off strips of `b`
/// objects spanning the universe's full extent on the other axis. Each cut
/// sits midway between the last centroid of one strip and the first of the
/// next; the final strip takes the remainder up to the universe edge.
pub fn partition_slc(data: &Dataset, b: usize, axis: Axis) -> Result<PartitionLayout> {
    check_payload(b)?;
    let u = data.universe();
    let mut its = items(data);
    its.sort_by(cmp_along(axis));

    let chunks: Vec<&[Item]> = its.chunks(b).collect();
    let mut groups = Vec::with_capacity(chunks.len());
    let mut lo = u.min(axis);
    for (i, chunk) in chunks.iter().enumerate() {
        let hi = match chunks.get(i + 1) {
            Some(next) => (chunk[chunk.len() - 1].coord(axis) + next[0].coord(axis)) / 2.0,
            None => u.max(axis),
        };
        let mut strip = u;
        strip.set_min(axis, lo);
        strip.set_max(axis, hi);
        groups.push((strip, ids_of(chunk)));
        lo = hi;
    }
    Ok(PartitionLayout::from_groups(Algorithm::Slc(axis), b, HomeRule::Centroid, groups))
}

/// Boundary-optimized strips: like [`partition_slc`], but before each cut both
/// axes are tried and the one whose cut line is crossed by fewer remaining
/// object MBRs wins (ties go to x). The remaining region shrinks after every
/// cut, so strips span the remaining region rather than the whole universe.
pub fn partition_bos(data: &Dataset, b: usize) -> Result<PartitionLayout> {
    check_payload(b)?;
    let its = items(data);
    let mut sx = AxisState::new(&its, Axis::X);
    let mut sy = AxisState::new(&its, Axis::Y);
    let mut region = data.universe();
    let mut remaining = its.len();
    let mut groups = Vec::new();

    while remaining > b {
        let cut_x = sx.cut(&its, b);
        let cut_y = sy.cut(&its, b);
        let (axis, at) = if sx.crossings(cut_x) <= sy.crossings(cut_y) {
            (Axis::X, cut_x)
        } else {
            (Axis::Y, cut_y)
        };
        let mut ids = Vec::with_capacity(b);
        for _ in 0..b {
            let item = match axis {
                Axis::X => sx.first_active(),
                Axis::Y => sy.first_active(),
            };
            sx.remove(item);
            sy.remove(item);
            ids.push(its[item].id);
        }
        let mut strip = region;
        strip.set_max(axis, at);
        region.set_min(axis, at);
        groups.push((strip, ids));
        remaining -= b;
    }
    let rest: Vec<u64> = (0..remaining).map(|k| its[sx.order[sx.active.kth(k)]].id).collect();
    groups.push((region, rest));
    Ok(PartitionLayout::from_groups(Algorithm::Bos, b, HomeRule::Centroid, groups))
}

/// Number of `mbrs` strictly crossing the line `coord(axis) = at`.
pub fn crossing_count(mbrs: &[Rect], axis: Axis, at: f64) -> usize {
    mbrs.iter().filter(|r| r.min(axis) < at && at < r.max(axis)).count()
}

/// Per-axis bookkeeping for BOS over the still-unassigned objects.
struct AxisState {
    axis: Axis,
    /// item indices sorted by centroid along the axis, ties by id
    order: Vec<usize>,
    slot: Vec<usize>,
    active: Fenwick,
    mins: Counter,
    maxs: Counter,
    /// zero-extent objects; they touch a line through them without crossing it
    points: Counter,
}

impl AxisState {
    fn new(its: &[Item], axis: Axis) -> Self {
        let mut order: Vec<usize> = (0..its.len()).collect();
        let cmp = cmp_along(axis);
        order.sort_by(|&a, &b| cmp(&its[a], &its[b]));
        let mut slot = alloc::vec![0; its.len()];
        for (s, &i) in order.iter().enumerate() {
            slot[i] = s;
        }
        let mins = Counter::new(its.iter().map(|it| Some(it.mbr.min(axis))));
        let maxs = Counter::new(its.iter().map(|it| Some(it.mbr.max(axis))));
        let points = Counter::new(
            its.iter().map(|it| (it.mbr.min(axis) == it.mbr.max(axis)).then_some(it.mbr.min(axis))),
        );
        Self { axis, order, slot, active: Fenwick::all_active(its.len()), mins, maxs, points }
    }

    /// Midpoint between the `b`-th and `b+1`-th remaining centroids.
    fn cut(&self, its: &[Item], b: usize) -> f64 {
        let last = its[self.order[self.active.kth(b - 1)]].coord(self.axis);
        let next = its[self.order[self.active.kth(b)]].coord(self.axis);
        (last + next) / 2.0
    }

    // #{min < at < max} = #{min < at} - #{max <= at} + #{min = max = at}
    fn crossings(&self, at: f64) -> i64 {
        self.mins.below(at) - self.maxs.at_most(at) + self.points.at_most(at)
            - self.points.below(at)
    }

    fn first_active(&self) -> usize {
        self.order[self.active.kth(0)]
    }

    fn remove(&mut self, item: usize) {
        self.active.add(self.slot[item], -1);
        self.mins.remove(item);
        self.maxs.remove(item);
        self.points.remove(item);
    }
}

/// Counts active values below / at-most a threshold.
struct Counter {
    sorted: Vec<f64>,
    slot: Vec<Option<usize>>,
    active: Fenwick,
}

impl Counter {
    fn new(values: impl Iterator<Item = Option<f64>>) -> Self {
        let values: Vec<Option<f64>> = values.collect();
        let mut idx: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_some()).collect();
        idx.sort_by(|&a, &b| values[a].unwrap().total_cmp(&values[b].unwrap()));
        let mut slot = alloc::vec![None; values.len()];
        let mut sorted = Vec::with_capacity(idx.len());
        for (s, &i) in idx.iter().enumerate() {
            slot[i] = Some(s);
            sorted.push(values[i].unwrap());
        }
        let active = Fenwick::all_active(sorted.len());
        Self { sorted, slot, active }
    }

    fn below(&self, at: f64) -> i64 {
        self.active.prefix(self.sorted.partition_point(|&v| v < at))
    }

    fn at_most(&self, at: f64) -> i64 {
        self.active.prefix(self.sorted.partition_point(|&v| v <= at))
    }

    fn remove(&mut self, item: usize) {
        if let Some(s) = self.slot[item] {
            self.active.add(s, -1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn six_points_three_strips() {
        let data = points(&[(1., 0.), (2., 0.5), (3., 1.), (4., 0.), (5., 0.5), (6., 1.)]);
        let layout = partition_slc(&data, 2, Axis::X).unwrap();
        assert_eq!(layout.build_counts(), [2, 2, 2]);
        let cuts: Vec<f64> = layout.partitions.iter().map(|p| p.boundary.max_x).collect();
        assert_eq!(cuts, [2.5, 4.5, 6.0]);
        assert_tiles(&layout, data.universe());
    }

    #[test]
    fn remainder_strip_and_single_strip() {
        let data = points(&[(1., 0.), (2., 1.), (3., 0.), (4., 1.), (5., 0.)]);
        assert_eq!(partition_slc(&data, 2, Axis::X).unwrap().build_counts(), [2, 2, 1]);
        let one = partition_slc(&data, 5, Axis::Y).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.partitions[0].boundary, data.universe());
    }

    #[test]
    fn slc_along_y() {
        let data = points(&[(0., 3.), (1., 1.), (0.5, 2.), (1., 0.)]);
        let layout = partition_slc(&data, 2, Axis::Y).unwrap();
        assert_eq!(layout.partitions[0].members, [3, 1]);
        assert_eq!(layout.partitions[0].boundary.max_y, 1.5);
        assert_eq!(layout.partitions[0].boundary.max_x, 1.0);
    }

    #[test]
    fn stacked_bars_cut_horizontally_first() {
        let bars = [Rect::new(0., 0., 10., 1.).unwrap(), Rect::new(0., 2., 10., 3.).unwrap()];
        let data = with_objects(&bars);
        // oracle: the x cut at 5 crosses both bars, the y cut at 1.5 crosses none
        assert_eq!(crossing_count(&bars, Axis::X, 5.0), 2);
        assert_eq!(crossing_count(&bars, Axis::Y, 1.5), 0);
        let layout = partition_bos(&data, 1).unwrap();
        assert_eq!(layout.len(), 2);
        assert_eq!(layout.partitions[0].boundary, Rect::new(0., 0., 10., 1.5).unwrap());
        assert_eq!(layout.partitions[1].boundary, Rect::new(0., 1.5, 10., 3.).unwrap());
    }

    #[test]
    fn bos_single_partition_when_within_payload() {
        let data = points(&[(0., 0.), (1., 1.)]);
        let layout = partition_bos(&data, 2).unwrap();
        assert_eq!(layout.len(), 1);
        assert_eq!(layout.partitions[0].boundary, data.universe());
    }

    /// Replays BOS with linear scans over the remaining objects.
    fn bos_oracle(data: &Dataset, b: usize) -> Vec<(Rect, Vec<u64>)> {
        let mut rest = items(data);
        let mut region = data.universe();
        let mut out = Vec::new();
        while rest.len() > b {
            let mut best: Option<(usize, Axis, f64)> = None;
            for axis in [Axis::X, Axis::Y] {
                let mut s = rest.clone();
                s.sort_by(cmp_along(axis));
                let at = (s[b - 1].coord(axis) + s[b].coord(axis)) / 2.0;
                let mbrs: Vec<Rect> = s.iter().map(|i| i.mbr).collect();
                let cost = crossing_count(&mbrs, axis, at);
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, axis, at));
                }
            }
            let (_, axis, at) = best.unwrap();
            rest.sort_by(cmp_along(axis));
            let tail = rest.split_off(b);
            let mut strip = region;
            strip.set_max(axis, at);
            region.set_min(axis, at);
            out.push((strip, ids_of(&rest)));
            rest = tail;
        }
        rest.sort_by(cmp_along(Axis::X));
        out.push((region, ids_of(&rest)));
        out
    }

    fn arb_dataset() -> impl Strategy<Value = Dataset> {
        proptest::collection::vec((0.0..10.0f64, 0.0..10.0f64, 0.0..2.0f64, 0.0..2.0f64), 1..80)
            .prop_map(|v| {
                with_objects(
                    &v.iter()
                        .map(|&(x, y, w, h)| Rect::new(x, y, x + w, y + h).unwrap())
                        .collect::<Vec<_>>(),
                )
            })
    }

    proptest! {
        #[test]
        fn bos_matches_linear_scan_oracle(data in arb_dataset(), b in 1usize..10) {
            let layout = partition_bos(&data, b).unwrap();
            let got: Vec<(Rect, Vec<u64>)> =
                layout.partitions.iter().map(|p| (p.boundary, p.members.clone())).collect();
            prop_assert_eq!(got, bos_oracle(&data, b));
            assert_tiles(&layout, data.universe());
        }

        #[test]
        fn bos_on_points_equals_slc_x(
            pts in proptest::collection::vec((0.0..5.0f64, 0.0..5.0f64), 1..60),
            b in 1usize..8,
        ) {
            let data = points(&pts);
            let bos = partition_bos(&data, b).unwrap();
            let slc = partition_slc(&data, b, Axis::X).unwrap();
            prop_assert!(bos.same_partitions(&slc));
        }

        #[test]
        fn slc_respects_payload_and_tiles(data in arb_dataset(), b in 1usize..10) {
            for axis in [Axis::X, Axis::Y] {
                let layout = partition_slc(&data, b, axis).unwrap();
                prop_assert!(layout.build_counts().iter().all(|&c| c <= b));
                prop_assert_eq!(layout.build_counts().iter().sum::<usize>(), data.len());
                assert_tiles(&layout, data.universe());
            }
        }
    }
}
