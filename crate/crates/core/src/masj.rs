//! Multi-assignment replication: every object goes to every partition its MBR
//! intersects. Exactly one of those entries is the object's home; the rest are
//! replicas.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{Dataset, SpatialObject};
use crate::index::PartitionIndex;
use crate::partition::{Algorithm, HomeRule, PartitionLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AssignmentEntry {
    pub partition_id: usize,
    pub object_id: u64,
    pub is_replica: bool,
}

/// Entries sorted by `(partition_id, object_id)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub entries: Vec<AssignmentEntry>,
    pub source_layout: Algorithm,
}

impl Assignment {
    /// Assigned object count per partition, replicas included.
    pub fn partition_counts(&self, k: usize) -> Vec<u64> {
        let mut counts = alloc::vec![0u64; k];
        for e in &self.entries {
            counts[e.partition_id] += 1;
        }
        counts
    }

    pub fn replica_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_replica).count()
    }
}

/// Assigns objects one at a time against a prebuilt partition index.
///
/// Independent objects may be assigned from concurrent workers; sort the
/// merged entries afterwards.
pub struct Assigner<'a> {
    layout: &'a PartitionLayout,
    index: PartitionIndex,
    build_home: BTreeMap<u64, usize>,
}

impl<'a> Assigner<'a> {
    pub fn new(layout: &'a PartitionLayout) -> Self {
        let index = PartitionIndex::new(layout.partitions.iter().map(|p| p.boundary).collect());
        let build_home = match layout.home_rule {
            HomeRule::Centroid => BTreeMap::new(),
            HomeRule::BuildGroup => layout
                .partitions
                .iter()
                .flat_map(|p| p.members.iter().map(move |&id| (id, p.id)))
                .collect(),
        };
        Self { layout, index, build_home }
    }

    /// Appends the entries for `obj` to `out`.
    pub fn assign_into(
        &self,
        obj: &SpatialObject,
        scratch: &mut Vec<usize>,
        out: &mut Vec<AssignmentEntry>,
    ) -> Result<()> {
        self.index.intersecting(&obj.mbr, scratch);
        let home = match self.layout.home_rule {
            HomeRule::Centroid => {
                let c = obj.mbr.centroid();
                scratch.iter().copied().find(|&pid| self.index.boundary(pid).contains_point(c))
            }
            // objects that were not part of the build (e.g. the other side of a
            // join) fall back to the lowest intersecting partition
            HomeRule::BuildGroup => self
                .build_home
                .get(&obj.id)
                .copied()
                .filter(|pid| scratch.binary_search(pid).is_ok())
                .or_else(|| scratch.first().copied()),
        };
        let home = home.ok_or(Error::CoverageViolation(obj.id))?;
        out.extend(scratch.iter().map(|&pid| AssignmentEntry {
            partition_id: pid,
            object_id: obj.id,
            is_replica: pid != home,
        }));
        Ok(())
    }

    pub fn assign_all(&self, objects: &[SpatialObject]) -> Result<Vec<AssignmentEntry>> {
        let mut scratch = Vec::new();
        let mut out = Vec::with_capacity(objects.len());
        for o in objects {
            self.assign_into(o, &mut scratch, &mut out)?;
        }
        Ok(out)
    }

    pub fn finish(&self, mut entries: Vec<AssignmentEntry>) -> Assignment {
        entries.sort_unstable();
        Assignment { entries, source_layout: self.layout.algorithm }
    }
}

/// Replicates every object of `data` into every partition of `layout` that
/// its MBR intersects.
///
/// Fails with [`Error::CoverageViolation`] when an object has no home: for
/// covering layouts, no partition contains its centroid; otherwise, no
/// partition intersects it at all.
pub fn masj_assign(data: &Dataset, layout: &PartitionLayout) -> Result<Assignment> {
    let assigner = Assigner::new(layout);
    let entries = assigner.assign_all(data.objects())?;
    Ok(assigner.finish(entries))
}

/// `(entries - n) / n`: the fraction of extra copies made by replication.
pub fn replica_fraction(a: &Assignment, n: usize) -> f64 {
    (a.entries.len() as f64 - n as f64) / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;
    use crate::partition::{partition, partition_fg, test_support::*};
    use crate::synth::{generate, GenSpec};
    use alloc::vec;

    fn halves() -> PartitionLayout {
        PartitionLayout::from_groups(
            Algorithm::Fg,
            1,
            HomeRule::Centroid,
            vec![
                (Rect::new(0., 0., 0.5, 1.).unwrap(), vec![]),
                (Rect::new(0.5, 0., 1., 1.).unwrap(), vec![]),
            ],
        )
    }

    #[test]
    fn single_partition_no_replicas() {
        let data = points(&[(0., 0.), (1., 1.), (0.3, 0.2)]);
        let layout = partition_fg(&data, 10).unwrap();
        let a = masj_assign(&data, &layout).unwrap();
        assert_eq!(a.entries.len(), 3);
        assert_eq!(a.replica_count(), 0);
        assert_eq!(replica_fraction(&a, 3), 0.0);
    }

    #[test]
    fn straddling_object_goes_to_both_halves_home_lowest_id() {
        let data = with_objects(&[Rect::new(0.4, 0.4, 0.6, 0.6).unwrap()]);
        let a = masj_assign(&data, &halves()).unwrap();
        assert_eq!(
            a.entries,
            vec![
                AssignmentEntry { partition_id: 0, object_id: 0, is_replica: false },
                AssignmentEntry { partition_id: 1, object_id: 0, is_replica: true },
            ]
        );
    }

    #[test]
    fn uncovered_object_is_a_coverage_violation() {
        let data = with_objects(&[Rect::new(2., 2., 3., 3.).unwrap()]);
        assert_eq!(masj_assign(&data, &halves()), Err(Error::CoverageViolation(0)));
    }

    #[test]
    fn replica_fraction_arithmetic() {
        let entries = (0..12)
            .map(|i| AssignmentEntry {
                partition_id: i % 2,
                object_id: i as u64 % 10,
                is_replica: i >= 10,
            })
            .collect();
        let a = Assignment { entries, source_layout: Algorithm::Fg };
        assert!((replica_fraction(&a, 10) - 0.2).abs() < 1e-15);
    }

    /// Exhaustive all-pairs scan, independent of the R-tree.
    fn brute_entries(data: &Dataset, layout: &PartitionLayout) -> Vec<(usize, u64)> {
        let mut v = Vec::new();
        for p in &layout.partitions {
            for o in data.objects() {
                if crate::geom::rect_intersects(&p.boundary, &o.mbr) {
                    v.push((p.id, o.id));
                }
            }
        }
        v.sort();
        v
    }

    #[test]
    fn matches_brute_force_for_every_algorithm() {
        for seed in 0..4u64 {
            let spec = GenSpec::clustered(600, 4, 0.05, 0.002, 0.05, seed);
            let data = generate(&spec).unwrap();
            for algo in Algorithm::ALL {
                let layout = partition(&data, algo, 25).unwrap();
                let a = masj_assign(&data, &layout).unwrap();
                let got: Vec<(usize, u64)> =
                    a.entries.iter().map(|e| (e.partition_id, e.object_id)).collect();
                assert_eq!(got, brute_entries(&data, &layout), "{algo}");
                // one home per object
                let mut homes = BTreeMap::new();
                for e in a.entries.iter().filter(|e| !e.is_replica) {
                    assert!(homes.insert(e.object_id, e.partition_id).is_none());
                }
                assert_eq!(homes.len(), data.len());
                if !algo.is_overlapping() {
                    for o in data.objects() {
                        let home = &layout.partitions[homes[&o.id]];
                        assert!(home.boundary.contains_point(o.mbr.centroid()));
                    }
                } else {
                    for p in &layout.partitions {
                        for id in &p.members {
                            assert_eq!(homes[id], p.id);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn replica_fraction_matches_recount_on_clustered_fg() {
        let data = generate(&GenSpec::clustered(2000, 5, 0.02, 0.001, 0.02, 7)).unwrap();
        let layout = partition_fg(&data, 20).unwrap();
        let a = masj_assign(&data, &layout).unwrap();
        let recount: usize = data
            .objects()
            .iter()
            .map(|o| layout.partitions.iter().filter(|p| p.boundary.intersects(&o.mbr)).count())
            .sum();
        let expected = (recount as f64 - 2000.0) / 2000.0;
        assert_eq!(replica_fraction(&a, 2000), expected);
    }
}
