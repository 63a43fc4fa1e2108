//! Partition a uniform sample, then stretch the layout over the full universe.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Axis, Dataset, Rect};
use crate::partition::{partition, Algorithm, PartitionLayout};

/// Sampling ratio, seed and the (covering) algorithm to run on the sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingConfig {
    pub gamma: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
}

impl SamplingConfig {
    pub fn new(gamma: f64, seed: u64, algorithm: Algorithm) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidConfig(alloc::format!(
                "gamma must be in (0, 1], got {gamma}"
            )));
        }
        if !matches!(algorithm, Algorithm::Bsp | Algorithm::Slc(_) | Algorithm::Bos) {
            return Err(Error::InvalidConfig(alloc::format!(
                "sampled partitioning supports BSP, SLC and BOS, not {algorithm}"
            )));
        }
        Ok(Self { gamma, seed, algorithm })
    }
}

/// `round(gamma * n)` objects drawn without replacement (ChaCha8 seeded from
/// `cfg.seed`), kept in their original order.
pub fn uniform_sample(data: &Dataset, cfg: &SamplingConfig) -> Result<Dataset> {
    let n = data.len();
    let size = libm::round(cfg.gamma * n as f64) as usize;
    if size == 0 {
        return Err(Error::SampleTooSmall);
    }
    let size = size.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut picked = rand::seq::index::sample(&mut rng, n, size).into_vec();
    picked.sort_unstable();
    let objects = picked.into_iter().map(|i| data.objects()[i].clone()).collect();
    Dataset::from_unique(objects)
}

/// Payload handed to the partitioner for a sample: `max(1, round(gamma * b))`.
pub fn scaled_payload(gamma: f64, b: usize) -> usize {
    (libm::round(gamma * b as f64) as usize).max(1)
}

pub fn sample_partition(data: &Dataset, cfg: &SamplingConfig, b: usize) -> Result<PartitionLayout> {
    if b == 0 {
        return Err(Error::InvalidPayload);
    }
    let sample = uniform_sample(data, cfg)?;
    let mut layout = partition(&sample, cfg.algorithm, scaled_payload(cfg.gamma, b))?;
    stretch_to_universe(&mut layout, &sample.universe(), &data.universe());
    layout.sampling_gamma = Some(cfg.gamma);
    Ok(layout)
}

/// Moves partition edges lying on the sample universe's boundary out to the
/// full universe's boundary.
///
/// Zero-extent partitions sitting on the boundary stay put (their
/// positive-extent neighbours absorb the margin) unless the sample itself has
/// zero extent on that axis.
pub fn stretch_to_universe(layout: &mut PartitionLayout, sample: &Rect, full: &Rect) {
    for axis in [Axis::X, Axis::Y] {
        let flat_sample = sample.min(axis) == sample.max(axis);
        for p in &mut layout.partitions {
            let b = &mut p.boundary;
            if b.min(axis) == b.max(axis) && !flat_sample {
                continue;
            }
            if b.min(axis) == sample.min(axis) {
                b.set_min(axis, full.min(axis));
            }
            if b.max(axis) == sample.max(axis) {
                b.set_max(axis, full.max(axis));
            }
        }
    }
}

/// Ids of the sampled objects, in order. Handy for tests and reports.
pub fn sample_ids(sample: &Dataset) -> Vec<u64> {
    sample.objects().iter().map(|o| o.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::masj::masj_assign;
    use crate::partition::test_support::*;
    use crate::synth::{generate, GenSpec};
    use alloc::collections::BTreeSet;

    #[test]
    fn full_ratio_is_identity() {
        let data = generate(&GenSpec::uniform(300, 0.001, 0.01, 4)).unwrap();
        let cfg = SamplingConfig::new(1.0, 9, Algorithm::Bsp).unwrap();
        assert_eq!(uniform_sample(&data, &cfg).unwrap(), data);
        for algo in [Algorithm::Bsp, Algorithm::Slc(Axis::Y), Algorithm::Bos] {
            let cfg = SamplingConfig::new(1.0, 9, algo).unwrap();
            let sampled = sample_partition(&data, &cfg, 17).unwrap();
            assert!(sampled.same_partitions(&partition(&data, algo, 17).unwrap()));
        }
    }

    #[test]
    fn half_sample_has_exact_size_and_is_a_subset() {
        let data = generate(&GenSpec::uniform(100, 0.001, 0.01, 4)).unwrap();
        let cfg = SamplingConfig::new(0.5, 1, Algorithm::Slc(Axis::X)).unwrap();
        let s = uniform_sample(&data, &cfg).unwrap();
        assert_eq!(s.len(), 50);
        let all: BTreeSet<u64> = sample_ids(&data).into_iter().collect();
        let ids = sample_ids(&s);
        assert!(ids.iter().all(|i| all.contains(i)));
        assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), 50);
        assert_eq!(uniform_sample(&data, &cfg).unwrap(), s);
    }

    #[test]
    fn rejects_bad_configs_and_tiny_samples() {
        assert!(SamplingConfig::new(0.0, 0, Algorithm::Bsp).is_err());
        assert!(SamplingConfig::new(1.5, 0, Algorithm::Bsp).is_err());
        assert!(SamplingConfig::new(0.5, 0, Algorithm::Hc).is_err());
        assert!(SamplingConfig::new(0.5, 0, Algorithm::Str).is_err());
        assert!(SamplingConfig::new(0.5, 0, Algorithm::Fg).is_err());
        let data = points(&[(0., 0.), (1., 1.)]);
        let cfg = SamplingConfig::new(0.1, 0, Algorithm::Bsp).unwrap();
        assert_eq!(uniform_sample(&data, &cfg), Err(Error::SampleTooSmall));
    }

    #[test]
    fn payload_scaling() {
        assert_eq!(scaled_payload(0.1, 1000), 100);
        assert_eq!(scaled_payload(0.01, 10), 1);
        assert_eq!(scaled_payload(1.0, 7), 7);
        let data = generate(&GenSpec::uniform(5000, 0.001, 0.001, 2)).unwrap();
        let cfg = SamplingConfig::new(0.1, 3, Algorithm::Bsp).unwrap();
        assert_eq!(sample_partition(&data, &cfg, 1000).unwrap().payload, 100);
    }

    #[test]
    fn stretched_layouts_cover_the_full_universe() {
        for seed in 0..5 {
            let data = generate(&GenSpec::clustered(3000, 3, 0.05, 1e-4, 1e-2, seed)).unwrap();
            for algo in
                [Algorithm::Bsp, Algorithm::Slc(Axis::X), Algorithm::Slc(Axis::Y), Algorithm::Bos]
            {
                let cfg = SamplingConfig::new(0.05, seed, algo).unwrap();
                let layout = sample_partition(&data, &cfg, 100).unwrap();
                assert_tiles(&layout, data.universe());
                masj_assign(&data, &layout).expect("no coverage violation");
            }
        }
    }

    #[test]
    fn zero_width_edge_partitions_stay_tiling() {
        // two points on the sample's left edge give a zero-width first strip
        let data = points(&[(0., 0.), (0., 1.), (1., 1.), (2., 0.5), (3., 1.), (-1., 0.)]);
        let sample = Dataset::from_unique(data.objects()[..5].to_vec()).unwrap();
        let mut layout = partition(&sample, Algorithm::Slc(Axis::X), 1).unwrap();
        let flat = layout.partitions.iter().filter(|p| p.boundary.width() == 0.0).count();
        assert!(flat > 0);
        stretch_to_universe(&mut layout, &sample.universe(), &data.universe());
        assert_tiles(&layout, data.universe());
        masj_assign(&data, &layout).unwrap();
    }
}
