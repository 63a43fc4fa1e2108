//! Seeded synthetic datasets on the unit square.
//!
//! Two regimes: `Uniform` scatters small objects evenly; `Clustered` draws
//! centroids from Gaussians around a few hotspots. Edge lengths are
//! log-uniform in `[size_min, size_max]`. The generator is ChaCha8 seeded via
//! `SeedableRng::seed_from_u64`, so a seed yields the same dataset on every
//! platform.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geom::{Dataset, Rect, SpatialObject};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    Uniform,
    Clustered,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub mode: GenMode,
    /// clustered mode only
    pub hotspots: usize,
    /// Gaussian scale around each hotspot, clustered mode only
    pub cluster_spread: f64,
    pub size_min: f64,
    pub size_max: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn uniform(n: usize, size_min: f64, size_max: f64, seed: u64) -> Self {
        Self {
            n,
            mode: GenMode::Uniform,
            hotspots: 0,
            cluster_spread: 0.0,
            size_min,
            size_max,
            seed,
        }
    }

    pub fn clustered(
        n: usize,
        hotspots: usize,
        cluster_spread: f64,
        size_min: f64,
        size_max: f64,
        seed: u64,
    ) -> Self {
        Self { n, mode: GenMode::Clustered, hotspots, cluster_spread, size_min, size_max, seed }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        if !(self.size_min > 0.0 && self.size_min <= self.size_max && self.size_max.is_finite()) {
            return bad("sizes need 0 < size_min <= size_max");
        }
        if self.mode == GenMode::Clustered {
            if self.hotspots == 0 {
                return bad("clustered mode needs at least one hotspot");
            }
            if !(self.cluster_spread > 0.0 && self.cluster_spread.is_finite()) {
                return bad("cluster spread must be positive");
            }
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (ln_lo, ln_hi) = (libm::log(spec.size_min), libm::log(spec.size_max));
    let edge = |rng: &mut ChaCha8Rng| {
        if spec.size_min == spec.size_max {
            spec.size_min
        } else {
            libm::exp(rng.random_range(ln_lo..=ln_hi))
        }
    };

    let hotspots: Vec<(f64, f64)> = match spec.mode {
        GenMode::Uniform => Vec::new(),
        GenMode::Clustered => (0..spec.hotspots).map(|_| (rng.random(), rng.random())).collect(),
    };
    let normal = Normal::new(0.0, spec.cluster_spread.max(f64::MIN_POSITIVE))
        .map_err(|e| Error::InvalidConfig(alloc::format!("{e}")))?;

    let mut objects = Vec::with_capacity(spec.n);
    for id in 0..spec.n {
        let (cx, cy) = match spec.mode {
            GenMode::Uniform => (rng.random::<f64>(), rng.random::<f64>()),
            GenMode::Clustered => {
                let (hx, hy) = hotspots[rng.random_range(0..hotspots.len())];
                let dx = normal.sample(&mut rng);
                let dy = normal.sample(&mut rng);
                ((hx + dx).clamp(0.0, 1.0), (hy + dy).clamp(0.0, 1.0))
            }
        };
        let (w, h) = (edge(&mut rng), edge(&mut rng));
        let mbr = Rect {
            min_x: (cx - w / 2.0).clamp(0.0, 1.0),
            min_y: (cy - h / 2.0).clamp(0.0, 1.0),
            max_x: (cx + w / 2.0).clamp(0.0, 1.0),
            max_y: (cy + h / 2.0).clamp(0.0, 1.0),
        };
        objects.push(SpatialObject::new(id as u64, mbr));
    }
    Dataset::from_unique(objects)
}
