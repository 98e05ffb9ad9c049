//! Synthetic samples from products of circles, lines and spheres.
//!
//! A product of `q` circles and `p` lines lives in `R^(2q + p)`: circle `i`
//! occupies coordinates `2i, 2i + 1`, the line factors follow. Lines are
//! sampled on the window `[0, 1]`.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointcloud::PointCloud;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldKind {
    /// The unit circle in `R^2`.
    Circle,
    /// `q` circles, in `R^(2q)`.
    TorusProduct { q: usize },
    /// `p` lines, in `R^p`.
    EuclideanFactor { p: usize },
    /// `q` circles times `p` lines.
    Product { q: usize, p: usize },
    /// The unit sphere `S^dim` in `R^(dim + 1)`.
    Sphere { dim: usize },
}

impl ManifoldKind {
    /// `(circle count, line count)` for the product kinds; `None` for spheres.
    pub fn factors(&self) -> Option<(usize, usize)> {
        match *self {
            ManifoldKind::Circle => Some((1, 0)),
            ManifoldKind::TorusProduct { q } => Some((q, 0)),
            ManifoldKind::EuclideanFactor { p } => Some((0, p)),
            ManifoldKind::Product { q, p } => Some((q, p)),
            ManifoldKind::Sphere { .. } => None,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.factors() {
            Some((q, p)) => 2 * q + p,
            None => match *self {
                ManifoldKind::Sphere { dim } => dim + 1,
                _ => unreachable!(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldSpec {
    pub kind: ManifoldKind,
    pub n_samples: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl ManifoldSpec {
    pub fn new(kind: ManifoldKind, n_samples: usize) -> Self {
        Self {
            kind,
            n_samples,
            noise_sigma: 0.0,
            seed: 0,
        }
    }

    pub fn noise(mut self, sigma: f64) -> Self {
        self.noise_sigma = sigma;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidSpec("n_samples must be at least 1".into()));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "noise_sigma must be finite and non-negative, got {}",
                self.noise_sigma
            )));
        }
        match self.kind.factors() {
            Some((0, 0)) => Err(Error::InvalidSpec(
                "a product needs at least one circle or line factor".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Draws `n_samples` points; the output depends only on the spec.
pub fn sample_manifold(spec: &ManifoldSpec) -> Result<PointCloud> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.kind.ambient_dim();
    let mut coords = Vec::with_capacity(spec.n_samples * d);
    for _ in 0..spec.n_samples {
        match spec.kind.factors() {
            Some((q, p)) => {
                for _ in 0..q {
                    let theta = rng.random_range(0.0..TAU);
                    coords.push(theta.cos());
                    coords.push(theta.sin());
                }
                for _ in 0..p {
                    coords.push(rng.random_range(0.0..=1.0));
                }
            }
            None => {
                let start = coords.len();
                let mut norm2 = 0.0;
                while norm2 == 0.0 {
                    coords.truncate(start);
                    norm2 = 0.0;
                    for _ in 0..d {
                        let g: f64 = StandardNormal.sample(&mut rng);
                        norm2 += g * g;
                        coords.push(g);
                    }
                }
                let norm = norm2.sqrt();
                for c in &mut coords[start..] {
                    *c /= norm;
                }
            }
        }
    }
    if spec.noise_sigma > 0.0 {
        let noise = Normal::new(0.0, spec.noise_sigma)
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        for c in &mut coords {
            *c += noise.sample(&mut rng);
        }
    }
    PointCloud::from_flat(coords, d)
}
