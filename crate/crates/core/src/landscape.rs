//! Persistence landscapes sampled on a uniform grid, Gaussian smoothing, and
//! local-maximum counting.
//!
//! Each finite diagram point `(b, d)` becomes a tent that rises with slope
//! one from `b`, peaks at `(b + d) / 2` with height `(d - b) / 2`, and falls
//! back to zero at `d`. Layer `m` of a landscape is the pointwise `m`-th
//! largest tent value. Essential points are cut off at a finite `cap`.
//!
//! Smoothing widths are measured in grid samples, not in filtration units,
//! so changing the resolution changes the effective smoothing scale.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::uniform_grid;
use crate::persistence::PersistenceDiagram;

/// Default grid resolution.
pub const DEFAULT_RESOLUTION: usize = 1000;
/// Default Gaussian width in grid samples.
pub const DEFAULT_SIGMA: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TentFunction {
    birth: f64,
    death: f64,
}

impl TentFunction {
    pub fn new(birth: f64, death: f64) -> Result<Self> {
        if !birth.is_finite() || !death.is_finite() || birth >= death {
            return Err(Error::DegeneratePair { birth, death });
        }
        Ok(Self { birth, death })
    }

    pub fn birth(&self) -> f64 {
        self.birth
    }

    pub fn death(&self) -> f64 {
        self.death
    }

    /// `(midpoint, height)`.
    pub fn peak(&self) -> (f64, f64) {
        (
            (self.birth + self.death) / 2.0,
            (self.death - self.birth) / 2.0,
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mid = (self.birth + self.death) / 2.0;
        if x <= self.birth || x >= self.death {
            0.0
        } else if x <= mid {
            x - self.birth
        } else {
            self.death - x
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PersistenceLandscape {
    pub k: usize,
    pub grid: Vec<f64>,
    /// `layers[m][i]` is the `(m + 1)`-th largest tent value at `grid[i]`.
    pub layers: Vec<Vec<f64>>,
    /// Finite stand-in for infinite deaths.
    pub cap: f64,
}

impl PersistenceLandscape {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("landscape always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let pl: Self = serde_json::from_str(text)?;
        if pl.layers.iter().any(|l| l.len() != pl.grid.len()) {
            return Err(Error::InvalidParams(
                "every landscape layer must match the grid length".into(),
            ));
        }
        Ok(pl)
    }
}

/// Samples the landscape of `dg` at `resolution` points over `[0, cap]`.
pub fn build_landscape(dg: &PersistenceDiagram, resolution: usize, cap: f64) -> Result<PersistenceLandscape> {
    if resolution < 2 {
        return Err(Error::InvalidParams(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    if !(cap.is_finite() && cap >= 0.0) {
        return Err(Error::InvalidParams(format!("cap must be finite and non-negative, got {cap}")));
    }
    let grid = uniform_grid(0.0, cap, resolution);
    build_landscape_on(dg, &grid, cap)
}

/// Same as [`build_landscape`] on an explicit ascending grid.
pub fn build_landscape_on(dg: &PersistenceDiagram, grid: &[f64], cap: f64) -> Result<PersistenceLandscape> {
    let tents: Vec<TentFunction> = dg
        .points
        .iter()
        .filter_map(|p| TentFunction::new(p.birth, p.death.unwrap_or(cap)).ok())
        .collect();

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(grid.len());
    let mut depth = 0;
    for &x in grid {
        let mut values: Vec<f64> = tents.iter().map(|t| t.eval(x)).filter(|&v| v > 0.0).collect();
        values.sort_by(|a, b| b.total_cmp(a));
        depth = depth.max(values.len());
        columns.push(values);
    }
    let layers = (0..depth)
        .map(|m| columns.iter().map(|c| c.get(m).copied().unwrap_or(0.0)).collect())
        .collect();
    Ok(PersistenceLandscape {
        k: dg.k,
        grid: grid.to_vec(),
        layers,
        cap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    /// Standard deviation in grid samples.
    pub sigma: f64,
}

impl Default for SmoothingParams {
    fn default() -> Self {
        Self { sigma: DEFAULT_SIGMA }
    }
}

impl SmoothingParams {
    /// Gaussian weights on `-r..=r` with `r = ceil(4 sigma)`, summing to one.
    pub fn kernel(&self) -> Result<Vec<f64>> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        let radius = (4.0 * self.sigma).ceil() as isize;
        let norm = 1.0 / (2.0 * std::f64::consts::PI * self.sigma * self.sigma).sqrt();
        let mut w: Vec<f64> = (-radius..=radius)
            .map(|x| norm * (-(x * x) as f64 / (2.0 * self.sigma * self.sigma)).exp())
            .collect();
        let total: f64 = w.iter().sum();
        for v in &mut w {
            *v /= total;
        }
        Ok(w)
    }
}

/// Convolves every layer with the Gaussian kernel, replicating edge samples.
pub fn smooth(pl: &PersistenceLandscape, sp: &SmoothingParams) -> Result<PersistenceLandscape> {
    let kernel = sp.kernel()?;
    let layers = pl.layers.iter().map(|l| convolve_replicate(l, &kernel)).collect();
    Ok(PersistenceLandscape {
        k: pl.k,
        grid: pl.grid.clone(),
        layers,
        cap: pl.cap,
    })
}

fn convolve_replicate(signal: &[f64], kernel: &[f64]) -> Vec<f64> {
    let n = signal.len() as isize;
    let r = (kernel.len() / 2) as isize;
    (0..n)
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .map(|(t, w)| {
                    let j = (i + t as isize - r).clamp(0, n - 1);
                    w * signal[j as usize]
                })
                .sum()
        })
        .collect()
}

/// Local maxima per homology dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximaCount {
    pub per_dimension: BTreeMap<usize, usize>,
}

impl MaximaCount {
    pub fn get(&self, k: usize) -> usize {
        self.per_dimension.get(&k).copied().unwrap_or(0)
    }

    /// Counts for `0..=max_k`, zero where a dimension is absent.
    pub fn to_vec(&self, max_k: usize) -> Vec<usize> {
        (0..=max_k).map(|k| self.get(k)).collect()
    }
}

/// Interior local maxima of one sampled curve: maximal runs of equal values
/// strictly above both neighbouring samples, each run counted once.
pub fn local_maxima(values: &[f64], min_height: f64) -> Vec<usize> {
    let mut out = Vec::new();
    let n = values.len();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && values[end + 1] == values[start] {
            end += 1;
        }
        let v = values[start];
        if start > 0 && end + 1 < n && v > values[start - 1] && v > values[end + 1] && v >= min_height {
            out.push((start + end) / 2);
        }
        start = end + 1;
    }
    out
}

/// Total interior local maxima over all layers of one landscape.
pub fn count_landscape_maxima(pl: &PersistenceLandscape, min_height: f64) -> usize {
    pl.layers.iter().map(|l| local_maxima(l, min_height).len()).sum()
}

/// Sums maxima over layers, grouped by homology dimension.
pub fn count_maxima(landscapes: &[PersistenceLandscape], min_height: f64) -> MaximaCount {
    let mut per_dimension = BTreeMap::new();
    for pl in landscapes {
        *per_dimension.entry(pl.k).or_insert(0) += count_landscape_maxima(pl, min_height);
    }
    MaximaCount { per_dimension }
}
