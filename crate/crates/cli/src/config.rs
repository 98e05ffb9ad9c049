//! Pipeline configuration: a TOML file whose keys mirror the command-line
//! flags. Unknown keys are rejected; flags override file values.

use std::path::{Path, PathBuf};

use homodim::dimension::DEFAULT_Q_MAX;
use homodim::filtration::DEFAULT_BUDGET;
use homodim::landscape::{DEFAULT_RESOLUTION, DEFAULT_SIGMA};
use homodim::manifold::{ManifoldKind, ManifoldSpec};
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Default expansion dimension before clamping to `n - 1`.
pub const DEFAULT_MAX_DIM: usize = 10;

/// Manifold sampling section (`[manifold]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    pub kind: KindName,
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub p: usize,
    /// Sphere dimension.
    #[serde(default = "default_sphere_dim")]
    pub dim: usize,
    pub n: usize,
    #[serde(default)]
    pub noise: f64,
}

fn default_sphere_dim() -> usize {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Circle,
    Torus,
    Line,
    Product,
    Sphere,
}

impl SampleConfig {
    pub fn manifold_kind(&self) -> Result<ManifoldKind, Failure> {
        Ok(match self.kind {
            KindName::Circle => ManifoldKind::Circle,
            KindName::Torus => ManifoldKind::TorusProduct { q: self.q.max(1) },
            KindName::Line => ManifoldKind::EuclideanFactor { p: self.p.max(1) },
            KindName::Product => {
                if self.q == 0 && self.p == 0 {
                    return Err(Failure::usage("product needs --q or --p to be positive"));
                }
                ManifoldKind::Product { q: self.q, p: self.p }
            }
            KindName::Sphere => ManifoldKind::Sphere { dim: self.dim },
        })
    }

    pub fn spec(&self, seed: u64) -> Result<ManifoldSpec, Failure> {
        Ok(ManifoldSpec::new(self.manifold_kind()?, self.n)
            .noise(self.noise)
            .seed(seed))
    }
}

/// Everything `pipeline` needs. Exactly one of `input` and `manifold` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<SampleConfig>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_max_dim")]
    pub max_dim: usize,
    /// `None` means the diameter of the cloud.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edge: Option<f64>,
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default)]
    pub min_height: f64,
    #[serde(default = "default_q_max")]
    pub q_max: u64,
    /// Highest homology dimension that is counted; `None` means `max_dim - 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_homology_dim: Option<usize>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_max_dim() -> usize {
    DEFAULT_MAX_DIM
}
fn default_budget() -> usize {
    DEFAULT_BUDGET
}
fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}
fn default_sigma() -> f64 {
    DEFAULT_SIGMA
}
fn default_q_max() -> u64 {
    DEFAULT_Q_MAX
}
fn default_out() -> PathBuf {
    PathBuf::from("homodim-run")
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            input: None,
            manifold: None,
            seed: 0,
            max_dim: DEFAULT_MAX_DIM,
            max_edge: None,
            budget: DEFAULT_BUDGET,
            resolution: DEFAULT_RESOLUTION,
            sigma: DEFAULT_SIGMA,
            min_height: 0.0,
            q_max: DEFAULT_Q_MAX,
            max_homology_dim: None,
            out: default_out(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self, Failure> {
        toml::from_str(text).map_err(|e| Failure::usage(format!("invalid config: {}", e.to_string().trim_end())))
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }

    pub fn validate(&self) -> Result<(), Failure> {
        match (&self.input, &self.manifold) {
            (Some(_), Some(_)) => {
                return Err(Failure::usage("config sets both `input` and `[manifold]`"))
            }
            (None, None) => return Err(Failure::usage("config needs `input` or `[manifold]`")),
            _ => {}
        }
        if let Some(e) = self.max_edge {
            if !e.is_finite() || e <= 0.0 {
                return Err(Failure::usage(format!("max_edge must be positive, got {e}")));
            }
        }
        if self.resolution < 2 {
            return Err(Failure::usage("resolution must be at least 2"));
        }
        if !self.sigma.is_finite() || self.sigma < 0.0 {
            return Err(Failure::usage(format!("sigma must be non-negative, got {}", self.sigma)));
        }
        if self.min_height.is_nan() || self.min_height < 0.0 {
            return Err(Failure::usage("min_height must be non-negative"));
        }
        if self.q_max < 1 {
            return Err(Failure::usage("q_max must be at least 1"));
        }
        Ok(())
    }
}

/// Flag values given next to `--config`; `Some` wins over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub input: Option<PathBuf>,
    pub kind: Option<KindName>,
    pub q: Option<usize>,
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub noise: Option<f64>,
    pub seed: Option<u64>,
    pub max_dim: Option<usize>,
    pub max_edge: Option<f64>,
    pub resolution: Option<usize>,
    pub sigma: Option<f64>,
    pub min_height: Option<f64>,
    pub q_max: Option<u64>,
    pub max_homology_dim: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut PipelineConfig) -> Result<(), Failure> {
        if let Some(input) = &self.input {
            cfg.input = Some(input.clone());
            cfg.manifold = None;
        }
        let touches_manifold = self.kind.is_some()
            || self.q.is_some()
            || self.p.is_some()
            || self.n.is_some()
            || self.noise.is_some();
        if touches_manifold {
            if cfg.manifold.is_none() {
                let kind = self
                    .kind
                    .ok_or_else(|| Failure::usage("--kind is required to sample without a config"))?;
                let n = self
                    .n
                    .ok_or_else(|| Failure::usage("--n is required to sample without a config"))?;
                cfg.manifold = Some(SampleConfig {
                    kind,
                    q: 0,
                    p: 0,
                    dim: default_sphere_dim(),
                    n,
                    noise: 0.0,
                });
                cfg.input = None;
            }
            let m = cfg.manifold.as_mut().expect("set above");
            if let Some(v) = self.kind {
                m.kind = v;
            }
            if let Some(v) = self.q {
                m.q = v;
            }
            if let Some(v) = self.p {
                m.p = v;
            }
            if let Some(v) = self.n {
                m.n = v;
            }
            if let Some(v) = self.noise {
                m.noise = v;
            }
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.max_dim {
            cfg.max_dim = v;
        }
        if let Some(v) = self.max_edge {
            cfg.max_edge = Some(v);
        }
        if let Some(v) = self.resolution {
            cfg.resolution = v;
        }
        if let Some(v) = self.sigma {
            cfg.sigma = v;
        }
        if let Some(v) = self.min_height {
            cfg.min_height = v;
        }
        if let Some(v) = self.q_max {
            cfg.q_max = v;
        }
        if let Some(v) = self.max_homology_dim {
            cfg.max_homology_dim = Some(v);
        }
        if let Some(v) = &self.out {
            cfg.out = v.clone();
        }
        Ok(())
    }
}
