//! `pipeline`: sample or load → persist → estimate → plot, every stage
//! writing its artifact into the output directory. A failing stage leaves
//! the earlier artifacts in place plus a `FAILED` marker.

use std::path::Path;

use homodim::dimension::{DecompositionEstimate, SingleTorusFit};
use serde::Serialize;

use crate::commands::{
    cmd_estimate, cmd_persist, cmd_plot, landscape_file, load_cloud, to_json, write_cloud,
    EstimateArgs, PersistArgs, Timings, DIAGRAM_FILE, LOG_FILE,
};
use crate::config::PipelineConfig;
use crate::{write_output, Failure};

pub const POINTS_FILE: &str = "points.csv";
pub const CONFIG_FILE: &str = "config.toml";
pub const SUMMARY_FILE: &str = "summary.json";
pub const FAILED_FILE: &str = "FAILED";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub n_points: usize,
    pub max_dim: usize,
    pub max_edge: f64,
    pub cap: f64,
    pub max_homology_dim: usize,
    pub counts: Vec<u64>,
    pub estimate: DecompositionEstimate,
    pub single_torus: SingleTorusFit,
}

/// Runs every stage; on error writes `FAILED` (stage and message) and
/// returns the error.
pub fn cmd_pipeline(cfg: &PipelineConfig) -> Result<Summary, Failure> {
    cfg.validate()?;
    let out = cfg.out.as_path();
    std::fs::create_dir_all(out)
        .map_err(|e| Failure::internal(e).context(format!("creating {}", out.display())))?;
    let marker = out.join(FAILED_FILE);
    if marker.exists() {
        std::fs::remove_file(&marker).map_err(Failure::internal)?;
    }
    let mut stage = "sample";
    let result = run_stages(cfg, out, &mut stage);
    if let Err(err) = &result {
        // Best effort: the original error matters more than the marker.
        let _ = std::fs::write(&marker, format!("stage: {stage}\nexit: {}\nerror: {err}\n", err.code));
    }
    result
}

fn run_stages(cfg: &PipelineConfig, out: &Path, stage: &mut &'static str) -> Result<Summary, Failure> {
    let mut timings = Timings::default();
    write_output(&out.join(CONFIG_FILE), &cfg.to_toml())?;

    *stage = "sample";
    let cloud = match (&cfg.input, &cfg.manifold) {
        (Some(path), _) => load_cloud(path)?,
        (None, Some(m)) => timings.time("sample", || -> Result<_, Failure> {
            Ok(homodim::manifold::sample_manifold(&m.spec(cfg.seed)?)?)
        })?,
        (None, None) => unreachable!("validated"),
    };
    let points = out.join(POINTS_FILE);
    write_cloud(&points, &cloud)?;

    *stage = "persist";
    let persisted = cmd_persist(&PersistArgs {
        input: points,
        max_dim: cfg.max_dim,
        max_edge: cfg.max_edge,
        budget: cfg.budget,
        write_filtration: false,
        out: out.to_path_buf(),
    })?;
    timings.0.extend(persisted.timings.0);
    let manifest = persisted.manifest;

    *stage = "estimate";
    let top = cfg
        .max_homology_dim
        .unwrap_or(manifest.max_dim.saturating_sub(1))
        .max(1);
    let estimated = timings.time("estimate", || {
        cmd_estimate(&EstimateArgs {
            input: out.join(DIAGRAM_FILE),
            cap: Some(manifest.max_filtration_value).filter(|&c| c > 0.0),
            resolution: cfg.resolution,
            sigma: cfg.sigma,
            min_height: cfg.min_height,
            q_max: cfg.q_max,
            max_homology_dim: Some(top),
            out: Some(out.to_path_buf()),
        })
    })?;

    *stage = "plot";
    cmd_plot(&out.join(DIAGRAM_FILE), &out.join("diagram.svg"), Some(top))?;
    for pl in &estimated.landscapes {
        let json = out.join(landscape_file(pl.k));
        cmd_plot(&json, &json.with_extension("svg"), None)?;
    }

    let summary = Summary {
        n_points: manifest.n_points,
        max_dim: manifest.max_dim,
        max_edge: manifest.max_edge,
        cap: estimated.counts.cap,
        max_homology_dim: top,
        counts: estimated.counts.counts,
        estimate: estimated.estimate,
        single_torus: estimated.single_torus,
    };
    write_output(&out.join(SUMMARY_FILE), &to_json(&summary))?;
    write_output(&out.join(LOG_FILE), &timings.render())?;
    Ok(summary)
}
