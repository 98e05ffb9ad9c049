//! One function per subcommand. Each reads its declared input files and
//! writes its declared outputs, so stages can be rerun independently.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use homodim::dimension::{estimate_with, single_torus_fit, DecompositionEstimate, HomologyCounts, SingleTorusFit};
use homodim::filtration::{build_filtration, FiltrationParams};
use homodim::landscape::{build_landscape, count_maxima, smooth, PersistenceLandscape, SmoothingParams};
use homodim::manifold::sample_manifold;
use homodim::persistence::{diagram, diagrams_from_json, diagrams_to_json, persistence_pairs, PersistenceDiagram};
use homodim::pointcloud::{pairwise_distances, parse_csv, parse_json, PointCloud, PointFormat};
use serde::{Deserialize, Serialize};

use crate::config::SampleConfig;
use crate::report::render_report;
use crate::svg::{diagram_svg, landscape_svg};
use crate::{read_input, write_output, Failure};

pub const DIAGRAM_FILE: &str = "diagram.json";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const FILTRATION_FILE: &str = "filtration.jsonl";
pub const ESTIMATE_FILE: &str = "estimate.json";
pub const COUNTS_FILE: &str = "counts.json";
pub const REPORT_FILE: &str = "report.txt";
pub const LOG_FILE: &str = "run.log";

pub fn landscape_file(k: usize) -> String {
    format!("landscape_h{k}.json")
}

/// Wall-clock time per named step, kept out of the JSON artifacts.
#[derive(Debug, Clone, Default)]
pub struct Timings(pub Vec<(String, Duration)>);

impl Timings {
    pub fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push((name.to_string(), start.elapsed()));
        out
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (name, d) in &self.0 {
            let _ = writeln!(s, "{name}: {:.3} ms", d.as_secs_f64() * 1e3);
        }
        s
    }
}

pub fn load_cloud(path: &Path) -> Result<PointCloud, Failure> {
    let text = read_input(path)?;
    let cloud = match PointFormat::from_path(path) {
        PointFormat::Csv => parse_csv(&text),
        PointFormat::Json => parse_json(&text),
    };
    cloud.map_err(|e| Failure::from(e).context(format!("reading points from {}", path.display())))
}

pub fn write_cloud(path: &Path, cloud: &PointCloud) -> Result<(), Failure> {
    let text = match PointFormat::from_path(path) {
        PointFormat::Csv => cloud.to_csv(),
        PointFormat::Json => cloud.to_json(),
    };
    write_output(path, &text)
}

/// `sample`: draws points and writes them as CSV, or JSON for a `.json` path.
pub fn cmd_sample(sample: &SampleConfig, seed: u64, out: &Path) -> Result<PointCloud, Failure> {
    let cloud = sample_manifold(&sample.spec(seed)?)?;
    write_cloud(out, &cloud)?;
    Ok(cloud)
}

#[derive(Debug, Clone)]
pub struct PersistArgs {
    pub input: PathBuf,
    pub max_dim: usize,
    /// `None` means the diameter of the cloud.
    pub max_edge: Option<f64>,
    pub budget: usize,
    pub write_filtration: bool,
    pub out: PathBuf,
}

/// Deterministic record of a `persist` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub input: String,
    pub n_points: usize,
    pub ambient_dim: usize,
    pub duplicate_pairs: usize,
    pub max_dim_requested: usize,
    pub max_dim: usize,
    pub max_edge: f64,
    pub budget: usize,
    pub simplex_counts: Vec<usize>,
    pub total_simplices: usize,
    pub pairs: usize,
    pub max_filtration_value: f64,
}

#[derive(Debug, Clone)]
pub struct PersistOutput {
    pub diagrams: Vec<PersistenceDiagram>,
    pub manifest: Manifest,
    pub timings: Timings,
}

/// `persist`: points → Rips filtration → diagrams for dimensions
/// `0..=max_dim`. Writes the diagram, the manifest and a timing log.
pub fn cmd_persist(args: &PersistArgs) -> Result<PersistOutput, Failure> {
    let mut timings = Timings::default();
    let cloud = load_cloud(&args.input)?;
    let dups = cloud.duplicates();
    if !dups.is_empty() {
        eprintln!(
            "warning: {} duplicate point pair(s), first ({}, {})",
            dups.len(),
            dups[0].0,
            dups[0].1
        );
    }
    let dm = timings.time("distances", || pairwise_distances(&cloud));
    let max_edge = match args.max_edge {
        Some(e) => e,
        None if dm.diameter() > 0.0 => dm.diameter(),
        None => 1.0,
    };
    let max_dim = args.max_dim.min(cloud.len().saturating_sub(1));
    let params = FiltrationParams::new(max_dim, max_edge).with_budget(args.budget);
    let f = timings.time("filtration", || build_filtration(&dm, &params))?;
    let pairs = timings.time("reduction", || persistence_pairs(&f))?;
    let diagrams: Vec<PersistenceDiagram> = (0..=max_dim).map(|k| diagram(&pairs, k)).collect();

    let manifest = Manifest {
        input: args.input.display().to_string(),
        n_points: cloud.len(),
        ambient_dim: cloud.dim(),
        duplicate_pairs: dups.len(),
        max_dim_requested: args.max_dim,
        max_dim,
        max_edge,
        budget: args.budget,
        simplex_counts: f.counts_by_dim(),
        total_simplices: f.len(),
        pairs: pairs.len(),
        max_filtration_value: f.max_value(),
    };

    write_output(&args.out.join(DIAGRAM_FILE), &diagrams_to_json(&diagrams))?;
    write_output(&args.out.join(MANIFEST_FILE), &to_json(&manifest))?;
    if args.write_filtration {
        let mut buf = Vec::new();
        f.write_json_lines(&mut buf)?;
        write_output(
            &args.out.join(FILTRATION_FILE),
            std::str::from_utf8(&buf).map_err(Failure::internal)?,
        )?;
    }
    write_output(&args.out.join(LOG_FILE), &timings.render())?;
    Ok(PersistOutput {
        diagrams,
        manifest,
        timings,
    })
}

#[derive(Debug, Clone)]
pub struct EstimateArgs {
    pub input: PathBuf,
    /// Stand-in for infinite deaths; see [`resolve_cap`].
    pub cap: Option<f64>,
    pub resolution: usize,
    pub sigma: f64,
    pub min_height: f64,
    pub q_max: u64,
    /// Highest dimension counted; `None` means one below the manifest's
    /// `max_dim`, or every dimension in the input without a manifest.
    pub max_homology_dim: Option<usize>,
    /// Directory for artifacts; `None` only prints the report.
    pub out: Option<PathBuf>,
}

/// Counts and the parameters they were taken with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountsRecord {
    pub cap: f64,
    pub resolution: usize,
    pub sigma: f64,
    pub min_height: f64,
    pub counts: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct EstimateOutput {
    pub landscapes: Vec<PersistenceLandscape>,
    pub counts: CountsRecord,
    pub estimate: DecompositionEstimate,
    pub single_torus: SingleTorusFit,
    pub report: String,
}

/// The `manifest.json` written by `persist` next to a diagram, if any.
pub fn sibling_manifest(diagram_path: &Path) -> Result<Option<Manifest>, Failure> {
    let path = diagram_path.with_file_name(MANIFEST_FILE);
    if !path.is_file() {
        return Ok(None);
    }
    serde_json::from_str(&read_input(&path)?)
        .map(Some)
        .map_err(|e| Failure::usage(format!("bad manifest {}: {e}", path.display())))
}

/// `--cap`, else `max_filtration_value` of the sibling manifest, else the
/// largest finite diagram value (1 if that is 0).
pub fn resolve_cap(
    explicit: Option<f64>,
    diagram_path: &Path,
    diagrams: &[PersistenceDiagram],
) -> Result<f64, Failure> {
    if let Some(cap) = explicit {
        if !(cap > 0.0 && cap.is_finite()) {
            return Err(Failure::usage(format!("cap must be positive, got {cap}")));
        }
        return Ok(cap);
    }
    if let Some(m) = sibling_manifest(diagram_path)? {
        if m.max_filtration_value > 0.0 {
            return Ok(m.max_filtration_value);
        }
    }
    let max = diagrams
        .iter()
        .filter_map(PersistenceDiagram::max_finite_value)
        .fold(0.0, f64::max);
    Ok(if max > 0.0 { max } else { 1.0 })
}

/// `estimate`: diagrams → landscapes → smoothed maxima counts → estimate.
pub fn cmd_estimate(args: &EstimateArgs) -> Result<EstimateOutput, Failure> {
    let text = read_input(&args.input)?;
    let diagrams = diagrams_from_json(&text)
        .map_err(|e| Failure::from(e).context(format!("reading diagram {}", args.input.display())))?;
    let cap = resolve_cap(args.cap, &args.input, &diagrams)?;
    // The expansion dimension itself has no cofaces to kill its cycles.
    let top = match args.max_homology_dim {
        Some(top) => top,
        None => match sibling_manifest(&args.input)? {
            Some(m) => m.max_dim.saturating_sub(1),
            None => diagrams.len().saturating_sub(1),
        },
    }
    .max(1);

    let smoothing = SmoothingParams { sigma: args.sigma };
    let mut landscapes = Vec::with_capacity(top + 1);
    let mut smoothed = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let dg = diagrams
            .get(k)
            .cloned()
            .unwrap_or_else(|| PersistenceDiagram { k, points: Vec::new() });
        let pl = build_landscape(&dg, args.resolution, cap)?;
        smoothed.push(smooth(&pl, &smoothing)?);
        landscapes.push(pl);
    }
    let counts: Vec<u64> = count_maxima(&smoothed, args.min_height)
        .to_vec(top)
        .into_iter()
        .map(|c| c as u64)
        .collect();
    let hc = HomologyCounts::new(counts.clone());
    let estimate = estimate_with(&hc, args.q_max)?;
    let single_torus = single_torus_fit(&hc, args.q_max)?;
    let counts = CountsRecord {
        cap,
        resolution: args.resolution,
        sigma: args.sigma,
        min_height: args.min_height,
        counts,
    };
    let report = render_report(&counts, &estimate, &single_torus);

    if let Some(dir) = &args.out {
        for pl in &landscapes {
            write_output(&dir.join(landscape_file(pl.k)), &pl.to_json())?;
        }
        write_output(&dir.join(COUNTS_FILE), &to_json(&counts))?;
        write_output(&dir.join(ESTIMATE_FILE), &estimate.to_json())?;
        write_output(&dir.join(REPORT_FILE), &report)?;
    }
    Ok(EstimateOutput {
        landscapes,
        counts,
        estimate,
        single_torus,
        report,
    })
}

/// What a JSON file passed to `plot` turned out to hold.
#[derive(Debug, Clone)]
pub enum Plottable {
    Diagrams(Vec<PersistenceDiagram>),
    Landscape(PersistenceLandscape),
}

pub fn read_plottable(path: &Path) -> Result<Plottable, Failure> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{} is not JSON: {e}", path.display())))?;
    let parsed = if value.is_array() {
        diagrams_from_json(&text).map(Plottable::Diagrams)
    } else if value.get("layers").is_some() {
        PersistenceLandscape::from_json(&text).map(Plottable::Landscape)
    } else {
        return Err(Failure::usage(format!(
            "{} is neither a diagram nor a landscape",
            path.display()
        )));
    };
    parsed.map_err(|e| Failure::from(e).context(format!("reading {}", path.display())))
}

/// `plot`: renders a diagram or landscape JSON file as SVG. `max_k` limits
/// which diagram dimensions are drawn; the cap follows [`resolve_cap`].
pub fn cmd_plot(input: &Path, out: &Path, max_k: Option<usize>) -> Result<(), Failure> {
    let svg = match read_plottable(input)? {
        Plottable::Diagrams(mut dgs) => {
            let cap = resolve_cap(None, input, &dgs)?;
            if let Some(max_k) = max_k {
                dgs.truncate(max_k + 1);
            }
            diagram_svg(&dgs, cap)
        }
        Plottable::Landscape(pl) => landscape_svg(&pl),
    };
    write_output(out, &svg)
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain records always serialize")
}
