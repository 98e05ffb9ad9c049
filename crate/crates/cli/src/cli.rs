use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use homodim::dimension::DEFAULT_Q_MAX;
use homodim::filtration::DEFAULT_BUDGET;
use homodim::landscape::{DEFAULT_RESOLUTION, DEFAULT_SIGMA};

use crate::commands::{cmd_estimate, cmd_persist, cmd_plot, cmd_sample, EstimateArgs, PersistArgs};
use crate::config::{KindName, Overrides, PipelineConfig, SampleConfig, DEFAULT_MAX_DIM};
use crate::pipeline::cmd_pipeline;
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "homodim", version, about = "Persistent homology and embedding-dimension estimates for point clouds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample points from a circle, torus, line, product or sphere.
    Sample(SampleCmd),
    /// Compute persistence diagrams of a point cloud.
    Persist(PersistCmd),
    /// Count landscape maxima and estimate the embedding dimension.
    Estimate(EstimateCmd),
    /// Render a diagram or landscape JSON file as SVG.
    Plot(PlotCmd),
    /// Run sample/persist/estimate/plot from a config file.
    Pipeline(PipelineCmd),
}

#[derive(Debug, Args)]
pub struct SampleCmd {
    #[arg(long, value_enum)]
    pub kind: KindName,
    /// Circle factors (torus, product).
    #[arg(long, default_value_t = 0)]
    pub q: usize,
    /// Line factors (line, product).
    #[arg(long, default_value_t = 0)]
    pub p: usize,
    /// Sphere dimension.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; `.json` selects JSON, anything else CSV.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PersistCmd {
    /// Point cloud, CSV or `.json`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Defaults to the diameter of the cloud.
    #[arg(long)]
    pub max_edge: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Also write the filtration as JSON lines.
    #[arg(long)]
    pub write_filtration: bool,
    /// Output directory.
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EstimateCmd {
    /// Diagram JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Value standing in for infinite deaths.
    #[arg(long)]
    pub cap: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, default_value_t = DEFAULT_SIGMA)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub min_height: f64,
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    pub q_max: u64,
    #[arg(long)]
    pub max_homology_dim: Option<usize>,
    /// Output directory for landscapes, counts, estimate and report.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotCmd {
    #[arg(long)]
    pub input: PathBuf,
    /// Highest diagram dimension drawn.
    #[arg(long)]
    pub max_homology_dim: Option<usize>,
    #[arg(short, long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PipelineCmd {
    /// TOML config; flags below override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub kind: Option<KindName>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub max_edge: Option<f64>,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub min_height: Option<f64>,
    #[arg(long)]
    pub q_max: Option<u64>,
    #[arg(long)]
    pub max_homology_dim: Option<usize>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

impl PipelineCmd {
    pub fn resolve(&self) -> Result<PipelineConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::load(path)?,
            None => PipelineConfig::default(),
        };
        Overrides {
            input: self.input.clone(),
            kind: self.kind,
            q: self.q,
            p: self.p,
            n: self.n,
            noise: self.noise,
            seed: self.seed,
            max_dim: self.max_dim,
            max_edge: self.max_edge,
            resolution: self.resolution,
            sigma: self.sigma,
            min_height: self.min_height,
            q_max: self.q_max,
            max_homology_dim: self.max_homology_dim,
            out: self.out.clone(),
        }
        .apply(&mut cfg)?;
        Ok(cfg)
    }
}

/// Runs one parsed command line; progress goes to stderr, results to stdout.
pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sample(a) => {
            let sample = SampleConfig {
                kind: a.kind,
                q: a.q,
                p: a.p,
                dim: a.dim,
                n: a.n,
                noise: a.noise,
            };
            let cloud = cmd_sample(&sample, a.seed, &a.out)?;
            eprintln!("wrote {} points in R^{} to {}", cloud.len(), cloud.dim(), a.out.display());
        }
        Command::Persist(a) => {
            let res = cmd_persist(&PersistArgs {
                input: a.input,
                max_dim: a.max_dim,
                max_edge: a.max_edge,
                budget: a.budget,
                write_filtration: a.write_filtration,
                out: a.out.clone(),
            })?;
            eprint!("{}", res.timings.render());
            for dg in &res.diagrams {
                println!(
                    "H{}: {} points, {} essential",
                    dg.k,
                    dg.len(),
                    dg.essential_count()
                );
            }
            eprintln!("wrote {}", a.out.display());
        }
        Command::Estimate(a) => {
            let res = cmd_estimate(&EstimateArgs {
                input: a.input,
                cap: a.cap,
                resolution: a.resolution,
                sigma: a.sigma,
                min_height: a.min_height,
                q_max: a.q_max,
                max_homology_dim: a.max_homology_dim,
                out: a.out,
            })?;
            print!("{}", res.report);
        }
        Command::Plot(a) => cmd_plot(&a.input, &a.out, a.max_homology_dim)?,
        Command::Pipeline(a) => {
            let cfg = a.resolve()?;
            let summary = cmd_pipeline(&cfg)?;
            println!(
                "counts {:?}; dim U = {} ±{}; width [{}, {}]",
                summary.counts,
                summary.estimate.dim_u,
                summary.estimate.uncertainty,
                summary.estimate.width_interval[0],
                summary.estimate.width_interval[1]
            );
            eprintln!("artifacts in {}", cfg.out.display());
        }
    }
    Ok(())
}
