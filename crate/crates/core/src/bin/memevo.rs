use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use memevo::datagen::{generate_stream, SynthSpec};
use memevo::experiment::{export_stream, run_experiment, summary_table, Experiment, RunConfig};
use memevo::{Error, Result};

#[derive(Parser)]
#[command(name = "memevo", version, about = "View-incremental multi-view clustering")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Solve the stream and report final metrics.
    Run(Flags),
    /// Write a synthetic stream (views and labels) to the output directory.
    Synth(Flags),
    /// Compare solver variants with individual terms switched off.
    Ablation(Flags),
    /// Sweep the forgetting rate over 0, 1, 1.5 and 2.
    LambdaSweep(Flags),
    /// Metrics after every view.
    ViewCurve(Flags),
    /// Per-view solve time against sample count.
    Scaling(Flags),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Default,
    Stale,
}

#[derive(Args)]
struct Flags {
    /// TOML config file; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// View files in arrival order.
    #[arg(long = "view", value_name = "PATH")]
    views: Vec<PathBuf>,
    /// Use a built-in synthetic stream instead of view files.
    #[arg(long, value_enum)]
    synth: Option<Preset>,
    /// Seed of the synthetic stream.
    #[arg(long)]
    stream_seed: Option<u64>,
    /// Sample count of the synthetic stream.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    latent_dim: Option<usize>,
    #[arg(long)]
    mu0: Option<f64>,
    #[arg(long)]
    rho0: Option<f64>,
    #[arg(long)]
    mu_max: Option<f64>,
    #[arg(long)]
    rho_max: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Solver and k-means seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Start every view from a random basis.
    #[arg(long)]
    no_warm_start: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Frobenius norm views are rescaled to; 0 disables.
    #[arg(long)]
    view_scale: Option<f64>,
    /// Synthetic streams per arm.
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    scaling_sizes: Option<Vec<usize>>,
}

impl Flags {
    fn into_config(self, experiment: Experiment) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.experiment = experiment;
        if !self.views.is_empty() {
            cfg.view_paths = self.views;
            cfg.synth = None;
        }
        if let Some(preset) = self.synth {
            cfg.synth = Some(match preset {
                Preset::Default => SynthSpec::default(),
                Preset::Stale => SynthSpec::stale_early_views(),
            });
            cfg.view_paths.clear();
        }
        if let Some(spec) = cfg.synth.as_mut() {
            if let Some(seed) = self.stream_seed {
                spec.seed = seed;
            }
            if let Some(n) = self.samples {
                spec.n = n;
            }
        }
        let s = &mut cfg.solver;
        macro_rules! set {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { s.$field = v; } )* };
        }
        set!(alpha, beta, lambda, latent_dim, mu0, rho0, mu_max, rho_max, delta, max_iters, tol, seed);
        if self.no_warm_start {
            s.warm_start = false;
        }
        if self.labels.is_some() {
            cfg.labels_path = self.labels;
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(dir) = self.output_dir {
            cfg.output_dir = dir;
        }
        if let Some(v) = self.view_scale {
            cfg.view_scale = v;
        }
        if let Some(r) = self.repeats {
            cfg.repeats = r;
        }
        if let Some(sizes) = self.scaling_sizes {
            cfg.scaling_sizes = sizes;
        }
        Ok(cfg)
    }
}

fn write_synth(flags: Flags) -> Result<()> {
    let cfg = flags.into_config(Experiment::Run)?;
    let spec = cfg.synth.unwrap_or_default();
    let stream = generate_stream(&spec).map_err(|e| Error::Config(e.to_string()))?;
    let paths = export_stream(&stream, &cfg.output_dir)?;
    for p in paths {
        println!("{}", p.display());
    }
    println!("{}", cfg.output_dir.join("labels.txt").display());
    Ok(())
}

fn execute(verb: Verb) -> Result<()> {
    let (experiment, flags) = match verb {
        Verb::Synth(flags) => return write_synth(flags),
        Verb::Run(f) => (Experiment::Run, f),
        Verb::Ablation(f) => (Experiment::Ablation, f),
        Verb::LambdaSweep(f) => (Experiment::LambdaSweep, f),
        Verb::ViewCurve(f) => (Experiment::ViewCurve, f),
        Verb::Scaling(f) => (Experiment::Scaling, f),
    };
    let cfg = flags.into_config(experiment)?;
    let manifest = run_experiment(&cfg)?;
    if experiment == Experiment::Run {
        for run in &manifest.arms[0].runs {
            for v in &run.views {
                println!(
                    "view {:>2}: {:>3} iterations, recon {:.2e}, tensor {:.2e}, {:.3}s",
                    v.view, v.iterations, v.recon_residual, v.tensor_residual, v.wall_seconds
                );
            }
            if let Some(m) = &run.final_metrics {
                println!("{m}");
            }
        }
    } else {
        print!("{}", summary_table(&manifest));
        if let Some(slope) = manifest.scaling_slope {
            println!("log-log slope: {slope:.3}");
        }
    }
    println!("manifest: {}", cfg.output_dir.join("manifest.json").display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("memevo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
