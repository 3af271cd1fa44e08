//! Experiment drivers behind the command-line verbs.
//!
//! A [`RunConfig`] names the input (view files or a synthetic spec), the
//! solver settings and one experiment. [`run_experiment`] executes it,
//! writes `manifest.json` plus plot-ready CSV tables under `output_dir` and
//! returns the manifest.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{generate_stream, SynthSpec, SyntheticStream};
use crate::error::{Error, Result};
use crate::eval::{evaluate, MetricsReport};
use crate::io;
use crate::linalg::{scale_to_frobenius, Matrix};
use crate::solver::{run_stream, SolveReport, SolverConfig, StreamResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    #[default]
    Run,
    Ablation,
    LambdaSweep,
    ViewCurve,
    Scaling,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Run => "run",
            Experiment::Ablation => "ablation",
            Experiment::LambdaSweep => "lambda-sweep",
            Experiment::ViewCurve => "view-curve",
            Experiment::Scaling => "scaling",
        }
    }

    fn needs_labels(self) -> bool {
        matches!(
            self,
            Experiment::Ablation | Experiment::LambdaSweep | Experiment::ViewCurve
        )
    }
}

/// Forgetting rates visited by the λ sweep.
pub const LAMBDA_GRID: [f64; 4] = [0.0, 1.0, 1.5, 2.0];

/// Default Frobenius norm every view is rescaled to before solving.
pub const DEFAULT_VIEW_SCALE: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub experiment: Experiment,
    /// View files in arrival order. Mutually exclusive with `synth`.
    pub view_paths: Vec<PathBuf>,
    pub synth: Option<SynthSpec>,
    pub labels_path: Option<PathBuf>,
    #[serde(flatten)]
    pub solver: SolverConfig,
    /// Cluster count for k-means.
    pub k: usize,
    /// k-means restarts per evaluation.
    pub restarts: usize,
    pub output_dir: PathBuf,
    /// Rescale each view to this Frobenius norm; `0` disables rescaling.
    pub view_scale: f64,
    /// Synthetic streams drawn per arm, with seeds `synth.seed + r`.
    pub repeats: usize,
    /// Sample counts visited by the scaling benchmark.
    pub scaling_sizes: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::Run,
            view_paths: Vec::new(),
            synth: None,
            labels_path: None,
            solver: SolverConfig::default(),
            k: 3,
            restarts: 10,
            output_dir: PathBuf::from("memevo-out"),
            view_scale: DEFAULT_VIEW_SCALE,
            repeats: 1,
            scaling_sizes: vec![1000, 2000, 4000, 8000],
        }
    }
}

fn known_keys() -> BTreeSet<String> {
    let value = toml::Table::try_from(RunConfig::default()).expect("default config serializes");
    let mut keys: BTreeSet<String> = value.keys().cloned().collect();
    keys.insert("synth".into());
    keys.insert("labels_path".into());
    keys
}

impl RunConfig {
    /// Parses a TOML document. Solver fields sit at top level next to the
    /// run fields; a `[synth]` table selects a synthetic stream.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let known = known_keys();
        if let Some(unknown) = table.keys().find(|k| !known.contains(*k)) {
            return Err(Error::Config(format!("unknown config key {unknown:?}")));
        }
        let cfg: RunConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        match (self.view_paths.is_empty(), &self.synth) {
            (true, None) => {
                return Err(Error::Config("either view_paths or synth must be given".into()))
            }
            (false, Some(_)) => {
                return Err(Error::Config("view_paths and synth are mutually exclusive".into()))
            }
            (true, Some(spec)) => spec.validate().map_err(|e| Error::Config(e.to_string()))?,
            (false, None) => {}
        }
        if self.k < 2 {
            return Err(Error::Config(format!("k must be at least 2, got {}", self.k)));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be at least 1".into()));
        }
        if self.synth.is_none() && self.repeats > 1 {
            return Err(Error::Config("repeats > 1 needs a synthetic stream".into()));
        }
        if !(self.view_scale >= 0.0) || !self.view_scale.is_finite() {
            return Err(Error::Config("view_scale must be finite and nonnegative".into()));
        }
        if self.experiment.needs_labels() && self.synth.is_none() && self.labels_path.is_none() {
            return Err(Error::Config(format!(
                "experiment {} reports metrics and needs labels_path",
                self.experiment.name()
            )));
        }
        if self.experiment == Experiment::Scaling {
            if self.synth.is_none() {
                return Err(Error::Config("scaling needs a synthetic stream".into()));
            }
            if self.scaling_sizes.is_empty() || self.scaling_sizes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Config("scaling_sizes must be nonempty and strictly ascending".into()));
            }
        }
        Ok(())
    }
}

/// One solver configuration evaluated by an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub solver: SolverConfig,
    pub runs: Vec<RunRecord>,
    /// Mean over runs of the final mean ACC/NMI/ARI, when labels exist.
    pub acc_mean: Option<f64>,
    pub nmi_mean: Option<f64>,
    pub ari_mean: Option<f64>,
}

/// One stream solved end to end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Seed of the synthetic stream, if any.
    pub stream_seed: Option<u64>,
    pub n: usize,
    pub views: Vec<ViewRecord>,
    pub final_metrics: Option<MetricsReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewRecord {
    pub view: usize,
    pub iterations: usize,
    pub recon_residual: f64,
    pub tensor_residual: f64,
    pub converged: bool,
    pub wall_seconds: f64,
    /// Metrics on this view's representation (view-curve only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsReport>,
}

impl ViewRecord {
    fn from_report(r: &SolveReport) -> Self {
        Self {
            view: r.view,
            iterations: r.iterations,
            recon_residual: r.recon_residual,
            tensor_residual: r.tensor_residual,
            converged: r.converged,
            wall_seconds: r.wall_seconds,
            metrics: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment: Experiment,
    pub config: RunConfig,
    pub arms: Vec<ArmRecord>,
    /// Least-squares slope of log(mean per-view time) against log(n).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling_slope: Option<f64>,
}

impl RunManifest {
    pub fn arm(&self, name: &str) -> Option<&ArmRecord> {
        self.arms.iter().find(|a| a.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad manifest: {e}")))
    }
}

/// A stream ready for solving: rescaled views plus optional labels.
#[derive(Debug, Clone)]
pub struct PreparedStream {
    pub views: Vec<Matrix>,
    pub labels: Option<Vec<usize>>,
    pub seed: Option<u64>,
}

pub fn prepare_views(views: Vec<Matrix>, view_scale: f64) -> Vec<Matrix> {
    if view_scale > 0.0 {
        views.iter().map(|v| scale_to_frobenius(v, view_scale)).collect()
    } else {
        views
    }
}

fn load_inputs(cfg: &RunConfig) -> Result<Vec<PreparedStream>> {
    if let Some(spec) = &cfg.synth {
        return (0..cfg.repeats as u64)
            .map(|r| {
                let seed = spec.seed + r;
                let SyntheticStream { views, labels } = generate_stream(&spec.clone().with_seed(seed))?;
                Ok(PreparedStream {
                    views: prepare_views(views, cfg.view_scale),
                    labels: Some(labels),
                    seed: Some(seed),
                })
            })
            .collect();
    }
    let views = cfg
        .view_paths
        .iter()
        .map(|p| io::load_view(p))
        .collect::<Result<Vec<_>>>()?;
    let labels = match &cfg.labels_path {
        Some(p) => {
            let labels = io::load_labels(p)?;
            if labels.len() != views[0].nrows() {
                return Err(Error::Config(format!(
                    "{} labels for {} samples",
                    labels.len(),
                    views[0].nrows()
                )));
            }
            Some(labels)
        }
        None => None,
    };
    Ok(vec![PreparedStream {
        views: prepare_views(views, cfg.view_scale),
        labels,
        seed: None,
    }])
}

/// Solver variants compared by the ablation, in reporting order.
pub fn ablation_arms(base: &SolverConfig) -> Vec<(String, SolverConfig)> {
    vec![
        (
            "recon-only".into(),
            SolverConfig {
                alpha: 0.0,
                beta: 0.0,
                ..base.clone()
            },
        ),
        ("recon+VAM".into(), SolverConfig { beta: 0.0, ..base.clone() }),
        (
            "recon+KCM".into(),
            SolverConfig {
                alpha: 0.0,
                lambda: 0.0,
                ..base.clone()
            },
        ),
        ("w/o-CFM".into(), SolverConfig { lambda: 0.0, ..base.clone() }),
        ("full".into(), base.clone()),
    ]
}

pub fn lambda_arms(base: &SolverConfig) -> Vec<(String, SolverConfig)> {
    LAMBDA_GRID
        .iter()
        .map(|&lambda| (format!("lambda={lambda}"), SolverConfig { lambda, ..base.clone() }))
        .collect()
}

pub const UNIFORM_BASELINE_NOTE: &str = "uniform-averaging baseline";

fn solve_and_score(
    stream: &PreparedStream,
    solver: &SolverConfig,
    cfg: &RunConfig,
    per_view_metrics: bool,
) -> Result<(RunRecord, StreamResult)> {
    let result = run_stream(&stream.views, solver)?;
    let mut views: Vec<ViewRecord> = result.reports.iter().map(ViewRecord::from_report).collect();
    let mut final_metrics = None;
    if let Some(labels) = &stream.labels {
        let score = |z: &Matrix| evaluate(z, labels, cfg.k, cfg.restarts, solver.seed);
        if per_view_metrics {
            for (record, z) in views.iter_mut().zip(result.representations()) {
                record.metrics = Some(score(z)?);
            }
            final_metrics = views.last().and_then(|v| v.metrics.clone());
        } else {
            final_metrics = Some(score(result.final_representation())?);
        }
    }
    let record = RunRecord {
        stream_seed: stream.seed,
        n: stream.views[0].nrows(),
        views,
        final_metrics,
    };
    Ok((record, result))
}

fn summarize(name: String, note: Option<String>, solver: SolverConfig, runs: Vec<RunRecord>) -> ArmRecord {
    let metric_mean = |f: fn(&MetricsReport) -> f64| -> Option<f64> {
        let values: Option<Vec<f64>> = runs.iter().map(|r| r.final_metrics.as_ref().map(f)).collect();
        values.map(|v| v.iter().sum::<f64>() / v.len() as f64)
    };
    ArmRecord {
        acc_mean: metric_mean(|m| m.acc_mean),
        nmi_mean: metric_mean(|m| m.nmi_mean),
        ari_mean: metric_mean(|m| m.ari_mean),
        name,
        note,
        solver,
        runs,
    }
}

fn run_arms(
    arms: Vec<(String, SolverConfig)>,
    streams: &[PreparedStream],
    cfg: &RunConfig,
    per_view_metrics: bool,
) -> Result<Vec<ArmRecord>> {
    let jobs: Vec<(usize, usize)> = (0..arms.len())
        .flat_map(|a| (0..streams.len()).map(move |s| (a, s)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(a, s)| solve_and_score(&streams[s], &arms[a].1, cfg, per_view_metrics).map(|(r, _)| r))
        .collect::<Result<Vec<_>>>()?;
    let mut records = records.into_iter();
    Ok(arms
        .into_iter()
        .map(|(name, solver)| {
            let runs: Vec<RunRecord> = records.by_ref().take(streams.len()).collect();
            let note = (solver.lambda == 0.0 && name.starts_with("lambda="))
                .then(|| UNIFORM_BASELINE_NOTE.to_string());
            summarize(name, note, solver, runs)
        })
        .collect())
}

/// Ordinary least-squares slope of `ln y` on `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

fn mean_view_seconds(run: &RunRecord) -> f64 {
    run.views.iter().map(|v| v.wall_seconds).sum::<f64>() / run.views.len() as f64
}

fn run_scaling(cfg: &RunConfig) -> Result<(Vec<ArmRecord>, f64)> {
    let spec = cfg.synth.as_ref().expect("validated");
    let mut arms = Vec::with_capacity(cfg.scaling_sizes.len());
    // Sequential on purpose: concurrent arms would distort wall times.
    for &n in &cfg.scaling_sizes {
        let mut runs = Vec::with_capacity(cfg.repeats);
        for r in 0..cfg.repeats as u64 {
            let seed = spec.seed + r;
            let stream = generate_stream(&SynthSpec {
                n,
                seed,
                ..spec.clone()
            })?;
            let prepared = PreparedStream {
                views: prepare_views(stream.views, cfg.view_scale),
                labels: None,
                seed: Some(seed),
            };
            runs.push(solve_and_score(&prepared, &cfg.solver, cfg, false)?.0);
        }
        arms.push(summarize(format!("n={n}"), None, cfg.solver.clone(), runs));
    }
    let xs: Vec<f64> = cfg.scaling_sizes.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = arms
        .iter()
        .map(|a| a.runs.iter().map(mean_view_seconds).sum::<f64>() / a.runs.len() as f64)
        .collect();
    let slope = if xs.len() >= 2 { log_log_slope(&xs, &ys) } else { f64::NAN };
    Ok((arms, slope))
}

/// Runs the configured experiment and writes its outputs under `output_dir`.
pub fn run_experiment(cfg: &RunConfig) -> Result<RunManifest> {
    cfg.validate()?;
    let mut scaling_slope = None;
    let mut final_embedding: Option<Matrix> = None;
    let arms = match cfg.experiment {
        Experiment::Scaling => {
            let (arms, slope) = run_scaling(cfg)?;
            scaling_slope = Some(slope);
            arms
        }
        Experiment::Run => {
            let streams = load_inputs(cfg)?;
            let mut runs = Vec::with_capacity(streams.len());
            for s in &streams {
                let (record, result) = solve_and_score(s, &cfg.solver, cfg, false)?;
                if final_embedding.is_none() {
                    final_embedding = Some(result.final_representation().clone());
                }
                runs.push(record);
            }
            vec![summarize("full".into(), None, cfg.solver.clone(), runs)]
        }
        Experiment::ViewCurve => {
            let streams = load_inputs(cfg)?;
            run_arms(vec![("full".into(), cfg.solver.clone())], &streams, cfg, true)?
        }
        Experiment::Ablation => {
            let streams = load_inputs(cfg)?;
            run_arms(ablation_arms(&cfg.solver), &streams, cfg, false)?
        }
        Experiment::LambdaSweep => {
            let streams = load_inputs(cfg)?;
            run_arms(lambda_arms(&cfg.solver), &streams, cfg, false)?
        }
    };
    let manifest = RunManifest {
        experiment: cfg.experiment,
        config: cfg.clone(),
        arms,
        scaling_slope,
    };
    write_outputs(&manifest, final_embedding.as_ref(), &cfg.output_dir)?;
    Ok(manifest)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.6}"))
}

/// Plot-ready CSV for the manifest's experiment.
pub fn summary_table(manifest: &RunManifest) -> String {
    let mut out = String::new();
    match manifest.experiment {
        Experiment::ViewCurve => {
            out.push_str("stream_seed,view,acc,nmi,ari\n");
            for run in &manifest.arms[0].runs {
                for v in &run.views {
                    if let Some(m) = &v.metrics {
                        let seed = run.stream_seed.map_or_else(String::new, |s| s.to_string());
                        writeln!(out, "{seed},{},{:.6},{:.6},{:.6}", v.view, m.acc_mean, m.nmi_mean, m.ari_mean).unwrap();
                    }
                }
            }
        }
        Experiment::Scaling => {
            out.push_str("n,mean_view_seconds,total_iterations\n");
            for arm in &manifest.arms {
                let secs = arm.runs.iter().map(mean_view_seconds).sum::<f64>() / arm.runs.len() as f64;
                let iters: usize = arm.runs.iter().flat_map(|r| &r.views).map(|v| v.iterations).sum();
                writeln!(out, "{},{secs:.6},{iters}", arm.runs[0].n).unwrap();
            }
        }
        _ => {
            out.push_str("arm,alpha,beta,lambda,acc,nmi,ari,note\n");
            for arm in &manifest.arms {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    arm.name,
                    arm.solver.alpha,
                    arm.solver.beta,
                    arm.solver.lambda,
                    fmt_opt(arm.acc_mean),
                    fmt_opt(arm.nmi_mean),
                    fmt_opt(arm.ari_mean),
                    arm.note.as_deref().unwrap_or("")
                )
                .unwrap();
            }
        }
    }
    out
}

fn write_outputs(manifest: &RunManifest, embedding: Option<&Matrix>, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("manifest.json"), manifest.to_json())?;
    let table = format!("{}.csv", manifest.experiment.name().replace('-', "_"));
    fs::write(dir.join(table), summary_table(manifest))?;
    if let Some(z) = embedding {
        io::save_matrix(&dir.join("embedding.txt"), z)?;
    }
    Ok(())
}

/// Writes `view_<t>.txt` for every view and `labels.txt` under `dir`.
pub fn export_stream(stream: &SyntheticStream, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(stream.views.len());
    for (i, v) in stream.views.iter().enumerate() {
        let path = dir.join(format!("view_{}.txt", i + 1));
        io::save_matrix(&path, v)?;
        paths.push(path);
    }
    io::save_labels(&dir.join("labels.txt"), &stream.labels)?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_synth() -> SynthSpec {
        SynthSpec {
            n: 60,
            view_dims: vec![8, 10, 9],
            noise_sigma: vec![0.5; 3],
            ..SynthSpec::default()
        }
    }

    fn tiny_cfg(dir: &Path, experiment: Experiment) -> RunConfig {
        RunConfig {
            experiment,
            synth: Some(tiny_synth()),
            solver: SolverConfig {
                latent_dim: 4,
                record_objective: false,
                ..SolverConfig::default()
            },
            restarts: 3,
            output_dir: dir.to_path_buf(),
            scaling_sizes: vec![40, 80],
            ..RunConfig::default()
        }
    }

    #[test]
    fn toml_round_trip_and_unknown_keys() {
        let cfg = RunConfig {
            synth: Some(SynthSpec::default()),
            ..RunConfig::default()
        };
        let back = RunConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(back, cfg);
        let parsed = RunConfig::from_toml_str("alpha = 0.5\nexperiment = \"lambda-sweep\"\n[synth]\nn = 90\n").unwrap();
        assert_eq!(parsed.solver.alpha, 0.5);
        assert_eq!(parsed.experiment, Experiment::LambdaSweep);
        assert_eq!(parsed.synth.unwrap().n, 90);
        assert!(matches!(RunConfig::from_toml_str("alpah = 1.0"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_toml_str("alpha = "), Err(Error::Config(_))));
    }

    #[test]
    fn validation_rules() {
        let mut cfg = RunConfig::default();
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.synth = Some(SynthSpec::default());
        cfg.validate().unwrap();
        cfg.view_paths = vec![PathBuf::from("a.txt")];
        assert!(cfg.validate().is_err());
        cfg.synth = None;
        cfg.experiment = Experiment::Ablation;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.experiment = Experiment::Run;
        cfg.k = 1;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn run_writes_manifest_and_embedding() {
        let dir = tempfile::tempdir().unwrap();
        let m = run_experiment(&tiny_cfg(dir.path(), Experiment::Run)).unwrap();
        assert_eq!(m.arms[0].runs[0].views.len(), 3);
        assert!(m.arms[0].acc_mean.is_some());
        let text = fs::read_to_string(dir.path().join("manifest.json")).unwrap();
        assert_eq!(RunManifest::from_json(&text).unwrap(), m);
        assert!(dir.path().join("embedding.txt").exists());
        assert!(dir.path().join("run.csv").exists());
    }

    #[test]
    fn lambda_sweep_flags_baseline() {
        let dir = tempfile::tempdir().unwrap();
        let m = run_experiment(&tiny_cfg(dir.path(), Experiment::LambdaSweep)).unwrap();
        assert_eq!(m.arms.len(), 4);
        assert_eq!(m.arms[0].note.as_deref(), Some(UNIFORM_BASELINE_NOTE));
        assert!(m.arms[1..].iter().all(|a| a.note.is_none()));
    }

    #[test]
    fn ablation_has_five_arms_in_order() {
        let names: Vec<String> = ablation_arms(&SolverConfig::default())
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        assert_eq!(names, ["recon-only", "recon+VAM", "recon+KCM", "w/o-CFM", "full"]);
    }

    #[test]
    fn scaling_reports_slope() {
        let dir = tempfile::tempdir().unwrap();
        let m = run_experiment(&tiny_cfg(dir.path(), Experiment::Scaling)).unwrap();
        assert_eq!(m.arms.len(), 2);
        assert!(m.scaling_slope.unwrap().is_finite());
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.1)).collect();
        assert!((log_log_slope(&xs, &ys) - 1.1).abs() < 1e-12);
    }
}
