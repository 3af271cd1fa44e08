//! Per-view solve time against sample count, with a fixed iteration budget
//! so that only the per-iteration cost varies.
//!
//! cargo run --release --example scaling

use memevo::datagen::SynthSpec;
use memevo::experiment::{run_experiment, summary_table, Experiment, RunConfig};
use memevo::solver::SolverConfig;

fn main() -> memevo::Result<()> {
    let cfg = RunConfig {
        experiment: Experiment::Scaling,
        synth: Some(SynthSpec::default()),
        solver: SolverConfig {
            max_iters: 30,
            tol: f64::MIN_POSITIVE,
            record_objective: false,
            ..SolverConfig::default()
        },
        scaling_sizes: vec![500, 1000, 2000, 4000],
        output_dir: std::env::temp_dir().join("memevo-scaling"),
        ..RunConfig::default()
    };
    let manifest = run_experiment(&cfg)?;
    print!("{}", summary_table(&manifest));
    println!("log-log slope {:.3}", manifest.scaling_slope.unwrap_or(f64::NAN));
    Ok(())
}
