//! Forgetting rate sweep. Rate 0 weights all past views equally.
//!
//! cargo run --release --example lambda_sweep

use memevo::datagen::SynthSpec;
use memevo::experiment::{run_experiment, summary_table, Experiment, RunConfig};

fn main() -> memevo::Result<()> {
    let cfg = RunConfig {
        experiment: Experiment::LambdaSweep,
        synth: Some(SynthSpec::stale_early_views()),
        repeats: 3,
        output_dir: std::env::temp_dir().join("memevo-lambda-sweep"),
        ..RunConfig::default()
    };
    let manifest = run_experiment(&cfg)?;
    print!("{}", summary_table(&manifest));
    Ok(())
}
