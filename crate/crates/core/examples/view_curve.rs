//! Clustering quality after each arriving view, over several synthetic
//! streams.
//!
//! cargo run --release --example view_curve

use memevo::datagen::SynthSpec;
use memevo::experiment::{run_experiment, summary_table, Experiment, RunConfig};

fn main() -> memevo::Result<()> {
    let cfg = RunConfig {
        experiment: Experiment::ViewCurve,
        synth: Some(SynthSpec::default()),
        repeats: 3,
        output_dir: std::env::temp_dir().join("memevo-view-curve"),
        ..RunConfig::default()
    };
    let manifest = run_experiment(&cfg)?;
    print!("{}", summary_table(&manifest));
    println!("written to {}", cfg.output_dir.display());
    Ok(())
}
