//! Switches the alignment, consolidation and forgetting terms off one at a
//! time on streams whose first views are noisier.
//!
//! cargo run --release --example ablation

use memevo::datagen::SynthSpec;
use memevo::experiment::{run_experiment, summary_table, Experiment, RunConfig};

fn main() -> memevo::Result<()> {
    let cfg = RunConfig {
        experiment: Experiment::Ablation,
        synth: Some(SynthSpec::stale_early_views()),
        repeats: 3,
        output_dir: std::env::temp_dir().join("memevo-ablation"),
        ..RunConfig::default()
    };
    let manifest = run_experiment(&cfg)?;
    print!("{}", summary_table(&manifest));
    Ok(())
}
