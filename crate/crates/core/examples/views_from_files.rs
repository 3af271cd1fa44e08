//! Round trip through text files: write a stream to disk, then run the
//! solver on the files as an external dataset would be.
//!
//! cargo run --release --example views_from_files

use memevo::datagen::{generate_stream, SynthSpec};
use memevo::experiment::{export_stream, run_experiment, Experiment, RunConfig};
use memevo::io::load_matrix;

fn main() -> memevo::Result<()> {
    let dir = std::env::temp_dir().join("memevo-files");
    let stream = generate_stream(&SynthSpec { n: 150, ..SynthSpec::default() })?;
    let view_paths = export_stream(&stream, &dir)?;

    let cfg = RunConfig {
        experiment: Experiment::Run,
        view_paths,
        labels_path: Some(dir.join("labels.txt")),
        output_dir: dir.join("out"),
        ..RunConfig::default()
    };
    println!("config:\n{}", cfg.to_toml_string());
    let manifest = run_experiment(&cfg)?;
    if let Some(m) = &manifest.arms[0].runs[0].final_metrics {
        println!("{m}");
    }
    let z = load_matrix(&cfg.output_dir.join("embedding.txt"))?;
    println!("embedding {}x{} in {}", z.nrows(), z.ncols(), cfg.output_dir.display());
    Ok(())
}
