//! Solve a synthetic four-view stream and score the representation after
//! every view.
//!
//! cargo run --release --example quickstart

use memevo::datagen::{generate_stream, SynthSpec};
use memevo::eval::evaluate;
use memevo::experiment::{prepare_views, DEFAULT_VIEW_SCALE};
use memevo::solver::{run_stream, SolverConfig};

fn main() -> memevo::Result<()> {
    let stream = generate_stream(&SynthSpec::default())?;
    let views = prepare_views(stream.views, DEFAULT_VIEW_SCALE);
    let result = run_stream(&views, &SolverConfig::default())?;

    for (report, z) in result.reports.iter().zip(result.representations()) {
        let m = evaluate(z, &stream.labels, 3, 10, 0)?;
        println!(
            "view {}: {:>3} iterations, ACC {:.4}, NMI {:.4}, ARI {:.4}",
            report.view, report.iterations, m.acc_mean, m.nmi_mean, m.ari_mean
        );
    }
    Ok(())
}
