//! Per-iteration diagnostics of a single incremental solve.
//!
//! cargo run --release --example solver_trace

use memevo::datagen::{generate_stream, SynthSpec};
use memevo::experiment::{prepare_views, DEFAULT_VIEW_SCALE};
use memevo::memory::MemoryStore;
use memevo::solver::{solve_incremental_view, solve_initial_view, SolverConfig};

fn main() -> memevo::Result<()> {
    let stream = generate_stream(&SynthSpec::default())?;
    let views = prepare_views(stream.views, DEFAULT_VIEW_SCALE);
    let cfg = SolverConfig::default();

    let (z1, _) = solve_initial_view(&views[0], &cfg)?;
    let mut store = MemoryStore::new(z1.nrows(), cfg.latent_dim, cfg.lambda)?;
    store.archive_view(z1.clone())?;
    let (_, report) = solve_incremental_view(&views[1], &z1, &store, 2, &cfg)?;

    println!("iter  recon      tensor     |AA'-I|    |PP'-I|    objective");
    for (i, rec) in report.trace.iter().enumerate() {
        let objective = rec.objective.as_ref().map_or(f64::NAN, |o| o.total());
        println!(
            "{:>4}  {:.3e}  {:.3e}  {:.3e}  {:.3e}  {:.5}",
            i + 1,
            rec.recon_residual,
            rec.tensor_residual,
            rec.basis_orthogonality,
            rec.alignment_orthogonality.unwrap_or(0.0),
            objective
        );
    }
    println!("converged: {} in {:.3}s", report.converged, report.wall_seconds);
    Ok(())
}
