//! Forgetting weights, the weighted history and an on-disk checkpoint of
//! the archive.
//!
//! cargo run --release --example memory_checkpoint

use memevo::linalg::Matrix;
use memevo::memory::MemoryStore;

fn main() -> memevo::Result<()> {
    for lambda in [0.0, 1.0, 2.0] {
        let mut store = MemoryStore::new(1, 1, lambda)?;
        for i in 1..=5 {
            store.archive_view(Matrix::from_element(1, 1, i as f64))?;
        }
        let w = store.forgetting_weights(6)?;
        let formatted: Vec<String> = w.iter().map(|x| format!("{x:.3}")).collect();
        println!(
            "lambda {lambda}: weights [{}], history {:.3}",
            formatted.join(", "),
            store.aggregate_history(6)?[(0, 0)]
        );
    }

    let mut store = MemoryStore::new(3, 2, 1.0)?;
    store.archive_view(Matrix::from_fn(3, 2, |i, j| (i + j) as f64))?;
    store.archive_view(Matrix::from_fn(3, 2, |i, j| (i * j) as f64))?;
    let dir = std::env::temp_dir().join("memevo-checkpoint");
    let paths = store.export(&dir)?;
    let restored = MemoryStore::import(&paths, 1.0)?;
    println!(
        "checkpoint of {} views in {}; restored history equal: {}",
        restored.len(),
        dir.display(),
        restored.aggregate_history(3)? == store.aggregate_history(3)?
    );
    Ok(())
}
