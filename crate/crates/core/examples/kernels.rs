//! The building blocks of the solver on small inputs.
//!
//! cargo run --release --example kernels

use memevo::linalg::{orthogonality_residual, procrustes_min, shrink_columns_21, Matrix};
use memevo::tensor::{armr_norm, armr_prox, armr_scalar_prox, PairTensor};

fn main() -> memevo::Result<()> {
    println!("scalar prox, weight 1:");
    for sigma in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
        println!("  {sigma:>4.1} -> {:.6}", armr_scalar_prox(sigma, 1.0)?);
    }

    // Columns shorter than the threshold vanish, longer ones lose its length.
    let c = Matrix::from_column_slice(2, 3, &[3.0, 4.0, 0.3, 0.4, 0.0, 2.0]);
    println!("l2,1 shrink by 1:{:.3}", shrink_columns_21(&c, 1.0)?);

    let carrier = Matrix::from_row_slice(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, -1.0]);
    let rotation = Matrix::from_row_slice(2, 3, &[0.0, 1.0, 0.0, -1.0, 0.0, 0.0]);
    let target = &carrier * &rotation;
    let omega = procrustes_min(&target, &carrier)?;
    println!(
        "procrustes recovers the rotation: |omega - R| = {:.2e}, |omega omega' - I| = {:.2e}",
        (&omega - &rotation).abs().max(),
        orthogonality_residual(&omega)
    );

    let t = PairTensor::new(carrier.clone(), &carrier * 0.9)?;
    let shrunk = armr_prox(&t, 0.5)?;
    println!("ARMR norm {:.4} -> {:.4} after prox", armr_norm(&t)?, armr_norm(&shrunk)?);
    Ok(())
}
