//! View-incremental multi-view clustering.
//!
//! Views arrive one at a time. Each is factored into a latent
//! representation by an ADMM solver that aligns it with the previous view
//! and consolidates it with a forgetting-weighted memory of all earlier
//! views through a low-rank tensor penalty. The last representation is
//! clustered with k-means.
//!
//! ```no_run
//! use memevo::{datagen, eval, solver};
//!
//! let stream = datagen::generate_stream(&datagen::SynthSpec::default())?;
//! let result = solver::run_stream(&stream.views, &solver::SolverConfig::default())?;
//! let metrics = eval::evaluate(result.final_representation(), &stream.labels, 3, 10, 0)?;
//! println!("{metrics}");
//! # Ok::<(), memevo::Error>(())
//! ```
// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod datagen;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod io;
pub mod linalg;
pub mod memory;
pub mod solver;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::Matrix;
