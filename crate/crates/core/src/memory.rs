//! Archive of finalized per-view representations with power-law forgetting.
//!
//! For view `t` the archived representations `Z_1 … Z_{t−1}` are combined
//! with weights `w_i ∝ (t − i)^{−λ}` normalized to sum to one, so recent
//! views dominate when `λ > 0` and `λ = 0` gives the plain average. The
//! weights for a fixed `i` change with `t`, which is why the whole archive
//! is kept instead of a running sum.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io;
use crate::linalg::{all_finite, Matrix};

#[derive(Debug, Clone)]
pub struct MemoryStore {
    archive: Vec<Matrix>,
    lambda: f64,
    rows: usize,
    cols: usize,
}

impl MemoryStore {
    pub fn new(rows: usize, cols: usize, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid(format!(
                "forgetting rate must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self {
            archive: Vec::new(),
            lambda,
            rows,
            cols,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.archive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.archive.is_empty()
    }

    pub fn entries(&self) -> &[Matrix] {
        &self.archive
    }

    pub fn latest(&self) -> Option<&Matrix> {
        self.archive.last()
    }

    pub fn archive_view(&mut self, z: Matrix) -> Result<()> {
        if z.shape() != (self.rows, self.cols) {
            return Err(Error::invalid(format!(
                "archive_view: expected {}x{} representation, got {}x{}",
                self.rows,
                self.cols,
                z.nrows(),
                z.ncols()
            )));
        }
        if !all_finite(&z) {
            return Err(Error::invalid("archive_view: representation has non-finite entries"));
        }
        self.archive.push(z);
        Ok(())
    }

    /// Normalized power-law weights `(w_1, …, w_{t−1})` for view `t` (1-based).
    pub fn forgetting_weights(&self, t: usize) -> Result<Vec<f64>> {
        if t < 2 {
            return Err(Error::invalid(format!(
                "forgetting weights need a view index t >= 2, got {t}"
            )));
        }
        if self.archive.len() < t - 1 {
            return Err(Error::invalid(format!(
                "view {t} needs {} archived representations, store holds {}",
                t - 1,
                self.archive.len()
            )));
        }
        Ok(power_law_weights(t, self.lambda))
    }

    /// `Z_hist = Σ_i w_i·Z_i` over the first `t − 1` archived entries.
    pub fn aggregate_history(&self, t: usize) -> Result<Matrix> {
        let weights = self.forgetting_weights(t)?;
        let mut hist = Matrix::zeros(self.rows, self.cols);
        for (w, z) in weights.iter().zip(&self.archive) {
            hist += z * *w;
        }
        Ok(hist)
    }

    /// Writes every archived matrix as `view_<i>.txt` (1-based) under `dir`.
    pub fn export(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.archive
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let path = dir.join(format!("view_{}.txt", i + 1));
                io::save_matrix(&path, z)?;
                Ok(path)
            })
            .collect()
    }

    /// Rebuilds a store from checkpoint files written by [`MemoryStore::export`].
    pub fn import(paths: &[PathBuf], lambda: f64) -> Result<Self> {
        let mut matrices = paths.iter().map(|p| io::load_matrix(p));
        let first = match matrices.next() {
            Some(m) => m?,
            None => return Err(Error::invalid("import: no checkpoint files given")),
        };
        let mut store = Self::new(first.nrows(), first.ncols(), lambda)?;
        store.archive_view(first)?;
        for m in matrices {
            store.archive_view(m?)?;
        }
        Ok(store)
    }
}

pub(crate) fn power_law_weights(t: usize, lambda: f64) -> Vec<f64> {
    let raw: Vec<f64> = (1..t).map(|i| ((t - i) as f64).powf(-lambda)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
