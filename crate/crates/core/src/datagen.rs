//! Seeded synthetic multi-view streams.
//!
//! `k` Gaussian clusters are planted in a shared `latent_dim_true`-dimensional
//! space with centers at pairwise distance `cluster_separation`. Each view is
//! the latent matrix pushed through its own random row-orthonormal
//! projection plus isotropic noise of that view's `σ`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gaussian_matrix, random_orthogonal, random_row_orthonormal, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSpec {
    pub n: usize,
    pub k: usize,
    pub latent_dim_true: usize,
    pub view_dims: Vec<usize>,
    pub noise_sigma: Vec<f64>,
    pub cluster_separation: f64,
    /// Per-coordinate standard deviation of samples around their center.
    pub cluster_spread: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            n: 300,
            k: 3,
            latent_dim_true: 5,
            view_dims: vec![20, 30, 25, 40],
            noise_sigma: vec![1.2; 4],
            cluster_separation: 4.0,
            cluster_spread: 0.5,
            seed: 0,
        }
    }
}

/// Noise multiplier applied to the first two views of the stale variant.
pub const STALE_NOISE_FACTOR: f64 = 1.5;

impl SynthSpec {
    /// The default spec with the two earliest views made noisier.
    pub fn stale_early_views() -> Self {
        let mut spec = Self::default();
        for s in spec.noise_sigma.iter_mut().take(2) {
            *s *= STALE_NOISE_FACTOR;
        }
        spec
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn view_count(&self) -> usize {
        self.view_dims.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.view_dims.is_empty() {
            return Err(Error::invalid("synthetic spec needs at least one view"));
        }
        if self.noise_sigma.len() != self.view_dims.len() {
            return Err(Error::invalid(format!(
                "{} noise levels for {} views",
                self.noise_sigma.len(),
                self.view_dims.len()
            )));
        }
        if self.k < 1 || self.k > self.n {
            return Err(Error::invalid(format!("need 1 <= k <= n, got k = {}", self.k)));
        }
        if self.k > self.latent_dim_true {
            return Err(Error::invalid(format!(
                "{} clusters cannot be equidistant in {} latent dimensions",
                self.k, self.latent_dim_true
            )));
        }
        if let Some(d) = self.view_dims.iter().find(|&&d| d < self.latent_dim_true) {
            return Err(Error::invalid(format!(
                "view dimension {d} is below latent_dim_true {}",
                self.latent_dim_true
            )));
        }
        let bad = |v: f64| !(v >= 0.0) || !v.is_finite();
        if self.noise_sigma.iter().any(|&s| bad(s)) || bad(self.cluster_spread) {
            return Err(Error::invalid("noise levels and spread must be finite and nonnegative"));
        }
        if !(self.cluster_separation > 0.0) || !self.cluster_separation.is_finite() {
            return Err(Error::invalid("cluster_separation must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticStream {
    pub views: Vec<Matrix>,
    pub labels: Vec<usize>,
}

pub fn generate_stream(spec: &SynthSpec) -> Result<SyntheticStream> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ld = spec.latent_dim_true;

    // Rows of an orthogonal matrix are pairwise √2 apart.
    let centers = random_orthogonal(&mut rng, ld) * (spec.cluster_separation / 2f64.sqrt());
    let mut labels: Vec<usize> = (0..spec.n).map(|i| i % spec.k).collect();
    labels.shuffle(&mut rng);

    let mut latent = gaussian_matrix(&mut rng, spec.n, ld) * spec.cluster_spread;
    for (i, &y) in labels.iter().enumerate() {
        for j in 0..ld {
            latent[(i, j)] += centers[(y, j)];
        }
    }

    let views = spec
        .view_dims
        .iter()
        .zip(&spec.noise_sigma)
        .map(|(&d, &sigma)| {
            let projection = random_row_orthonormal(&mut rng, ld, d);
            let mut x = &latent * projection;
            for v in x.iter_mut() {
                let noise: f64 = rng.sample(StandardNormal);
                *v += sigma * noise;
            }
            x
        })
        .collect();
    Ok(SyntheticStream { views, labels })
}

/// One stream per size, identical to `base` except for `n`.
pub fn generate_scaling_series(base: &SynthSpec, sizes: &[usize]) -> Result<Vec<SyntheticStream>> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("scaling sizes must be strictly ascending"));
    }
    sizes
        .iter()
        .map(|&n| generate_stream(&SynthSpec { n, ..base.clone() }))
        .collect()
}
