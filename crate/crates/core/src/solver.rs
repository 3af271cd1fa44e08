//! ADMM solver for view-incremental factorization.
//!
//! View `t` is factored as `X_t ≈ Z_t·A_t + E_t` with row-orthonormal
//! `A_t` and a column-sparse error `E_t`. From the second view on, `Z_t`
//! is additionally pulled towards an orthogonal rotation of `Z_{t−1}`
//! (weight `α`) and the pair `(Z_hist, Z_t)` is kept low-rank under the
//! ARMR surrogate (weight `β`), with `Z_hist` the forgetting-weighted
//! average of the archive.
//!
//! The augmented Lagrangian for `t > 1` is
//!
//! ```text
//! ‖E‖_{2,1} + α‖Z − Z_prev·P‖² + β‖ℳ‖_ARMR
//!   + ⟨Y, X − ZA − E⟩ + μ/2‖X − ZA − E‖²
//!   + ⟨𝒥, 𝒵 − ℳ⟩ + ρ/2‖𝒵 − ℳ‖²,    𝒵 = stack(Z_hist, Z)
//! ```
//!
//! and each block below minimizes it exactly in one variable.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    all_finite, max_abs, norm_21, orthogonality_residual, procrustes_min, random_row_orthonormal,
    shrink_columns_21, Matrix,
};
use crate::memory::MemoryStore;
use crate::tensor::{armr_norm, armr_prox, PairTensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Alignment weight `α`.
    pub alpha: f64,
    /// Consolidation weight `β`.
    pub beta: f64,
    /// Forgetting rate `λ`.
    pub lambda: f64,
    /// Latent dimension `m`.
    pub latent_dim: usize,
    pub mu0: f64,
    pub rho0: f64,
    pub mu_max: f64,
    pub rho_max: f64,
    /// Penalty growth factor `δ`.
    pub delta: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    /// For `t > 1` with a coupling term active, start `A_t` at the
    /// Procrustes fit of `X_t` onto `Z_{t−1}` instead of a random basis.
    pub warm_start: bool,
    /// Evaluate the objective terms after every iteration.
    pub record_objective: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 0.3,
            beta: 7.0,
            lambda: 1.0,
            latent_dim: 20,
            mu0: 1e-4,
            rho0: 1e-4,
            mu_max: 1e10,
            rho_max: 1e10,
            delta: 2.0,
            max_iters: 200,
            tol: 1e-6,
            seed: 0,
            warm_start: true,
            record_objective: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let nonneg = |name: &str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be finite and nonnegative, got {v}")))
            }
        };
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be finite and positive, got {v}")))
            }
        };
        nonneg("alpha", self.alpha)?;
        nonneg("beta", self.beta)?;
        nonneg("lambda", self.lambda)?;
        positive("mu0", self.mu0)?;
        positive("rho0", self.rho0)?;
        positive("mu_max", self.mu_max)?;
        positive("rho_max", self.rho_max)?;
        positive("tol", self.tol)?;
        if !(self.delta > 1.0) || !self.delta.is_finite() {
            return Err(Error::Config(format!("delta must exceed 1, got {}", self.delta)));
        }
        if self.mu0 > self.mu_max || self.rho0 > self.rho_max {
            return Err(Error::Config("initial penalties exceed their caps".into()));
        }
        if self.latent_dim == 0 {
            return Err(Error::Config("latent_dim must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        Ok(())
    }

    fn couples_history(&self) -> bool {
        self.alpha > 0.0 || self.beta > 0.0
    }
}

/// Every ADMM variable of one view solve.
#[derive(Debug, Clone)]
pub struct SolverState {
    /// Basis `A`, `m × d`, row-orthonormal.
    pub a: Matrix,
    /// Representation `Z`, `n × m`.
    pub z: Matrix,
    /// Column-sparse error `E`, `n × d`.
    pub e: Matrix,
    /// Reconstruction multiplier `Y`, `n × d`.
    pub y: Matrix,
    /// Alignment rotation `P`, `m × m`; identity at `t = 1`.
    pub p: Matrix,
    /// Consolidation auxiliary `ℳ`.
    pub m: PairTensor,
    /// Consolidation multiplier `𝒥`.
    pub j: PairTensor,
    pub mu: f64,
    pub rho: f64,
}

impl SolverState {
    /// Seeded initial point: random row-orthonormal `A`, `Z = X·Aᵀ`,
    /// `P = I` and zeros elsewhere. `warm_from` replaces the random basis by
    /// the Procrustes fit of `X` onto the given representation.
    pub fn initialize(x: &Matrix, cfg: &SolverConfig, warm_from: Option<&Matrix>) -> Result<Self> {
        let (n, d) = x.shape();
        let m = cfg.latent_dim;
        let a = match warm_from {
            Some(z_prev) => procrustes_min(x, z_prev)?,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                random_row_orthonormal(&mut rng, m, d)
            }
        };
        let z = x * a.transpose();
        Ok(Self {
            a,
            z,
            e: Matrix::zeros(n, d),
            y: Matrix::zeros(n, d),
            p: Matrix::identity(m, m),
            m: PairTensor::zeros(n, m),
            j: PairTensor::zeros(n, m),
            mu: cfg.mu0,
            rho: cfg.rho0,
        })
    }

    /// `X − E + Y/μ`, the common target of the `A` and `Z` blocks.
    pub fn shifted_target(&self, x: &Matrix) -> Matrix {
        x - &self.e + &self.y / self.mu
    }

    /// `X − Z·A − E`.
    pub fn reconstruction_gap(&self, x: &Matrix) -> Matrix {
        x - &self.z * &self.a - &self.e
    }

    /// `A ← argmin ‖B − Z·A‖²` over row-orthonormal `A`, `B = X − E + Y/μ`.
    pub fn update_basis(&mut self, x: &Matrix) -> Result<()> {
        self.a = procrustes_min(&self.shifted_target(x), &self.z)?;
        Ok(())
    }

    /// `Z ← (X − E + Y/μ)·Aᵀ` (first view).
    pub fn update_representation_initial(&mut self, x: &Matrix) {
        self.z = self.shifted_target(x) * self.a.transpose();
    }

    /// `E ← shrink₂,₁(X − Z·A + Y/μ, 1/μ)`.
    pub fn update_noise(&mut self, x: &Matrix) -> Result<()> {
        let c = x - &self.z * &self.a + &self.y / self.mu;
        self.e = shrink_columns_21(&c, 1.0 / self.mu)?;
        Ok(())
    }

    /// `P ← argmin ‖Z − Z_prev·P‖²` over orthogonal `P`.
    pub fn update_alignment(&mut self, z_prev: &Matrix) -> Result<()> {
        self.p = procrustes_min(&self.z, z_prev)?;
        Ok(())
    }

    /// Closed-form minimizer of [`SolverState::z_subproblem_objective`].
    /// Only the current slices of `ℳ` and `𝒥` enter.
    pub fn update_representation(&mut self, x: &Matrix, z_prev: &Matrix, alpha: f64, consolidate: bool) {
        let mut numer = self.shifted_target(x) * self.a.transpose() * self.mu;
        let mut denom = self.mu;
        if alpha > 0.0 {
            numer += z_prev * &self.p * (2.0 * alpha);
            denom += 2.0 * alpha;
        }
        if consolidate {
            numer += self.m.current() * self.rho - self.j.current();
            denom += self.rho;
        }
        self.z = numer / denom;
    }

    /// `ℳ ← prox_{(β/ρ)‖·‖_ARMR}(𝒵 + 𝒥/ρ)`.
    pub fn update_consolidation(&mut self, z_hist: &Matrix, beta: f64) -> Result<()> {
        let stacked = PairTensor::new(z_hist.clone(), self.z.clone())?;
        self.m = armr_prox(&stacked.add_scaled(&self.j, 1.0 / self.rho), beta / self.rho)?;
        Ok(())
    }

    /// The part of the augmented Lagrangian that depends on `Z`:
    /// `μ/2‖X − ZA − E + Y/μ‖² + α‖Z − Z_prev·P‖² + ρ/2‖Z − M_t + J_t/ρ‖²`.
    pub fn z_subproblem_objective(
        &self,
        x: &Matrix,
        z: &Matrix,
        z_prev: &Matrix,
        alpha: f64,
        consolidate: bool,
    ) -> f64 {
        let recon = self.shifted_target(x) - z * &self.a;
        let mut value = 0.5 * self.mu * recon.norm_squared();
        if alpha > 0.0 {
            value += alpha * (z - z_prev * &self.p).norm_squared();
        }
        if consolidate {
            let gap = z - self.m.current() + self.j.current() / self.rho;
            value += 0.5 * self.rho * gap.norm_squared();
        }
        value
    }

    fn all_finite(&self) -> bool {
        all_finite(&self.a)
            && all_finite(&self.z)
            && all_finite(&self.e)
            && all_finite(&self.y)
            && all_finite(&self.p)
            && self.m.is_finite()
            && self.j.is_finite()
    }
}

/// Values of the objective terms at one iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveTerms {
    /// `‖E‖_{2,1}`.
    pub sparse_error: f64,
    /// `α‖Z − Z_prev·P‖²`; zero at `t = 1`.
    pub alignment: f64,
    /// `β‖stack(Z_hist, Z)‖_ARMR`; zero at `t = 1` or when `β = 0`.
    pub consolidation: f64,
}

impl ObjectiveTerms {
    pub fn total(&self) -> f64 {
        self.sparse_error + self.alignment + self.consolidation
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub recon_residual: f64,
    pub tensor_residual: f64,
    /// `‖A·Aᵀ − I‖_∞` after the basis update.
    pub basis_orthogonality: f64,
    /// `‖P·Pᵀ − I‖_∞` after the alignment update, if one ran.
    pub alignment_orthogonality: Option<f64>,
    pub mu: f64,
    pub rho: f64,
    pub objective: Option<ObjectiveTerms>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    /// 1-based view index.
    pub view: usize,
    pub iterations: usize,
    /// `‖X − ZA − E‖_∞` at exit.
    pub recon_residual: f64,
    /// `‖𝒵 − ℳ‖_∞` at exit; zero at `t = 1`.
    pub tensor_residual: f64,
    pub converged: bool,
    pub wall_seconds: f64,
    pub trace: Vec<IterationRecord>,
}

fn check_view(x: &Matrix, cfg: &SolverConfig, view: usize) -> Result<()> {
    cfg.validate()?;
    let (n, d) = x.shape();
    if cfg.latent_dim > n.min(d) {
        return Err(Error::invalid(format!(
            "view {view}: latent_dim {} exceeds min(n, d) = {}",
            cfg.latent_dim,
            n.min(d)
        )));
    }
    if !all_finite(x) {
        return Err(Error::invalid(format!("view {view} has non-finite entries")));
    }
    Ok(())
}

fn breakdown(view: usize, reason: impl Into<String>) -> Error {
    Error::NumericalBreakdown {
        view,
        reason: reason.into(),
    }
}

/// Lifts kernel failures inside the loop (which only fire on non-finite
/// iterates) to a breakdown of this view.
fn in_view<T>(view: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(reason) => breakdown(view, reason),
        other => other,
    })
}

fn grow(value: f64, delta: f64, cap: f64) -> f64 {
    (value * delta).min(cap)
}

/// ADMM on the first view (or any view solved without history).
pub fn solve_initial_view(x: &Matrix, cfg: &SolverConfig) -> Result<(Matrix, SolveReport)> {
    check_view(x, cfg, 1)?;
    let state = SolverState::initialize(x, cfg, None)?;
    run_initial_loop(x, cfg, state, 1)
}

fn run_initial_loop(
    x: &Matrix,
    cfg: &SolverConfig,
    mut st: SolverState,
    view: usize,
) -> Result<(Matrix, SolveReport)> {
    let started = Instant::now();
    let mut trace = Vec::new();
    let mut recon_residual = f64::INFINITY;
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        in_view(view, st.update_basis(x))?;
        let basis_orthogonality = orthogonality_residual(&st.a);
        st.update_representation_initial(x);
        in_view(view, st.update_noise(x))?;

        let gap = st.reconstruction_gap(x);
        st.y += &gap * st.mu;
        st.mu = grow(st.mu, cfg.delta, cfg.mu_max);
        recon_residual = max_abs(&gap);

        if !st.all_finite() || !recon_residual.is_finite() {
            return Err(breakdown(view, "non-finite iterate"));
        }
        let objective = cfg.record_objective.then(|| ObjectiveTerms {
            sparse_error: norm_21(&st.e),
            alignment: 0.0,
            consolidation: 0.0,
        });
        trace.push(IterationRecord {
            recon_residual,
            tensor_residual: 0.0,
            basis_orthogonality,
            alignment_orthogonality: None,
            mu: st.mu,
            rho: st.rho,
            objective,
        });
        if recon_residual < cfg.tol {
            converged = true;
            break;
        }
    }

    let report = SolveReport {
        view,
        iterations: trace.len(),
        recon_residual,
        tensor_residual: 0.0,
        converged,
        wall_seconds: elapsed_seconds(started.elapsed()),
        trace,
    };
    Ok((st.z, report))
}

fn elapsed_seconds(d: Duration) -> f64 {
    d.as_secs_f64()
}

/// ADMM on view `t ≥ 2` given the previous representation and an archive
/// holding `Z_1 … Z_{t−1}`.
///
/// With `α = β = 0` the history terms vanish and the solve is exactly
/// [`solve_initial_view`] on `xt`.
pub fn solve_incremental_view(
    xt: &Matrix,
    prev_z: &Matrix,
    store: &MemoryStore,
    t: usize,
    cfg: &SolverConfig,
) -> Result<(Matrix, SolveReport)> {
    if t < 2 {
        return Err(Error::invalid(format!("incremental solve needs t >= 2, got {t}")));
    }
    check_view(xt, cfg, t)?;
    if store.len() != t - 1 {
        return Err(Error::invalid(format!(
            "view {t}: memory holds {} representations, expected {}",
            store.len(),
            t - 1
        )));
    }
    let (n, m) = (xt.nrows(), cfg.latent_dim);
    if prev_z.shape() != (n, m) || store.shape() != (n, m) {
        return Err(Error::invalid(format!(
            "view {t}: history representations must be {n}x{m}"
        )));
    }

    if !cfg.couples_history() {
        let state = SolverState::initialize(xt, cfg, None)?;
        return run_initial_loop(xt, cfg, state, t);
    }

    let started = Instant::now();
    let z_hist = store.aggregate_history(t)?;
    let warm = cfg.warm_start.then_some(prev_z);
    let mut st = SolverState::initialize(xt, cfg, warm)?;
    let align = cfg.alpha > 0.0;
    let consolidate = cfg.beta > 0.0;

    let mut trace = Vec::new();
    let mut recon_residual = f64::INFINITY;
    let mut tensor_residual = f64::INFINITY;
    let mut converged = false;

    for _ in 0..cfg.max_iters {
        in_view(t, st.update_basis(xt))?;
        let basis_orthogonality = orthogonality_residual(&st.a);
        in_view(t, st.update_noise(xt))?;
        let alignment_orthogonality = if align {
            in_view(t, st.update_alignment(prev_z))?;
            Some(orthogonality_residual(&st.p))
        } else {
            None
        };
        st.update_representation(xt, prev_z, cfg.alpha, consolidate);
        if consolidate {
            in_view(t, st.update_consolidation(&z_hist, cfg.beta))?;
        } else {
            st.m = PairTensor::new(z_hist.clone(), st.z.clone())?;
        }

        let gap = st.reconstruction_gap(xt);
        let stacked = PairTensor::new(z_hist.clone(), st.z.clone())?;
        let tensor_gap = stacked.sub(&st.m);
        st.j = st.j.add_scaled(&tensor_gap, st.rho);
        st.y += &gap * st.mu;
        st.mu = grow(st.mu, cfg.delta, cfg.mu_max);
        st.rho = grow(st.rho, cfg.delta, cfg.rho_max);
        recon_residual = max_abs(&gap);
        tensor_residual = tensor_gap.max_abs();

        if !st.all_finite() || !recon_residual.is_finite() || !tensor_residual.is_finite() {
            return Err(breakdown(t, "non-finite iterate"));
        }
        let objective = if cfg.record_objective {
            let consolidation = if consolidate {
                cfg.beta * in_view(t, armr_norm(&stacked))?
            } else {
                0.0
            };
            Some(ObjectiveTerms {
                sparse_error: norm_21(&st.e),
                alignment: cfg.alpha * (&st.z - prev_z * &st.p).norm_squared(),
                consolidation,
            })
        } else {
            None
        };
        trace.push(IterationRecord {
            recon_residual,
            tensor_residual,
            basis_orthogonality,
            alignment_orthogonality,
            mu: st.mu,
            rho: st.rho,
            objective,
        });
        if recon_residual.max(tensor_residual) < cfg.tol {
            converged = true;
            break;
        }
    }

    let report = SolveReport {
        view: t,
        iterations: trace.len(),
        recon_residual,
        tensor_residual,
        converged,
        wall_seconds: elapsed_seconds(started.elapsed()),
        trace,
    };
    Ok((st.z, report))
}

/// Output of [`run_stream`].
#[derive(Debug, Clone)]
pub struct StreamResult {
    /// Archive holding `Z_1 … Z_T` in arrival order.
    pub memory: MemoryStore,
    pub reports: Vec<SolveReport>,
}

impl StreamResult {
    pub fn final_representation(&self) -> &Matrix {
        self.memory.latest().expect("stream has at least one view")
    }

    pub fn representations(&self) -> &[Matrix] {
        self.memory.entries()
    }
}

/// Solves every view in arrival order, archiving each converged `Z_t`.
pub fn run_stream(views: &[Matrix], cfg: &SolverConfig) -> Result<StreamResult> {
    let first = views
        .first()
        .ok_or_else(|| Error::invalid("run_stream needs at least one view"))?;
    let n = first.nrows();
    if let Some((i, v)) = views.iter().enumerate().find(|(_, v)| v.nrows() != n) {
        return Err(Error::invalid(format!(
            "view {} has {} samples, view 1 has {n}",
            i + 1,
            v.nrows()
        )));
    }
    let mut memory = MemoryStore::new(n, cfg.latent_dim, cfg.lambda)?;
    let mut reports = Vec::with_capacity(views.len());

    let (z1, report) = solve_initial_view(first, cfg)?;
    memory.archive_view(z1)?;
    reports.push(report);
    for (idx, x) in views.iter().enumerate().skip(1) {
        let t = idx + 1;
        let prev = memory.latest().expect("archive is nonempty").clone();
        let (z, report) = solve_incremental_view(x, &prev, &memory, t, cfg)?;
        memory.archive_view(z)?;
        reports.push(report);
    }
    Ok(StreamResult { memory, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gaussian_matrix, random_orthogonal};
    use rand::Rng;

    fn planted(rng: &mut ChaCha8Rng, n: usize, m: usize, d: usize) -> Matrix {
        gaussian_matrix(rng, n, m) * random_row_orthonormal(rng, m, d)
    }

    fn small_cfg() -> SolverConfig {
        SolverConfig {
            latent_dim: 4,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn default_config_is_valid() {
        SolverConfig::default().validate().unwrap();
        let bad = SolverConfig {
            delta: 1.0,
            ..SolverConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn planted_factorization_is_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = planted(&mut rng, 60, 4, 12);
        let (z, report) = solve_initial_view(&x, &small_cfg()).unwrap();
        assert!(report.converged);
        assert!(report.recon_residual < 1e-6);
        // Z recovers the planted factor up to rotation: its projection
        // reproduces X through the fitted basis.
        let a = procrustes_min(&x, &z).unwrap();
        let rel = (&x - &z * a).norm() / x.norm();
        assert!(rel < 1e-4, "{rel}");
    }

    #[test]
    fn zero_view_gives_zero_factors() {
        let x = Matrix::zeros(10, 6);
        let cfg = small_cfg();
        let state = SolverState::initialize(&x, &cfg, None).unwrap();
        assert_eq!(max_abs(&state.z), 0.0);
        let (z, report) = solve_initial_view(&x, &cfg).unwrap();
        assert!(max_abs(&z) < 1e-10);
        assert!(report.converged);
    }

    #[test]
    fn outlier_column_lands_in_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Planted singular values (~200) dominate the outlier so the rank-3
        // fit keeps the planted subspace.
        let mut x = planted(&mut rng, 50, 3, 10) * 30.0;
        let spike = gaussian_matrix(&mut rng, 50, 1);
        let spike = &spike * (100.0 / spike.norm());
        x.set_column(7, &(x.column(7) + spike.column(0)));
        let cfg = SolverConfig {
            latent_dim: 3,
            ..SolverConfig::default()
        };
        let mut st = SolverState::initialize(&x, &cfg, None).unwrap();
        for _ in 0..cfg.max_iters {
            st.update_basis(&x).unwrap();
            st.update_representation_initial(&x);
            st.update_noise(&x).unwrap();
            let gap = st.reconstruction_gap(&x);
            st.y += &gap * st.mu;
            st.mu = grow(st.mu, cfg.delta, cfg.mu_max);
        }
        let norms: Vec<f64> = st.e.column_iter().map(|c| c.norm()).collect();
        assert!(norms[7] > 0.0);
        let clean_max = norms
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 7)
            .fold(0.0_f64, |m, (_, v)| m.max(*v));
        assert!(norms[7] > clean_max);
    }

    #[test]
    fn latent_dim_too_large_is_rejected() {
        let x = Matrix::zeros(5, 3);
        let err = solve_initial_view(&x, &small_cfg()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn decoupled_history_matches_initial_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x1 = planted(&mut rng, 40, 4, 9) + gaussian_matrix(&mut rng, 40, 9) * 0.05;
        let x2 = planted(&mut rng, 40, 4, 11) + gaussian_matrix(&mut rng, 40, 11) * 0.05;
        let cfg = SolverConfig {
            alpha: 0.0,
            beta: 0.0,
            ..small_cfg()
        };
        let (z1, _) = solve_initial_view(&x1, &cfg).unwrap();
        let mut store = MemoryStore::new(40, 4, cfg.lambda).unwrap();
        store.archive_view(z1.clone()).unwrap();
        let (z2, r2) = solve_incremental_view(&x2, &z1, &store, 2, &cfg).unwrap();
        let (z_ref, r_ref) = solve_initial_view(&x2, &cfg).unwrap();
        assert!((r2.recon_residual - r_ref.recon_residual).abs() < 1e-8);
        assert!((z2 - z_ref).amax() < 1e-12);
    }

    #[test]
    fn strong_alignment_tracks_previous_view() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let latent = gaussian_matrix(&mut rng, 50, 4);
        let x1 = &latent * random_row_orthonormal(&mut rng, 4, 10);
        let rot = random_orthogonal(&mut rng, 4);
        let x2 = &latent * rot * random_row_orthonormal(&mut rng, 4, 12);
        let cfg = SolverConfig {
            alpha: 10.0,
            beta: 0.0,
            ..small_cfg()
        };
        let (z1, _) = solve_initial_view(&x1, &cfg).unwrap();
        let mut store = MemoryStore::new(50, 4, cfg.lambda).unwrap();
        store.archive_view(z1.clone()).unwrap();
        let mut st_cfg = cfg.clone();
        st_cfg.record_objective = false;
        let (z2, report) = solve_incremental_view(&x2, &z1, &store, 2, &st_cfg).unwrap();
        assert!(report.converged);
        let p = procrustes_min(&z2, &z1).unwrap();
        let rel = (&z2 - &z1 * p).norm() / z2.norm();
        assert!(rel < 0.05, "{rel}");
    }

    #[test]
    fn z_update_ignores_history_slices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = gaussian_matrix(&mut rng, 12, 6);
        let z_prev = gaussian_matrix(&mut rng, 12, 3);
        let cfg = SolverConfig {
            latent_dim: 3,
            ..SolverConfig::default()
        };
        let mut st = SolverState::initialize(&x, &cfg, None).unwrap();
        st.mu = 0.7;
        st.rho = 1.3;
        st.m = PairTensor::new(gaussian_matrix(&mut rng, 12, 3), gaussian_matrix(&mut rng, 12, 3)).unwrap();
        st.j = PairTensor::new(gaussian_matrix(&mut rng, 12, 3), gaussian_matrix(&mut rng, 12, 3)).unwrap();
        let mut other = st.clone();
        other.m = PairTensor::new(gaussian_matrix(&mut rng, 12, 3), st.m.current().clone()).unwrap();
        other.j = PairTensor::new(gaussian_matrix(&mut rng, 12, 3), st.j.current().clone()).unwrap();
        st.update_representation(&x, &z_prev, 0.4, true);
        other.update_representation(&x, &z_prev, 0.4, true);
        assert_eq!(st.z, other.z);
    }

    #[test]
    fn block_updates_do_not_increase_their_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (n, d, m) = (15, 7, 3);
        let alpha = 0.6;
        for _ in 0..10 {
            let x = gaussian_matrix(&mut rng, n, d);
            let z_prev = gaussian_matrix(&mut rng, n, m);
            let z_hist = gaussian_matrix(&mut rng, n, m);
            let cfg = SolverConfig {
                latent_dim: m,
                ..SolverConfig::default()
            };
            let mut st = SolverState::initialize(&x, &cfg, None).unwrap();
            st.z = gaussian_matrix(&mut rng, n, m);
            st.e = gaussian_matrix(&mut rng, n, d) * 0.1;
            st.y = gaussian_matrix(&mut rng, n, d) * 0.1;
            st.mu = rng.random_range(0.5..3.0);
            st.rho = rng.random_range(0.5..3.0);
            st.p = random_orthogonal(&mut rng, m);
            st.m = PairTensor::new(z_hist.clone(), gaussian_matrix(&mut rng, n, m)).unwrap();
            st.j = PairTensor::new(gaussian_matrix(&mut rng, n, m), gaussian_matrix(&mut rng, n, m)).unwrap();

            let recon = |s: &SolverState| 0.5 * s.mu * (s.shifted_target(&x) - &s.z * &s.a).norm_squared();
            let before = recon(&st);
            st.update_basis(&x).unwrap();
            assert!(recon(&st) <= before + 1e-10);

            let e_obj = |s: &SolverState| {
                norm_21(&s.e) + 0.5 * s.mu * (&x - &s.z * &s.a - &s.e + &s.y / s.mu).norm_squared()
            };
            let before = e_obj(&st);
            st.update_noise(&x).unwrap();
            assert!(e_obj(&st) <= before + 1e-10);

            let p_obj = |s: &SolverState| (&s.z - &z_prev * &s.p).norm_squared();
            let before = p_obj(&st);
            st.update_alignment(&z_prev).unwrap();
            assert!(p_obj(&st) <= before + 1e-10);

            let before = st.z_subproblem_objective(&x, &st.z, &z_prev, alpha, true);
            st.update_representation(&x, &z_prev, alpha, true);
            assert!(st.z_subproblem_objective(&x, &st.z, &z_prev, alpha, true) <= before + 1e-10);
        }
    }

    #[test]
    fn single_view_stream_matches_initial_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = planted(&mut rng, 30, 4, 8);
        let cfg = small_cfg();
        let result = run_stream(std::slice::from_ref(&x), &cfg).unwrap();
        let (z, _) = solve_initial_view(&x, &cfg).unwrap();
        assert_eq!(result.final_representation(), &z);
        assert_eq!(result.reports.len(), 1);
    }

    #[test]
    fn stream_rejects_mismatched_samples() {
        let cfg = small_cfg();
        let views = vec![Matrix::zeros(10, 6), Matrix::zeros(9, 6)];
        assert!(matches!(run_stream(&views, &cfg), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn incremental_rejects_short_history() {
        let cfg = small_cfg();
        let x = Matrix::zeros(10, 6);
        let store = MemoryStore::new(10, 4, 1.0).unwrap();
        let z = Matrix::zeros(10, 4);
        assert!(solve_incremental_view(&x, &z, &store, 2, &cfg).is_err());
        assert!(solve_incremental_view(&x, &z, &store, 1, &cfg).is_err());
    }

    #[test]
    fn penalties_are_monotone_and_capped() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let views: Vec<Matrix> = (0..2)
            .map(|_| gaussian_matrix(&mut rng, 30, 8))
            .collect();
        let cfg = SolverConfig {
            latent_dim: 4,
            tol: 1e-300,
            ..SolverConfig::default()
        };
        let result = run_stream(&views, &cfg).unwrap();
        for report in &result.reports {
            assert_eq!(report.iterations, cfg.max_iters);
            for w in report.trace.windows(2) {
                assert!(w[1].mu >= w[0].mu && w[1].rho >= w[0].rho);
            }
            let last = report.trace.last().unwrap();
            assert_eq!(last.mu, cfg.mu_max);
        }
    }
}
