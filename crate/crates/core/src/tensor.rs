//! Two-slice tensors and the ARMR low-rank surrogate.
//!
//! The consolidation tensor always has exactly two frontal slices
//! (history, current), so the DFT along the third mode is the real
//! butterfly `(a + b, a − b)`. The forward transform is unnormalized and the
//! inverse carries the `1/2`; [`armr_norm`] applies the `1/n₃` factor itself.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{max_abs, thin_svd, Matrix};

/// An `n × m × 2` tensor stored as its two frontal slices.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTensor {
    hist: Matrix,
    current: Matrix,
}

impl PairTensor {
    pub fn new(hist: Matrix, current: Matrix) -> Result<Self> {
        if hist.shape() != current.shape() {
            return Err(Error::invalid(format!(
                "pair tensor slices differ in shape: {:?} vs {:?}",
                hist.shape(),
                current.shape()
            )));
        }
        Ok(Self { hist, current })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            hist: Matrix::zeros(rows, cols),
            current: Matrix::zeros(rows, cols),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.hist.shape()
    }

    pub fn hist(&self) -> &Matrix {
        &self.hist
    }

    pub fn current(&self) -> &Matrix {
        &self.current
    }

    pub fn into_slices(self) -> (Matrix, Matrix) {
        (self.hist, self.current)
    }

    /// `self + scale·other`, slice by slice.
    pub fn add_scaled(&self, other: &PairTensor, scale: f64) -> PairTensor {
        assert_eq!(self.shape(), other.shape());
        PairTensor {
            hist: &self.hist + &other.hist * scale,
            current: &self.current + &other.current * scale,
        }
    }

    pub fn sub(&self, other: &PairTensor) -> PairTensor {
        self.add_scaled(other, -1.0)
    }

    pub fn frobenius_norm_squared(&self) -> f64 {
        self.hist.norm_squared() + self.current.norm_squared()
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.hist).max(max_abs(&self.current))
    }

    pub fn is_finite(&self) -> bool {
        self.hist.iter().chain(self.current.iter()).all(|v| v.is_finite())
    }
}

pub fn dft2_forward(t: &PairTensor) -> PairTensor {
    PairTensor {
        hist: &t.hist + &t.current,
        current: &t.hist - &t.current,
    }
}

pub fn dft2_inverse(t: &PairTensor) -> PairTensor {
    PairTensor {
        hist: (&t.hist + &t.current) * 0.5,
        current: (&t.hist - &t.current) * 0.5,
    }
}

/// Per-singular-value surrogate `(1 − e^{−σ})/(1 + e^{−σ})`, i.e. `tanh(σ/2)`.
pub fn armr_penalty(sigma: f64) -> f64 {
    (0.5 * sigma).tanh()
}

/// Derivative of [`armr_penalty`]: `2e^{−x}/(1 + e^{−x})²`.
pub fn armr_penalty_slope(x: f64) -> f64 {
    let th = (0.5 * x).tanh();
    0.5 * (1.0 - th * th)
}

/// ARMR value: the surrogate summed over the singular values of both
/// Fourier-domain slices, divided by the slice count.
pub fn armr_norm(t: &PairTensor) -> Result<f64> {
    let freq = dft2_forward(t);
    let mut total = 0.0;
    for slice in [&freq.hist, &freq.current] {
        let spectrum = thin_svd(slice)?;
        total += spectrum
            .singular_values
            .iter()
            .map(|&s| armr_penalty(s))
            .sum::<f64>();
    }
    Ok(0.5 * total)
}

pub const SCALAR_PROX_MAX_ITERS: usize = 50;
pub const SCALAR_PROX_TOL: f64 = 1e-10;

/// Minimizes `½(x − σ)² + weight·tanh(x/2)` over `x ≥ 0` by the
/// difference-of-convex iteration `x ← max(σ − weight·g′(x), 0)` started
/// at `x = σ`.
///
/// The iteration map is nondecreasing in `x`, so the iterates decrease
/// monotonically to the largest fixed point below `σ`. For
/// `weight < 3√3 ≈ 5.196` the scalar objective is strictly convex and that
/// fixed point is the global minimizer.
pub fn armr_scalar_prox(sigma: f64, weight: f64) -> Result<f64> {
    if !(weight > 0.0) || !weight.is_finite() {
        return Err(Error::invalid(format!(
            "armr_scalar_prox: weight must be positive and finite, got {weight}"
        )));
    }
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::invalid(format!(
            "armr_scalar_prox: sigma must be a finite nonnegative value, got {sigma}"
        )));
    }
    let mut x = sigma;
    for _ in 0..SCALAR_PROX_MAX_ITERS {
        let next = (sigma - weight * armr_penalty_slope(x)).max(0.0);
        let step = (next - x).abs();
        x = next;
        if step < SCALAR_PROX_TOL {
            break;
        }
    }
    Ok(x)
}

/// Proximal map of `weight·‖·‖_ARMR`: forward DFT, per-slice SVD, scalar
/// prox on every singular value, reconstruction and inverse DFT.
pub fn armr_prox(t: &PairTensor, weight: f64) -> Result<PairTensor> {
    if !(weight > 0.0) || !weight.is_finite() {
        return Err(Error::invalid(format!(
            "armr_prox: weight must be positive and finite, got {weight}"
        )));
    }
    let freq = dft2_forward(t);
    let mut shrunk = Vec::with_capacity(2);
    for slice in [&freq.hist, &freq.current] {
        let spectrum = thin_svd(slice)?;
        let values = spectrum
            .singular_values
            .iter()
            .map(|&s| armr_scalar_prox(s, weight))
            .collect::<Result<Vec<_>>>()?;
        shrunk.push(spectrum.reconstruct_with(&DVector::from_vec(values)));
    }
    let current = shrunk.pop().expect("two slices");
    let hist = shrunk.pop().expect("two slices");
    Ok(dft2_inverse(&PairTensor { hist, current }))
}
