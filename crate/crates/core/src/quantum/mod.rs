//! Finite quantum systems with positions in `Z(n)`.
//!
//! The Hilbert space `H(n)` is spanned by the position basis `|X_n; r>`,
//! `r = 0..n-1`. For `m | n` the subsystem space `H(m)` embeds into `H(n)`
//! by the index map `r -> (n/m) r`, compatibly across chains `m | s | k`.
//! Everything the lattice connectives touch (subsystem spaces, their
//! joins, meets, negations) is spanned by position basis states, so the
//! associated projectors are diagonal 0/1 masks and commute by
//! construction.

mod io;
mod projector;
mod prob;

pub use io::{density_from_json, density_to_json, state_from_json, state_to_json};
pub use projector::{MeasurementOperator, Projector, ProjectorKind};
pub use prob::{sector_decomposition, sigma, tau, tau_tilde};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error as ThisError;

/// Tolerance for the norm of a state vector.
pub const EPS_NORM: f64 = 1e-10;
/// Tolerance for Hermiticity of a density matrix.
pub const EPS_HERMITIAN: f64 = 1e-10;
/// Tolerance for the trace of a density matrix.
pub const EPS_TRACE: f64 = 1e-10;
/// Tolerance for negative eigenvalues in the PSD check.
pub const EPS_PSD: f64 = 1e-8;
/// Equality tolerance used by property tests on probabilities.
pub const EPS_PROP: f64 = 1e-9;
/// Cap on the dimension of dense matrices; diagonal density matrices are
/// only capped by the lattice modulus cap.
pub const DENSE_DIM_CAP: usize = 4096;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("dense matrices are capped at dimension {cap}, got {dim}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    #[error("not Hermitian: max |m[i,j] - conj(m[j,i])| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is not 1: |trace - 1| = {deviation:.3e}")]
    TraceNotOne { deviation: f64 },
    #[error("not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },
    #[error("{m} does not divide {n}")]
    NotADivisor { m: u64, n: u64 },
    #[error("cannot embed dimension {m} into {k}: {m} does not divide {k}")]
    IncompatibleEmbedding { m: usize, k: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Format(String),
}

/// A pure state of `H(n)` in the position basis, unit norm within
/// [`EPS_NORM`].
#[derive(Clone, PartialEq, Debug)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, Error> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        let v = DVector::from_vec(amplitudes);
        let deviation = (v.norm() - 1.0).abs();
        if deviation > EPS_NORM {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(StateVector { amplitudes: v })
    }

    /// The position basis state `|X_n; r>`.
    pub fn basis(n: usize, r: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if r >= n {
            return Err(Error::IndexOutOfRange { index: r, dim: n });
        }
        let mut amplitudes = vec![Complex64::ZERO; n];
        amplitudes[r] = Complex64::ONE;
        Ok(StateVector { amplitudes: DVector::from_vec(amplitudes) })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Embeds this state of `H(m)` into `H(k)` for `m | k`: the amplitude
    /// at position `r` moves to position `(k/m) r`. Norm is preserved
    /// exactly (amplitudes are relocated, not recomputed).
    pub fn embed(&self, k: usize) -> Result<Self, Error> {
        let m = self.dim();
        if m == 0 || k == 0 || k % m != 0 {
            return Err(Error::IncompatibleEmbedding { m, k });
        }
        let d = k / m;
        let mut amplitudes = vec![Complex64::ZERO; k];
        for (r, &a) in self.amplitudes.iter().enumerate() {
            amplitudes[r * d] = a;
        }
        Ok(StateVector { amplitudes: DVector::from_vec(amplitudes) })
    }
}

/// The discrete Fourier matrix `F_n[r][s] = n^{-1/2} exp(i 2 pi r s / n)`.
pub fn fourier_matrix(n: usize) -> DMatrix<Complex64> {
    assert!(n >= 1, "Fourier matrix needs dimension at least 1");
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |r, s| {
        // reduce r*s mod n before taking the angle, for accuracy
        let k = (r * s) % n;
        Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
    })
}

/// Applies `F_n` to a position-basis state, producing the state whose
/// position amplitudes are the old momentum amplitudes.
pub fn apply_fourier(state: &StateVector) -> StateVector {
    let out = fourier_matrix(state.dim()) * state.vector();
    StateVector { amplitudes: out }
}

/// The Fourier transform of the subsystem `m | n`, as a unitary on
/// `H(n)`: it acts as `F_m` inside the embedded subsystem space (indices
/// that are multiples of `n/m`) and as the identity on its orthogonal
/// complement. The embedded subsystem space is invariant under this
/// operator; the span of two incomparable subsystem spaces is not. Note
/// that `F_n` itself does not fix the embedded space for `m < n`; it
/// exchanges position combs with periodic vectors.
pub fn subsystem_fourier(n: u64, m: u64) -> Result<DMatrix<Complex64>, Error> {
    if m == 0 || n % m != 0 {
        return Err(Error::NotADivisor { m, n });
    }
    let dim = n as usize;
    let d = (n / m) as usize;
    let f = fourier_matrix(m as usize);
    let mut out = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for i in 0..dim {
        out[(i, i)] = if i % d == 0 { Complex64::ZERO } else { Complex64::ONE };
    }
    for r in 0..m as usize {
        for s in 0..m as usize {
            out[(r * d, s * d)] = f[(r, s)];
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    /// Diagonal density matrix: real probabilities on the diagonal.
    Diagonal(Vec<f64>),
    Dense(DMatrix<Complex64>),
}

/// A density matrix on `H(n)`: Hermitian, trace one, positive
/// semidefinite (each within its tolerance). Diagonal matrices are kept
/// in a sparse-diagonal form and are not subject to the dense cap.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    repr: Repr,
}

impl DensityMatrix {
    pub fn from_diagonal(probs: Vec<f64>) -> Result<Self, Error> {
        validate_diagonal(&probs)?;
        Ok(DensityMatrix { repr: Repr::Diagonal(probs) })
    }

    pub fn from_dense(matrix: DMatrix<Complex64>) -> Result<Self, Error> {
        validate_dense(&matrix)?;
        Ok(DensityMatrix { repr: Repr::Dense(matrix) })
    }

    /// The pure state `|psi><psi|`.
    pub fn pure(psi: &StateVector) -> Self {
        let v = psi.vector();
        let matrix = v * v.adjoint();
        DensityMatrix { repr: Repr::Dense(matrix) }
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Diagonal(p) => p.len(),
            Repr::Dense(m) => m.nrows(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.repr, Repr::Diagonal(_))
    }

    pub fn diagonal_entry(&self, i: usize) -> f64 {
        match &self.repr {
            Repr::Diagonal(p) => p[i],
            Repr::Dense(m) => m[(i, i)].re,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.diagonal_entry(i)).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match &self.repr {
            Repr::Diagonal(p) => {
                if i == j {
                    Complex64::new(p[i], 0.0)
                } else {
                    Complex64::ZERO
                }
            }
            Repr::Dense(m) => m[(i, j)],
        }
    }

    /// Materializes the matrix densely.
    pub fn dense(&self) -> DMatrix<Complex64> {
        match &self.repr {
            Repr::Diagonal(p) => DMatrix::from_fn(p.len(), p.len(), |i, j| {
                if i == j {
                    Complex64::new(p[i], 0.0)
                } else {
                    Complex64::ZERO
                }
            }),
            Repr::Dense(m) => m.clone(),
        }
    }

    /// Embeds a density matrix of `H(m)` into `H(k)` for `m | k`: entry
    /// `(r, s)` moves to `(dr, ds)` with `d = k/m`. Trace is preserved
    /// exactly, and the representation (diagonal/dense) is kept.
    pub fn embed(&self, k: usize) -> Result<Self, Error> {
        let m = self.dim();
        if m == 0 || k == 0 || k % m != 0 {
            return Err(Error::IncompatibleEmbedding { m, k });
        }
        let d = k / m;
        let repr = match &self.repr {
            Repr::Diagonal(p) => {
                let mut out = vec![0.0; k];
                for (r, &v) in p.iter().enumerate() {
                    out[r * d] = v;
                }
                Repr::Diagonal(out)
            }
            Repr::Dense(matrix) => {
                let mut out = DMatrix::from_element(k, k, Complex64::ZERO);
                for r in 0..m {
                    for s in 0..m {
                        out[(r * d, s * d)] = matrix[(r, s)];
                    }
                }
                Repr::Dense(out)
            }
        };
        Ok(DensityMatrix { repr })
    }

    /// Re-runs the full invariant checks on the stored data.
    pub fn validate(&self) -> Result<(), Error> {
        match &self.repr {
            Repr::Diagonal(p) => validate_diagonal(p),
            Repr::Dense(m) => validate_dense(m),
        }
    }
}

fn validate_diagonal(probs: &[f64]) -> Result<(), Error> {
    if probs.is_empty() {
        return Err(Error::EmptyDimension);
    }
    if let Some(&worst) =
        probs.iter().filter(|p| **p < 0.0).min_by(|a, b| a.total_cmp(b))
    {
        if worst < -EPS_PSD {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: worst });
        }
    }
    let deviation = (probs.iter().sum::<f64>() - 1.0).abs();
    if deviation > EPS_TRACE {
        return Err(Error::TraceNotOne { deviation });
    }
    Ok(())
}

fn validate_dense(m: &DMatrix<Complex64>) -> Result<(), Error> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if n > DENSE_DIM_CAP {
        return Err(Error::DimensionCap { dim: n, cap: DENSE_DIM_CAP });
    }
    let mut herm_dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    if herm_dev > EPS_HERMITIAN {
        return Err(Error::NotHermitian { deviation: herm_dev });
    }
    let trace: Complex64 = (0..n).map(|i| m[(i, i)]).sum();
    let deviation = (trace - Complex64::ONE).norm();
    if deviation > EPS_TRACE {
        return Err(Error::TraceNotOne { deviation });
    }
    let eigenvalues = m.clone().symmetric_eigenvalues();
    let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -EPS_PSD {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(())
}
