//! Dense complex kernels for density matrices of one to three qubits.

mod eigen;
mod gates;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use gates::{cnot, cz, embed_gate, hadamard, pauli_x, pauli_y, pauli_z, sigma_minus, sigma_plus};
pub use matrix::ComplexMatrix;
pub(crate) use matrix::{apply_local_left, apply_local_right_adjoint, conjugate_local};
pub use state::{apply_unitary, bell_phi_plus, bloch_pure_state, partial_trace, tensor, trace_distance};

use core::f64::consts::PI;

use crate::{Error, Result};

/// Tolerance on `|Tr ρ - 1|` and on Hermiticity for a valid state.
pub const STATE_TOLERANCE: f64 = 1e-12;
/// Smallest eigenvalue a valid state may have.
pub const PSD_TOLERANCE: f64 = -1e-10;
/// Tolerance on `U^dag U = I`.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Qubit label, 1-based, 1 being the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitIndex(usize);

impl QubitIndex {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);

    pub fn new(index: usize) -> Result<Self> {
        if (1..=3).contains(&index) {
            Ok(Self(index))
        } else {
            Err(Error::QubitOutOfRange { index, n_qubits: 3 })
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// 0-based position counted from the most significant bit.
    #[inline]
    pub(crate) fn offset(self) -> usize {
        self.0 - 1
    }
}

/// Polar and azimuthal angles of a pure one-qubit input state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    /// `theta` in `[0, π]`, `phi` in `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if (0.0..=PI).contains(&theta) && (0.0..2.0 * PI).contains(&phi) {
            Ok(Self { theta, phi })
        } else {
            Err(Error::InvalidAngles { theta, phi })
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Amplitudes `(a, b)` of `a|0> + b|1>`, with
    /// `a = cos(θ/2) e^{iφ/2}` and `b = sin(θ/2) e^{-iφ/2}`.
    pub fn amplitudes(&self) -> (crate::C64, crate::C64) {
        let half = self.phi / 2.0;
        let a = crate::C64::from_polar(libm::cos(self.theta / 2.0), half);
        let b = crate::C64::from_polar(libm::sin(self.theta / 2.0), -half);
        (a, b)
    }
}

/// Measured deviations of a matrix from the density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.trace_error <= STATE_TOLERANCE
            && self.hermiticity_error <= STATE_TOLERANCE
            && self.min_eigenvalue >= PSD_TOLERANCE
    }
}

/// Unit-trace Hermitian positive-semidefinite matrix on 1 to 3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl DensityMatrix {
    /// Validates `matrix` and wraps it.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let state = Self::from_matrix_unchecked(matrix)?;
        let diag = state.diagnostics();
        if diag.is_valid() {
            Ok(state)
        } else {
            Err(Error::NotDensityMatrix {
                trace_error: diag.trace_error,
                hermiticity_error: diag.hermiticity_error,
                min_eigenvalue: diag.min_eigenvalue,
            })
        }
    }

    /// Checks only the dimension. Used on hot paths whose outputs are valid
    /// by construction; tests assert that with [`DensityMatrix::diagnostics`].
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Result<Self> {
        match matrix.dim() {
            2 | 4 | 8 => {
                let n_qubits = matrix.n_qubits().unwrap_or(0);
                Ok(Self { matrix, n_qubits })
            }
            d => Err(Error::BadDimension(d)),
        }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if !(1..=3).contains(&n_qubits) {
            return Err(Error::DimensionOverflow { qubits: n_qubits });
        }
        let dim = 1 << n_qubits;
        Self::from_matrix_unchecked(ComplexMatrix::identity(dim).scale(crate::C64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        let eig = hermitian_eigenvalues(&self.matrix);
        StateDiagnostics {
            trace_error: (self.matrix.trace() - crate::C64::new(1.0, 0.0)).norm(),
            hermiticity_error: self.matrix.hermiticity_error(),
            min_eigenvalue: eig.first().copied().unwrap_or(0.0),
        }
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Entry `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> crate::C64 {
        self.matrix[(i, j)]
    }
}
