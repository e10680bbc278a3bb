use alloc::vec::Vec;

use super::{hermitian_eigenvalues, BlochAngles, ComplexMatrix, DensityMatrix, QubitIndex, UNITARY_TOLERANCE};
use crate::{Error, Result, C64};

/// `|ψ><ψ|` for `ψ = cos(θ/2) e^{iφ/2} |0> + sin(θ/2) e^{-iφ/2} |1>`.
pub fn bloch_pure_state(angles: BlochAngles) -> DensityMatrix {
    let (a, b) = angles.amplitudes();
    let amps = [a, b];
    let mut m = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = amps[i] * amps[j].conj();
        }
    }
    DensityMatrix::from_matrix_unchecked(m).expect("2x2")
}

/// `|Φ+><Φ+|` with `|Φ+> = (|00> + |11>)/√2`.
pub fn bell_phi_plus() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[(i, j)] = C64::new(0.5, 0.0);
    }
    DensityMatrix::from_matrix_unchecked(m).expect("4x4")
}

/// `a ⊗ b`, with `a` on the lower-numbered qubits.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let qubits = a.n_qubits() + b.n_qubits();
    if qubits > 3 {
        return Err(Error::DimensionOverflow { qubits });
    }
    DensityMatrix::from_matrix_unchecked(a.matrix().kron(b.matrix()))
}

/// `U ρ U^dag`, rejecting a non-unitary `u`.
pub fn apply_unitary(state: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: u.dim(),
        });
    }
    let deviation = u.unitarity_error();
    if deviation > UNITARY_TOLERANCE {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(conjugate_unchecked(state, u))
}

pub(crate) fn conjugate_unchecked(state: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    let m = u.matmul(state.matrix()).matmul(&u.adjoint());
    DensityMatrix::from_matrix_unchecked(m).expect("dimension preserved")
}

/// Traces out the qubits in `drop`; the kept qubits retain their relative order.
pub fn partial_trace(state: &DensityMatrix, drop: &[QubitIndex]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    if drop.is_empty() || drop.len() >= n {
        return Err(Error::InvalidDropSet);
    }
    for (i, q) in drop.iter().enumerate() {
        if q.get() > n {
            return Err(Error::QubitOutOfRange { index: q.get(), n_qubits: n });
        }
        if drop[..i].contains(q) {
            return Err(Error::RepeatedQubit(q.get()));
        }
    }
    let shift = |q: usize| n - q;
    let kept: Vec<usize> = (1..=n)
        .filter(|q| !drop.iter().any(|d| d.get() == *q))
        .map(shift)
        .collect();
    let dropped: Vec<usize> = drop.iter().map(|d| shift(d.get())).collect();
    let scatter = |bits: &[usize], value: usize| {
        bits.iter()
            .enumerate()
            .fold(0usize, |acc, (k, &s)| acc | (((value >> (bits.len() - 1 - k)) & 1) << s))
    };

    let out_dim = 1usize << kept.len();
    let env_dim = 1usize << dropped.len();
    let mut out = ComplexMatrix::zeros(out_dim);
    for i in 0..out_dim {
        let ri = scatter(&kept, i);
        for j in 0..out_dim {
            let rj = scatter(&kept, j);
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..env_dim {
                let re = scatter(&dropped, e);
                acc += state.get(ri | re, rj | re);
            }
            out[(i, j)] = acc;
        }
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// `½ Σ |λ_i(a - b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let diff = a.matrix().sub(b.matrix());
    Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|x| x.abs()).sum::<f64>())
}
