use alloc::vec::Vec;

use super::{ComplexMatrix, QubitIndex};
use crate::{Error, Result, C64};

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = C64::new(0.0, -1.0);
    m[(1, 0)] = C64::new(0.0, 1.0);
    m
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]])
}

pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[FRAC_1_SQRT_2, FRAC_1_SQRT_2], [FRAC_1_SQRT_2, -FRAC_1_SQRT_2]])
}

/// Controlled-X, control on the first (more significant) qubit.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn cz() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
    ])
}

/// Lowering operator `|0><1|`: decay targets `|0>`.
pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]])
}

/// Raising operator `|1><0|`.
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[0.0, 0.0], [1.0, 0.0]])
}

/// Embeds a `k`-qubit gate acting on `targets` (in gate order) into an
/// `n`-qubit register, identity on every other qubit.
///
/// The i-th target carries the i-th most significant bit of the gate's own
/// index, so `embed_gate(&cnot(), &[q(3), q(1)], 3)` is a CNOT controlled by
/// qubit 3.
pub fn embed_gate(gate: &ComplexMatrix, targets: &[QubitIndex], n: usize) -> Result<ComplexMatrix> {
    if n == 0 || n > 3 {
        return Err(Error::DimensionOverflow { qubits: n });
    }
    let k = targets.len();
    if gate.dim() != 1 << k {
        return Err(Error::DimensionMismatch {
            expected: 1 << k,
            found: gate.dim(),
        });
    }
    let mut shifts = Vec::with_capacity(k);
    for (i, t) in targets.iter().enumerate() {
        if t.get() > n {
            return Err(Error::QubitOutOfRange { index: t.get(), n_qubits: n });
        }
        if targets[..i].contains(t) {
            return Err(Error::RepeatedQubit(t.get()));
        }
        shifts.push(n - t.get());
    }
    let gather = |basis: usize| {
        shifts
            .iter()
            .fold(0usize, |acc, &s| (acc << 1) | ((basis >> s) & 1))
    };
    let target_mask: usize = shifts.iter().map(|&s| 1usize << s).sum();

    let dim = 1usize << n;
    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            if row & !target_mask != col & !target_mask {
                continue;
            }
            out[(row, col)] = gate[(gather(row), gather(col))];
        }
    }
    Ok(out)
}
