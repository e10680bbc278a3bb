//! Entanglement and mixedness of the shared pair, plus closed forms.
//!
//! The closed forms are functions of `x = γt` only; each `(kind, case)` pair
//! maps to one expression.

use alloc::vec::Vec;

use crate::channels::{self, DecoherenceCase, EnvironmentKind, RescaledTime};
use crate::qops::{bell_phi_plus, hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, DensityMatrix};
use crate::{Error, Result, C64};

use DecoherenceCase::{ChannelPair, Receiver, Sender};
use EnvironmentKind::{Dephasing, Dissipative, Noisy};

/// Eigenvalues of ρ below this are treated as exact zeros when factoring
/// `ρ = W W^dag` for the concurrence.
const RANK_CUTOFF: f64 = 1e-14;

/// Wootters concurrence of a two-qubit state.
///
/// The λᵢ (square roots of the eigenvalues of `ρ ρ̃`, `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`)
/// are obtained as the singular values of `τ = Wᵀ (σʸ⊗σʸ) W` with
/// `ρ = W W^dag`, which avoids square roots of near-zero eigenvalues.
pub fn concurrence(state: &DensityMatrix) -> Result<f64> {
    if state.n_qubits() != 2 {
        return Err(Error::NotTwoQubits(state.n_qubits()));
    }
    let lambdas = wootters_lambdas(state);
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// The four λᵢ in decreasing order.
pub fn wootters_lambdas(state: &DensityMatrix) -> [f64; 4] {
    let eig = hermitian_eigen(state.matrix());
    let columns: Vec<[C64; 4]> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > RANK_CUTOFF)
        .map(|(k, &p)| {
            let s = libm::sqrt(p);
            core::array::from_fn(|r| eig.vectors[(r, k)] * s)
        })
        .collect();
    let r = columns.len();

    // σʸ⊗σʸ maps |00>,|01>,|10>,|11> to -|11>, |10>, |01>, -|00>.
    let flip = |v: &[C64; 4]| [-v[3], v[2], v[1], -v[0]];
    let mut dilation = ComplexMatrix::zeros(2 * r);
    for i in 0..r {
        let yi = flip(&columns[i]);
        for j in 0..r {
            let tau: C64 = (0..4).map(|k| yi[k] * columns[j][k]).sum();
            dilation[(i, r + j)] = tau;
            dilation[(r + j, i)] = tau.conj();
        }
    }
    let mut singular: Vec<f64> = hermitian_eigenvalues(&dilation).into_iter().rev().take(r).collect();
    singular.resize(4, 0.0);
    for s in singular.iter_mut() {
        *s = s.max(0.0);
    }
    [singular[0], singular[1], singular[2], singular[3]]
}

/// `Tr ρ²`.
pub fn purity(state: &DensityMatrix) -> f64 {
    state.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// `|Φ+>` after the case's decoherence restricted to the pair: both qubits
/// for ca = 1, the second for ca = 2, the first for ca = 3.
pub fn channel_state(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> DensityMatrix {
    channels::evolve_kraus(&bell_phi_plus(), kind, case, t).expect("every case touches the pair")
}

/// [`channel_state`] through RK4 integration.
pub fn channel_state_ode(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime, step: f64) -> Result<DensityMatrix> {
    channels::evolve_ode(&bell_phi_plus(), kind, case, t, step)
}

/// Closed-form average teleportation fidelity.
pub fn analytic_favg(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> f64 {
    let e = |k: f64| libm::exp(-k * t.get());
    match (kind, case) {
        (Dissipative, ChannelPair) => 2.0 / 3.0 + e(2.0) / 3.0,
        (Dissipative, Receiver) => 0.5 + e(0.5) / 3.0 + e(1.0) / 6.0,
        (Dissipative, Sender) => 0.5 + e(1.0) / 3.0 + e(2.0) / 6.0,
        (Noisy, ChannelPair | Sender) => 0.5 + e(2.0) / 3.0 + e(4.0) / 6.0,
        (Noisy, Receiver) => 0.5 + e(1.0) / 3.0 + e(2.0) / 6.0,
        (Dephasing, ChannelPair | Sender) => 2.0 / 3.0 + e(1.0) / 3.0,
        (Dephasing, Receiver) => 2.0 / 3.0 + e(0.5) / 3.0,
    }
}

/// Closed-form concurrence of the pair before clipping at zero. Only the
/// noisy forms ever go negative.
pub fn analytic_concurrence_unclipped(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> f64 {
    let e = |k: f64| libm::exp(-k * t.get());
    match (kind, case) {
        (Dissipative, ChannelPair) => e(2.0),
        (Dissipative, Receiver | Sender) => e(0.5),
        (Noisy, ChannelPair) => e(2.0) + e(4.0) / 2.0 - 0.5,
        (Noisy, Receiver | Sender) => e(1.0) + e(2.0) / 2.0 - 0.5,
        (Dephasing, ChannelPair) => e(1.0),
        (Dephasing, Receiver | Sender) => e(0.5),
    }
}

/// Closed-form concurrence of the pair.
pub fn analytic_concurrence(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> f64 {
    analytic_concurrence_unclipped(kind, case, t).max(0.0)
}

/// Closed-form purity of the pair.
pub fn analytic_purity(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> f64 {
    let e = |k: f64| libm::exp(-k * t.get());
    match (kind, case) {
        (Dissipative, ChannelPair) => 1.0 - 2.0 * e(1.0) + 3.0 * e(2.0) - 2.0 * e(3.0) + e(4.0),
        (Dissipative, Receiver | Sender) => 0.5 + e(2.0) / 2.0,
        (Noisy, ChannelPair) => 0.25 + e(4.0) / 2.0 + e(8.0) / 4.0,
        (Noisy, Receiver | Sender) => 0.25 + e(2.0) / 2.0 + e(4.0) / 4.0,
        (Dephasing, ChannelPair) => 0.5 + e(2.0) / 2.0,
        (Dephasing, Receiver | Sender) => 0.5 + e(1.0) / 2.0,
    }
}

/// Numeric concurrence and purity of the pair at one time, with the
/// closed-form average fidelity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelDiagnostics {
    pub gamma_t: RescaledTime,
    pub concurrence: f64,
    pub purity: f64,
    pub favg_analytic: f64,
}

pub fn diagnostics(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> ChannelDiagnostics {
    let pair = channel_state(kind, case, t);
    ChannelDiagnostics {
        gamma_t: t,
        concurrence: concurrence(&pair).expect("pair has two qubits"),
        purity: purity(&pair),
        favg_analytic: analytic_favg(kind, case, t),
    }
}
