//! Teleportation of a single qubit through decohering environments.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: dense complex kernels for states of up to three
//! qubits, exact (Kraus) and integrated (Lindblad RK4) open-system dynamics,
//! the deferred-measurement teleportation circuit, entanglement and purity
//! diagnostics, and bisection over the resulting curves.
//!
//! Qubits are labelled 1, 2, 3 from the most significant bit of the
//! computational-basis index down: `|q1 q2 q3>` has index `4*q1 + 2*q2 + q3`.
//! Qubit 1 is the unknown input, qubits 2 and 3 share the Bell pair and
//! qubit 3 is the receiver.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod channels;
mod error;
pub mod metrics;
pub mod qops;
pub mod teleport;

pub use error::{Error, Result};

pub use num_complex::Complex64 as C64;
