#![allow(dead_code)]

use teledecay_core::qops::{hermitian_eigen, ComplexMatrix, DensityMatrix};
use teledecay_core::C64;

/// `W W^dag / Tr` for a `dim x dim` matrix built from `entries`
/// (2 reals per complex entry, cycled as needed).
pub fn state_from(entries: &[f64], dim: usize) -> DensityMatrix {
    let w = matrix_from(entries, dim);
    let m = w.matmul(&w.adjoint());
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(C64::new(1.0 / tr, 0.0))).expect("valid by construction")
}

pub fn matrix_from(entries: &[f64], dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim)
        .map(|k| C64::new(entries[(2 * k) % entries.len()], entries[(2 * k + 1) % entries.len()]))
        .collect();
    ComplexMatrix::from_row_major(data).unwrap()
}

/// Eigenvectors of a random Hermitian matrix form a unitary.
pub fn unitary_from(entries: &[f64], dim: usize) -> ComplexMatrix {
    let a = matrix_from(entries, dim);
    hermitian_eigen(&a.add(&a.adjoint())).vectors
}

/// Small deterministic generator so the fixed-count checks do not depend on
/// proptest case counts.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn vec(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.uniform(-1.0, 1.0)).collect()
    }
}
