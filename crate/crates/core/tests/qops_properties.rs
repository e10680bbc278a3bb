mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use teledecay_core::qops::{
    apply_unitary, bloch_pure_state, cnot, cz, embed_gate, hadamard, hermitian_eigenvalues, partial_trace, tensor,
    BlochAngles, QubitIndex,
};

fn grid16() -> Vec<BlochAngles> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            out.push(BlochAngles::new(PI * i as f64 / 3.0, 2.0 * PI * j as f64 / 4.0).unwrap());
        }
    }
    out
}

#[test]
fn tensor_then_trace_recovers_first_factor_on_grid() {
    let grid = grid16();
    for &a in &grid {
        for &b in &grid {
            let x = bloch_pure_state(a);
            let y = bloch_pure_state(b);
            let xy = tensor(&x, &y).unwrap();
            let back = partial_trace(&xy, &[QubitIndex::TWO]).unwrap();
            assert!(back.matrix().max_abs_diff(x.matrix()) <= 1e-12);
            let d = xy.diagnostics();
            assert!(d.is_valid(), "{d:?}");
        }
    }
}

#[test]
fn embedded_gates_are_unitary() {
    let q = |i| QubitIndex::new(i).unwrap();
    for n in 1..=3usize {
        for t in 1..=n {
            assert!(embed_gate(&hadamard(), &[q(t)], n).unwrap().unitarity_error() <= 1e-12);
        }
    }
    for (a, b) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
        for g in [cnot(), cz()] {
            assert!(embed_gate(&g, &[q(a), q(b)], 3).unwrap().unitarity_error() <= 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn unitary_conjugation_preserves_spectrum(
        seed_state in proptest::collection::vec(-1.0f64..1.0, 16),
        seed_u in proptest::collection::vec(-1.0f64..1.0, 16),
        qubits in 1usize..=3,
    ) {
        let dim = 1 << qubits;
        let rho = common::state_from(&seed_state, dim);
        let u = common::unitary_from(&seed_u, dim);
        let out = apply_unitary(&rho, &u).unwrap();
        let before = hermitian_eigenvalues(rho.matrix());
        let after = hermitian_eigenvalues(out.matrix());
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        let purity = |m: &teledecay_core::qops::DensityMatrix| m.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();
        prop_assert!((purity(&rho) - purity(&out)).abs() <= 1e-12);
        prop_assert!(out.diagnostics().is_valid());
    }

    #[test]
    fn partial_trace_preserves_trace(seed in proptest::collection::vec(-1.0f64..1.0, 20), drop in 1usize..=3) {
        let rho = common::state_from(&seed, 8);
        let out = partial_trace(&rho, &[QubitIndex::new(drop).unwrap()]).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(out.matrix().hermiticity_error() <= 1e-12);
    }
}
