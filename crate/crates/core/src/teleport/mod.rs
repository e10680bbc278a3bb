//! Deferred-measurement teleportation through a decohered register.
//!
//! The output state is `Tr_{1,2}[U ε(ρ_in ⊗ Φ+) U^dag]` with
//! `U = CZ_{13} CX_{23} H_1 CX_{12}`: the environment acts for the whole
//! time `γt` before the (noiseless, instantaneous) circuit.

mod quadrature;

pub use quadrature::gauss_legendre;

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::channels::{self, DecoherenceCase, EnvironmentKind, RescaledTime, DEFAULT_ODE_STEP};
use crate::qops::{
    self, bell_phi_plus, bloch_pure_state, embed_gate, partial_trace, tensor, BlochAngles, ComplexMatrix,
    DensityMatrix, QubitIndex,
};
use crate::{Error, Result, C64};

/// How `ε` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Exact Kraus maps.
    Kraus,
    /// RK4 integration of the master equation with the given step.
    Ode { step: f64 },
}

/// One teleportation configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportSpec {
    pub kind: EnvironmentKind,
    pub case: DecoherenceCase,
    pub t: RescaledTime,
    method: Method,
}

impl TeleportSpec {
    pub fn kraus(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> Self {
        Self {
            kind,
            case,
            t,
            method: Method::Kraus,
        }
    }

    pub fn ode(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::NonPositiveStep(step));
        }
        Ok(Self {
            kind,
            case,
            t,
            method: Method::Ode { step },
        })
    }

    /// ODE method with [`DEFAULT_ODE_STEP`].
    pub fn ode_default(kind: EnvironmentKind, case: DecoherenceCase, t: RescaledTime) -> Self {
        Self::ode(kind, case, t, DEFAULT_ODE_STEP).expect("default step is positive")
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn with_time(mut self, t: RescaledTime) -> Self {
        self.t = t;
        self
    }
}

/// Product rule over the sphere: Gauss–Legendre in `cos θ`, uniform in `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    n_theta: usize,
    n_phi: usize,
}

impl QuadratureSpec {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 4 || n_phi < 8 {
            return Err(Error::QuadratureTooSmall { n_theta, n_phi });
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Nodes `(angles, weight)`; weights sum to one.
    pub fn nodes(&self) -> Vec<(BlochAngles, f64)> {
        let gl = gauss_legendre(self.n_theta);
        let mut out = Vec::with_capacity(self.n_theta * self.n_phi);
        for &(u, w) in &gl {
            let theta = libm::acos(u.clamp(-1.0, 1.0));
            for j in 0..self.n_phi {
                let phi = 2.0 * PI * j as f64 / self.n_phi as f64;
                let angles = BlochAngles::new(theta, phi).expect("node inside the sphere chart");
                out.push((angles, w / (2.0 * self.n_phi as f64)));
            }
        }
        out
    }
}

impl Default for QuadratureSpec {
    /// 8 x 16 nodes; the integrand is a degree-2 polynomial on the sphere,
    /// so this is already exact.
    fn default() -> Self {
        Self { n_theta: 8, n_phi: 16 }
    }
}

/// The six Pauli eigenstates, a spherical 2-design.
pub fn six_state_inputs() -> [BlochAngles; 6] {
    let a = |t: f64, p: f64| BlochAngles::new(t, p).expect("valid");
    [
        a(0.0, 0.0),
        a(PI, 0.0),
        a(PI / 2.0, 0.0),
        a(PI / 2.0, PI),
        a(PI / 2.0, PI / 2.0),
        a(PI / 2.0, 3.0 * PI / 2.0),
    ]
}

/// `U_tel = CZ_{13} · CX_{23} · H_1 · CX_{12}` (rightmost applied first).
pub fn u_tel() -> ComplexMatrix {
    let (q1, q2, q3) = (QubitIndex::ONE, QubitIndex::TWO, QubitIndex::THREE);
    let cx12 = embed_gate(&qops::cnot(), &[q1, q2], 3).expect("static targets");
    let h1 = embed_gate(&qops::hadamard(), &[q1], 3).expect("static targets");
    let cx23 = embed_gate(&qops::cnot(), &[q2, q3], 3).expect("static targets");
    let cz13 = embed_gate(&qops::cz(), &[q1, q3], 3).expect("static targets");
    cz13.matmul(&cx23).matmul(&h1).matmul(&cx12)
}

/// Teleportation pipeline with the circuit unitary built once.
#[derive(Debug, Clone)]
pub struct Teleporter {
    u: ComplexMatrix,
    u_adj: ComplexMatrix,
    resource: DensityMatrix,
}

impl Default for Teleporter {
    fn default() -> Self {
        Self::new()
    }
}

impl Teleporter {
    pub fn new() -> Self {
        let u = u_tel();
        let u_adj = u.adjoint();
        Self {
            u,
            u_adj,
            resource: bell_phi_plus(),
        }
    }

    /// `ε(ρ_in ⊗ Φ+)` on the 3-qubit register.
    pub fn decohered_register(&self, input: BlochAngles, spec: &TeleportSpec) -> Result<DensityMatrix> {
        let register = tensor(&bloch_pure_state(input), &self.resource)?;
        match spec.method {
            Method::Kraus => channels::evolve_kraus(&register, spec.kind, spec.case, spec.t),
            Method::Ode { step } => channels::evolve_ode(&register, spec.kind, spec.case, spec.t, step),
        }
    }

    /// Receiver's state after the circuit.
    pub fn output(&self, input: BlochAngles, spec: &TeleportSpec) -> Result<DensityMatrix> {
        let register = self.decohered_register(input, spec)?;
        Ok(self.finish(register.matrix()))
    }

    fn finish(&self, register: &ComplexMatrix) -> DensityMatrix {
        let rotated = self.u.matmul(register).matmul(&self.u_adj);
        let rotated = DensityMatrix::from_matrix_unchecked(rotated).expect("8x8");
        partial_trace(&rotated, &[QubitIndex::ONE, QubitIndex::TWO]).expect("static drop set")
    }

    /// Sphere average of the fidelity by product quadrature.
    pub fn average_fidelity(&self, spec: &TeleportSpec, quad: &QuadratureSpec) -> Result<f64> {
        let eval = self.evaluator(spec)?;
        let mut total = 0.0;
        for (angles, w) in quad.nodes() {
            total += w * eval.fidelity(self, angles)?;
        }
        Ok(total)
    }

    /// Mean fidelity over the six Pauli eigenstates.
    pub fn average_fidelity_six_state(&self, spec: &TeleportSpec) -> Result<f64> {
        let eval = self.evaluator(spec)?;
        let mut total = 0.0;
        for angles in six_state_inputs() {
            total += eval.fidelity(self, angles)?;
        }
        Ok(total / 6.0)
    }

    fn evaluator(&self, spec: &TeleportSpec) -> Result<Evaluator> {
        match spec.method {
            Method::Kraus => Ok(Evaluator::Direct(*spec)),
            Method::Ode { step } => {
                // ε is linear: integrate the four operators σ_a/2 ⊗ Φ+ once and
                // recombine them with each input's Bloch vector.
                let rates = spec.case.rates(3)?;
                let mut outputs = Vec::with_capacity(4);
                for pauli in [ComplexMatrix::identity(2), qops::pauli_x(), qops::pauli_y(), qops::pauli_z()] {
                    let basis = pauli.scale(C64::new(0.5, 0.0)).kron(self.resource.matrix());
                    let evolved = channels::integrate(basis, spec.kind, &rates, 3, spec.t, step);
                    outputs.push(self.finish(&evolved).into_matrix());
                }
                Ok(Evaluator::Linear(outputs))
            }
        }
    }
}

enum Evaluator {
    Direct(TeleportSpec),
    Linear(Vec<ComplexMatrix>),
}

impl Evaluator {
    fn fidelity(&self, tp: &Teleporter, angles: BlochAngles) -> Result<f64> {
        match self {
            Self::Direct(spec) => fidelity(angles, &tp.output(angles, spec)?),
            Self::Linear(outputs) => {
                let rho = bloch_pure_state(angles);
                let coherence = rho.get(0, 1);
                let bloch = [1.0, 2.0 * coherence.re, -2.0 * coherence.im, (rho.get(0, 0) - rho.get(1, 1)).re];
                let mut out = ComplexMatrix::zeros(2);
                for (weight, part) in bloch.iter().zip(outputs) {
                    out.add_scaled(C64::new(*weight, 0.0), part);
                }
                fidelity(angles, &DensityMatrix::from_matrix_unchecked(out)?)
            }
        }
    }
}

/// `ρ_out` for one input state.
pub fn teleport_output(input: BlochAngles, spec: &TeleportSpec) -> Result<DensityMatrix> {
    Teleporter::new().output(input, spec)
}

/// `<ψ_in| ρ_out |ψ_in>`, clamped to `[0, 1]` for reporting.
pub fn fidelity(input: BlochAngles, output: &DensityMatrix) -> Result<f64> {
    if output.n_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: output.dim(),
        });
    }
    let (a, b) = input.amplitudes();
    let psi = [a, b];
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += psi[i].conj() * output.get(i, j) * psi[j];
        }
    }
    Ok(acc.re.clamp(0.0, 1.0))
}

pub fn average_fidelity(spec: &TeleportSpec, quad: &QuadratureSpec) -> Result<f64> {
    Teleporter::new().average_fidelity(spec, quad)
}

pub fn average_fidelity_six_state(spec: &TeleportSpec) -> Result<f64> {
    Teleporter::new().average_fidelity_six_state(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: f64) -> RescaledTime {
        RescaledTime::new(x).unwrap()
    }

    fn angles(th: f64, ph: f64) -> BlochAngles {
        BlochAngles::new(th, ph).unwrap()
    }

    #[test]
    fn u_tel_is_unitary() {
        assert!(u_tel().unitarity_error() < 1e-12);
    }

    #[test]
    fn basis_state_teleports() {
        let out = teleport_output(
            angles(0.0, 0.0),
            &TeleportSpec::kraus(EnvironmentKind::Noisy, DecoherenceCase::Sender, t(0.0)),
        )
        .unwrap();
        assert!(out.matrix().max_abs_diff(bloch_pure_state(angles(0.0, 0.0)).matrix()) < 1e-15);
    }

    #[test]
    fn fidelity_edge_values() {
        let x = angles(1.2, 0.4);
        assert!((fidelity(x, &bloch_pure_state(x)).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(angles(0.0, 0.0), &bloch_pure_state(angles(PI, 0.0))).unwrap() < 1e-30);
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        assert!((fidelity(x, &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity(x, &bell_phi_plus()).is_err());
    }

    #[test]
    fn quadrature_weights_sum_to_one() {
        let q = QuadratureSpec::default();
        let s: f64 = q.nodes().iter().map(|n| n.1).sum();
        assert!((s - 1.0).abs() < 1e-14);
        assert!(QuadratureSpec::new(3, 16).is_err());
        assert!(QuadratureSpec::new(8, 7).is_err());
    }

    #[test]
    fn ode_spec_rejects_bad_step() {
        let k = EnvironmentKind::Noisy;
        let c = DecoherenceCase::Receiver;
        assert!(TeleportSpec::ode(k, c, t(1.0), 0.0).is_err());
        assert_eq!(TeleportSpec::ode_default(k, c, t(1.0)).method(), Method::Ode { step: DEFAULT_ODE_STEP });
    }

    #[test]
    fn ode_average_tracks_kraus_average() {
        let tp = Teleporter::new();
        for kind in EnvironmentKind::ALL {
            for case in DecoherenceCase::ALL {
                let k = tp.average_fidelity(&TeleportSpec::kraus(kind, case, t(0.7)), &QuadratureSpec::default()).unwrap();
                let o = tp.average_fidelity(&TeleportSpec::ode_default(kind, case, t(0.7)), &QuadratureSpec::default()).unwrap();
                assert!((k - o).abs() < 1e-9, "{kind} {case}: {k} vs {o}");
            }
        }
    }
}
