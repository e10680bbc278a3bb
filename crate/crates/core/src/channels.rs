//! Markovian decoherence of individual qubits.
//!
//! Every decohered qubit `k` evolves under
//! `dρ/dt = Σ_i (γ_k/2) (2 L_i ρ L_i^dag - {L_i^dag L_i, ρ})`
//! with the generators selected by [`EnvironmentKind`]. Time is always the
//! dimensionless product `γt`, so decohered qubits carry unit rate.
//!
//! Two independent routes are provided: the exact per-qubit Kraus maps
//! ([`evolve_kraus`]) and fixed-step RK4 integration of the generator
//! ([`evolve_ode`]).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::qops::{
    apply_local_left, apply_local_right_adjoint, conjugate_local, ComplexMatrix, DensityMatrix, QubitIndex,
};
use crate::{Error, Result, C64};

/// Default RK4 step in units of `γt`.
pub const DEFAULT_ODE_STEP: f64 = 1e-3;

type Op2 = [[C64; 2]; 2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const SIGMA_MINUS: Op2 = [[ZERO, ONE], [ZERO, ZERO]];
const SIGMA_PLUS: Op2 = [[ZERO, ZERO], [ONE, ZERO]];
const EXCITED_PROJECTOR: Op2 = [[ZERO, ZERO], [ZERO, ONE]];
const GROUND_PROJECTOR: Op2 = [[ONE, ZERO], [ZERO, ZERO]];

/// Environment coupled to each decohered qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnvironmentKind {
    /// Zero-temperature bath, `L = σ⁻`.
    Dissipative,
    /// Infinite-temperature bath, `L₁ = σ⁻`, `L₂ = σ⁺` at equal rates.
    Noisy,
    /// Pure dephasing, `L = σ⁺σ⁻`.
    Dephasing,
}

impl EnvironmentKind {
    pub const ALL: [Self; 3] = [Self::Dissipative, Self::Noisy, Self::Dephasing];

    /// Short label: `di`, `no` or `de`.
    pub fn code(self) -> &'static str {
        match self {
            Self::Dissipative => "di",
            Self::Noisy => "no",
            Self::Dephasing => "de",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Dissipative => "dissipative",
            Self::Noisy => "noisy",
            Self::Dephasing => "dephasing",
        }
    }

    /// Parses either the short code or the full name.
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| s.eq_ignore_ascii_case(k.code()) || s.eq_ignore_ascii_case(k.name()))
    }

    fn generators(self) -> &'static [Op2] {
        match self {
            Self::Dissipative => &[SIGMA_MINUS],
            Self::Noisy => &[SIGMA_MINUS, SIGMA_PLUS],
            Self::Dephasing => &[EXCITED_PROJECTOR],
        }
    }

    /// Lindblad generators for one qubit.
    pub fn lindblad_operators(self) -> Vec<ComplexMatrix> {
        self.generators().iter().map(op_to_matrix).collect()
    }
}

impl fmt::Display for EnvironmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which qubits of the teleportation register decohere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoherenceCase {
    /// ca = 1: both qubits of the shared pair (2 and 3).
    ChannelPair,
    /// ca = 2: the receiver's qubit (3).
    Receiver,
    /// ca = 3: both sender qubits (1 and 2).
    Sender,
}

impl DecoherenceCase {
    pub const ALL: [Self; 3] = [Self::ChannelPair, Self::Receiver, Self::Sender];

    pub fn number(self) -> u8 {
        match self {
            Self::ChannelPair => 1,
            Self::Receiver => 2,
            Self::Sender => 3,
        }
    }

    pub fn from_number(ca: u8) -> Result<Self> {
        match ca {
            1 => Ok(Self::ChannelPair),
            2 => Ok(Self::Receiver),
            3 => Ok(Self::Sender),
            other => Err(Error::UnknownCase(other)),
        }
    }

    /// Decohered qubits of the 3-qubit register.
    pub fn qubits(self) -> &'static [QubitIndex] {
        match self {
            Self::ChannelPair => &[QubitIndex::TWO, QubitIndex::THREE],
            Self::Receiver => &[QubitIndex::THREE],
            Self::Sender => &[QubitIndex::ONE, QubitIndex::TWO],
        }
    }

    /// Decohered qubits of an `n_qubits` state that holds the trailing
    /// qubits of the register (a 2-qubit state is the pair 2, 3; a 1-qubit
    /// state is qubit 3), relabelled to the state's own numbering.
    pub fn local_qubits(self, n_qubits: usize) -> Result<Vec<QubitIndex>> {
        if !(1..=3).contains(&n_qubits) {
            return Err(Error::DimensionOverflow { qubits: n_qubits });
        }
        let offset = 3 - n_qubits;
        let local: Vec<QubitIndex> = self
            .qubits()
            .iter()
            .filter(|q| q.get() > offset)
            .map(|q| QubitIndex::new(q.get() - offset))
            .collect::<Result<_>>()?;
        if local.is_empty() {
            return Err(Error::CaseOutOfRange {
                case: self.number(),
                n_qubits,
            });
        }
        Ok(local)
    }

    /// Per-qubit rates (in units of γ) for an `n_qubits` state.
    pub fn rates(self, n_qubits: usize) -> Result<Vec<f64>> {
        let mut rates = vec![0.0; n_qubits];
        for q in self.local_qubits(n_qubits)? {
            rates[q.offset()] = 1.0;
        }
        Ok(rates)
    }
}

impl fmt::Display for DecoherenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// The dimensionless product `γt`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RescaledTime(f64);

impl RescaledTime {
    pub const ZERO: Self = Self(0.0);

    pub fn new(gamma_t: f64) -> Result<Self> {
        if gamma_t.is_finite() && gamma_t >= 0.0 {
            Ok(Self(gamma_t))
        } else {
            Err(Error::NegativeTime(gamma_t))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Operator-sum representation of a one-qubit channel.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    ops: Vec<Op2>,
}

impl KrausSet {
    pub fn operators(&self) -> Vec<ComplexMatrix> {
        self.ops.iter().map(op_to_matrix).collect()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `max |Σ K^dag K - I|`
    pub fn completeness_error(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2);
        for k in self.operators() {
            sum = sum.add(&k.adjoint().matmul(&k));
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }

    /// `Σ K ρ K^dag` on qubit `target` of `state`.
    pub fn apply(&self, state: &DensityMatrix, target: QubitIndex) -> Result<DensityMatrix> {
        let n = state.n_qubits();
        if target.get() > n {
            return Err(Error::QubitOutOfRange {
                index: target.get(),
                n_qubits: n,
            });
        }
        let mut out = ComplexMatrix::zeros(state.dim());
        for k in &self.ops {
            out = out.add(&conjugate_local(state.matrix(), k, target.offset(), n));
        }
        DensityMatrix::from_matrix_unchecked(out)
    }
}

/// Exact one-qubit solution of the master equation after rescaled time `t`.
///
/// * dissipative: amplitude damping with `p = 1 - e^{-γt}`
/// * dephasing: phase damping with `λ = 1 - e^{-γt}`
/// * noisy: equal mixture of damping towards `|0>` and towards `|1>`,
///   each with `q = 1 - e^{-2γt}`
pub fn kraus_single(kind: EnvironmentKind, t: RescaledTime) -> KrausSet {
    let t = t.get();
    let c = |x: f64| C64::new(x, 0.0);
    let ops = match kind {
        EnvironmentKind::Dissipative => {
            let keep = libm::exp(-t / 2.0);
            let jump = libm::sqrt(-libm::expm1(-t));
            vec![[[ONE, ZERO], [ZERO, c(keep)]], [[ZERO, c(jump)], [ZERO, ZERO]]]
        }
        EnvironmentKind::Dephasing => {
            let keep = libm::exp(-t / 2.0);
            let kick = libm::sqrt(-libm::expm1(-t));
            vec![[[ONE, ZERO], [ZERO, c(keep)]], [[ZERO, ZERO], [ZERO, c(kick)]]]
        }
        EnvironmentKind::Noisy => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            let keep = h * libm::exp(-t);
            let jump = h * libm::sqrt(-libm::expm1(-2.0 * t));
            vec![
                [[c(h), ZERO], [ZERO, c(keep)]],
                [[ZERO, c(jump)], [ZERO, ZERO]],
                [[c(keep), ZERO], [ZERO, c(h)]],
                [[ZERO, ZERO], [c(jump), ZERO]],
            ]
        }
    };
    KrausSet { ops }
}

/// Applies [`kraus_single`] to each listed qubit of `state` (labels in the
/// state's own numbering).
pub fn evolve_kraus_on(
    state: &DensityMatrix,
    kind: EnvironmentKind,
    targets: &[QubitIndex],
    t: RescaledTime,
) -> Result<DensityMatrix> {
    let kraus = kraus_single(kind, t);
    let mut out = state.clone();
    for &q in targets {
        out = kraus.apply(&out, q)?;
    }
    Ok(out)
}

/// The map `ε` of the decoherence case: each qubit of the case's set (see
/// [`DecoherenceCase::local_qubits`]) passes through its own copy of the
/// one-qubit channel.
pub fn evolve_kraus(
    state: &DensityMatrix,
    kind: EnvironmentKind,
    case: DecoherenceCase,
    t: RescaledTime,
) -> Result<DensityMatrix> {
    let targets = case.local_qubits(state.n_qubits())?;
    evolve_kraus_on(state, kind, &targets, t)
}

/// Right-hand side of the master equation; `rates[k]` is the coupling of
/// qubit `k + 1` in units of γ.
pub fn lindblad_rhs(state: &DensityMatrix, kind: EnvironmentKind, rates: &[f64]) -> Result<ComplexMatrix> {
    check_rates(state.n_qubits(), rates)?;
    Ok(rhs_unchecked(state.matrix(), kind, rates, state.n_qubits()))
}

fn check_rates(n_qubits: usize, rates: &[f64]) -> Result<()> {
    if rates.len() != n_qubits {
        return Err(Error::RateCount {
            expected: n_qubits,
            found: rates.len(),
        });
    }
    if let Some((k, &rate)) = rates.iter().enumerate().find(|(_, r)| !(r.is_finite() && **r >= 0.0)) {
        return Err(Error::NegativeRate { qubit: k + 1, rate });
    }
    Ok(())
}

fn rhs_unchecked(rho: &ComplexMatrix, kind: EnvironmentKind, rates: &[f64], n_qubits: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(rho.dim());
    for (qubit, &rate) in rates.iter().enumerate().filter(|(_, r)| **r > 0.0) {
        for l in kind.generators() {
            let ldl = number_like(l);
            let jump = conjugate_local(rho, l, qubit, n_qubits);
            let mut left = rho.clone();
            apply_local_left(&mut left, &ldl, qubit, n_qubits);
            let mut right = rho.clone();
            apply_local_right_adjoint(&mut right, &ldl, qubit, n_qubits);
            out.add_scaled(C64::new(rate, 0.0), &jump);
            out.add_scaled(C64::new(-rate / 2.0, 0.0), &left);
            out.add_scaled(C64::new(-rate / 2.0, 0.0), &right);
        }
    }
    out
}

// L^dag L for the generators used here.
fn number_like(l: &Op2) -> Op2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = l[0][i].conj() * l[0][j] + l[1][i].conj() * l[1][j];
        }
    }
    debug_assert!(out == GROUND_PROJECTOR || out == EXCITED_PROJECTOR);
    out
}

/// Fixed-step RK4 integration of [`lindblad_rhs`] with explicit per-qubit
/// rates. The step actually used is `t / ceil(t / step)`, never larger than
/// `step`; the state is re-Hermitized after every step.
pub fn evolve_ode_rates(
    state: &DensityMatrix,
    kind: EnvironmentKind,
    rates: &[f64],
    t: RescaledTime,
    step: f64,
) -> Result<DensityMatrix> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::NonPositiveStep(step));
    }
    check_rates(state.n_qubits(), rates)?;
    let rho = integrate(state.matrix().clone(), kind, rates, state.n_qubits(), t, step);
    DensityMatrix::from_matrix_unchecked(rho)
}

/// RK4 on any Hermitian operator of the register; the dynamics are linear
/// so traceless or indefinite inputs are fine. `step` must be positive.
pub(crate) fn integrate(
    mut rho: ComplexMatrix,
    kind: EnvironmentKind,
    rates: &[f64],
    n_qubits: usize,
    t: RescaledTime,
    step: f64,
) -> ComplexMatrix {
    let total = t.get();
    if total == 0.0 {
        return rho;
    }
    let n_steps = libm::ceil(total / step - 1e-9).max(1.0) as usize;
    let h = total / n_steps as f64;
    let f = |m: &ComplexMatrix| rhs_unchecked(m, kind, rates, n_qubits);
    let half = C64::new(h / 2.0, 0.0);
    for _ in 0..n_steps {
        let k1 = f(&rho);
        let mut y = rho.clone();
        y.add_scaled(half, &k1);
        let k2 = f(&y);
        let mut y = rho.clone();
        y.add_scaled(half, &k2);
        let k3 = f(&y);
        let mut y = rho.clone();
        y.add_scaled(C64::new(h, 0.0), &k3);
        let k4 = f(&y);
        rho.add_scaled(C64::new(h / 6.0, 0.0), &k1);
        rho.add_scaled(C64::new(h / 3.0, 0.0), &k2);
        rho.add_scaled(C64::new(h / 3.0, 0.0), &k3);
        rho.add_scaled(C64::new(h / 6.0, 0.0), &k4);
        rho = rho.hermitian_part();
    }
    rho
}

/// RK4 counterpart of [`evolve_kraus`].
pub fn evolve_ode(
    state: &DensityMatrix,
    kind: EnvironmentKind,
    case: DecoherenceCase,
    t: RescaledTime,
    step: f64,
) -> Result<DensityMatrix> {
    let rates = case.rates(state.n_qubits())?;
    evolve_ode_rates(state, kind, &rates, t, step)
}

fn op_to_matrix(op: &Op2) -> ComplexMatrix {
    ComplexMatrix::from_row_major(vec![op[0][0], op[0][1], op[1][0], op[1][1]]).expect("2x2")
}
