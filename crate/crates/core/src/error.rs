use thiserror::Error;

/// Errors raised by the simulation kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register of {qubits} qubits exceeds the 3-qubit limit")]
    DimensionOverflow { qubits: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix dimension {0} is not 2, 4 or 8")]
    BadDimension(usize),
    #[error("operator is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },
    #[error("qubit {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("qubit {0} listed more than once")]
    RepeatedQubit(usize),
    #[error("partial trace must drop at least one and keep at least one qubit")]
    InvalidDropSet,
    #[error("invalid Bloch angles theta={theta}, phi={phi}")]
    InvalidAngles { theta: f64, phi: f64 },
    #[error("rescaled time must be finite and non-negative, got {0}")]
    NegativeTime(f64),
    #[error("coupling rate for qubit {qubit} is negative or not finite: {rate}")]
    NegativeRate { qubit: usize, rate: f64 },
    #[error("expected {expected} coupling rates, got {found}")]
    RateCount { expected: usize, found: usize },
    #[error("integration step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("decoherence case {case} addresses no qubit of a {n_qubits}-qubit state")]
    CaseOutOfRange { case: u8, n_qubits: usize },
    #[error("decoherence case must be 1, 2 or 3, got {0}")]
    UnknownCase(u8),
    #[error("not a density matrix: trace error {trace_error:e}, hermiticity error {hermiticity_error:e}, min eigenvalue {min_eigenvalue:e}")]
    NotDensityMatrix {
        trace_error: f64,
        hermiticity_error: f64,
        min_eigenvalue: f64,
    },
    #[error("concurrence needs a 2-qubit state, got {0} qubits")]
    NotTwoQubits(usize),
    #[error("quadrature needs n_theta >= 4 and n_phi >= 8, got {n_theta} x {n_phi}")]
    QuadratureTooSmall { n_theta: usize, n_phi: usize },
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
