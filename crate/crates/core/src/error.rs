use thiserror::Error;

/// Errors raised by state construction and by operations that need quantum
/// (or pure, or orthogonal) inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability {name} = {value} lies outside [0, 1]")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error(
        "coin triple is classical: (p1-1/2)^2 + (p2-1/2)^2 + (p3-1/2)^2 = {radius2} exceeds 1/4, \
         so the matrix built from it has a negative eigenvalue"
    )]
    NotQuantum { radius2: f64 },

    #[error(
        "coin triple is not a pure state: (p1-1/2)^2 + (p2-1/2)^2 + (p3-1/2)^2 = {radius2}, \
         expected exactly 1/4"
    )]
    NotPure { radius2: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("spinor is not normalized: |a0|^2 + |a1|^2 = {norm2}")]
    SpinorNotNormalized { norm2: f64 },

    #[error("complex number has modulus {modulus} > 1")]
    OutsideUnitDisk { modulus: f64 },

    #[error(
        "states are not orthogonal: overlap Tr(rho1 rho2) = {overlap:e}, expected <psi1|psi2> = 0"
    )]
    NotOrthogonal { overlap: f64 },

    #[error("superposition vanishes by destructive interference (<chi|chi> = {norm2:e}); no qubit state exists")]
    DegenerateSuperposition { norm2: f64 },

    #[error(
        "phase reference is orthogonal to an input state: Tr(rho1 rho0 rho2 rho0) = {trace:e}"
    )]
    DegeneratePhaseReference { trace: f64 },

    #[error("superposition weights are degenerate: lambda1 * lambda2 = {product:e}, nonlinear part undefined")]
    DegenerateWeights { product: f64 },

    #[error("no flips recorded on the {axis} axis")]
    InsufficientData { axis: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ProbabilityOutOfRange { .. } => "probability_out_of_range",
            Error::NotQuantum { .. } => "classical_state",
            Error::NotPure { .. } => "not_pure",
            Error::NotHermitian { .. } => "not_hermitian",
            Error::TraceNotUnit { .. } => "trace_not_unit",
            Error::SpinorNotNormalized { .. } => "spinor_not_normalized",
            Error::OutsideUnitDisk { .. } => "outside_unit_disk",
            Error::NotOrthogonal { .. } => "not_orthogonal",
            Error::DegenerateSuperposition { .. } => "degenerate_superposition",
            Error::DegeneratePhaseReference { .. } => "degenerate_phase_reference",
            Error::DegenerateWeights { .. } => "degenerate_weights",
            Error::InsufficientData { .. } => "insufficient_data",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
