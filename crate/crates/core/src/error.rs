use thiserror::Error;

/// Library-wide error type. Variants mirror the failure modes of the
/// operator constructors, the circuit simulator and the preparation
/// algorithm, so callers can map them onto exit codes or messages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operand is not unitary (max |M\u{2020}M - I| = {deviation:.3e})")]
    NonUnitaryOperand { deviation: f64 },

    #[error("input is not Hermitian (max |M - M\u{2020}| = {deviation:.3e})")]
    NonHermitianInput { deviation: f64 },

    #[error("input is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NonPsdInput { min_eigenvalue: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("state vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("phase point ({q},{p}) outside the {modulus}x{modulus} grid")]
    PointOutOfRange { q: i64, p: i64, modulus: usize },

    #[error("line ({n1},{n2},{n3}) is not axis-aligned")]
    NotAxisAligned { n1: usize, n2: usize, n3: usize },

    #[error("line coefficients ({n1},{n2}) are both even; no cat-map parameters exist")]
    NoOddCoefficient { n1: usize, n2: usize },

    #[error("empty region q in [{q1},{q2}], p in [{p1},{p2}]")]
    EmptyRegion { q1: usize, q2: usize, p1: usize, p2: usize },

    #[error("ground state is degenerate (gap {gap:.3e})")]
    DegenerateGround { gap: f64 },

    #[error("invalid failure budget epsilon = {0}; need 0 < epsilon < 1")]
    InvalidBudget(f64),

    #[error("filter failed to hit the target peak after {attempts} attempts")]
    FilterFailed { attempts: usize },

    #[error("unknown diagnostics request `{0}`")]
    UnknownRequest(String),

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("malformed state file: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
