use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    Asymmetric,

    #[error("phi_{{p,q}} needs p >= q >= 1, got p = {p}, q = {q}")]
    InvalidPair { p: u32, q: u32 },

    /// `det A^N` divided by the product of the `phi_{p,q}` factors left a
    /// remainder or a non-constant quotient.
    #[error("Kac determinant at level {level} is not a constant multiple of the phi product")]
    NonconstantRatio { level: usize },

    #[error("cutoff {cutoff} admits no in-window check for modes (m, n) = ({m}, {n})")]
    CutoffTooSmall { m: i64, n: i64, cutoff: usize },

    #[error("guard {guard} is smaller than the required {required}")]
    GuardTooSmall { guard: usize, required: usize },

    #[error("window exhausted: {0}")]
    WindowExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}
