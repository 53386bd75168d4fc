use thiserror::Error;

/// Which hypothesis of the balanced setting failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    /// a) w balanced
    A,
    /// b) essentially self-dual blocks
    B,
    /// c) negative chamber
    C,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HczError {
    #[error("expression has a pole of order {order} at the evaluation point")]
    Pole { order: i64 },
    #[error("expression vanishes to order {order} at the evaluation point; use the leading coefficient")]
    Zero { order: i64 },
    #[error("expression is identically zero")]
    ZeroFunction,
    #[error("Gamma argument {arg} at the evaluation point is not 1/2 or 1")]
    IrrationalGamma { arg: String },
    #[error("rank {n} exceeds the enumeration guard {max} (set HCZ_MAX_N to override)")]
    RankTooLarge { n: usize, max: usize },
    #[error("dim U_P = {d_u} is odd, no balanced element exists")]
    OddDimension { d_u: usize },
    #[error("{0} is not a Kostant representative for this parabolic")]
    NotKostant(String),
    #[error("K-type {nu} has the wrong parity for epsilon = {eps}")]
    ParityMismatch { nu: i64, eps: u8 },
    #[error("l = {0} is positive; use the D+ ⊕ D- closure check instead")]
    NotNegative(i64),
    #[error("parity violation: 2d = {two_d} and l = {l} differ mod 2")]
    ParityViolation { two_d: String, l: i64 },
    #[error("assumption a) violated: {0}")]
    NotBalanced(String),
    #[error("assumption b) violated: {0}")]
    NotSelfDual(String),
    #[error("assumption c) violated: {0}")]
    NotNegativeChamber(String),
    #[error("parity constraint violated: {0}")]
    ParityError(String),
    #[error("dominance failure: {0}")]
    DominanceFailure(String),
    #[error("non-integral character: {0}")]
    NonIntegralPairing(String),
    #[error("stripped product has order {order} at z = 0")]
    UnexpectedPole { order: i64 },
    #[error("n·n' = {d_u} is odd")]
    OddDU { d_u: usize },
    #[error("Gamma pole at argument {0}")]
    PoleArgument(f64),
    #[error("quadrature did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl HczError {
    /// The balanced-setting assumption this error reports, if any.
    pub fn assumption(&self) -> Option<Assumption> {
        match self {
            HczError::NotBalanced(_) | HczError::OddDimension { .. } | HczError::OddDU { .. } => Some(Assumption::A),
            HczError::NotSelfDual(_) => Some(Assumption::B),
            HczError::NotNegativeChamber(_) => Some(Assumption::C),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, HczError>;
