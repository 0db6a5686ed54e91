use thiserror::Error;

/// Errors produced by the closed forms, oracles and spectrum solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain {domain}")]
    Domain { what: &'static str, value: f64, domain: &'static str },

    #[error("{what} diverges at (alpha, gamma) = ({alpha}, {gamma})")]
    Divergent { what: &'static str, alpha: f64, gamma: f64 },

    #[error("order {order} is too large for exact rational arithmetic (max {max})")]
    OrderTooLarge { order: u32, max: u32 },

    #[error("quadrature did not reach tolerance {tol:e}: estimate {estimate} with error {error:e}")]
    ToleranceNotReached { estimate: f64, error: f64, tol: f64 },

    #[error("non-finite function value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("least-squares fit is rank deficient: {0}")]
    RankDeficient(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
