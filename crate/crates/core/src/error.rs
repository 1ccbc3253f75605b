use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("infinite product diverges: {0}")]
    Divergent(String),
    #[error("parametrization has a pole at z = {0}")]
    PoleAtZ(String),
    #[error("root polishing did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("critical points collide (|dz| = {0:e})")]
    CriticalPointCollision(f64),
    #[error("series directions do not match")]
    DirectionMismatch,
    #[error("indicial symbol not invertible at order n = {n}: {reason}")]
    IndicialObstruction { n: usize, reason: String },
    #[error("framing f = {framing} is not supported at basepoint {basepoint}")]
    UnsupportedFraming { framing: i64, basepoint: String },
    #[error("operator coefficient is truncated; classical limit undefined")]
    TruncatedCoefficient,
    #[error("residual nonzero, first failing order {order}: {detail}")]
    ResidualNonzero { order: String, detail: String },
    #[error("argument outside the convergence domain: {0}")]
    ConvergenceDomain(String),
    #[error("lattice enumeration would not terminate at node {0}")]
    NonTerminating(String),
    #[error("series does not start with constant term 1")]
    NonUnitConstant,
    #[error("no branch with Y(0) = 1: {0}")]
    NoUnitBranch(String),
    #[error("convergence budget exceeded: tail {tail:e} at {terms} terms")]
    ConvergenceBudget { terms: usize, tail: f64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("operation needs numeric parameters: {0}")]
    NeedsNumeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
