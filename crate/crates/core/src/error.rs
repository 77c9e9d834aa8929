use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quadrature order must be in 1..={max}, got {order}")]
    InvalidOrder { order: usize, max: usize },

    #[error("root refinement for node {index} did not converge after {iterations} iterations")]
    RootNotConverged { index: usize, iterations: usize },

    #[error("integrand is not finite at node {index}")]
    NonFiniteIntegrand { index: usize },

    #[error("e^(x^2/2) leaves the floating-point range at node {index}")]
    RangeOverflow { index: usize },

    #[error("cubature needs {required} points; the budget is {budget}")]
    CubatureBudget { required: u128, budget: u128 },

    #[error("floating-point overflow evaluating degree-{degree} Hermite polynomial")]
    Overflow { degree: usize },

    #[error("sigma must be positive and finite, got {0}")]
    NonPositiveSigma(String),

    #[error("no change-of-basis matrix from {from} to {to}")]
    UnsupportedBasisPair { from: String, to: String },

    #[error("cannot compose: inner matrix maps into {inner_to}, outer expects {outer_from}")]
    BasisMismatch { inner_to: String, outer_from: String },

    #[error("graph has {vertices} vertices; matching counts support at most {max}")]
    GraphTooLarge { vertices: usize, max: usize },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("closed form is defined for 2 or 3 parts, got {0}")]
    ClosedFormArity(usize),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
