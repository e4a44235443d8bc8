use std::fmt;

use thiserror::Error;

/// Failure reported by a [`RealFunction`](crate::RealFunction) at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionError {
    /// The sub-expression (or function name) that could not be evaluated.
    pub what: String,
    pub t: f64,
}

impl fmt::Display for FunctionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}` is undefined at t = {}", self.what, self.t)
    }
}

impl std::error::Error for FunctionError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid (p,q) parameters: {0}")]
    InvalidParams(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operator variant mismatch: {0}")]
    VariantMismatch(&'static str),

    #[error("query point {point} collides with node {node} (index {index})")]
    NodeCollision { point: f64, node: f64, index: usize },

    #[error("node {index} = {node} lies outside the half-line")]
    OffDomainNode { index: usize, node: f64 },

    #[error("function evaluation failed at node {index} (t = {t}): {source}")]
    Function {
        index: usize,
        t: f64,
        #[source]
        source: FunctionError,
    },

    #[error("function evaluation failed at t = {t}: {source}")]
    Evaluation {
        t: f64,
        #[source]
        source: FunctionError,
    },

    #[error("function value at t = {t} is not finite ({value})")]
    NonFinite { t: f64, value: f64 },

    #[error("weight normalizer {computed} disagrees with ln of the Pochhammer product {expected}")]
    Normalization { computed: f64, expected: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
