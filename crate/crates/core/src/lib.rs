//! (p,q)-analogues of the Bleimann-Butzer-Hahn operators on `[0, ∞)`.
//!
//! ```
//! use pqbbh_core::{OperatorSpec, PqParams};
//!
//! let spec = OperatorSpec::base(2, PqParams::classical()).unwrap();
//! let v = spec.evaluate(&|t: f64| t / (1.0 + t), 1.0).unwrap();
//! assert!((v - 1.0 / 3.0).abs() < 1e-15);
//! ```

pub mod analysis;
pub mod cli;
pub mod divided;
mod error;
pub mod expr;
mod function;
pub mod operator;
pub mod pq;

pub use divided::{divided_difference, representation, representation_rhs, Representation};
pub use error::{Error, FunctionError, Result};
pub use expr::{eval_expression, parse_expression, Expr, ParseError};
pub use function::{RealFunction, Registered};
pub use operator::{
    evaluate, evaluate_stancu, nodes, stancu_nodes, weights, NodeTable, OperatorSpec, Variant, WeightTable,
};
pub use pq::{euler_coefficients, euler_expansion, pochhammer_ell, pq_binomial, pq_factorial, pq_integer, PqParams};
