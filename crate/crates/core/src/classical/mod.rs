//! Floating-point construction of every rule family.

mod clenshaw_curtis;
mod double_double;
mod gauss;
pub mod jacobi;
mod newton_cotes;
mod trapezoid;

pub use clenshaw_curtis::{clenshaw_curtis_rule, clenshaw_curtis_weights_hp};
pub use gauss::{gauss_nodes, gauss_rule, GaussNodes, MAX_GAUSS_NODES};
pub use jacobi::{GaussFamily, JacobiRecurrence};
pub use newton_cotes::{newton_cotes_rule, MAX_NEWTON_COTES_NODES};
pub use trapezoid::trapezoid_rule;

use crate::oracle::OracleError;
use crate::rule::RuleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("{what} {value} outside supported range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("tridiagonal eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    EigenNonConvergence { index: usize, iterations: usize },
    #[error("map evaluation failed at s = {s}")]
    MapEvaluation { s: f64 },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
