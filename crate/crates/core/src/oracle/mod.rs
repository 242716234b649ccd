//! Reference machinery in exact and extended-precision arithmetic.

mod exactness;
pub mod hp;
mod rational;
mod reference;

pub use exactness::{basis_relative_errors, exactness_degree, exactness_degree_with, DEFAULT_EXACTNESS_TOL};
pub use hp::Precision;
pub use rational::{
    chebyshev_moment, chebyshev_t_exact, exact_newton_cotes, monomial_moment, newton_cotes_error_exact,
    Basis, RationalRule, MAX_NEWTON_COTES_NODES,
};
pub use reference::{
    closed_form, quadrature_value, reference_integral, reference_integral_with, ReferenceMethod,
    ReferenceValue,
};

use crate::rule::{Domain, WeightFunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("precision of {bits} bits is below the minimum of {min}")]
    PrecisionTooLow { bits: u32, min: u32 },
    #[error("QUADLAB_PRECISION_BITS={0:?} is not an integer")]
    InvalidPrecisionVariable(String),
    #[error("newton-cotes node count {n} outside [2, {max}]")]
    NewtonCotesRange { n: usize, max: usize },
    #[error("moment system singular at column {column}")]
    SingularSystem { column: usize },
    #[error("no reference for {integrand} with weight {weight:?} on {domain}")]
    Unsupported {
        integrand: String,
        weight: WeightFunction,
        domain: Domain,
    },
    #[error("meshes disagree for {integrand}: {first} vs {second}")]
    MeshDisagreement {
        integrand: String,
        first: String,
        second: String,
    },
    #[error("extended-precision gauss-legendre with {points} points failed: {reason}")]
    HighPrecisionRule { points: usize, reason: String },
    #[error("rule is not exact even for constants (relative error {error:e})")]
    NotExactForConstants { error: f64 },
}
