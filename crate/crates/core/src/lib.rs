//! Quadrature laboratory: classical quadrature rules, exactness
//! certification against exact and extended-precision oracles, and the
//! experiments that measure how accurate the rules really are.

pub mod classical;
pub mod cubature;
pub mod experiments;
pub mod integrand;
pub mod oracle;
pub mod poly;
pub mod rule;
pub mod sum;
pub mod transforms;

pub use integrand::{Integrand, IntegrandId};
pub use rule::{apply_rule, quadrature_error, Domain, Family, QuadratureRule, RuleError, WeightFunction};
