//! Error tables, convergence studies and the Chebyshev error decomposition.

mod convergence;
mod decomposition;
mod table;

pub use convergence::{
    convergence_study, first_n_below, fit_model, ConvergenceRecord, Fit, FitModel, Sample,
};
pub use decomposition::{error_decomposition, DecompositionTerm, ErrorDecomposition};
pub use table::{build_error_table, build_error_table_with, ErrorTable, MAX_TABLE_SIZE};

use std::fmt;

use crate::classical::{
    clenshaw_curtis_rule, gauss_rule, newton_cotes_rule, trapezoid_rule, ConstructionError, GaussFamily,
};
use crate::integrand::{Integrand, IntegrandId};
use crate::oracle::{reference_integral, OracleError};
use crate::poly::PolyError;
use crate::rule::{Domain, Family, QuadratureRule, RuleError, WeightFunction};
use crate::transforms::{strip_transformed_rule, truncated_hermite_rule, InnerRule, TruncationPlan};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{operation} does not support family {family}")]
    UnsupportedFamily { family: Family, operation: &'static str },
    #[error("{what} = {value} exceeds {max}")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("node counts must be non-empty and strictly increasing")]
    InvalidNList,
    #[error("rule {rule} carries weight {rule_weight:?} but the target needs {target_weight:?}")]
    WeightMismatch {
        rule: String,
        rule_weight: WeightFunction,
        target_weight: WeightFunction,
    },
    #[error("degree {m} too small: need m >= 2n = {min}")]
    DegreeTooSmall { m: usize, min: usize },
    #[error("chebyshev tail {tail:e} beyond degree {m} is not negligible against E_n(f) = {measured:e}")]
    TailNotNegligible { m: usize, tail: f64, measured: f64 },
}

/// Recipe for a rule family parametrised by its node count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RuleSpec {
    NewtonCotes,
    ClenshawCurtis,
    GaussLegendre,
    /// Closed trapezoid rule on `[-1, 1]`.
    Trapezoid,
    StripTransformed { rho: f64 },
    GaussHermite,
    GaussLaguerre,
    /// Inner rule on `[-L n^{1/3}, L n^{1/3}]` against `exp(-x^2)`.
    TruncatedHermite { l: f64, inner: InnerRule },
    /// Periodic trapezoid on `[-half_width, half_width]` against `exp(-x^2)`.
    GaussianTrapezoid { half_width: f64 },
}

impl RuleSpec {
    pub fn build(&self, n: usize) -> Result<QuadratureRule, ConstructionError> {
        match *self {
            RuleSpec::NewtonCotes => newton_cotes_rule(n),
            RuleSpec::ClenshawCurtis => clenshaw_curtis_rule(n),
            RuleSpec::GaussLegendre => gauss_rule(GaussFamily::Legendre, n),
            RuleSpec::Trapezoid => trapezoid_rule(-1.0, 1.0, n, false),
            RuleSpec::StripTransformed { rho } => strip_transformed_rule(n, rho),
            RuleSpec::GaussHermite => gauss_rule(GaussFamily::Hermite, n),
            RuleSpec::GaussLaguerre => gauss_rule(GaussFamily::Laguerre, n),
            RuleSpec::TruncatedHermite { l, inner } => truncated_hermite_rule(&TruncationPlan::new(l, n, inner)?),
            RuleSpec::GaussianTrapezoid { half_width } => Ok(trapezoid_rule(-half_width, half_width, n, true)?
                .absorb_weight(WeightFunction::GaussianExpNegX2, Family::Trapezoid)
                .with_provenance(format!("periodic on [-{half_width}, {half_width}]"))),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            RuleSpec::NewtonCotes => Family::NewtonCotes,
            RuleSpec::ClenshawCurtis => Family::ClenshawCurtis,
            RuleSpec::GaussLegendre => Family::GaussLegendre,
            RuleSpec::Trapezoid => Family::Trapezoid,
            RuleSpec::StripTransformed { .. } => Family::StripTransformedGauss,
            RuleSpec::GaussHermite => Family::GaussHermite,
            RuleSpec::GaussLaguerre => Family::GaussLaguerre,
            RuleSpec::TruncatedHermite { .. } => Family::TruncatedHermite,
            RuleSpec::GaussianTrapezoid { .. } => Family::Trapezoid,
        }
    }

    /// Weight function of the integral the rule approximates.
    pub fn weight_function(&self) -> WeightFunction {
        match self {
            RuleSpec::GaussHermite | RuleSpec::TruncatedHermite { .. } | RuleSpec::GaussianTrapezoid { .. } => {
                WeightFunction::GaussianExpNegX2
            }
            RuleSpec::GaussLaguerre => WeightFunction::ExpNegX,
            _ => WeightFunction::Unit,
        }
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::StripTransformed { rho } => write!(f, "strip-transformed-gauss(rho={rho})"),
            RuleSpec::TruncatedHermite { l, inner } => write!(f, "truncated-hermite({}, L={l})", inner.name()),
            RuleSpec::GaussianTrapezoid { half_width } => write!(f, "periodic-trapezoid(half-width={half_width})"),
            other => f.write_str(other.family().name()),
        }
    }
}

/// Integral `∫ w(x) f(x) dx` over the natural domain of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    pub id: IntegrandId,
    pub weight: WeightFunction,
}

impl Target {
    pub fn new(id: IntegrandId, weight: WeightFunction) -> Self {
        Target { id, weight }
    }

    pub fn unit(id: IntegrandId) -> Self {
        Target::new(id, WeightFunction::Unit)
    }

    pub fn domain(&self) -> Domain {
        match self.weight {
            WeightFunction::Unit => Domain::CANONICAL,
            WeightFunction::GaussianExpNegX2 => Domain::WholeLine,
            WeightFunction::ExpNegX => Domain::HalfLine,
        }
    }

    pub fn reference(&self) -> Result<f64, OracleError> {
        Ok(reference_integral(self.id, self.weight, self.domain())?.to_f64())
    }

    /// Integrand to feed `rule` so that it approximates this target.
    pub fn integrand_for(&self, rule: &QuadratureRule) -> Result<Integrand, ExperimentError> {
        if rule.weight_function() == self.weight {
            Ok(Integrand::new(self.id))
        } else if rule.weight_function() == WeightFunction::Unit {
            Ok(Integrand::damped(self.id, self.weight))
        } else {
            Err(ExperimentError::WeightMismatch {
                rule: rule.family().to_string(),
                rule_weight: rule.weight_function(),
                target_weight: self.weight,
            })
        }
    }

    pub fn name(&self) -> String {
        Integrand::damped(self.id, self.weight).name()
    }
}
