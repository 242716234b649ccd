//! Quadrature rules and the act of applying them.

use std::fmt;

use crate::integrand::Integrand;
use crate::sum::compensated_sum;

/// Family a rule was constructed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    NewtonCotes,
    ClenshawCurtis,
    GaussLegendre,
    GaussHermite,
    GaussLaguerre,
    Trapezoid,
    StripTransformedGauss,
    TruncatedHermite,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::NewtonCotes => "newton-cotes",
            Family::ClenshawCurtis => "clenshaw-curtis",
            Family::GaussLegendre => "gauss-legendre",
            Family::GaussHermite => "gauss-hermite",
            Family::GaussLaguerre => "gauss-laguerre",
            Family::Trapezoid => "trapezoid",
            Family::StripTransformedGauss => "strip-transformed-gauss",
            Family::TruncatedHermite => "truncated-hermite",
        }
    }

    /// Families whose weights carry no sign constraint.
    pub fn allows_negative_weights(self) -> bool {
        matches!(self, Family::NewtonCotes)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weight function multiplying the integrand in the target integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFunction {
    Unit,
    /// `exp(-x^2)` on the whole line.
    GaussianExpNegX2,
    /// `exp(-x)` on the half line.
    ExpNegX,
}

impl WeightFunction {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            WeightFunction::Unit => 1.0,
            WeightFunction::GaussianExpNegX2 => (-x * x).exp(),
            WeightFunction::ExpNegX => (-x).exp(),
        }
    }
}

/// Integration domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    Interval { a: f64, b: f64 },
    /// `[0, inf)`
    HalfLine,
    /// `(-inf, inf)`
    WholeLine,
}

impl Domain {
    pub const CANONICAL: Domain = Domain::Interval { a: -1.0, b: 1.0 };

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Domain::Interval { a, b } => a <= x && x <= b,
            Domain::HalfLine => x >= 0.0 && x.is_finite(),
            Domain::WholeLine => x.is_finite(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == Domain::CANONICAL
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Domain::Interval { a, b } => write!(f, "[{a}, {b}]"),
            Domain::HalfLine => f.write_str("[0, inf)"),
            Domain::WholeLine => f.write_str("(-inf, inf)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RuleError {
    #[error("node/weight length mismatch: {nodes} nodes, {weights} weights, n = {n}")]
    LengthMismatch { n: usize, nodes: usize, weights: usize },
    #[error("nodes not strictly increasing at index {index}")]
    NodesNotIncreasing { index: usize },
    #[error("node {index} ({node}) lies outside {domain}")]
    NodeOutsideDomain { index: usize, node: f64, domain: String },
    #[error("weight {index} of a {family} rule is negative ({weight})")]
    NegativeWeight { family: Family, index: usize, weight: f64 },
    #[error("non-finite weight at index {index}")]
    NonFiniteWeight { index: usize },
    #[error("integrand {integrand} is not finite at node x = {node}")]
    Evaluation { integrand: String, node: f64 },
    #[error("empty rule")]
    Empty,
}

/// A finite node/weight set approximating `∫ w(x) f(x) dx` over a domain.
///
/// Weights that underflow in double precision are stored as `0.0`; the
/// positivity invariant for positive families is therefore `w >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    family: Family,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: Domain,
    weight_function: WeightFunction,
    provenance: String,
}

impl QuadratureRule {
    pub fn new(
        family: Family,
        nodes: Vec<f64>,
        weights: Vec<f64>,
        domain: Domain,
        weight_function: WeightFunction,
    ) -> Result<Self, RuleError> {
        let rule = QuadratureRule {
            family,
            nodes,
            weights,
            domain,
            weight_function,
            provenance: String::new(),
        };
        rule.validate()?;
        Ok(rule)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn validate(&self) -> Result<(), RuleError> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(RuleError::Empty);
        }
        if self.weights.len() != n {
            return Err(RuleError::LengthMismatch {
                n,
                nodes: n,
                weights: self.weights.len(),
            });
        }
        for (index, pair) in self.nodes.windows(2).enumerate() {
            if !(pair[0] < pair[1]) {
                return Err(RuleError::NodesNotIncreasing { index: index + 1 });
            }
        }
        for (index, &node) in self.nodes.iter().enumerate() {
            if !self.domain.contains(node) {
                return Err(RuleError::NodeOutsideDomain {
                    index,
                    node,
                    domain: self.domain.to_string(),
                });
            }
        }
        for (index, &weight) in self.weights.iter().enumerate() {
            if !weight.is_finite() {
                return Err(RuleError::NonFiniteWeight { index });
            }
            if weight < 0.0 && !self.family.allows_negative_weights() {
                return Err(RuleError::NegativeWeight {
                    family: self.family,
                    index,
                    weight,
                });
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn weight_function(&self) -> WeightFunction {
        self.weight_function
    }

    /// Free-form note on how the rule was built (map used, inner rule, ...).
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn weight_sum(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    pub fn abs_weight_sum(&self) -> f64 {
        compensated_sum(self.weights.iter().map(|w| w.abs()))
    }

    /// `Σ w_j f(x_j)` for an arbitrary closure.
    pub fn apply_fn<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64, RuleError> {
        self.apply_named("<closure>", f)
    }

    fn apply_named<F: Fn(f64) -> f64>(&self, name: &str, f: F) -> Result<f64, RuleError> {
        let mut terms = Vec::with_capacity(self.n());
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let fx = f(x);
            if !fx.is_finite() {
                return Err(RuleError::Evaluation {
                    integrand: name.to_string(),
                    node: x,
                });
            }
            terms.push(w * fx);
        }
        Ok(sorted_compensated_sum(terms))
    }

    /// Copy of this rule with `w(x)` folded into the weights, so that applying
    /// it to `f` estimates `∫ w(x) f(x) dx`. Used for finite rules that stand in
    /// for a weighted integral on an unbounded domain.
    pub fn absorb_weight(&self, weight_function: WeightFunction, family: Family) -> Self {
        let weights = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * weight_function.eval(x))
            .collect();
        let domain = match weight_function {
            WeightFunction::Unit => self.domain,
            WeightFunction::GaussianExpNegX2 => Domain::WholeLine,
            WeightFunction::ExpNegX => Domain::HalfLine,
        };
        QuadratureRule {
            family,
            nodes: self.nodes.clone(),
            weights,
            domain,
            weight_function,
            provenance: self.provenance.clone(),
        }
    }

    /// Drops nodes whose weight is below `threshold`.
    pub fn drop_weights_below(&self, threshold: f64) -> Self {
        let (nodes, weights) = self
            .nodes
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w.abs() >= threshold)
            .map(|(&x, &w)| (x, w))
            .unzip();
        QuadratureRule {
            nodes,
            weights,
            ..self.clone()
        }
    }
}

/// Sums the terms in order of increasing magnitude with compensation.
fn sorted_compensated_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    compensated_sum(terms)
}

/// `I_n(f) = Σ w_j f(x_j)`.
pub fn apply_rule(rule: &QuadratureRule, f: &Integrand) -> Result<f64, RuleError> {
    rule.apply_named(&f.name(), |x| f.eval(x))
}

/// Signed error `I_n(f) - I(f)` against a trusted reference value.
pub fn quadrature_error(
    rule: &QuadratureRule,
    f: &Integrand,
    reference: f64,
) -> Result<f64, RuleError> {
    Ok(apply_rule(rule, f)? - reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrand::IntegrandId;

    fn midpoint() -> QuadratureRule {
        QuadratureRule::new(
            Family::GaussLegendre,
            vec![0.0],
            vec![2.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap()
    }

    #[test]
    fn midpoint_rule_kills_odd_functions() {
        let f = Integrand::new(IntegrandId::Monomial(1));
        assert_eq!(apply_rule(&midpoint(), &f).unwrap(), 0.0);
    }

    #[test]
    fn constant_is_exact() {
        let one = Integrand::new(IntegrandId::One);
        assert_eq!(quadrature_error(&midpoint(), &one, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_unsorted_nodes() {
        let err = QuadratureRule::new(
            Family::Trapezoid,
            vec![0.5, -0.5],
            vec![1.0, 1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap_err();
        assert_eq!(err, RuleError::NodesNotIncreasing { index: 1 });
    }

    #[test]
    fn rejects_negative_weight_for_positive_family() {
        let err = QuadratureRule::new(
            Family::ClenshawCurtis,
            vec![-1.0, 1.0],
            vec![3.0, -1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::NegativeWeight { index: 1, .. }));
        // Newton-Cotes carries no sign constraint.
        QuadratureRule::new(
            Family::NewtonCotes,
            vec![-1.0, 1.0],
            vec![3.0, -1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap();
    }

    #[test]
    fn rejects_nodes_outside_domain_and_length_mismatch() {
        let err = QuadratureRule::new(
            Family::Trapezoid,
            vec![-1.5, 1.0],
            vec![1.0, 1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::NodeOutsideDomain { index: 0, .. }));
        let err = QuadratureRule::new(
            Family::Trapezoid,
            vec![-1.0, 1.0],
            vec![1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap_err();
        assert!(matches!(err, RuleError::LengthMismatch { .. }));
    }

    #[test]
    fn non_finite_value_names_the_node() {
        let rule = QuadratureRule::new(
            Family::Trapezoid,
            vec![-1.0, 0.0, 1.0],
            vec![0.5, 1.0, 0.5],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap();
        let err = rule.apply_fn(|x| 1.0 / x).unwrap_err();
        assert_eq!(
            err,
            RuleError::Evaluation {
                integrand: "<closure>".into(),
                node: 0.0
            }
        );
    }

    #[test]
    fn alternating_large_terms_sum_cleanly() {
        // Naive left-to-right summation returns 0 here.
        let rule = QuadratureRule::new(
            Family::NewtonCotes,
            vec![-1.0, 0.0, 0.5, 1.0],
            vec![1e16, 1.0, -1e16, 1.0],
            Domain::CANONICAL,
            WeightFunction::Unit,
        )
        .unwrap();
        assert_eq!(rule.apply_fn(|_| 1.0).unwrap(), 2.0);
    }
}
