use rug::Float;

use super::hp::{chebyshev_t_hp, Precision};
use super::rational::chebyshev_moment;
use super::OracleError;
use crate::rule::{Domain, QuadratureRule, WeightFunction};

pub const DEFAULT_EXACTNESS_TOL: f64 = 1e-10;

/// Largest `d` such that every basis polynomial of degree `k <= d` is
/// integrated to relative error below `tol`, at the default precision.
pub fn exactness_degree(rule: &QuadratureRule, tol: f64) -> Result<usize, OracleError> {
    exactness_degree_with(rule, tol, Precision::default())
}

pub fn exactness_degree_with(
    rule: &QuadratureRule,
    tol: f64,
    prec: Precision,
) -> Result<usize, OracleError> {
    let cap = 4 * rule.n() + 10;
    let errors = basis_relative_errors(rule, cap, prec)?;
    match errors.iter().position(|&e| !(e < tol)) {
        Some(0) => Err(OracleError::NotExactForConstants { error: errors[0] }),
        Some(k) => Ok(k - 1),
        None => Ok(cap),
    }
}

/// Relative errors for basis degrees `0..=k_max`, computed in extended
/// precision from the rule's stored double nodes and weights.
///
/// On `[a, b]` with unit weight the basis is `T_k` mapped affinely and errors
/// are scaled by `max(|I|, (b - a)/2)`. On the whole line (`exp(-x^2)`) and
/// half line (`exp(-x)`) the basis is `x^k`, scaled by `∫|x|^k w`.
pub fn basis_relative_errors(
    rule: &QuadratureRule,
    k_max: usize,
    prec: Precision,
) -> Result<Vec<f64>, OracleError> {
    let bits = prec.bits();
    let weights: Vec<Float> = rule.weights().iter().map(|&w| prec.float(w)).collect();
    let unsupported = || OracleError::Unsupported {
        integrand: "polynomial basis".into(),
        weight: rule.weight_function(),
        domain: rule.domain(),
    };
    match (rule.domain(), rule.weight_function()) {
        (Domain::Interval { a, b }, WeightFunction::Unit) => {
            let half = Float::with_val(bits, b - a) / 2u32;
            let centre = prec.float(a) / 2u32 + prec.float(b) / 2u32;
            let mapped: Vec<Float> = rule
                .nodes()
                .iter()
                .map(|&x| (prec.float(x) - &centre) / &half)
                .collect();
            Ok((0..=k_max as u32)
                .map(|k| {
                    let mut sum = Float::with_val(bits, 0);
                    for (t, w) in mapped.iter().zip(&weights) {
                        sum += chebyshev_t_hp(k, t) * w;
                    }
                    let exact = Float::with_val(bits, &chebyshev_moment(k)) * &half;
                    let scale = if exact.clone().abs() > half { exact.clone().abs() } else { half.clone() };
                    ((sum - exact) / scale).abs().to_f64()
                })
                .collect())
        }
        (Domain::WholeLine, WeightFunction::GaussianExpNegX2)
        | (Domain::HalfLine, WeightFunction::ExpNegX) => {
            let gaussian = rule.weight_function() == WeightFunction::GaussianExpNegX2;
            let nodes: Vec<Float> = rule.nodes().iter().map(|&x| prec.float(x)).collect();
            let mut powers: Vec<Float> = vec![Float::with_val(bits, 1); nodes.len()];
            let mut out = Vec::with_capacity(k_max + 1);
            for k in 0..=k_max as u32 {
                let mut sum = Float::with_val(bits, 0);
                for (p, w) in powers.iter().zip(&weights) {
                    sum += Float::with_val(bits, p * w);
                }
                let scale = if gaussian {
                    Float::with_val(bits, k + 1) / 2u32
                } else {
                    Float::with_val(bits, k + 1)
                }
                .gamma();
                let exact = if gaussian && k % 2 == 1 {
                    Float::with_val(bits, 0)
                } else {
                    scale.clone()
                };
                out.push(((sum - exact) / scale).abs().to_f64());
                for (p, x) in powers.iter_mut().zip(&nodes) {
                    *p *= x;
                }
            }
            Ok(out)
        }
        _ => Err(unsupported()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{gauss_rule, trapezoid_rule, GaussFamily};

    #[test]
    fn trapezoid_is_exact_for_linears_only() {
        let rule = trapezoid_rule(-1.0, 1.0, 2, false).unwrap();
        assert_eq!(exactness_degree(&rule, DEFAULT_EXACTNESS_TOL).unwrap(), 1);
    }

    #[test]
    fn shifted_interval_uses_mapped_basis() {
        let rule = trapezoid_rule(0.0, 3.0, 7, false).unwrap();
        assert_eq!(exactness_degree(&rule, DEFAULT_EXACTNESS_TOL).unwrap(), 1);
    }

    #[test]
    fn unbounded_gauss_rules() {
        for n in [1, 2, 5, 10] {
            let gh = gauss_rule(GaussFamily::Hermite, n).unwrap();
            assert_eq!(exactness_degree(&gh, DEFAULT_EXACTNESS_TOL).unwrap(), 2 * n - 1);
            let gl = gauss_rule(GaussFamily::Laguerre, n).unwrap();
            assert_eq!(exactness_degree(&gl, DEFAULT_EXACTNESS_TOL).unwrap(), 2 * n - 1);
        }
    }
}
