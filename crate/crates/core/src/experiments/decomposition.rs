use rug::Float;

use super::{ExperimentError, Target};
use crate::classical::clenshaw_curtis_rule;
use crate::integrand::Integrand;
use crate::oracle::hp::{chebyshev_t_hp, clenshaw_curtis_hp};
use crate::oracle::{chebyshev_moment, Precision};
use crate::poly::chebyshev_coefficients;
use crate::rule::{apply_rule, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionTerm {
    pub j: usize,
    pub a_j: f64,
    pub e_n_tj: f64,
    pub product: f64,
}

/// `E_n(f) ≈ Σ_{even j ∈ [n, m]} a_j E_n(T_j)` for Clenshaw-Curtis.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorDecomposition {
    pub n: usize,
    pub m: usize,
    pub terms: Vec<DecompositionTerm>,
    pub partial_sum: f64,
    /// `I_n(f) - I(f)` measured directly.
    pub measured: f64,
    /// `4 Σ_{j >= 3m/4} |a_j|`, a proxy for the dropped coefficients
    /// (`|E_n(T_j)| <= 4` for every `j`).
    pub tail_estimate: f64,
}

pub fn error_decomposition(n: usize, f: &Integrand, m: usize) -> Result<ErrorDecomposition, ExperimentError> {
    if m < 2 * n {
        return Err(ExperimentError::DegreeTooSmall { m, min: 2 * n });
    }
    if f.damping() != WeightFunction::Unit {
        return Err(ExperimentError::WeightMismatch {
            rule: "clenshaw-curtis".into(),
            rule_weight: WeightFunction::Unit,
            target_weight: f.damping(),
        });
    }
    let prec = Precision::default();
    let bits = prec.bits();
    let series = chebyshev_coefficients(f, m)?;
    let hp_rule = clenshaw_curtis_hp(n.max(2), prec);
    let rule = clenshaw_curtis_rule(n)?;
    let reference = Target::unit(f.id()).reference()?;
    let measured = apply_rule(&rule, f)? - reference;

    let start = n + n % 2;
    let terms: Vec<DecompositionTerm> = (start..=m)
        .step_by(2)
        .map(|j| {
            let sum = hp_rule.apply(|x| chebyshev_t_hp(j as u32, x));
            let e = (sum - Float::with_val(bits, &chebyshev_moment(j as u32))).to_f64();
            let a = series.coefficient(j);
            DecompositionTerm {
                j,
                a_j: a,
                e_n_tj: e,
                product: a * e,
            }
        })
        .collect();
    let partial_sum = crate::sum::compensated_sum(terms.iter().map(|t| t.product));
    let tail_estimate = 4.0 * (3 * m / 4..=m).map(|j| series.coefficient(j).abs()).sum::<f64>();
    if tail_estimate > measured.abs() && tail_estimate > 1e-13 {
        return Err(ExperimentError::TailNotNegligible {
            m,
            tail: tail_estimate,
            measured,
        });
    }
    Ok(ErrorDecomposition {
        n,
        m,
        terms,
        partial_sum,
        measured,
        tail_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrand::IntegrandId;

    #[test]
    fn single_chebyshev_term() {
        let n = 12;
        let f = Integrand::new(IntegrandId::Chebyshev(14));
        let d = error_decomposition(n, &f, 2 * n).unwrap();
        let nonzero: Vec<_> = d.terms.iter().filter(|t| t.a_j.abs() > 1e-12).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].j, 14);
        assert!((nonzero[0].a_j - 1.0).abs() < 1e-13);
        assert!((d.partial_sum - d.measured).abs() < 1e-13);
    }

    #[test]
    fn degree_too_small() {
        let f = Integrand::new(IntegrandId::Runge);
        assert!(matches!(
            error_decomposition(30, &f, 59),
            Err(ExperimentError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn tail_reported_when_truncation_is_too_early() {
        // Runge coefficients decay like 1.22^{-j}: degree 40 leaves a large tail.
        let f = Integrand::new(IntegrandId::Runge);
        assert!(matches!(
            error_decomposition(20, &f, 40),
            Err(ExperimentError::TailNotNegligible { .. })
        ));
    }
}
