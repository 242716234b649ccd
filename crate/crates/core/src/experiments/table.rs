use rug::Float;

use super::ExperimentError;
use crate::oracle::hp::{chebyshev_t_hp, clenshaw_curtis_hp, gauss_legendre_hp, HpRule};
use crate::oracle::{chebyshev_moment, exact_newton_cotes, monomial_moment, newton_cotes_error_exact, Basis, Precision};
use crate::rule::Family;

pub const MAX_TABLE_SIZE: usize = 80;

/// `|E_n(p_k)|` for even `k`, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorTable {
    pub family: Family,
    pub n: usize,
    pub basis: Basis,
    pub rows: Vec<(u32, f64)>,
}

impl ErrorTable {
    pub fn get(&self, k: u32) -> Option<f64> {
        self.rows.iter().find(|(j, _)| *j == k).map(|&(_, e)| e)
    }
}

/// Chebyshev-basis error table at the default precision.
pub fn build_error_table(family: Family, n: usize, k_max: usize) -> Result<ErrorTable, ExperimentError> {
    build_error_table_with(family, n, k_max, Basis::Chebyshev, Precision::default())
}

/// Newton-Cotes rows come from the exact rational rule; Clenshaw-Curtis and
/// Gauss-Legendre rows from nodes and weights held in extended precision.
pub fn build_error_table_with(
    family: Family,
    n: usize,
    k_max: usize,
    basis: Basis,
    prec: Precision,
) -> Result<ErrorTable, ExperimentError> {
    for (what, value) in [("n", n), ("k_max", k_max)] {
        if value > MAX_TABLE_SIZE {
            return Err(ExperimentError::OutOfRange {
                what,
                value,
                max: MAX_TABLE_SIZE,
            });
        }
    }
    let ks = (0..=k_max as u32).step_by(2);
    let rows = match family {
        Family::NewtonCotes => {
            let rule = exact_newton_cotes(n)?;
            ks.map(|k| (k, newton_cotes_error_exact(&rule, basis, k).abs().to_f64()))
                .collect()
        }
        Family::ClenshawCurtis | Family::GaussLegendre => {
            let rule = if family == Family::ClenshawCurtis {
                if n < 2 {
                    return Err(crate::classical::ConstructionError::OutOfRange {
                        what: "clenshaw-curtis node count",
                        value: n,
                        min: 2,
                        max: MAX_TABLE_SIZE,
                    }
                    .into());
                }
                clenshaw_curtis_hp(n, prec)
            } else {
                if n == 0 {
                    return Err(crate::classical::ConstructionError::OutOfRange {
                        what: "gauss node count",
                        value: n,
                        min: 1,
                        max: MAX_TABLE_SIZE,
                    }
                    .into());
                }
                (*gauss_legendre_hp(n, prec)?).clone()
            };
            ks.map(|k| (k, hp_error(&rule, basis, k, prec))).collect()
        }
        other => {
            return Err(ExperimentError::UnsupportedFamily {
                family: other,
                operation: "build_error_table",
            })
        }
    };
    Ok(ErrorTable { family, n, basis, rows })
}

fn hp_error(rule: &HpRule, basis: Basis, k: u32, prec: Precision) -> f64 {
    let bits = prec.bits();
    let sum = rule.apply(|x| match basis {
        Basis::Chebyshev => chebyshev_t_hp(k, x),
        Basis::Monomial => Float::with_val(bits, rug::ops::Pow::pow(x, k)),
    });
    let moment = match basis {
        Basis::Chebyshev => chebyshev_moment(k),
        Basis::Monomial => monomial_moment(k),
    };
    (sum - Float::with_val(bits, &moment)).abs().to_f64()
}
