//! Exact rational Newton-Cotes weights and polynomial moments.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::OracleError;

pub const MAX_NEWTON_COTES_NODES: usize = 60;

/// Node/weight set held in exact rational arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalRule {
    nodes: Vec<Rational>,
    weights: Vec<Rational>,
}

impl RationalRule {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_sum(&self) -> Rational {
        self.weights.iter().fold(Rational::new(), |acc, w| acc + w)
    }

    pub fn nodes_f64(&self) -> Vec<f64> {
        self.nodes.iter().map(Rational::to_f64).collect()
    }

    /// Each weight rounded once to the nearest double.
    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(Rational::to_f64).collect()
    }

    /// `Σ w_j p(x_j)` for exact node values `p(x_j)`.
    pub fn apply(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.n());
        self.weights
            .iter()
            .zip(values)
            .fold(Rational::new(), |acc, (w, v)| acc + Rational::from(w * v))
    }

    /// Residuals `Σ_j w_j x_j^k - ∫ x^k` for `k = 0..n-1`.
    pub fn moment_residuals(&self) -> Vec<Rational> {
        let mut powers: Vec<Rational> = vec![Rational::from(1); self.n()];
        (0..self.n() as u32)
            .map(|k| {
                let residual = self.apply(&powers) - monomial_moment(k);
                for (p, x) in powers.iter_mut().zip(&self.nodes) {
                    *p *= x;
                }
                residual
            })
            .collect()
    }
}

/// `∫_{-1}^{1} x^k dx = (1 + (-1)^k) / (k + 1)`.
pub fn monomial_moment(k: u32) -> Rational {
    if k % 2 == 1 {
        Rational::new()
    } else {
        Rational::from((2, k + 1))
    }
}

/// `∫_{-1}^{1} T_k(x) dx`: `2 / (1 - k^2)` for even `k`, zero for odd `k`.
pub fn chebyshev_moment(k: u32) -> Rational {
    if k % 2 == 1 {
        Rational::new()
    } else {
        let k = Integer::from(k);
        Rational::from((Integer::from(2), Integer::from(1) - k.square()))
    }
}

/// `T_k(x)` in exact arithmetic by the integer-coefficient recurrence.
pub fn chebyshev_t_exact(k: u32, x: &Rational) -> Rational {
    let mut prev = Rational::from(1);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = Rational::from(x * &cur) * 2u32 - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

type NewtonCotesCache = RwLock<HashMap<usize, Arc<RationalRule>>>;

fn cache() -> &'static NewtonCotesCache {
    static CACHE: OnceLock<NewtonCotesCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Newton-Cotes rule on `n` equispaced nodes of `[-1, 1]`, weights solving
/// the moment system `Σ_j w_j x_j^k = ∫ x^k`, `k < n`, by exact Gaussian
/// elimination with partial pivoting.
pub fn exact_newton_cotes(n: usize) -> Result<Arc<RationalRule>, OracleError> {
    if !(2..=MAX_NEWTON_COTES_NODES).contains(&n) {
        return Err(OracleError::NewtonCotesRange {
            n,
            max: MAX_NEWTON_COTES_NODES,
        });
    }
    if let Some(rule) = cache().read().expect("cache poisoned").get(&n) {
        return Ok(Arc::clone(rule));
    }
    let last = (n - 1) as i64;
    let nodes: Vec<Rational> = (0..n as i64)
        .map(|j| Rational::from((2 * j - last, last)))
        .collect();

    // Augmented Vandermonde rows: [x_0^k .. x_{n-1}^k | moment_k].
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut powers = vec![Rational::from(1); n];
    for k in 0..n as u32 {
        let mut row = powers.clone();
        row.push(monomial_moment(k));
        rows.push(row);
        for (p, x) in powers.iter_mut().zip(&nodes) {
            *p *= x;
        }
    }
    let weights = solve_augmented(rows)?;
    let rule = Arc::new(RationalRule { nodes, weights });
    cache().write().expect("cache poisoned").insert(n, Arc::clone(&rule));
    Ok(rule)
}

fn solve_augmented(mut rows: Vec<Vec<Rational>>) -> Result<Vec<Rational>, OracleError> {
    let n = rows.len();
    for column in 0..n {
        let pivot = (column..n)
            .filter(|&r| rows[r][column] != 0)
            .max_by(|&a, &b| rows[a][column].clone().abs().cmp(&rows[b][column].clone().abs()))
            .ok_or(OracleError::SingularSystem { column })?;
        rows.swap(column, pivot);
        let (upper, lower) = rows.split_at_mut(column + 1);
        let pivot_row = &upper[column];
        for row in lower.iter_mut() {
            if row[column] == 0 {
                continue;
            }
            let factor = Rational::from(&row[column] / &pivot_row[column]);
            for c in column..=n {
                let delta = Rational::from(&factor * &pivot_row[c]);
                row[c] -= delta;
            }
        }
    }
    let mut solution = vec![Rational::new(); n];
    for r in (0..n).rev() {
        let mut acc = rows[r][n].clone();
        for c in r + 1..n {
            acc -= Rational::from(&rows[r][c] * &solution[c]);
        }
        solution[r] = acc / &rows[r][r];
    }
    Ok(solution)
}

/// Polynomial basis used for error tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Chebyshev,
    Monomial,
}

/// Exact `E_n(p_k) = Σ w_j p_k(x_j) - ∫ p_k` for the rational rule.
pub fn newton_cotes_error_exact(rule: &RationalRule, basis: Basis, k: u32) -> Rational {
    let values: Vec<Rational> = rule
        .nodes()
        .iter()
        .map(|x| match basis {
            Basis::Chebyshev => chebyshev_t_exact(k, x),
            Basis::Monomial => x.clone().pow(k),
        })
        .collect();
    let moment = match basis {
        Basis::Chebyshev => chebyshev_moment(k),
        Basis::Monomial => monomial_moment(k),
    };
    rule.apply(&values) - moment
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let two = exact_newton_cotes(2).unwrap();
        assert_eq!(two.weights(), &[Rational::from(1), Rational::from(1)]);
        let three = exact_newton_cotes(3).unwrap();
        assert_eq!(
            three.weights(),
            &[Rational::from((1, 3)), Rational::from((4, 3)), Rational::from((1, 3))]
        );
        // Simpson's 3/8 rule scaled to [-1, 1].
        let four = exact_newton_cotes(4).unwrap();
        assert_eq!(four.weights()[0], Rational::from((1, 4)));
        assert_eq!(four.weights()[1], Rational::from((3, 4)));
    }

    #[test]
    fn range_checked() {
        assert!(exact_newton_cotes(1).is_err());
        assert!(exact_newton_cotes(61).is_err());
    }

    #[test]
    fn moments() {
        assert_eq!(chebyshev_moment(0), 2);
        assert_eq!(chebyshev_moment(1), 0);
        assert_eq!(chebyshev_moment(30), Rational::from((-2, 899)));
        assert_eq!(monomial_moment(4), Rational::from((2, 5)));
    }

    #[test]
    fn chebyshev_exact_identity() {
        // T_4(x) = 8x^4 - 8x^2 + 1 at x = 1/3.
        let x = Rational::from((1, 3));
        assert_eq!(chebyshev_t_exact(4, &x), Rational::from((8 - 72 + 81, 81)));
    }

    #[test]
    fn residuals_vanish_and_weights_symmetric() {
        for n in [5, 17, 30] {
            let rule = exact_newton_cotes(n).unwrap();
            assert!(rule.moment_residuals().iter().all(|r| *r == 0));
            assert_eq!(rule.weight_sum(), 2);
            for j in 0..n {
                assert_eq!(rule.weights()[j], rule.weights()[n - 1 - j]);
            }
        }
    }
}
