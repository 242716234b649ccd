use super::ConstructionError;
use crate::oracle::exact_newton_cotes;
pub use crate::oracle::MAX_NEWTON_COTES_NODES;
use crate::rule::{Domain, Family, QuadratureRule, WeightFunction};

/// Newton-Cotes rule on `n` equispaced nodes of `[-1, 1]`; weights are the
/// exact rational weights rounded once to double.
pub fn newton_cotes_rule(n: usize) -> Result<QuadratureRule, ConstructionError> {
    if !(2..=MAX_NEWTON_COTES_NODES).contains(&n) {
        return Err(ConstructionError::OutOfRange {
            what: "newton-cotes node count",
            value: n,
            min: 2,
            max: MAX_NEWTON_COTES_NODES,
        });
    }
    let exact = exact_newton_cotes(n)?;
    Ok(QuadratureRule::new(
        Family::NewtonCotes,
        exact.nodes_f64(),
        exact.weights_f64(),
        Domain::CANONICAL,
        WeightFunction::Unit,
    )?
    .with_provenance("rounded exact rational weights"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Weight `j` as `∫ ℓ_j`, integrating the Lagrange basis polynomial
    /// coefficient by coefficient in double precision.
    fn lagrange_weights(n: usize) -> Vec<f64> {
        let nodes: Vec<f64> = (0..n).map(|j| -1.0 + 2.0 * j as f64 / (n - 1) as f64).collect();
        (0..n)
            .map(|j| {
                let mut poly = vec![1.0];
                let mut denom = 1.0;
                for (i, &xi) in nodes.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let mut next = vec![0.0; poly.len() + 1];
                    for (d, &c) in poly.iter().enumerate() {
                        next[d + 1] += c;
                        next[d] -= xi * c;
                    }
                    poly = next;
                    denom *= nodes[j] - xi;
                }
                poly.iter()
                    .enumerate()
                    .filter(|(d, _)| d % 2 == 0)
                    .map(|(d, c)| 2.0 * c / (d + 1) as f64)
                    .sum::<f64>()
                    / denom
            })
            .collect()
    }

    #[test]
    fn trapezoid_and_simpson() {
        let two = newton_cotes_rule(2).unwrap();
        assert_eq!(two.nodes(), &[-1.0, 1.0]);
        assert_eq!(two.weights(), &[1.0, 1.0]);
        let three = newton_cotes_rule(3).unwrap();
        assert_eq!(three.weights(), &[1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0]);
    }

    #[test]
    fn matches_lagrange_integration_for_small_n() {
        for n in 2..=9 {
            let rule = newton_cotes_rule(n).unwrap();
            for (w, l) in rule.weights().iter().zip(lagrange_weights(n)) {
                assert!((w - l).abs() < 1e-13, "n={n}: {w} vs {l}");
            }
        }
    }

    #[test]
    fn large_weights_alternate() {
        let rule = newton_cotes_rule(30).unwrap();
        let w = rule.weights();
        let max = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(max / 2.0 > 1e3);
        // Symmetry puts equal weights on the two central nodes.
        for j in (2..14).chain(15..28) {
            assert!(w[j] * w[j + 1] < 0.0, "j={j}");
        }
    }

    #[test]
    fn range() {
        assert!(newton_cotes_rule(1).is_err());
        assert!(newton_cotes_rule(61).is_err());
    }
}
