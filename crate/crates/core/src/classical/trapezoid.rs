use super::ConstructionError;
use crate::rule::{Domain, Family, QuadratureRule, WeightFunction};

/// Composite trapezoid rule on `[a, b]`.
///
/// The periodic variant samples `a + j h`, `h = (b - a) / n`, `j = 0..n`, with
/// uniform weight `h`: the right endpoint is identified with the left.
pub fn trapezoid_rule(
    a: f64,
    b: f64,
    n: usize,
    periodic: bool,
) -> Result<QuadratureRule, ConstructionError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(ConstructionError::InvalidInterval { a, b });
    }
    let min = if periodic { 1 } else { 2 };
    if n < min {
        return Err(ConstructionError::OutOfRange {
            what: "trapezoid node count",
            value: n,
            min,
            max: usize::MAX,
        });
    }
    let (nodes, weights) = if periodic {
        let h = (b - a) / n as f64;
        let nodes = (0..n).map(|j| a + j as f64 * h).collect();
        (nodes, vec![h; n])
    } else {
        let h = (b - a) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|j| a + j as f64 * h).collect();
        nodes[n - 1] = b;
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n - 1] = 0.5 * h;
        (nodes, weights)
    };
    let provenance = if periodic { "periodic" } else { "endpoint-corrected" };
    Ok(QuadratureRule::new(
        Family::Trapezoid,
        nodes,
        weights,
        Domain::Interval { a, b },
        WeightFunction::Unit,
    )?
    .with_provenance(provenance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_is_the_trapezoid() {
        let r = trapezoid_rule(-1.0, 1.0, 2, false).unwrap();
        assert_eq!(r.nodes(), &[-1.0, 1.0]);
        assert_eq!(r.weights(), &[1.0, 1.0]);
    }

    #[test]
    fn periodic_excludes_right_endpoint() {
        let r = trapezoid_rule(-6.0, 6.0, 4, true).unwrap();
        assert_eq!(r.nodes(), &[-6.0, -3.0, 0.0, 3.0]);
        assert_eq!(r.weights(), &[3.0; 4]);
    }

    #[test]
    fn second_order_convergence_on_parabola() {
        let err = |n| (trapezoid_rule(-1.0, 1.0, n, false).unwrap().apply_fn(|x| x * x).unwrap() - 2.0 / 3.0).abs();
        for n in [21, 41, 81, 161] {
            let ratio = err(n) / err(2 * n);
            assert!((ratio - 4.0).abs() < 0.4, "n={n}: ratio {ratio}");
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            trapezoid_rule(1.0, -1.0, 4, false),
            Err(ConstructionError::InvalidInterval { .. })
        ));
        assert!(trapezoid_rule(-1.0, 1.0, 1, false).is_err());
        assert!(trapezoid_rule(-1.0, 1.0, 1, true).is_ok());
    }
}
