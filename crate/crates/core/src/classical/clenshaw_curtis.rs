use rug::Float;

use super::ConstructionError;
use crate::oracle::hp::clenshaw_curtis_hp;
use crate::oracle::Precision;
use crate::rule::{Domain, Family, QuadratureRule, WeightFunction};

/// Clenshaw-Curtis weights in extended precision, nodes ascending.
pub fn clenshaw_curtis_weights_hp(n: usize, prec: Precision) -> Result<Vec<Float>, ConstructionError> {
    check(n)?;
    Ok(clenshaw_curtis_hp(n, prec).weights)
}

fn check(n: usize) -> Result<(), ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::OutOfRange {
            what: "clenshaw-curtis node count",
            value: n,
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(())
}

/// Clenshaw-Curtis rule on the `n` Chebyshev points `cos(jπ/(n-1))`.
pub fn clenshaw_curtis_rule(n: usize) -> Result<QuadratureRule, ConstructionError> {
    check(n)?;
    let hp = clenshaw_curtis_hp(n, Precision::default());
    let mut nodes: Vec<f64> = hp.nodes.iter().map(Float::to_f64).collect();
    // Exact symmetry and a true zero at the centre.
    for j in 0..n / 2 {
        nodes[n - 1 - j] = -nodes[j];
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = hp.weights.iter().map(Float::to_f64).collect();
    Ok(QuadratureRule::new(
        Family::ClenshawCurtis,
        nodes,
        weights,
        Domain::CANONICAL,
        WeightFunction::Unit,
    )?
    .with_provenance("cosine-sum weights in extended precision"))
}
