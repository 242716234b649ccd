use super::double_double::Dd;
use super::jacobi::{GaussFamily, JacobiRecurrence};
use super::ConstructionError;
use crate::rule::{Domain, Family, QuadratureRule, WeightFunction};

pub const MAX_GAUSS_NODES: usize = 5000;

const NEWTON_SWEEPS: usize = 3;

/// Gauss nodes and weights in double precision, plus `log10` of each weight
/// computed without underflow.
#[derive(Clone, Debug)]
pub struct GaussNodes {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub log10_weights: Vec<f64>,
}

/// Nodes are eigenvalues of the Jacobi matrix polished by Newton's method on
/// the orthonormal recurrence; weights are the Christoffel numbers
/// `1 / Σ_{k<n} p_k(x_j)^2`, evaluated with exponent tracking so weights far
/// below `f64::MIN_POSITIVE` keep full relative accuracy in `log10_weights`.
///
/// Gauss-Legendre nodes and weights, and Gauss-Laguerre ones with weights
/// above `1e-300`, get a final Newton pass in double-double arithmetic, so
/// they are correctly rounded.
pub fn gauss_nodes(family: GaussFamily, n: usize) -> Result<GaussNodes, ConstructionError> {
    if n == 0 || n > MAX_GAUSS_NODES {
        return Err(ConstructionError::OutOfRange {
            what: "gauss node count",
            value: n,
            min: 1,
            max: MAX_GAUSS_NODES,
        });
    }
    let recurrence = JacobiRecurrence::new(family, n);
    let eig = recurrence.eigen()?;

    let mut nodes = eig.values;
    let mut weights = Vec::with_capacity(n);
    let mut log10_weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        let mut eval = recurrence.evaluate(*x);
        for _ in 0..NEWTON_SWEEPS {
            let step = eval.newton_step();
            if !step.is_finite() || step.abs() > 1e-8 * (1.0 + x.abs()) {
                break;
            }
            *x -= step;
            eval = recurrence.evaluate(*x);
            if step.abs() <= f64::EPSILON * x.abs() {
                break;
            }
        }
        weights.push(eval.christoffel());
        log10_weights.push(eval.log2_christoffel() * std::f64::consts::LOG10_2);
    }

    if family.is_symmetric() {
        symmetrize(&mut nodes);
        symmetrize_even(&mut weights);
        symmetrize_even(&mut log10_weights);
    }
    if family == GaussFamily::Legendre {
        for j in 0..n.div_ceil(2) {
            if let Some((x, w)) = polish_legendre(n, nodes[j]) {
                nodes[j] = x;
                nodes[n - 1 - j] = -x;
                weights[j] = w;
                weights[n - 1 - j] = w;
                log10_weights[j] = w.log10();
                log10_weights[n - 1 - j] = w.log10();
            }
        }
    }
    if family == GaussFamily::Laguerre {
        for j in 0..n {
            if log10_weights[j] <= -300.0 {
                continue;
            }
            if let Some((x, w)) = polish_laguerre(n, nodes[j]) {
                nodes[j] = x;
                if let Some(w) = w {
                    weights[j] = w;
                    log10_weights[j] = w.log10();
                }
            }
        }
    }
    Ok(GaussNodes {
        nodes,
        weights,
        log10_weights,
    })
}

/// `(P_n(x), P_{n-1}(x))` by the Bonnet recurrence.
fn legendre_dd(n: usize, x: Dd) -> (Dd, Dd) {
    let (mut prev, mut cur) = (Dd::ONE, x);
    for k in 1..n {
        let next = ((x * cur).mul_f64((2 * k + 1) as f64) - prev.mul_f64(k as f64)).div_f64((k + 1) as f64);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Two Newton steps in double-double from a node accurate to a few ulps, then
/// `w = 2 (1 - x^2) / (n (P_{n-1} - x P_n))^2`.
fn polish_legendre(n: usize, x0: f64) -> Option<(f64, f64)> {
    let mut x = Dd::from_f64(x0);
    let derivative_parts = |x: Dd| {
        let (p, q) = legendre_dd(n, x);
        let one_minus_x2 = Dd::ONE - x * x;
        let d = (q - x * p).mul_f64(n as f64);
        (p, d, one_minus_x2)
    };
    for _ in 0..2 {
        let (p, d, one_minus_x2) = derivative_parts(x);
        let step = p * one_minus_x2 / d;
        if !step.hi.is_finite() || step.hi.abs() > 1e-10 {
            return None;
        }
        x = x - step;
    }
    let (_, d, one_minus_x2) = derivative_parts(x);
    let w = (one_minus_x2 + one_minus_x2) / (d * d);
    (w.hi.is_finite() && w.hi > 0.0).then_some((x.hi, w.hi))
}

const RESCALE: i32 = 600;

/// `(L_n(x), L_{n-1}(x))` scaled by a common power of two, and that power.
fn laguerre_dd(n: usize, x: Dd) -> (Dd, Dd, i32) {
    let (mut prev, mut cur) = (Dd::ONE, Dd::ONE - x);
    let mut exponent = 0;
    for k in 1..n {
        let next = ((Dd::from_f64((2 * k + 1) as f64) - x) * cur - prev.mul_f64(k as f64)).div_f64((k + 1) as f64);
        prev = cur;
        cur = next;
        if cur.hi.abs() > 2f64.powi(RESCALE) {
            cur = cur.mul_f64(2f64.powi(-RESCALE));
            prev = prev.mul_f64(2f64.powi(-RESCALE));
            exponent += RESCALE;
        }
    }
    (cur, prev, exponent)
}

/// Two Newton steps in double-double on `L_n`, then
/// `w = x / (n L_{n-1}(x))^2` when that is a normal double.
fn polish_laguerre(n: usize, x0: f64) -> Option<(f64, Option<f64>)> {
    let mut x = Dd::from_f64(x0);
    for _ in 0..2 {
        let (p, q, _) = laguerre_dd(n, x);
        let step = x * p / (p - q).mul_f64(n as f64);
        if !step.hi.is_finite() || step.hi.abs() > 1e-10 * (1.0 + x0) {
            return None;
        }
        x = x - step;
    }
    let (_, q, exponent) = laguerre_dd(n, x);
    let d = q.mul_f64(n as f64);
    let w = x / (d * d);
    let log2_w = w.hi.log2() - f64::from(2 * exponent);
    let weight = (w.hi.is_finite() && w.hi > 0.0 && log2_w > -1000.0)
        .then(|| (0..2 * exponent / RESCALE).fold(w.hi, |w, _| w * 2f64.powi(-RESCALE)));
    Some((x.hi, weight))
}

fn symmetrize(nodes: &mut [f64]) {
    let n = nodes.len();
    for j in 0..n / 2 {
        let x = 0.5 * (nodes[n - 1 - j] - nodes[j]);
        nodes[j] = -x;
        nodes[n - 1 - j] = x;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
}

fn symmetrize_even(values: &mut [f64]) {
    let n = values.len();
    for j in 0..n / 2 {
        let v = 0.5 * (values[j] + values[n - 1 - j]);
        values[j] = v;
        values[n - 1 - j] = v;
    }
}

/// Gauss-Legendre, Gauss-Hermite or Gauss-Laguerre rule with `n` nodes.
pub fn gauss_rule(family: GaussFamily, n: usize) -> Result<QuadratureRule, ConstructionError> {
    let GaussNodes { nodes, weights, .. } = gauss_nodes(family, n)?;
    let (rule_family, domain, weight_function) = match family {
        GaussFamily::Legendre => (Family::GaussLegendre, Domain::CANONICAL, WeightFunction::Unit),
        GaussFamily::Hermite => (
            Family::GaussHermite,
            Domain::WholeLine,
            WeightFunction::GaussianExpNegX2,
        ),
        GaussFamily::Laguerre => (Family::GaussLaguerre, Domain::HalfLine, WeightFunction::ExpNegX),
    };
    Ok(QuadratureRule::new(rule_family, nodes, weights, domain, weight_function)?
        .with_provenance("jacobi eigenvalues + newton, christoffel weights"))
}
