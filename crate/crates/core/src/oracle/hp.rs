//! Extended-precision floating-point helpers built on MPFR.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::OracleError;
use crate::classical::{gauss_nodes, GaussFamily};
use crate::integrand::IntegrandId;
use crate::rule::WeightFunction;

pub const PRECISION_ENV: &str = "QUADLAB_PRECISION_BITS";

/// Working precision of the extended-precision paths, in mantissa bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 200;
    pub const DEFAULT_BITS: u32 = 256;

    pub fn new(bits: u32) -> Result<Self, OracleError> {
        if bits < Self::MIN_BITS {
            return Err(OracleError::PrecisionTooLow {
                bits,
                min: Self::MIN_BITS,
            });
        }
        Ok(Precision(bits))
    }

    /// Reads `QUADLAB_PRECISION_BITS`, falling back to the default when unset.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(PRECISION_ENV) {
            Ok(raw) => {
                let bits = raw
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| OracleError::InvalidPrecisionVariable(raw.clone()))?;
                Precision::new(bits)
            }
            Err(_) => Ok(Precision::default()),
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn float(self, value: f64) -> Float {
        Float::with_val(self.0, value)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.0, Constant::Pi)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_BITS)
    }
}

/// Nodes and weights held in extended precision.
#[derive(Clone, Debug)]
pub struct HpRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl HpRule {
    /// `Σ w_j f(x_j)` in extended precision.
    pub fn apply<F: Fn(&Float) -> Float>(&self, f: F) -> Float {
        let prec = self.weights.first().map_or(Precision::DEFAULT_BITS, Float::prec);
        let mut acc = Float::with_val(prec, 0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(x) * w;
        }
        acc
    }
}

type RuleCache = RwLock<HashMap<(usize, u32), Arc<HpRule>>>;

fn legendre_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `(P_q(x), P_{q-1}(x))` by the Bonnet recurrence.
fn legendre_pair(q: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut prev = Float::with_val(prec, 0);
    let mut cur = Float::with_val(prec, 1);
    for k in 0..q {
        let kf = k as u32;
        let next = (Float::with_val(prec, x * &cur) * (2 * kf + 1) - prev * kf) / (kf + 1);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Gauss-Legendre rule with `q` points in extended precision: double-precision
/// nodes refined by Newton's method on `P_q`. Cached per `(q, precision)`.
pub fn gauss_legendre_hp(q: usize, prec: Precision) -> Result<Arc<HpRule>, OracleError> {
    let key = (q, prec.bits());
    if let Some(rule) = legendre_cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let fail = |reason: String| OracleError::HighPrecisionRule { points: q, reason };
    let seeds = gauss_nodes(GaussFamily::Legendre, q).map_err(|e| fail(e.to_string()))?;
    let bits = prec.bits();
    let threshold = Float::with_val(bits, Float::i_exp(1, 8 - bits as i32));
    let mut nodes = Vec::with_capacity(q);
    let mut weights = Vec::with_capacity(q);
    for &seed in &seeds.nodes {
        let mut x = prec.float(seed);
        let mut converged = false;
        let mut derivative = Float::with_val(bits, 0);
        for _ in 0..12 {
            let (p, p_prev) = legendre_pair(q, &x);
            let x2m1 = Float::with_val(bits, x.clone().square() - 1u32);
            derivative = (Float::with_val(bits, &x * &p) - p_prev) * q as u32 / x2m1;
            let step = p / &derivative;
            x -= &step;
            if step.abs() <= threshold {
                let (p, p_prev) = legendre_pair(q, &x);
                let x2m1 = Float::with_val(bits, x.clone().square() - 1u32);
                derivative = (Float::with_val(bits, &x * &p) - p_prev) * q as u32 / x2m1;
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(fail(format!("newton did not converge from seed {seed}")));
        }
        let one_minus = Float::with_val(bits, 1u32 - x.clone().square());
        let w = Float::with_val(bits, 2u32) / (one_minus * derivative.square());
        nodes.push(x);
        weights.push(w);
    }
    let rule = Arc::new(HpRule { nodes, weights });
    legendre_cache()
        .write()
        .expect("cache poisoned")
        .insert(key, Arc::clone(&rule));
    Ok(rule)
}

/// Clenshaw-Curtis rule with `n >= 2` points in extended precision, nodes
/// ascending, weights from the explicit cosine sum
/// `w_j = c_j/N (1 - Σ_{k=1}^{⌊N/2⌋} b_k cos(2kθ_j) / (4k^2 - 1))`.
pub fn clenshaw_curtis_hp(n: usize, prec: Precision) -> HpRule {
    assert!(n >= 2, "clenshaw-curtis needs at least two points");
    let bits = prec.bits();
    let big_n = n - 1;
    let pi = prec.pi();
    let angle = |numerator: usize| -> Float {
        Float::with_val(bits, &pi * (numerator % (2 * big_n)) as u32) / big_n as u32
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for j in (0..=big_n).rev() {
        nodes.push(angle(j).cos());
        let mut correction = Float::with_val(bits, 0);
        for k in 1..=big_n / 2 {
            let b = if 2 * k == big_n { 1u32 } else { 2u32 };
            let denom = (4 * k * k - 1) as u32;
            correction += angle(2 * k * j).cos() * b / denom;
        }
        let c = if j == 0 || j == big_n { 1u32 } else { 2u32 };
        let w = (Float::with_val(bits, 1u32) - correction) * c / big_n as u32;
        weights.push(w);
    }
    HpRule { nodes, weights }
}

/// `T_k(x)` by the three-term recurrence, valid for any real `x`.
pub fn chebyshev_t_hp(k: u32, x: &Float) -> Float {
    let prec = x.prec();
    let mut prev = Float::with_val(prec, 1);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = Float::with_val(prec, x * &cur) * 2u32 - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integrand value in extended precision.
pub fn eval_id(id: IntegrandId, x: &Float) -> Float {
    let prec = x.prec();
    let one = || Float::with_val(prec, 1);
    match id {
        IntegrandId::Runge => one() / (Float::with_val(prec, x.square_ref()) * 25u32 + 1u32),
        IntegrandId::ExpNegInvX2 => {
            if x.is_zero() {
                Float::with_val(prec, 0)
            } else {
                (-(one() / Float::with_val(prec, x.square_ref()))).exp()
            }
        }
        IntegrandId::CosX3 => Float::with_val(prec, x.pow(3u32)).cos(),
        IntegrandId::CosX2 => Float::with_val(prec, x.square_ref()).cos(),
        IntegrandId::CosX => x.clone().cos(),
        IntegrandId::InvOnePlusX2 => one() / (Float::with_val(prec, x.square_ref()) + 1u32),
        IntegrandId::One => one(),
        IntegrandId::Chebyshev(k) => chebyshev_t_hp(k, x),
        IntegrandId::Monomial(k) => Float::with_val(prec, x.pow(k)),
    }
}

/// Weight function value in extended precision.
pub fn eval_weight(weight: WeightFunction, x: &Float) -> Float {
    let prec = x.prec();
    match weight {
        WeightFunction::Unit => Float::with_val(prec, 1),
        WeightFunction::GaussianExpNegX2 => (-Float::with_val(prec, x.square_ref())).exp(),
        WeightFunction::ExpNegX => (-x.clone()).exp(),
    }
}

/// Panels of equal width at most `width` covering `[a, b]`.
pub fn uniform_panels(a: f64, b: f64, width: f64) -> Vec<(f64, f64)> {
    let count = ((b - a) / width).ceil().max(1.0) as usize;
    let edge = |i: usize| {
        if i == count {
            b
        } else {
            a + (b - a) * i as f64 / count as f64
        }
    };
    (0..count).map(|i| (edge(i), edge(i + 1))).collect()
}

/// Panels from `start` toward `end` whose widths grow geometrically by
/// `ratio` from `start * (ratio - 1)` until capped at `max_width`. Both
/// endpoints share a sign; `start` is the end nearest the origin.
pub fn graded_panels(start: f64, end: f64, ratio: f64, max_width: f64) -> Vec<(f64, f64)> {
    let direction = (end - start).signum();
    let mut panels = Vec::new();
    let mut left = start;
    while (end - left) * direction > 0.0 {
        let width = (left.abs() * (ratio - 1.0)).min(max_width);
        let mut right = left + direction * width;
        if (end - right) * direction <= 0.5 * width {
            right = end;
        }
        panels.push(if direction > 0.0 { (left, right) } else { (right, left) });
        left = right;
    }
    if direction < 0.0 {
        panels.reverse();
    }
    panels
}

/// Composite rule: `rule` mapped affinely onto each panel.
pub fn integrate_panels<F: Fn(&Float) -> Float>(
    f: &F,
    panels: &[(f64, f64)],
    rule: &HpRule,
    prec: Precision,
) -> Float {
    let bits = prec.bits();
    let mut total = Float::with_val(bits, 0);
    for &(a, b) in panels {
        let mid = Float::with_val(bits, a) / 2u32 + Float::with_val(bits, b) / 2u32;
        let half = Float::with_val(bits, b) / 2u32 - Float::with_val(bits, a) / 2u32;
        let mut panel = Float::with_val(bits, 0);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            let x = Float::with_val(bits, &half * t) + &mid;
            panel += f(&x) * w;
        }
        total += panel * half;
    }
    total
}

/// Format with `digits` significant decimal digits.
pub fn to_digits(value: &Float, digits: usize) -> String {
    value.to_string_radix(10, Some(digits))
}
