//! Conformally transplanted Gauss rules and truncated-domain quadrature for
//! integrals against `exp(-x^2)`.

use std::f64::consts::PI;
use std::fmt;

use crate::classical::{clenshaw_curtis_rule, gauss_rule, trapezoid_rule, ConstructionError, GaussFamily};
use crate::integrand::Integrand;
use crate::rule::{Family, QuadratureRule, RuleError, WeightFunction};

/// Jacobi elliptic functions `(sn, cn, dn)` of real argument `u` for
/// parameter `m = k^2`, passing the complementary parameter `m1 = 1 - m`
/// separately so values of `m` near 1 keep their accuracy. Descending
/// Landen/AGM scheme.
pub fn jacobi_elliptic(u: f64, m: f64, m1: f64) -> (f64, f64, f64) {
    if m1 <= 0.0 {
        let sech = 1.0 / u.cosh();
        return (u.tanh(), sech, sech);
    }
    if m <= 0.0 {
        return (u.sin(), u.cos(), 1.0);
    }
    const LEVELS: usize = 16;
    let mut a = [0.0f64; LEVELS + 1];
    let mut c = [0.0f64; LEVELS + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = m1.sqrt();
    let mut levels = 0;
    while levels < LEVELS && c[levels].abs() > f64::EPSILON * a[levels] {
        let (an, bn) = (a[levels], b);
        a[levels + 1] = 0.5 * (an + bn);
        c[levels + 1] = 0.5 * (an - bn);
        b = (an * bn).sqrt();
        levels += 1;
    }
    let mut phi = 2f64.powi(levels as i32) * a[levels] * u;
    let mut phi_above = phi;
    for n in (1..=levels).rev() {
        phi_above = phi;
        phi = 0.5 * (phi + (c[n] / a[n] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    let dn = if levels == 0 { 1.0 } else { cn / (phi_above - phi).cos() };
    (sn, cn, dn)
}

/// `(θ2, θ3, θ4)` at nome `q`, `0 <= q < 1`.
pub fn theta_functions(q: f64) -> (f64, f64, f64) {
    let mut theta2 = 0.0;
    let mut theta3 = 1.0;
    let mut theta4 = 1.0;
    let mut n = 0u32;
    loop {
        let half = f64::from(n) + 0.5;
        let t2 = 2.0 * q.powf(half * half);
        theta2 += t2;
        let np = f64::from(n + 1);
        let t = 2.0 * q.powf(np * np);
        theta3 += t;
        theta4 += if n % 2 == 0 { -t } else { t };
        n += 1;
        if t2 <= f64::EPSILON * 1e-3 * theta2 && t <= f64::EPSILON * 1e-3 {
            break;
        }
    }
    (theta2, theta3, theta4)
}

/// Map of the Bernstein ρ-ellipse onto an infinite strip, restricted to
/// `[-1, 1]`:
/// `g(s) = atanh(√k sn(u | k^2)) / atanh(√k)`, `u = (2K/π) asin s`,
/// with `k`, `K` from the theta functions at nome `q = ρ^{-4}`.
///
/// Evaluation goes through the dual nome `q' = exp(-π/t)`, `t = 4 ln(ρ)/π`.
/// With `v = asin(s)/t` and `A(v) = Σ_n q'^{n(n+1)} exp((-1)^n (2n+1) v)`,
/// `atanh(√k sn(u)) = (ln A(v) - ln A(-v)) / 2`. Every term is positive, so
/// the map keeps full relative accuracy as `ρ → 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripMap {
    rho: f64,
    /// `t = 4 ln(ρ) / π`.
    t: f64,
    k: f64,
    k_prime: f64,
    quarter_period: f64,
    atanh_sqrt_k: f64,
}

/// Terms `n = 0..DUAL_TERMS` of the dual series; the next term is below
/// `exp(-π (n^2 - 1) / t)` relative, negligible for `ρ <= 2`.
const DUAL_TERMS: u32 = 7;

/// `q^{-1} Σ_{n odd} q^{n^2}` and `Σ_{n >= 2 even} q^{n^2}`, so that
/// `θ3 - θ4 = 4 q × odd` and `θ3 + θ4 = 2 + 4 × even`.
fn theta_parity_sums(q: f64) -> (f64, f64) {
    let (mut odd, mut even) = (0.0, 0.0);
    for n in 1..=2 * DUAL_TERMS {
        if n % 2 == 1 {
            odd += q.powi((n * n - 1) as i32);
        } else {
            even += q.powi((n * n) as i32);
        }
    }
    (odd, even)
}

impl StripMap {
    pub fn new(rho: f64) -> Result<Self, ConstructionError> {
        if !(rho > 1.0 && rho <= 2.0) {
            return Err(ConstructionError::InvalidParameter { name: "rho", value: rho });
        }
        let t = 4.0 * rho.ln() / PI;
        let dual = (-PI / t).exp();
        let (t2, t3, t4) = theta_functions(dual);
        // Imaginary transformation: √k = θ4(q')/θ3(q'), √k' = θ2(q')/θ3(q'),
        // K = (π/2) θ3(q')^2 / t.
        let sqrt_k = t4 / t3;
        let sqrt_k_prime = t2 / t3;
        let (odd, even) = theta_parity_sums(dual);
        // ln q' = -π/t stays finite when q' itself underflows.
        let atanh_sqrt_k = 0.5 * (((2.0 + 4.0 * even) / (4.0 * odd)).ln() + PI / t);
        Ok(StripMap {
            rho,
            t,
            k: sqrt_k * sqrt_k,
            k_prime: sqrt_k_prime * sqrt_k_prime,
            quarter_period: 0.5 * PI * t3 * t3 / t,
            atanh_sqrt_k,
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Elliptic modulus `k` and complementary modulus `k'`.
    pub fn modulus(&self) -> (f64, f64) {
        (self.k, self.k_prime)
    }

    /// Complete elliptic integral `K(k)`.
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    /// `(ln A(v), A'(v)/A(v), A''(v)/A(v))`.
    fn dual_series(&self, v: f64) -> (f64, f64, f64) {
        let exponent = |n: u32| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign * f64::from(2 * n + 1);
            (-PI * f64::from(n * (n + 1)) / self.t + c * v, c)
        };
        let top = (0..DUAL_TERMS).map(|n| exponent(n).0).fold(f64::NEG_INFINITY, f64::max);
        let (mut sum, mut first, mut second) = (0.0, 0.0, 0.0);
        for n in 0..DUAL_TERMS {
            let (e, c) = exponent(n);
            let term = (e - top).exp();
            sum += term;
            first += c * term;
            second += c * c * term;
        }
        (top + sum.ln(), first / sum, second / sum)
    }

    /// `(g(|s|), g'(s))` for `|s| <= 1`.
    fn evaluate(&self, s: f64) -> (f64, f64) {
        let a = s.abs();
        let v = a.asin() / self.t;
        let (ln_plus, d_plus, dd_plus) = self.dual_series(v);
        let (ln_minus, d_minus, dd_minus) = self.dual_series(-v);
        let value = 0.5 * (ln_plus - ln_minus) / self.atanh_sqrt_k;
        let slope = if a == 1.0 {
            // Limit of the quotient below as asin|s| → π/2.
            let curvature = (dd_plus - d_plus * d_plus) - (dd_minus - d_minus * d_minus);
            -curvature / (2.0 * self.t * self.t * self.atanh_sqrt_k)
        } else {
            (d_plus + d_minus) / (2.0 * self.t * ((1.0 - a) * (1.0 + a)).sqrt() * self.atanh_sqrt_k)
        };
        (value, slope)
    }
}

/// Map `g` with `g([-1, 1]) = [-1, 1]` used to transplant a Gauss rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConformalMap {
    Identity,
    Strip(StripMap),
}

impl ConformalMap {
    pub fn strip(rho: f64) -> Result<Self, ConstructionError> {
        Ok(ConformalMap::Strip(StripMap::new(rho)?))
    }

    /// `None` for the identity (the `ρ → ∞` limit).
    pub fn rho(&self) -> Option<f64> {
        match self {
            ConformalMap::Identity => None,
            ConformalMap::Strip(m) => Some(m.rho()),
        }
    }

    fn check(s: f64) -> Result<(), ConstructionError> {
        if s.abs() <= 1.0 {
            Ok(())
        } else {
            Err(ConstructionError::MapEvaluation { s })
        }
    }

    pub fn forward(&self, s: f64) -> Result<f64, ConstructionError> {
        Self::check(s)?;
        match self {
            ConformalMap::Identity => Ok(s),
            ConformalMap::Strip(m) => {
                let value = m.evaluate(s).0.copysign(s);
                finite(value, s)
            }
        }
    }

    pub fn derivative(&self, s: f64) -> Result<f64, ConstructionError> {
        Self::check(s)?;
        match self {
            ConformalMap::Identity => Ok(1.0),
            ConformalMap::Strip(m) => finite(m.evaluate(s).1, s),
        }
    }
}

fn finite(value: f64, s: f64) -> Result<f64, ConstructionError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ConstructionError::MapEvaluation { s })
    }
}

impl fmt::Display for ConformalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConformalMap::Identity => f.write_str("identity map"),
            ConformalMap::Strip(m) => write!(f, "ellipse-to-strip map, rho={}", m.rho()),
        }
    }
}

/// Gauss-Legendre rule `(s_j, w_j)` transplanted to nodes `g(s_j)` and
/// weights `w_j g'(s_j)`.
pub fn transformed_rule(n: usize, map: &ConformalMap) -> Result<QuadratureRule, ConstructionError> {
    let base = gauss_rule(GaussFamily::Legendre, n)?;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (&s, &w) in base.nodes().iter().zip(base.weights()) {
        nodes.push(map.forward(s)?);
        weights.push(w * map.derivative(s)?);
    }
    Ok(QuadratureRule::new(
        Family::StripTransformedGauss,
        nodes,
        weights,
        base.domain(),
        WeightFunction::Unit,
    )?
    .with_provenance(map.to_string()))
}

/// Gauss-Legendre transplanted by the strip map with parameter `rho`.
pub fn strip_transformed_rule(n: usize, rho: f64) -> Result<QuadratureRule, ConstructionError> {
    transformed_rule(n, &ConformalMap::strip(rho)?)
}

pub const DEFAULT_TRUNCATION_L: f64 = 2.0;

/// Finite-interval rule used on the truncated domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerRule {
    GaussLegendre,
    ClenshawCurtis,
    Trapezoid,
}

impl InnerRule {
    pub fn name(self) -> &'static str {
        match self {
            InnerRule::GaussLegendre => "gauss-legendre",
            InnerRule::ClenshawCurtis => "clenshaw-curtis",
            InnerRule::Trapezoid => "trapezoid",
        }
    }
}

/// Truncation of the real line to `[-L n^{1/3}, L n^{1/3}]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPlan {
    l: f64,
    n: usize,
    inner: InnerRule,
}

impl TruncationPlan {
    pub fn new(l: f64, n: usize, inner: InnerRule) -> Result<Self, ConstructionError> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(ConstructionError::InvalidParameter { name: "L", value: l });
        }
        let min = if inner == InnerRule::GaussLegendre { 1 } else { 2 };
        if n < min {
            return Err(ConstructionError::OutOfRange {
                what: "truncated rule node count",
                value: n,
                min,
                max: usize::MAX,
            });
        }
        Ok(TruncationPlan { l, n, inner })
    }

    pub fn with_default_l(n: usize, inner: InnerRule) -> Result<Self, ConstructionError> {
        Self::new(DEFAULT_TRUNCATION_L, n, inner)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner(&self) -> InnerRule {
        self.inner
    }

    pub fn half_width(&self) -> f64 {
        self.l * (self.n as f64).cbrt()
    }

    pub fn interval(&self) -> (f64, f64) {
        let h = self.half_width();
        (-h, h)
    }
}

/// Rule for `∫ exp(-x^2) f(x) dx` over the whole line: the inner rule on
/// the truncated interval with `exp(-x^2)` folded into its weights.
pub fn truncated_hermite_rule(plan: &TruncationPlan) -> Result<QuadratureRule, ConstructionError> {
    let h = plan.half_width();
    let scaled = |rule: QuadratureRule| -> Result<QuadratureRule, ConstructionError> {
        let nodes = rule.nodes().iter().map(|x| h * x).collect();
        let weights = rule.weights().iter().map(|w| h * w).collect();
        Ok(QuadratureRule::new(
            rule.family(),
            nodes,
            weights,
            crate::rule::Domain::Interval { a: -h, b: h },
            WeightFunction::Unit,
        )?)
    };
    let inner = match plan.inner {
        InnerRule::GaussLegendre => scaled(gauss_rule(GaussFamily::Legendre, plan.n)?)?,
        InnerRule::ClenshawCurtis => scaled(clenshaw_curtis_rule(plan.n)?)?,
        InnerRule::Trapezoid => trapezoid_rule(-h, h, plan.n, false)?,
    };
    Ok(inner
        .absorb_weight(WeightFunction::GaussianExpNegX2, Family::TruncatedHermite)
        .with_provenance(format!(
            "{} on [-{h}, {h}], L={}",
            plan.inner.name(),
            plan.l
        )))
}

/// Estimate of `∫ exp(-x^2) f(x) dx` from the truncated rule; `f` is taken
/// without any damping of its own since the rule supplies `exp(-x^2)`.
pub fn truncated_hermite_integrate(
    f: &Integrand,
    n: usize,
    plan: &TruncationPlan,
) -> Result<f64, ConstructionError> {
    if plan.n != n {
        return Err(ConstructionError::InvalidParameter {
            name: "plan.n",
            value: plan.n as f64,
        });
    }
    let rule = truncated_hermite_rule(plan)?;
    let id = f.id();
    rule.apply_fn(|x| id.eval(x)).map_err(|e| match e {
        RuleError::Evaluation { node, .. } => RuleError::Evaluation {
            integrand: f.name(),
            node,
        }
        .into(),
        other => other.into(),
    })
}
