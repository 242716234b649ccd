//! Chebyshev polynomials and series, Hermite functions, and the
//! monomial-times-Gaussian envelope.

use std::f64::consts::{E, PI};

use crate::integrand::Integrand;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("x = {x} outside [-1, 1]")]
    Domain { x: f64 },
    #[error("{what} = {value} outside supported range (max {max})")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("evaluation failed at x = {x}")]
    Evaluation { x: f64 },
}

/// `T_k(x) = cos(k arccos x)` for `|x| <= 1`.
pub fn chebyshev_t(k: u32, x: f64) -> Result<f64, PolyError> {
    if !(x.abs() <= 1.0) {
        return Err(PolyError::Domain { x });
    }
    Ok(trig_chebyshev(k, x))
}

fn trig_chebyshev(k: u32, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        _ => (f64::from(k) * x.acos()).cos(),
    }
}

/// `T_k(x)` by the three-term recurrence `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev_t_recurrence(k: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_k(x)` for any real `x`; `cosh` form outside `[-1, 1]`.
pub fn chebyshev_t_any(k: u32, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        trig_chebyshev(k, x)
    } else {
        let magnitude = (f64::from(k) * x.abs().acosh()).cosh();
        if x < 0.0 && k % 2 == 1 {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// Chebyshev expansion `Σ a_j T_j(x)` on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevSeries {
    coefficients: Vec<f64>,
    floor: f64,
}

impl ChebyshevSeries {
    /// Trailing coefficients with `|a_j| <= floor` are dropped (at least `a_0`
    /// is kept).
    pub fn new(mut coefficients: Vec<f64>, floor: f64) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(|a| a.abs() <= floor) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0.0);
        }
        ChebyshevSeries { coefficients, floor }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `a_j`, zero past the stored length.
    pub fn coefficient(&self, j: usize) -> f64 {
        self.coefficients.get(j).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn truncation_floor(&self) -> f64 {
        self.floor
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &a in self.coefficients.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + a;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coefficients[0]
    }
}

/// First `m + 1` coefficients of the degree-`m` interpolant of `f` in the
/// Chebyshev extreme points `cos(jπ/m)`.
pub fn chebyshev_coefficients(f: &Integrand, m: usize) -> Result<ChebyshevSeries, PolyError> {
    chebyshev_coefficients_fn(|x| f.eval(x), m)
}

pub fn chebyshev_coefficients_fn<F: Fn(f64) -> f64>(
    f: F,
    m: usize,
) -> Result<ChebyshevSeries, PolyError> {
    if m == 0 {
        let v = f(1.0);
        if !v.is_finite() {
            return Err(PolyError::Evaluation { x: 1.0 });
        }
        return Ok(ChebyshevSeries::new(vec![v], 0.0));
    }
    let period = 2 * m;
    let angle = |i: usize| PI * (i % period) as f64 / m as f64;
    let mut values = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let x = angle(j).cos();
        let v = f(x);
        if !v.is_finite() {
            return Err(PolyError::Evaluation { x });
        }
        values.push(v);
    }
    let scale = 2.0 / m as f64;
    let coefficients = (0..=m)
        .map(|k| {
            let mut acc = 0.0;
            for (j, &v) in values.iter().enumerate() {
                let half = if j == 0 || j == m { 0.5 } else { 1.0 };
                acc += half * v * angle(j * k).cos();
            }
            let half = if k == 0 || k == m { 0.5 } else { 1.0 };
            half * scale * acc
        })
        .collect();
    Ok(ChebyshevSeries::new(coefficients, 0.0))
}

pub const MAX_HERMITE_DEGREE: usize = 500;

/// Normalization constant `c_n` in `ψ_n = c_n H_n(x) exp(-x^2/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HermiteNormalization {
    /// `(2^n n! √π)^{-1/2}`: unit L² norm.
    Orthonormal,
    /// `(√(2π) n!)^{-1/2}`. Not unit norm:
    /// `ψ = 2^{(2n-1)/4} ψ_orthonormal`.
    AsPrinted,
}

impl HermiteNormalization {
    /// `ln c_n`.
    pub fn ln_constant(self, n: usize) -> f64 {
        let ln_fact = ln_factorial(n);
        match self {
            HermiteNormalization::Orthonormal => {
                -0.5 * (n as f64 * std::f64::consts::LN_2 + ln_fact + 0.5 * PI.ln())
            }
            HermiteNormalization::AsPrinted => -0.5 * (0.5 * (2.0 * PI).ln() + ln_fact),
        }
    }
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Orthonormal Hermite function `ψ_n(x)`.
///
/// Runs the normalised recurrence
/// `ψ_{k+1} = sqrt(2/(k+1)) x ψ_k - sqrt(k/(k+1)) ψ_{k-1}` on mantissas and
/// carries the Gaussian factor as a running exponent, so neither `H_n` nor
/// `exp(-x^2/2)` is ever formed on its own.
pub fn hermite_psi(n: usize, x: f64) -> Result<f64, PolyError> {
    if n > MAX_HERMITE_DEGREE {
        return Err(PolyError::OutOfRange {
            what: "hermite degree",
            value: n,
            max: MAX_HERMITE_DEGREE,
        });
    }
    if !x.is_finite() {
        return Err(PolyError::Evaluation { x });
    }
    const BIG: f64 = 1e150;
    let mut ln_scale = -0.5 * x * x;
    let mut prev = 0.0f64;
    let mut cur = PI.powf(-0.25);
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            ln_scale += BIG.ln();
        }
    }
    let value = if cur == 0.0 { 0.0 } else { cur * ln_scale.exp() };
    if !value.is_finite() {
        return Err(PolyError::Evaluation { x });
    }
    Ok(value)
}

/// Hermite function under the chosen normalization.
pub fn hermite_psi_with(n: usize, x: f64, normalization: HermiteNormalization) -> Result<f64, PolyError> {
    let psi = hermite_psi(n, x)?;
    let ratio = normalization.ln_constant(n) - HermiteNormalization::Orthonormal.ln_constant(n);
    Ok(psi * ratio.exp())
}

/// Location and value of the maximum of `x^n exp(-x^2)` on `x > 0`:
/// `(sqrt(n/2), (n/(2e))^{n/2})`.
pub fn monomial_gaussian_max(n: u32) -> (f64, f64) {
    let nf = f64::from(n);
    ((0.5 * nf).sqrt(), (nf / (2.0 * E)).powf(0.5 * nf))
}
