//! Coefficient counts for polynomials of bounded total and Euclidean degree
//! in `s` dimensions.

use rug::Float;

pub const MAX_RATIO_DIMENSION: u32 = 100;
pub const MAX_LATTICE_DIMENSION: u32 = 6;
pub const MAX_LATTICE_DEGREE: u32 = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CubatureError {
    #[error("dimension {s} outside [1, {max}]")]
    DimensionOutOfRange { s: u32, max: u32 },
    #[error("degree {d} outside the supported range (max {max})")]
    DegreeOutOfRange { d: f64, max: f64 },
    #[error("count overflows a double for s = {s}, d = {d}")]
    Overflow { s: u32, d: f64 },
}

/// Norm applied to exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeNorm {
    Total,
    Euclidean,
    Max,
}

fn ln_gamma(x: f64) -> f64 {
    Float::with_val(128, x).ln_gamma().to_f64()
}

/// Continuous-volume coefficient counts at degree `d` in dimension `s`:
/// `N_euclidean = d^s π^{s/2} / (2^s (s/2)!)`,
/// `N_total = d^s s^{s/2} / s!`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeCount {
    pub s: u32,
    pub d: f64,
    pub n_euclidean: f64,
    pub n_total: f64,
    pub ratio: f64,
}

pub fn degree_count(s: u32, d: f64) -> Result<DegreeCount, CubatureError> {
    check_dimension(s)?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(CubatureError::DegreeOutOfRange { d, max: f64::MAX });
    }
    let sf = f64::from(s);
    let ln_d = sf * d.ln();
    let ln_euclidean = ln_d + 0.5 * sf * std::f64::consts::PI.ln() - sf * std::f64::consts::LN_2 - ln_gamma(0.5 * sf + 1.0);
    let ln_total = ln_d + 0.5 * sf * sf.ln() - ln_gamma(sf + 1.0);
    let n_euclidean = ln_euclidean.exp();
    let n_total = ln_total.exp();
    if !(n_euclidean.is_finite() && n_total.is_finite() && n_euclidean > 0.0 && n_total > 0.0) {
        return Err(CubatureError::Overflow { s, d });
    }
    Ok(DegreeCount {
        s,
        d,
        n_euclidean,
        n_total,
        ratio: n_total / n_euclidean,
    })
}

fn check_dimension(s: u32) -> Result<(), CubatureError> {
    if (1..=MAX_RATIO_DIMENSION).contains(&s) {
        Ok(())
    } else {
        Err(CubatureError::DimensionOutOfRange {
            s,
            max: MAX_RATIO_DIMENSION,
        })
    }
}

/// `N_total / N_euclidean = (s/2)! / s! · (4s/π)^{s/2}`, in log space.
pub fn inefficiency_ratio(s: u32) -> Result<f64, CubatureError> {
    check_dimension(s)?;
    let sf = f64::from(s);
    let ln_ratio = ln_gamma(0.5 * sf + 1.0) - ln_gamma(sf + 1.0) + 0.5 * sf * (4.0 * sf / std::f64::consts::PI).ln();
    Ok(ln_ratio.exp())
}

/// Large-`s` form `(1/√2) (2e/π)^{s/2}`.
pub fn asymptotic_ratio(s: u32) -> f64 {
    let sf = f64::from(s);
    std::f64::consts::FRAC_1_SQRT_2 * (2.0 * std::f64::consts::E / std::f64::consts::PI).powf(0.5 * sf)
}

/// Rule-of-thumb growth `1.3^{s-1}`.
pub fn heuristic_ratio(s: u32) -> f64 {
    1.3f64.powi(s as i32 - 1)
}

pub fn total_degree(exponents: &[u32]) -> u32 {
    exponents.iter().sum()
}

pub fn euclidean_degree(exponents: &[u32]) -> f64 {
    exponents.iter().map(|&k| f64::from(k).powi(2)).sum::<f64>().sqrt()
}

/// Number of exponent vectors `k ∈ ℕ^s` with `‖k‖ <= d`, by enumeration
/// over the first `s - 1` coordinates and a direct count of the last.
pub fn lattice_count(s: u32, d: u32, norm: DegreeNorm) -> Result<u64, CubatureError> {
    if !(1..=MAX_LATTICE_DIMENSION).contains(&s) {
        return Err(CubatureError::DimensionOutOfRange {
            s,
            max: MAX_LATTICE_DIMENSION,
        });
    }
    if d > MAX_LATTICE_DEGREE {
        return Err(CubatureError::DegreeOutOfRange {
            d: f64::from(d),
            max: f64::from(MAX_LATTICE_DEGREE),
        });
    }
    let d = u64::from(d);
    let budget = match norm {
        DegreeNorm::Total => d,
        DegreeNorm::Euclidean => d * d,
        DegreeNorm::Max => d,
    };
    Ok(count(s, budget, norm))
}

fn count(s: u32, budget: u64, norm: DegreeNorm) -> u64 {
    if s == 1 {
        return match norm {
            DegreeNorm::Total | DegreeNorm::Max => budget + 1,
            DegreeNorm::Euclidean => isqrt(budget) + 1,
        };
    }
    let mut total = 0;
    let mut k = 0u64;
    loop {
        let cost = match norm {
            DegreeNorm::Total => k,
            DegreeNorm::Euclidean => k * k,
            DegreeNorm::Max => 0,
        };
        if cost > budget || (norm == DegreeNorm::Max && k > budget) {
            break;
        }
        total += count(s - 1, budget - cost, norm);
        k += 1;
    }
    total
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
