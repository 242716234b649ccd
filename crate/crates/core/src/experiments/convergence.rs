use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{ExperimentError, RuleSpec, Target};
use crate::rule::{apply_rule, Family};

/// Convergence model, as the abscissa against which `ln(error)` is regressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FitModel {
    /// `exp(-c n)`
    ExpN,
    /// `exp(-c n^{2/3})`
    ExpN23,
    /// `exp(-c √n)`
    ExpSqrtN,
    /// `n^{-p}`: regressed against `ln n`.
    PowerLaw,
}

impl FitModel {
    pub const ALL: [FitModel; 4] = [FitModel::ExpN, FitModel::ExpN23, FitModel::ExpSqrtN, FitModel::PowerLaw];

    pub fn axis(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            FitModel::ExpN => n,
            FitModel::ExpN23 => n.powf(2.0 / 3.0),
            FitModel::ExpSqrtN => n.sqrt(),
            FitModel::PowerLaw => n.ln(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FitModel::ExpN => "exp-n",
            FitModel::ExpN23 => "exp-n23",
            FitModel::ExpSqrtN => "exp-sqrt-n",
            FitModel::PowerLaw => "power-law",
        }
    }
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FitModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FitModel::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown fit model {s:?}"))
    }
}

/// Least-squares line `ln(error) = intercept + slope * axis(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub model: FitModel,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub n: usize,
    pub abs_error: f64,
    /// The error was exactly zero in floating point.
    pub below_floor: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRecord {
    pub family: Family,
    pub rule: String,
    pub integrand: String,
    pub samples: Vec<Sample>,
    pub fit: Option<Fit>,
}

/// Fits `model` to the samples that are not below the floor; `None` with
/// fewer than three usable points.
pub fn fit_model(samples: &[Sample], model: FitModel) -> Option<Fit> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| !s.below_floor && s.abs_error > 0.0)
        .map(|s| (model.axis(s.n), s.abs_error.ln()))
        .collect();
    if points.len() < 3 {
        return None;
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - residual / syy).clamp(0.0, 1.0) };
    Some(Fit {
        model,
        slope,
        intercept,
        r_squared,
    })
}

/// Errors `|I_n(f) - I(f)|` for each `n`, evaluated in parallel and kept in
/// `n` order.
pub fn convergence_study(
    spec: &RuleSpec,
    target: Target,
    n_list: &[usize],
    model: Option<FitModel>,
) -> Result<ConvergenceRecord, ExperimentError> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::InvalidNList);
    }
    let reference = target.reference()?;
    let samples = n_list
        .par_iter()
        .map(|&n| -> Result<Sample, ExperimentError> {
            let rule = spec.build(n)?;
            let integrand = target.integrand_for(&rule)?;
            let error = (apply_rule(&rule, &integrand)? - reference).abs();
            Ok(Sample {
                n,
                abs_error: error,
                below_floor: error == 0.0,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fit = model.and_then(|m| fit_model(&samples, m));
    Ok(ConvergenceRecord {
        family: spec.family(),
        rule: spec.to_string(),
        integrand: target.name(),
        samples,
        fit,
    })
}

/// Smallest sampled `n` from which every later sample stays below `tol`.
pub fn first_n_below(record: &ConvergenceRecord, tol: f64) -> Option<usize> {
    let last_bad = record.samples.iter().rposition(|s| !(s.abs_error < tol));
    match last_bad {
        None => record.samples.first().map(|s| s.n),
        Some(i) => record.samples.get(i + 1).map(|s| s.n),
    }
}
