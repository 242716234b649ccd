use std::f64::consts::PI;

use proptest::prelude::*;
use quadlab::classical::{gauss_rule, GaussFamily};
use quadlab::experiments::{convergence_study, first_n_below, fit_model, FitModel, RuleSpec, Target};
use quadlab::transforms::{
    strip_transformed_rule, transformed_rule, truncated_hermite_integrate, truncated_hermite_rule, ConformalMap,
    InnerRule, TruncationPlan,
};
use quadlab::{apply_rule, Integrand, IntegrandId, WeightFunction};
use rayon::prelude::*;

const EPS: f64 = f64::EPSILON;

#[test]
fn identity_map_reproduces_gauss_legendre() {
    for n in [1, 2, 9, 40, 101] {
        let t = transformed_rule(n, &ConformalMap::Identity).unwrap();
        let g = gauss_rule(GaussFamily::Legendre, n).unwrap();
        assert_eq!(t.nodes(), g.nodes());
        assert_eq!(t.weights(), g.weights());
    }
}

#[test]
fn strip_weights_positive_up_to_500() {
    for rho in [1.1, 1.4, 1.8] {
        let bad: Vec<usize> = (1..=500usize)
            .into_par_iter()
            .filter(|&n| !strip_transformed_rule(n, rho).unwrap().weights().iter().all(|&w| w > 0.0))
            .collect();
        assert!(bad.is_empty(), "rho={rho}: {bad:?}");
    }
}

/// `Σ w_j g'(s_j)` is Gauss-Legendre applied to `g'`, whose integral is 2; the
/// sum reaches 1e-10 once that quadrature has converged.
#[test]
fn strip_weight_sum_converges_to_two() {
    for (rho, from) in [(1.1, 117), (1.4, 35), (1.8, 21)] {
        for n in (from..=from + 150).step_by(5) {
            let sum = strip_transformed_rule(n, rho).unwrap().weight_sum();
            assert!((sum - 2.0).abs() <= 1e-10, "rho={rho} n={n}: {sum}");
        }
    }
    let small = strip_transformed_rule(8, 1.4).unwrap().weight_sum();
    assert!((small - 2.0).abs() > 1e-6, "{small}");
}

#[test]
fn central_density_ratio_near_half_pi() {
    let n = 80;
    let gl = gauss_rule(GaussFamily::Legendre, n).unwrap();
    let st = strip_transformed_rule(n, 1.4).unwrap();
    let gap = |x: &[f64]| x[n / 2] - x[n / 2 - 1];
    let ratio = gap(gl.nodes()) / gap(st.nodes());
    assert!((1.3..=1.7).contains(&ratio), "{ratio}");
    assert!((ratio - PI / 2.0).abs() < 0.2);
}

#[test]
fn transplanted_rule_beats_gauss_on_flat_bump() {
    let target = Target::unit(IntegrandId::ExpNegInvX2);
    let ns: Vec<usize> = (2..=120).collect();
    let first = |spec: RuleSpec| first_n_below(&convergence_study(&spec, target, &ns, None).unwrap(), 1e-8).unwrap();
    let gauss = first(RuleSpec::GaussLegendre);
    let strip = first(RuleSpec::StripTransformed { rho: 1.4 });
    assert!(strip < gauss, "strip {strip} vs gauss {gauss}");
}

#[test]
fn truncated_rule_gaussian_mass() {
    let one = Integrand::new(IntegrandId::One);
    for inner in [InnerRule::GaussLegendre, InnerRule::ClenshawCurtis, InnerRule::Trapezoid] {
        let plan = TruncationPlan::new(2.0, 64, inner).unwrap();
        let value = truncated_hermite_integrate(&one, 64, &plan).unwrap();
        assert!((value - PI.sqrt()).abs() < 1e-10, "{}: {value}", inner.name());
    }
}

#[test]
fn truncation_interval_is_l_cube_root_n() {
    let plan = TruncationPlan::new(2.0, 64, InnerRule::Trapezoid).unwrap();
    assert_eq!(plan.interval(), (-8.0, 8.0));
    let plan = TruncationPlan::new(0.6, 125, InnerRule::GaussLegendre).unwrap();
    let h = 0.6 * 125f64.cbrt();
    assert_eq!(plan.interval(), (-h, h));
    let rule = truncated_hermite_rule(&plan).unwrap();
    assert!(rule.nodes().iter().all(|x| x.abs() <= h));
    assert_eq!(rule.weight_function(), WeightFunction::GaussianExpNegX2);
}

/// With `L = 2` the truncation error `exp(-4 n^{2/3})` sits below rounding
/// for every n in the sweep, so the fit uses a narrower interval.
#[test]
fn truncated_errors_follow_n_two_thirds() {
    let ns: Vec<usize> = (1..=32).map(|i| 16 * i).collect();
    for id in [IntegrandId::CosX, IntegrandId::InvOnePlusX2] {
        let spec = RuleSpec::TruncatedHermite { l: 0.6, inner: InnerRule::GaussLegendre };
        let target = Target::new(id, WeightFunction::GaussianExpNegX2);
        let record = convergence_study(&spec, target, &ns, Some(FitModel::ExpN23)).unwrap();
        let fit = record.fit.unwrap();
        assert!(fit.slope < 0.0 && fit.r_squared >= 0.98, "{id}: {fit:?}");
    }
}

/// Poles at `±i` give Gauss-Hermite errors close to `exp(-2 sqrt(2n))`.
#[test]
fn gauss_hermite_root_exponential_on_pole_pair() {
    let ns: Vec<usize> = (1..=40).map(|i| 2 * i).collect();
    let target = Target::new(IntegrandId::InvOnePlusX2, WeightFunction::GaussianExpNegX2);
    let record = convergence_study(&RuleSpec::GaussHermite, target, &ns, None).unwrap();
    let sqrt = fit_model(&record.samples, FitModel::ExpSqrtN).unwrap();
    let two_thirds = fit_model(&record.samples, FitModel::ExpN23).unwrap();
    assert!(sqrt.r_squared >= 0.999, "{sqrt:?}");
    assert!(sqrt.r_squared > two_thirds.r_squared);
    let rate = -2.0 * 2f64.sqrt();
    assert!((sqrt.slope - rate).abs() <= 0.1 * rate.abs(), "{}", sqrt.slope);
}

#[test]
fn truncated_trapezoid_outpaces_gauss_hermite_on_cos_x3() {
    let target = Target::new(IntegrandId::CosX3, WeightFunction::GaussianExpNegX2);
    let ns: Vec<usize> = (1..=10).map(|i| 20 * i).collect();
    let trap = convergence_study(&RuleSpec::GaussianTrapezoid { half_width: 6.0 }, target, &ns, None).unwrap();
    let hermite = convergence_study(&RuleSpec::GaussHermite, target, &ns, None).unwrap();
    assert!(trap.samples.last().unwrap().abs_error < 1e-12);
    assert!(hermite.samples.iter().all(|s| s.abs_error > 1e-12));
}

#[test]
fn laguerre_underflowing_nodes_do_not_matter() {
    for n in [100, 200, 500] {
        let rule = gauss_rule(GaussFamily::Laguerre, n).unwrap();
        let kept = rule.drop_weights_below(EPS);
        assert!(kept.n() < rule.n());
        for id in [IntegrandId::CosX, IntegrandId::InvOnePlusX2, IntegrandId::Runge] {
            let f = Integrand::new(id);
            let full = apply_rule(&rule, &f).unwrap();
            let cut = apply_rule(&kept, &f).unwrap();
            assert!((full - cut).abs() < 1e-14 * full.abs(), "n={n} {id}: {full} vs {cut}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strip_map_contracts(rho in 1.02f64..=2.0, s in -1.0f64..=1.0) {
        let map = ConformalMap::strip(rho).unwrap();
        prop_assert!((map.forward(1.0).unwrap() - 1.0).abs() <= 8.0 * EPS);
        prop_assert!((map.forward(-1.0).unwrap() + 1.0).abs() <= 8.0 * EPS);
        let (a, b) = (map.forward(s).unwrap(), map.forward(-s).unwrap());
        prop_assert!((a + b).abs() <= 8.0 * EPS);
        prop_assert!(a.abs() <= 1.0);
        if s.abs() < 1.0 {
            prop_assert!(map.derivative(s).unwrap() > 0.0);
        }
    }

    #[test]
    fn strip_map_is_increasing_on_grid(rho in 1.02f64..=2.0) {
        let map = ConformalMap::strip(rho).unwrap();
        let values: Vec<f64> = (0..1000).map(|i| map.forward(-1.0 + 2.0 * (i as f64 + 0.5) / 1000.0).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] < w[1]));
        for i in 0..1000 {
            let s = -1.0 + 2.0 * (i as f64 + 0.5) / 1000.0;
            prop_assert!(map.derivative(s).unwrap() > 0.0);
        }
    }

    #[test]
    fn map_derivative_matches_difference_quotient(rho in 1.02f64..=2.0, s in -0.99f64..0.99) {
        let map = ConformalMap::strip(rho).unwrap();
        let h = 1e-5;
        let g = |x: f64| map.forward(x).unwrap();
        let fd = (8.0 * (g(s + h) - g(s - h)) - (g(s + 2.0 * h) - g(s - 2.0 * h))) / (12.0 * h);
        let d = map.derivative(s).unwrap();
        prop_assert!((fd - d).abs() <= 1e-6 * d.max(1.0), "{} vs {}", fd, d);
    }
}
