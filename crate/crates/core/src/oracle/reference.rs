//! Reference values `∫_D w(x) f(x) dx` to at least 50 significant digits.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;
use rug::{Float, Integer};

use super::hp::{eval_id, eval_weight, gauss_legendre_hp, graded_panels, integrate_panels, to_digits, uniform_panels, Precision};
use super::rational::chebyshev_moment;
use super::OracleError;
use crate::integrand::IntegrandId;
use crate::rule::{Domain, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceMethod {
    ClosedForm,
    HighPrecisionQuadrature,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceValue {
    pub integrand: IntegrandId,
    pub weight: WeightFunction,
    pub domain: Domain,
    pub value: Float,
    pub method: ReferenceMethod,
}

impl ReferenceValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn digits(&self, significant: usize) -> String {
        to_digits(&self.value, significant)
    }
}

/// `exp(-1/x^2)` is below `10^-60` inside `(-CUT, CUT)`; that strip is dropped.
const CUT: f64 = 0.085;
const WHOLE_LINE_HALF_WIDTH: f64 = 12.0;
const HALF_LINE_END: f64 = 200.0;
const MESH_AGREEMENT: f64 = 1e-40;

#[derive(Clone, Copy, Debug)]
struct Mesh {
    points: usize,
    scale: f64,
}

const MESHES: [Mesh; 2] = [Mesh { points: 40, scale: 1.0 }, Mesh { points: 48, scale: 0.75 }];

type Key = (IntegrandId, WeightFunction, u8, u64, u64, u32);

fn key(id: IntegrandId, weight: WeightFunction, domain: Domain, prec: Precision) -> Key {
    let (tag, a, b) = match domain {
        Domain::Interval { a, b } => (0, a.to_bits(), b.to_bits()),
        Domain::HalfLine => (1, 0, 0),
        Domain::WholeLine => (2, 0, 0),
    };
    (id, weight, tag, a, b, prec.bits())
}

fn cache() -> &'static RwLock<HashMap<Key, ReferenceValue>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, ReferenceValue>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Reference integral at the default precision.
pub fn reference_integral(
    id: IntegrandId,
    weight: WeightFunction,
    domain: Domain,
) -> Result<ReferenceValue, OracleError> {
    reference_integral_with(id, weight, domain, Precision::default())
}

/// Closed form where one is known, otherwise two-mesh composite
/// Gauss-Legendre quadrature. Results are cached per arguments.
pub fn reference_integral_with(
    id: IntegrandId,
    weight: WeightFunction,
    domain: Domain,
    prec: Precision,
) -> Result<ReferenceValue, OracleError> {
    let k = key(id, weight, domain, prec);
    if let Some(hit) = cache().read().expect("cache poisoned").get(&k) {
        return Ok(hit.clone());
    }
    let (value, method) = match closed_form(id, weight, domain, prec)? {
        Some(v) => (v, ReferenceMethod::ClosedForm),
        None => (
            quadrature_value(id, weight, domain, prec)?,
            ReferenceMethod::HighPrecisionQuadrature,
        ),
    };
    let reference = ReferenceValue {
        integrand: id,
        weight,
        domain,
        value,
        method,
    };
    cache()
        .write()
        .expect("cache poisoned")
        .insert(k, reference.clone());
    Ok(reference)
}

fn check_pairing(id: IntegrandId, weight: WeightFunction, domain: Domain) -> Result<(), OracleError> {
    let supported = matches!(
        (domain, weight),
        (Domain::Interval { .. }, WeightFunction::Unit)
            | (Domain::WholeLine, WeightFunction::GaussianExpNegX2)
            | (Domain::HalfLine, WeightFunction::ExpNegX)
    );
    let bounded_basis = !matches!(id, IntegrandId::Chebyshev(_)) || matches!(domain, Domain::Interval { .. });
    let ordered = match domain {
        Domain::Interval { a, b } => a.is_finite() && b.is_finite() && a < b,
        _ => true,
    };
    if supported && bounded_basis && ordered {
        Ok(())
    } else {
        Err(OracleError::Unsupported {
            integrand: id.to_string(),
            weight,
            domain,
        })
    }
}

/// Closed-form value, or `None` when only quadrature is available.
pub fn closed_form(
    id: IntegrandId,
    weight: WeightFunction,
    domain: Domain,
    prec: Precision,
) -> Result<Option<Float>, OracleError> {
    check_pairing(id, weight, domain)?;
    let bits = prec.bits();
    let f = |v: f64| prec.float(v);
    let sqrt_pi = prec.pi().sqrt();
    let value = match (domain, id) {
        (Domain::Interval { a, b }, id) => {
            let (fa, fb) = (f(a), f(b));
            match id {
                IntegrandId::One => Some(fb - fa),
                IntegrandId::Monomial(k) => {
                    Some((Float::with_val(bits, fb.pow(k + 1)) - Float::with_val(bits, fa.pow(k + 1))) / (k + 1))
                }
                IntegrandId::Chebyshev(k) if a == -1.0 && b == 1.0 => {
                    Some(Float::with_val(bits, &chebyshev_moment(k)))
                }
                IntegrandId::Runge => Some(((fb * 5u32).atan() - (fa * 5u32).atan()) / 5u32),
                IntegrandId::InvOnePlusX2 => Some(fb.atan() - fa.atan()),
                IntegrandId::CosX => Some(fb.sin() - fa.sin()),
                IntegrandId::ExpNegInvX2 => Some(if a >= 0.0 {
                    half_integral_exp_neg_inv_x2(&fb) - half_integral_exp_neg_inv_x2(&fa)
                } else if b <= 0.0 {
                    half_integral_exp_neg_inv_x2(&-fa) - half_integral_exp_neg_inv_x2(&-fb)
                } else {
                    half_integral_exp_neg_inv_x2(&fb) + half_integral_exp_neg_inv_x2(&-fa)
                }),
                _ => None,
            }
        }
        (Domain::WholeLine, id) => match id {
            IntegrandId::One => Some(sqrt_pi),
            IntegrandId::Monomial(k) if k % 2 == 1 => Some(Float::with_val(bits, 0)),
            IntegrandId::Monomial(k) => Some((Float::with_val(bits, k + 1) / 2u32).gamma()),
            IntegrandId::CosX => Some(sqrt_pi * f(-0.25).exp()),
            // ∫ e^{-x^2} / (1 + c^2 x^2) = (π/c) e^{1/c^2} erfc(1/c)
            IntegrandId::InvOnePlusX2 => Some(prec.pi() * f(1.0).exp() * f(1.0).erfc()),
            IntegrandId::Runge => {
                let inv = Float::with_val(bits, 1u32) / 5u32;
                Some(prec.pi() / 5u32 * Float::with_val(bits, inv.square_ref()).exp() * inv.erfc())
            }
            // Re sqrt(π / (1 - i)) = sqrt(π) 2^{-1/4} cos(π/8)
            IntegrandId::CosX2 => {
                Some(sqrt_pi * f(2.0).pow(f(-0.25)) * (prec.pi() / 8u32).cos())
            }
            IntegrandId::ExpNegInvX2 => Some(sqrt_pi * f(-2.0).exp()),
            _ => None,
        },
        (Domain::HalfLine, id) => match id {
            IntegrandId::One => Some(f(1.0)),
            IntegrandId::Monomial(k) => Some(Float::with_val(bits, &Integer::from(Integer::factorial(k)))),
            IntegrandId::CosX => Some(f(0.5)),
            _ => None,
        },
    };
    Ok(value)
}

/// `∫_0^c exp(-1/x^2) dx = c exp(-1/c^2) - sqrt(π) erfc(1/c)` for `c >= 0`.
fn half_integral_exp_neg_inv_x2(c: &Float) -> Float {
    let prec = c.prec();
    if c.is_zero() {
        return Float::with_val(prec, 0);
    }
    let inv = Float::with_val(prec, 1) / c;
    let term = Float::with_val(prec, c * (-Float::with_val(prec, inv.square_ref())).exp());
    let sqrt_pi = Float::with_val(prec, rug::float::Constant::Pi).sqrt();
    term - sqrt_pi * inv.erfc()
}

/// Two-mesh composite Gauss-Legendre value; errors if the meshes disagree
/// beyond 40 significant digits.
pub fn quadrature_value(
    id: IntegrandId,
    weight: WeightFunction,
    domain: Domain,
    prec: Precision,
) -> Result<Float, OracleError> {
    check_pairing(id, weight, domain)?;
    let coarse = quadrature_on_mesh(id, weight, domain, prec, MESHES[0])?;
    let fine = quadrature_on_mesh(id, weight, domain, prec, MESHES[1])?;
    let diff = Float::with_val(prec.bits(), &coarse - &fine).abs().to_f64();
    let size = coarse.clone().abs().to_f64().max(fine.clone().abs().to_f64());
    if diff > MESH_AGREEMENT * size + 1e-60 {
        return Err(OracleError::MeshDisagreement {
            integrand: format!("{id} ({weight:?}, {domain})"),
            first: to_digits(&coarse, 50),
            second: to_digits(&fine, 50),
        });
    }
    Ok(fine)
}

fn quadrature_on_mesh(
    id: IntegrandId,
    weight: WeightFunction,
    domain: Domain,
    prec: Precision,
    mesh: Mesh,
) -> Result<Float, OracleError> {
    let bits = prec.bits();
    let rule = gauss_legendre_hp(mesh.points, prec)?;
    let weighted = |x: &Float| eval_id(id, x) * eval_weight(weight, x);
    let avoid_origin = |lo: f64, hi: f64, max_width: f64| -> Vec<(f64, f64)> {
        let ratio = 1.0 + 0.5 * mesh.scale;
        let mut panels = Vec::new();
        if lo < -CUT {
            panels.extend(graded_panels(hi.min(-CUT), lo, ratio, max_width));
        }
        if hi > CUT {
            panels.extend(graded_panels(CUT.max(lo), hi, ratio, max_width));
        }
        panels
    };
    let value = match domain {
        Domain::Interval { a, b } => {
            let panels = if id == IntegrandId::ExpNegInvX2 {
                avoid_origin(a, b, 0.25 * mesh.scale)
            } else {
                uniform_panels(a, b, mesh.scale / 32.0)
            };
            integrate_panels(&weighted, &panels, &rule, prec)
        }
        Domain::WholeLine => match id {
            IntegrandId::CosX3 => {
                // x = e^{iπ/6} t turns e^{ix^3} into e^{-t^3}.
                let s6 = prec.float(0.5);
                let c6 = Float::with_val(bits, 3u32).sqrt() / 2u32;
                let f = |t: &Float| {
                    let t2 = Float::with_val(bits, t.square_ref());
                    let phase = Float::with_val(bits, &t2 * &c6);
                    let decay = (-(Float::with_val(bits, &t2 * t) + t2 / 2u32)).exp();
                    let (sin, cos) = phase.sin_cos(Float::new(bits));
                    decay * (cos * &c6 + sin * &s6) * 2u32
                };
                integrate_panels(&f, &uniform_panels(0.0, 6.0, mesh.scale / 8.0), &rule, prec)
            }
            IntegrandId::ExpNegInvX2 => integrate_panels(
                &weighted,
                &avoid_origin(-WHOLE_LINE_HALF_WIDTH, WHOLE_LINE_HALF_WIDTH, 0.25 * mesh.scale),
                &rule,
                prec,
            ),
            _ => {
                let extra = match id {
                    IntegrandId::Monomial(k) => f64::from(k).sqrt(),
                    _ => 0.0,
                };
                let half = WHOLE_LINE_HALF_WIDTH + extra;
                integrate_panels(&weighted, &uniform_panels(-half, half, mesh.scale / 16.0), &rule, prec)
            }
        },
        Domain::HalfLine => match id {
            IntegrandId::CosX3 => {
                // x = e^{iπ/6} t.
                let s6 = prec.float(0.5);
                let c6 = Float::with_val(bits, 3u32).sqrt() / 2u32;
                let f = |t: &Float| {
                    let cube = Float::with_val(bits, t.pow(3u32));
                    let decay = (-(cube + Float::with_val(bits, t * &c6))).exp();
                    let (sin, cos) = (t.clone() / 2u32).sin_cos(Float::new(bits));
                    decay * (cos * &c6 + sin * &s6)
                };
                integrate_panels(&f, &uniform_panels(0.0, 8.0, mesh.scale / 8.0), &rule, prec)
            }
            IntegrandId::CosX2 => {
                // x = e^{iπ/4} t.
                let r = Float::with_val(bits, 2u32).sqrt().recip();
                let f = |t: &Float| {
                    let arg = Float::with_val(bits, t * &r);
                    let decay = (-(Float::with_val(bits, t.square_ref()) + &arg)).exp();
                    let (sin, cos) = arg.sin_cos(Float::new(bits));
                    decay * (cos + sin) * &r
                };
                integrate_panels(&f, &uniform_panels(0.0, 14.0, mesh.scale / 8.0), &rule, prec)
            }
            IntegrandId::ExpNegInvX2 => integrate_panels(
                &weighted,
                &avoid_origin(0.0, HALF_LINE_END, 0.5 * mesh.scale),
                &rule,
                prec,
            ),
            _ => {
                let end = match id {
                    IntegrandId::Monomial(k) => HALF_LINE_END + 3.0 * f64::from(k),
                    _ => HALF_LINE_END,
                };
                let mut panels = uniform_panels(0.0, 4.0, mesh.scale / 32.0);
                panels.extend(uniform_panels(4.0, end, mesh.scale / 2.0));
                integrate_panels(&weighted, &panels, &rule, prec)
            }
        },
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &Float, b: &Float) -> f64 {
        let d = Float::with_val(a.prec(), a - b).abs().to_f64();
        d / b.clone().abs().to_f64().max(1e-300)
    }

    #[test]
    fn runge_closed_form_digits() {
        let r = reference_integral(IntegrandId::Runge, WeightFunction::Unit, Domain::CANONICAL).unwrap();
        assert_eq!(r.method, ReferenceMethod::ClosedForm);
        assert!(r.digits(12).starts_with("5.49360306"), "{}", r.digits(12));
    }

    #[test]
    fn exp_neg_inv_x2_closed_form_digits() {
        let r = reference_integral(IntegrandId::ExpNegInvX2, WeightFunction::Unit, Domain::CANONICAL).unwrap();
        assert!(r.digits(10).starts_with("1.781477"), "{}", r.digits(10));
    }

    #[test]
    fn cos_x3_contour_matches_direct_quadrature() {
        let prec = Precision::default();
        let r = reference_integral(IntegrandId::CosX3, WeightFunction::GaussianExpNegX2, Domain::WholeLine).unwrap();
        assert_eq!(r.method, ReferenceMethod::HighPrecisionQuadrature);
        assert!(r.digits(40).starts_with("1.388108266968781100559209388979292799"), "{}", r.digits(40));
        // Real-axis quadrature on [-11, 11]; the dropped tail is below 1e-53.
        let rule = gauss_legendre_hp(40, prec).unwrap();
        let f = |x: &Float| eval_id(IntegrandId::CosX3, x) * eval_weight(WeightFunction::GaussianExpNegX2, x);
        let direct = integrate_panels(&f, &uniform_panels(-11.0, 11.0, 1.0 / 32.0), &rule, prec);
        assert!(rel(&direct, &r.value) < 1e-40);
    }

    #[test]
    fn unsupported_pairings() {
        assert!(matches!(
            reference_integral(IntegrandId::Runge, WeightFunction::Unit, Domain::WholeLine),
            Err(OracleError::Unsupported { .. })
        ));
        assert!(reference_integral(IntegrandId::Chebyshev(3), WeightFunction::GaussianExpNegX2, Domain::WholeLine).is_err());
    }

    #[test]
    fn shifted_interval_closed_forms() {
        let prec = Precision::default();
        let d = Domain::Interval { a: -0.5, b: 2.0 };
        for id in [IntegrandId::Runge, IntegrandId::ExpNegInvX2, IntegrandId::CosX, IntegrandId::Monomial(3)] {
            let closed = closed_form(id, WeightFunction::Unit, d, prec).unwrap().unwrap();
            let quad = quadrature_value(id, WeightFunction::Unit, d, prec).unwrap();
            assert!(rel(&quad, &closed) < 1e-40, "{id}");
        }
    }
}
