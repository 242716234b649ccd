//! Fixed registry of test integrands.

use std::fmt;
use std::str::FromStr;

use crate::poly::chebyshev_t_any;
use crate::rule::WeightFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegrandId {
    /// `1 / (1 + 25 x^2)`
    Runge,
    /// `exp(-1 / x^2)`, extended by 0 at the origin.
    ExpNegInvX2,
    /// `cos(x^3)`
    CosX3,
    /// `cos(x^2)`
    CosX2,
    /// `cos(x)`
    CosX,
    /// `1 / (1 + x^2)`
    InvOnePlusX2,
    /// The constant 1.
    One,
    /// Chebyshev polynomial `T_k`.
    Chebyshev(u32),
    /// `x^k`
    Monomial(u32),
}

impl IntegrandId {
    pub const NAMED: [IntegrandId; 7] = [
        IntegrandId::Runge,
        IntegrandId::ExpNegInvX2,
        IntegrandId::CosX3,
        IntegrandId::CosX2,
        IntegrandId::CosX,
        IntegrandId::InvOnePlusX2,
        IntegrandId::One,
    ];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            IntegrandId::Runge => 1.0 / (1.0 + 25.0 * x * x),
            IntegrandId::ExpNegInvX2 => {
                if x == 0.0 {
                    0.0
                } else {
                    (-1.0 / (x * x)).exp()
                }
            }
            IntegrandId::CosX3 => (x * x * x).cos(),
            IntegrandId::CosX2 => (x * x).cos(),
            IntegrandId::CosX => x.cos(),
            IntegrandId::InvOnePlusX2 => 1.0 / (1.0 + x * x),
            IntegrandId::One => 1.0,
            IntegrandId::Chebyshev(k) => chebyshev_t_any(k, x),
            IntegrandId::Monomial(k) => x.powi(k as i32),
        }
    }

    pub fn analyticity_note(self) -> &'static str {
        match self {
            IntegrandId::Runge => "analytic on [-1,1], poles at ±i/5",
            IntegrandId::ExpNegInvX2 => "C-infinity, essential singularity at 0",
            IntegrandId::CosX3 => "entire, energy at all wave numbers",
            IntegrandId::CosX2 => "entire, oscillation grows with x",
            IntegrandId::CosX => "entire, bounded on the real line",
            IntegrandId::InvOnePlusX2 => "analytic in |Im x| < 1, bounded",
            IntegrandId::One => "constant",
            IntegrandId::Chebyshev(_) => "polynomial",
            IntegrandId::Monomial(_) => "polynomial",
        }
    }
}

impl fmt::Display for IntegrandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrandId::Runge => f.write_str("runge"),
            IntegrandId::ExpNegInvX2 => f.write_str("exp-neg-inv-x2"),
            IntegrandId::CosX3 => f.write_str("cos-x3"),
            IntegrandId::CosX2 => f.write_str("cos-x2"),
            IntegrandId::CosX => f.write_str("cos-x"),
            IntegrandId::InvOnePlusX2 => f.write_str("inv-one-plus-x2"),
            IntegrandId::One => f.write_str("one"),
            IntegrandId::Chebyshev(k) => write!(f, "cheb-T-{k}"),
            IntegrandId::Monomial(k) => write!(f, "monomial-{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown integrand `{0}`")]
pub struct UnknownIntegrand(pub String);

impl FromStr for IntegrandId {
    type Err = UnknownIntegrand;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownIntegrand(s.to_string());
        if let Some(k) = s.strip_prefix("cheb-T-") {
            return k.parse().map(IntegrandId::Chebyshev).map_err(|_| unknown());
        }
        if let Some(k) = s.strip_prefix("monomial-") {
            return k.parse().map(IntegrandId::Monomial).map_err(|_| unknown());
        }
        IntegrandId::NAMED
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(unknown)
    }
}

/// A registry integrand, optionally multiplied by a weight function.
///
/// Damping by `exp(-x^2)` turns `f` into the `g(x) = exp(-x^2) f(x)` that
/// finite-interval rules integrate when standing in for Gauss-Hermite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Integrand {
    id: IntegrandId,
    damping: WeightFunction,
}

impl Integrand {
    pub fn new(id: IntegrandId) -> Self {
        Integrand {
            id,
            damping: WeightFunction::Unit,
        }
    }

    pub fn damped(id: IntegrandId, damping: WeightFunction) -> Self {
        Integrand { id, damping }
    }

    pub fn id(&self) -> IntegrandId {
        self.id
    }

    pub fn damping(&self) -> WeightFunction {
        self.damping
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.damping {
            WeightFunction::Unit => self.id.eval(x),
            w => w.eval(x) * self.id.eval(x),
        }
    }

    pub fn name(&self) -> String {
        match self.damping {
            WeightFunction::Unit => self.id.to_string(),
            WeightFunction::GaussianExpNegX2 => format!("exp(-x^2)*{}", self.id),
            WeightFunction::ExpNegX => format!("exp(-x)*{}", self.id),
        }
    }

    pub fn analyticity_note(&self) -> &'static str {
        self.id.analyticity_note()
    }
}

impl From<IntegrandId> for Integrand {
    fn from(id: IntegrandId) -> Self {
        Integrand::new(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in IntegrandId::NAMED
            .into_iter()
            .chain([IntegrandId::Chebyshev(30), IntegrandId::Monomial(7)])
        {
            assert_eq!(id.to_string().parse::<IntegrandId>().unwrap(), id);
        }
        assert!("cheb-T-x".parse::<IntegrandId>().is_err());
        assert!("sinc".parse::<IntegrandId>().is_err());
    }

    #[test]
    fn evaluators_are_total() {
        assert_eq!(IntegrandId::ExpNegInvX2.eval(0.0), 0.0);
        assert_eq!(IntegrandId::Runge.eval(0.0), 1.0);
        assert_eq!(IntegrandId::Chebyshev(2).eval(0.0), -1.0);
        assert_eq!(IntegrandId::Monomial(0).eval(0.0), 1.0);
        let g = Integrand::damped(IntegrandId::CosX, WeightFunction::GaussianExpNegX2);
        assert_eq!(g.eval(0.0), 1.0);
        assert!((g.eval(1.0) - (-1.0f64).exp() * 1.0f64.cos()).abs() < 1e-16);
    }
}
