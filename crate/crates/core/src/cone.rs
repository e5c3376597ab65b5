//! Constant-curvature cone metrics and cone-angle arithmetic in codimension 2.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::chart::CodimTwoModel;
use crate::error::{Error, Result};

/// Largest denominator accepted when recognizing a float angle as rational.
pub const MAX_ANGLE_DENOMINATOR: u64 = 10_000;
/// Tolerance of the continued-fraction rationality test.
pub const RATIONALITY_TOLERANCE: f64 = 1e-12;

/// Which upper bound on the radius applies when `k > 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusBound {
    /// `r ≤ π/√k`, the diameter of the model sphere.
    #[default]
    Conventional,
    /// `r ≤ k/√π`, taken literally.
    Literal,
}

impl RadiusBound {
    pub fn limit(&self, k: f64) -> f64 {
        match self {
            RadiusBound::Conventional => PI / k.sqrt(),
            RadiusBound::Literal => k / PI.sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeParams {
    pub k: f64,
    pub r: f64,
    pub link_distance: f64,
    pub t1: f64,
    pub t2: f64,
}

impl ConeParams {
    /// Parameters with the largest radius the bound allows (unbounded for `k ≤ 0`).
    pub fn new(k: f64, link_distance: f64, t1: f64, t2: f64, bound: RadiusBound) -> Self {
        let r = if k > 0.0 { bound.limit(k) } else { f64::INFINITY };
        ConeParams { k, r, link_distance, t1, t2 }
    }

    pub fn angle(&self) -> f64 {
        self.link_distance.min(PI)
    }

    /// Checks the ranges; returns warnings that do not invalidate the input.
    pub fn validate(&self, bound: RadiusBound) -> Result<Vec<String>> {
        let finite = [self.k, self.link_distance, self.t1, self.t2].iter().all(|x| x.is_finite());
        if !finite || self.r.is_nan() {
            return Err(Error::ParamOutOfRange("parameters must be finite numbers".into()));
        }
        if self.r <= 0.0 {
            return Err(Error::ParamOutOfRange(format!("radius {} must be positive", self.r)));
        }
        if self.link_distance < 0.0 {
            return Err(Error::ParamOutOfRange(format!("link distance {} is negative", self.link_distance)));
        }
        for t in [self.t1, self.t2] {
            if t < 0.0 || t >= self.r {
                return Err(Error::ParamOutOfRange(format!("radius {t} outside [0, {})", self.r)));
            }
        }
        let mut warnings = Vec::new();
        if self.k > 0.0 {
            let limit = bound.limit(self.k);
            if self.r > limit {
                return Err(Error::ParamOutOfRange(format!("r = {} exceeds the {bound:?} bound {limit}", self.r)));
            }
            let other = match bound {
                RadiusBound::Conventional => RadiusBound::Literal,
                RadiusBound::Literal => RadiusBound::Conventional,
            };
            if self.r > other.limit(self.k) {
                warnings.push(format!("r = {} exceeds the {other:?} bound {}", self.r, other.limit(self.k)));
            }
        }
        Ok(warnings)
    }
}

/// Distance between `(t1, x1)` and `(t2, x2)` in the `k`-cone.
pub fn cone_distance(p: &ConeParams, bound: RadiusBound) -> Result<f64> {
    p.validate(bound)?;
    Ok(law_of_cosines(p.k, p.t1, p.t2, p.angle()))
}

/// Side opposite the angle `theta` between legs `a` and `b` in the model plane `M²_k`.
pub fn law_of_cosines(k: f64, a: f64, b: f64, theta: f64) -> f64 {
    if k == 0.0 {
        (a * a + b * b - 2.0 * a * b * theta.cos()).max(0.0).sqrt()
    } else if k > 0.0 {
        let s = k.sqrt();
        let c = (s * a).cos() * (s * b).cos() + (s * a).sin() * (s * b).sin() * theta.cos();
        c.clamp(-1.0, 1.0).acos() / s
    } else {
        let s = (-k).sqrt();
        let c = (s * a).cosh() * (s * b).cosh() - (s * a).sinh() * (s * b).sinh() * theta.cos();
        c.max(1.0).acosh() / s
    }
}

/// Reduced positive fraction `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::ParamOutOfRange(format!("{num}/{den} is not a positive fraction")));
        }
        let g = num.gcd(&den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Best continued-fraction approximation of `x > 0` with denominator at most `max_den`,
/// if it lies within `tol`.
pub fn recognize_rational(x: f64, tol: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || x <= 0.0 {
        return None;
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if h1 > 0 && (x - h1 as f64 / k1 as f64).abs() <= tol * x.max(1.0) {
            return Rational::new(h1, k1).ok();
        }
        let frac = y - y.floor();
        if frac < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// A cone angle: an exact rational multiple of a full turn, or a float in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConeAngle {
    Turns { turns: Rational },
    Radians { value: f64 },
}

impl ConeAngle {
    pub fn turns(num: u64, den: u64) -> Result<Self> {
        Ok(ConeAngle::Turns { turns: Rational::new(num, den)? })
    }

    pub fn radians(&self) -> f64 {
        match self {
            ConeAngle::Turns { turns } => 2.0 * PI * turns.value(),
            ConeAngle::Radians { value } => *value,
        }
    }

    /// The angle as a reduced fraction of `2π`, when rational.
    pub fn as_turns(&self) -> Option<Rational> {
        match self {
            ConeAngle::Turns { turns } => Some(*turns),
            ConeAngle::Radians { value } => {
                recognize_rational(value / (2.0 * PI), RATIONALITY_TOLERANCE, MAX_ANGLE_DENOMINATOR)
            }
        }
    }
}

impl fmt::Display for ConeAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeAngle::Turns { turns } => write!(f, "{}/{} tau", turns.num, turns.den),
            ConeAngle::Radians { value } => write!(f, "{value}"),
        }
    }
}

impl FromStr for ConeAngle {
    type Err = Error;

    /// `"p/q tau"` (that is `2π·p/q`) or a decimal number of radians.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(frac) = s.strip_suffix("tau") {
            let frac = frac.trim();
            let (p, q) = frac.split_once('/').unwrap_or((frac, "1"));
            let parse = |x: &str| x.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad angle {s:?}")));
            return ConeAngle::turns(parse(p)?, parse(q)?);
        }
        let value: f64 = s.parse().map_err(|_| Error::Input(format!("bad angle {s:?}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::ParamOutOfRange(format!("angle {value} must be positive")));
        }
        Ok(ConeAngle::Radians { value })
    }
}

/// `2π·k/h`.
pub fn angle_of_model(m: CodimTwoModel) -> ConeAngle {
    ConeAngle::Turns { turns: Rational { num: m.k, den: m.h } }
}

/// `(h, k)` with `a = 2π·k/h`, or `None` for an irrational angle.
pub fn model_of_angle(a: &ConeAngle) -> Option<CodimTwoModel> {
    a.as_turns().map(|t| CodimTwoModel { h: t.den, k: t.num })
}

/// Order of the rotation by `a`; `None` means infinite.
pub fn local_holonomy_order(a: &ConeAngle) -> Option<u64> {
    a.as_turns().map(|t| t.den)
}

#[derive(Clone, Debug, Serialize)]
pub struct AngleVerdict {
    pub angle: ConeAngle,
    pub model: Option<CodimTwoModel>,
    pub holonomy_order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConifoldVerdict {
    pub rational: bool,
    pub angles: Vec<AngleVerdict>,
}

pub fn rational_conifold_verdict(angles: &[ConeAngle]) -> ConifoldVerdict {
    let angles: Vec<AngleVerdict> = angles
        .iter()
        .map(|a| AngleVerdict { angle: *a, model: model_of_angle(a), holonomy_order: local_holonomy_order(a) })
        .collect();
    ConifoldVerdict { rational: angles.iter().all(|a| a.holonomy_order.is_some()), angles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn law_of_cosines_examples() {
        let p = ConeParams::new(0.0, PI / 2.0, 3.0, 4.0, RadiusBound::Conventional);
        assert_abs_diff_eq!(cone_distance(&p, RadiusBound::Conventional).unwrap(), 5.0, epsilon = 1e-12);
        let p = ConeParams::new(1.0, PI / 2.0, PI / 2.0, PI / 2.0, RadiusBound::Conventional);
        assert_abs_diff_eq!(cone_distance(&p, RadiusBound::Conventional).unwrap(), PI / 2.0, epsilon = 1e-12);
        for k in [-1.0, 0.0, 0.5] {
            assert_abs_diff_eq!(law_of_cosines(k, 0.7, 0.2, 0.0), 0.5, epsilon = 1e-7);
        }
        // link distances beyond π are capped
        let far = ConeParams::new(0.0, 5.0, 1.0, 1.0, RadiusBound::Conventional);
        assert_abs_diff_eq!(cone_distance(&far, RadiusBound::Conventional).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn radius_bounds() {
        let p = ConeParams { k: 1.0, r: 3.0, link_distance: 1.0, t1: 1.0, t2: 1.0 };
        let warnings = p.validate(RadiusBound::Conventional).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(p.validate(RadiusBound::Literal).is_err());
        let p = ConeParams { k: 1.0, r: 1.0, link_distance: 1.0, t1: 1.0, t2: 0.0 };
        assert!(p.validate(RadiusBound::Conventional).is_err());
    }

    #[test]
    fn angle_models() {
        let a: ConeAngle = "2/3 tau".parse().unwrap();
        assert_eq!(model_of_angle(&a), Some(CodimTwoModel { h: 3, k: 2 }));
        assert_eq!(local_holonomy_order(&a), Some(3));
        let b = ConeAngle::Radians { value: 2.0 * PI / 3.0 };
        assert_eq!(model_of_angle(&b), Some(CodimTwoModel { h: 3, k: 1 }));
        let c = ConeAngle::Radians { value: 2f64.sqrt() * PI };
        assert_eq!(model_of_angle(&c), None);
        assert_eq!(angle_of_model(CodimTwoModel { h: 1, k: 1 }), ConeAngle::turns(1, 1).unwrap());
        assert!(rational_conifold_verdict(&[]).rational);
        assert!(!rational_conifold_verdict(&[c]).rational);
    }
}
