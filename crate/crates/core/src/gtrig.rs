//! Generalized trigonometric functions `C`, `S` and `T`.
//!
//! Each function is parameterized by a [`Characteristic`] `k`:
//!
//! | k  | C(x)    | S(x)    | T(x)    |
//! |----|---------|---------|---------|
//! | 1  | cos x   | sin x   | tan x   |
//! | 0  | 1       | x       | x       |
//! | -1 | cosh x  | sinh x  | tanh x  |
//!
//! All three satisfy `C² + k·S² = 1` and the rotation built from them,
//! `[[C, -k·S], [S, C]]`, is additive in its argument.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};

/// Kind of a rotation or measure: elliptic (1), parabolic (0) or hyperbolic (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Characteristic {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl Characteristic {
    pub const ALL: [Characteristic; 3] = [
        Characteristic::Elliptic,
        Characteristic::Parabolic,
        Characteristic::Hyperbolic,
    ];

    pub fn from_sign(value: i8) -> Result<Self> {
        match value {
            1 => Ok(Characteristic::Elliptic),
            0 => Ok(Characteristic::Parabolic),
            -1 => Ok(Characteristic::Hyperbolic),
            other => Err(Error::InvalidSpec(format!(
                "characteristic must be -1, 0 or 1, got {other}"
            ))),
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Characteristic::Elliptic => 1,
            Characteristic::Parabolic => 0,
            Characteristic::Hyperbolic => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    /// Characteristic of a product of two measures' characteristics.
    pub fn times(self, other: Characteristic) -> Characteristic {
        // Product of two values in {-1, 0, 1} stays in the set.
        Characteristic::from_sign(self.value() * other.value()).unwrap()
    }

    pub fn is_parabolic(self) -> bool {
        self == Characteristic::Parabolic
    }
}

impl From<Characteristic> for i8 {
    fn from(k: Characteristic) -> i8 {
        k.value()
    }
}

impl TryFrom<i8> for Characteristic {
    type Error = Error;

    fn try_from(value: i8) -> Result<Self> {
        Characteristic::from_sign(value)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A real number or one of the symbolic outcomes of a measure computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
    NegInfinity,
    Undefined,
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::PosInfinity | ExtendedReal::NegInfinity)
    }

    /// Collapses to an `f64`, mapping the markers to IEEE infinities and NaN.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::PosInfinity => f64::INFINITY,
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Undefined => f64::NAN,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        if v.is_nan() {
            ExtendedReal::Undefined
        } else if v == f64::INFINITY {
            ExtendedReal::PosInfinity
        } else if v == f64::NEG_INFINITY {
            ExtendedReal::NegInfinity
        } else {
            ExtendedReal::Finite(v)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => f.write_str("inf"),
            ExtendedReal::NegInfinity => f.write_str("-inf"),
            ExtendedReal::Undefined => f.write_str("undefined"),
        }
    }
}

/// Generalized cosine.
pub fn c_fn(x: f64, k: Characteristic) -> f64 {
    match k {
        Characteristic::Elliptic => x.cos(),
        Characteristic::Parabolic => 1.0,
        Characteristic::Hyperbolic => dd::cosh(x),
    }
}

/// Generalized sine.
pub fn s_fn(x: f64, k: Characteristic) -> f64 {
    match k {
        Characteristic::Elliptic => x.sin(),
        Characteristic::Parabolic => x,
        Characteristic::Hyperbolic => dd::sinh(x),
    }
}

/// Generalized tangent `S/C`. Poles of the elliptic branch come back as signed infinities.
pub fn t_fn(x: f64, k: Characteristic) -> ExtendedReal {
    match k {
        Characteristic::Elliptic => {
            let (s, c) = x.sin_cos();
            // cos never hits an exact zero in binary64; treat anything within
            // rounding of the argument as the pole.
            if c.abs() <= f64::EPSILON * x.abs().max(1.0) {
                if (s >= 0.0) == c.is_sign_positive() {
                    ExtendedReal::PosInfinity
                } else {
                    ExtendedReal::NegInfinity
                }
            } else {
                ExtendedReal::Finite(s / c)
            }
        }
        Characteristic::Parabolic => ExtendedReal::Finite(x),
        Characteristic::Hyperbolic => ExtendedReal::Finite(x.tanh()),
    }
}

/// Principal inverse of [`c_fn`]: `[0, π]` for elliptic, `[0, ∞)` for hyperbolic.
pub fn inverse_c(v: f64, k: Characteristic) -> Result<f64> {
    match k {
        Characteristic::Parabolic => Err(Error::NotInvertible),
        Characteristic::Elliptic => {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("elliptic C^-1 needs |v| <= 1, got {v}")));
            }
            Ok(v.acos())
        }
        Characteristic::Hyperbolic => {
            if !(v >= 1.0) {
                return Err(Error::Domain(format!("hyperbolic C^-1 needs v >= 1, got {v}")));
            }
            Ok(v.acosh())
        }
    }
}

/// Principal inverse of [`s_fn`].
pub fn inverse_s(v: f64, k: Characteristic) -> Result<f64> {
    if !v.is_finite() {
        return Err(Error::Domain(format!("S^-1 of non-finite value {v}")));
    }
    match k {
        Characteristic::Elliptic => {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("elliptic S^-1 needs |v| <= 1, got {v}")));
            }
            Ok(v.asin())
        }
        Characteristic::Parabolic => Ok(v),
        Characteristic::Hyperbolic => Ok(v.asinh()),
    }
}

/// Principal inverse of [`t_fn`]. The elliptic branch accepts the pole markers.
pub fn inverse_t(v: ExtendedReal, k: Characteristic) -> Result<f64> {
    match (k, v) {
        (_, ExtendedReal::Undefined) => Err(Error::Domain("T^-1 of undefined value".into())),
        (Characteristic::Elliptic, ExtendedReal::PosInfinity) => Ok(FRAC_PI_2),
        (Characteristic::Elliptic, ExtendedReal::NegInfinity) => Ok(-FRAC_PI_2),
        (_, ExtendedReal::PosInfinity | ExtendedReal::NegInfinity) => {
            Err(Error::Domain(format!("T^-1 of infinity is undefined for k = {k}")))
        }
        (Characteristic::Elliptic, ExtendedReal::Finite(t)) => Ok(t.atan()),
        (Characteristic::Parabolic, ExtendedReal::Finite(t)) => Ok(t),
        (Characteristic::Hyperbolic, ExtendedReal::Finite(t)) => {
            if !(t.abs() < 1.0) {
                return Err(Error::Domain(format!("hyperbolic T^-1 needs |v| < 1, got {t}")));
            }
            Ok(t.atanh())
        }
    }
}

fn check_scale(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("scale must be a positive real, got {r}")))
    }
}

/// `C(x / r)`.
pub fn scaled_c_fn(x: f64, k: Characteristic, r: f64) -> Result<f64> {
    check_scale(r)?;
    Ok(c_fn(x / r, k))
}

/// `S(x / r)`.
pub fn scaled_s_fn(x: f64, k: Characteristic, r: f64) -> Result<f64> {
    check_scale(r)?;
    Ok(s_fn(x / r, k))
}

/// `T(x / r)`.
pub fn scaled_t_fn(x: f64, k: Characteristic, r: f64) -> Result<ExtendedReal> {
    check_scale(r)?;
    Ok(t_fn(x / r, k))
}

/// Recovers an angle from a consistent `(C, S)` pair.
///
/// Elliptic angles land in `(-π, π]`. Hyperbolic pairs must have `C > 0`.
pub fn angle_from_cs(c: f64, s: f64, k: Characteristic) -> Result<f64> {
    match k {
        Characteristic::Elliptic => Ok(s.atan2(c)),
        Characteristic::Parabolic => Ok(s),
        Characteristic::Hyperbolic => {
            if c <= 0.0 {
                return Err(Error::Domain(format!(
                    "hyperbolic pair with non-positive C = {c}"
                )));
            }
            Ok(s.asinh())
        }
    }
}

/// Non-negative angle from its `T` value, using the `[0, π)` branch when elliptic.
pub(crate) fn nonneg_angle_from_t(t: f64, k: Characteristic) -> Result<f64> {
    match k {
        Characteristic::Elliptic if t < 0.0 => Ok(PI + t.atan()),
        _ => inverse_t(ExtendedReal::Finite(t), k),
    }
}

/// The 2×2 generalized rotation `[[C, -k·S], [S, C]]`.
pub fn rotation2(phi: f64, k: Characteristic) -> [[f64; 2]; 2] {
    let c = c_fn(phi, k);
    let s = s_fn(phi, k);
    [[c, -k.as_f64() * s], [s, c]]
}
