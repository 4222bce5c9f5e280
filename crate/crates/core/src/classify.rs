//! Specifications from quadric forms and named presets.
//!
//! A linear space (`k1 = 0`) with distance form `Σ s_j (y_j − x_j)²` has
//! `s_j = k_2⋯k_j`, so `k_j = s_j / s_{j−1}`. Once a sign is 0 every later
//! sign is 0 too and the later characteristics are not determined by the
//! form; they are set to 1.
//!
//! A non-linear signature lists the signs of the `⊙` weights `K_0..K_n`
//! directly, giving `k_j = K_j / K_{j−1}` with the same zero rule.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtrig::Characteristic;
use crate::space::Specification;

/// Diagonal signs of a quadric form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadricSignature {
    pub signs: Vec<i8>,
    /// True for the distance form of a linear space, false for `⊙` weights.
    pub linear: bool,
}

impl QuadricSignature {
    /// Validates the signs; a leading `-1` negates the whole form.
    pub fn new(signs: Vec<i8>, linear: bool) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::UnsupportedSignature("empty signature".into()));
        }
        if let Some(s) = signs.iter().find(|s| !(-1..=1).contains(*s)) {
            return Err(Error::UnsupportedSignature(format!("sign {s} not in {{-1,0,1}}")));
        }
        let signs = if signs[0] == -1 { signs.iter().map(|s| -s).collect() } else { signs };
        if signs[0] != 1 {
            return Err(Error::UnsupportedSignature("the leading sign must be nonzero".into()));
        }
        if !linear && signs.len() < 2 {
            return Err(Error::UnsupportedSignature("a weight signature needs K_0 and at least one more sign".into()));
        }
        Ok(QuadricSignature { signs, linear })
    }

    /// Parses `+,-,-,-`; entries may also be `1`, `-1`, `0`.
    pub fn parse(s: &str, linear: bool) -> Result<Self> {
        let signs = s
            .split(',')
            .map(|t| match t.trim() {
                "+" | "+1" | "1" => Ok(1),
                "-" | "-1" => Ok(-1),
                "0" => Ok(0),
                other => Err(Error::Parse(format!("bad sign `{other}`"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        QuadricSignature::new(signs, linear)
    }
}

impl fmt::Display for QuadricSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .signs
            .iter()
            .map(|s| match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for QuadricSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuadricSignature::parse(s, true)
    }
}

/// Ratios of consecutive signs; after the first zero the characteristics are 1.
fn ratios(signs: &[i8]) -> Result<Vec<Characteristic>> {
    let mut out = Vec::with_capacity(signs.len());
    let mut zero_seen = false;
    for w in signs.windows(2) {
        let (prev, cur) = (w[0], w[1]);
        if zero_seen {
            if cur != 0 {
                return Err(Error::UnsupportedSignature("a nonzero sign follows a zero".into()));
            }
            out.push(Characteristic::Elliptic);
        } else if cur == 0 {
            zero_seen = true;
            out.push(Characteristic::Parabolic);
        } else {
            out.push(Characteristic::from_sign(cur * prev)?);
        }
    }
    Ok(out)
}

pub fn spec_from_quadric(q: &QuadricSignature) -> Result<Specification> {
    let q = QuadricSignature::new(q.signs.clone(), q.linear)?;
    let mut k = Vec::with_capacity(q.signs.len());
    if q.linear {
        k.push(Characteristic::Parabolic);
    }
    k.extend(ratios(&q.signs)?);
    Specification::new(k)
}

/// Signs of the distance form `K_j/k_1 = k_2⋯k_j`, `j = 1..n`, for a linear space.
pub fn distance_form_signs(spec: &Specification) -> Vec<i8> {
    let mut acc = 1i8;
    let mut out = vec![1];
    for j in 2..=spec.dim() {
        acc *= spec.k(j).value();
        out.push(acc);
    }
    out
}

/// Signs of the `⊙` weights `K_0..K_n`.
pub fn weight_signs(spec: &Specification) -> Vec<i8> {
    spec.cumulative().iter().map(|k| k.value()).collect()
}

/// Default dimension used when a preset is asked for without one.
pub fn preset_default_dim(name: &str) -> Option<usize> {
    match name {
        "euclidean" | "elliptic" | "hyperbolic" | "galilean" | "cylinder-complete" => Some(2),
        "minkowski" => Some(4),
        _ => None,
    }
}

pub const PRESET_NAMES: &[&str] = &["euclidean", "elliptic", "hyperbolic", "minkowski", "galilean", "cylinder-complete"];

/// Named specifications of dimension `n` (the preset's default when `None`).
///
/// `galilean` is `{0,0,1,…}`: parabolic distance and time-space angle,
/// elliptic spatial rotations. `cylinder-complete` exists only for `n = 2`.
pub fn preset(name: &str, n: Option<usize>) -> Result<Specification> {
    let default = preset_default_dim(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    let n = n.unwrap_or(default);
    if n == 0 {
        return Err(Error::InvalidSpec("dimension must be positive".into()));
    }
    let tail = |head: &[i8]| -> Result<Specification> {
        if n < head.len() {
            return Err(Error::InvalidSpec(format!("preset `{name}` needs dimension at least {}", head.len())));
        }
        let mut signs = head.to_vec();
        signs.resize(n, 1);
        Specification::from_signs(&signs)
    };
    match name {
        "euclidean" => tail(&[0]),
        "elliptic" => tail(&[1]),
        "hyperbolic" => tail(&[-1]),
        "minkowski" => tail(&[0, -1]),
        "galilean" => tail(&[0, 0]),
        "cylinder-complete" if n == 2 => Specification::from_signs(&[1, 0]),
        "cylinder-complete" => Err(Error::InvalidSpec("preset `cylinder-complete` is two-dimensional".into())),
        _ => unreachable!("default dimension known"),
    }
}

/// Gaussian curvature `k1 / r1²`.
pub fn curvature(spec: &Specification) -> f64 {
    spec.k(1).as_f64() / spec.scale(1).powi(2)
}
