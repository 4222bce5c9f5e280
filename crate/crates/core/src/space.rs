//! Space specifications, the invariant products `⊙` and `⊗`, and points of `B^n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtrig::{inverse_c, Characteristic, ExtendedReal};
use crate::measure::{Measure, MeasureClass};

const UNIT_TOL: f64 = 1e-9;

/// The characteristics `k_1..k_n` of a space plus its scales `r_1..r_n`.
///
/// Index conventions: characteristics and scales are 1-based (`k(1)` is the
/// distance characteristic), cumulative products are 0-based with `K_0 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Specification {
    k: Vec<Characteristic>,
    scales: Vec<f64>,
    #[serde(skip)]
    cumulative: Vec<Characteristic>,
}

impl Specification {
    pub fn new(k: Vec<Characteristic>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidSpec("a specification needs at least one characteristic".into()));
        }
        let mut cumulative = Vec::with_capacity(k.len() + 1);
        cumulative.push(Characteristic::Elliptic);
        for &ki in &k {
            let last = *cumulative.last().unwrap();
            cumulative.push(last.times(ki));
        }
        let scales = vec![1.0; k.len()];
        Ok(Specification {
            k,
            scales,
            cumulative,
        })
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let k = signs
            .iter()
            .map(|&s| Characteristic::from_sign(s).map_err(|_| Error::InvalidSpec(format!("characteristic {s} not in {{-1,0,1}}"))))
            .collect::<Result<Vec<_>>>()?;
        Specification::new(k)
    }

    pub fn with_scales(mut self, scales: Vec<f64>) -> Result<Self> {
        if scales.len() != self.k.len() {
            return Err(Error::InvalidSpec(format!(
                "{} scales given for {} characteristics",
                scales.len(),
                self.k.len()
            )));
        }
        if let Some(r) = scales.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidSpec(format!("scale {r} is not a positive real")));
        }
        self.scales = scales;
        Ok(self)
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.k.len()
    }

    pub fn characteristics(&self) -> &[Characteristic] {
        &self.k
    }

    /// `k_i` for `1 <= i <= n`.
    pub fn k(&self, i: usize) -> Characteristic {
        self.k[i - 1]
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// `r_i` for `1 <= i <= n`.
    pub fn scale(&self, i: usize) -> f64 {
        self.scales[i - 1]
    }

    pub fn is_unscaled(&self) -> bool {
        self.scales.iter().all(|&r| r == 1.0)
    }

    /// `K_0..K_n`.
    pub fn cumulative(&self) -> &[Characteristic] {
        &self.cumulative
    }

    /// The symbolic ratio `K_to / K_from`, or `None` when it divides by zero.
    pub fn ratio(&self, from: usize, to: usize) -> Option<Characteristic> {
        let (lo, hi) = if from <= to { (from, to) } else { (to, from) };
        let product = self.k[lo..hi]
            .iter()
            .fold(Characteristic::Elliptic, |acc, &k| acc.times(k));
        if from > to && product.is_parabolic() {
            None
        } else {
            Some(product)
        }
    }

    /// [`Self::ratio`] with the undefined case encoded as a marker.
    pub fn k_ratio(&self, i: usize, j: usize) -> Result<ExtendedReal> {
        let n = self.dim();
        for index in [i, j] {
            if index > n {
                return Err(Error::IndexOutOfRange { index, max: n });
            }
        }
        Ok(match self.ratio(i, j) {
            Some(k) => ExtendedReal::Finite(k.as_f64()),
            None => ExtendedReal::Undefined,
        })
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() + 1 {
            return Err(Error::Shape {
                expected: self.dim() + 1,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `x ⊙ y = Σ K_i x_i y_i`.
    pub fn dot(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.dot_unchecked(x, y))
    }

    pub(crate) fn dot_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        self.cumulative
            .iter()
            .zip(x.iter().zip(y))
            .map(|(k, (a, b))| k.as_f64() * a * b)
            .sum()
    }

    /// `Σ_p (K_p / K_slot) u_p v_p`. Returns `None` when a term with an
    /// undefined ratio has `|u_p v_p| > tol`; such terms count as zero otherwise.
    pub(crate) fn dot_div(&self, u: &[f64], v: &[f64], slot: usize, tol: f64) -> Option<f64> {
        let mut sum = 0.0;
        for (p, (a, b)) in u.iter().zip(v).enumerate() {
            match self.ratio(slot, p) {
                Some(k) => sum += k.as_f64() * a * b,
                None if (a * b).abs() > tol => return None,
                None => {}
            }
        }
        Some(sum)
    }

    /// The radicand of `⊗`: `Σ_{i<j} w_ij (x_i y_j − x_j y_i)²` with
    /// `w_ij = K_i K_j / k_1` cancelled symbolically. May be negative.
    pub fn cross_square(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.dim();
        // tail[j] = Π_{p=2..j} k_p for j >= 1
        let mut tail = vec![1.0; n + 1];
        for j in 2..=n {
            tail[j] = tail[j - 1] * self.k(j).as_f64();
        }
        let k1 = self.k(1).as_f64();
        let mut sum = 0.0;
        for i in 0..=n {
            for j in (i + 1)..=n {
                let w = if i == 0 { tail[j] } else { k1 * tail[i] * tail[j] };
                if w != 0.0 {
                    let minor = x[i] * y[j] - x[j] * y[i];
                    sum += w * minor * minor;
                }
            }
        }
        Ok(sum)
    }

    /// `x ⊗ y`, the square root of [`Self::cross_square`].
    pub fn cross_norm(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let r = self.cross_square(x, y)?;
        if r < 0.0 {
            return Err(Error::Domain(format!(
                "negative ⊗ radicand {r}: the measure has a different characteristic"
            )));
        }
        Ok(r.sqrt())
    }

    /// The origin `[1, 0, …, 0]`.
    pub fn origin(&self) -> Point {
        let mut x = vec![0.0; self.dim() + 1];
        x[0] = 1.0;
        Point {
            x,
            spec: self.clone(),
        }
    }

    /// The specification `{k_1..k_m}`.
    pub fn prefix(&self, m: usize) -> Result<Specification> {
        if m == 0 || m > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: m,
                max: self.dim(),
            });
        }
        Specification::new(self.k[..m].to_vec())?.with_scales(self.scales[..m].to_vec())
    }

    /// Same characteristics and scales.
    pub fn same_space(&self, other: &Specification) -> bool {
        self.k == other.k && self.scales == other.scales
    }
}

/// `K_0..K_n` of a specification.
pub fn cumulative(spec: &Specification) -> Vec<Characteristic> {
    spec.cumulative().to_vec()
}

/// The symbolic ratio `K_j / K_i`.
pub fn k_ratio(i: usize, j: usize, spec: &Specification) -> Result<ExtendedReal> {
    spec.k_ratio(i, j)
}

pub fn dot(x: &[f64], y: &[f64], spec: &Specification) -> Result<f64> {
    spec.dot(x, y)
}

pub fn cross_norm(x: &[f64], y: &[f64], spec: &Specification) -> Result<f64> {
    spec.cross_norm(x, y)
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        f.write_str(&ks.join(","))?;
        if !self.is_unscaled() {
            let rs: Vec<String> = self.scales.iter().map(|r| r.to_string()).collect();
            write!(f, ";r={}", rs.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Specification {
    type Err = Error;

    /// Parses `-1,1,1` or `-1,1,1;r=2,1,1`. Braces around the list are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let (ks, rs) = match s.split_once(';') {
            Some((ks, rs)) => (ks, Some(rs)),
            None => (s, None),
        };
        let ks = ks.trim().trim_start_matches('{').trim_end_matches('}');
        let signs = ks
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i8>()
                    .map_err(|_| Error::InvalidSpec(format!("bad characteristic `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        let spec = Specification::from_signs(&signs)?;
        match rs {
            None => Ok(spec),
            Some(rs) => {
                let rs = rs
                    .trim()
                    .strip_prefix("r=")
                    .ok_or_else(|| Error::InvalidSpec(format!("expected `r=` scales, got `{rs}`")))?;
                let scales = rs
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidSpec(format!("bad scale `{}`", t.trim())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                spec.with_scales(scales)
            }
        }
    }
}

/// A point of `B^n`: homogeneous coordinates with `x ⊙ x = 1`.
///
/// `x` and `-x` are the same point; the stored representative has its first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Point {
    x: Vec<f64>,
    #[serde(skip)]
    spec: Specification,
}

fn canonical_sign(x: &mut [f64]) {
    if let Some(first) = x.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

impl Point {
    /// Wraps coordinates already on `B^n` (within `1e-9`).
    pub fn new(mut x: Vec<f64>, spec: &Specification) -> Result<Self> {
        let norm = spec.dot(&x, &x)?;
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain(format!("x⊙x = {norm}, point is not on the unit sphere")));
        }
        canonical_sign(&mut x);
        Ok(Point {
            x,
            spec: spec.clone(),
        })
    }

    /// Wraps coordinates known to lie on `B^n`, applying only the sign convention.
    pub(crate) fn from_raw(mut x: Vec<f64>, spec: &Specification) -> Self {
        canonical_sign(&mut x);
        Point {
            x,
            spec: spec.clone(),
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn spec(&self) -> &Specification {
        &self.spec
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.x
    }
}

/// Parses the colon-separated coordinate form `1:0:0`.
pub fn parse_coords(s: &str) -> Result<Vec<f64>> {
    s.split(':')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coordinate `{}`", t.trim())))
        })
        .collect()
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.x.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(":"))
    }
}

/// Scales `v` onto `B^n` and applies the sign convention.
pub fn normalize_point(v: &[f64], spec: &Specification) -> Result<Point> {
    let norm = spec.dot(v, v)?;
    let scale = v.iter().map(|a| a * a).sum::<f64>();
    if !(norm > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::ImproperVector);
    }
    let inv = norm.sqrt().recip();
    let mut x: Vec<f64> = v.iter().map(|a| a * inv).collect();
    canonical_sign(&mut x);
    Ok(Point {
        x,
        spec: spec.clone(),
    })
}

/// How two points relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Measurable,
    Limit,
    Generalized,
    Coincident,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Measurable => "measurable",
            PairClass::Limit => "limit",
            PairClass::Generalized => "generalized",
            PairClass::Coincident => "coincident",
        })
    }
}

/// Classifies a point pair and returns the distance in native measure (scaled by `r_1`).
///
/// The hyperbolic branch works with `|X⊙Y|` because `X` and `-X` are one point.
pub fn classify_pair(x: &Point, y: &Point) -> Result<(PairClass, Measure)> {
    if !x.spec.same_space(&y.spec) {
        return Err(Error::SpecMismatch);
    }
    let spec = &x.spec;
    let k1 = spec.k(1);
    let r1 = spec.scale(1);
    let coincident = x.x.iter().zip(&y.x).all(|(a, b)| (a - b).abs() <= 1e-12);
    if coincident {
        return Ok((PairClass::Coincident, Measure::measurable(0.0, k1)));
    }
    let w = spec.dot_unchecked(&x.x, &y.x);
    match k1 {
        Characteristic::Elliptic => {
            let d = inverse_c(w.clamp(-1.0, 1.0), k1)?;
            Ok((PairClass::Measurable, Measure::measurable(r1 * d, k1)))
        }
        Characteristic::Parabolic => {
            let rad = spec.cross_square(&x.x, &y.x)?;
            let mag = x.x.iter().chain(&y.x).map(|v| v * v).sum::<f64>();
            if rad.abs() <= 1e-24 * mag.max(1.0) * mag.max(1.0) {
                Ok((
                    PairClass::Limit,
                    Measure::new(ExtendedReal::Finite(0.0), k1, MeasureClass::Limit),
                ))
            } else if rad > 0.0 {
                Ok((PairClass::Measurable, Measure::measurable(r1 * rad.sqrt(), k1)))
            } else {
                Ok((
                    PairClass::Generalized,
                    Measure::new(
                        ExtendedReal::Finite(r1 * (-rad).sqrt()),
                        k1,
                        MeasureClass::Generalized,
                    ),
                ))
            }
        }
        Characteristic::Hyperbolic => {
            let aw = w.abs();
            if (aw - 1.0).abs() <= 1e-12 * aw.max(1.0) {
                Ok((
                    PairClass::Limit,
                    Measure::new(ExtendedReal::Finite(0.0), k1, MeasureClass::Limit),
                ))
            } else if aw > 1.0 {
                let d = inverse_c(aw, k1)?;
                Ok((PairClass::Measurable, Measure::measurable(r1 * d, k1)))
            } else {
                let d = inverse_c(aw, Characteristic::Elliptic)?;
                Ok((
                    PairClass::Generalized,
                    Measure::new(
                        ExtendedReal::Finite(r1 * d),
                        Characteristic::Elliptic,
                        MeasureClass::Generalized,
                    ),
                ))
            }
        }
    }
}
