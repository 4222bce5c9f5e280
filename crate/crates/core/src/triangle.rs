//! Triangle laws valid in every plane `{k1, k2}`.
//!
//! Sides `a, b, c` carry the distance characteristic `k1` and scale `r1`;
//! angles `α, γ` and the exterior angle `β'` carry `k2` and `r2`. The vertex
//! opposite `a` is `A`, and `β'` sits at `B`. The interior angle `β = π - β'`
//! only exists when `k2 = 1`.
//!
//! In a right quasi-triangle the leg `a` has the mixed characteristic `k1·k2`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtrig::{angle_from_cs, c_fn, inverse_s, nonneg_angle_from_t, s_fn, t_fn, Characteristic, ExtendedReal};
use crate::measure::{Measure, MeasureClass};
use crate::motion::{main_rotation, rotation_ij};
use crate::space::Specification;

const EPS: f64 = 1e-12;

/// The plane part of a specification.
#[derive(Debug, Clone, Copy)]
struct Plane {
    k1: Characteristic,
    k2: Characteristic,
    r1: f64,
    r2: f64,
}

impl Plane {
    fn of(spec: &Specification) -> Result<Plane> {
        if spec.dim() < 2 {
            return Err(Error::InvalidSpec(format!("triangles need a plane, got dimension {}", spec.dim())));
        }
        Ok(Plane {
            k1: spec.k(1),
            k2: spec.k(2),
            r1: spec.scale(1),
            r2: spec.scale(2),
        })
    }

    fn k12(&self) -> Characteristic {
        self.k1.times(self.k2)
    }

    fn c1(&self, x: f64) -> f64 {
        c_fn(x / self.r1, self.k1)
    }
    fn s1(&self, x: f64) -> f64 {
        s_fn(x / self.r1, self.k1)
    }
    fn c2(&self, x: f64) -> f64 {
        c_fn(x / self.r2, self.k2)
    }
    fn s2(&self, x: f64) -> f64 {
        s_fn(x / self.r2, self.k2)
    }

    fn side(&self, raw: f64) -> Measure {
        Measure::measurable(raw * self.r1, self.k1)
    }
    fn angle(&self, raw: f64) -> Measure {
        Measure::measurable(raw * self.r2, self.k2)
    }
}

/// All elements of a triangle given by two sides and the included angle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSolution {
    pub a: Measure,
    pub b: Measure,
    pub c: Measure,
    pub alpha: Measure,
    pub gamma: Measure,
    pub beta_ext: Measure,
    /// Interior angle at `B`; present only for an elliptic angle characteristic.
    pub beta_int: Option<Measure>,
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain("non-finite triangle input".into()))
    }
}

/// `a` from the first cosine law `C1(a) = C1(b)C1(c) + k1 S1(b)S1(c)C2(α)`.
///
/// The sign of `S1(a)` comes from its squared form, so small sides keep full
/// precision. With `k1 = 0` the `C` form is an identity and the tangent form
/// `a² = b² + c² − 2bc·C2(α)` is used.
pub fn cosine1_side(b: f64, c: f64, alpha: f64, spec: &Specification) -> Result<Measure> {
    check_finite(&[b, c, alpha])?;
    if b < 0.0 || c < 0.0 {
        return Err(Error::Domain("sides must be non-negative".into()));
    }
    let p = Plane::of(spec)?;
    let (k1, k2) = (p.k1.as_f64(), p.k2.as_f64());
    let (cb, sb, cc, sc) = (p.c1(b), p.s1(b), p.c1(c), p.s1(c));
    let (ca, sa) = (p.c2(alpha), p.s2(alpha));
    if p.k1.is_parabolic() {
        let (tb, tc) = (sb, sc);
        let num = tb * tb + tc * tc - 2.0 * tb * tc * ca;
        let den = (1.0 + k1 * tb * tc * ca).powi(2);
        let a2 = num / den;
        return Ok(squared_to_measure(a2, p.r1, p.k1, (tb * tb + tc * tc).max(1.0)));
    }
    let c1a = cb * cc + k1 * sb * sc * ca;
    let s1a2 = cb * cb * sc * sc + sb * sb * cc * cc - 2.0 * cb * cc * sb * sc * ca + k1 * k2 * sb * sb * sc * sc * sa * sa;
    match p.k1 {
        Characteristic::Elliptic if c1a.abs() > 1.0 + 1e-12 => {
            return Err(Error::Domain(format!("C1(a) = {c1a} outside [-1, 1]: no such triangle")));
        }
        Characteristic::Hyperbolic if c1a < 1.0 - 1e-12 => {
            return Ok(Measure::new(ExtendedReal::Undefined, p.k1, MeasureClass::Immeasurable));
        }
        _ => {}
    }
    let scale = 1.0 + (cb * sc).powi(2) + (sb * cc).powi(2);
    if s1a2 < -1e-12 * scale {
        return Ok(Measure::new(ExtendedReal::Undefined, p.k1, MeasureClass::Immeasurable));
    }
    let raw = angle_from_cs(c1a, s1a2.max(0.0).sqrt(), p.k1)?;
    Ok(p.side(raw))
}

/// Non-negative root of a squared parabolic measure; negative squares give a
/// generalized measure `√(-x²)`.
fn squared_to_measure(x2: f64, r: f64, k: Characteristic, scale: f64) -> Measure {
    if x2 >= -EPS * scale {
        Measure::measurable(x2.max(0.0).sqrt() * r, k)
    } else {
        Measure::new(ExtendedReal::Finite((-x2).sqrt() * r), k, MeasureClass::Generalized)
    }
}

/// `S1(side) / S2(angle)`, the common ratio of the sine law.
pub fn sine_ratio(side: f64, angle: f64, spec: &Specification) -> Result<f64> {
    check_finite(&[side, angle])?;
    let p = Plane::of(spec)?;
    let s = p.s2(angle);
    if s.abs() <= 1e-15 {
        return Err(Error::DegenerateAngle);
    }
    Ok(p.s1(side) / s)
}

/// `α` from the second cosine law `C2(α) = C2(β')C2(γ) + k2 S2(β')S2(γ)C1(a)`.
/// With `k2 = 0` the tangent form `α² = β'² + γ² − 2β'γ·C1(a)` is used.
pub fn cosine2_angle(beta_ext: f64, gamma: f64, a: f64, spec: &Specification) -> Result<Measure> {
    check_finite(&[beta_ext, gamma, a])?;
    let p = Plane::of(spec)?;
    let (k1, k2) = (p.k1.as_f64(), p.k2.as_f64());
    let (cb, sb, cg, sg) = (p.c2(beta_ext), p.s2(beta_ext), p.c2(gamma), p.s2(gamma));
    let (ca, sa) = (p.c1(a), p.s1(a));
    if p.k2.is_parabolic() {
        let (tb, tg) = (sb, sg);
        let num = tb * tb + tg * tg - 2.0 * tb * tg * ca;
        let den = (1.0 + k2 * tb * tg * ca).powi(2);
        return Ok(squared_to_measure(num / den, p.r2, p.k2, (tb * tb + tg * tg).max(1.0)));
    }
    let c2a = cb * cg + k2 * sb * sg * ca;
    let s2a2 = cb * cb * sg * sg + sb * sb * cg * cg - 2.0 * cb * sb * cg * sg * ca + k1 * k2 * sb * sb * sg * sg * sa * sa;
    match p.k2 {
        Characteristic::Elliptic if c2a.abs() > 1.0 + 1e-12 => {
            return Err(Error::Domain(format!("C2(α) = {c2a} outside [-1, 1]: no such triangle")));
        }
        Characteristic::Hyperbolic if c2a < 1.0 - 1e-12 => {
            return Ok(Measure::new(ExtendedReal::Undefined, p.k2, MeasureClass::Immeasurable));
        }
        _ => {}
    }
    let scale = 1.0 + (cb * sg).powi(2) + (sb * cg).powi(2);
    if s2a2 < -1e-12 * scale {
        return Ok(Measure::new(ExtendedReal::Undefined, p.k2, MeasureClass::Immeasurable));
    }
    let raw = angle_from_cs(c2a, s2a2.max(0.0).sqrt(), p.k2)?;
    Ok(p.angle(raw))
}

/// Solves a triangle from `b`, `c` and the included angle `α` by building it
/// with motions: `A` at the origin, `C = R1(b)A`, `B = R2(α)R1(c)A`.
///
/// `B' = R1(-b)B = [C1(a), -S1(a)C2(γ), S1(a)S2(γ)]` yields `a` and `γ`;
/// `C'' = R1(-c)R2(-α)C = [C1(a), S1(a)C2(β'), -S1(a)S2(β')]` yields `β'`.
pub fn solve_sas(b: f64, c: f64, alpha: f64, spec: &Specification) -> Result<TriangleSolution> {
    check_finite(&[b, c, alpha])?;
    if !(b > 0.0 && c > 0.0) {
        return Err(Error::Domain("SAS needs positive sides".into()));
    }
    let p = Plane::of(spec)?;
    let plane = spec.prefix(2)?;
    let origin = plane.origin();
    let r1 = |x: f64| main_rotation(1, x, &plane);
    let r2 = |x: f64| main_rotation(2, x, &plane);

    let vb = r1(-b)?.compose(&r2(alpha)?)?.compose(&r1(c)?)?.apply_vector(origin.coords())?;
    let vc = r1(-c)?.compose(&r2(-alpha)?)?.compose(&r1(b)?)?.apply_vector(origin.coords())?;

    let (k2, s1a) = (p.k2, side_sine(vb[1], vb[2], p.k2)?);
    let c1a = vb[0];
    let a = angle_from_cs(c1a, s1a, p.k1).map_err(|_| Error::Domain("vertex B is not connectable with C".into()))?;
    let gamma = angle_from_cs(-vb[1] / s1a, vb[2] / s1a, k2)
        .map_err(|_| Error::Domain("angle γ is not measurable".into()))?;
    let beta = angle_from_cs(vc[1] / s1a, -vc[2] / s1a, k2)
        .map_err(|_| Error::Domain("angle β' is not measurable".into()))?;
    if gamma < 0.0 || beta < 0.0 || a <= 0.0 {
        return Err(Error::Domain("the construction does not close into a measurable triangle".into()));
    }
    let beta_ext = p.angle(beta);
    let beta_int = (k2 == Characteristic::Elliptic).then(|| p.angle(PI - beta));
    Ok(TriangleSolution {
        a: p.side(a),
        b: Measure::measurable(b, p.k1),
        c: Measure::measurable(c, p.k1),
        alpha: Measure::measurable(alpha, k2),
        gamma: p.angle(gamma),
        beta_ext,
        beta_int,
    })
}

/// `S1(a)` from a pair `(-S1(a)C2, S1(a)S2)`. A non-elliptic angle needs `C2 > 0`,
/// which fixes the sign.
fn side_sine(u: f64, v: f64, k2: Characteristic) -> Result<f64> {
    let r2 = u * u + k2.as_f64() * v * v;
    let scale = u * u + v * v;
    if !(r2 > 1e-24 * scale.max(1e-300)) || r2 <= 0.0 {
        return Err(Error::Domain("degenerate triangle: side a has no measurable sine".into()));
    }
    let s = r2.sqrt();
    match k2 {
        Characteristic::Elliptic => Ok(s),
        _ if u < 0.0 => Ok(s),
        _ => Err(Error::Domain("vertex B lies outside the angle bundle at C".into())),
    }
}

/// Elements of a right quasi-triangle `ABC` with the right angle at `C`:
/// legs `a = BC` (characteristic `k1·k2`) and `b = CA`, hypotenuse `c = AB`,
/// angle `α` at `A` and exterior angle `β'` at `B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RightSolution {
    pub a: Measure,
    pub b: Measure,
    pub c: Measure,
    pub alpha: Measure,
    pub beta_ext: Measure,
}

/// Any two known elements of a right quasi-triangle.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RightInputs {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub alpha: Option<f64>,
    pub beta_ext: Option<f64>,
}

fn finite_t(x: f64, k: Characteristic) -> Result<f64> {
    match t_fn(x, k) {
        ExtendedReal::Finite(t) => Ok(t),
        _ => Err(Error::Solve(format!("T({x}) is infinite"))),
    }
}

fn checked(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Solve(format!("{what} is not determined")))
    }
}

fn from_t(t: f64, k: Characteristic, what: &str) -> Result<f64> {
    nonneg_angle_from_t(checked(t, what)?, k).map_err(|_| Error::Solve(format!("{what} is out of range")))
}

fn from_s(s: f64, k: Characteristic, what: &str) -> Result<f64> {
    inverse_s(checked(s, what)?, k)
        .map(f64::abs)
        .map_err(|_| Error::Solve(format!("{what} is out of range")))
}

fn from_t2(t2: f64, k: Characteristic, what: &str) -> Result<f64> {
    if t2 < -1e-12 {
        return Err(Error::Solve(format!("{what}: squared tangent {t2} is negative")));
    }
    from_t(t2.max(0.0).sqrt(), k, what)
}

/// Solves a right quasi-triangle from two of its elements.
///
/// Relations used (`T12, S12, C12` take characteristic `k1·k2`):
/// `T1(b) = T1(c)C2(α)`, `C1(c) = C12(a)C1(b)`, `S12(a) = S1(c)S2(α)`,
/// `T12(a) = S1(b)T2(α)`, `S1(b) = S1(c)C2(β')`, `T12(a) = T1(c)S2(β')`,
/// `S12(a) = T1(b)T2(β')`, `C2(α) = C12(a)C2(β')`, `T2(β') = C1(c)T2(α)`,
/// `S2(β') = C1(b)S2(α)`, and the cosine-free forms
/// `T1²(c) = k2T12²(a) + T1²(b) + k1k2T12²(a)T1²(b)` and
/// `T2²(α) = k1T12²(a) + T2²(β') + k1k2T12²(a)T2²(β')`.
pub fn right_relations(inputs: RightInputs, spec: &Specification) -> Result<RightSolution> {
    let p = Plane::of(spec)?;
    let known = [inputs.a, inputs.b, inputs.c, inputs.alpha, inputs.beta_ext];
    if known.iter().flatten().count() != 2 {
        return Err(Error::Solve("exactly two elements must be given".into()));
    }
    if known.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::Solve("known elements must be finite and non-negative".into()));
    }
    let (k1, k2, k12) = (p.k1, p.k2, p.k12());
    let (kf1, kf2) = (k1.as_f64(), k2.as_f64());
    // Raw (unscaled) values; the leg a uses r1 like the other sides.
    let raw = |v: Option<f64>, r: f64| v.map(|x| x / r);
    let a_in = raw(inputs.a, p.r1);
    let b_in = raw(inputs.b, p.r1);
    let c_in = raw(inputs.c, p.r1);
    let al_in = raw(inputs.alpha, p.r2);
    let be_in = raw(inputs.beta_ext, p.r2);

    let (c1, s1) = (|x| c_fn(x, k1), |x| s_fn(x, k1));
    let (c2, s2) = (|x| c_fn(x, k2), |x| s_fn(x, k2));
    let (c12, s12) = (|x| c_fn(x, k12), |x| s_fn(x, k12));

    // Reduce every input pair to the two legs.
    let (a, b) = match (a_in, b_in, c_in, al_in, be_in) {
        (Some(a), Some(b), None, None, None) => (a, b),
        (Some(a), None, Some(c), None, None) => {
            let (ta, tc) = (finite_t(a, k12)?, finite_t(c, k1)?);
            let tb2 = (tc * tc - kf2 * ta * ta) / (1.0 + kf1 * kf2 * ta * ta);
            (a, from_t2(tb2, k1, "b")?)
        }
        (Some(a), None, None, Some(al), None) => {
            let sb = finite_t(a, k12)? / finite_t(al, k2)?;
            (a, from_s(sb, k1, "b")?)
        }
        (Some(a), None, None, None, Some(be)) => {
            let tb = s12(a) / finite_t(be, k2)?;
            (a, from_t(tb, k1, "b")?)
        }
        (None, Some(b), Some(c), None, None) => {
            if k2.is_parabolic() {
                return Err(Error::Solve("legs are not determined by b and c when k2 = 0".into()));
            }
            let (tb, tc) = (finite_t(b, k1)?, finite_t(c, k1)?);
            let ta2 = (tc * tc - tb * tb) / (kf2 * (1.0 + kf1 * tb * tb));
            (from_t2(ta2, k12, "a")?, b)
        }
        (None, Some(b), None, Some(al), None) => {
            let ta = s1(b) * finite_t(al, k2)?;
            (from_t(ta, k12, "a")?, b)
        }
        (None, Some(b), None, None, Some(be)) => {
            let sa = finite_t(b, k1)? * finite_t(be, k2)?;
            (from_s(sa, k12, "a")?, b)
        }
        (None, None, Some(c), Some(al), None) => {
            let tb = finite_t(c, k1)? * c2(al);
            let b = from_t(tb, k1, "b")?;
            let a = angle_from_cs(c1(c) / c1(b), s1(c) * s2(al), k12).map_err(|e| Error::Solve(e.to_string()))?;
            (a.abs(), b)
        }
        (None, None, Some(c), None, Some(be)) => {
            let b = from_s(s1(c) * c2(be), k1, "b")?;
            let a = from_t(finite_t(c, k1)? * s2(be), k12, "a")?;
            (a, b)
        }
        (None, None, None, Some(al), Some(be)) => {
            if k1.is_parabolic() {
                return Err(Error::Solve("angles do not determine sides when k1 = 0".into()));
            }
            let (tal, tbe) = (finite_t(al, k2)?, finite_t(be, k2)?);
            let ta2 = (tal * tal - tbe * tbe) / (kf1 * (1.0 + kf2 * tbe * tbe));
            let a = from_t2(ta2, k12, "a")?;
            let b = from_t(s12(a) / tbe, k1, "b")?;
            (a, b)
        }
        _ => unreachable!("exactly two inputs"),
    };

    // Hypotenuse from the Pythagorean pair, then both angles from (C, S) pairs.
    let cc = c12(a) * c1(b);
    let sc2 = kf2 * (s12(a) * c1(b)).powi(2) + (c12(a) * s1(b)).powi(2) + kf1 * kf2 * (s12(a) * s1(b)).powi(2);
    if sc2 < -1e-12 {
        return Err(Error::Solve("hypotenuse is not measurable".into()));
    }
    let sc = sc2.max(0.0).sqrt();
    let c = angle_from_cs(cc, sc, k1).map_err(|e| Error::Solve(e.to_string()))?;
    if sc <= 1e-300 {
        return Err(Error::Solve("degenerate right triangle".into()));
    }
    let alpha = angle_from_cs(finite_t(b, k1)? / finite_t(c, k1)?, s12(a) / sc, k2).map_err(|e| Error::Solve(e.to_string()))?;
    let beta = angle_from_cs(s1(b) / sc, s12(a) * c1(b) / sc, k2).map_err(|e| Error::Solve(e.to_string()))?;

    let keep = |given: Option<f64>, computed: f64, r: f64| given.unwrap_or(computed * r);
    Ok(RightSolution {
        a: Measure::measurable(keep(inputs.a, a, p.r1), k12),
        b: Measure::measurable(keep(inputs.b, b, p.r1), k1),
        c: Measure::measurable(keep(inputs.c, c, p.r1), k1),
        alpha: Measure::measurable(keep(inputs.alpha, alpha, p.r2), k2),
        beta_ext: Measure::measurable(keep(inputs.beta_ext, beta, p.r2), k2),
    })
}

/// Residuals of every right quasi-triangle relation at the given elements.
/// Order: the ten relations listed on [`right_relations`], then the two cosine-free forms.
pub fn right_residuals(a: f64, b: f64, c: f64, alpha: f64, beta_ext: f64, spec: &Specification) -> Result<[f64; 12]> {
    let p = Plane::of(spec)?;
    let (k1, k2, k12) = (p.k1, p.k2, p.k12());
    let (kf1, kf2) = (k1.as_f64(), k2.as_f64());
    let (a, b, c, al, be) = (a / p.r1, b / p.r1, c / p.r1, alpha / p.r2, beta_ext / p.r2);
    let t = |x, k| t_fn(x, k).to_f64();
    let (c1, s1, t1) = (|x| c_fn(x, k1), |x| s_fn(x, k1), |x| t(x, k1));
    let (c2, s2, t2) = (|x| c_fn(x, k2), |x| s_fn(x, k2), |x| t(x, k2));
    let (c12, s12, t12) = (|x| c_fn(x, k12), |x| s_fn(x, k12), |x| t(x, k12));
    Ok([
        t1(b) - t1(c) * c2(al),
        c1(c) - c12(a) * c1(b),
        s12(a) - s1(c) * s2(al),
        t12(a) - s1(b) * t2(al),
        s1(b) - s1(c) * c2(be),
        t12(a) - t1(c) * s2(be),
        s12(a) - t1(b) * t2(be),
        c2(al) - c12(a) * c2(be),
        t2(be) - c1(c) * t2(al),
        s2(be) - c1(b) * s2(al),
        t1(c).powi(2) - (kf2 * t12(a).powi(2) + t1(b).powi(2) + kf1 * kf2 * (t12(a) * t1(b)).powi(2)),
        t2(al).powi(2) - (kf1 * t12(a).powi(2) + t2(be).powi(2) + kf1 * kf2 * (t12(a) * t2(be)).powi(2)),
    ])
}

/// Builds the right quasi-triangle as half of an isosceles triangle with
/// apex `B`, legs `c` and base angle `α`. `C` is the origin, `A = R1(b)C`.
pub fn construct_right(c: f64, alpha: f64, spec: &Specification) -> Result<RightSolution> {
    let p = Plane::of(spec)?;
    let plane = spec.prefix(2)?;
    let (k1, k2, k12) = (p.k1, p.k2, p.k12());
    let tb = finite_t(c / p.r1, k1)? * c_fn(alpha / p.r2, k2);
    let b = from_t(tb, k1, "b")? * p.r1;
    let origin = plane.origin();
    let bvec = main_rotation(1, -b, &plane)?
        .compose(&main_rotation(2, alpha, &plane)?)?
        .compose(&main_rotation(1, c, &plane)?)?
        .apply_vector(origin.coords())?;
    let scale = bvec.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    if bvec[1].abs() > 1e-9 * scale {
        return Err(Error::Solve("foot of the altitude is not at the origin".into()));
    }
    let a_raw = angle_from_cs(bvec[0], bvec[2], k12).map_err(|e| Error::Solve(e.to_string()))?;
    if a_raw < 0.0 {
        return Err(Error::Solve("leg a points away from B".into()));
    }
    let a = a_raw * p.r1;
    // Translate B back to the origin: A1 = [C1(c), S1(c)C2(β'), -S1(c)S2(β')].
    let avec = main_rotation(1, b, &plane)?.apply_vector(origin.coords())?;
    let a1 = rotation_ij(0, 2, -a_raw, &plane)?.apply_vector(&avec)?;
    let sc = s_fn(c / p.r1, k1);
    let beta = angle_from_cs(a1[1] / sc, -a1[2] / sc, k2).map_err(|e| Error::Solve(e.to_string()))?;
    Ok(RightSolution {
        a: Measure::measurable(a, k12),
        b: Measure::measurable(b, k1),
        c: Measure::measurable(c, k1),
        alpha: Measure::measurable(alpha, k2),
        beta_ext: Measure::measurable(beta * p.r2, k2),
    })
}

fn ordering_symbol<S: serde::Serializer>(o: &Ordering, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    })
}

/// Which of the side and angle inequalities hold, and whether they match the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    /// `b` against `a + c`.
    #[serde(serialize_with = "ordering_symbol")]
    pub b_vs_a_plus_c: Ordering,
    /// `a` against `|b − c|`.
    #[serde(serialize_with = "ordering_symbol")]
    pub a_vs_b_minus_c: Ordering,
    /// `β'` against `α + γ`.
    #[serde(serialize_with = "ordering_symbol")]
    pub beta_vs_alpha_plus_gamma: Ordering,
    /// `α` against `|β' − γ|`.
    #[serde(serialize_with = "ordering_symbol")]
    pub alpha_vs_beta_minus_gamma: Ordering,
    /// True when the side orderings match `k2` and the angle orderings match `k1`.
    pub consistent: bool,
}

fn approx_cmp(x: f64, y: f64, tol: f64) -> Ordering {
    if (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0) {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Side orderings are governed by `k2` (`b < a + c` for 1, `=` for 0, `>` for -1);
/// angle orderings by `k1` (`β' < α + γ` for 1, `=` for 0, `>` for -1).
pub fn triangle_inequality_class(sol: &TriangleSolution, spec: &Specification) -> Result<InequalityReport> {
    let p = Plane::of(spec)?;
    let get = |m: &Measure| m.finite().ok_or_else(|| Error::Domain("triangle element is not finite".into()));
    let (a, b, c) = (get(&sol.a)?, get(&sol.b)?, get(&sol.c)?);
    let (al, be, ga) = (get(&sol.alpha)?, get(&sol.beta_ext)?, get(&sol.gamma)?);
    let tol = 1e-9;
    let report_b = approx_cmp(b, a + c, tol);
    let report_a = approx_cmp(a, (b - c).abs(), tol);
    let report_be = approx_cmp(be, al + ga, tol);
    let report_al = approx_cmp(al, (be - ga).abs(), tol);
    let expect = |k: Characteristic| match k {
        Characteristic::Elliptic => Ordering::Less,
        Characteristic::Parabolic => Ordering::Equal,
        Characteristic::Hyperbolic => Ordering::Greater,
    };
    let consistent = report_b == expect(p.k2)
        && report_a == expect(p.k2).reverse()
        && report_be == expect(p.k1)
        && report_al == expect(p.k1).reverse();
    Ok(InequalityReport {
        b_vs_a_plus_c: report_b,
        a_vs_b_minus_c: report_a,
        beta_vs_alpha_plus_gamma: report_be,
        alpha_vs_beta_minus_gamma: report_al,
        consistent,
    })
}
