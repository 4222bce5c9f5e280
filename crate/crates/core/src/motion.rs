//! Motions of `B^n`: generalized orthogonal matrices, rotations `R_ij`,
//! inverses and decomposition into rotations plus a reflection.
//!
//! `R_ij(φ)` with `i < j` differs from the identity in four entries:
//! `(i,i) = (j,j) = C(φ)`, `(j,i) = S(φ)` and `(i,j) = -(K_j/K_i)·S(φ)`, where
//! `C` and `S` take the characteristic `K_j/K_i`. Since `i < j` that ratio is
//! always one of `-1, 0, 1`.

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtrig::{angle_from_cs, c_fn, s_fn, Characteristic};
use crate::space::{Point, Specification};

const ORTHO_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-11;

/// A generalized orthogonal `(n+1)×(n+1)` matrix acting on homogeneous coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Motion {
    m: DMatrix<f64>,
    spec: Specification,
}

/// One factor `R_ij(φ)` of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationStep {
    pub i: usize,
    pub j: usize,
    pub phi: f64,
    pub kind: Characteristic,
}

/// Diagonal `±1` matrix left over by a decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reflection {
    pub diagonal: Vec<i8>,
}

impl Reflection {
    pub fn is_identity(&self) -> bool {
        self.diagonal.iter().all(|&d| d == 1)
    }

    pub fn to_motion(&self, spec: &Specification) -> Result<Motion> {
        if self.diagonal.len() != spec.dim() + 1 {
            return Err(Error::Shape {
                expected: spec.dim() + 1,
                found: self.diagonal.len(),
            });
        }
        let d: Vec<f64> = self.diagonal.iter().map(|&v| f64::from(v)).collect();
        Ok(Motion {
            m: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)),
            spec: spec.clone(),
        })
    }
}

/// Scale applied to the argument of `R_ij`: adjacent pairs are main rotations
/// and use `r_j`; the others run unscaled.
fn step_scale(i: usize, j: usize, spec: &Specification) -> f64 {
    if j == i + 1 {
        spec.scale(j)
    } else {
        1.0
    }
}

impl RotationStep {
    pub fn motion(&self, spec: &Specification) -> Result<Motion> {
        rotation_ij(self.i, self.j, self.phi, spec)
    }
}

/// Sum of `ratio(p)·a_p·b_p` where `ratio` may be undefined. Undefined terms
/// must be negligible relative to the magnitude of the whole sum.
fn weighted_sum<F>(a: impl Iterator<Item = f64>, b: impl Iterator<Item = f64>, ratio: F, tol: f64) -> Option<f64>
where
    F: Fn(usize) -> Option<Characteristic>,
{
    let terms: Vec<(Option<Characteristic>, f64)> =
        a.zip(b).enumerate().map(|(p, (x, y))| (ratio(p), x * y)).collect();
    let scale = 1.0 + terms.iter().map(|(_, t)| t.abs()).sum::<f64>();
    let mut sum = 0.0;
    for (r, t) in terms {
        match r {
            Some(k) => sum += k.as_f64() * t,
            None if t.abs() > tol * scale => return None,
            None => {}
        }
    }
    Some(sum / scale)
}

fn check_square(m: &DMatrix<f64>, spec: &Specification) -> Result<()> {
    let size = spec.dim() + 1;
    if m.nrows() != size {
        return Err(Error::Shape {
            expected: size,
            found: m.nrows(),
        });
    }
    if m.ncols() != size {
        return Err(Error::Shape {
            expected: size,
            found: m.ncols(),
        });
    }
    Ok(())
}

/// Largest scaled residual of the column conditions `(1/K_min(i,j)) c_i ⊙ c_j = δ_ij`,
/// or `None` when a term with an undefined ratio is not negligible.
pub fn upper_orthogonality_defect(m: &DMatrix<f64>, spec: &Specification) -> Option<f64> {
    let size = m.ncols();
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in i..size {
            let sum = weighted_sum(
                m.column(i).iter().copied(),
                m.column(j).iter().copied(),
                |p| spec.ratio(i, p),
                ORTHO_TOL,
            )?;
            let scale = 1.0 + m.column(i).iter().zip(m.column(j).iter()).map(|(a, b)| (a * b).abs()).sum::<f64>();
            let target = if i == j { 1.0 / scale } else { 0.0 };
            worst = worst.max((sum - target).abs());
        }
    }
    Some(worst)
}

/// Largest scaled residual of the row conditions `K_max(i,j) Σ_p r_ip r_jp / K_p = δ_ij`.
pub fn lower_orthogonality_defect(m: &DMatrix<f64>, spec: &Specification) -> Option<f64> {
    let size = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in i..size {
            let sum = weighted_sum(
                m.row(i).iter().copied(),
                m.row(j).iter().copied(),
                |p| spec.ratio(p, j),
                ORTHO_TOL,
            )?;
            let scale = 1.0 + m.row(i).iter().zip(m.row(j).iter()).map(|(a, b)| (a * b).abs()).sum::<f64>();
            let target = if i == j { 1.0 / scale } else { 0.0 };
            worst = worst.max((sum - target).abs());
        }
    }
    Some(worst)
}

pub fn is_upper_orthogonal(m: &DMatrix<f64>, spec: &Specification, tol: f64) -> bool {
    upper_orthogonality_defect(m, spec).is_some_and(|d| d <= tol)
}

pub fn is_lower_orthogonal(m: &DMatrix<f64>, spec: &Specification, tol: f64) -> bool {
    lower_orthogonality_defect(m, spec).is_some_and(|d| d <= tol)
}

impl Motion {
    pub fn identity(spec: &Specification) -> Motion {
        let size = spec.dim() + 1;
        Motion {
            m: DMatrix::identity(size, size),
            spec: spec.clone(),
        }
    }

    /// Validates a matrix as a motion: both orthogonality conditions and `|det| = 1`.
    pub fn from_matrix(m: DMatrix<f64>, spec: &Specification) -> Result<Motion> {
        check_square(&m, spec)?;
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotOrthogonal("non-finite entry".into()));
        }
        match upper_orthogonality_defect(&m, spec) {
            None => return Err(Error::NotOrthogonal("column entry violates divisibility by K_j/K_i".into())),
            Some(d) if d > ORTHO_TOL => {
                return Err(Error::NotOrthogonal(format!("column residual {d:.3e}")));
            }
            Some(_) => {}
        }
        match lower_orthogonality_defect(&m, spec) {
            None => return Err(Error::NotOrthogonal("row entry violates divisibility".into())),
            Some(d) if d > ORTHO_TOL => {
                return Err(Error::NotOrthogonal(format!("row residual {d:.3e}")));
            }
            Some(_) => {}
        }
        let det = m.determinant();
        let hadamard: f64 = m.column_iter().map(|c| c.norm().max(1.0)).product();
        if (det.abs() - 1.0).abs() > ORTHO_TOL * hadamard {
            return Err(Error::NotOrthogonal(format!("determinant {det}")));
        }
        Ok(Motion { m, spec: spec.clone() })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.m
    }

    pub fn spec(&self) -> &Specification {
        &self.spec
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    pub fn apply_vector(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.m.ncols() {
            return Err(Error::Shape {
                expected: self.m.ncols(),
                found: x.len(),
            });
        }
        Ok((0..self.m.nrows())
            .map(|r| self.m.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        if !p.spec().same_space(&self.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(Point::from_raw(self.apply_vector(p.coords())?, &self.spec))
    }

    /// `self · other`: apply `other` first.
    pub fn compose(&self, other: &Motion) -> Result<Motion> {
        if !self.spec.same_space(&other.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(Motion {
            m: &self.m * &other.m,
            spec: self.spec.clone(),
        })
    }

    /// Weighted transpose when no characteristic vanishes; block elimination
    /// split at every zero characteristic otherwise.
    pub fn inverse(&self) -> Motion {
        Motion {
            m: block_inverse(&self.m, self.spec.characteristics()),
            spec: self.spec.clone(),
        }
    }

    /// Factors the motion as `E · R(step_0) · R(step_1) ⋯`.
    pub fn decompose(&self) -> Result<(Reflection, Vec<RotationStep>)> {
        decompose(self)
    }

    /// True when the reflection part of the decomposition is the identity.
    pub fn is_proper(&self) -> Result<bool> {
        Ok(self.decompose()?.0.is_identity())
    }

    pub fn max_abs_diff(&self, other: &Motion) -> f64 {
        (&self.m - &other.m).amax()
    }
}

impl fmt::Display for Motion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_matrix(&self.m))
    }
}

/// Inverse of a generalized orthogonal matrix whose local characteristics are `ks`
/// (`ks.len() + 1` equals the matrix size).
fn block_inverse(m: &DMatrix<f64>, ks: &[Characteristic]) -> DMatrix<f64> {
    let size = m.nrows();
    debug_assert_eq!(size, ks.len() + 1);
    match ks.iter().position(|k| k.is_parabolic()) {
        None => {
            let mut cum = Vec::with_capacity(size);
            cum.push(1.0);
            for k in ks {
                cum.push(cum.last().unwrap() * k.as_f64());
            }
            // x'_ji = (K_i / K_j) x_ij, and K_i / K_j = K_i K_j for K = ±1.
            DMatrix::from_fn(size, size, |j, i| cum[i] * cum[j] * m[(i, j)])
        }
        Some(z) => {
            // k_{z+1} = 0 splits after row/column z.
            let a_size = z + 1;
            let c_size = size - a_size;
            let a = m.view((0, 0), (a_size, a_size)).into_owned();
            let b = m.view((a_size, 0), (c_size, a_size)).into_owned();
            let c = m.view((a_size, a_size), (c_size, c_size)).into_owned();
            let a_inv = block_inverse(&a, &ks[..z]);
            let c_inv = block_inverse(&c, &ks[z + 1..]);
            let lower = -(&c_inv * b * &a_inv);
            let mut out = DMatrix::zeros(size, size);
            out.view_mut((0, 0), (a_size, a_size)).copy_from(&a_inv);
            out.view_mut((a_size, 0), (c_size, a_size)).copy_from(&lower);
            out.view_mut((a_size, a_size), (c_size, c_size)).copy_from(&c_inv);
            out
        }
    }
}

fn check_index(i: usize, spec: &Specification) -> Result<()> {
    if i > spec.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: spec.dim(),
        });
    }
    Ok(())
}

/// The main rotation acting on coordinates `i-1, i` with characteristic `k_i`.
pub fn main_rotation(i: usize, phi: f64, spec: &Specification) -> Result<Motion> {
    if i == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: spec.dim(),
        });
    }
    rotation_ij(i - 1, i, phi, spec)
}

/// `R_ij(φ)` for `0 <= i < j <= n`.
pub fn rotation_ij(i: usize, j: usize, phi: f64, spec: &Specification) -> Result<Motion> {
    check_index(j, spec)?;
    if i >= j {
        return Err(Error::DegenerateRotation(format!("R_{i}{j} needs i < j")));
    }
    if !phi.is_finite() {
        return Err(Error::Domain(format!("rotation angle {phi}")));
    }
    let kappa = spec.ratio(i, j).expect("K_j/K_i is defined for i < j");
    let x = phi / step_scale(i, j, spec);
    let (c, s) = (c_fn(x, kappa), s_fn(x, kappa));
    let mut m = Motion::identity(spec).m;
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(j, i)] = s;
    m[(i, j)] = -kappa.as_f64() * s;
    Ok(Motion { m, spec: spec.clone() })
}

/// `R_0i(φ)`: moves the origin along axis `i`.
pub fn translation(i: usize, phi: f64, spec: &Specification) -> Result<Motion> {
    rotation_ij(0, i, phi, spec)
}

/// Composite of `steps` random main rotations with angles in `[-1.5, 1.5]`.
pub fn random_motion<R: Rng + ?Sized>(spec: &Specification, steps: usize, rng: &mut R) -> Motion {
    let mut m = Motion::identity(spec);
    for _ in 0..steps {
        let i = rng.random_range(1..=spec.dim());
        let phi = rng.random_range(-1.5..1.5);
        let r = main_rotation(i, phi, spec).expect("index in range");
        m = m.compose(&r).expect("same spec");
    }
    m
}

/// Rebuilds `E · R(step_0) · R(step_1) ⋯`.
pub fn reconstruct(e: &Reflection, steps: &[RotationStep], spec: &Specification) -> Result<Motion> {
    let mut m = e.to_motion(spec)?;
    for step in steps {
        m = m.compose(&step.motion(spec)?)?;
    }
    Ok(m)
}

/// Right-multiplies the working matrix by `R_ij` given `C`, `S` and `κ`.
fn apply_right(x: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64, kappa: f64) {
    for r in 0..x.nrows() {
        let (xi, xj) = (x[(r, i)], x[(r, j)]);
        x[(r, i)] = xi * c + xj * s;
        x[(r, j)] = -kappa * xi * s + xj * c;
    }
}

fn decompose(motion: &Motion) -> Result<(Reflection, Vec<RotationStep>)> {
    let spec = &motion.spec;
    let mut x = motion.m.clone();
    let size = x.nrows();
    let mut eliminations: Vec<RotationStep> = Vec::new();

    let mut record = |x: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64, kind: Characteristic| -> Result<()> {
        apply_right(x, i, j, c, s, kind.as_f64());
        let raw = angle_from_cs(c, s, kind)?;
        eliminations.push(RotationStep {
            i,
            j,
            phi: raw * step_scale(i, j, spec),
            kind,
        });
        Ok(())
    };

    for n in (1..size).rev() {
        let category = |i: usize| spec.ratio(i, n).expect("i <= n");
        let row_scale = x.row(n).iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        let zero = ZERO_TOL * row_scale;

        for i in (0..n).filter(|&i| category(i) == Characteristic::Elliptic) {
            let (a, b) = (x[(n, i)], x[(n, n)]);
            if a.abs() <= zero {
                continue;
            }
            let r = a.hypot(b);
            record(&mut x, i, n, b / r, -a / r, Characteristic::Elliptic)?;
        }

        let hyperbolic: Vec<usize> = (0..n).filter(|&i| category(i) == Characteristic::Hyperbolic).collect();
        if let Some(&p) = hyperbolic.last() {
            for &i in &hyperbolic[..hyperbolic.len() - 1] {
                let (a, b) = (x[(n, i)], x[(n, p)]);
                if a.abs() <= zero {
                    continue;
                }
                let r = a.hypot(b);
                record(&mut x, i, p, b / r, -a / r, Characteristic::Elliptic)?;
            }
        }

        if x[(n, n)] < 0.0 {
            if let Some(i) = (0..n).find(|&i| category(i) == Characteristic::Elliptic) {
                record(&mut x, i, n, -1.0, 0.0, Characteristic::Elliptic)?;
            }
        }

        if let Some(&p) = hyperbolic.last() {
            let (a, b) = (x[(n, p)], x[(n, n)]);
            if a.abs() > zero {
                let d2 = b * b - a * a;
                if !(d2 > 0.0) {
                    return Err(Error::NotOrthogonal(format!(
                        "row {n}: hyperbolic pair ({b}, {a}) is not normalized"
                    )));
                }
                let d = d2.sqrt();
                record(&mut x, p, n, b.abs() / d, -a * b.signum() / d, Characteristic::Hyperbolic)?;
            }
        }

        let pivot = x[(n, n)];
        if pivot.abs() < 0.5 {
            return Err(Error::NotOrthogonal(format!("row {n}: pivot {pivot} after elimination")));
        }
        for q in (0..n).filter(|&q| category(q) == Characteristic::Parabolic) {
            let a = x[(n, q)];
            if a.abs() <= zero {
                continue;
            }
            record(&mut x, q, n, 1.0, -a / pivot, Characteristic::Parabolic)?;
        }

        let col_scale = x.column(n).iter().fold(1.0_f64, |a, v| a.max(v.abs()));
        for r in 0..n {
            if x[(n, r)].abs() > 1e-7 * row_scale {
                return Err(Error::NotOrthogonal(format!("row {n}: entry {r} survived elimination")));
            }
            if x[(r, n)].abs() > 1e-7 * col_scale {
                return Err(Error::NotOrthogonal(format!(
                    "column {n} above the pivot is not null after eliminating row {n}"
                )));
            }
            x[(n, r)] = 0.0;
            x[(r, n)] = 0.0;
        }
    }

    let mut diagonal = Vec::with_capacity(size);
    for d in 0..size {
        let v = x[(d, d)];
        if (v.abs() - 1.0).abs() > 1e-7 {
            return Err(Error::NotOrthogonal(format!("diagonal entry {d} is {v}, expected ±1")));
        }
        diagonal.push(if v > 0.0 { 1 } else { -1 });
    }
    // X·M_1⋯M_q = E gives X = E·M_q⁻¹⋯M_1⁻¹.
    let steps = eliminations
        .into_iter()
        .rev()
        .map(|s| RotationStep { phi: -s.phi, ..s })
        .collect();
    Ok((Reflection { diagonal }, steps))
}
