//! Coordinate and state matrices, lineals, projections, canonical bases,
//! measures between lineals and figure volumes.
//!
//! Every lineal column carries an ambient slot index: a lineal taken from
//! columns `i_0 < … < i_m` of a motion weighs column `p` with `K_{i_p}`.
//! Planes through the first columns have slots `0..=m`.
//!
//! Symbolic quotients `(u ⊙ v)/K_s` are evaluated term by term with
//! `K_p/K_s`; a term whose ratio divides by zero must have a negligible
//! product and then counts as zero.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gtrig::{Characteristic, ExtendedReal};
use crate::measure::{Measure, MeasureClass};
use crate::motion::Motion;
use crate::space::Specification;

const ORTHO_TOL: f64 = 1e-9;
/// Squared norms at or below this fraction of the input's squared norm are null.
const NULL_TOL: f64 = 1e-18;
const CLASS_TOL: f64 = 1e-9;
const CHUNK: usize = 1 << 15;

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

/// `(u ⊙ v)/K_slot`, or `None` when a term with an undefined ratio survives.
fn sym_dot_div(spec: &Specification, u: &[f64], v: &[f64], slot: usize) -> Option<f64> {
    let tol = ORTHO_TOL * (max_abs(u) * max_abs(v)).max(f64::MIN_POSITIVE);
    spec.dot_div(u, v, slot, tol)
}

/// Vectors as the columns of an `(n+1)×(m+1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMatrix {
    v: DMatrix<f64>,
    spec: Specification,
}

impl CoordinateMatrix {
    pub fn new(v: DMatrix<f64>, spec: &Specification) -> Result<Self> {
        let rows = spec.dim() + 1;
        if v.nrows() != rows {
            return Err(Error::Shape {
                expected: rows,
                found: v.nrows(),
            });
        }
        if v.ncols() == 0 || v.ncols() > rows {
            return Err(Error::Shape {
                expected: rows,
                found: v.ncols(),
            });
        }
        if v.iter().any(|a| !a.is_finite()) {
            return Err(Error::NotABasis("non-finite coordinate".into()));
        }
        if let Some(i) = (0..v.ncols()).find(|&i| v.column(i).iter().all(|a| *a == 0.0)) {
            return Err(Error::NotABasis(format!("column {i} is zero")));
        }
        Ok(CoordinateMatrix { v, spec: spec.clone() })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.v
    }

    pub fn spec(&self) -> &Specification {
        &self.spec
    }

    pub fn ncols(&self) -> usize {
        self.v.ncols()
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.v.column(i).iter().copied().collect()
    }

    fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.ncols()).map(|i| self.column(i)).collect()
    }
}

/// `m_ij = (v_i ⊙ v_j)/K_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix {
    m: DMatrix<f64>,
}

impl StateMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }
}

fn state_with_slots(cols: &[Vec<f64>], slots: &[usize], spec: &Specification) -> Result<DMatrix<f64>> {
    let size = cols.len();
    let mut m = DMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            m[(i, j)] = sym_dot_div(spec, &cols[i], &cols[j], slots[i]).ok_or_else(|| {
                Error::NotABasis(format!("entry ({i},{j}) divides a nonzero product by K_{} = 0", slots[i]))
            })?;
        }
    }
    Ok(m)
}

/// State matrix of the columns, column `i` weighted by `K_i`.
pub fn state_matrix(vectors: &CoordinateMatrix) -> Result<StateMatrix> {
    let slots: Vec<usize> = (0..vectors.ncols()).collect();
    Ok(StateMatrix {
        m: state_with_slots(&vectors.columns(), &slots, &vectors.spec)?,
    })
}

fn root_of_det(det: f64, cols: &[Vec<f64>]) -> Result<f64> {
    let scale = cols.iter().map(|c| norm2(c)).product::<f64>().max(1.0);
    if det < -1e-12 * scale {
        return Err(Error::NotABasis(format!("state determinant {det} is negative")));
    }
    Ok(det.max(0.0).sqrt())
}

/// `√det M`: the volume of the parallelepiped on the columns.
pub fn parallelepiped_volume(vectors: &CoordinateMatrix) -> Result<f64> {
    let det = state_matrix(vectors)?.determinant();
    root_of_det(det, &vectors.columns())
}

/// Coefficients `a` of the projection `Σ a_i l_i` of `v`: solves `M a = b` with
/// `M` the state matrix of the `l_i` and `b_i = (v ⊙ l_i)/K_{s_i}`. For an
/// orthonormal family `M` is unit lower triangular. An undefined `b_i` is set to 0.
fn projection_coefficients(v: &[f64], cols: &[Vec<f64>], slots: &[usize], spec: &Specification) -> Result<Vec<f64>> {
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let m = state_with_slots(cols, slots, spec)?;
    let b = nalgebra::DVector::from_iterator(
        cols.len(),
        cols.iter()
            .zip(slots)
            .map(|(l, &s)| sym_dot_div(spec, v, l, s).unwrap_or(0.0)),
    );
    let a = m
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::DegenerateLineal("singular state matrix".into()))?;
    Ok(a.iter().copied().collect())
}

fn combine(cols: &[Vec<f64>], coeffs: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (c, a) in cols.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(c) {
            *o += a * x;
        }
    }
    out
}

fn project_onto(v: &[f64], cols: &[Vec<f64>], slots: &[usize], spec: &Specification) -> Result<Vec<f64>> {
    let a = projection_coefficients(v, cols, slots, spec)?;
    Ok(combine(cols, &a, v.len()))
}

/// Orthonormalizes candidates one at a time: remove the projection on the
/// accepted vectors, then take the first free slot `s` (ascending) with
/// `(v ⊙ v)/K_s > 0` and normalize. Stops after `target` vectors.
fn slot_search(
    candidates: impl IntoIterator<Item = Vec<f64>>,
    free_slots: &[usize],
    target: usize,
    spec: &Specification,
) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut accepted: Vec<(usize, Vec<f64>)> = Vec::new();
    for cand in candidates {
        if accepted.len() == target {
            break;
        }
        let scale = norm2(&cand);
        if scale == 0.0 {
            continue;
        }
        let (slots, cols): (Vec<usize>, Vec<Vec<f64>>) = accepted.iter().cloned().unzip();
        let proj = project_onto(&cand, &cols, &slots, spec)?;
        let rest: Vec<f64> = cand.iter().zip(&proj).map(|(a, b)| a - b).collect();
        if norm2(&rest) <= NULL_TOL * scale {
            continue;
        }
        let slot = free_slots
            .iter()
            .copied()
            .filter(|s| !slots.contains(s))
            .find_map(|s| match sym_dot_div(spec, &rest, &rest, s) {
                Some(r2) if r2 > NULL_TOL * scale => Some((s, r2)),
                _ => None,
            });
        if let Some((s, r2)) = slot {
            let r = r2.sqrt();
            accepted.push((s, rest.iter().map(|a| a / r).collect()));
        }
    }
    Ok(accepted)
}

/// An `m`-dimensional lineal: `m+1` upper-orthonormal columns with slot indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Lineal {
    basis: CoordinateMatrix,
    slots: Vec<usize>,
    column_indices: Option<Vec<usize>>,
    derived: Vec<Characteristic>,
    k0: Characteristic,
}

fn check_slots(slots: &[usize], n: usize) -> Result<()> {
    if let Some(&s) = slots.iter().find(|&&s| s > n) {
        return Err(Error::IndexOutOfRange { index: s, max: n });
    }
    if slots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DegenerateLineal("column indices must be strictly increasing".into()));
    }
    Ok(())
}

impl Lineal {
    /// Wraps an upper-orthonormal basis. Without `slots` the columns take `0..=m`.
    pub fn new(basis: DMatrix<f64>, slots: Option<Vec<usize>>, spec: &Specification) -> Result<Lineal> {
        let basis = CoordinateMatrix::new(basis, spec)?;
        let slots = slots.unwrap_or_else(|| (0..basis.ncols()).collect());
        if slots.len() != basis.ncols() {
            return Err(Error::Shape {
                expected: basis.ncols(),
                found: slots.len(),
            });
        }
        check_slots(&slots, spec.dim())?;
        let lineal = Lineal::assemble(basis, slots, None);
        let defect = lineal.orthonormality_defect()?;
        if defect > ORTHO_TOL {
            return Err(Error::DegenerateLineal(format!("basis is not upper-orthonormal (residual {defect:.3e})")));
        }
        Ok(lineal)
    }

    /// Orthonormalizes an arbitrary spanning set, searching slots over the whole space.
    pub fn from_span(vectors: DMatrix<f64>, spec: &Specification) -> Result<Lineal> {
        let cm = CoordinateMatrix::new(vectors, spec)?;
        let all: Vec<usize> = (0..=spec.dim()).collect();
        let found = slot_search(cm.columns(), &all, cm.ncols(), spec)?;
        if found.len() < cm.ncols() {
            return Err(Error::DegenerateLineal(format!(
                "only {} of {} vectors could be normalized",
                found.len(),
                cm.ncols()
            )));
        }
        Lineal::from_slotted(found, spec, None)
    }

    fn from_slotted(mut found: Vec<(usize, Vec<f64>)>, spec: &Specification, column_indices: Option<Vec<usize>>) -> Result<Lineal> {
        found.sort_by_key(|(s, _)| *s);
        let rows = spec.dim() + 1;
        let slots: Vec<usize> = found.iter().map(|(s, _)| *s).collect();
        let m = DMatrix::from_iterator(rows, found.len(), found.into_iter().flat_map(|(_, c)| c));
        Ok(Lineal::assemble(CoordinateMatrix::new(m, spec)?, slots, column_indices))
    }

    fn assemble(basis: CoordinateMatrix, slots: Vec<usize>, column_indices: Option<Vec<usize>>) -> Lineal {
        let spec = &basis.spec;
        let k0 = spec.cumulative()[slots[0]];
        let derived = slots
            .windows(2)
            .map(|w| spec.ratio(w[0], w[1]).expect("ascending ratios are defined"))
            .collect();
        Lineal {
            basis,
            slots,
            column_indices,
            derived,
            k0,
        }
    }

    fn orthonormality_defect(&self) -> Result<f64> {
        let cols = self.basis.columns();
        let mut worst: f64 = 0.0;
        for a in 0..cols.len() {
            for b in a..cols.len() {
                let v = sym_dot_div(&self.basis.spec, &cols[a], &cols[b], self.slots[a])
                    .ok_or_else(|| Error::DegenerateLineal("column violates divisibility by its slot".into()))?;
                let scale = 1.0 + cols[a].iter().zip(&cols[b]).map(|(x, y)| (x * y).abs()).sum::<f64>();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs() / scale);
            }
        }
        Ok(worst)
    }

    pub fn basis(&self) -> &CoordinateMatrix {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.basis.v
    }

    pub fn spec(&self) -> &Specification {
        &self.basis.spec
    }

    /// Ambient slot of each column.
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn column_indices(&self) -> Option<&[usize]> {
        self.column_indices.as_deref()
    }

    /// Dimension `m` (one less than the number of columns).
    pub fn dim(&self) -> usize {
        self.slots.len() - 1
    }

    /// `K'_0 = K_{i_0}`.
    pub fn k0(&self) -> Characteristic {
        self.k0
    }

    /// `k'_1..k'_m`.
    pub fn derived_characteristics(&self) -> &[Characteristic] {
        &self.derived
    }

    /// The lineal's own specification; points (`m = 0`) have none.
    pub fn derived_spec(&self) -> Result<Specification> {
        Specification::new(self.derived.clone())
    }

    /// True when `K'_0 ≠ 1`: the lineal has no image on `B^n`.
    pub fn is_improper(&self) -> bool {
        self.k0 != Characteristic::Elliptic
    }

    fn columns(&self) -> Vec<Vec<f64>> {
        self.basis.columns()
    }
}

/// The lineal spanned by columns `indices` of a motion matrix.
pub fn lineal_from_columns(m: &Motion, indices: &[usize]) -> Result<Lineal> {
    let spec = m.spec();
    if indices.is_empty() {
        return Err(Error::DegenerateLineal("no columns selected".into()));
    }
    check_slots(indices, spec.dim())?;
    let basis = m.matrix().select_columns(indices);
    Ok(Lineal::assemble(
        CoordinateMatrix::new(basis, spec)?,
        indices.to_vec(),
        Some(indices.to_vec()),
    ))
}

/// Splits `v` into its projection on `l` and the orthogonal remainder.
pub fn project(v: &[f64], l: &Lineal) -> Result<(Vec<f64>, Vec<f64>)> {
    let spec = l.spec();
    if v.len() != spec.dim() + 1 {
        return Err(Error::Shape {
            expected: spec.dim() + 1,
            found: v.len(),
        });
    }
    if v.iter().any(|a| !a.is_finite()) {
        return Err(Error::Domain("non-finite vector".into()));
    }
    let on = project_onto(v, &l.columns(), &l.slots, spec)?;
    let perp = v.iter().zip(&on).map(|(a, b)| a - b).collect();
    Ok((on, perp))
}

/// Rebases `l` by an interior motion: the new basis `L'` satisfies `L = L'·M`.
pub fn change_basis(l: &Lineal, interior: &Motion) -> Result<Lineal> {
    if interior.spec().characteristics() != l.derived.as_slice() {
        return Err(Error::SpecMismatch);
    }
    let basis = l.matrix() * interior.inverse().matrix();
    Ok(Lineal::assemble(
        CoordinateMatrix::new(basis, l.spec())?,
        l.slots.clone(),
        None,
    ))
}

/// The unique basis: project each ambient coordinate vector on `l`, remove the
/// accepted part, place the remainder in the first free slot with positive
/// weighted square and normalize.
pub fn canonical_basis(l: &Lineal) -> Result<Lineal> {
    let spec = l.spec();
    let n = spec.dim();
    let cols = l.columns();
    let mut candidates = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mut e = vec![0.0; n + 1];
        e[p] = 1.0;
        candidates.push(project_onto(&e, &cols, &l.slots, spec)?);
    }
    let found = slot_search(candidates, &l.slots, l.slots.len(), spec)?;
    if found.len() < l.slots.len() {
        return Err(Error::DegenerateLineal(format!(
            "filled {} of {} slots",
            found.len(),
            l.slots.len()
        )));
    }
    Lineal::from_slotted(found, spec, l.column_indices.clone())
}

/// The measures `φ` (between `X` and `Y`) and `ψ` (between `X` and the
/// orthogonal completion of `Y`), with the determinants they come from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinealMeasure {
    pub phi: Measure,
    pub psi: Measure,
    /// `det M'`: state determinant of the projection on `Y`.
    pub det_proj: f64,
    /// `det M''`: state determinant of the projection on the completion.
    pub det_perp: f64,
    pub characteristic: Characteristic,
}

fn infinite(k: Characteristic) -> Measure {
    Measure::new(ExtendedReal::PosInfinity, k, MeasureClass::Limit)
}

fn immeasurable(k: Characteristic) -> Measure {
    Measure::new(ExtendedReal::Undefined, k, MeasureClass::Immeasurable)
}

/// Measures between `X` (dimension `p`) and `Y` (dimension `q ≥ p`).
///
/// The part of `X` shared with `Y` is split off first, so `x_i` runs over a
/// basis of the rest of `X`. `det M'` comes from the projections of `x_i` on
/// `Y`, `det M''` from their remainders, weighted by the slots of the
/// completion of `Y` inside the join. The characteristic of `φ` is the slot
/// ratio between `x_i` and its completion vector. With no remainder `X ⊂ Y`
/// and `det M' = 1, det M'' = 0`.
pub fn measure_between(x: &Lineal, y: &Lineal) -> Result<LinealMeasure> {
    let spec = x.spec();
    if !spec.same_space(y.spec()) {
        return Err(Error::SpecMismatch);
    }
    if x.dim() > y.dim() {
        return Err(Error::MeasureUndefined(format!(
            "first lineal has dimension {} above the second's {}",
            x.dim(),
            y.dim()
        )));
    }
    let n = spec.dim();
    let xcols = x.columns();
    let ycols = y.columns();
    let perp = |v: &[f64]| -> Result<Vec<f64>> {
        let on = project_onto(v, &ycols, &y.slots, spec)?;
        Ok(v.iter().zip(&on).map(|(a, b)| a - b).collect())
    };

    // Shared directions: null combinations of the remainders.
    let rem = xcols.iter().map(|c| perp(c)).collect::<Result<Vec<_>>>()?;
    let rem_m = DMatrix::from_iterator(n + 1, rem.len(), rem.iter().flatten().copied());
    let svd = rem_m.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let xscale = xcols.iter().map(|c| max_abs(c)).fold(1.0, f64::max);
    let mut shared = Vec::new();
    for (i, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma <= 1e-9 * xscale {
            shared.push(combine(&xcols, v_t.row(i).iter().copied().collect::<Vec<_>>().as_slice(), n + 1));
        }
    }
    let adapted = slot_search(shared.iter().cloned().chain(xcols.iter().cloned()), &x.slots, x.slots.len(), spec)?;
    if adapted.len() < x.slots.len() {
        return Err(Error::MeasureUndefined("first lineal has no orthonormal basis adapted to the intersection".into()));
    }
    let own: Vec<(usize, Vec<f64>)> = adapted.into_iter().skip(shared.len()).collect();

    let free: Vec<usize> = (0..=n).filter(|s| !y.slots.contains(s)).collect();
    let (det_proj, det_perp, kappa, sigma0) = if own.is_empty() {
        let sigma = free.first().copied();
        let k = match sigma {
            Some(s) => spec.ratio(*x.slots.last().unwrap(), s).unwrap_or(Characteristic::Parabolic),
            None => Characteristic::Elliptic,
        };
        (1.0, 0.0, k, sigma)
    } else {
        let (own_slots, own_cols): (Vec<usize>, Vec<Vec<f64>>) = own.into_iter().unzip();
        let own_rem = own_cols.iter().map(|c| perp(c)).collect::<Result<Vec<_>>>()?;
        let own_on: Vec<Vec<f64>> = own_cols
            .iter()
            .zip(&own_rem)
            .map(|(c, r)| c.iter().zip(r).map(|(a, b)| a - b).collect())
            .collect();
        let completion = slot_search(own_rem.iter().cloned(), &free, own_rem.len(), spec)?;
        if completion.len() < own_rem.len() {
            return Err(Error::MeasureUndefined("the completion of the second lineal cannot be normalized".into()));
        }
        let comp_slots: Vec<usize> = completion.iter().map(|(s, _)| *s).collect();
        let mut kappa = None;
        for (s, sigma) in own_slots.iter().zip(&comp_slots) {
            let k = spec
                .ratio(*s, *sigma)
                .ok_or_else(|| Error::MeasureUndefined(format!("ratio K_{sigma}/K_{s} is undefined")))?;
            if kappa.is_some_and(|prev| prev != k) {
                return Err(Error::MeasureUndefined("principal directions have mixed characteristics".into()));
            }
            kappa = Some(k);
        }
        let det_proj = state_with_slots(&own_on, &own_slots, spec)?.determinant();
        let det_perp = state_with_slots(&own_rem, &comp_slots, spec)?.determinant();
        (det_proj, det_perp, kappa.unwrap(), Some(comp_slots[0]))
    };
    let r = sigma0.filter(|s| *s >= 1).map_or(1.0, |s| spec.scale(s));
    let (d1, d2) = (det_proj.max(0.0), det_perp.max(0.0));
    let near = |a: f64, b: f64| (a - b).abs() <= CLASS_TOL * a.abs().max(b.abs()).max(1.0);
    let m = |v: f64| Measure::measurable(v * r, kappa);
    let (phi, psi) = match kappa {
        Characteristic::Elliptic => (m(d2.sqrt().atan2(d1.sqrt())), m(d1.sqrt().atan2(d2.sqrt()))),
        Characteristic::Parabolic => {
            if near(d1, 1.0) {
                (m(d2.sqrt()), infinite(kappa))
            } else if near(d2, 1.0) {
                (infinite(kappa), m(d1.sqrt()))
            } else {
                return Err(Error::MeasureUndefined(format!(
                    "parabolic case needs a unit determinant, got {d1} and {d2}"
                )));
            }
        }
        Characteristic::Hyperbolic => {
            if near(d1 - d2, 1.0) {
                (m((d2 / d1).sqrt().atanh()), immeasurable(kappa))
            } else if near(d2 - d1, 1.0) {
                (immeasurable(kappa), m((d1 / d2).sqrt().atanh()))
            } else if near(d1, d2) {
                (infinite(kappa), infinite(kappa))
            } else {
                return Err(Error::MeasureUndefined(format!(
                    "hyperbolic case needs determinants differing by 1, got {d1} and {d2}"
                )));
            }
        }
    };
    Ok(LinealMeasure {
        phi,
        psi,
        det_proj,
        det_perp,
        characteristic: kappa,
    })
}

/// A Monte-Carlo volume with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Volume of the central projection onto `B^n` of the flat simplex on `n+1`
/// vertices, as `(n+1)` times the volume of the cone from the origin.
///
/// With `V` the vertex matrix and `u` on the standard simplex `Δ`, the cone
/// volume is `|det V|/(n+1) · ∫_Δ (Vu ⊙ Vu)^{-(n+1)/2} du`; the integral is
/// sampled with uniform barycentric points. Chunks of samples use
/// `ChaCha8Rng(seed + chunk)` so the result does not depend on the thread count.
pub fn cone_volume(vertices: &[Vec<f64>], spec: &Specification, samples: usize, seed: u64) -> Result<VolumeEstimate> {
    let n = spec.dim();
    if vertices.len() != n + 1 {
        return Err(Error::DegenerateFigure(format!("{} vertices given, a simplex of B^{n} needs {}", vertices.len(), n + 1)));
    }
    if samples < 2 {
        return Err(Error::DegenerateFigure("at least two samples are needed".into()));
    }
    let mut vm = DMatrix::<f64>::zeros(n + 1, n + 1);
    for (c, v) in vertices.iter().enumerate() {
        // Scaled onto B^n keeping the given sign: v and -v span different simplices.
        let norm = spec.dot(v, v)?;
        let size = v.iter().map(|a| a * a).sum::<f64>();
        if !(norm > 1e-12 * size) {
            return Err(Error::DegenerateFigure("vertex is not on the unit sphere".into()));
        }
        let inv = norm.sqrt().recip();
        for (r, x) in v.iter().enumerate() {
            vm[(r, c)] = x * inv;
        }
    }
    let det = vm.determinant().abs();
    if det <= 1e-14 {
        return Ok(VolumeEstimate {
            value: 0.0,
            std_error: 0.0,
            samples,
        });
    }
    let factorial: f64 = (1..=n).map(|i| i as f64).product();
    let weight = det / factorial;
    let power = -((n + 1) as f64) / 2.0;
    let chunks = samples.div_ceil(CHUNK);
    let sums = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(chunk as u64));
            let count = CHUNK.min(samples - chunk * CHUNK);
            let mut u = vec![0.0; n + 1];
            let mut x = vec![0.0; n + 1];
            let (mut s1, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let mut total = 0.0;
                for ui in u.iter_mut() {
                    *ui = -(1.0 - rng.random::<f64>()).ln();
                    total += *ui;
                }
                for (r, xr) in x.iter_mut().enumerate() {
                    *xr = (0..=n).map(|c| vm[(r, c)] * u[c]).sum::<f64>() / total;
                }
                let q = spec.dot_unchecked(&x, &x);
                if q <= 0.0 {
                    return Err(Error::DegenerateFigure("the flat simplex leaves the cone of the sphere".into()));
                }
                let f = q.powf(power);
                s1 += f;
                s2 += f * f;
            }
            Ok((s1, s2))
        })
        .collect::<Result<Vec<_>>>()?;
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let count = samples as f64;
    let mean = s1 / count;
    let var = ((s2 / count - mean * mean) * count / (count - 1.0)).max(0.0);
    Ok(VolumeEstimate {
        value: weight * mean,
        std_error: weight * (var / count).sqrt(),
        samples,
    })
}
