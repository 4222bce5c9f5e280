//! A uniform numerical model of Cayley-Klein type spaces.
//!
//! One specification vector `{k_1, …, k_n}` with `k_i ∈ {-1, 0, 1}` selects
//! the space (elliptic, Euclidean, hyperbolic, Galilean, Minkowski and every
//! mix of them). Trigonometry, motions, triangle laws, lineals and volumes all
//! run through the same code path for every specification.

// `!(x > t)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
mod dd;
pub mod error;
pub mod gtrig;
pub mod lineal;
pub mod measure;
pub mod motion;
pub mod space;
pub mod text;
pub mod triangle;

pub use classify::{curvature, preset, spec_from_quadric, QuadricSignature};
pub use error::{Error, Result};
pub use gtrig::{Characteristic, ExtendedReal};
pub use lineal::{CoordinateMatrix, Lineal, LinealMeasure, StateMatrix, VolumeEstimate};
pub use measure::{Measure, MeasureClass};
pub use motion::{Motion, Reflection, RotationStep};
pub use space::{classify_pair, normalize_point, PairClass, Point, Specification};
pub use triangle::{InequalityReport, RightInputs, RightSolution, TriangleSolution};
