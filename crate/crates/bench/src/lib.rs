//! Seeded fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unigeom::lineal::lineal_from_columns;
use unigeom::motion::random_motion;
use unigeom::{Lineal, Motion, Specification};

pub fn spec(signs: &[i8]) -> Specification {
    Specification::from_signs(signs).expect("valid signs")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` motions of 10 random main rotations each.
pub fn motions(s: &Specification, count: usize, seed: u64) -> Vec<Motion> {
    let mut g = rng(seed);
    (0..count).map(|_| random_motion(s, 10, &mut g)).collect()
}

/// `count` SAS inputs `(b, c, α)` in the range used by the acceptance tests.
pub fn sas_inputs(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| (g.random_range(0.05..1.4), g.random_range(0.05..1.4), g.random_range(0.05..3.0)))
        .collect()
}

/// A pair of lineals spanned by the given columns of two random motions.
pub fn lineal_pair(s: &Specification, cols: &[usize], seed: u64) -> (Lineal, Lineal) {
    let m = motions(s, 2, seed);
    (
        lineal_from_columns(&m[0], cols).expect("columns in range"),
        lineal_from_columns(&m[1], cols).expect("columns in range"),
    )
}
