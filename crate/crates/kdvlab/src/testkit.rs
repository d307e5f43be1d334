//! Deterministic smooth test data for scans and regression tests.
//!
//! The reference family is a seeded random trigonometric polynomial under a
//! Gaussian envelope: band-limited (so spectral operations commit no aliasing
//! crime), rapidly decaying (so the periodic box is an honest stand-in for
//! the line), and reproducible across runs and thread counts.

use crate::spectral::{Field, Grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Grid most scans run on.
pub fn default_grid() -> Grid {
    Grid::new(1024, 40.0).expect("reference grid parameters are valid")
}

/// Seeded family of unit-L² smooth fields on a common grid.
///
/// Member `i` of seed `s` is always the same field, independent of how many
/// members are drawn and in which order (one RNG stream per member).
#[derive(Clone, Copy, Debug)]
pub struct SchwartzFamily {
    grid: Grid,
    seed: u64,
}

const DEGREE: usize = 32;
const BASE_FREQUENCY: f64 = 0.25;

impl SchwartzFamily {
    pub fn new(grid: Grid, seed: u64) -> SchwartzFamily {
        SchwartzFamily { grid, seed }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn member(&self, index: u64) -> Field {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let mut cos_c = [0.0f64; DEGREE + 1];
        let mut sin_c = [0.0f64; DEGREE + 1];
        for c in cos_c.iter_mut() {
            *c = rng.gen_range(-1.0..1.0);
        }
        for s in sin_c.iter_mut() {
            *s = rng.gen_range(-1.0..1.0);
        }
        let sigma = self.grid.half_length() / 10.0;
        let field = Field::from_fn(self.grid, |x| {
            let envelope = (-x * x / (2.0 * sigma * sigma)).exp();
            let mut acc = 0.0;
            for m in 0..=DEGREE {
                let phase = m as f64 * BASE_FREQUENCY * x;
                acc += cos_c[m] * phase.cos() + sin_c[m] * phase.sin();
            }
            envelope * acc
        });
        let norm = field.l2_norm();
        field.scale_real(1.0 / norm)
    }

    pub fn members(&self, count: u64) -> Vec<Field> {
        (0..count).map(|i| self.member(i)).collect()
    }
}

/// `|a - b| / max(|b|, floor)`; guards the zero denominator.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
