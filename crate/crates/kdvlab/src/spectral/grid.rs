use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Uniform periodic grid on `[-L, L)` with a power-of-two point count.
///
/// Physical nodes are `x_j = -L + j·Δx`; the dual nodes are `ξ_k = πk/L` in
/// FFT slot order. The Nyquist slot is special: [`Grid::frequency`] reports it
/// as 0 (so odd symbols vanish there and real fields stay real under every
/// multiplier), while [`Grid::signed_frequency`] reports the true `-π(n/2)/L`
/// for masks that need the raw slot layout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    num_points: usize,
    half_length: f64,
}

impl Grid {
    pub fn new(num_points: usize, half_length: f64) -> Result<Grid> {
        if num_points < 8 || !num_points.is_power_of_two() {
            return Err(Error::structural(
                "spectral",
                "grid",
                format!("num_points must be a power of two >= 8, got {num_points}"),
            ));
        }
        if !half_length.is_finite() || half_length <= 0.0 {
            return Err(Error::structural(
                "spectral",
                "grid",
                format!("half_length must be a finite positive real, got {half_length}"),
            ));
        }
        Ok(Grid {
            num_points,
            half_length,
        })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// `Δx = 2L/n`; exact in floating point (n is a power of two).
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.num_points as f64
    }

    /// `Δξ = π/L`.
    pub fn frequency_spacing(&self) -> f64 {
        PI / self.half_length
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_length + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.num_points).map(|j| self.point(j)).collect()
    }

    /// Multiplier-convention frequency of FFT slot `k` (Nyquist slot -> 0).
    pub fn frequency(&self, k: usize) -> f64 {
        let n = self.num_points;
        debug_assert!(k < n);
        if k == n / 2 {
            0.0
        } else {
            self.signed_frequency(k)
        }
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.num_points).map(|k| self.frequency(k)).collect()
    }

    /// Raw signed frequency of slot `k`; the Nyquist slot maps to `-π(n/2)/L`.
    pub fn signed_frequency(&self, k: usize) -> f64 {
        let n = self.num_points;
        debug_assert!(k < n);
        let s = if k <= n / 2 {
            k as isize
        } else {
            k as isize - n as isize
        };
        PI * s as f64 / self.half_length * if k == n / 2 { -1.0 } else { 1.0 }
    }

    /// Magnitude of the Nyquist frequency `π(n/2)/L`.
    pub fn nyquist(&self) -> f64 {
        PI * (self.num_points / 2) as f64 / self.half_length
    }

    /// Largest frequency carried by a non-Nyquist slot, `π(n/2 - 1)/L`.
    pub fn max_active_frequency(&self) -> f64 {
        PI * (self.num_points / 2 - 1) as f64 / self.half_length
    }
}
