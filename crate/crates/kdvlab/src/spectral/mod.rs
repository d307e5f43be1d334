//! Periodic grid, discrete Fourier transform, multiplier calculus, norms.
//!
//! Convention: `f̂(ξ) = ∫ f(x) e^{-iξx} dx` (rectangle rule × spacing), the
//! inverse carries the `1/(2π)`. With it, `-∂³ₓ` has symbol `iξ³` and the free
//! group `U(t)` has symbol `e^{itξ³}`.

mod field;
mod grid;
mod multiplier;
mod weight;

pub use field::{Field, Space};
pub use grid::Grid;
pub use multiplier::Multiplier;
pub use weight::WeightFunction;

use crate::error::Result;

/// `(Σ w(x_j) |f(x_j)|² Δx)^{1/2}`.
pub fn weighted_l2(w: &WeightFunction, f: &Field) -> Result<f64> {
    f.weighted_l2(w)
}

/// `‖⟨D⟩^s f‖₂`.
pub fn sobolev_norm(s: f64, f: &Field) -> Result<f64> {
    f.sobolev_norm(s)
}
