//! Weighted energy identity as a discrete consistency check.
//!
//! Multiplying the equation by `2φ(x)u` and integrating over space and
//! `[0, T]` gives, after integration by parts,
//!
//! ```text
//! ∫φu²(T) − ∫φu²(0) + 3∬φ′(∂ₓu)² − ∬φ‴u² − (2(k+1)/(k+2))∬φ′u^{k+2} = 0,
//! ```
//!
//! with the flux term absent for the free (nonlinearity-off) flow. All five
//! terms are evaluated from trajectory snapshots — `φ′`, `φ‴`, and `∂ₓu`
//! spectrally, the time integrals by the trapezoid rule — and the residual
//! is the identity defect relative to the largest term.

use super::Trajectory;
use crate::error::{Error, Result};
use crate::spectral::{Field, Multiplier, WeightFunction};

/// The five evaluated terms and their normalized defect.
#[derive(Clone, Copy, Debug)]
pub struct KatoTerms {
    pub boundary_end: f64,
    pub boundary_start: f64,
    pub smoothing: f64,
    pub third_derivative: f64,
    pub flux: f64,
    pub residual: f64,
}

/// `|Σ terms| / max|term|` for the weighted identity; `0` for zero data.
pub fn kato_identity_residual(traj: &Trajectory, w: &WeightFunction) -> Result<f64> {
    Ok(kato_identity_terms(traj, w)?.residual)
}

pub fn kato_identity_terms(traj: &Trajectory, w: &WeightFunction) -> Result<KatoTerms> {
    if traj.len() < 2 {
        return Err(Error::structural(
            "solver",
            "kato_identity",
            "need at least two snapshots to integrate in time",
        ));
    }
    let grid = traj.grid();
    match *w {
        WeightFunction::TruncatedJapanese { n_cut, .. } => {
            // The weight must reach its plateau well inside the box so the
            // periodized φ is smooth and spectral differentiation is honest.
            if 3.0 * n_cut > 0.8 * grid.half_length() {
                return Err(Error::domain(
                    "solver",
                    "kato_identity",
                    format!(
                        "weight saturates at |x| ≈ {:.1} but 0.8·L = {:.1}; \
                         the plateau must sit inside the box",
                        3.0 * n_cut,
                        0.8 * grid.half_length()
                    ),
                ));
            }
        }
        _ => {
            return Err(Error::domain(
                "solver",
                "kato_identity",
                "the weight must be a truncated bracket (smooth and constant \
                 near the boundary)",
            ));
        }
    }
    let phi = Field::from_fn(grid, |x| w.eval(x));
    let phi1 = phi.apply(&Multiplier::derivative(1))?;
    let phi3 = phi.apply(&Multiplier::derivative(3))?;
    let dx = grid.spacing();
    let k = traj.k();
    let with_flux = traj.nonlinearity_enabled();

    // Per-snapshot space integrals.
    let mut smoothing_t = Vec::with_capacity(traj.len());
    let mut third_t = Vec::with_capacity(traj.len());
    let mut flux_t = Vec::with_capacity(traj.len());
    for state in traj.states() {
        let ux = state.apply(&Multiplier::derivative(1))?;
        let mut a = 0.0;
        let mut b = 0.0;
        let mut c = 0.0;
        for i in 0..grid.num_points() {
            let u = state.values()[i].re;
            let du = ux.values()[i].re;
            a += phi1.values()[i].re * du * du;
            b += phi3.values()[i].re * u * u;
            if with_flux {
                c += phi1.values()[i].re * u.powi(k as i32 + 2);
            }
        }
        smoothing_t.push(a * dx);
        third_t.push(b * dx);
        flux_t.push(c * dx);
    }
    let boundary = |state: &Field| -> f64 {
        let mut acc = 0.0;
        for (i, v) in state.values().iter().enumerate() {
            acc += phi.values()[i].re * v.re * v.re;
        }
        acc * dx
    };

    let boundary_end = boundary(traj.final_state());
    let boundary_start = -boundary(traj.initial_state());
    let smoothing = 3.0 * trapezoid(traj.times(), &smoothing_t);
    let third_derivative = -trapezoid(traj.times(), &third_t);
    let flux = if with_flux {
        -2.0 * (k as f64 + 1.0) / (k as f64 + 2.0) * trapezoid(traj.times(), &flux_t)
    } else {
        0.0
    };
    let terms = [
        boundary_end,
        boundary_start,
        smoothing,
        third_derivative,
        flux,
    ];
    let sum: f64 = terms.iter().sum();
    let peak = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let residual = if peak == 0.0 { 0.0 } else { sum.abs() / peak };
    Ok(KatoTerms {
        boundary_end,
        boundary_start,
        smoothing,
        third_derivative,
        flux,
        residual,
    })
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..times.len() {
        acc += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, SolverConfig};
    use crate::spectral::{Grid, Space};

    #[test]
    fn zero_data_has_zero_residual() {
        let g = Grid::new(256, 20.0).unwrap();
        let cfg = SolverConfig::new(2, 1e-2, 0.1, 5, g).unwrap();
        let traj = solve(&Field::zeros(g, Space::Physical), &cfg).unwrap();
        let w = WeightFunction::truncated_japanese(0.25, 4.0).unwrap();
        assert_eq!(kato_identity_residual(&traj, &w).unwrap(), 0.0);
    }

    #[test]
    fn rejects_weights_without_an_interior_plateau() {
        let g = Grid::new(256, 20.0).unwrap();
        let cfg = SolverConfig::new(2, 1e-2, 0.1, 5, g).unwrap();
        let traj = solve(&Field::zeros(g, Space::Physical), &cfg).unwrap();
        let saturates_outside = WeightFunction::truncated_japanese(0.25, 8.0).unwrap();
        assert!(kato_identity_residual(&traj, &saturates_outside).is_err());
        let unbounded = WeightFunction::japanese_pow(0.5).unwrap();
        assert!(kato_identity_residual(&traj, &unbounded).is_err());
    }
}
