//! Pseudo-spectral integrator for `∂ₜu + ∂³ₓu + ∂ₓ(u^{k+1}) = 0` and the
//! diagnostics built on its output: conserved quantities, traveling-wave
//! profiles, a Picard iteration for the Duhamel fixed point, and the weighted
//! energy identity used as a discrete consistency check.
//!
//! With the laboratory's transform convention the linear semigroup acts as
//! the multiplier `e^{itξ³}` and the flux term enters the spectral equation
//! as `−iξ·(u^{k+1})^`, so the Duhamel form reads
//! `u(t) = U(t)u₀ − ∫₀ᵗ U(t−t′) ∂ₓ(u^{k+1})(t′) dt′`.

mod io;
mod kato;
mod picard;
mod stepper;
mod waves;

pub use io::{
    trajectory_from_json, trajectory_to_json, TRAJECTORY_FORMAT, TRAJECTORY_FORMAT_VERSION,
};
pub use kato::{kato_identity_residual, kato_identity_terms, KatoTerms};
pub use picard::{picard_iterate, picard_run, PicardRun};
pub use stepper::{solve, step_exponential, step_exponential_reversed};
pub use waves::{mkdv_soliton, traveling_wave_amplitude};

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid};

/// Linear stability extent of the explicit stage updates, in units of
/// `1/ξ_max`: configs must satisfy `dt ≤ C_STAB/ξ_max`. The dispersive part
/// is integrated exactly, so what remains is the advective stage limit
/// (RK4's imaginary-axis reach ≈ 2.83) for data of order-one amplitude;
/// larger data needs proportionally smaller dt, which the blow-up detector
/// enforces at run time rather than at config time.
pub const C_STAB: f64 = 2.0;

/// Hard ceiling on stored snapshots per run.
pub const MAX_SNAPSHOTS: usize = 200_000;

/// Hard ceiling on time steps per run.
pub const MAX_STEPS: usize = 20_000_000;

/// Blow-up declared when `‖u‖_∞` exceeds this multiple of `‖u₀‖_∞`.
pub const BLOWUP_FACTOR: f64 = 1e6;

/// Run parameters for the integrating-factor RK4 integrator.
///
/// `dealias` is the retained fraction of the frequency band: modes with
/// `|ξ| > dealias·ξ_max` are zeroed inside the nonlinear term. The default
/// follows the product order: `2/3` for `k ≤ 2`, `2/(k+2)` for `k ≥ 3`
/// (a product of `k+1` factors aliases beyond the classical two-factor rule).
#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    k: u32,
    dt: f64,
    t_end: f64,
    dealias: f64,
    snapshot_stride: usize,
    grid: Grid,
    nonlinearity_enabled: bool,
}

impl SolverConfig {
    pub fn new(k: u32, dt: f64, t_end: f64, snapshot_stride: usize, grid: Grid) -> Result<Self> {
        let cfg = SolverConfig {
            k,
            dt,
            t_end,
            dealias: default_dealias(k),
            snapshot_stride,
            grid,
            nonlinearity_enabled: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Override the retained dealiasing fraction (in `(0, 1]`; `1` disables).
    pub fn with_dealias(mut self, fraction: f64) -> Result<Self> {
        self.dealias = fraction;
        self.validate()?;
        Ok(self)
    }

    /// Test hook: drop the flux term, leaving the exact Airy integrator.
    pub fn without_nonlinearity(mut self) -> Self {
        self.nonlinearity_enabled = false;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config(
                "nonlinearity degree k must be a positive integer".into(),
            ));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!(
                "time step must be a positive real, got {}",
                self.dt
            )));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::Config(format!(
                "end time must be a positive real, got {}",
                self.t_end
            )));
        }
        if !(self.dealias > 0.0 && self.dealias <= 1.0) {
            return Err(Error::Config(format!(
                "dealias fraction must lie in (0, 1], got {}",
                self.dealias
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::Config("snapshot stride must be positive".into()));
        }
        let stability = C_STAB / self.grid.nyquist();
        if self.dt > stability {
            return Err(Error::Config(format!(
                "dt = {} exceeds the stability bound {C_STAB}/ξ_max = {stability:.3e} \
                 for this grid",
                self.dt
            )));
        }
        let ticks = self.t_end / self.dt;
        if ticks > MAX_STEPS as f64 {
            return Err(Error::Config(format!(
                "t_end/dt = {ticks:.3e} exceeds the step budget {MAX_STEPS}"
            )));
        }
        let steps = self.num_steps();
        let drift = (steps as f64 * self.dt - self.t_end).abs();
        if drift > 1e-9 * self.t_end.max(self.dt) {
            return Err(Error::Config(format!(
                "t_end = {} is not an integer number of dt = {} steps",
                self.t_end, self.dt
            )));
        }
        if steps % self.snapshot_stride != 0 {
            return Err(Error::Config(format!(
                "step count {steps} is not divisible by snapshot stride {}",
                self.snapshot_stride
            )));
        }
        if steps / self.snapshot_stride + 1 > MAX_SNAPSHOTS {
            return Err(Error::Config(format!(
                "run would store {} snapshots; budget is {MAX_SNAPSHOTS}",
                steps / self.snapshot_stride + 1
            )));
        }
        Ok(())
    }

    pub(crate) fn num_steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dealias(&self) -> f64 {
        self.dealias
    }

    pub fn snapshot_stride(&self) -> usize {
        self.snapshot_stride
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn nonlinearity_enabled(&self) -> bool {
        self.nonlinearity_enabled
    }
}

/// Default retained fraction for the `u^{k+1}` flux.
pub fn default_dealias(k: u32) -> f64 {
    if k <= 2 {
        2.0 / 3.0
    } else {
        2.0 / (k as f64 + 2.0)
    }
}

/// Time-sampled solution record. Snapshots are physical-space fields (kept
/// complex; the imaginary part is a round-off monitor, see
/// [`Trajectory::imag_residue`]).
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub(crate) config: SolverConfig,
    pub(crate) times: Vec<f64>,
    pub(crate) states: Vec<Field>,
}

impl Trajectory {
    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn grid(&self) -> Grid {
        self.config.grid
    }

    /// Nonlinearity exponent: the flux is `u^{k+1}`.
    pub fn k(&self) -> u32 {
        self.config.k
    }

    pub fn dt(&self) -> f64 {
        self.config.dt
    }

    pub fn snapshot_stride(&self) -> usize {
        self.config.snapshot_stride
    }

    pub fn nonlinearity_enabled(&self) -> bool {
        self.config.nonlinearity_enabled
    }

    pub fn dealias(&self) -> f64 {
        self.config.dealias
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Field] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial_state(&self) -> &Field {
        &self.states[0]
    }

    pub fn final_state(&self) -> &Field {
        self.states.last().expect("trajectory holds >= 1 snapshot")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds >= 1 snapshot")
    }

    /// Largest `|Im u|` over all snapshots — drift monitor for real data.
    pub fn imag_residue(&self) -> f64 {
        self.states.iter().map(Field::imag_linf).fold(0.0, f64::max)
    }

    /// Worst boundary-mass fraction over the stored snapshots.
    pub fn boundary_mass_max(&self) -> f64 {
        self.states
            .iter()
            .map(Field::boundary_mass_fraction)
            .fold(0.0, f64::max)
    }

    /// Drift of the three conserved quantities across the stored snapshots.
    pub fn conservation(&self) -> ConservationReport {
        let mass0 = invariant_mass(self.initial_state());
        let mean0 = invariant_mean(self.initial_state());
        let energy0 = invariant_energy(self.initial_state(), self.config.k);
        // Relative drifts; a quantity that starts at (numerical) zero is
        // compared against a floor built from the data's own scale so that
        // round-off in the reference does not masquerade as drift.
        let scale = self.initial_state().l2_norm().max(1e-300);
        let mass_floor = mass0.abs().max(1e-12 * scale * scale);
        let mean_floor = mean0.abs().max(1e-12 * scale);
        let energy_floor = energy0.abs().max(1e-12 * scale * scale);
        let mut report = ConservationReport {
            mass_drift: 0.0,
            mean_drift: 0.0,
            energy_drift: 0.0,
        };
        for state in &self.states[1..] {
            let dm = (invariant_mass(state) - mass0).abs() / mass_floor;
            let da = (invariant_mean(state) - mean0).abs() / mean_floor;
            let de = (invariant_energy(state, self.config.k) - energy0).abs() / energy_floor;
            report.mass_drift = report.mass_drift.max(dm);
            report.mean_drift = report.mean_drift.max(da);
            report.energy_drift = report.energy_drift.max(de);
        }
        report
    }
}

/// Worst relative drift of `∫u²`, `∫u`, and the Hamiltonian
/// `∫[(∂ₓu)²/2 − u^{k+2}/(k+2)]` over a trajectory.
#[derive(Clone, Copy, Debug)]
pub struct ConservationReport {
    pub mass_drift: f64,
    pub mean_drift: f64,
    pub energy_drift: f64,
}

fn invariant_mass(u: &Field) -> f64 {
    let n = u.l2_norm();
    n * n
}

fn invariant_mean(u: &Field) -> f64 {
    (u.mean() * 2.0 * u.grid().half_length()).re
}

fn invariant_energy(u: &Field, k: u32) -> f64 {
    let ux = u
        .apply(&crate::spectral::Multiplier::derivative(1))
        .expect("derivative of a finite field");
    let dx = u.grid().spacing();
    let mut acc = 0.0;
    for (du, v) in ux.values().iter().zip(u.values()) {
        acc += 0.5 * du.re * du.re - v.re.powi(k as i32 + 2) / (k as f64 + 2.0);
    }
    acc * dx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(256, 20.0).unwrap()
    }

    #[test]
    fn config_rejects_out_of_range_parameters() {
        assert!(SolverConfig::new(0, 1e-3, 1.0, 1, grid()).is_err());
        assert!(SolverConfig::new(2, -1e-3, 1.0, 1, grid()).is_err());
        assert!(SolverConfig::new(2, 1e-3, -1.0, 1, grid()).is_err());
        assert!(SolverConfig::new(2, 1e-3, 1.0, 0, grid()).is_err());
        assert!(SolverConfig::new(2, 1e-3, 1.0, 1, grid())
            .unwrap()
            .with_dealias(0.0)
            .is_err());
        assert!(SolverConfig::new(2, 1e-3, 1.0, 1, grid())
            .unwrap()
            .with_dealias(1.5)
            .is_err());
    }

    #[test]
    fn config_enforces_the_stability_bound() {
        let g = grid(); // ξ_max = π·128/20 ≈ 20.1, bound ≈ 0.0995
        assert!(SolverConfig::new(2, 0.2, 1.0, 1, g).is_err());
        assert!(SolverConfig::new(2, 0.05, 1.0, 1, g).is_ok());
    }

    #[test]
    fn config_requires_commensurate_times_and_stride() {
        let g = grid();
        // 1.0 / 3e-3 is not an integer number of steps.
        assert!(SolverConfig::new(2, 3e-3, 1.0, 1, g).is_err());
        // 100 steps not divisible by stride 7.
        assert!(SolverConfig::new(2, 1e-2, 1.0, 7, g).is_err());
        assert!(SolverConfig::new(2, 1e-2, 1.0, 4, g).is_ok());
    }

    #[test]
    fn default_dealias_follows_the_product_order() {
        assert!((default_dealias(1) - 2.0 / 3.0).abs() < 1e-15);
        assert!((default_dealias(2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((default_dealias(3) - 0.4).abs() < 1e-15);
        assert!((default_dealias(6) - 0.25).abs() < 1e-15);
    }
}
