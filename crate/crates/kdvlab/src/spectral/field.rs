use super::{Grid, Multiplier, WeightFunction};
use crate::error::{Error, Result};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Physical,
    Frequency,
}

/// Complex samples on a [`Grid`], tagged by which side of the transform they
/// live on. All operations are pure; nothing mutates in place.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    space: Space,
    values: Vec<Complex64>,
}

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((n, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if forward {
                planner.plan_fft_forward(n)
            } else {
                planner.plan_fft_inverse(n)
            }
        })
        .clone()
}

impl Field {
    pub fn new(grid: Grid, space: Space, values: Vec<Complex64>) -> Result<Field> {
        if values.len() != grid.num_points() {
            return Err(Error::structural(
                "spectral",
                "field",
                format!(
                    "value count {} does not match grid size {}",
                    values.len(),
                    grid.num_points()
                ),
            ));
        }
        Ok(Field { grid, space, values })
    }

    pub fn zeros(grid: Grid, space: Space) -> Field {
        Field {
            grid,
            space,
            values: vec![Complex64::new(0.0, 0.0); grid.num_points()],
        }
    }

    /// Sample a real-valued function of x on the physical nodes.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Field {
        Field {
            grid,
            space: Space::Physical,
            values: grid
                .points()
                .iter()
                .map(|&x| Complex64::new(f(x), 0.0))
                .collect(),
        }
    }

    pub fn from_complex_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Field {
        Field {
            grid,
            space: Space::Physical,
            values: grid.points().iter().map(|&x| f(x)).collect(),
        }
    }

    /// Sample a function of ξ on the dual nodes (true signed frequencies, so
    /// the Nyquist slot is sampled at `-π(n/2)/L`, not treated as zero).
    pub fn from_frequency_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Field {
        Field {
            grid,
            space: Space::Frequency,
            values: (0..grid.num_points())
                .map(|k| f(grid.signed_frequency(k)))
                .collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Quadrature weight of this side: Δx in physical space, Δξ in frequency.
    pub fn node_weight(&self) -> f64 {
        match self.space {
            Space::Physical => self.grid.spacing(),
            Space::Frequency => self.grid.frequency_spacing(),
        }
    }

    /// Forward transform. `f̂(ξ_k) = Δx·(-1)^k·FFT(f)_k` realizes the
    /// rectangle rule for `∫ f e^{-iξx} dx` on `[-L, L)`.
    pub fn transform(&self) -> Result<Field> {
        if self.space != Space::Physical {
            return Err(Error::structural(
                "spectral",
                "transform",
                "forward transform expects a physical-space field",
            ));
        }
        let n = self.grid.num_points();
        let dx = self.grid.spacing();
        let mut buf = self.values.clone();
        plan(n, true).process(&mut buf);
        for (k, v) in buf.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { dx } else { -dx };
            *v *= sign;
        }
        Ok(Field {
            grid: self.grid,
            space: Space::Frequency,
            values: buf,
        })
    }

    /// Inverse transform, including the `1/(2π)`: exact round-trip partner of
    /// [`Field::transform`].
    pub fn inverse_transform(&self) -> Result<Field> {
        if self.space != Space::Frequency {
            return Err(Error::structural(
                "spectral",
                "inverse_transform",
                "inverse transform expects a frequency-space field",
            ));
        }
        let n = self.grid.num_points();
        let scale = 1.0 / (2.0 * self.grid.half_length());
        let mut buf: Vec<Complex64> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v } else { -v })
            .collect();
        plan(n, false).process(&mut buf);
        for v in &mut buf {
            *v *= scale;
        }
        Ok(Field {
            grid: self.grid,
            space: Space::Physical,
            values: buf,
        })
    }

    pub fn to_frequency(&self) -> Field {
        match self.space {
            Space::Frequency => self.clone(),
            Space::Physical => self.transform().expect("physical field transforms"),
        }
    }

    pub fn to_physical(&self) -> Field {
        match self.space {
            Space::Physical => self.clone(),
            Space::Frequency => self
                .inverse_transform()
                .expect("frequency field inverts"),
        }
    }

    /// Apply a Fourier multiplier; the result keeps the input's space tag.
    /// Symbols are evaluated with the Nyquist-slot-as-zero convention.
    pub fn apply(&self, m: &Multiplier) -> Result<Field> {
        let mut hat = self.to_frequency();
        for (k, v) in hat.values.iter_mut().enumerate() {
            let xi = self.grid.frequency(k);
            let s = m.eval(xi);
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(Error::domain(
                    "spectral",
                    "apply_multiplier",
                    format!("symbol {} is not finite at xi = {xi}", m.label()),
                ));
            }
            *v *= s;
        }
        match self.space {
            Space::Frequency => Ok(hat),
            Space::Physical => hat.inverse_transform(),
        }
    }

    /// Free Airy evolution `U(t)`: multiplier `e^{itξ³}`, exactly unitary on
    /// the discrete L² norm.
    pub fn airy_group(&self, t: f64) -> Result<Field> {
        self.apply(&Multiplier::airy(t))
    }

    fn check_same_grid(&self, other: &Field, op: &'static str) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::structural(
                "spectral",
                op,
                "fields live on different grids",
            ));
        }
        if self.space != other.space {
            return Err(Error::structural(
                "spectral",
                op,
                "fields live in different spaces",
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other, "add")?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other, "sub")?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn mul_pointwise(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other, "mul_pointwise")?;
        Ok(self.zip(other, |a, b| a * b))
    }

    fn zip(&self, other: &Field, f: impl Fn(Complex64, Complex64) -> Complex64) -> Field {
        Field {
            grid: self.grid,
            space: self.space,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Field {
        self.map(|v| v * c)
    }

    pub fn scale_real(&self, c: f64) -> Field {
        self.map(|v| v * c)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Field {
        Field {
            grid: self.grid,
            space: self.space,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Map with the physical coordinate (e.g. multiply by x). Physical only.
    pub fn map_at_points(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Result<Field> {
        if self.space != Space::Physical {
            return Err(Error::structural(
                "spectral",
                "map_at_points",
                "coordinate map expects a physical-space field",
            ));
        }
        Ok(Field {
            grid: self.grid,
            space: self.space,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(j, &v)| f(self.grid.point(j), v))
                .collect(),
        })
    }

    /// Map with the FFT slot index (for masks that need the raw layout).
    pub fn map_enumerate(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Field {
        Field {
            grid: self.grid,
            space: self.space,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, &v)| f(k, v))
                .collect(),
        }
    }

    /// L² norm with this side's quadrature weight. Plancherel holds exactly:
    /// `‖f̂‖₂ = √(2π)·‖f‖₂`.
    pub fn l2_norm(&self) -> f64 {
        let w = self.node_weight();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    /// Lᵖ norm for `1 ≤ p ≤ ∞` (pass `f64::INFINITY` for the sup norm).
    /// Scaled by the max to stay stable for large p.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::domain(
                "spectral",
                "lp_norm",
                format!("p must satisfy 1 <= p <= inf, got {p}"),
            ));
        }
        let peak = self.max_abs();
        if p.is_infinite() || peak == 0.0 {
            return Ok(peak);
        }
        let w = self.node_weight();
        let sum: f64 = self.values.iter().map(|v| (v.norm() / peak).powf(p)).sum();
        Ok(peak * (sum * w).powf(1.0 / p))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Box average `(2L)⁻¹∫f`: the zero-mode amplitude.
    pub fn mean(&self) -> Complex64 {
        match self.space {
            Space::Physical => {
                self.values.iter().sum::<Complex64>() / self.values.len() as f64
            }
            Space::Frequency => self.values[0] / (2.0 * self.grid.half_length()),
        }
    }

    /// Largest |Im f| over the nodes — drift monitor for nominally real data.
    pub fn imag_linf(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Quadrature-weighted inner product `Σ f ḡ Δ`.
    pub fn inner(&self, other: &Field) -> Result<Complex64> {
        self.check_same_grid(other, "inner")?;
        let w = self.node_weight();
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a * b.conj())
            .sum::<Complex64>()
            * w)
    }

    /// `(Σ w(x_j)|f_j|² Δx)^{1/2}`.
    pub fn weighted_l2(&self, w: &WeightFunction) -> Result<f64> {
        if self.space != Space::Physical {
            return Err(Error::structural(
                "spectral",
                "weighted_l2",
                "weighted norm expects a physical-space field",
            ));
        }
        let dx = self.grid.spacing();
        let mut acc = 0.0;
        for (j, v) in self.values.iter().enumerate() {
            acc += w.eval(self.grid.point(j)) * v.norm_sqr();
        }
        Ok((acc * dx).sqrt())
    }

    /// `‖⟨D⟩^s f‖₂`.
    pub fn sobolev_norm(&self, s: f64) -> Result<f64> {
        // Evaluate on the frequency side; Plancherel makes this identical to
        // transforming back first, without the extra FFT.
        let hat = self.to_frequency();
        let weighted = hat.apply(&Multiplier::bessel_potential(s))?;
        Ok(weighted.l2_norm() / (2.0 * PI).sqrt())
    }

    /// Mass fraction beyond 0.8·L: `‖f‖_{L²(|x|>0.8L)} / ‖f‖₂`. Experiments
    /// treat values above 1e-6 as "the box is too small".
    pub fn boundary_mass_fraction(&self) -> f64 {
        let phys = self.to_physical();
        let cut = 0.8 * self.grid.half_length();
        let mut tail = 0.0;
        let mut total = 0.0;
        for (j, v) in phys.values.iter().enumerate() {
            let m = v.norm_sqr();
            total += m;
            if phys.grid.point(j).abs() > cut {
                tail += m;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            (tail / total).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_grid() -> Grid {
        Grid::new(256, 20.0).unwrap()
    }

    #[test]
    fn zero_field_transforms_to_zero() {
        let f = Field::zeros(test_grid(), Space::Physical);
        let hat = f.transform().unwrap();
        assert!(hat.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn single_mode_concentrates_with_value_2l() {
        let g = test_grid();
        let xi1 = PI / g.half_length();
        let f = Field::from_complex_fn(g, |x| Complex64::new(0.0, xi1 * x).exp());
        let hat = f.transform().unwrap();
        for (k, v) in hat.values().iter().enumerate() {
            if k == 1 {
                assert!((v - Complex64::new(2.0 * g.half_length(), 0.0)).norm() < 1e-10);
            } else {
                assert!(v.norm() < 1e-10, "leak at slot {k}: {v}");
            }
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let g = test_grid();
        let f = Field::from_fn(g, |x| (-x * x / 3.0).exp() * (2.0 * x).cos());
        let back = f.transform().unwrap().inverse_transform().unwrap();
        let err = f.sub(&back).unwrap().l2_norm() / f.l2_norm();
        assert!(err < 1e-13, "round trip error {err}");
    }

    #[test]
    fn plancherel_is_machine_exact() {
        let g = test_grid();
        let f = Field::from_fn(g, |x| (-x * x / 5.0).exp() * (1.0 + x.sin()));
        let hat = f.transform().unwrap();
        let lhs = hat.l2_norm() / (2.0 * PI).sqrt();
        let rhs = f.l2_norm();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs, "{lhs} vs {rhs}");
    }

    #[test]
    fn airy_group_is_unitary_and_identity_at_zero() {
        let g = test_grid();
        let f = Field::from_fn(g, |x| (-x * x / 2.0).exp());
        let id = f.airy_group(0.0).unwrap();
        assert!(f.sub(&id).unwrap().l2_norm() < 1e-14);
        for &t in &[0.1, 1.0, 10.0] {
            let uf = f.airy_group(t).unwrap();
            assert!((uf.l2_norm() - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
        }
    }

    #[test]
    fn grid_mismatch_is_a_structural_error() {
        let a = Field::zeros(Grid::new(64, 10.0).unwrap(), Space::Physical);
        let b = Field::zeros(Grid::new(128, 10.0).unwrap(), Space::Physical);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn real_data_stays_real_under_real_even_multipliers() {
        let g = test_grid();
        let f = Field::from_fn(g, |x| (-x * x).exp() * (3.0 * x).sin());
        // |ξ|^{1/2} is even and real; the Nyquist-as-zero convention keeps the
        // output exactly conjugate-symmetric.
        let out = f.apply(&Multiplier::fractional_derivative(0.5).unwrap()).unwrap();
        assert!(out.imag_linf() < 1e-13 * out.max_abs());
    }

    #[test]
    fn boundary_mass_flags_wide_data() {
        let g = test_grid();
        let narrow = Field::from_fn(g, |x| (-x * x).exp());
        assert!(narrow.boundary_mass_fraction() < 1e-12);
        let wide = Field::from_fn(g, |x| (-(x / 30.0).powi(2)).exp());
        assert!(wide.boundary_mass_fraction() > 1e-6);
    }

    #[test]
    fn lp_norm_handles_extremes() {
        let g = test_grid();
        let f = Field::from_fn(g, |x| (-x * x / 2.0).exp());
        let linf = f.lp_norm(f64::INFINITY).unwrap();
        assert!((linf - 1.0).abs() < 1e-12);
        // ‖f‖₂ via lp_norm agrees with the dedicated path.
        assert!((f.lp_norm(2.0).unwrap() - f.l2_norm()).abs() < 1e-12);
        assert!(f.lp_norm(0.5).is_err());
        // Huge p degrades gracefully toward the sup norm.
        let huge = f.lp_norm(1e6).unwrap();
        assert!((huge - linf).abs() / linf < 1e-2);
    }
}
