//! The analytic bump family `φ_ω`: unit profile, entire extension, and the
//! decay certificates used to truncate and shortcut quadrature.
//!
//! `φ₁(v) = (2π)⁻¹∫η(u)e^{iuv}du` with `η` the dyadic partition bump
//! (supported in `[1/2, 2]`), and `φ_ω(ζ) = |ω|·φ₁(ωζ)` — one formula for
//! both signs of ω. `φ₁` is entire (compact support) and Schwartz on the
//! real axis; its real-axis samples come from one large FFT, its complex
//! values from scaled Gauss–Legendre quadrature that never exponentiates
//! before exponents are combined.

use crate::cutoff::eta;
use crate::error::{Error, Result};
use crate::quad::gl_rule;
use crate::spectral::{Field, Grid, Multiplier};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;

const TABLE_POINTS: usize = 1 << 19;
/// Half-width of the u-grid; makes the v-spacing exactly 1/32.
const TABLE_HALF_LENGTH: f64 = 32.0 * PI;
const V_MAX: f64 = 8192.0;
const V_SPACING: f64 = 1.0 / 32.0;

pub struct BumpProfile {
    /// φ₁ on the uniform v-grid `-V_MAX + j·Δv`.
    table: Vec<Complex64>,
    /// `tail[j] ≈ ∫_{|v| ≥ j} |φ₁|dv`, already min-ed with the analytic
    /// integration-by-parts envelopes.
    tail: Vec<f64>,
    /// `‖η^{(m)}‖₁` for m = 0..6.
    deriv_l1: [f64; 7],
    /// `‖η^{(m)}‖_∞` for m = 0..6.
    deriv_sup: [f64; 7],
}

fn build_profile() -> BumpProfile {
    let grid = Grid::new(TABLE_POINTS, TABLE_HALF_LENGTH).expect("profile grid");
    let field = Field::from_fn(grid, eta);
    let hat = field.transform().expect("profile transform");

    // f̂(ξ) = ∫η e^{-iξu}du = 2π·φ₁(-ξ), and η is real, so
    // φ₁(v) = conj(f̂(v))/(2π) at the slot whose signed frequency is v.
    let mut table = vec![Complex64::new(0.0, 0.0); TABLE_POINTS];
    for (k, &v) in hat.values().iter().enumerate() {
        let freq = grid.signed_frequency(k);
        let idx = ((freq + V_MAX) / V_SPACING).round() as usize;
        table[idx] = v.conj() / (2.0 * PI);
    }

    let mut deriv_l1 = [0.0f64; 7];
    let mut deriv_sup = [0.0f64; 7];
    let dx = grid.spacing();
    for m in 0..7u32 {
        let dm = field
            .apply(&Multiplier::derivative(m))
            .expect("profile derivative");
        let mut l1 = 0.0;
        let mut sup = 0.0f64;
        for v in dm.values() {
            let a = v.norm();
            l1 += a;
            sup = sup.max(a);
        }
        deriv_l1[m as usize] = l1 * dx;
        deriv_sup[m as usize] = sup;
    }

    // Numeric tail masses by bucketed suffix sums, then the analytic
    // envelope 2·(‖η^{(m)}‖₁/2π)/((m-1)V^{m-1}) as a floor-breaker where the
    // FFT noise floor dominates.
    let buckets = V_MAX as usize;
    let mut mass = vec![0.0f64; buckets + 1];
    for (j, value) in table.iter().enumerate() {
        let v = (-V_MAX + j as f64 * V_SPACING).abs();
        let b = (v.floor() as usize).min(buckets);
        mass[b] += value.norm() * V_SPACING;
    }
    let mut tail = vec![0.0f64; buckets + 1];
    let mut acc = 0.0;
    for j in (0..=buckets).rev() {
        acc += mass[j];
        let mut best = acc;
        if j > 0 {
            for m in [2usize, 4, 6] {
                let c = deriv_l1[m] / (2.0 * PI);
                best = best.min(2.0 * c / ((m as f64 - 1.0) * (j as f64).powi(m as i32 - 1)));
            }
        }
        tail[j] = best;
    }
    // Tails must be nonincreasing in V even after the min.
    for j in (0..buckets).rev() {
        tail[j] = tail[j].max(tail[j + 1]);
    }

    BumpProfile {
        table,
        tail,
        deriv_l1,
        deriv_sup,
    }
}

static PROFILE: Lazy<BumpProfile> = Lazy::new(build_profile);

pub fn profile() -> &'static BumpProfile {
    &PROFILE
}

impl BumpProfile {
    /// φ₁ at a real argument; 8-point Lagrange on the uniform table,
    /// identically 0 beyond the certified range.
    pub fn eval_real(&self, v: f64) -> Complex64 {
        if !(v.abs() < V_MAX - 1.0) {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (v + V_MAX) / V_SPACING;
        let center = pos.floor() as isize;
        let start = (center - 3).clamp(0, self.table.len() as isize - 8) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..8 {
            let xi = (start + i) as f64;
            let mut w = 1.0;
            for j in 0..8 {
                if j != i {
                    let xj = (start + j) as f64;
                    w *= (pos - xj) / (xi - xj);
                }
            }
            acc += self.table[start + i] * w;
        }
        acc
    }

    /// `∫_{|v| ≥ radius} |φ₁| dv` (certified upper estimate).
    pub fn tail_mass(&self, radius: f64) -> f64 {
        if radius <= 0.0 {
            return self.tail[0];
        }
        let j = radius.floor() as usize;
        if j >= self.tail.len() {
            return 0.0;
        }
        self.tail[j]
    }

    /// Smallest tabulated radius with tail mass ≤ tol (table edge if
    /// unattainable — the caller sees the honest residual via `tail_mass`).
    pub fn truncation_radius(&self, tol: f64) -> f64 {
        match self
            .tail
            .binary_search_by(|t| tol.partial_cmp(t).expect("finite tail"))
        {
            Ok(j) | Err(j) => (j.min(self.tail.len() - 1)) as f64,
        }
    }

    pub fn deriv_l1(&self, m: usize) -> f64 {
        self.deriv_l1[m]
    }

    /// Upper bound for the scaled mantissa `|φ₁(w)|·e^{-P(w)}` from
    /// integration by parts in u (decay in Re w, growth in Im w explicit).
    pub fn mantissa_bound(&self, w: Complex64) -> f64 {
        let mut best = self.deriv_l1[0] / (2.0 * PI);
        let re = w.re.abs();
        if re > 1.0 {
            let im = w.im.abs();
            for m in [2usize, 4, 6] {
                let mut num = 0.0;
                let mut binom = 1.0f64;
                for j in 0..=m {
                    // C(m, j)·‖η^{(j)}‖_∞·|Im w|^{m-j} over the 3/2-wide support.
                    num += binom * self.deriv_sup[j] * im.powi((m - j) as i32);
                    binom = binom * (m - j) as f64 / (j + 1) as f64;
                }
                best = best.min(1.5 * num / (2.0 * PI * re.powi(m as i32)));
            }
        }
        best
    }
}

/// `φ_ω` at a real argument, from the table: `|ω|·φ₁(ωζ)`.
pub fn phi_omega_real(omega: f64, zeta: f64) -> Complex64 {
    profile().eval_real(omega * zeta) * omega.abs()
}

/// Scaled evaluation of `φ₁` at a complex argument:
/// returns `(mantissa, exponent, mantissa_error)` with
/// `φ₁(w) = mantissa·e^{exponent}` — safe for arguments whose raw value
/// would overflow or underflow.
pub fn phi_unit_scaled(w: Complex64) -> (Complex64, f64, f64) {
    // P = max over u ∈ [1/2, 2] of -u·Im w, attained at an endpoint.
    let p = if w.im >= 0.0 { -0.5 * w.im } else { -2.0 * w.im };
    let mut prev: Option<Complex64> = None;
    let mut err = f64::INFINITY;
    let mut nodes = 128usize;
    let mut value = Complex64::new(0.0, 0.0);
    while nodes <= 4096 {
        let rule = gl_rule(nodes);
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, weight) in rule.iter() {
            // Map [-1, 1] to [1/2, 2].
            let u = 1.25 + 0.75 * node;
            let arg = Complex64::new(-u * w.im - p, u * w.re);
            acc += eta(u) * arg.exp() * (0.75 * weight);
        }
        value = acc / (2.0 * PI);
        if let Some(last) = prev {
            err = (value - last).norm();
            if err <= 1e-11 * value.norm().max(1e-280) {
                return (value, p, err);
            }
        }
        prev = Some(value);
        nodes *= 2;
    }
    // Not converged: cap the reported magnitude with the analytic bound so
    // dead-zone noise cannot masquerade as signal.
    let cap = profile().mantissa_bound(w);
    if value.norm() > cap {
        value = value / value.norm() * cap;
        err = cap;
    }
    (value, p, err)
}

/// A fixed-height horizontal line `Im(arg) = c` gets its own table:
/// `φ₁(x + ic) = e^{P}·ψ(x)` with ψ sampled by one FFT of `η(u)e^{-uc-P}`.
pub struct LineProfile {
    table: Vec<Complex64>,
    pub exponent: f64,
}

impl LineProfile {
    pub fn new(c: f64) -> Result<LineProfile> {
        if !c.is_finite() {
            return Err(Error::domain(
                "oscillatory",
                "line_profile",
                "line height must be finite",
            ));
        }
        let p = if c >= 0.0 { -0.5 * c } else { -2.0 * c };
        let grid = Grid::new(TABLE_POINTS, TABLE_HALF_LENGTH)?;
        let field = Field::from_fn(grid, |u| {
            let e = eta(u);
            if e == 0.0 {
                0.0
            } else {
                e * (-u * c - p).exp()
            }
        });
        let hat = field.transform()?;
        let mut table = vec![Complex64::new(0.0, 0.0); TABLE_POINTS];
        for (k, &v) in hat.values().iter().enumerate() {
            let freq = grid.signed_frequency(k);
            let idx = ((freq + V_MAX) / V_SPACING).round() as usize;
            table[idx] = v.conj() / (2.0 * PI);
        }
        Ok(LineProfile { table, exponent: p })
    }

    /// Scaled value: `φ₁(x + ic) = eval(x)·e^{exponent}`.
    pub fn eval(&self, x: f64) -> Complex64 {
        if !(x.abs() < V_MAX - 1.0) {
            return Complex64::new(0.0, 0.0);
        }
        let pos = (x + V_MAX) / V_SPACING;
        let center = pos.floor() as isize;
        let start = (center - 3).clamp(0, self.table.len() as isize - 8) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..8 {
            let xi = (start + i) as f64;
            let mut w = 1.0;
            for j in 0..8 {
                if j != i {
                    let xj = (start + j) as f64;
                    w *= (pos - xj) / (xi - xj);
                }
            }
            acc += self.table[start + i] * w;
        }
        acc
    }
}
