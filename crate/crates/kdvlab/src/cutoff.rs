//! The `C^∞` cutoff zoo.
//!
//! Everything is generated from the compactly supported bump
//! `χ(x) = exp(-1/(1-x²))` on (-1, 1): a smoothed step `ρ` (the normalized
//! antiderivative of `χ`, rescaled to rise on [0, 1]), the dyadic bump
//! `η(ξ) = ρ(log₂ξ + 1) - ρ(log₂ξ)` supported in [1/2, 2] whose dyadic
//! translates telescope to 1 on (0, ∞), and the low-pass / wide-bump symbols
//! used by the auxiliary projection family.
//!
//! The step is tabulated once (cumulative Gauss–Legendre panels, then local
//! 8-point interpolation); all evaluations are pure functions of their input,
//! so telescoping identities cancel exactly in floating point.

use crate::quad::gl_rule;
use once_cell::sync::Lazy;

/// `exp(-1/(1-x²))` on (-1, 1), identically 0 outside.
pub fn chi(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp()
    } else {
        0.0
    }
}

/// Uniform-grid table with local 8-point Lagrange evaluation.
struct UniformTable {
    a: f64,
    h: f64,
    values: Vec<f64>,
}

impl UniformTable {
    fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let pos = (x - self.a) / self.h;
        let i = pos.floor() as isize;
        let lo = (i - 3).clamp(0, n as isize - 8) as usize;
        // Lagrange interpolation on the 8-point stencil.
        let mut acc = 0.0;
        for j in 0..8 {
            let xj = lo as f64 + j as f64;
            let mut lj = 1.0;
            for m in 0..8 {
                if m != j {
                    let xm = lo as f64 + m as f64;
                    lj *= (pos - xm) / (xj - xm);
                }
            }
            acc += lj * self.values[lo + j];
        }
        acc
    }
}

/// Cumulative integral table of `f` over [a, b] with `n` panels (GL-8 each),
/// rescaled so the final entry equals `total`.
fn cumulative_table(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize, total: f64) -> UniformTable {
    let rule = gl_rule(8);
    let h = (b - a) / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for i in 0..n {
        let x0 = a + i as f64 * h;
        let c = x0 + 0.5 * h;
        let hw = 0.5 * h;
        let mut s = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * f(c + hw * x);
        }
        acc += s * hw;
        values.push(acc);
    }
    let scale = total / acc;
    for v in &mut values {
        *v *= scale;
    }
    UniformTable { a, h, values }
}

static STEP: Lazy<UniformTable> = Lazy::new(|| cumulative_table(chi, -1.0, 1.0, 4096, 1.0));

/// Smoothed step from `χ`: identically 0 for `u ≤ 0`, identically 1 for
/// `u ≥ 1`, strictly increasing and `C^∞` in between, symmetric about 1/2.
pub fn smoothstep(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        STEP.eval(2.0 * u - 1.0).clamp(0.0, 1.0)
    }
}

/// Dyadic bump: support exactly [1/2, 2], `η(1) = 1`, and
/// `Σ_N η(ξ/2^N) = 1` for every `ξ > 0` (the sum telescopes).
pub fn eta(x: f64) -> f64 {
    if x <= 0.5 || x >= 2.0 {
        return 0.0;
    }
    let a = x.log2();
    (smoothstep(a + 1.0) - smoothstep(a)).max(0.0)
}

/// Even low-pass symbol: 1 for |x| ≤ 1/8, 0 for |x| ≥ 1/4. Equals the
/// telescoped sum of dyadic bumps over scales ≤ -3.
pub fn low_pass(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        return 1.0;
    }
    1.0 - smoothstep(ax.log2() + 3.0)
}

/// Even wide low-pass: 1 for |x| ≤ 100, 0 for |x| ≥ 200.
pub fn wide_low_pass(x: f64) -> f64 {
    let ax = x.abs();
    if ax == 0.0 {
        return 1.0;
    }
    1.0 - smoothstep((ax / 100.0).log2())
}

/// Even wide bump: 1 on 1/4 ≤ |x| ≤ 4, support in 1/8 ≤ |x| ≤ 8.
pub fn wide_bump(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 0.125 || ax >= 8.0 {
        return 0.0;
    }
    let a = ax.log2();
    smoothstep(a + 3.0) * (1.0 - smoothstep(a - 2.0))
}

// Concave saturation profile for the truncated weights: g(v) = v for
// v ≤ 1/3, g(v) = 1 for v ≥ 5/3, g' = 1 - smoothstep in between, so g is
// concave, g(v) ≤ min(v, 1), and c ↦ c·g(y/c) is nondecreasing in c.
static SATURATOR: Lazy<UniformTable> = Lazy::new(|| {
    let a = 1.0 / 3.0;
    let b = 5.0 / 3.0;
    // ∫ (1 - ρ((v-a)/(b-a))) dv over [a,b] is (b-a)/2 = 2/3 by symmetry of ρ,
    // so the normalization only removes quadrature drift and g'(a⁺) stays 1.
    cumulative_table(move |v| 1.0 - smoothstep((v - a) / (b - a)), a, b, 2048, 2.0 / 3.0)
});

/// Concave `C^∞` saturator: identity below 1/3, constant 1 above 5/3.
pub fn saturator(v: f64) -> f64 {
    let a = 1.0 / 3.0;
    if v <= a {
        v.max(0.0)
    } else if v >= 5.0 / 3.0 {
        1.0
    } else {
        (a + SATURATOR.eval(v)).clamp(0.0, 1.0)
    }
}
