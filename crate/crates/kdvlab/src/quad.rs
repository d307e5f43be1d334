//! Gauss–Legendre quadrature: cached rules, panel sums, and a worst-first
//! adaptive driver for complex-valued integrands.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct GlRule {
    /// Nodes on the reference interval [-1, 1], ascending.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GlRule {
    /// (node, weight) pairs on the reference interval.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

static RULES: Lazy<Mutex<HashMap<usize, Arc<GlRule>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Cached Gauss–Legendre rule with `n` nodes (Newton iteration on P_n).
pub fn gl_rule(n: usize) -> Arc<GlRule> {
    assert!(n >= 2, "quadrature rule needs at least 2 nodes");
    let mut cache = RULES.lock().unwrap();
    if let Some(r) = cache.get(&n) {
        return Arc::clone(r);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Standard initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    let rule = Arc::new(GlRule { nodes, weights });
    cache.insert(n, Arc::clone(&rule));
    rule
}

/// ∫_a^b f with a single n-node rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let rule = gl_rule(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        s += w * f(c + h * x);
    }
    s * h
}

pub fn integrate_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let rule = gl_rule(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        s += f(c + h * x) * w;
    }
    s * h
}

/// One panel evaluated with an embedded 32/64 pair; the pair difference is the
/// error estimate.
fn panel_pair<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let hi = integrate_complex(f, a, b, 64);
    let lo = integrate_complex(f, a, b, 32);
    (hi, (hi - lo).norm())
}

#[derive(Debug, Clone, Copy)]
pub struct PanelSum {
    pub value: Complex64,
    /// Accumulated pair-difference error estimate.
    pub error: f64,
    pub panels: usize,
    pub converged: bool,
}

/// Worst-first adaptive bisection over an initial panel list.
///
/// Deterministic: the split order depends only on the panel errors, with the
/// leftmost worst panel split first on ties.
pub fn adaptive_complex_panels<F: Fn(f64) -> Complex64>(
    f: &F,
    initial: &[(f64, f64)],
    tol: f64,
    max_panels: usize,
) -> PanelSum {
    struct Seg {
        a: f64,
        b: f64,
        value: Complex64,
        error: f64,
    }
    let mut segs: Vec<Seg> = Vec::with_capacity(initial.len() * 2);
    for &(a, b) in initial {
        if b <= a {
            continue;
        }
        let (v, e) = panel_pair(f, a, b);
        segs.push(Seg { a, b, value: v, error: e });
    }
    let mut n_evals = segs.len();
    loop {
        let total_err: f64 = segs.iter().map(|s| s.error).sum();
        if total_err <= tol || n_evals >= max_panels {
            let value = segs.iter().map(|s| s.value).sum();
            return PanelSum { value, error: total_err, panels: n_evals, converged: total_err <= tol };
        }
        // Split the worst panel.
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            if s.error > segs[worst].error {
                worst = i;
            }
        }
        let Seg { a, b, .. } = segs[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval exhausted at f64 resolution; accept what we have.
            let value = segs.iter().map(|s| s.value).sum();
            return PanelSum { value, error: total_err, panels: n_evals, converged: false };
        }
        let (v1, e1) = panel_pair(f, a, mid);
        let (v2, e2) = panel_pair(f, mid, b);
        segs[worst] = Seg { a, b: mid, value: v1, error: e1 };
        segs.push(Seg { a: mid, b, value: v2, error: e2 });
        n_evals += 2;
    }
}

pub fn adaptive_complex<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> PanelSum {
    adaptive_complex_panels(f, &[(a, b)], tol, max_panels)
}

pub fn adaptive_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_panels: usize) -> (f64, f64) {
    let out = adaptive_complex(&|x| Complex64::new(f(x), 0.0), a, b, tol, max_panels);
    (out.value.re, out.error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_rule_integrates_polynomials_exactly() {
        // 8-node rule is exact through degree 15.
        let v = integrate(|x| x.powi(14) + 3.0 * x.powi(7) - x, 0.0, 1.0, 8);
        let exact = 1.0 / 15.0 + 3.0 / 8.0 - 0.5;
        assert!((v - exact).abs() < 1e-14, "got {v}, want {exact}");
    }

    #[test]
    fn gl_rule_weights_sum_to_interval_length() {
        for n in [2usize, 5, 16, 32, 64] {
            let r = gl_rule(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13);
            for w in &r.weights {
                assert!(*w > 0.0);
            }
            // Nodes strictly ascending in (-1, 1).
            for pair in r.nodes.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
    }

    #[test]
    fn adaptive_handles_oscillation() {
        // ∫_0^1 cos(200 x) dx = sin(200)/200
        let out = adaptive_complex(&|x| Complex64::new((200.0 * x).cos(), 0.0), 0.0, 1.0, 1e-12, 10_000);
        let exact = (200.0f64).sin() / 200.0;
        assert!(out.converged);
        assert!((out.value.re - exact).abs() < 1e-11);
    }

    #[test]
    fn adaptive_reports_nonconvergence_on_tiny_budget() {
        let out = adaptive_complex(&|x| Complex64::new((5000.0 * x).cos(), 0.0), 0.0, 3.0, 1e-14, 8);
        assert!(!out.converged);
    }
}
