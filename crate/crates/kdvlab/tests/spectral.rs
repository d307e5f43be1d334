//! Oracle tests for the transform, multiplier calculus, and norms.

use kdvlab::quad::adaptive_real;
use kdvlab::testkit::{default_grid, SchwartzFamily};
use kdvlab::{Field, Grid, Multiplier, WeightFunction};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Closed-form transform of the unit Gaussian: `exp(-x²/2) ↦ √(2π)·exp(-ξ²/2)`.
#[test]
fn gaussian_transform_matches_closed_form() {
    let g = Grid::new(4096, 40.0).unwrap();
    let f = Field::from_fn(g, |x| (-x * x / 2.0).exp());
    let hat = f.transform().unwrap();
    let peak = (2.0 * PI).sqrt();
    let mut worst_vs_peak: f64 = 0.0;
    let mut worst_pointwise: f64 = 0.0;
    for (k, v) in hat.values().iter().enumerate() {
        let xi = g.signed_frequency(k);
        if xi.abs() > 10.0 {
            continue;
        }
        let truth = peak * (-xi * xi / 2.0).exp();
        let err = (v - Complex64::new(truth, 0.0)).norm();
        worst_vs_peak = worst_vs_peak.max(err / peak);
        // Pointwise relative error is meaningful only while the true value
        // sits above the transform's round-off floor (~1e-14·peak).
        if xi.abs() <= 4.0 {
            worst_pointwise = worst_pointwise.max(err / truth);
        }
    }
    assert!(worst_vs_peak < 1e-10, "peak-relative error {worst_vs_peak:e}");
    assert!(worst_pointwise < 1e-10, "pointwise error {worst_pointwise:e}");
}

/// Fractional-derivative semigroup: D^{1/2}D^{1/2} = D^1.
#[test]
fn half_derivatives_compose_to_one() {
    let fam = SchwartzFamily::new(default_grid(), 11);
    let d_half = Multiplier::fractional_derivative(0.5).unwrap();
    let d_one = Multiplier::fractional_derivative(1.0).unwrap();
    for f in fam.members(4) {
        let twice = f.apply(&d_half).unwrap().apply(&d_half).unwrap();
        let once = f.apply(&d_one).unwrap();
        let rel = twice.sub(&once).unwrap().l2_norm() / once.l2_norm();
        assert!(rel < 1e-12, "semigroup defect {rel:e}");
    }
}

/// apply(m₁, apply(m₂, f)) = apply(m₁·m₂, f) through the intermediate
/// transform round trip.
#[test]
fn multiplier_composition_is_tight() {
    let fam = SchwartzFamily::new(default_grid(), 23);
    let m1 = Multiplier::bessel_potential(0.75);
    let m2 = Multiplier::airy(0.3).compose(&Multiplier::fractional_derivative(0.25).unwrap());
    for f in fam.members(3) {
        let sequential = f.apply(&m2).unwrap().apply(&m1).unwrap();
        let fused = f.apply(&m1.compose(&m2)).unwrap();
        let rel = sequential.sub(&fused).unwrap().l2_norm() / fused.l2_norm();
        assert!(rel < 1e-13, "composition defect {rel:e}");
    }
}

#[test]
fn airy_group_law() {
    let fam = SchwartzFamily::new(default_grid(), 5);
    let f = fam.member(0);
    for &(t, s) in &[(0.1, 0.2), (1.0, -0.4), (3.0, 2.0)] {
        let two_step = f.airy_group(s).unwrap().airy_group(t).unwrap();
        let one_step = f.airy_group(t + s).unwrap();
        let rel = two_step.sub(&one_step).unwrap().l2_norm() / f.l2_norm();
        assert!(rel < 1e-12, "group law defect {rel:e} at t={t}, s={s}");
    }
}

fn commuted_x_residual(grid: Grid, sigma: f64, t: f64) -> f64 {
    let f = Field::from_fn(grid, |x| (-x * x / (2.0 * sigma * sigma)).exp());
    // x·U(t)f
    let lhs = f
        .airy_group(t)
        .unwrap()
        .map_at_points(|x, v| x * v)
        .unwrap();
    // U(t)(3t·f'' + x·f)
    let f_xx = f.apply(&Multiplier::derivative(2)).unwrap();
    let inner = f_xx
        .scale_real(3.0 * t)
        .add(&f.map_at_points(|x, v| x * v).unwrap())
        .unwrap();
    let rhs = inner.airy_group(t).unwrap();
    let scale = f.sobolev_norm(2.0).unwrap()
        + f.weighted_l2(&WeightFunction::abs_pow(2.0).unwrap()).unwrap();
    lhs.sub(&rhs).unwrap().l2_norm() / scale
}

/// Commuting x past the free group: x·U(t)f = U(t)(3t·∂²ₓf + x·f).
#[test]
fn x_commutes_past_the_group() {
    let res = commuted_x_residual(Grid::new(2048, 40.0).unwrap(), 2.0, 0.5);
    assert!(res < 1e-8, "commutation residual {res:e}");
}

/// The residual above is a pure discretization artifact and must fall at
/// spectral rate under refinement (data chosen so the coarse grid truncates
/// real spectral mass).
#[test]
fn x_commutation_residual_refines_spectrally() {
    let res: Vec<f64> = [128usize, 256, 512]
        .iter()
        .map(|&n| commuted_x_residual(Grid::new(n, 40.0).unwrap(), 0.5, 0.02))
        .collect();
    assert!(
        res[1] < res[0] / 100.0,
        "not spectral: {res:?}"
    );
    assert!(res[2] < res[1] / 10.0, "not spectral: {res:?}");
}

/// Weighted norm against an adaptive-quadrature oracle.
#[test]
fn weighted_l2_matches_quadrature() {
    let g = default_grid();
    let f = Field::from_fn(g, |x| (-x * x / 2.0).exp());
    let w = WeightFunction::japanese_pow(0.25).unwrap();
    let value = f.weighted_l2(&w).unwrap();
    let (oracle_sq, err) = adaptive_real(
        &|x: f64| (1.0 + x * x).powf(0.125) * (-x * x).exp(),
        -40.0,
        40.0,
        1e-13,
        4096,
    );
    assert!(err < 1e-12);
    let oracle = oracle_sq.sqrt();
    assert!(
        (value - oracle).abs() < 1e-8 * oracle,
        "weighted norm {value} vs oracle {oracle}"
    );
}

#[test]
fn weighted_l2_degenerate_cases() {
    let g = default_grid();
    let fam = SchwartzFamily::new(g, 2);
    let f = fam.member(0);
    // Zero exponent is the plain L² norm.
    let w0 = WeightFunction::abs_pow(0.0).unwrap();
    assert!((f.weighted_l2(&w0).unwrap() - f.l2_norm()).abs() < 1e-13);
    // Narrow unit-mass bump at x = 2 against |x|²: weight is ≈ 4 on the bump.
    let bump = Field::from_fn(g, |x| (-(x - 2.0).powi(2) / (2.0 * 0.05 * 0.05)).exp());
    let bump = bump.scale_real(1.0 / bump.l2_norm());
    let w2 = WeightFunction::abs_pow(2.0).unwrap();
    let v = bump.weighted_l2(&w2).unwrap();
    assert!((v - 2.0).abs() < 5e-3, "narrow-bump weighted norm {v}");
}

#[test]
fn sobolev_norm_basics() {
    let g = default_grid();
    let fam = SchwartzFamily::new(g, 31);
    let f = fam.member(0);
    assert!((f.sobolev_norm(0.0).unwrap() - f.l2_norm()).abs() < 1e-12);
    // Monotone in s.
    let mut prev = 0.0;
    for s in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let v = f.sobolev_norm(s).unwrap();
        assert!(v >= prev);
        prev = v;
    }
    // Single mode scales by ⟨ξ₁⟩^s.
    let xi1 = 16.0 * PI / g.half_length();
    let mode = Field::from_complex_fn(g, |x| Complex64::new(0.0, xi1 * x).exp());
    let s = 0.25;
    let expected = (1.0 + xi1 * xi1).powf(s / 2.0) * mode.l2_norm();
    assert!((mode.sobolev_norm(s).unwrap() - expected).abs() < 1e-10 * expected);
}

/// Plancherel across the reference family.
#[test]
fn plancherel_across_family() {
    let fam = SchwartzFamily::new(default_grid(), 97);
    for f in fam.members(6) {
        let hat = f.transform().unwrap();
        let lhs = hat.l2_norm() / (2.0 * PI).sqrt();
        assert!((lhs - f.l2_norm()).abs() <= 1e-10 * f.l2_norm());
    }
}
