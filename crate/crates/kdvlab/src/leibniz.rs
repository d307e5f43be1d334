//! Fractional product-rule defects, the bracket-weight/`D^{1/8}` commutator,
//! the Bessel-bracket convolution kernel with its decay certificates, and a
//! decay/regularity interpolation check.
//!
//! Each inequality is exposed as a computable defect/bound pair; "≲" is
//! operationalized by freezing the worst measured ratio over the seeded
//! reference family (see [`crate::constants`]).

use crate::cutoff::smoothstep;
use crate::dyadic::{seq_norm, DyadicPartition, SeqOuter};
use crate::error::{Error, Result};
use crate::quad::adaptive_real;
use crate::spectral::{Field, Grid, Multiplier, WeightFunction};
use num_complex::Complex64;

/// Defect/bound pair for one product-rule inequality.
#[derive(Clone, Copy, Debug)]
pub struct LeibnizReport {
    pub alpha: f64,
    pub defect_norm: f64,
    pub bound_value: f64,
    pub ratio: f64,
}

fn make_report(
    alpha: f64,
    defect_norm: f64,
    bound_value: f64,
    lead_norm: f64,
) -> Result<LeibnizReport> {
    if bound_value == 0.0 {
        // A vanishing bound forces a vanishing defect; round-off relative to
        // the lead term is the only slack granted.
        if defect_norm > 1e-12 * lead_norm {
            return Err(Error::structural(
                "leibniz",
                "report",
                format!("vanishing bound with defect {defect_norm:e}"),
            ));
        }
        return Ok(LeibnizReport {
            alpha,
            defect_norm,
            bound_value,
            ratio: 0.0,
        });
    }
    Ok(LeibnizReport {
        alpha,
        defect_norm,
        bound_value,
        ratio: defect_norm / bound_value,
    })
}

fn check_alpha(alpha: f64, operation: &'static str) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(
            "leibniz",
            operation,
            format!("fractional order must lie in (0,1), got {alpha}"),
        ));
    }
    Ok(())
}

/// Two-term defect `‖D^α(fg) - g·D^αf‖₂` against the banded-l¹ bound
/// `‖Q_N D^α g‖_{L^∞_x l¹_N}·‖f‖₂`.
pub fn leibniz_defect_two_term(f: &Field, g: &Field, alpha: f64) -> Result<LeibnizReport> {
    check_alpha(alpha, "two_term")?;
    let d = Multiplier::fractional_derivative(alpha)?;
    let lead = f.mul_pointwise(g)?.apply(&d)?;
    let lead_norm = lead.l2_norm();
    let defect = lead.sub(&g.mul_pointwise(&f.apply(&d)?)?)?.l2_norm();
    let part = DyadicPartition::new(f.grid())?;
    let dg_bands = part.project_all(&g.apply(&d)?)?;
    let bound = seq_norm(1.0, SeqOuter::Linf, &dg_bands)? * f.l2_norm();
    make_report(alpha, defect, bound, lead_norm)
}

/// Three-term defect `‖D^α(fg) - g·D^αf - f·D^αg‖_p` against the band route
/// `(‖Q_N D^α g‖_{L^∞_x l²_N} + ‖D^α g‖_∞)·‖f‖_p`.
pub fn leibniz_band_route(f: &Field, g: &Field, alpha: f64, p: f64) -> Result<LeibnizReport> {
    check_alpha(alpha, "band_route")?;
    let d = Multiplier::fractional_derivative(alpha)?;
    let dg = g.apply(&d)?;
    let (defect_field, lead_norm) = three_term_defect(f, g, &d, p)?;
    let defect = defect_field.lp_norm(p)?;
    let part = DyadicPartition::new(f.grid())?;
    let bands = part.project_all(&dg)?;
    let bound = (seq_norm(2.0, SeqOuter::Linf, &bands)? + dg.max_abs()) * f.lp_norm(p)?;
    make_report(alpha, defect, bound, lead_norm)
}

fn three_term_defect(f: &Field, g: &Field, d: &Multiplier, p: f64) -> Result<(Field, f64)> {
    let lead = f.mul_pointwise(g)?.apply(d)?;
    let lead_norm = lead.lp_norm(p)?;
    let defect = lead
        .sub(&g.mul_pointwise(&f.apply(d)?)?)?
        .sub(&f.mul_pointwise(&g.apply(d)?)?)?;
    Ok((defect, lead_norm))
}

/// Classical split: `‖D^α(fg) - D^α(f)g - f·D^α(g)‖_p` against
/// `‖D^{α₁}g‖_{p₁}·‖D^{α₂}f‖_{p₂}` with `α = α₁+α₂`, `1/p = 1/p₁ + 1/p₂`
/// (the `α₁ = α`, `p₁ = ∞`, `p = p₂` endpoint is allowed).
#[allow(clippy::too_many_arguments)]
pub fn leibniz_defect_three_term(
    f: &Field,
    g: &Field,
    alpha: f64,
    alpha1: f64,
    alpha2: f64,
    p: f64,
    p1: f64,
    p2: f64,
) -> Result<LeibnizReport> {
    check_alpha(alpha, "three_term")?;
    if (alpha1 + alpha2 - alpha).abs() > 1e-12 || alpha1 < 0.0 || alpha2 < 0.0 {
        return Err(Error::domain(
            "leibniz",
            "three_term",
            format!("order split {alpha1} + {alpha2} != {alpha}"),
        ));
    }
    let endpoint = p1.is_infinite();
    if endpoint {
        if (alpha1 - alpha).abs() > 1e-12 || (p - p2).abs() > 1e-12 {
            return Err(Error::domain(
                "leibniz",
                "three_term",
                "p₁ = ∞ requires α₁ = α and p = p₂",
            ));
        }
    } else if (1.0 / p - 1.0 / p1 - 1.0 / p2).abs() > 1e-12 {
        return Err(Error::domain(
            "leibniz",
            "three_term",
            format!("Hölder relation violated: 1/{p} != 1/{p1} + 1/{p2}"),
        ));
    }
    if !(p > 1.0) || !(p2 > 1.0) || (!endpoint && !(p1 > 1.0)) {
        return Err(Error::domain(
            "leibniz",
            "three_term",
            "Lebesgue exponents must exceed 1",
        ));
    }
    let d = Multiplier::fractional_derivative(alpha)?;
    let (defect_field, lead_norm) = three_term_defect(f, g, &d, p)?;
    let defect = defect_field.lp_norm(p)?;
    let bound = g
        .apply(&Multiplier::fractional_derivative(alpha1)?)?
        .lp_norm(p1)?
        * f.apply(&Multiplier::fractional_derivative(alpha2)?)?
            .lp_norm(p2)?;
    make_report(alpha, defect, bound, lead_norm)
}

/// `‖w·D^{1/8}h - D^{1/8}(w·h)‖₂` with `w = (1+ξ²)^{-1/8}` acting by
/// pointwise multiplication in the field's own variable (the dual picture:
/// the field plays the role of a transform, its variable the role of ξ).
pub fn commutator_norm(h: &Field) -> Result<f64> {
    let d = Multiplier::fractional_derivative(0.125)?;
    let w = |x: f64| (1.0 + x * x).powf(-0.125);
    let h = h.to_physical();
    let wh = h.map_at_points(|x, v| v * w(x))?;
    let lhs = h.apply(&d)?.map_at_points(|x, v| v * w(x))?;
    Ok(lhs.sub(&wh.apply(&d)?)?.l2_norm())
}

/// The convolution kernel of the bracket weight: samples of
/// `k(x) = (2π)⁻¹∫(1+ξ²)^{-1/8} e^{ixξ} dξ` on a fine grid, computed as the
/// inverse transform of the tapered symbol.
///
/// The symbol decays only like `|ξ|^{-1/4}`, so a hard cutoff would ring;
/// a smooth taper on `|ξ| ∈ [Λ/2, 15Λ/16]` moves the truncation error below
/// the two-resolution checks instead.
#[derive(Clone, Debug)]
pub struct BesselKernel {
    samples: Field,
    cutoff: f64,
}

impl BesselKernel {
    pub fn compute(num_points: usize, cutoff: f64) -> Result<BesselKernel> {
        if !cutoff.is_finite() || cutoff < 64.0 {
            return Err(Error::domain(
                "leibniz",
                "bessel_kernel",
                format!("frequency cutoff must be >= 64, got {cutoff}"),
            ));
        }
        // Grid whose Nyquist frequency is exactly Λ: L = πn/(2Λ).
        let half_length = std::f64::consts::PI * num_points as f64 / (2.0 * cutoff);
        let grid = Grid::new(num_points, half_length)?;
        let taper_lo = 0.5 * cutoff;
        let taper_hi = 15.0 / 16.0 * cutoff;
        let hat = Field::from_frequency_fn(grid, |xi| {
            let s = (1.0 + xi * xi).powf(-0.125);
            let t = 1.0 - smoothstep((xi.abs() - taper_lo) / (taper_hi - taper_lo));
            Complex64::new(s * t, 0.0)
        });
        let samples = hat.inverse_transform()?;
        Ok(BesselKernel { samples, cutoff })
    }

    /// Reference resolution: Λ = 4096 on 2^19 points (box ≈ [-201, 201]).
    pub fn reference() -> Result<BesselKernel> {
        BesselKernel::compute(1 << 19, 4096.0)
    }

    pub fn samples(&self) -> &Field {
        &self.samples
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Max |Im k| (the kernel must be real: even real symbol).
    pub fn realness_defect(&self) -> f64 {
        self.samples.imag_linf()
    }

    /// Max |k(x) - k(-x)| over the grid's mirrored node pairs.
    pub fn evenness_defect(&self) -> f64 {
        let v = self.samples.values();
        let n = v.len();
        // Node j mirrors to node n-j (x = -L + jΔx ↦ L - jΔx ≡ -x mod 2L).
        let mut worst = 0.0f64;
        for j in 1..n {
            worst = worst.max((v[j].re - v[n - j].re).abs());
        }
        worst
    }

    /// `∫k dx` — exactly the symbol at ξ = 0, i.e. 1.
    pub fn integral(&self) -> f64 {
        let dx = self.samples.grid().spacing();
        self.samples.values().iter().map(|v| v.re).sum::<f64>() * dx
    }

    /// `sup |k(x)|·|x|^{3/4}·(1+x^{2n})` over `0.01 ≤ |x| ≤ 8`.
    pub fn sup_decay_product(&self, n: u32) -> Result<f64> {
        if n == 0 || n > 4 {
            return Err(Error::domain(
                "leibniz",
                "bessel_kernel",
                format!("decay order must lie in 1..=4, got {n}"),
            ));
        }
        let g = self.samples.grid();
        let mut sup = 0.0f64;
        for (j, v) in self.samples.values().iter().enumerate() {
            let x = g.point(j).abs();
            if (0.01..=8.0).contains(&x) {
                sup = sup.max(v.norm() * x.powf(0.75) * (1.0 + x.powi(2 * n as i32)));
            }
        }
        Ok(sup)
    }

    /// Least-squares fit of `k(x)·x^{3/4} = c₀ + c₁·x^{3/4}` over
    /// `|x| ∈ [0.03, 0.1]`, i.e. the small-x law plus its first correction
    /// (also of exponent 3/4, visible as the log-log slope of the residual).
    /// Below x ≈ 0.02 the frequency taper rings at the percent level, so the
    /// window sits just above and the fit extrapolates to the limit.
    fn small_x_fit(&self) -> (f64, f64) {
        let g = self.samples.grid();
        let (mut m, mut st, mut stt, mut sy, mut sty) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
        for (j, v) in self.samples.values().iter().enumerate() {
            let x = g.point(j).abs();
            if (0.03..=0.1).contains(&x) {
                let t = x.powf(0.75);
                let y = v.re * t;
                m += 1.0;
                st += t;
                stt += t * t;
                sy += y;
                sty += t * y;
            }
        }
        let det = m * stt - st * st;
        let c0 = (stt * sy - st * sty) / det;
        let c1 = (m * sty - st * sy) / det;
        (c0, c1)
    }

    /// The small-x constant `c₀ = lim_{x→0} k(x)·x^{3/4}`.
    pub fn small_x_constant(&self) -> f64 {
        self.small_x_fit().0
    }

    /// `∫|x|^{1/8}|k(x)|dx`: grid sum over `|x| > x₀` plus the analytic head
    /// `2[c₀·x₀^{3/8}/(3/8) + c₁·x₀^{9/8}/(9/8)]` from the fitted small-x
    /// model `k ≈ c₀x^{-3/4} + c₁` (the integrand looks singular at 0, where
    /// the grid both undersamples and carries taper ringing).
    pub fn moment_eighth(&self) -> f64 {
        let x0 = 0.05;
        let g = self.samples.grid();
        let dx = g.spacing();
        let mut acc = 0.0;
        for (j, v) in self.samples.values().iter().enumerate() {
            let x = g.point(j).abs();
            if x > x0 {
                acc += x.powf(0.125) * v.norm();
            }
        }
        let (c0, c1) = self.small_x_fit();
        let head = 2.0 * (c0 * x0.powf(0.375) / 0.375 + c1 * x0.powf(1.125) / 1.125);
        acc * dx + head
    }
}

/// Decay/moment certificates with two-resolution convergence estimates.
#[derive(Clone, Copy, Debug)]
pub struct BesselReport {
    pub decay_order_n: u32,
    pub sup_product: f64,
    pub moment: f64,
    pub small_x_constant: f64,
    pub integral: f64,
    /// Relative moment change when the box doubles at fixed cutoff
    /// (x-periodization error).
    pub aliasing_change: f64,
    /// Relative moment change when the cutoff doubles at fixed box
    /// (ξ-truncation error).
    pub truncation_change: f64,
    pub realness_defect: f64,
    pub evenness_defect: f64,
}

pub fn bessel_kernel_checks(n: u32) -> Result<BesselReport> {
    let base = BesselKernel::reference()?;
    let wider_box = BesselKernel::compute(1 << 20, 4096.0)?;
    let higher_cut = BesselKernel::compute(1 << 20, 8192.0)?;
    let moment = base.moment_eighth();
    let aliasing_change = (wider_box.moment_eighth() - moment).abs() / moment;
    let truncation_change = (higher_cut.moment_eighth() - moment).abs() / moment;
    let report = BesselReport {
        decay_order_n: n,
        sup_product: base.sup_decay_product(n)?,
        moment,
        small_x_constant: base.small_x_constant(),
        integral: base.integral(),
        aliasing_change,
        truncation_change,
        realness_defect: base.realness_defect(),
        evenness_defect: base.evenness_defect(),
    };
    if aliasing_change > 0.01 || truncation_change > 0.01 {
        return Err(Error::accuracy(
            "leibniz",
            "bessel_kernel_checks",
            format!(
                "kernel moment not converged: aliasing {aliasing_change:e}, truncation {truncation_change:e}"
            ),
            moment,
        ));
    }
    Ok(report)
}

/// Modified Bessel function of the second kind via the integral
/// representation `K_ν(x) = ∫₀^∞ e^{-x·cosh u} cosh(νu) du` (x > 0).
pub fn bessel_k(nu: f64, x: f64) -> f64 {
    // e^{-x cosh u} is negligible once x·cosh(u) > 750.
    let u_max = (2.0 * 750.0 / x).ln().max(1.0);
    let (v, _err) = adaptive_real(
        &|u: f64| (-x * u.cosh()).exp() * (nu * u).cosh(),
        0.0,
        u_max,
        1e-13,
        512,
    );
    v
}

/// Interpolation between decay and regularity:
/// `‖⟨D⟩^{θa}(w^{(1-θ)b} f)‖₂ / (‖w^b f‖₂^{1-θ}·‖⟨D⟩^a f‖₂^θ)`.
pub fn interpolation_check(
    f: &Field,
    w: &WeightFunction,
    a: f64,
    b: f64,
    theta: f64,
) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(
            "leibniz",
            "interpolation_check",
            format!("orders must be positive, got a={a}, b={b}"),
        ));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain(
            "leibniz",
            "interpolation_check",
            format!("interpolation parameter must lie in [0,1], got {theta}"),
        ));
    }
    // The statement needs w bounded below on the domain.
    let g = f.grid();
    let mut w_min = f64::INFINITY;
    for j in 0..g.num_points() {
        w_min = w_min.min(w.eval(g.point(j)));
    }
    if !(w_min > 0.0) {
        return Err(Error::domain(
            "leibniz",
            "interpolation_check",
            format!("weight must be bounded below by a positive constant (min {w_min})"),
        ));
    }
    let weighted = f.map_at_points(|x, v| v * w.eval(x).powf((1.0 - theta) * b))?;
    let lhs = weighted.sobolev_norm(theta * a)?;
    let decay = f.map_at_points(|x, v| v * w.eval(x).powf(b))?.l2_norm();
    let reg = f.sobolev_norm(a)?;
    let rhs = decay.powf(1.0 - theta) * reg.powf(theta);
    if rhs == 0.0 {
        return Ok(0.0);
    }
    Ok(lhs / rhs)
}
