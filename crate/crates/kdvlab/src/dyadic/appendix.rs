//! Auxiliary projection family behind the fractional product-rule proof and
//! the four paraproduct-type term bounds it reduces to.
//!
//! All symbols are built from the same cutoffs as the dyadic partition:
//! `p` (low-pass, `P_N = Σ_{j≤N-3} Q_j`), the wide low-pass `p̃` (≡1 on
//! [-100,100]), the wide bump `η̃` (≡1 on ±[1/4,4]), and the homogeneously
//! weighted variants `Ψ^j = |x|^{α_j}p`, `η^j = η/|x|^{α_j}`,
//! `η³ = |x|^α p̃`, `η⁴ = |x|^{α₁}η`, `η⁵ = |x|^{α₂}η`, plus the modulated
//! `η^{ν,j} = e^{iνx}η^j` and `η^{μ,j} = e^{iμx}x|x|^{-α_j}p`.

use super::{seq_norm, DyadicPartition, SeqOuter};
use crate::cutoff::{eta, low_pass, wide_bump, wide_low_pass};
use crate::error::{Error, Result};
use crate::spectral::{Field, Multiplier, Space};
use num_complex::Complex64;

/// Exponent split `α = α₁ + α₂` over a dyadic partition.
#[derive(Clone, Copy, Debug)]
pub struct AppendixOperatorFamily {
    partition: DyadicPartition,
    alpha1: f64,
    alpha2: f64,
}

fn sym_abs(x: f64) -> f64 {
    x.abs()
}

impl AppendixOperatorFamily {
    pub fn new(partition: DyadicPartition, alpha1: f64, alpha2: f64) -> Result<Self> {
        for a in [alpha1, alpha2] {
            if !a.is_finite() || !(0.0..=1.0).contains(&a) {
                return Err(Error::domain(
                    "dyadic",
                    "appendix_family",
                    format!("exponent parts must lie in [0,1], got {a}"),
                ));
            }
        }
        if alpha1 + alpha2 > 1.0 {
            return Err(Error::domain(
                "dyadic",
                "appendix_family",
                format!("total order {} exceeds 1", alpha1 + alpha2),
            ));
        }
        Ok(AppendixOperatorFamily {
            partition,
            alpha1,
            alpha2,
        })
    }

    pub fn partition(&self) -> DyadicPartition {
        self.partition
    }

    pub fn alpha(&self) -> f64 {
        self.alpha1 + self.alpha2
    }

    pub fn alpha_part(&self, j: usize) -> f64 {
        match j {
            1 => self.alpha1,
            2 => self.alpha2,
            _ => panic!("exponent slot must be 1 or 2"),
        }
    }

    /// `Ψ^j(x) = |x|^{α_j}·p(x)`, evaluated at the scaled variable.
    pub fn psi_symbol(&self, j: usize, x: f64) -> f64 {
        sym_abs(x).powf(self.alpha_part(j)) * low_pass(x)
    }

    /// `η^j(x) = (η(x)+η(-x))/|x|^{α_j}` (finite: η vanishes near 0).
    pub fn eta_over_weight_symbol(&self, j: usize, x: f64) -> f64 {
        let e = eta(x) + eta(-x);
        if e == 0.0 {
            0.0
        } else {
            e / sym_abs(x).powf(self.alpha_part(j))
        }
    }

    /// `η³(x) = |x|^α·p̃(x)`.
    pub fn eta3_symbol(&self, x: f64) -> f64 {
        sym_abs(x).powf(self.alpha()) * wide_low_pass(x)
    }

    /// `η⁴(x) = |x|^{α₁}·(η(x)+η(-x))`.
    pub fn eta4_symbol(&self, x: f64) -> f64 {
        sym_abs(x).powf(self.alpha1) * (eta(x) + eta(-x))
    }

    /// `η⁵(x) = |x|^{α₂}·(η(x)+η(-x))`.
    pub fn eta5_symbol(&self, x: f64) -> f64 {
        sym_abs(x).powf(self.alpha2) * (eta(x) + eta(-x))
    }

    /// Modulated `η^{ν,j}(x) = e^{iνx}·η^j(x)`.
    pub fn eta_modulated_symbol(&self, nu: f64, j: usize, x: f64) -> Complex64 {
        Complex64::new(0.0, nu * x).exp() * self.eta_over_weight_symbol(j, x)
    }

    /// Modulated `η^{μ,j}(x) = e^{iμx}·x·|x|^{-α_j}·p(x)`.
    pub fn mu_modulated_symbol(&self, mu: f64, j: usize, x: f64) -> Complex64 {
        if x == 0.0 {
            return Complex64::default();
        }
        Complex64::new(0.0, mu * x).exp()
            * (x * sym_abs(x).powf(-self.alpha_part(j)) * low_pass(x))
    }

    fn apply_scaled_symbol(
        &self,
        label: String,
        k: i32,
        sym: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f: &Field,
    ) -> Result<Field> {
        let scale = (-k as f64).exp2();
        f.apply(&Multiplier::from_real_symbol(label, move |xi| sym(xi * scale)))
    }

    /// Low-pass `P_k` (≡ the telescoped sum of bands `j ≤ k-3`).
    pub fn apply_low_pass(&self, k: i32, f: &Field) -> Result<Field> {
        self.apply_scaled_symbol(format!("P_{k}"), k, low_pass, f)
    }

    /// Wide low-pass `P̃_k`.
    pub fn apply_wide_low_pass(&self, k: i32, f: &Field) -> Result<Field> {
        self.apply_scaled_symbol(format!("Pw_{k}"), k, wide_low_pass, f)
    }

    /// Wide bump `Q̃_k`.
    pub fn apply_wide_bump(&self, k: i32, f: &Field) -> Result<Field> {
        self.apply_scaled_symbol(format!("Qw_{k}"), k, |x| wide_bump(x), f)
    }

    /// `Ψ^j_k`: weighted low-pass at scale k.
    pub fn apply_psi(&self, j: usize, k: i32, f: &Field) -> Result<Field> {
        let a = self.alpha_part(j);
        self.apply_scaled_symbol(
            format!("Psi{j}_{k}"),
            k,
            move |x| sym_abs(x).powf(a) * low_pass(x),
            f,
        )
    }

    /// `Q^5_k`: the `|x|^{α₂}`-weighted band, same symbol as the weighted
    /// dyadic projection with β = α₂.
    pub fn apply_q5(&self, k: i32, f: &Field) -> Result<Field> {
        self.partition.project_weighted(k, self.alpha2, f)
    }
}

/// Norms and ratios for the four paraproduct-type terms.
#[derive(Clone, Debug)]
pub struct AppendixReport {
    /// `L^p` norms of the four term-type sums.
    pub terms: [f64; 4],
    /// `‖f‖_p · ‖Q_k D^α g‖_{L^∞_x l²_k}`.
    pub bound: f64,
    /// `terms[i] / bound`.
    pub ratios: [f64; 4],
    /// Maximal-route bound for term 1: `‖Mf‖_p · ‖Q_k D^α g‖_{L^∞_x l²_k}`.
    pub maximal_bound: f64,
    pub maximal_ratio: f64,
}

/// Evaluate the four term types
///   (1) `Σ_k Q_k(Q_k(f)·Q_k(D^α g))`
///   (2) `Σ_k Q_k(Ψ¹_k(f)·Q_k(D^α g))`
///   (3) `Σ_k Q_k(Q_k(f)·Ψ²_k(D^α g))`
///   (4) `Σ_k Q_k(f)·Q_k(D^α g)`
/// over the resolvable band range and report each `L^p` norm against
/// `‖f‖_p·‖Q_k(D^α g)‖_{L^∞l²_k}`, plus the maximal-function route for (1).
pub fn appendix_term_bounds(
    fam: &AppendixOperatorFamily,
    f: &Field,
    g: &Field,
    p: f64,
) -> Result<AppendixReport> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::domain(
            "dyadic",
            "appendix_term_bounds",
            format!("Lebesgue exponent must satisfy 1 < p < inf, got {p}"),
        ));
    }
    let part = fam.partition();
    if f.grid() != part.grid() || g.grid() != part.grid() {
        return Err(Error::structural(
            "dyadic",
            "appendix_term_bounds",
            "fields must live on the family's grid",
        ));
    }
    let dg = g.apply(&Multiplier::fractional_derivative(fam.alpha())?)?;

    let grid = part.grid();
    let mut sums = [
        Field::zeros(grid, Space::Physical),
        Field::zeros(grid, Space::Physical),
        Field::zeros(grid, Space::Physical),
        Field::zeros(grid, Space::Physical),
    ];
    let mut dg_bands = Vec::new();
    for k in part.bands() {
        let qf = part.project(k, f)?;
        let qdg = part.project(k, &dg)?;
        let psif = fam.apply_psi(1, k, f)?;
        let psidg = fam.apply_psi(2, k, &dg)?;
        let prods = [
            qf.mul_pointwise(&qdg)?,
            psif.mul_pointwise(&qdg)?,
            qf.mul_pointwise(&psidg)?,
        ];
        for (i, prod) in prods.iter().enumerate() {
            sums[i] = sums[i].add(&part.project(k, prod)?)?;
        }
        sums[3] = sums[3].add(&prods[0])?;
        dg_bands.push(qdg);
    }

    let mut terms = [0.0f64; 4];
    for (t, s) in terms.iter_mut().zip(&sums) {
        *t = s.lp_norm(p)?;
    }
    let band_factor = seq_norm(2.0, SeqOuter::Linf, &dg_bands)?;
    let bound = f.lp_norm(p)? * band_factor;
    let maximal_bound = super::maximal(f)?.lp_norm(p)? * band_factor;
    let safe = |b: f64| if b == 0.0 { f64::INFINITY } else { b };
    let mut ratios = [0.0f64; 4];
    for (r, t) in ratios.iter_mut().zip(&terms) {
        *r = if *t == 0.0 { 0.0 } else { *t / safe(bound) };
    }
    let maximal_ratio = if terms[0] == 0.0 {
        0.0
    } else {
        terms[0] / safe(maximal_bound)
    };
    Ok(AppendixReport {
        terms,
        bound,
        ratios,
        maximal_bound,
        maximal_ratio,
    })
}
