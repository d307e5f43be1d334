//! Smooth dyadic (Littlewood–Paley) machinery: the band partition and its
//! projections `Q_N`, the homogeneously weighted variant, sequence norms,
//! a dyadic-radius maximal function, and the auxiliary projection family
//! behind the product-rule term bounds.

mod appendix;

pub use appendix::{appendix_term_bounds, AppendixOperatorFamily, AppendixReport};

use crate::cutoff::eta;
use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, Multiplier, Space};
use std::f64::consts::PI;

/// Symmetrized band symbol at scale `n`: `η(ξ/2ⁿ) + η(-ξ/2ⁿ)`.
pub fn band_symbol(n: i32, xi: f64) -> f64 {
    let s = (-n as f64).exp2();
    eta(xi * s) + eta(-xi * s)
}

/// The dyadic range a grid can honestly resolve, plus the projections on it.
///
/// Band `N` carries `|ξ| ∈ [2^{N-1}, 2^{N+1}]`. The resolvable range keeps
/// the lowest band a few frequency bins off zero and the highest fully below
/// the grid's edge; everything outside is refused rather than aliased.
/// Construction asserts the partition identity
/// `Σ_N [η(ξ/2^N) + η(-ξ/2^N)] = 1` on the annulus (it telescopes, so the
/// measured defect is round-off, not quadrature error).
#[derive(Clone, Copy, Debug)]
pub struct DyadicPartition {
    grid: Grid,
    n_min: i32,
    n_max: i32,
    partition_defect: f64,
}

impl DyadicPartition {
    pub fn new(grid: Grid) -> Result<DyadicPartition> {
        let n_min = (2.0 - (grid.half_length() / PI).log2()).ceil() as i32;
        let n_max = (grid.max_active_frequency().log2() - 1.0).floor() as i32;
        if n_max < n_min {
            return Err(Error::range(
                "dyadic",
                "partition",
                format!(
                    "grid resolves no complete dyadic band (n_min = {n_min}, n_max = {n_max})"
                ),
            ));
        }
        let lo = (n_min as f64).exp2();
        let hi = (n_max as f64).exp2();
        let mut defect = 0.0f64;
        for k in 0..grid.num_points() {
            let xi = grid.frequency(k).abs();
            if xi >= lo && xi <= hi {
                let s: f64 = (n_min..=n_max).map(|n| band_symbol(n, xi)).sum();
                defect = defect.max((s - 1.0).abs());
            }
        }
        if defect > 1e-12 {
            return Err(Error::structural(
                "dyadic",
                "partition",
                format!("partition of unity defect {defect:e} on the annulus"),
            ));
        }
        Ok(DyadicPartition {
            grid,
            n_min,
            n_max,
            partition_defect: defect,
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn n_min(&self) -> i32 {
        self.n_min
    }

    pub fn n_max(&self) -> i32 {
        self.n_max
    }

    pub fn bands(&self) -> impl Iterator<Item = i32> {
        self.n_min..=self.n_max
    }

    /// Measured partition defect on the annulus (construction-time check).
    pub fn partition_defect(&self) -> f64 {
        self.partition_defect
    }

    fn check_band(&self, n: i32, operation: &'static str) -> Result<()> {
        if n < self.n_min || n > self.n_max {
            return Err(Error::range(
                "dyadic",
                operation,
                format!(
                    "band {n} outside the resolvable range [{}, {}]",
                    self.n_min, self.n_max
                ),
            ));
        }
        Ok(())
    }

    /// `Q_N f = ((η(ξ/2^N) + η(-ξ/2^N)) f̂)^∨`.
    pub fn project(&self, n: i32, f: &Field) -> Result<Field> {
        self.check_band(n, "project")?;
        f.apply(&Multiplier::from_real_symbol(format!("Q_{n}"), move |xi| {
            band_symbol(n, xi)
        }))
    }

    /// Weighted band projection: symbol `|ξ/2^N|^β·(η(ξ/2^N) + η(-ξ/2^N))`.
    /// β = 0 reduces exactly to [`DyadicPartition::project`].
    pub fn project_weighted(&self, n: i32, beta: f64, f: &Field) -> Result<Field> {
        self.check_band(n, "project_weighted")?;
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::domain(
                "dyadic",
                "project_weighted",
                format!("weight exponent must be nonnegative, got {beta}"),
            ));
        }
        let scale = (-n as f64).exp2();
        f.apply(&Multiplier::from_real_symbol(
            format!("Q_{n}^[{beta}]"),
            move |xi| (xi * scale).abs().powf(beta) * band_symbol(n, xi),
        ))
    }

    /// All resolvable band projections of `f`, lowest band first.
    pub fn project_all(&self, f: &Field) -> Result<Vec<Field>> {
        self.bands().map(|n| self.project(n, f)).collect()
    }
}

/// Outer spatial norm used by [`seq_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqOuter {
    L2,
    Linf,
}

/// `‖ ‖b_N(x)‖_{l^p_N} ‖_{outer,x}`: pointwise sequence norm over the band
/// index, then the outer x-norm. Pass `f64::INFINITY` for `p = ∞`.
pub fn seq_norm(p: f64, outer: SeqOuter, bands: &[Field]) -> Result<f64> {
    if bands.is_empty() {
        return Err(Error::domain(
            "dyadic",
            "seq_norm",
            "empty band family",
        ));
    }
    if !(p >= 1.0) {
        return Err(Error::domain(
            "dyadic",
            "seq_norm",
            format!("sequence exponent must satisfy 1 <= p <= inf, got {p}"),
        ));
    }
    let first = &bands[0];
    for b in bands {
        if b.grid() != first.grid() || b.space() != first.space() {
            return Err(Error::structural(
                "dyadic",
                "seq_norm",
                "band family mixes grids or spaces",
            ));
        }
    }
    let n = first.grid().num_points();
    let mut pointwise = vec![0.0f64; n];
    if p.is_infinite() {
        for b in bands {
            for (s, v) in pointwise.iter_mut().zip(b.values()) {
                *s = s.max(v.norm());
            }
        }
    } else {
        for b in bands {
            for (s, v) in pointwise.iter_mut().zip(b.values()) {
                *s += v.norm().powf(p);
            }
        }
        let inv = 1.0 / p;
        for s in pointwise.iter_mut() {
            *s = s.powf(inv);
        }
    }
    Ok(match outer {
        SeqOuter::Linf => pointwise.iter().copied().fold(0.0, f64::max),
        SeqOuter::L2 => {
            let w = first.node_weight();
            (pointwise.iter().map(|s| s * s).sum::<f64>() * w).sqrt()
        }
    })
}

/// Centered Hardy–Littlewood maximal function over dyadic window radii
/// `r = 2^m·Δx` (plus the point value itself), with zero extension outside
/// the box. Restricting to dyadic radii costs at most a factor 2 against the
/// full-range maximal function.
pub fn maximal(f: &Field) -> Result<Field> {
    if f.space() != Space::Physical {
        return Err(Error::structural(
            "dyadic",
            "maximal",
            "maximal function expects a physical-space field",
        ));
    }
    let n = f.grid().num_points();
    let mut prefix = vec![0.0f64; n + 1];
    for (j, v) in f.values().iter().enumerate() {
        prefix[j + 1] = prefix[j] + v.norm();
    }
    let mut out = vec![0.0f64; n];
    for (j, o) in out.iter_mut().enumerate() {
        let mut best = f.values()[j].norm();
        let mut m = 1usize;
        while m < n {
            let lo = j.saturating_sub(m);
            let hi = (j + m + 1).min(n);
            let avg = (prefix[hi] - prefix[lo]) / (2 * m + 1) as f64;
            best = best.max(avg);
            m *= 2;
        }
        *o = best;
    }
    Field::new(
        f.grid(),
        Space::Physical,
        out.into_iter().map(|v| v.into()).collect(),
    )
}
