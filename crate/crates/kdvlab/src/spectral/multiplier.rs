use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

/// A Fourier multiplier: a labeled symbol `ξ ↦ m(ξ)`.
///
/// Symbols are plain functions of the frequency; composition multiplies them
/// pointwise, so `apply(m₁, apply(m₂, f)) = apply(m₁·m₂, f)` up to transform
/// round-off.
#[derive(Clone)]
pub struct Multiplier {
    label: String,
    symbol: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multiplier").field("label", &self.label).finish()
    }
}

impl Multiplier {
    pub fn from_symbol(
        label: impl Into<String>,
        symbol: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Multiplier {
        Multiplier {
            label: label.into(),
            symbol: Arc::new(symbol),
        }
    }

    pub fn from_real_symbol(
        label: impl Into<String>,
        symbol: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Multiplier {
        Multiplier {
            label: label.into(),
            symbol: Arc::new(move |xi| Complex64::new(symbol(xi), 0.0)),
        }
    }

    /// `D^α`: symbol `|ξ|^α` with the convention `|0|^α := 0` for `α > 0`
    /// and `D⁰ = id` (both delivered by `powf`).
    pub fn fractional_derivative(alpha: f64) -> Result<Multiplier> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::domain(
                "spectral",
                "fractional_derivative",
                format!("order must be a finite nonnegative real, got {alpha}"),
            ));
        }
        Ok(Multiplier::from_real_symbol(format!("D^{alpha}"), move |xi| {
            xi.abs().powf(alpha)
        }))
    }

    /// `⟨D⟩^s`: symbol `(1+ξ²)^{s/2}`.
    pub fn bessel_potential(s: f64) -> Multiplier {
        Multiplier::from_real_symbol(format!("bessel^{s}"), move |xi| {
            (1.0 + xi * xi).powf(0.5 * s)
        })
    }

    /// `∂ₓ^order`: symbol `(iξ)^order`.
    pub fn derivative(order: u32) -> Multiplier {
        Multiplier::from_symbol(format!("d/dx^{order}"), move |xi| {
            Complex64::new(0.0, xi).powu(order)
        })
    }

    /// Airy group symbol `e^{itξ³}`.
    pub fn airy(t: f64) -> Multiplier {
        Multiplier::from_symbol(format!("airy^{t}"), move |xi| {
            Complex64::new(0.0, t * xi * xi * xi).exp()
        })
    }

    /// Pointwise product of symbols.
    pub fn compose(&self, other: &Multiplier) -> Multiplier {
        let a = self.symbol.clone();
        let b = other.symbol.clone();
        Multiplier {
            label: format!("{}*{}", self.label, other.label),
            symbol: Arc::new(move |xi| a(xi) * b(xi)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        (self.symbol)(xi)
    }
}
