use crate::cutoff::saturator;
use crate::error::{Error, Result};

/// Even, nonnegative, locally bounded spatial weights.
///
/// `TruncatedJapanese(s, N)` equals `⟨x⟩^{2s}` for `|x| ≤ N`, is constant
/// `(2N)^{2s}` for `|x| ≥ 3N`, and is smooth and nondecreasing in `|x|` in
/// between; for fixed x it is nondecreasing in N (the saturation point only
/// moves outward). Realized as `(1 + C·g(x²/C))^s` with `C = 4N² - 1` and `g`
/// the concave saturator, so all three properties are inherited rather than
/// patched together piecewise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightFunction {
    /// `|x|^s`.
    AbsPow { s: f64 },
    /// `⟨x⟩^s = (1+x²)^{s/2}`.
    JapanesePow { s: f64 },
    /// Truncation of `⟨x⟩^{2s}` saturating near `|x| ≈ 2N`.
    TruncatedJapanese { s: f64, n_cut: f64 },
}

impl WeightFunction {
    pub fn abs_pow(s: f64) -> Result<WeightFunction> {
        check_exponent(s)?;
        Ok(WeightFunction::AbsPow { s })
    }

    pub fn japanese_pow(s: f64) -> Result<WeightFunction> {
        check_exponent(s)?;
        Ok(WeightFunction::JapanesePow { s })
    }

    pub fn truncated_japanese(s: f64, n_cut: f64) -> Result<WeightFunction> {
        check_exponent(s)?;
        if !n_cut.is_finite() || n_cut < 1.0 {
            return Err(Error::domain(
                "spectral",
                "weight",
                format!("truncation radius must be >= 1, got {n_cut}"),
            ));
        }
        Ok(WeightFunction::TruncatedJapanese { s, n_cut })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            WeightFunction::AbsPow { s } => x.abs().powf(s),
            WeightFunction::JapanesePow { s } => (1.0 + x * x).powf(0.5 * s),
            WeightFunction::TruncatedJapanese { s, n_cut } => {
                let c = 4.0 * n_cut * n_cut - 1.0;
                (1.0 + c * saturator(x * x / c)).powf(s)
            }
        }
    }
}

fn check_exponent(s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::domain(
            "spectral",
            "weight",
            format!("weight exponent must be a finite nonnegative real, got {s}"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_shapes() {
        let w = WeightFunction::abs_pow(2.0).unwrap();
        assert_eq!(w.eval(-3.0), 9.0);
        assert_eq!(w.eval(0.0), 0.0);
        let j = WeightFunction::japanese_pow(1.0).unwrap();
        assert!((j.eval(1.0) - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(j.eval(0.0), 1.0);
    }

    #[test]
    fn truncated_matches_then_saturates() {
        let s = 0.125;
        let n = 5.0;
        let w = WeightFunction::truncated_japanese(s, n).unwrap();
        let japanese = |x: f64| (1.0 + x * x).powf(s);
        for x in [0.0, 0.5, 2.0, 4.9, 5.0, -3.0] {
            assert!(
                (w.eval(x) - japanese(x)).abs() < 1e-12 * japanese(x),
                "mismatch inside the window at x={x}"
            );
        }
        let plateau = (2.0 * n).powf(2.0 * s);
        for x in [15.0, 20.0, 1e4, -16.0] {
            assert!((w.eval(x) - plateau).abs() < 1e-12 * plateau, "x={x}");
        }
        // Even and monotone in |x|.
        let mut prev = w.eval(0.0);
        for i in 1..400 {
            let x = 0.05 * i as f64;
            let v = w.eval(x);
            assert_eq!(v, w.eval(-x));
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn truncated_is_monotone_in_the_radius() {
        let s = 0.125;
        let radii = [1.0, 2.5, 5.0, 10.0, 20.0];
        for x in [0.0, 1.0, 3.7, 8.0, 30.0, 100.0] {
            let mut prev = 0.0;
            for &n in &radii {
                let v = WeightFunction::truncated_japanese(s, n).unwrap().eval(x);
                assert!(
                    v >= prev - 1e-12,
                    "weight not monotone in radius at x={x}, N={n}"
                );
                prev = v;
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(WeightFunction::abs_pow(-1.0).is_err());
        assert!(WeightFunction::truncated_japanese(0.5, 0.5).is_err());
        assert!(WeightFunction::japanese_pow(f64::NAN).is_err());
    }
}
