//! Airy-phase oscillatory integrals `∫ φ_ω(ξ−z)·e^{itz³}·(1+z²)^{-1/8} dz`.
//!
//! The same value is computed two independent ways: brute-force quadrature
//! along the real axis (`eval_direct`) and deformation onto case-specific
//! complex contours (`eval_contour`), whose segment magnitudes expose the
//! decay mechanisms behind the `(1+t)/|ω|` and `(1+t)·ω^{-1/8}` envelopes.
//! Auxiliary checks cover the growth lemma for `∫(e^{a sin s}-e^{b sin s})/sin s`,
//! the quadratic-decay envelope of the analytic continuation of `φ_ω`, and
//! the finiteness of the band-summed multiplier supremum that feeds the
//! weighted-decay experiments.

mod bump;
mod integral;
mod scans;

pub use bump::{phi_omega_real, phi_unit_scaled, profile, BumpProfile, LineProfile};
pub use integral::{
    classify, eval_both, eval_contour, eval_contour_res, eval_direct, eval_direct_res,
    ContourDetail, EvalMethod, OscCase, OscIntegralQuery, OscIntegralResult, SegmentReport,
};
pub use scans::{
    anal_cont_bound_check, bound_ratio_scan, e_sin_bound, e_sin_check, enumerate_intermediate_shells,
    finite_bound_scan, AnalContReport, BoundRatioEntry, BoundRatioReport, EsinReport,
    FiniteBoundReport,
};
