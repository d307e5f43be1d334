//! Scratch measurements for sizing the solver integration tests.

use kdvlab::solver::{kato_identity_terms, mkdv_soliton, picard_run, solve, SolverConfig};
use kdvlab::{Field, Grid};
use num_complex::Complex64;

fn soliton_exact(grid: &Grid, c: f64, x0: f64, t: f64) -> Field {
    let amp = (2.0 * c).sqrt();
    let half = grid.half_length();
    Field::from_fn(grid.clone(), |x| {
        let mut y = x - x0 - c * t;
        while y >= half {
            y -= 2.0 * half;
        }
        while y < -half {
            y += 2.0 * half;
        }
        amp / (c.sqrt() * y).cosh()
    })
}

fn shape_error(grid: &Grid, c: f64, x0: f64, dt: f64, t_end: f64) -> (f64, f64, f64) {
    let u0 = mkdv_soliton(c, x0, grid.clone()).unwrap();
    let steps = (t_end / dt).round() as usize;
    let cfg = SolverConfig::new(2, dt, t_end, steps, grid.clone()).unwrap();
    let traj = solve(&u0, &cfg).unwrap();
    let exact = soliton_exact(grid, c, x0, t_end);
    let diff = traj.final_state().sub(&exact).unwrap();
    let rel = diff.l2_norm() / exact.l2_norm();
    let report = traj.conservation();
    (rel, report.mass_drift, traj.imag_residue())
}

fn main() {
    let grid = Grid::new(2048, 40.0).unwrap();
    let c = 1.0;
    let x0 = -10.0;

    // Shape error + mass drift at several dt over T = 1.
    for &dt in &[4.0e-3, 2.0e-3, 1.0e-3, 5.0e-4] {
        let (rel, mass, imag) = shape_error(&grid, c, x0, dt, 1.0);
        eprintln!(
            "[shape] dt={dt:.1e} rel_l2={rel:.3e} mass_drift={mass:.3e} imag={imag:.3e}"
        );
    }

    // Richardson pair candidates.
    for &(a, b) in &[(4.0e-3, 2.0e-3), (2.0e-3, 1.0e-3)] {
        let (ea, _, _) = shape_error(&grid, c, x0, a, 1.0);
        let (eb, _, _) = shape_error(&grid, c, x0, b, 1.0);
        eprintln!("[richardson] dt={a:.1e}/{b:.1e} factor={:.3}", ea / eb);
    }

    // Picard vs solve at T = 0.05 for the soliton.
    let u0 = mkdv_soliton(c, x0, grid.clone()).unwrap();
    let t_cmp = 0.05f64;
    let dt_ref = 1.0e-3;
    let steps = (t_cmp / dt_ref).round() as usize;
    let cfg_ref = SolverConfig::new(2, dt_ref, t_cmp, steps, grid.clone()).unwrap();
    let traj = solve(&u0, &cfg_ref).unwrap();
    for &dt in &[1.0e-3, 5.0e-4, 2.5e-4, 2.0e-4] {
        let steps = (t_cmp / dt).round() as usize;
        let cfg = SolverConfig::new(2, dt, t_cmp, steps, grid.clone()).unwrap();
        let run = picard_run(&u0, t_cmp, &cfg, 12).unwrap();
        let diff = run
            .final_state
            .sub(traj.final_state())
            .unwrap()
            .l2_norm();
        let last = run.successive_differences.last().copied().unwrap_or(0.0);
        eprintln!("[picard] dt={dt:.1e} vs_solve={diff:.3e} last_diff={last:.3e}");
    }

    // Contraction-ratio trend in T, small Gaussian data, fixed node count.
    let small = Field::from_fn(grid.clone(), |x| 0.5 * (-x * x / 4.0).exp());
    let _ = Complex64::new(0.0, 0.0);
    let mut points = Vec::new();
    for &t_end in &[0.0125f64, 0.025, 0.05, 0.1, 0.2] {
        let nodes = 64usize;
        let dt = t_end / nodes as f64;
        let cfg = SolverConfig::new(2, dt, t_end, nodes, grid.clone()).unwrap();
        let run = picard_run(&small, t_end, &cfg, 8).unwrap();
        let d = &run.successive_differences;
        let ratio = d[d.len() - 1] / d[d.len() - 2];
        points.push((t_end, ratio));
        eprintln!("[contract] T={t_end:.4} diffs={d:?} late_ratio={ratio:.4e}");
    }
    for w in points.windows(2) {
        let slope = (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln();
        eprintln!(
            "[contract-slope] T {:.4}->{:.4} slope={slope:.3}",
            w[0].0, w[1].0
        );
    }

    // Kato residuals.
    let w = kdvlab::WeightFunction::truncated_japanese(0.125, 10.0).unwrap();

    // Linear flow: identity without the flux term.
    let gauss = Field::from_fn(grid.clone(), |x| (-x * x / 2.0).exp());
    let lin_cfg = SolverConfig::new(2, 1.0e-4, 0.25, 25, grid.clone())
        .unwrap()
        .without_nonlinearity();
    let lin_traj = solve(&gauss, &lin_cfg).unwrap();
    let lin = kato_identity_terms(&lin_traj, &w).unwrap();
    eprintln!("[kato-linear] residual={:.3e} terms={lin:?}", lin.residual);

    // Soliton run, coarse vs fine snapshot spacing.
    let u0 = mkdv_soliton(c, x0, grid.clone()).unwrap();
    for &(dt, stride) in &[(1.0e-3f64, 50usize), (5.0e-4, 25), (2.5e-4, 12)] {
        let steps = (0.5 / dt).round() as usize;
        let stride = if steps % stride == 0 {
            stride
        } else {
            // keep steps divisible by stride
            let mut s = stride;
            while steps % s != 0 {
                s -= 1;
            }
            s
        };
        let cfg = SolverConfig::new(2, dt, 0.5, stride, grid.clone()).unwrap();
        let traj = solve(&u0, &cfg).unwrap();
        let t = kato_identity_terms(&traj, &w).unwrap();
        eprintln!(
            "[kato-soliton] dt={dt:.1e} stride={stride} h_snap={:.4} residual={:.3e}",
            dt * stride as f64,
            t.residual
        );
    }
}
