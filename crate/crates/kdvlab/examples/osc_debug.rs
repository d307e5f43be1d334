use kdvlab::oscillatory::{eval_contour, eval_direct, profile, EvalMethod, OscIntegralQuery};

fn main() {
    let prof = profile();
    for tol in [1e-7f64, 5e-8, 2.5e-8, 6.25e-9] {
        println!("truncation_radius({tol:.3e}) = {}", prof.truncation_radius(tol));
    }
    for (xi, omega, t) in [
        (0.05f64, 4.0f64, 1.0f64),
        (3.0, 4.0, 1.0),
        (45.0, 4.0, 1.0),
        (1.0, -8.0, 1.0),
        (0.4, -2.0, 10.0),
        (15.0, 4.0, 4.0),
        (0.0, -1024.0, 0.1),
        (960.0, 4096.0, 1.0),
    ] {
        let q = OscIntegralQuery::new(xi, omega, t, EvalMethod::Both).unwrap();
        println!("--- xi={xi} omega={omega} t={t} case={:?}", q.case());
        match eval_direct(&q) {
            Ok(r) => println!("  direct : {:.6e} err {:.2e}", r.value.norm(), r.quadrature_error),
            Err(e) => println!("  direct : ERR {e}"),
        }
        match eval_contour(&q) {
            Ok(r) => println!("  contour: {:.6e} err {:.2e}", r.value.norm(), r.quadrature_error),
            Err(e) => println!("  contour: ERR {e}"),
        }
    }
}
