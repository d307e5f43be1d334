//! Frozen scans for the band-projection machinery: the four paraproduct term
//! types against their sequence-norm bound, and the dyadic maximal-function
//! L⁴ inequality.

use kdvlab::constants;
use kdvlab::dyadic::{appendix_term_bounds, maximal, AppendixOperatorFamily, DyadicPartition};
use kdvlab::testkit::{default_grid, SchwartzFamily};

const SCAN_MARGIN: f64 = 1.10;

#[test]
fn paraproduct_term_scan_frozen() {
    let grid = default_grid();
    let part = DyadicPartition::new(grid).unwrap();
    let fam = AppendixOperatorFamily::new(part, 0.0, 0.25).unwrap();
    let fields = SchwartzFamily::new(grid, 19);
    let mut worst = [0.0f64; 4];
    let mut worst_maximal: f64 = 0.0;
    for i in 0..100 {
        let f = fields.member(2 * i);
        let g = fields.member(2 * i + 1);
        let rep = appendix_term_bounds(&fam, &f, &g, 2.0).unwrap();
        for (w, r) in worst.iter_mut().zip(rep.ratios) {
            assert!(r.is_finite() && r >= 0.0);
            *w = w.max(r);
        }
        worst_maximal = worst_maximal.max(rep.maximal_ratio);
    }
    for (j, w) in worst.iter().enumerate() {
        assert!(
            *w <= constants::APPENDIX_TERM[j] * SCAN_MARGIN,
            "term {} ratio {} vs frozen {}",
            j + 1,
            w,
            constants::APPENDIX_TERM[j]
        );
    }
    assert!(
        worst_maximal <= constants::APPENDIX_TERM_MAXIMAL * SCAN_MARGIN,
        "maximal-route ratio {worst_maximal} vs frozen {}",
        constants::APPENDIX_TERM_MAXIMAL
    );
}

#[test]
fn maximal_l4_inequality_scan() {
    let grid = default_grid();
    let fields = SchwartzFamily::new(grid, 23);
    for f in fields.members(100) {
        let m = maximal(&f).unwrap();
        let ratio = m.lp_norm(4.0).unwrap() / f.lp_norm(4.0).unwrap();
        assert!(ratio <= 5.0, "maximal L4 ratio {ratio}");
    }
}
