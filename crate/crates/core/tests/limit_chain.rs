use num_complex::Complex64;
use qconnect::classical::{
    dyadic_grid, main_limit_mirror_target, main_limit_parts, main_limit_scan, theta_power_limit_scan, LimitScanRow,
};
use qconnect::Tolerance;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn non_increasing(rows: &[LimitScanRow]) -> bool {
    rows.windows(2).all(|w| w[1].abs_error <= w[0].abs_error)
}

#[test]
fn lower_half_plane_converges_to_second_hankel_target() {
    let tol = Tolerance::default();
    let grid = dyadic_grid(2, 7);
    for arg in [-2.5, -1.0] {
        let rows = main_limit_scan(c(0.3, 0.0), Complex64::from_polar(1.0, arg), &grid, &tol).unwrap();
        assert!(non_increasing(&rows), "{rows:?}");
        let last = rows.last().unwrap();
        assert!(last.abs_error < 5e-2 * last.target.norm(), "{last:?}");
        let rows = theta_power_limit_scan(c(0.3, 0.0), Complex64::from_polar(1.0, arg), &grid, false, &tol).unwrap();
        assert!(non_increasing(&rows));
    }
}

#[test]
fn upper_half_plane_converges_to_the_mirror_target() {
    let tol = Tolerance::default();
    let grid = dyadic_grid(2, 7);
    let nu = c(0.3, 0.0);
    for arg in [1.0, 2.5] {
        let x = Complex64::from_polar(1.0, arg);
        let mirror = main_limit_mirror_target(nu, x, &tol).unwrap();
        let rows = main_limit_scan(nu, x, &grid, &tol).unwrap();
        let errs: Vec<f64> = rows.iter().map(|r| (r.value - mirror).norm()).collect();
        assert!(errs.windows(2).all(|w| w[1] <= w[0]), "{errs:?}");
        assert!(*errs.last().unwrap() < 5e-2 * mirror.norm());
        // the literal target is not approached off the lower half-plane
        assert!(rows.last().unwrap().abs_error > 0.5 * rows.last().unwrap().target.norm());
    }
}

#[test]
fn factors_match_their_limits_off_the_positive_axis() {
    let tol = Tolerance::default();
    let parts = main_limit_parts(c(0.3, 0.0), Complex64::from_polar(1.0, -1.0), 0.984375, &tol).unwrap();
    for row in parts.plus.iter().chain(&parts.minus) {
        assert!(row.abs_error < 5e-2 * row.target.norm(), "{row:?}");
    }
}

#[test]
fn factors_on_the_positive_axis_stay_real() {
    let tol = Tolerance::default();
    let parts = main_limit_parts(c(0.3, 0.0), c(1.0, 0.0), 0.984375, &tol).unwrap();
    for row in parts.plus.iter().chain(&parts.minus) {
        assert!(row.value.im.abs() <= 1e-12 * row.value.norm(), "{row:?}");
    }
    // the gamma and ₁φ₁ factors still converge there
    for row in [parts.plus[0], parts.plus[2], parts.minus[0], parts.minus[2]] {
        assert!(row.abs_error < 5e-2 * row.target.norm(), "{row:?}");
    }
}
