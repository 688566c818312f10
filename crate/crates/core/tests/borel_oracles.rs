use num_complex::Complex64;
use qconnect::borel::{
    circle_residue, f_coeffs_recurrence, g_closed_form, q_borel, q_borel_inverse_roundtrip, residue_lemma_value,
};
use qconnect::qseries::{qpoch_finite, qpoch_inf};
use qconnect::{Nome, Tolerance};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Taylor coefficients of `1/((-Aτ;p)_∞ (-Bτ;p)_∞)` from Euler's
/// `1/(z;p)_∞ = Σ z^n/(p;p)_n`, multiplied as power series.
fn euler_product_coeffs(a: Complex64, b: Complex64, p: Complex64, order: usize) -> Vec<Complex64> {
    let euler = |z: Complex64| {
        (0..=order)
            .map(|n| (-z).powi(n as i32) / qpoch_finite(p, p, n))
            .collect::<Vec<_>>()
    };
    let (ea, eb) = (euler(a), euler(b));
    (0..=order).map(|n| (0..=n).map(|j| ea[j] * eb[n - j]).sum()).collect()
}

#[test]
fn borel_image_of_formal_solution_is_taylor_of_g() {
    for (nu, p) in [(c(0.3, 0.0), 0.5), (c(0.45, 0.1), 0.4), (c(0.7, 0.0), 0.6)] {
        let nome = Nome::real(p).unwrap();
        let f = f_coeffs_recurrence(nu, &nome, 12).unwrap();
        let g = q_borel(&f, &nome).unwrap();
        let oracle = euler_product_coeffs(nome.p_pow(2.0 * nu + 2.0), nome.p_powi(2), nome.p(), 12);
        for (n, (x, y)) in g.coeffs.iter().zip(&oracle).enumerate() {
            assert!((x - y).norm() <= 1e-11 * y.norm().max(1.0), "n={n}: {x} vs {y}");
        }
    }
}

#[test]
fn g_matches_its_taylor_polynomial_near_origin() {
    let tol = Tolerance::default();
    let nu = c(0.3, 0.0);
    let nome = Nome::real(0.5).unwrap();
    let oracle = euler_product_coeffs(nome.p_pow(2.0 * nu + 2.0), nome.p_powi(2), nome.p(), 40);
    let tau = c(0.05, -0.02);
    let series: Complex64 = oracle.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * tau + a);
    let closed = g_closed_form(nu, &nome, tau, &tol).unwrap().value;
    assert!((series - closed).norm() < 1e-15);
}

#[test]
fn round_trip_is_exact_on_dyadic_data() {
    let nome = Nome::real(0.5).unwrap();
    let f = qconnect::borel::FormalSeries::from_real(&[1.0, -0.5, 0.25, 3.0, -7.0, 0.125]);
    assert_eq!(q_borel_inverse_roundtrip(&f, &nome).unwrap(), f);
}

#[test]
fn residue_lemma_against_quadrature() {
    let tol = Tolerance::default();
    for p in [0.3, 0.5] {
        let nome = Nome::real(p).unwrap();
        let lambda = c(0.8, 0.6);
        for k in 0..=5 {
            let pole = lambda * nome.p_powi(-(k as i64));
            let radius = 0.3 * pole.norm() * (1.0 - p);
            let f = |tau: Complex64| Ok(1.0 / (qpoch_inf(tau / lambda, nome.p(), &tol)?.value * tau));
            let numeric = circle_residue(f, pole, radius).unwrap().value;
            let closed = residue_lemma_value(&nome, k, &tol).unwrap();
            assert!(
                (numeric - closed).norm() <= 1e-8 * closed.norm(),
                "p={p} k={k}: {numeric} vs {closed}"
            );
        }
    }
}
