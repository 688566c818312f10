//! Identity-verification suites. Every case reduces to one nonnegative
//! residual compared against a threshold; random points come from a
//! ChaCha8 stream seeded per suite, so a report depends only on its flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use qconnect::borel::{
    b4_coefficient_residuals, borel_operational_check, circle_residue, f_coeffs_recurrence, g_recurrence_residual,
    q_borel, q_borel_inverse_roundtrip, residue_lemma_value, FormalSeries,
};
use qconnect::classical::{
    asymptotic_coefficient, bessel_j, dyadic_grid, gamma_limit_scan, hankel, hankel_asymptotic, limiting_combination,
    main_limit_parts, main_limit_scan, onephione_limit_scan, qbessel_classical_limit_scan, theta_power_limit_scan,
    theta_ratio_limit_scan, theta_split_corollary_residuals, theta_split_identity_residual,
    theta_sum_representation_residuals, AsymptoticParams, HankelKind, LimitScanRow,
};
use qconnect::connection::{
    c_coeffs, connection_residual, excluded_spiral, rewritten_connection_residual, theta_ratio_qde_residual,
};
use qconnect::qbessel::{
    hahn_relation_residual, heqb_residual, j3_second_solution, j_q_bessel, qde_residual, QBesselKind,
};
use qconnect::qseries::{
    q_gamma, qpoch_finite, qpoch_inf, qpoch_multi, theta, theta_scaled, theta_with_route, theta_zero_distance,
    ThetaRoute,
};
use qconnect::{Error, Nome, Result, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::Suite;
use crate::format::{fmt_complex, fmt_real, Num};

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub residual: Num,
    pub threshold: Num,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub seed: u64,
    pub wall_time_ms: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct Setup {
    pub p: f64,
    pub nu: Complex64,
    pub x: Complex64,
    pub kmax: u32,
    pub seed: u64,
    pub threshold_override: Option<f64>,
}

impl Setup {
    pub fn nome(&self) -> Result<Nome> {
        Nome::real(self.p)
    }
}

const SUITES: [(Suite, &str); 5] = [
    (Suite::Core, "core"),
    (Suite::Qbessel, "qbessel"),
    (Suite::Borel, "borel"),
    (Suite::Connection, "connection"),
    (Suite::Limits, "limits"),
];

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::All => "all",
        _ => SUITES
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, n)| *n)
            .expect("listed suite"),
    }
}

pub fn run(suite: Suite, setup: &Setup) -> Result<VerifyReport> {
    setup.nome()?;
    let mut cases = Vec::new();
    for (index, &(s, _)) in SUITES.iter().enumerate() {
        if suite != Suite::All && suite != s {
            continue;
        }
        let mut b = Builder::new(setup, index as u64);
        match s {
            Suite::Core => core(&mut b),
            Suite::Qbessel => qbessel(&mut b),
            Suite::Borel => borel(&mut b),
            Suite::Connection => connection(&mut b),
            Suite::Limits => limits(&mut b),
            Suite::All => unreachable!(),
        }
        cases.extend(b.cases);
    }
    Ok(VerifyReport {
        suite: suite_name(suite).into(),
        cases,
        seed: setup.seed,
        wall_time_ms: 0,
    })
}

struct Builder<'a> {
    setup: &'a Setup,
    nome: Nome,
    tol: Tolerance,
    rng: ChaCha8Rng,
    cases: Vec<Case>,
}

/// Largest residual; any NaN counts as a failure.
fn worst(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut w: f64 = 0.0;
    for v in values {
        let v = v?;
        w = if v.is_nan() { f64::INFINITY } else { w.max(v) };
    }
    Ok(w)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

type Inputs = Vec<(&'static str, String)>;

/// One residual per sample point.
type Check<'a> = Box<dyn Fn(Complex64) -> Result<f64> + 'a>;

impl<'a> Builder<'a> {
    fn new(setup: &'a Setup, index: u64) -> Self {
        Builder {
            setup,
            nome: setup.nome().expect("validated nome"),
            tol: Tolerance::default(),
            rng: ChaCha8Rng::seed_from_u64(setup.seed.wrapping_add(index)),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, mut inputs: Inputs, threshold: f64, result: Result<f64>) {
        let threshold = self.setup.threshold_override.unwrap_or(threshold);
        let residual = match result {
            Ok(r) => r,
            Err(e) => {
                inputs.push(("error", e.name().to_string()));
                f64::NAN
            }
        };
        self.cases.push(Case {
            name: name.into(),
            inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            residual: Num(residual),
            threshold: Num(threshold),
            pass: residual <= threshold,
        });
    }

    fn base_inputs(&self) -> Inputs {
        vec![("p", fmt_real(self.setup.p)), ("nu", fmt_complex(self.setup.nu))]
    }

    /// Log-uniform modulus in `[rmin, rmax]`, uniform argument in `(-amax, amax)`.
    fn ring(&mut self, rmin: f64, rmax: f64, amax: f64) -> Complex64 {
        let l = self.rng.gen_range(rmin.ln()..rmax.ln());
        let a = self.rng.gen_range(-amax..amax);
        Complex64::from_polar(l.exp(), a)
    }
}

fn points(n: usize) -> (&'static str, String) {
    ("points", n.to_string())
}

fn core(b: &mut Builder) {
    let tol = b.tol;
    let q = b.nome.p();
    let samples: Vec<(Complex64, i32)> = (0..100)
        .map(|_| loop {
            let x = b.ring(0.1, 10.0, PI);
            let k = b.rng.gen_range(-5..=5);
            if theta_zero_distance(q, x).is_ok_and(|s| s.log_distance > 0.05) {
                break (x, k);
            }
        })
        .collect();
    let inputs = || vec![("q", fmt_complex(q)), points(100)];
    let r = worst(samples.iter().map(|&(x, _)| {
        let lhs = theta(q, x, &tol)?.value;
        Ok(rel(lhs, qpoch_multi(&[q, -x, -q / x], q, &tol)?.value))
    }));
    b.push("core.theta_triple_product", inputs(), 1e-12, r);
    let r = worst(samples.iter().map(|&(x, k)| {
        let lhs = theta(q, x, &tol)?.value;
        let shifted = theta_scaled(q, q.powi(k) * x, &tol)?.value()?;
        let kk = k as i64;
        Ok(rel(lhs, q.powi((kk * (kk - 1) / 2) as i32) * x.powi(k) * shifted))
    }));
    b.push("core.theta_functional_equation", inputs(), 1e-12, r);
    let r = worst(
        samples
            .iter()
            .map(|&(x, _)| Ok(rel(theta(q, x, &tol)?.value, x * theta(q, 1.0 / x, &tol)?.value))),
    );
    b.push("core.theta_inversion", inputs(), 1e-12, r);
    // disagreement per unit of cancellation in the forced direct sum
    let r = worst(samples.iter().map(|&(x, _)| {
        let direct = theta_with_route(q, x, ThetaRoute::Direct, &tol)?;
        let m = theta_with_route(q, x, ThetaRoute::Modular, &tol)?.value()?;
        Ok(rel(direct.value()?, m) / direct.condition.max(10.0))
    }));
    b.push("core.theta_routes_agree", inputs(), 1e-12, r);

    let a: Vec<Complex64> = (0..20).map(|_| b.ring(0.1, 3.0, PI)).collect();
    let r = worst(a.iter().map(|&a| {
        let lhs = qpoch_inf(a * a, q * q, &tol)?.value;
        let rhs = qpoch_multi(&[a, -a], q, &tol)?.value;
        let scale = qpoch_inf(
            Complex64::new(-(a * a).norm(), 0.0),
            Complex64::new((q * q).norm(), 0.0),
            &tol,
        )?
        .value;
        let (lf, rf) = (
            qpoch_finite(a * a, q * q, 9),
            qpoch_finite(a, q, 9) * qpoch_finite(-a, q, 9),
        );
        let finite = rel(lf, rf).min((lf - rf).norm());
        Ok(((lhs - rhs).norm() / scale.norm()).max(finite))
    }));
    b.push(
        "core.pochhammer_duplication",
        vec![("q", fmt_complex(q)), points(20)],
        1e-12,
        r,
    );

    let xs: Vec<Complex64> = (0..20)
        .map(|_| Complex64::new(b.rng.gen_range(0.2..4.0), b.rng.gen_range(-2.0..2.0)))
        .collect();
    let p = b.setup.p;
    let r = worst(xs.iter().map(|&x| {
        let bracket = (1.0 - Complex64::new(p, 0.0).powc(x)) / (1.0 - p);
        Ok(rel(
            q_gamma(p, x + 1.0, &tol)?.value,
            bracket * q_gamma(p, x, &tol)?.value,
        ))
    }));
    b.push("core.qgamma_recurrence", vec![("q", fmt_real(p)), points(20)], 1e-12, r);
}

fn qbessel(b: &mut Builder) {
    let tol = b.tol;
    let nome = b.nome;
    let nu = b.setup.nu;
    let xs: Vec<Complex64> = (0..20).map(|_| b.ring(0.1, 1.5, 2.5)).collect();
    let bessel = |kind| move |y: Complex64| Ok(j_q_bessel(kind, nu, &nome, y, &tol)?.value);
    let second = |y: Complex64| Ok(j3_second_solution(nu, &nome, y, &tol)?.value);
    let cases: [(&str, Check); 6] = [
        (
            "qbessel.j3_heqb",
            Box::new(|x| Ok(heqb_residual(bessel(QBesselKind::J3), nu, &nome, x)?.relative())),
        ),
        (
            "qbessel.j3_qde",
            Box::new(|x| Ok(qde_residual(QBesselKind::J3, bessel(QBesselKind::J3), nu, &nome, x)?.relative())),
        ),
        (
            "qbessel.second_solution_heqb",
            Box::new(|x| Ok(heqb_residual(second, nu, &nome, x)?.relative())),
        ),
        (
            "qbessel.j1_qde",
            Box::new(|x| Ok(qde_residual(QBesselKind::J1, bessel(QBesselKind::J1), nu, &nome, x)?.relative())),
        ),
        (
            "qbessel.j2_qde",
            Box::new(|x| Ok(qde_residual(QBesselKind::J2, bessel(QBesselKind::J2), nu, &nome, x)?.relative())),
        ),
        (
            "qbessel.hahn_relation",
            Box::new(|x| Ok(hahn_relation_residual(nu, &nome, x, &tol)?.relative())),
        ),
    ];
    for (name, f) in cases {
        let r = worst(xs.iter().map(|&x| f(x)));
        let mut inputs = b.base_inputs();
        inputs.push(points(20));
        b.push(name, inputs, 1e-10, r);
    }
}

/// Taylor coefficients of `1/((-Aτ;p)_∞ (-Bτ;p)_∞)` via Euler's
/// `1/(z;p)_∞ = Σ zⁿ/(p;p)_n`.
fn euler_product(a: Complex64, bb: Complex64, p: Complex64, order: usize) -> Vec<Complex64> {
    let euler = |z: Complex64| {
        (0..=order)
            .map(|n| (-z).powi(n as i32) / qpoch_finite(p, p, n))
            .collect::<Vec<_>>()
    };
    let (ea, eb) = (euler(a), euler(bb));
    (0..=order).map(|n| (0..=n).map(|j| ea[j] * eb[n - j]).sum()).collect()
}

fn borel(b: &mut Builder) {
    let tol = b.tol;
    let nome = b.nome;
    let nu = b.setup.nu;
    let coeffs: Vec<Complex64> = (0..11)
        .map(|_| Complex64::new(b.rng.gen_range(-1.0..1.0), b.rng.gen_range(-1.0..1.0)))
        .collect();
    let f = FormalSeries::new(coeffs);
    let r = worst(
        (0..=4)
            .flat_map(|m| (0..=4).map(move |l| (m, l)))
            .map(|(m, l)| borel_operational_check(m, l, &f, &nome)),
    );
    b.push(
        "borel.operational_relation",
        vec![("p", fmt_real(b.setup.p)), ("order", "10".into())],
        1e-14,
        r,
    );
    let r = q_borel_inverse_roundtrip(&f, &nome)
        .map(|g| worst(g.coeffs.iter().zip(&f.coeffs).map(|(x, y)| Ok(rel(*x, *y)))).unwrap_or(f64::INFINITY));
    // the scalings p^{±n(n-1)/2} are exact only for dyadic p
    let exact = b.setup.p.log2().fract() == 0.0;
    let threshold = if exact { 0.0 } else { 64.0 * f64::EPSILON };
    b.push(
        "borel.laplace_borel_roundtrip",
        vec![("p", fmt_real(b.setup.p)), ("order", "10".into())],
        threshold,
        r,
    );

    let taus: Vec<Complex64> = (0..20).map(|_| b.ring(0.05, 4.0, 3.0)).collect();
    let r = worst(
        taus.iter()
            .map(|&t| Ok(g_recurrence_residual(nu, &nome, t, &tol)?.relative())),
    );
    let mut inputs = b.base_inputs();
    inputs.push(points(20));
    b.push("borel.g_recurrence", inputs, 1e-12, r);

    let lambda = b.ring(0.5, 2.0, PI);
    for k in 0..=5usize {
        let r = (|| {
            let pole = lambda * nome.p_powi(-(k as i64));
            let radius = 0.3 * pole.norm() * (1.0 - b.setup.p).min(b.setup.p);
            let integrand = |tau: Complex64| Ok(1.0 / (qpoch_inf(tau / lambda, nome.p(), &tol)?.value * tau));
            let numeric = circle_residue(integrand, pole, radius)?.value;
            Ok(rel(numeric, residue_lemma_value(&nome, k, &tol)?))
        })();
        let name = format!("borel.residue_lemma_k{k}");
        b.push(
            &name,
            vec![("p", fmt_real(b.setup.p)), ("lambda", fmt_complex(lambda))],
            1e-8,
            r,
        );
    }

    let r = (|| {
        let fs = f_coeffs_recurrence(nu, &nome, 12)?;
        let g = q_borel(&fs, &nome)?;
        let oracle = euler_product(nome.p_pow(2.0 * nu + 2.0), nome.p_powi(2), nome.p(), 12);
        worst(
            g.coeffs
                .iter()
                .zip(&oracle)
                .map(|(x, y)| Ok((x - y).norm() / y.norm().max(1.0))),
        )
    })();
    let mut inputs = b.base_inputs();
    inputs.push(("order", "12".into()));
    b.push("borel.b4_borel_is_taylor_of_g", inputs.clone(), 1e-11, r);
    let r = f_coeffs_recurrence(nu, &nome, 12)
        .and_then(|fs| worst(b4_coefficient_residuals(nu, &nome, &fs).into_iter().map(Ok)));
    b.push("borel.b4_recurrence", inputs, 1e-12, r);
}

fn connection(b: &mut Builder) {
    let tol = b.tol;
    let nome = b.nome;
    let nu = b.setup.nu;
    let xs: Vec<Complex64> = (0..50)
        .map(|_| loop {
            let x = b.ring(0.3, 3.0, PI);
            if excluded_spiral(nu, &nome, x).is_ok_and(|s| s.log_distance >= 0.05) {
                break x;
            }
        })
        .collect();
    let r = worst(
        xs.iter()
            .map(|&x| Ok(connection_residual(nu, &nome, x, &tol)?.residual_rel)),
    );
    let mut inputs = b.base_inputs();
    inputs.push(points(50));
    inputs.push(("min_spiral_distance", "0.05".into()));
    b.push("connection.theorem", inputs, 1e-8, r);

    let lambda = Complex64::new(1.7, 0.0);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for _ in 0..20 {
        let t = b.ring(0.3, 3.0, PI);
        let pair = c_coeffs(nu, lambda, &nome, t, &tol)
            .and_then(|a| Ok((a, c_coeffs(nu, lambda, &nome, nome.p() * t, &tol)?)));
        match pair {
            Err(Error::SpiralError { .. }) => continue,
            Err(e) => {
                plus.push(Err(e.clone()));
                minus.push(Err(e));
            }
            Ok((a, s)) => {
                plus.push(Ok(rel(s.c_plus, a.c_plus)));
                minus.push(Ok(rel(s.c_minus, a.c_minus)));
            }
        }
    }
    let mut inputs = b.base_inputs();
    inputs.push(("lambda", fmt_complex(lambda)));
    b.push("connection.c_plus_p_elliptic", inputs.clone(), 1e-10, worst(plus));
    b.push("connection.c_minus_p_elliptic", inputs, 1e-10, worst(minus));

    let lambdas = [
        Complex64::new(1.0, 0.0),
        Complex64::new(1.7, 0.0),
        Complex64::new(2.0, 1.0),
    ];
    let mut formula = Vec::new();
    let mut invariance = Vec::new();
    let mut used = 0;
    while used < 10 {
        let x = b.ring(0.3, 3.0, PI);
        let reports: Result<Vec<_>> = lambdas
            .iter()
            .map(|&l| rewritten_connection_residual(nu, l, &nome, x, &tol))
            .collect();
        match reports {
            Err(Error::SpiralError { .. }) => continue,
            Err(e) => {
                formula.push(Err(e.clone()));
                invariance.push(Err(e));
            }
            Ok(reps) => {
                let rhs: Vec<Complex64> = reps
                    .iter()
                    .map(|r| r.coeffs.c_plus * r.j_plus + r.coeffs.c_minus * r.j_minus)
                    .collect();
                let scale = reps.iter().map(|r| r.residual.scale).fold(f64::MIN_POSITIVE, f64::max);
                formula.extend(reps.iter().map(|r| Ok(r.residual.relative())));
                invariance.extend(rhs.iter().map(|&v| Ok((v - rhs[0]).norm() / scale)));
            }
        }
        used += 1;
    }
    let mut inputs = b.base_inputs();
    inputs.push((
        "lambdas",
        lambdas.iter().map(|&l| fmt_complex(l)).collect::<Vec<_>>().join(";"),
    ));
    inputs.push(points(10));
    b.push("connection.rewritten_formula", inputs.clone(), 1e-9, worst(formula));
    b.push("connection.lambda_invariance", inputs, 1e-9, worst(invariance));

    let lambda = Complex64::new(2.0, 1.0);
    let mut qde = Vec::new();
    while qde.len() < 20 {
        let x = b.ring(0.3, 3.0, PI);
        match theta_ratio_qde_residual(nu, lambda, &nome, x, &tol) {
            Err(Error::SpiralError { .. }) => continue,
            r => qde.push(r.map(|r| r.relative())),
        }
    }
    let mut inputs = b.base_inputs();
    inputs.push(("lambda", fmt_complex(lambda)));
    inputs.push(points(20));
    b.push("connection.theta_ratio_qde", inputs, 1e-11, worst(qde));
}

/// Largest step up of `abs_error` along the scan.
fn max_increase(rows: &[LimitScanRow]) -> f64 {
    rows.windows(2)
        .map(|w| (w[1].abs_error - w[0].abs_error).max(0.0))
        .fold(0.0, f64::max)
}

fn final_relative(rows: &[LimitScanRow]) -> f64 {
    let last = rows.last().expect("nonempty grid");
    last.abs_error / last.target.norm().max(f64::MIN_POSITIVE)
}

fn limits(b: &mut Builder) {
    let tol = b.tol;
    let nu = b.setup.nu;
    let x = b.setup.x;
    let kmax = b.setup.kmax;
    let grid = dyadic_grid(2, kmax);
    let scan_inputs = |extra: Inputs| {
        let mut v: Inputs = vec![
            ("nu", fmt_complex(nu)),
            ("x", fmt_complex(x)),
            ("kmax", kmax.to_string()),
        ];
        v.extend(extra);
        v
    };
    let (nu1, nu2) = (Complex64::new(2.6, 0.0), Complex64::new(1.3, 0.0));
    let ratio_inputs = vec![
        ("x", fmt_complex(x)),
        ("nu1", fmt_complex(nu1)),
        ("nu2", fmt_complex(nu2)),
        ("kmax", kmax.to_string()),
    ];
    let xq = 1.0;
    let scans: Vec<(&str, Inputs, f64, Result<Vec<LimitScanRow>>)> = vec![
        (
            "gamma",
            vec![("nu", fmt_complex(nu)), ("kmax", kmax.to_string())],
            5e-2,
            gamma_limit_scan(nu, &grid, &tol),
        ),
        (
            "theta_ratio",
            ratio_inputs.clone(),
            5e-2,
            theta_ratio_limit_scan(nu1, nu2, x, &grid, false, &tol),
        ),
        (
            "theta_ratio_signed",
            ratio_inputs,
            5e-2,
            theta_ratio_limit_scan(nu1, nu2, x, &grid, true, &tol),
        ),
        (
            "theta_power_1",
            scan_inputs(vec![]),
            5e-2,
            theta_power_limit_scan(nu, x, &grid, false, &tol),
        ),
        (
            "theta_power_2",
            scan_inputs(vec![]),
            5e-2,
            theta_power_limit_scan(nu, x, &grid, true, &tol),
        ),
        (
            "onephione",
            scan_inputs(vec![]),
            1e-2,
            onephione_limit_scan(nu, x, &grid, false, &tol),
        ),
        (
            "onephione_variant",
            scan_inputs(vec![]),
            1e-2,
            onephione_limit_scan(nu, x, &grid, true, &tol),
        ),
        (
            "qbessel_j1",
            vec![("nu", fmt_complex(nu)), ("x", fmt_real(xq)), ("kmax", kmax.to_string())],
            5e-2,
            qbessel_classical_limit_scan(QBesselKind::J1, nu, xq, &grid, &tol),
        ),
        (
            "qbessel_j2",
            vec![("nu", fmt_complex(nu)), ("x", fmt_real(xq)), ("kmax", kmax.to_string())],
            5e-2,
            qbessel_classical_limit_scan(QBesselKind::J2, nu, xq, &grid, &tol),
        ),
        (
            "qbessel_j3",
            vec![("nu", fmt_complex(nu)), ("x", fmt_real(xq)), ("kmax", kmax.to_string())],
            5e-2,
            qbessel_classical_limit_scan(QBesselKind::J3, nu, xq, &grid, &tol),
        ),
        ("main", scan_inputs(vec![]), 5e-2, main_limit_scan(nu, x, &grid, &tol)),
    ];
    for (name, inputs, cap, rows) in scans {
        let (mono, fin) = match rows {
            Ok(r) => (Ok(max_increase(&r)), Ok(final_relative(&r))),
            Err(e) => (Err(e.clone()), Err(e)),
        };
        b.push(&format!("limits.{name}.non_increasing"), inputs.clone(), 0.0, mono);
        b.push(&format!("limits.{name}.final"), inputs, cap, fin);
    }

    let p_parts = 1.0 - 0.5f64.powi(6);
    let r = main_limit_parts(nu, x, p_parts, &tol).map(|parts| {
        parts
            .plus
            .iter()
            .chain(&parts.minus)
            .map(|r| r.abs_error / r.target.norm())
            .fold(0.0, f64::max)
    });
    b.push(
        "limits.main.factors",
        scan_inputs(vec![("p", fmt_real(p_parts))]),
        5e-2,
        r,
    );
    let r = limiting_combination(nu, x, &tol)
        .map(|l| rel(l.lemma_product, l.bessel_form).max(rel(l.hankel_form, l.bessel_form)));
    b.push(
        "limits.limiting_combination",
        vec![("nu", fmt_complex(nu)), ("x", fmt_complex(x))],
        1e-12,
        r,
    );

    let mut split = Vec::new();
    let mut corollary = Vec::new();
    for _ in 0..30 {
        let p = b.rng.gen_range(0.1..0.95);
        let k = b.ring(0.05, 2.0, PI);
        let xx = b.ring(0.2, 5.0, 3.0);
        let nome = Nome::real(p).expect("p in (0,1)");
        split.push(theta_split_identity_residual(k, xx, &nome, &tol).map(|r| r.relative()));
        corollary
            .push(theta_split_corollary_residuals(nu, xx, &nome, &tol).map(|[a, c]| a.relative().max(c.relative())));
    }
    b.push("limits.theta_split", vec![points(30)], 1e-12, worst(split));
    b.push(
        "limits.theta_split_corollary",
        vec![("nu", fmt_complex(nu)), points(30)],
        1e-12,
        worst(corollary),
    );
    let nome = b.nome;
    let r = theta_sum_representation_residuals(&nome, &tol).map(|[a, c]| a.value.norm().max(c.value.norm()));
    b.push(
        "limits.theta_sum_representation",
        vec![("p", fmt_real(b.setup.p))],
        1e-13,
        r,
    );

    let order = 2.0 * nu;
    let zs = [2.0 * x.sqrt(), Complex64::new(30.0, 0.0)];
    let r = worst(zs.iter().map(|&z| {
        let h1 = hankel(HankelKind::H1, order, z, &tol)?;
        let h2 = hankel(HankelKind::H2, order, z, &tol)?;
        Ok(rel((h1 + h2) / 2.0, bessel_j(order, z, &tol)?))
    }));
    b.push(
        "limits.hankel_mean_is_bessel",
        vec![("order", fmt_complex(order))],
        1e-13,
        r,
    );
    let half = Complex64::new(0.5, 0.0);
    let r = Ok((1..=AsymptoticParams::MAX_ORDER)
        .map(|s| asymptotic_coefficient(half, s).norm())
        .fold(0.0, f64::max));
    b.push(
        "limits.half_order_coefficients",
        vec![("s_max", AsymptoticParams::MAX_ORDER.to_string())],
        0.0,
        r,
    );
    let z = Complex64::new(30.0, 0.0);
    let params = AsymptoticParams::new(10, order, z);
    let r = worst([HankelKind::H1, HankelKind::H2].into_iter().map(|kind| {
        Ok(rel(
            hankel_asymptotic(kind, order, z, &params),
            hankel(kind, order, z, &tol)?,
        ))
    }));
    b.push(
        "limits.hankel_asymptotic",
        vec![
            ("order", fmt_complex(order)),
            ("z", fmt_complex(z)),
            ("s_max", "10".into()),
        ],
        1e-4,
        r,
    );
}
