use std::fmt::Write;

use qconnect::classical::{
    dyadic_grid, gamma_limit_scan, main_limit_scan, onephione_limit_scan, qbessel_classical_limit_scan,
    theta_power_limit_scan, theta_ratio_limit_scan, LimitScanRow,
};
use qconnect::qbessel::QBesselKind;
use qconnect::Result;
use serde::Serialize;

use crate::args::{Kind, ScanArgs, ScanTarget};
use crate::eval::tolerance;
use crate::format::{fmt_real, Num};

pub const CSV_HEADER: &str = "k,p,value_re,value_im,target_re,target_im,abs_error";

/// Rows for `k = 2..=kmax`, paired with their `k`. The q-Bessel scan reads
/// only the real part of `x`.
pub fn scan(a: &ScanArgs) -> Result<Vec<(u32, LimitScanRow)>> {
    let tol = tolerance(a.tol)?;
    let grid = dyadic_grid(2, a.kmax);
    let rows = match a.target {
        ScanTarget::Gamma => gamma_limit_scan(a.nu, &grid, &tol)?,
        ScanTarget::ThetaRatio => theta_ratio_limit_scan(a.nu, a.nu2, a.x, &grid, a.variant, &tol)?,
        ScanTarget::ThetaPower => theta_power_limit_scan(a.nu, a.x, &grid, a.variant, &tol)?,
        ScanTarget::Onephione => onephione_limit_scan(a.nu, a.x, &grid, a.variant, &tol)?,
        ScanTarget::Main => main_limit_scan(a.nu, a.x, &grid, &tol)?,
        ScanTarget::Qbessel => {
            let kind = match a.kind {
                Kind::J1 => QBesselKind::J1,
                Kind::J2 => QBesselKind::J2,
                Kind::J3 => QBesselKind::J3,
            };
            qbessel_classical_limit_scan(kind, a.nu, a.x.re, &grid, &tol)?
        }
    };
    Ok((2..=a.kmax).zip(rows).collect())
}

#[derive(Serialize)]
struct JsonRow {
    k: u32,
    p: Num,
    value_re: Num,
    value_im: Num,
    target_re: Num,
    target_im: Num,
    abs_error: Num,
}

pub fn render(rows: &[(u32, LimitScanRow)], json: bool) -> String {
    if json {
        let j: Vec<JsonRow> = rows
            .iter()
            .map(|&(k, r)| JsonRow {
                k,
                p: Num(r.p),
                value_re: Num(r.value.re),
                value_im: Num(r.value.im),
                target_re: Num(r.target.re),
                target_im: Num(r.target.im),
                abs_error: Num(r.abs_error),
            })
            .collect();
        return serde_json::to_string(&j).expect("serializable rows") + "\n";
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for &(k, r) in rows {
        let fields = [r.p, r.value.re, r.value.im, r.target.re, r.target.im, r.abs_error].map(fmt_real);
        writeln!(out, "{k},{}", fields.join(",")).expect("write to String");
    }
    out
}
