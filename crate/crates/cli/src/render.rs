//! Serialization of reports: JSON lines, CSV and a plain table.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Number, Value};
use symplectic_dirac::dirac_cp1::CharPoly;
use symplectic_dirac::report::SpectrumReport;
use symplectic_dirac::verify::Outcome;

/// `%.17g`-style rendering (17 significant digits) that always keeps a decimal
/// point or an exponent, so the value reads back as a float.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let body = if (-4..17).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if digits.len() > int_len {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            } else {
                format!("{digits}{}.0", "0".repeat(int_len - digits.len()))
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
        }
    } else {
        let frac = if digits.len() > 1 { &digits[1..] } else { "0" };
        format!("{}.{frac}e{exp}", &digits[..1])
    };
    format!("{sign}{body}")
}

fn float_number(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt_float(x)).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

fn int_number(s: &str) -> Number {
    Number::from_str(s).expect("valid JSON integer")
}

#[derive(Serialize)]
struct JsonReport {
    k: u32,
    m: usize,
    basis: &'static str,
    eigenvalues: Vec<Value>,
    kernel_dim: usize,
    abs_det: Number,
    charpoly: Vec<Number>,
    p_diag: Vec<i64>,
    checks: Map<String, Value>,
    signed_det: Number,
}

pub fn report_json(r: &SpectrumReport) -> String {
    let doc = JsonReport {
        k: r.k,
        m: r.m,
        basis: "L-circ",
        eigenvalues: r.eigenvalues.iter().map(|&x| float_number(x)).collect(),
        kernel_dim: r.kernel_dim,
        abs_det: int_number(&r.abs_det.to_string()),
        charpoly: r
            .charpoly
            .coeffs
            .iter()
            .map(|c| int_number(&c.to_string()))
            .collect(),
        p_diag: r.p_diag.clone(),
        checks: r
            .checks
            .iter()
            .map(|(c, ok)| (c.name().to_string(), Value::Bool(*ok)))
            .collect(),
        signed_det: int_number(&r.signed_det.to_string()),
    };
    serde_json::to_string(&doc).expect("report serializes")
}

pub const REPORT_CSV_HEADER: &str = "k,kernel_dim,abs_det,eigenvalues";

pub fn report_csv_row(r: &SpectrumReport) -> String {
    let eigenvalues: Vec<String> = r.eigenvalues.iter().map(|&x| fmt_float(x)).collect();
    format!(
        "{},{},{},{}",
        r.k,
        r.kernel_dim,
        r.abs_det,
        eigenvalues.join(";")
    )
}

pub fn report_table(reports: &[SpectrumReport]) -> String {
    let det_width = reports
        .iter()
        .map(|r| r.abs_det.to_string().len())
        .max()
        .unwrap_or(0)
        .max(7);
    let mut out = format!(
        "{:>4} {:>3} {:>6} {:>det_width$} {:<6} eigenvalues\n",
        "k", "m", "kernel", "abs_det", "checks"
    );
    for r in reports {
        let eigenvalues: Vec<String> = r.eigenvalues.iter().map(|&x| fmt_float(x)).collect();
        out.push_str(&format!(
            "{:>4} {:>3} {:>6} {:>det_width$} {:<6} {}\n",
            r.k,
            r.m,
            r.kernel_dim,
            r.abs_det,
            if r.all_passed() { "ok" } else { "FAIL" },
            eigenvalues.join(" ")
        ));
    }
    out
}

fn coeff_list(p: &CharPoly, sep: &str) -> String {
    p.coeffs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// JSON array of coefficients, lowest degree first. The degree identifies `k`.
pub fn charpoly_json(p: &CharPoly) -> String {
    format!("[{}]", coeff_list(p, ", "))
}

pub const CHARPOLY_CSV_HEADER: &str = "k,charpoly";

pub fn charpoly_csv_row(p: &CharPoly) -> String {
    format!("{},{}", p.k, coeff_list(p, ";"))
}

pub fn charpoly_table_row(p: &CharPoly) -> String {
    format!("k={:<4} {}", p.k, charpoly_json(p))
}

pub fn outcome_json(o: &Outcome) -> String {
    let mut obj = Map::new();
    obj.insert("k".into(), Value::from(o.k));
    obj.insert("check".into(), Value::from(o.check.name()));
    obj.insert("passed".into(), Value::Bool(o.measurement.passed));
    obj.insert("residual".into(), float_number(o.measurement.residual));
    Value::Object(obj).to_string()
}

pub const OUTCOME_CSV_HEADER: &str = "k,check,passed,residual";

pub fn outcome_csv_row(o: &Outcome) -> String {
    format!(
        "{},{},{},{}",
        o.k,
        o.check,
        o.measurement.passed,
        fmt_float(o.measurement.residual)
    )
}
