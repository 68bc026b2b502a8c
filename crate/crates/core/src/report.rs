//! Per-`k` summary combining the spectrum, the exact determinant and the
//! standard consistency checks.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::dirac_cp1::{
    charpoly_exact, exact_spectrum, kernel_dim, operator_size, p_closed_form, spectrum_of, CharPoly,
};
use crate::error::Result;
use crate::verify::{measure, Check, Mode, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub mode: Mode,
    pub tol: Tolerances,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            mode: Mode::Float,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub k: u32,
    pub m: usize,
    /// Ascending eigenvalues of `D_k`. In exact mode these are the
    /// exact-bisection values rounded to `f64`.
    pub eigenvalues: Vec<f64>,
    pub kernel_dim: usize,
    pub abs_det: BigInt,
    pub signed_det: BigInt,
    pub charpoly: CharPoly,
    pub p_diag: Vec<i64>,
    /// Outcomes of [`Check::REPORT`], in that order.
    pub checks: Vec<(Check, bool)>,
}

impl SpectrumReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn spectrum_report(k: u32, opts: &ReportOptions) -> Result<SpectrumReport> {
    let m = operator_size(k)?;
    let charpoly = charpoly_exact(k)?;
    let mut checks = Vec::with_capacity(Check::REPORT.len());
    for check in Check::REPORT {
        let passed = measure(check, k, opts.mode, &opts.tol)?.is_none_or(|r| r.passed);
        checks.push((check, passed));
    }
    let eigenvalues = match opts.mode {
        Mode::Exact => exact_spectrum(k)?
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect(),
        Mode::Float | Mode::Both => spectrum_of(k)?,
    };
    Ok(SpectrumReport {
        k,
        m,
        eigenvalues,
        kernel_dim: kernel_dim(k)?,
        abs_det: charpoly.abs_constant(),
        signed_det: charpoly.signed_det(),
        p_diag: p_closed_form(k)?,
        charpoly,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_report() {
        let r = spectrum_report(3, &ReportOptions::default()).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.kernel_dim, 0);
        assert_eq!(r.abs_det, BigInt::from(6));
        assert_eq!(r.signed_det, BigInt::from(-6));
        assert_eq!(r.p_diag, vec![12, -12]);
        assert!((r.eigenvalues[1] - 6f64.sqrt()).abs() < 1e-12);
        assert!(r.all_passed());
    }

    #[test]
    fn k1_report() {
        let r = spectrum_report(1, &ReportOptions::default()).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0]);
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.abs_det, BigInt::from(0));
    }

    #[test]
    fn exact_mode_eigenvalues_agree() {
        let opts = ReportOptions {
            mode: Mode::Exact,
            ..ReportOptions::default()
        };
        let exact = spectrum_report(9, &opts).unwrap();
        let float = spectrum_report(9, &ReportOptions::default()).unwrap();
        for (a, b) in exact.eigenvalues.iter().zip(&float.eigenvalues) {
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
        assert!(exact.all_passed());
    }
}
