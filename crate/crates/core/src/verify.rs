//! Named invariant checks, evaluated per `k` with a measured residual.
//!
//! Each check returns a [`Measurement`]; `passed` is decided exactly where the
//! arithmetic is exact, and against the configured [`Tolerances`] otherwise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::dirac_cp1::{
    assemble_closed_form, assemble_from_definition, charpoly_exact, charpoly_residual, det_product,
    exact_spectrum, kernel_parity_rule, norm_growth_row, operator_size, p_closed_form,
    p_from_a_squares, p_numeric, spectrum, spectrum_of,
};
use crate::error::{Error, Result};
use crate::hermite_clifford::{
    clifford_basis, omega_basis, oscillator_apply, MultiIndex, SpinorVector,
};
use crate::intertwiners::{hom_space, hom_space_oracle, Intertwiner};
use crate::scalar::{ComplexExt, Real};
use crate::su2_rep::build_rep;

/// Which arithmetic the assembly comparison runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Float,
    Exact,
    Both,
}

impl Mode {
    fn float(self) -> bool {
        matches!(self, Mode::Float | Mode::Both)
    }

    fn exact(self) -> bool {
        matches!(self, Mode::Exact | Mode::Both)
    }
}

/// Floating-point tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalue comparisons (symmetry, coincidence of spectra).
    pub eig: f64,
    /// Entrywise agreement of the two assembly routes in double precision.
    pub matching: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig: 1e-10,
            matching: 1e-12,
        }
    }
}

/// Bound on `|p(λ)| / (1 + |λ|^m)` for the exact-bisection eigenvalues.
pub const CHARPOLY_RESIDUAL_BOUND: f64 = 1e-6;
/// Agreement of double-precision eigenvalues with the exact-bisection ones,
/// relative to `1 + |λ|`.
pub const EIGEN_AGREEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    LadderCommutator,
    Oscillator,
    RepBracket,
    HomOracle,
    IntertwinerEquivariance,
    DimInvariant,
    AssemblyMatch,
    UnitaryEquivalence,
    Symmetry,
    SpectraCoincide,
    KernelRule,
    CharpolyParity,
    PEigenvalues,
    DetMagnitude,
    EigenResidual,
    NormBound,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::LadderCommutator,
        Check::Oscillator,
        Check::RepBracket,
        Check::HomOracle,
        Check::IntertwinerEquivariance,
        Check::DimInvariant,
        Check::AssemblyMatch,
        Check::UnitaryEquivalence,
        Check::Symmetry,
        Check::SpectraCoincide,
        Check::KernelRule,
        Check::CharpolyParity,
        Check::PEigenvalues,
        Check::DetMagnitude,
        Check::EigenResidual,
        Check::NormBound,
    ];

    /// The subset carried in every spectrum report.
    pub const REPORT: [Check; 6] = [
        Check::AssemblyMatch,
        Check::Symmetry,
        Check::SpectraCoincide,
        Check::KernelRule,
        Check::PEigenvalues,
        Check::NormBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::LadderCommutator => "ladder-commutator",
            Check::Oscillator => "oscillator",
            Check::RepBracket => "rep-bracket",
            Check::HomOracle => "hom-oracle",
            Check::IntertwinerEquivariance => "intertwiner-equivariance",
            Check::DimInvariant => "dim-invariant",
            Check::AssemblyMatch => "assembly-match",
            Check::UnitaryEquivalence => "unitary-equivalence",
            Check::Symmetry => "symmetry",
            Check::SpectraCoincide => "spectra-coincide",
            Check::KernelRule => "kernel-rule",
            Check::CharpolyParity => "charpoly-parity",
            Check::PEigenvalues => "p-eigenvalues",
            Check::DetMagnitude => "det-magnitude",
            Check::EigenResidual => "eigen-residual",
            Check::NormBound => "norm-bound",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub passed: bool,
    pub residual: f64,
}

impl Measurement {
    fn exact(passed: bool) -> Self {
        Measurement {
            passed,
            residual: if passed { 0.0 } else { 1.0 },
        }
    }

    fn within(residual: f64, tol: f64) -> Self {
        Measurement {
            passed: residual <= tol,
            residual,
        }
    }

    fn and(self, other: Measurement) -> Self {
        Measurement {
            passed: self.passed && other.passed,
            residual: self.residual.max(other.residual),
        }
    }
}

/// Every multi-index in `n` variables of degree at most `max_degree`.
pub fn multi_indices(n: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(pos: usize, left: usize, current: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == current.len() {
            out.push(MultiIndex::new(current.clone()));
            return;
        }
        for a in 0..=left {
            current[pos] = a as u32;
            rec(pos + 1, left - a, current, out);
        }
        current[pos] = 0;
    }
    rec(0, max_degree, &mut current, &mut out);
    out
}

/// Largest modulus of `([X_a·, X_b·] + i ω₀(X_a, X_b)) h_α` over all basis pairs
/// and all `|α| <= trunc − 2`. Also fails if any product overflowed the window.
pub fn ladder_commutator_residual<T: Real>(n: usize, trunc: usize) -> Measurement {
    let mut worst = Measurement::exact(true);
    for alpha in multi_indices(n, trunc.saturating_sub(2)) {
        let phi = SpinorVector::<T>::basis(trunc, alpha, Complex::new(T::one(), T::zero()))
            .expect("interior index fits");
        for a in 0..2 * n {
            for b in 0..2 * n {
                let ab = clifford_basis(a, &clifford_basis(b, &phi).unwrap()).unwrap();
                let ba = clifford_basis(b, &clifford_basis(a, &phi).unwrap()).unwrap();
                let omega = T::from_int(omega_basis(n, a, b));
                let defect = ab
                    .minus(&ba)
                    .unwrap()
                    .plus(&phi.scaled(&Complex::imag(omega)))
                    .unwrap();
                let clean = defect.overflow().is_none();
                worst = worst.and(Measurement {
                    passed: clean && defect.near_zero(1e-14),
                    residual: defect.max_abs(),
                });
            }
        }
    }
    worst
}

/// Largest modulus of `H₀ h_l + (2l+1)/2 · h_l` over `l <= max_level`.
pub fn oscillator_residual<T: Real>(max_level: u32) -> Measurement {
    let mut worst = Measurement::exact(true);
    for l in 0..=max_level {
        let h = SpinorVector::<T>::hermite(l as usize + 2, l).unwrap();
        let image = oscillator_apply(&h).unwrap();
        let expected = h.scaled(&Complex::real(T::ratio(-(2 * i64::from(l) + 1), 2)));
        let defect = image.minus(&expected).unwrap();
        worst = worst.and(Measurement {
            passed: defect.overflow().is_none() && defect.near_zero(1e-14),
            residual: defect.max_abs(),
        });
    }
    worst
}

fn sorted_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Evaluates one check at `k`. `Ok(None)` when the check does not apply
/// (the determinant magnitude is only defined for even `m`).
pub fn measure(check: Check, k: u32, mode: Mode, tol: &Tolerances) -> Result<Option<Measurement>> {
    type Q = BigRational;
    let m = operator_size(k)?;
    let window = m + 1;
    let result = match check {
        Check::LadderCommutator => ladder_commutator_residual::<Q>(1, window)
            .and(ladder_commutator_residual::<Q>(2, window)),
        Check::Oscillator => oscillator_residual::<Q>(window.saturating_sub(2) as u32),
        Check::RepBracket => {
            let rep = build_rep::<Q>(k);
            Measurement::exact(crate::su2_rep::check_bracket(&rep))
        }
        Check::HomOracle => Measurement::exact(
            (0..=k + 2).all(|l| hom_space::<Q>(k, l).dim == hom_space_oracle::<Q>(k, l)),
        ),
        Check::IntertwinerEquivariance => {
            let worst = (0..m as u32)
                .map(|l| Intertwiner::<Q>::canonical(k, l).map(|g| g.equivariance_residual()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Measurement::exact(worst == 0.0)
        }
        Check::DimInvariant => {
            let counted: usize =
                (0..=k + 2).map(|l| hom_space::<Q>(k, l).dim).sum::<usize>() * (k as usize + 1);
            Measurement::exact(counted == (k as usize + 1).pow(2) / 2)
        }
        Check::AssemblyMatch => {
            let mut out = Measurement::exact(true);
            if mode.exact() {
                let (d, dt) = assemble_from_definition::<Q>(k)?;
                let (cd, cdt) = assemble_closed_form::<Q>(k)?;
                out = out.and(Measurement::exact(
                    d.matches(&cd, 0.0) && dt.matches(&cdt, 0.0),
                ));
            }
            if mode.float() {
                let (d, dt) = assemble_from_definition::<f64>(k)?;
                let (cd, cdt) = assemble_closed_form::<f64>(k)?;
                let dev = d.max_deviation(&cd).max(dt.max_deviation(&cdt));
                out = out.and(Measurement::within(dev, tol.matching));
            }
            out
        }
        Check::UnitaryEquivalence => {
            let (d, dt) = assemble_closed_form::<Q>(k)?;
            Measurement::exact(d.conjugate_by_i_powers().matches(&dt, 0.0))
        }
        Check::Symmetry => {
            let ev = spectrum_of(k)?;
            let negated: Vec<f64> = ev.iter().rev().map(|x| -x).collect();
            Measurement::within(sorted_gap(&ev, &negated), tol.eig)
        }
        Check::SpectraCoincide => {
            let (d, dt) = assemble_closed_form::<f64>(k)?;
            let gap = sorted_gap(&spectrum(&d)?, &spectrum(&dt)?);
            Measurement::within(gap, tol.eig)
        }
        Check::KernelRule => {
            let singular = charpoly_exact(k)?.constant_term().is_zero();
            Measurement::exact(usize::from(singular) == kernel_parity_rule(k)?)
        }
        Check::CharpolyParity => {
            let p = charpoly_exact(k)?;
            let monic = p.coeffs.last().is_some_and(|c| *c == BigInt::from(1));
            Measurement::exact(monic && p.degree() == m && p.has_parity_form())
        }
        Check::PEigenvalues => {
            let closed = p_closed_form(k)?;
            let (diag, off) = p_numeric(k)?;
            let drift = diag
                .iter()
                .zip(&closed)
                .map(|(x, c)| (x - *c as f64).abs())
                .fold(0.0, f64::max);
            let rounded = diag
                .iter()
                .map(|x| x.round() as i64)
                .eq(closed.iter().copied());
            let via_a = p_from_a_squares(k)?
                .iter()
                .zip(&closed)
                .all(|(a, c)| *a == BigInt::from(*c));
            Measurement {
                passed: off < crate::dirac_cp1::P_OFF_DIAGONAL_TOL && rounded && via_a,
                residual: off.max(drift),
            }
        }
        Check::DetMagnitude => {
            if m % 2 == 1 {
                return Ok(None);
            }
            let p = charpoly_exact(k)?;
            Measurement::exact(p.abs_constant() == det_product(k)?)
        }
        Check::EigenResidual => {
            // residual: exact |p(λ)| / (1 + |λ|^m); the double-precision
            // spectrum must also agree with the exact one
            let p = charpoly_exact(k)?;
            let exact = exact_spectrum(k)?;
            let disagreement = exact
                .iter()
                .zip(&spectrum_of(k)?)
                .map(|(e, f)| {
                    let e = e.to_f64().unwrap_or(f64::NAN);
                    (e - f).abs() / (1.0 + e.abs())
                })
                .fold(0.0, f64::max);
            let residual = charpoly_residual(&p, &exact);
            Measurement {
                passed: residual <= CHARPOLY_RESIDUAL_BOUND && disagreement <= EIGEN_AGREEMENT_TOL,
                residual,
            }
        }
        Check::NormBound => {
            let row = norm_growth_row(k)?;
            Measurement {
                passed: row.holds(tol.eig),
                residual: (row.a_k1 - row.max_abs_eigenvalue).max(0.0),
            }
        }
    };
    Ok(Some(result))
}

/// One line of a verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub check: Check,
    pub k: u32,
    pub measurement: Measurement,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} k={} {} residual={:.3e}",
            if self.measurement.passed {
                "PASS"
            } else {
                "FAIL"
            },
            self.k,
            self.check,
            self.measurement.residual
        )
    }
}

/// Runs `checks` at `k`, in the given order, skipping checks that do not apply.
pub fn run_checks(k: u32, checks: &[Check], mode: Mode, tol: &Tolerances) -> Result<Vec<Outcome>> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenDegree(k));
    }
    let mut out = Vec::with_capacity(checks.len());
    for &check in checks {
        if let Some(measurement) = measure(check, k, mode, tol)? {
            out.push(Outcome {
                check,
                k,
                measurement,
            });
        }
    }
    Ok(out)
}
