//! Spectral data of `D_k`, `D̃_k` and `P_k = i[D̃_k, D_k]`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::assembly::{a_coeff, assemble_closed_form, operator_size};
use super::charpoly::{charpoly_exact, CharPoly};
use super::dyadic::IntegerJacobi;
use super::matrix::{i_commutator, phase_strip, Basis, DiracMatrix};
use super::sturm::{Bisection, SymTridiagonal};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance for Hermiticity and phase-stripping checks in floating point.
const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal bound for the numerically formed `i[D̃_k, D_k]`.
pub const P_OFF_DIAGONAL_TOL: f64 = 1e-10;

fn validate<T: Real>(d: &DiracMatrix<T>) -> Result<()> {
    if d.basis != Basis::Normalized {
        return Err(Error::Invariant(
            "spectra are taken in the normalized basis".into(),
        ));
    }
    d.check_tridiagonal()?;
    d.check_hermitian(HERMITIAN_TOL)
}

/// Real symmetric tridiagonal form of a Hermitian tridiagonal `D`.
///
/// Floats: evaluate, then conjugate by the diagonal unitary that makes the
/// off-diagonal real and non-negative (`diag(i^l)` for `D̃_k`). Exact: the
/// phases drop out of `|b|²`, which is all the Sturm count needs.
pub fn to_sym_tridiagonal<T: Real>(d: &DiracMatrix<T>) -> Result<SymTridiagonal<T>> {
    validate(d)?;
    let m = d.m();
    if T::EXACT {
        let diag = (0..m).map(|i| d.get(i, i).coeff.re.clone()).collect();
        let off_sq = (1..m).map(|i| d.get(i, i - 1).abs_sq()).collect();
        return Ok(SymTridiagonal::new(diag, off_sq));
    }
    let (_, diag, off) = phase_strip(&d.to_c64(), HERMITIAN_TOL)?;
    Ok(SymTridiagonal::new(
        diag.into_iter().map(T::from_f64_value).collect(),
        off.into_iter().map(|b| T::from_f64_value(b * b)).collect(),
    ))
}

/// Sorted eigenvalues of a Hermitian tridiagonal matrix in the `L°` basis.
pub fn spectrum<T: Real>(d: &DiracMatrix<T>) -> Result<Vec<T>> {
    spectrum_with(d, &Bisection::for_scalar::<T>())
}

pub fn spectrum_with<T: Real>(d: &DiracMatrix<T>, tol: &Bisection) -> Result<Vec<T>> {
    Ok(to_sym_tridiagonal(d)?.eigenvalues(tol))
}

/// Eigenvalues of `D_k` in double precision.
pub fn spectrum_of(k: u32) -> Result<Vec<f64>> {
    let (d, _) = assemble_closed_form::<f64>(k)?;
    spectrum(&d)
}

/// `P_k` in closed form: `(k+1)² − 3(2l+1)² − 1`, `l = 0..m`.
pub fn p_closed_form(k: u32) -> Result<Vec<i64>> {
    let m = operator_size(k)?;
    let k = i64::from(k);
    Ok((0..m as i64)
        .map(|l| (k + 1).pow(2) - 3 * (2 * l + 1).pow(2) - 1)
        .collect())
}

/// `2(a_{k,l+1}² − a_{k,l}²)` for `l = 0..m`.
pub fn p_from_a_squares(k: u32) -> Result<Vec<BigInt>> {
    let m = operator_size(k)?;
    (0..m as u32)
        .map(|l| Ok(BigInt::from(2) * (a_coeff(k, l + 1)?.square - a_coeff(k, l)?.square)))
        .collect()
}

/// Numerical `i[D̃_k, D_k]` from the closed-form matrices, as (diagonal,
/// largest off-diagonal modulus).
pub fn p_numeric(k: u32) -> Result<(Vec<f64>, f64)> {
    let (d, dt) = assemble_closed_form::<f64>(k)?;
    let p = i_commutator(&dt.to_c64(), &d.to_c64());
    let m = p.nrows();
    let diag = (0..m).map(|i| p[(i, i)].re).collect();
    let mut off: f64 = 0.0;
    for r in 0..m {
        for c in 0..m {
            let z: Complex64 = p[(r, c)];
            if r != c {
                off = off.max(z.norm());
            } else {
                off = off.max(z.im.abs());
            }
        }
    }
    Ok((diag, off))
}

/// Diagonal of `P_k = i[D̃_k, D_k]` in the `L°` basis.
///
/// Returns the closed form after checking it against the numerical commutator
/// and against `2(a_{k,l+1}² − a_{k,l}²)`.
pub fn p_operator(k: u32) -> Result<Vec<i64>> {
    let closed = p_closed_form(k)?;
    let (diag, off) = p_numeric(k)?;
    if off >= P_OFF_DIAGONAL_TOL {
        return Err(Error::Invariant(format!(
            "i[D~_{k}, D_{k}] is not diagonal (off = {off:e})"
        )));
    }
    let rounded: Vec<i64> = diag.iter().map(|x| x.round() as i64).collect();
    if rounded != closed {
        return Err(Error::Invariant(format!(
            "P_{k} diagonal {rounded:?} differs from {closed:?}"
        )));
    }
    let from_a = p_from_a_squares(k)?;
    if from_a
        .iter()
        .zip(&closed)
        .any(|(a, c)| *a != BigInt::from(*c))
    {
        return Err(Error::Invariant(format!(
            "P_{k} disagrees with 2(a²_(l+1) − a²_l)"
        )));
    }
    Ok(closed)
}

/// `1` iff `(k+1)/2` is odd.
pub fn kernel_parity_rule(k: u32) -> Result<usize> {
    Ok(operator_size(k)? % 2)
}

/// `dim ker D_k`, decided by the constant term of the exact characteristic
/// polynomial (zero iff singular; at most one-dimensional since all
/// `a_{k,l}`, `l >= 1`, are nonzero).
pub fn kernel_dim(k: u32) -> Result<usize> {
    let p = charpoly_exact(k)?;
    let dim = usize::from(p.constant_term().is_zero());
    let rule = kernel_parity_rule(k)?;
    if dim != rule {
        return Err(Error::Invariant(format!(
            "kernel of D_{k}: charpoly says {dim}, parity rule {rule}"
        )));
    }
    Ok(dim)
}

/// `∏_{r=1}^{(k+1)/4} a_{k,2r−1}²`.
pub fn det_product(k: u32) -> Result<BigInt> {
    let m = operator_size(k)?;
    (1..=m / 2).try_fold(BigInt::from(1), |acc, r| {
        Ok(acc * a_coeff(k, (2 * r - 1) as u32)?.square)
    })
}

/// `|det D_k|` for `(k+1)/2` even, from the exact characteristic polynomial,
/// checked against [`det_product`].
pub fn abs_det(k: u32) -> Result<BigInt> {
    let m = operator_size(k)?;
    if m % 2 == 1 {
        return Err(Error::SingularOperator(k));
    }
    let p = charpoly_exact(k)?;
    let from_poly = p.abs_constant();
    let product = det_product(k)?;
    if from_poly != product {
        return Err(Error::Invariant(format!(
            "|det D_{k}| = {from_poly} but product = {product}"
        )));
    }
    Ok(from_poly)
}

/// One row of [`norm_growth`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormGrowth {
    pub k: u32,
    pub max_abs_eigenvalue: f64,
    pub a_k1: f64,
    pub lower_bound: f64,
}

impl NormGrowth {
    /// `max|λ| >= a_{k,1} >= (k−1)/2`, the first inequality up to `slack`.
    pub fn holds(&self, slack: f64) -> bool {
        let a2 = a_coeff(self.k, 1).map(|a| a.square).unwrap_or_default();
        let k = BigInt::from(self.k);
        let exact_lower = BigInt::from(4) * a2 >= (&k - 1) * (&k - 1);
        self.max_abs_eigenvalue >= self.a_k1 - slack * (1.0 + self.a_k1) && exact_lower
    }
}

pub fn norm_growth_row(k: u32) -> Result<NormGrowth> {
    let max_abs_eigenvalue = spectrum_of(k)?.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let a_k1 = a_coeff(k, 1)?.value;
    Ok(NormGrowth {
        k,
        max_abs_eigenvalue,
        a_k1,
        lower_bound: (f64::from(k) - 1.0) / 2.0,
    })
}

/// `‖D_k‖ = max|λ| >= ‖D_k L°_{k,0}‖ = a_{k,1} >= (k−1)/2` for every odd `k <= k_max`.
pub fn norm_growth(k_max: u32) -> Result<Vec<NormGrowth>> {
    operator_size(k_max)?;
    (1..=k_max)
        .step_by(2)
        .map(|k| {
            let row = norm_growth_row(k)?;
            if !row.holds(1e-12) {
                return Err(Error::Invariant(format!(
                    "norm bound fails at k = {k}: {row:?}"
                )));
            }
            Ok(row)
        })
        .collect()
}

/// Largest `|p(λ)| / (1 + |λ|^m)` over the eigenvalues, with `p` evaluated exactly.
pub fn charpoly_residual(p: &CharPoly, eigenvalues: &[BigRational]) -> f64 {
    let m = p.degree() as i32;
    eigenvalues
        .iter()
        .map(|x| {
            let value = p.eval(x).abs();
            let scale = BigRational::from_integer(1.into()) + num_traits::pow(x.abs(), m as usize);
            (value / scale).to_f64().unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

/// Eigenvalues of `D_k` bracketed in exact arithmetic to relative width
/// `2^-100` (absolute `2^-133` near zero), seeded from the double-precision
/// spectrum.
pub fn exact_spectrum(k: u32) -> Result<Vec<BigRational>> {
    let m = operator_size(k)?;
    let off_sq = (1..m as u32)
        .map(|l| a_coeff(k, l).map(|a| a.square))
        .collect::<Result<Vec<_>>>()?;
    let jacobi = IntegerJacobi::new(vec![BigInt::zero(); m], off_sq);
    Ok(spectrum_of(k)?
        .into_iter()
        .enumerate()
        .map(|(i, guess)| jacobi.eigenvalue(i, Some(guess), 100, 133))
        .collect())
}
