use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ComplexExt, Real};
use crate::CMatrix;

/// Basis of `𝐔_k` a matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `L_{k,0}, …, L_{k,m−1}`.
    Unnormalized,
    /// `L°_{k,0}, …, L°_{k,m−1}`.
    Normalized,
}

/// Number of the form `coeff · √radicand` with `radicand >= 0`.
///
/// Entries of `D_k` in the normalized basis are square roots of integers, so
/// exact arithmetic keeps the radicand apart from the Gaussian-rational factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd<T> {
    pub coeff: Complex<T>,
    pub radicand: T,
}

impl<T: Real> Surd<T> {
    pub fn zero() -> Self {
        Surd {
            coeff: Complex::zero(),
            radicand: T::one(),
        }
    }

    pub fn from_coeff(coeff: Complex<T>) -> Self {
        Surd {
            coeff,
            radicand: T::one(),
        }
    }

    pub fn new(coeff: Complex<T>, radicand: T) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        Surd { coeff, radicand }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero() || self.radicand.is_zero()
    }

    /// `(coeff·√r)² = coeff²·r`.
    pub fn square(&self) -> Complex<T> {
        self.coeff.clone() * self.coeff.clone() * self.radicand.clone()
    }

    /// `|coeff·√r|² = |coeff|²·r`.
    pub fn abs_sq(&self) -> T {
        self.coeff.norm_sqr_exact() * self.radicand.clone()
    }

    pub fn conj(&self) -> Self {
        Surd {
            coeff: self.coeff.conj(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn scaled(&self, c: &Complex<T>) -> Self {
        Surd {
            coeff: self.coeff.clone() * c.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Value in `T` when the radicand has a square root there.
    pub fn value(&self) -> Option<Complex<T>> {
        let root = self.radicand.sqrt_checked()?;
        Some(self.coeff.clone() * root)
    }

    pub fn to_c64(&self) -> Complex64 {
        let root = self.radicand.to_f64_value().sqrt();
        Complex64::new(
            self.coeff.re.to_f64_value() * root,
            self.coeff.im.to_f64_value() * root,
        )
    }

    /// Equality: exact for exact scalars, `|a − b| <= tol` otherwise.
    ///
    /// Exactly, `c₁√r₁ = c₂√r₂` iff the squares agree and `c₁·c̄₂` is a
    /// non-negative real, i.e. the phases match.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        if !T::EXACT {
            return (self.to_c64() - other.to_c64()).norm() <= tol;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let phase = self.coeff.clone() * other.coeff.conj();
        self.square() == other.square() && phase.im.is_zero() && phase.re.is_positive()
    }
}

/// Matrix of `D_k`, `D̃_k` (or any operator on `𝐔_k`) in a chosen basis.
///
/// Columns are images: entry `(r, c)` is the coefficient of basis map `r` in the
/// image of basis map `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrix<T: Real> {
    pub k: u32,
    pub basis: Basis,
    pub entries: DMatrix<Surd<T>>,
}

impl<T: Real> DiracMatrix<T> {
    pub fn zeros(k: u32, basis: Basis) -> Self {
        let m = (k as usize).div_ceil(2);
        DiracMatrix {
            k,
            basis,
            entries: DMatrix::from_element(m, m, Surd::zero()),
        }
    }

    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> &Surd<T> {
        &self.entries[(row, col)]
    }

    /// Complex matrix in `T`; `None` if some radicand has no root in `T`.
    pub fn evaluate(&self) -> Option<CMatrix<T>> {
        let m = self.m();
        let mut out = DMatrix::from_element(m, m, Complex::zero());
        for r in 0..m {
            for c in 0..m {
                out[(r, c)] = self.entries[(r, c)].value()?;
            }
        }
        Some(out)
    }

    pub fn to_c64(&self) -> DMatrix<Complex64> {
        self.entries.map(|s| s.to_c64())
    }

    /// Largest entrywise deviation, computed in double precision.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        (self.to_c64() - other.to_c64())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise [`Surd::matches`], also requiring the same size and basis.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        self.k == other.k
            && self.basis == other.basis
            && self.entries.shape() == other.entries.shape()
            && self
                .entries
                .iter()
                .zip(other.entries.iter())
                .all(|(a, b)| a.matches(b, tol))
    }

    /// `U·A·U⁻¹` with `U = diag(i⁰, i¹, …, i^{m−1})`, exactly.
    pub fn conjugate_by_i_powers(&self) -> Self {
        let mut out = self.clone();
        for r in 0..self.m() {
            for c in 0..self.m() {
                let phase = Complex::i_pow(r as i64 - c as i64);
                out.entries[(r, c)] = self.entries[(r, c)].scaled(&phase);
            }
        }
        out
    }

    pub fn check_tridiagonal(&self) -> Result<()> {
        let m = self.m();
        for r in 0..m {
            for c in 0..m {
                if r.abs_diff(c) > 1 && !self.entries[(r, c)].is_zero() {
                    return Err(Error::NotTridiagonal { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    /// `A = A^*` entrywise (exact, or within `tol`).
    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let m = self.m();
        for r in 0..m {
            for c in r..m {
                let a = &self.entries[(r, c)];
                let b = self.entries[(c, r)].conj();
                if !a.matches(&b, tol) {
                    return Err(Error::NotHermitian { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn diagonal_is_zero(&self) -> bool {
        (0..self.m()).all(|i| self.entries[(i, i)].is_zero())
    }
}

/// Commutator `i[A, B] = i(AB − BA)`.
pub fn i_commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (a * b - b * a).map(|z| z * Complex64::i())
}

/// Diagonal unitary `Φ` such that `Φ⁻¹ A Φ` has non-negative real off-diagonals,
/// for a Hermitian tridiagonal `A`. Returns the phases and the real matrix as
/// (diagonal, off-diagonal).
pub fn phase_strip(
    a: &DMatrix<Complex64>,
    tol: f64,
) -> Result<(Vec<Complex64>, Vec<f64>, Vec<f64>)> {
    let m = a.nrows();
    let mut phases = Vec::with_capacity(m);
    if m > 0 {
        phases.push(Complex64::one());
    }
    for l in 1..m {
        let b = a[(l, l - 1)];
        let unit = if b.norm() == 0.0 {
            Complex64::one()
        } else {
            b / b.norm()
        };
        phases.push(phases[l - 1] * unit);
    }
    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    for l in 0..m {
        let d = a[(l, l)];
        if d.im.abs() > tol {
            return Err(Error::NotHermitian { row: l, col: l });
        }
        diag.push(d.re);
        if l + 1 < m {
            // (Φ⁻¹AΦ)_{l+1,l} = conj(φ_{l+1}) a_{l+1,l} φ_l
            let sub = phases[l + 1].conj() * a[(l + 1, l)] * phases[l];
            let sup = phases[l].conj() * a[(l, l + 1)] * phases[l + 1];
            if sub.im.abs() > tol || sup.im.abs() > tol || (sub.re - sup.re).abs() > tol {
                return Err(Error::NotHermitian { row: l, col: l + 1 });
            }
            off.push(sub.re);
        }
    }
    Ok((phases, diag, off))
}
