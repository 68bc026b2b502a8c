//! Irreducible representations `τ_k` of SU(2) on homogeneous polynomials of
//! degree `k` in `(z₁, z₂)`, at the Lie-algebra level.
//!
//! Matrices act on coefficient columns in the basis `p_{k,j} = z₁^{k−j} z₂^j`,
//! so column `j` of a matrix is the image of `p_{k,j}`.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{ComplexExt, Real};
use crate::CMatrix;

/// Basis of `𝔰𝔲(2)`: `E₀` spans `𝔲(1)`, `{E₁, E₂}` is a symplectic basis of `𝔪`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E0,
    E1,
    E2,
}

/// Element of `𝔙_k` in the basis `p_{k,0}, …, p_{k,k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVector<T> {
    k: u32,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> PolyVector<T> {
    pub fn new(k: u32, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != k as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: k as usize + 1,
                found: coeffs.len(),
            });
        }
        Ok(PolyVector { k, coeffs })
    }

    /// `p_{k,j}`.
    pub fn monomial(k: u32, j: u32) -> Result<Self> {
        if j > k {
            return Err(Error::IndexOutOfRange { k, l: j });
        }
        let mut coeffs = vec![Complex::zero(); k as usize + 1];
        coeffs[j as usize] = Complex::real(T::one());
        Ok(PolyVector { k, coeffs })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }
}

/// `(τ_k)_*(E₀)`, `(τ_k)_*(E₁)`, `(τ_k)_*(E₂)` as `(k+1)×(k+1)` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct RepMatrices<T: Real> {
    pub k: u32,
    pub e0: CMatrix<T>,
    pub e1: CMatrix<T>,
    pub e2: CMatrix<T>,
}

impl<T: Real> RepMatrices<T> {
    pub fn matrix(&self, g: Generator) -> &CMatrix<T> {
        match g {
            Generator::E0 => &self.e0,
            Generator::E1 => &self.e1,
            Generator::E2 => &self.e2,
        }
    }

    pub fn apply(&self, g: Generator, v: &PolyVector<T>) -> Result<PolyVector<T>> {
        if v.k != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k as usize + 1,
                found: v.k as usize + 1,
            });
        }
        let m = self.matrix(g);
        let coeffs = (0..m.nrows())
            .map(|row| {
                (0..m.ncols()).fold(Complex::zero(), |acc, col| {
                    acc + m[(row, col)].clone() * v.coeffs[col].clone()
                })
            })
            .collect();
        Ok(PolyVector { k: self.k, coeffs })
    }

    /// `[E₀,E₁] − 2E₂`, `[E₀,E₂] + 2E₁`, `[E₁,E₂] − 2E₀`; all zero for a representation.
    pub fn bracket_defects(&self) -> [CMatrix<T>; 3] {
        let two = Complex::real(T::from_int(2));
        let comm = |a: &CMatrix<T>, b: &CMatrix<T>| a * b - b * a;
        let twice = |m: &CMatrix<T>| m.map(|x| x * two.clone());
        [
            comm(&self.e0, &self.e1) - twice(&self.e2),
            comm(&self.e0, &self.e2) + twice(&self.e1),
            comm(&self.e1, &self.e2) - twice(&self.e0),
        ]
    }

    /// Largest entry modulus over the three bracket defects.
    pub fn bracket_residual(&self) -> f64 {
        self.bracket_defects()
            .iter()
            .flat_map(|m| m.iter().map(ComplexExt::magnitude))
            .fold(0.0, f64::max)
    }
}

/// Builds `(τ_k)_*` on `E₀, E₁, E₂`:
///
/// ```text
/// E₀ p_{k,j} = i(2j−k) p_{k,j}
/// E₁ p_{k,j} = (j−k) p_{k,j+1} + j p_{k,j−1}
/// E₂ p_{k,j} = i(j−k) p_{k,j+1} − i j p_{k,j−1}
/// ```
pub fn build_rep<T: Real>(k: u32) -> RepMatrices<T> {
    let dim = k as usize + 1;
    let kk = i64::from(k);
    let mut e0 = DMatrix::from_element(dim, dim, Complex::zero());
    let mut e1 = e0.clone();
    let mut e2 = e0.clone();
    for j in 0..dim {
        let jj = j as i64;
        e0[(j, j)] = Complex::imag(T::from_int(2 * jj - kk));
        if j + 1 < dim {
            e1[(j + 1, j)] = Complex::real(T::from_int(jj - kk));
            e2[(j + 1, j)] = Complex::imag(T::from_int(jj - kk));
        }
        if j >= 1 {
            e1[(j - 1, j)] = Complex::real(T::from_int(jj));
            e2[(j - 1, j)] = Complex::imag(T::from_int(-jj));
        }
    }
    RepMatrices { k, e0, e1, e2 }
}

/// `true` iff the `𝔰𝔲(2)` bracket relations hold: exactly for exact scalars,
/// entrywise within `1e-13` for floats.
pub fn check_bracket<T: Real>(rep: &RepMatrices<T>) -> bool {
    rep.bracket_defects()
        .iter()
        .all(|m| m.iter().all(|x| x.near_zero(1e-13)))
}
