//! The two routes to `D_k` and `D̃_k` on `𝐔_k`.
//!
//! *Closed form*: in the normalized basis `L°_{k,l}` both operators are
//! tridiagonal with off-diagonal moduli `a_{k,l} = √(2l((k+1)²/4 − l²))`.
//!
//! *From the definition*: apply
//!
//! ```text
//! D_k(L) = −E₁·L∘(τ_k)_*(E₂) + E₂·L∘(τ_k)_*(E₁)
//! D̃_k(L) = −E₁·L∘(τ_k)_*(E₁) − E₂·L∘(τ_k)_*(E₂)
//! ```
//!
//! to each generator `L_{k,l}`, where `E₁·` and `E₂·` are Clifford
//! multiplication by `X₁` and `X₂` on `L²(ℝ)`, then read the result back in
//! the intertwiner basis.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{Basis, DiracMatrix, Surd};
use crate::error::{Error, Result};
use crate::hermite_clifford::{clifford_basis, SpinorVector};
use crate::intertwiners::{normalization_square, Intertwiner};
use crate::scalar::{ComplexExt, Real};
use crate::su2_rep::{build_rep, Generator, RepMatrices};

/// Residual tolerance when reading a float result back in the `L_{k,l}` basis.
const FLOAT_DECOMPOSE_TOL: f64 = 1e-9;

pub(crate) fn require_odd(k: u32) -> Result<()> {
    if k.is_multiple_of(2) {
        Err(Error::EvenDegree(k))
    } else {
        Ok(())
    }
}

/// `m = dim 𝐔_k = (k+1)/2`.
pub fn operator_size(k: u32) -> Result<usize> {
    require_odd(k)?;
    Ok((k as usize).div_ceil(2))
}

/// `a_{k,l}` with its exact square.
#[derive(Debug, Clone, PartialEq)]
pub struct ACoeff {
    pub square: BigInt,
    pub value: f64,
}

/// `a_{k,l}² = 2l((k+1)²/4 − l²)` for odd `k`, `0 <= l <= (k+1)/2`.
pub fn a_coeff(k: u32, l: u32) -> Result<ACoeff> {
    require_odd(k)?;
    let half = k.div_ceil(2);
    if l > half {
        return Err(Error::IndexOutOfRange { k, l });
    }
    let half = BigInt::from(half);
    let l = BigInt::from(l);
    let square = BigInt::from(2) * &l * (&half * &half - &l * &l);
    let value = square.to_f64().expect("finite").sqrt();
    Ok(ACoeff { square, value })
}

/// Coefficients of `D_k(L_{k,l}) = down·L_{k,l−1} + up·L_{k,l+1}`:
/// `down = l(k+1−2l)`, `up = (k+1)/2 + l + 1`.
pub fn unnormalized_coeffs(k: u32, l: u32) -> Result<(u64, u64)> {
    require_odd(k)?;
    if l > (k - 1) / 2 {
        return Err(Error::IndexOutOfRange { k, l });
    }
    let (k, l) = (u64::from(k), u64::from(l));
    Ok((l * (k + 1 - 2 * l), k.div_ceil(2) + l + 1))
}

/// Closed-form `D_k` and `D̃_k` in the normalized basis:
///
/// ```text
/// D_k(L°_l)  =     a_{k,l} L°_{l−1} +   a_{k,l+1} L°_{l+1}
/// D̃_k(L°_l) = −i a_{k,l} L°_{l−1} + i a_{k,l+1} L°_{l+1}
/// ```
///
/// Terms addressing `L°_{−1}` or `L°_m` are dropped.
pub fn assemble_closed_form<T: Real>(k: u32) -> Result<(DiracMatrix<T>, DiracMatrix<T>)> {
    let m = operator_size(k)?;
    let mut d = DiracMatrix::zeros(k, Basis::Normalized);
    let mut dt = DiracMatrix::zeros(k, Basis::Normalized);
    for l in 1..m {
        let a2 = T::from_bigint(&a_coeff(k, l as u32)?.square);
        // column l, row l−1 and its mirror
        d.entries[(l - 1, l)] = Surd::new(Complex::one(), a2.clone());
        d.entries[(l, l - 1)] = Surd::new(Complex::one(), a2.clone());
        dt.entries[(l - 1, l)] = Surd::new(-Complex::<T>::i(), a2.clone());
        dt.entries[(l, l - 1)] = Surd::new(Complex::i(), a2);
    }
    Ok((d, dt))
}

/// Closed-form matrices in the unnormalized basis `L_{k,l}`.
pub fn assemble_unnormalized_closed_form<T: Real>(
    k: u32,
) -> Result<(DiracMatrix<T>, DiracMatrix<T>)> {
    let m = operator_size(k)?;
    let mut d = DiracMatrix::zeros(k, Basis::Unnormalized);
    let mut dt = DiracMatrix::zeros(k, Basis::Unnormalized);
    for l in 0..m {
        let (down, up) = unnormalized_coeffs(k, l as u32)?;
        let down = T::from_int(down as i64);
        let up = T::from_int(up as i64);
        if l >= 1 {
            d.entries[(l - 1, l)] = Surd::from_coeff(Complex::real(down.clone()));
            dt.entries[(l - 1, l)] = Surd::from_coeff(Complex::imag(-down));
        }
        if l + 1 < m {
            d.entries[(l + 1, l)] = Surd::from_coeff(Complex::real(up.clone()));
            dt.entries[(l + 1, l)] = Surd::from_coeff(Complex::imag(up));
        }
    }
    Ok((d, dt))
}

/// Map `𝔙_k → L²(ℝ)` stored as the images of `p_{k,0}, …, p_{k,k}`.
#[derive(Debug, Clone)]
struct HomMap<T> {
    images: Vec<SpinorVector<T>>,
}

impl<T: Real> HomMap<T> {
    /// `L ∘ A` for a matrix `A` on `𝔙_k`: `(L∘A)(p_j) = Σ_i A_{ij} L(p_i)`.
    fn compose(&self, a: &crate::CMatrix<T>) -> Result<Self> {
        let template = SpinorVector::zero(1, self.images[0].trunc());
        let images = (0..self.images.len())
            .map(|j| {
                (0..self.images.len()).try_fold(template.clone(), |acc, i| {
                    let coef = &a[(i, j)];
                    if coef.is_zero() {
                        Ok(acc)
                    } else {
                        acc.plus(&self.images[i].scaled(coef))
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(HomMap { images })
    }

    /// `X_{a+1} · L`, pointwise on the images.
    fn clifford(&self, a: usize) -> Result<Self> {
        let images = self
            .images
            .iter()
            .map(|v| clifford_basis(a, v))
            .collect::<Result<_>>()?;
        Ok(HomMap { images })
    }

    fn plus(&self, other: &Self, sign: i64) -> Result<Self> {
        let s = Complex::real(T::from_int(sign));
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(x, y)| x.plus(&y.scaled(&s)))
            .collect::<Result<_>>()?;
        Ok(HomMap { images })
    }
}

/// `−X_a·(L∘τ(E_p)) ± X_b·(L∘τ(E_q))`, i.e. the defining composite.
fn composite<T: Real>(
    map: &HomMap<T>,
    rep: &RepMatrices<T>,
    terms: [(i64, usize, Generator); 2],
) -> Result<HomMap<T>> {
    let [(s0, x0, g0), (s1, x1, g1)] = terms;
    let first = map.compose(rep.matrix(g0))?.clifford(x0)?;
    let second = map.compose(rep.matrix(g1))?.clifford(x1)?;
    let zero = HomMap {
        images: vec![SpinorVector::zero(1, map.images[0].trunc()); map.images.len()],
    };
    zero.plus(&first, s0)?.plus(&second, s1)
}

/// Reads `R = Σ_{l'} c_{l'} L_{k,l'}` back from the images of `R`, checking the
/// remainder vanishes (exactly, or within a float tolerance).
fn decompose<T: Real>(k: u32, result: &HomMap<T>) -> Result<Vec<Complex<T>>> {
    let m = (k as usize).div_ceil(2);
    if let Some(ov) = result.images.iter().find_map(SpinorVector::overflow) {
        return Err(Error::Invariant(format!(
            "Clifford action overflowed the window at degree {} for k = {k}",
            ov.max_degree
        )));
    }
    // Hom(V_k, W_m) is trivial: nothing may land on h_m.
    if result
        .images
        .iter()
        .any(|v| !v.level_coeff(m as u32).near_zero(FLOAT_DECOMPOSE_TOL))
    {
        return Err(Error::Invariant(format!(
            "D_{k} emitted a component outside U_{k}"
        )));
    }
    let mut coeffs = Vec::with_capacity(m);
    let mut remainder = result.clone();
    for lp in 0..m as u32 {
        let j = Intertwiner::<T>::support_index(k, lp).expect("lp < m");
        let c = result.images[j].level_coeff(lp);
        let basis = HomMap {
            images: Intertwiner::<T>::canonical(k, lp)?.images(m)?,
        };
        remainder = remainder.plus(
            &HomMap {
                images: basis.images.iter().map(|v| v.scaled(&c)).collect(),
            },
            -1,
        )?;
        coeffs.push(c);
    }
    if remainder
        .images
        .iter()
        .any(|v| !v.near_zero(FLOAT_DECOMPOSE_TOL))
    {
        return Err(Error::Invariant(format!(
            "result for k = {k} is not a combination of the L_{{k,l}}"
        )));
    }
    Ok(coeffs)
}

/// `D_k` and `D̃_k` in the unnormalized basis, built from their definitions.
pub fn assemble_from_definition_unnormalized<T: Real>(
    k: u32,
) -> Result<(DiracMatrix<T>, DiracMatrix<T>)> {
    let m = operator_size(k)?;
    let rep = build_rep::<T>(k);
    let mut d = DiracMatrix::zeros(k, Basis::Unnormalized);
    let mut dt = DiracMatrix::zeros(k, Basis::Unnormalized);
    // E₁ ↔ X₁ (index 0), E₂ ↔ X₂ (index 1); window m holds levels 0..=m
    let (x1, x2) = (0, 1);
    for l in 0..m {
        let generator = Intertwiner::<T>::canonical(k, l as u32)?;
        let map = HomMap {
            images: generator.images(m)?,
        };
        let dl = composite(
            &map,
            &rep,
            [(-1, x1, Generator::E2), (1, x2, Generator::E1)],
        )?;
        let dtl = composite(
            &map,
            &rep,
            [(-1, x1, Generator::E1), (-1, x2, Generator::E2)],
        )?;
        for (row, c) in decompose(k, &dl)?.into_iter().enumerate() {
            d.entries[(row, l)] = Surd::from_coeff(c);
        }
        for (row, c) in decompose(k, &dtl)?.into_iter().enumerate() {
            dt.entries[(row, l)] = Surd::from_coeff(c);
        }
    }
    Ok((d, dt))
}

/// Rewrites a matrix from the `L` basis into the `L°` basis.
///
/// With `L°_l = s_l L_l`, entry `(r, c)` becomes `A_{rc} · s_c / s_r`, stored as
/// `A_{rc} · √(s_c² / s_r²)`.
pub fn to_normalized<T: Real>(a: &DiracMatrix<T>) -> Result<DiracMatrix<T>> {
    if a.basis == Basis::Normalized {
        return Ok(a.clone());
    }
    let m = a.m();
    let scales: Vec<BigRational> = (0..m as u32)
        .map(|l| normalization_square(a.k, l))
        .collect::<Result<_>>()?;
    let mut out = DiracMatrix::zeros(a.k, Basis::Normalized);
    for r in 0..m {
        for c in 0..m {
            let entry = &a.entries[(r, c)];
            if entry.is_zero() {
                continue;
            }
            let ratio = T::from_rational(&(&scales[c] / &scales[r]));
            out.entries[(r, c)] = Surd::new(entry.coeff.clone(), entry.radicand.clone() * ratio);
        }
    }
    Ok(out)
}

/// `D_k` and `D̃_k` in the normalized basis, built from their definitions.
pub fn assemble_from_definition<T: Real>(k: u32) -> Result<(DiracMatrix<T>, DiracMatrix<T>)> {
    let (d, dt) = assemble_from_definition_unnormalized::<T>(k)?;
    Ok((to_normalized(&d)?, to_normalized(&dt)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn a_coeff_examples() {
        let a = a_coeff(3, 1).unwrap();
        assert_eq!(a.square, BigInt::from(6));
        assert!((a.value - 6f64.sqrt()).abs() < 1e-15);
        assert_eq!(a_coeff(9, 0).unwrap().square, BigInt::zero());
        assert_eq!(a_coeff(5, 1).unwrap().square, BigInt::from(16));
        assert_eq!(a_coeff(5, 1).unwrap().value, 4.0);
        assert_eq!(a_coeff(5, 2).unwrap().square, BigInt::from(20));
        assert_eq!(a_coeff(5, 3).unwrap().square, BigInt::zero());
        assert_eq!(a_coeff(5, 4), Err(Error::IndexOutOfRange { k: 5, l: 4 }));
        assert_eq!(a_coeff(4, 0), Err(Error::EvenDegree(4)));
    }

    #[test]
    fn unnormalized_coeff_examples() {
        assert_eq!(unnormalized_coeffs(3, 1).unwrap(), (2, 4));
        assert_eq!(unnormalized_coeffs(7, 0).unwrap().0, 0);
        assert!(unnormalized_coeffs(3, 2).is_err());
    }

    #[test]
    fn down_times_previous_up_is_a_squared() {
        for k in (1..=61).step_by(2) {
            for l in 1..=(k - 1) / 2 {
                let (down, _) = unnormalized_coeffs(k, l).unwrap();
                let (_, up_prev) = unnormalized_coeffs(k, l - 1).unwrap();
                assert_eq!(BigInt::from(down * up_prev), a_coeff(k, l).unwrap().square);
            }
        }
    }

    #[test]
    fn closed_form_k1_and_k3() {
        let (d, dt) = assemble_closed_form::<f64>(1).unwrap();
        assert_eq!(d.m(), 1);
        assert!(d.get(0, 0).is_zero() && dt.get(0, 0).is_zero());

        let (d, dt) = assemble_closed_form::<f64>(3).unwrap();
        let s = 6f64.sqrt();
        let dv = d.evaluate().unwrap();
        let dtv = dt.evaluate().unwrap();
        assert!(dv[(0, 0)].norm() == 0.0 && (dv[(0, 1)].re - s).abs() < 1e-15);
        assert!((dv[(1, 0)].re - s).abs() < 1e-15);
        assert!((dtv[(0, 1)] - Complex::new(0.0, -s)).norm() < 1e-15);
        assert!((dtv[(1, 0)] - Complex::new(0.0, s)).norm() < 1e-15);
    }

    #[test]
    fn definition_route_k3_unnormalized() {
        let (d, dt) = assemble_from_definition_unnormalized::<Q>(3).unwrap();
        // D_3(L_{3,0}) = 3 L_{3,1},  D_3(L_{3,1}) = 2 L_{3,0}
        assert_eq!(d.get(1, 0).coeff, Complex::real(Q::from_int(3)));
        assert_eq!(d.get(0, 1).coeff, Complex::real(Q::from_int(2)));
        assert!(d.get(0, 0).is_zero() && d.get(1, 1).is_zero());
        assert_eq!(dt.get(1, 0).coeff, Complex::imag(Q::from_int(3)));
        assert_eq!(dt.get(0, 1).coeff, Complex::imag(Q::from_int(-2)));
    }

    #[test]
    fn definition_route_k1_is_zero() {
        let (d, dt) = assemble_from_definition::<Q>(1).unwrap();
        assert!(d.get(0, 0).is_zero() && dt.get(0, 0).is_zero());
    }

    #[test]
    fn definition_matches_unnormalized_closed_form() {
        for k in (1..=15).step_by(2) {
            let (d, dt) = assemble_from_definition_unnormalized::<Q>(k).unwrap();
            let (cd, cdt) = assemble_unnormalized_closed_form::<Q>(k).unwrap();
            assert!(d.matches(&cd, 0.0), "D_{k}");
            assert!(dt.matches(&cdt, 0.0), "D~_{k}");
        }
    }

    #[test]
    fn definition_matches_closed_form_normalized_k3() {
        let (d, dt) = assemble_from_definition::<Q>(3).unwrap();
        let (cd, cdt) = assemble_closed_form::<Q>(3).unwrap();
        assert!(d.matches(&cd, 0.0));
        assert!(dt.matches(&cdt, 0.0));
        let (fd, _) = assemble_from_definition::<f64>(3).unwrap();
        let (fcd, _) = assemble_closed_form::<f64>(3).unwrap();
        assert!(fd.max_deviation(&fcd) < 1e-13);
    }

    #[test]
    fn even_k_is_refused() {
        assert!(matches!(
            assemble_closed_form::<f64>(4),
            Err(Error::EvenDegree(4))
        ));
        assert!(matches!(
            assemble_from_definition::<Q>(2),
            Err(Error::EvenDegree(2))
        ));
    }

    #[test]
    fn conjugation_by_i_powers_maps_d_to_dtilde() {
        for k in (1..=21).step_by(2) {
            let (d, dt) = assemble_closed_form::<Q>(k).unwrap();
            assert!(d.conjugate_by_i_powers().matches(&dt, 0.0), "k={k}");
        }
    }
}
