//! U(1)-equivariant maps `𝔙_k → 𝔚_l` for `ℂP¹ = SU(2)/U(1)`.
//!
//! `U(1)` is generated by `E₀`, which acts on `p_{k,j}` with weight `i(2j−k)` and
//! on `h_l` with weight `i(2l+1)`. A map `L` with `L(p_{k,j}) = c_j h_l` is
//! equivariant iff `c_j = 0` whenever the two weights differ, so
//! `Hom_{U(1)}(𝔙_k, 𝔚_l)` is spanned by `L_{k,l}: p_{k,(k+1)/2+l} ↦ h_l` when
//! `k` is odd and `l <= (k−1)/2`, and is trivial otherwise.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hermite_clifford::{weight_on_wl, SpinorVector};
use crate::scalar::{ComplexExt, Real};
use crate::su2_rep::build_rep;
use crate::CMatrix;

/// Linear map `L: 𝔙_k → 𝔚_l`, `L(p_{k,j}) = row[j] · h_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner<T> {
    pub k: u32,
    pub l: u32,
    pub row: Vec<Complex<T>>,
}

impl<T: Real> Intertwiner<T> {
    /// Index `j = (k+1)/2 + l` carried by `L_{k,l}`, when it lies in `0..=k`.
    pub fn support_index(k: u32, l: u32) -> Option<usize> {
        if k.is_multiple_of(2) {
            return None;
        }
        let j = (k as usize).div_ceil(2) + l as usize;
        (j <= k as usize).then_some(j)
    }

    /// The canonical generator `L_{k,l}`.
    pub fn canonical(k: u32, l: u32) -> Result<Self> {
        let j = Self::support_index(k, l).ok_or(Error::TrivialHomSpace { k, l })?;
        let mut row = vec![Complex::zero(); k as usize + 1];
        row[j] = Complex::one();
        Ok(Intertwiner { k, l, row })
    }

    /// Images `L(p_{k,0}), …, L(p_{k,k})` as spinors in the window `trunc`.
    pub fn images(&self, trunc: usize) -> Result<Vec<SpinorVector<T>>> {
        let h = SpinorVector::hermite(trunc, self.l)?;
        Ok(self.row.iter().map(|c| h.scaled(c)).collect())
    }

    /// Largest modulus of `L∘(τ_k)_*(E₀) − i(2l+1)·L`; zero iff `L` is equivariant.
    pub fn equivariance_residual(&self) -> f64 {
        let e0 = build_rep::<T>(self.k).e0;
        let w = weight_on_wl::<T>(self.l);
        (0..self.row.len())
            .map(|i| {
                let composed = (0..self.row.len()).fold(Complex::<T>::zero(), |acc, j| {
                    acc + self.row[j].clone() * e0[(j, i)].clone()
                });
                (composed - w.clone() * self.row[i].clone()).magnitude()
            })
            .fold(0.0, f64::max)
    }
}

/// `Hom_{U(1)}(𝔙_k, 𝔚_l)`: its dimension and, when nonzero, the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct HomSpace<T> {
    pub dim: usize,
    pub generator: Option<Intertwiner<T>>,
}

/// Weight matching: `E₀`-weights `i(2j−k)` on `𝔙_k` against `i(2l+1)` on `𝔚_l`.
pub fn hom_space<T: Real>(k: u32, l: u32) -> HomSpace<T> {
    match Intertwiner::canonical(k, l) {
        Ok(g) => HomSpace {
            dim: 1,
            generator: Some(g),
        },
        Err(_) => HomSpace {
            dim: 0,
            generator: None,
        },
    }
}

/// Coefficient matrix of the equivariance condition `L∘(τ_k)_*(E₀) = i(2l+1)·L`
/// in the unknowns `c_0, …, c_k`: row `i` reads `Σ_j (E₀)_{ji} c_j − w c_i = 0`.
pub fn equivariance_system<T: Real>(k: u32, l: u32) -> CMatrix<T> {
    let e0 = build_rep::<T>(k).e0;
    let w = weight_on_wl::<T>(l);
    let mut a = e0.transpose();
    for i in 0..a.nrows() {
        a[(i, i)] -= w.clone();
    }
    a
}

/// Rank by Gaussian elimination. Pivots must be nonzero (exact) or exceed `tol` (floats).
pub fn rank<T: Real>(matrix: &CMatrix<T>, tol: f64) -> usize {
    let mut a = matrix.clone();
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[(r, col)].near_zero(tol))
            .max_by(|&x, &y| a[(x, col)].magnitude().total_cmp(&a[(y, col)].magnitude()));
        let Some(p) = pivot else { continue };
        a.swap_rows(rank, p);
        let inv = Complex::<T>::one() / a[(rank, col)].clone();
        for r in rank + 1..rows {
            let factor = a[(r, col)].clone() * inv.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let delta = factor.clone() * a[(rank, c)].clone();
                a[(r, c)] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force dimension of `Hom_{U(1)}(𝔙_k, 𝔚_l)` as the nullity of
/// [`equivariance_system`].
pub fn hom_space_oracle<T: Real>(k: u32, l: u32) -> usize {
    let a = equivariance_system::<T>(k, l);
    a.ncols() - rank(&a, 1e-9)
}

fn factorial(n: u64) -> BigInt {
    (1..=n)
        .map(BigInt::from)
        .product::<BigInt>()
        .max(BigInt::one())
}

/// Square of the normalizing factor of `L°_{k,l}`:
/// `((k+1)/2+l)! ((k−1)/2−l)! / (2^l l!)`.
pub fn normalization_square(k: u32, l: u32) -> Result<BigRational> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenDegree(k));
    }
    if l > (k - 1) / 2 {
        return Err(Error::TrivialHomSpace { k, l });
    }
    let up = u64::from(k.div_ceil(2) + l);
    let down = u64::from((k - 1) / 2 - l);
    let num = factorial(up) * factorial(down);
    let den = (BigInt::one() << l as usize) * factorial(u64::from(l));
    Ok(BigRational::new(num, den))
}

/// `L°_{k,l} = scale · L_{k,l}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedIntertwiner<T> {
    pub base: Intertwiner<T>,
    /// `scale²`, exact.
    pub scale_sq: BigRational,
    pub scale: f64,
}

impl<T: Real> NormalizedIntertwiner<T> {
    pub fn k(&self) -> u32 {
        self.base.k
    }

    pub fn l(&self) -> u32 {
        self.base.l
    }
}

pub fn normalize<T: Real>(map: &Intertwiner<T>) -> Result<NormalizedIntertwiner<T>> {
    let canonical = Intertwiner::<T>::canonical(map.k, map.l)?;
    if *map != canonical {
        return Err(Error::Invariant(format!(
            "normalize expects the canonical generator L_{{{},{}}}",
            map.k, map.l
        )));
    }
    let scale_sq = normalization_square(map.k, map.l)?;
    let scale = scale_sq.to_f64().expect("finite").sqrt();
    Ok(NormalizedIntertwiner {
        base: canonical,
        scale_sq,
        scale,
    })
}

/// `dim(𝔙_k ⊗ 𝐔_k)` where `𝐔_k = ⊕_l Hom_{U(1)}(𝔙_k, 𝔚_l)`.
///
/// Equals `(k+1)²/2` for odd `k` and `0` for even `k`.
pub fn dim_invariant_space(k: u32) -> usize {
    let closed = if k % 2 == 1 {
        (k as usize + 1).pow(2) / 2
    } else {
        0
    };
    // beyond l = k no weight can match, so the sum is finite
    let counted: usize = (0..=k)
        .map(|l| hom_space::<BigRational>(k, l).dim)
        .sum::<usize>()
        * (k as usize + 1);
    assert_eq!(
        closed, counted,
        "dim(V_k ⊗ U_k) disagrees with the Hom-space count"
    );
    closed
}
