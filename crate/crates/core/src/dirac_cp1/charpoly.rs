use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::assembly::{a_coeff, operator_size};
use crate::error::Result;

/// Exact characteristic polynomial `det(λI − D_k)`, coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub k: u32,
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// `λ·q(λ²)` for odd degree, `q(λ²)` for even degree: every coefficient whose
    /// index parity differs from the degree's vanishes.
    pub fn has_parity_form(&self) -> bool {
        let m = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (i % 2 == m % 2) || c.is_zero())
    }

    /// `det(D_k) = (−1)^m p(0)`.
    pub fn signed_det(&self) -> BigInt {
        let p0 = self.constant_term().clone();
        if self.degree().is_multiple_of(2) {
            p0
        } else {
            -p0
        }
    }

    pub fn abs_constant(&self) -> BigInt {
        self.constant_term().abs()
    }
}

/// Three-term recurrence for a zero-diagonal Jacobi matrix with off-diagonal
/// squares `a_{k,1}², …, a_{k,m−1}²`:
/// `p₀ = 1`, `p₁ = λ`, `p_j = λ p_{j−1} − a_{k,j−1}² p_{j−2}`.
pub fn charpoly_exact(k: u32) -> Result<CharPoly> {
    let m = operator_size(k)?;
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for j in 2..=m {
        let a2 = a_coeff(k, (j - 1) as u32)?.square;
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &a2 * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(CharPoly { k, coeffs: cur })
}
