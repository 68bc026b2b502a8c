//! Fraction-free Sturm bisection for integer symmetric tridiagonal matrices.
//!
//! At a dyadic point `x = N/2^s` the scaled leading minors
//! `q_j = 2^{sj} det(xI − A_j)` satisfy
//! `q_j = (N − d_j 2^s) q_{j−1} − e_{j−1}² 4^s q_{j−2}`, an integer recurrence,
//! so no rational normalization is ever needed.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dyadic rational `num / 2^shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub shift: u32,
}

impl Dyadic {
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic {
                num: BigInt::zero(),
                shift: 0,
            });
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let num = BigInt::from(sign) * BigInt::from(mantissa);
        Some(if exp >= 0 {
            Dyadic {
                num: num << exp as usize,
                shift: 0,
            }
        } else {
            Dyadic {
                num,
                shift: (-exp) as u32,
            }
        })
    }

    fn with_shift(&self, shift: u32) -> BigInt {
        debug_assert!(shift >= self.shift);
        &self.num << (shift - self.shift) as usize
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.shift as usize)
    }
}

/// Symmetric tridiagonal matrix with integer diagonal and integer squared
/// off-diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerJacobi {
    pub diag: Vec<BigInt>,
    pub off_sq: Vec<BigInt>,
}

impl IntegerJacobi {
    pub fn new(diag: Vec<BigInt>, off_sq: Vec<BigInt>) -> Self {
        assert_eq!(off_sq.len() + 1, diag.len().max(1), "off-diagonal length");
        assert!(
            off_sq.iter().all(|e| !e.is_negative()),
            "squared entries are non-negative"
        );
        IntegerJacobi { diag, off_sq }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    ///
    /// Counts sign changes of the minor sequence: each one marks an eigenvalue
    /// above `x`. An interior zero sits between opposite signs and is skipped;
    /// a zero off-diagonal splits the matrix into blocks counted separately.
    pub fn count_below(&self, x: &Dyadic) -> usize {
        let m = self.len();
        let one_s = BigInt::one() << x.shift as usize;
        let four_s = BigInt::one() << (2 * x.shift) as usize;
        let mut below = 0;
        let mut start = 0;
        while start < m {
            let mut end = start + 1;
            while end < m && !self.off_sq[end - 1].is_zero() {
                end += 1;
            }
            let mut prev = BigInt::one();
            let mut cur = &x.num - &self.diag[start] * &one_s;
            let mut last_sign = Sign::Plus;
            let mut changes = 0;
            let mut step = |q: &BigInt, changes: &mut usize| {
                if q.sign() != Sign::NoSign {
                    if q.sign() != last_sign {
                        *changes += 1;
                    }
                    last_sign = q.sign();
                }
            };
            step(&cur, &mut changes);
            for j in start + 1..end {
                let next = (&x.num - &self.diag[j] * &one_s) * &cur
                    - &self.off_sq[j - 1] * &four_s * &prev;
                prev = std::mem::replace(&mut cur, next);
                step(&cur, &mut changes);
            }
            let size = end - start;
            below += size - changes - usize::from(cur.is_zero());
            start = end;
        }
        below
    }

    fn bound(&self) -> BigInt {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    &self.off_sq[i - 1] + 1
                } else {
                    BigInt::zero()
                };
                let right = if i + 1 < n {
                    &self.off_sq[i] + 1
                } else {
                    BigInt::zero()
                };
                self.diag[i].abs() + (left + right) / 2 + 1
            })
            .max()
            .unwrap_or_default()
            + 1
    }

    /// `index`-th smallest eigenvalue, bracketed to width at most
    /// `2^-rel_bits · max(|lo|, |hi|)` or `2^-abs_bits`. Brackets holding
    /// zero return zero. `guess` seeds a narrow bracket when the counts allow.
    pub fn eigenvalue(
        &self,
        index: usize,
        guess: Option<f64>,
        rel_bits: u32,
        abs_bits: u32,
    ) -> BigRational {
        assert!(index < self.len(), "eigenvalue index out of range");
        let seeded = guess.and_then(|g| {
            let delta = 1e-10 * (1.0 + g.abs());
            let lo = Dyadic::from_f64(g - delta)?;
            let hi = Dyadic::from_f64(g + delta)?;
            (self.count_below(&lo) <= index && self.count_below(&hi) > index).then_some((lo, hi))
        });
        let (lo, hi) = seeded.unwrap_or_else(|| {
            let b = self.bound();
            (
                Dyadic {
                    num: -b.clone(),
                    shift: 0,
                },
                Dyadic { num: b, shift: 0 },
            )
        });
        let mut shift = lo.shift.max(hi.shift);
        let (mut lo, mut hi) = (lo.with_shift(shift), hi.with_shift(shift));
        loop {
            let width = &hi - &lo;
            let scale = lo.abs().max(hi.abs());
            if (&width << rel_bits as usize) <= scale
                || width.bits() + u64::from(abs_bits) <= u64::from(shift)
            {
                break;
            }
            shift += 1;
            lo <<= 1;
            hi <<= 1;
            let mid = Dyadic {
                num: (&lo + &hi) >> 1,
                shift,
            };
            if self.count_below(&mid) <= index {
                lo = mid.num;
            } else {
                hi = mid.num;
            }
        }
        if !lo.is_positive() && !hi.is_negative() {
            return BigRational::zero();
        }
        Dyadic {
            num: lo + hi,
            shift: shift + 1,
        }
        .to_rational()
    }
}
