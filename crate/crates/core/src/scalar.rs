//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Every coefficient in this crate is a `Complex<T>` where `T: Real`. The
//! exact instantiation (`BigRational`) gives Gaussian rationals; `f64` and
//! `f32` give ordinary complex floats.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssign, One, Signed, ToPrimitive, Zero};

/// Real field used for coefficients.
pub trait Real:
    Clone + Debug + PartialOrd + NumAssign + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact, so equality tests ignore tolerances.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    /// Converts a double. Exact types take the binary value verbatim.
    fn from_f64_value(x: f64) -> Self;

    fn to_f64_value(&self) -> f64;

    /// Square root, if representable. Exact types only succeed on perfect squares.
    fn sqrt_checked(&self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits every Real")
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Zero test: exact for exact types, `|x| <= tol` otherwise.
    fn near_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64_value().abs() <= tol
        }
    }
}

macro_rules! impl_real_float {
    ($t:ty) => {
        impl Real for $t {
            const EXACT: bool = false;

            fn from_rational(q: &BigRational) -> Self {
                q.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn from_f64_value(x: f64) -> Self {
                x as $t
            }

            fn to_f64_value(&self) -> f64 {
                *self as f64
            }

            fn sqrt_checked(&self) -> Option<Self> {
                (*self >= 0.0).then(|| self.sqrt())
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);

impl Real for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_f64_value(x: f64) -> Self {
        BigRational::from_float(x).expect("finite double")
    }

    fn to_f64_value(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        (&num * &num == *self.numer() && &den * &den == *self.denom())
            .then(|| BigRational::new(num, den))
    }
}

/// Complex helpers that only need `T: Real`.
pub trait ComplexExt<T: Real> {
    fn i() -> Self;
    fn real(x: T) -> Self;
    fn imag(x: T) -> Self;
    /// `i^p` for any integer `p`, exactly.
    fn i_pow(p: i64) -> Self;
    fn norm_sqr_exact(&self) -> T;
    fn near_zero(&self, tol: f64) -> bool;
    /// Modulus as a double, for residual reporting.
    fn magnitude(&self) -> f64;
}

impl<T: Real> ComplexExt<T> for Complex<T> {
    fn i() -> Self {
        Complex::new(T::zero(), T::one())
    }

    fn real(x: T) -> Self {
        Complex::new(x, T::zero())
    }

    fn imag(x: T) -> Self {
        Complex::new(T::zero(), x)
    }

    fn i_pow(p: i64) -> Self {
        match p.rem_euclid(4) {
            0 => Complex::one(),
            1 => Self::i(),
            2 => -Complex::<T>::one(),
            _ => -Self::i(),
        }
    }

    fn norm_sqr_exact(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    fn near_zero(&self, tol: f64) -> bool {
        if T::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    fn magnitude(&self) -> f64 {
        self.re.to_f64_value().hypot(self.im.to_f64_value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_on_perfect_squares() {
        let q = BigRational::new(9.into(), 4.into());
        assert_eq!(q.sqrt_checked(), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(BigRational::from_int(6).sqrt_checked(), None);
        assert_eq!(BigRational::from_int(-4).sqrt_checked(), None);
    }

    #[test]
    fn i_powers_cycle() {
        type C = Complex<BigRational>;
        assert_eq!(C::i_pow(0), C::one());
        assert_eq!(C::i_pow(1) * C::i_pow(1), C::i_pow(2));
        assert_eq!(C::i_pow(-1), -C::i());
        assert_eq!(C::i_pow(7), C::i_pow(3));
    }

    #[test]
    fn near_zero_respects_exactness() {
        assert!(1e-15_f64.near_zero(1e-14));
        assert!(!BigRational::new(1.into(), 1_000_000_000_000_000_i64.into()).near_zero(1.0));
    }
}
