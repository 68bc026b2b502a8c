//! Sturm-sequence bisection for real symmetric tridiagonal matrices.
//!
//! Only the squares of the off-diagonal entries enter the count, so the same
//! code runs over exact rationals (where `a_{k,l}²` are integers) and over
//! floats.

use crate::scalar::Real;

/// Stopping rule: stop once `hi − lo <= max(rel·max(|lo|,|hi|), abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub rel: f64,
    pub abs: f64,
    pub max_iter: usize,
}

impl Bisection {
    /// Double precision, bisected until the bracket endpoints are adjacent floats.
    pub const FLOAT: Bisection = Bisection {
        rel: 0.0,
        abs: 0.0,
        max_iter: 4096,
    };
    /// Exact rationals, refined far past double precision.
    pub const EXACT: Bisection = Bisection {
        rel: 1e-30,
        abs: 1e-40,
        max_iter: 4096,
    };

    pub fn for_scalar<T: Real>() -> Bisection {
        if T::EXACT {
            Self::EXACT
        } else {
            Self::FLOAT
        }
    }
}

/// Real symmetric tridiagonal matrix given by its diagonal and the squares of
/// its off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off_sq: Vec<T>,
}

#[derive(Debug, Clone)]
enum Pivot<T> {
    Finite(T),
    /// A zero pivot, read as `+ε`.
    PlusEps,
    /// Pivot following a `+ε` one.
    MinusInf,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off_sq: Vec<T>) -> Self {
        assert_eq!(off_sq.len() + 1, diag.len().max(1), "off-diagonal length");
        SymTridiagonal { diag, off_sq }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of `A − xI = LDLᵀ`).
    pub fn count_below(&self, x: &T) -> usize {
        let pivmin = if T::EXACT {
            None
        } else {
            let big = self
                .off_sq
                .iter()
                .map(Real::to_f64_value)
                .fold(1.0, f64::max);
            Some(f64::MIN_POSITIVE * big)
        };
        let mut count = 0;
        let mut prev: Option<Pivot<T>> = None;
        for (i, d) in self.diag.iter().enumerate() {
            let shift = d.clone() - x.clone();
            let next = match prev {
                None | Some(Pivot::MinusInf) => Pivot::Finite(shift),
                Some(Pivot::Finite(p)) => Pivot::Finite(shift - self.off_sq[i - 1].clone() / p),
                Some(Pivot::PlusEps) if self.off_sq[i - 1].is_zero() => Pivot::Finite(shift),
                Some(Pivot::PlusEps) => Pivot::MinusInf,
            };
            let next = match next {
                Pivot::Finite(q) if q.is_zero() => Pivot::PlusEps,
                Pivot::Finite(q) => match pivmin {
                    Some(pm) if q.to_f64_value().abs() < pm => {
                        let guard = T::from_f64_value(pm);
                        Pivot::Finite(if q.is_negative() { -guard } else { guard })
                    }
                    _ => Pivot::Finite(q),
                },
                other => other,
            };
            match &next {
                Pivot::Finite(q) if q.is_negative() => count += 1,
                Pivot::MinusInf => count += 1,
                _ => {}
            }
            prev = Some(next);
        }
        count
    }

    /// Half-width of an interval around zero holding every eigenvalue.
    ///
    /// Gershgorin, with `|e| <= (e² + 1)/2` so no square root is needed.
    pub fn spectral_bound(&self) -> T {
        let half = T::ratio(1, 2);
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 {
                    self.off_sq[i - 1].clone() + T::one()
                } else {
                    T::zero()
                };
                let right = if i + 1 < n {
                    self.off_sq[i].clone() + T::one()
                } else {
                    T::zero()
                };
                self.diag[i].abs() + (left + right) * half.clone()
            })
            .fold(T::zero(), |acc, r| if r > acc { r } else { acc })
            + T::one()
    }

    /// `index`-th smallest eigenvalue (zero-based).
    ///
    /// If the final bracket contains zero, zero is returned.
    pub fn eigenvalue(&self, index: usize, tol: &Bisection) -> T {
        assert!(index < self.len(), "eigenvalue index out of range");
        let bound = self.spectral_bound();
        self.bisect(index, -bound.clone(), bound, tol)
    }

    /// Invariant: `count_below(lo) <= index < count_below(hi)`.
    fn bisect(&self, index: usize, mut lo: T, mut hi: T, tol: &Bisection) -> T {
        let half = T::ratio(1, 2);
        let rel = T::from_f64_value(tol.rel);
        let abs = T::from_f64_value(tol.abs);
        for _ in 0..tol.max_iter {
            let width = hi.clone() - lo.clone();
            let scale = if lo.abs() > hi.abs() {
                lo.abs()
            } else {
                hi.abs()
            };
            let target = rel.clone() * scale;
            if width <= target || width <= abs {
                break;
            }
            let mid = (lo.clone() + hi.clone()) * half.clone();
            if mid == lo || mid == hi {
                break;
            }
            if self.count_below(&mid) <= index {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if lo <= T::zero() && hi >= T::zero() {
            return T::zero();
        }
        (lo + hi) * half
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self, tol: &Bisection) -> Vec<T> {
        (0..self.len()).map(|i| self.eigenvalue(i, tol)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    #[test]
    fn counts_on_two_by_two() {
        // [[1, −1], [−1, 3]]: eigenvalues 2 ± √2
        let t = SymTridiagonal::<f64>::new(vec![1.0, 3.0], vec![1.0]);
        assert_eq!(t.count_below(&0.0), 0);
        assert_eq!(t.count_below(&1.0), 1);
        assert_eq!(t.count_below(&4.0), 2);
    }

    #[test]
    fn exact_count_at_an_eigenvalue_is_strict() {
        // zero-diagonal with off² = 16, 20: eigenvalues −6, 0, 6
        let t = SymTridiagonal::new(
            vec![Q::zero(), Q::zero(), Q::zero()],
            vec![Q::from_int(16), Q::from_int(20)],
        );
        assert_eq!(t.count_below(&Q::from_int(-6)), 0);
        assert_eq!(t.count_below(&Q::zero()), 1);
        assert_eq!(t.count_below(&Q::from_int(6)), 2);
        assert_eq!(t.count_below(&Q::from_int(7)), 3);
    }

    #[test]
    fn eigenvalues_of_k5_float_and_exact() {
        let t = SymTridiagonal::<f64>::new(vec![0.0; 3], vec![16.0, 20.0]);
        let ev = t.eigenvalues(&Bisection::FLOAT);
        for (got, want) in ev.iter().zip([-6.0, 0.0, 6.0]) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
        assert_eq!(ev[1], 0.0);

        let te = SymTridiagonal::new(vec![Q::zero(); 3], vec![Q::from_int(16), Q::from_int(20)]);
        let ev = te.eigenvalues(&Bisection::EXACT);
        assert!(ev[1].is_zero());
        assert!((ev[2].to_f64_value() - 6.0).abs() < 1e-25);
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::<f64>::new(vec![2.5], vec![]);
        assert!((t.eigenvalue(0, &Bisection::FLOAT) - 2.5).abs() < 1e-12);
        let z = SymTridiagonal::new(vec![0.0], vec![]);
        assert_eq!(z.eigenvalues(&Bisection::FLOAT), vec![0.0]);
    }

    #[test]
    fn decoupled_blocks() {
        // zero coupling splits into [[1]] and [[−2]]; also exercises the +ε pivot
        let t = SymTridiagonal::new(vec![Q::from_int(1), Q::from_int(-2)], vec![Q::zero()]);
        let ev = t.eigenvalues(&Bisection::EXACT);
        assert!((ev[0].to_f64_value() + 2.0).abs() < 1e-30);
        assert!((ev[1].to_f64_value() - 1.0).abs() < 1e-30);
        assert_eq!(t.count_below(&Q::from_int(1)), 1);
    }

    #[test]
    fn uniform_chain_matches_cosines() {
        let n = 40;
        let t = SymTridiagonal::<f64>::new(vec![0.0; n], vec![1.0; n - 1]);
        let ev = t.eigenvalues(&Bisection::FLOAT);
        for (j, got) in ev.iter().enumerate() {
            let want = -2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((got - want).abs() < 1e-12, "j={j}: {got} vs {want}");
        }
    }
}
