//! Hermite basis of `L²(ℝⁿ)` and symplectic Clifford multiplication.
//!
//! Hermite functions are handled purely by index. A [`SpinorVector`] is a
//! finite combination `Σ c_α h_α` restricted to the window `|α| <= trunc`.
//! Clifford multiplication by the symplectic basis `(X_1, …, X_{2n})` acts by
//! the ladder relations
//!
//! ```text
//! X_j     · h_α = −i α_j h_{α−⟨j⟩} − (i/2) h_{α+⟨j⟩}
//! X_{n+j} · h_α = −α_j h_{α−⟨j⟩}  + (1/2) h_{α+⟨j⟩}
//! ```
//!
//! which satisfy `[X_a·, X_b·] = −i ω₀(X_a, X_b)` on every vector whose
//! image stays inside the window.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{ComplexExt, Real};

/// Multi-index `α = (α_1, …, α_n)` labelling `h_α = h_{α_1}(x_1)⋯h_{α_n}(x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// `α − ⟨j⟩`, or `None` when `α_j = 0`.
    pub fn lowered(&self, j: usize) -> Option<Self> {
        let mut out = self.clone();
        out.0[j] = out.0[j].checked_sub(1)?;
        Some(out)
    }

    /// `α + ⟨j⟩`.
    pub fn raised(&self, j: usize) -> Self {
        let mut out = self.clone();
        out.0[j] += 1;
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Element `Σ c_a X_a` of `𝔪` in the fixed symplectic basis `(X_1, …, X_{2n})`.
///
/// Coordinates are indexed from zero: entries `0..n` multiply the position-type
/// vectors `X_1..X_n`, entries `n..2n` the momentum-type `X_{n+1}..X_{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MVector<T> {
    coords: Vec<T>,
}

impl<T: Real> MVector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (coords.len() / 2).max(1),
                found: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.to_f64_value().is_finite()) {
            return Err(Error::Invariant(
                "MVector coordinates must be finite".into(),
            ));
        }
        Ok(MVector { coords })
    }

    /// Basis vector `X_{a+1}` of `𝔪 ≅ ℝ^{2n}`.
    pub fn basis(n: usize, a: usize) -> Self {
        assert!(a < 2 * n, "basis index {a} out of range for n = {n}");
        let mut coords = vec![T::zero(); 2 * n];
        coords[a] = T::one();
        MVector { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn scaled(&self, s: &T) -> Self {
        MVector {
            coords: self.coords.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                found: other.coords.len(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() + b.clone());
        Ok(MVector {
            coords: coords.collect(),
        })
    }

    /// Standard symplectic form: `ω₀(X_j, X_{n+k}) = δ_{jk}`.
    pub fn omega(&self, other: &Self) -> T {
        let n = self.n();
        (0..n).fold(T::zero(), |acc, j| {
            acc + self.coords[j].clone() * other.coords[n + j].clone()
                - self.coords[n + j].clone() * other.coords[j].clone()
        })
    }
}

/// `ω₀(X_{a+1}, X_{b+1})` on zero-based basis indices.
pub fn omega_basis(n: usize, a: usize, b: usize) -> i64 {
    if a < n && b == a + n {
        1
    } else if b < n && a == b + n {
        -1
    } else {
        0
    }
}

/// Record of raising terms that fell outside the truncation window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow {
    /// Highest degree that was clipped.
    pub max_degree: usize,
    /// Number of clipped terms.
    pub terms: usize,
}

impl Overflow {
    fn merge(a: Option<Overflow>, b: Option<Overflow>) -> Option<Overflow> {
        match (a, b) {
            (Some(x), Some(y)) => Some(Overflow {
                max_degree: x.max_degree.max(y.max_degree),
                terms: x.terms + y.terms,
            }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

/// Finite combination of Hermite functions inside a degree window.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorVector<T> {
    n: usize,
    trunc: usize,
    coeffs: BTreeMap<MultiIndex, Complex<T>>,
    overflow: Option<Overflow>,
}

impl<T: Real> SpinorVector<T> {
    pub fn zero(n: usize, trunc: usize) -> Self {
        SpinorVector {
            n,
            trunc,
            coeffs: BTreeMap::new(),
            overflow: None,
        }
    }

    /// `c · h_α`.
    pub fn basis(trunc: usize, alpha: MultiIndex, c: Complex<T>) -> Result<Self> {
        let mut v = Self::zero(alpha.dim(), trunc);
        v.add_term(alpha, c)?;
        Ok(v)
    }

    /// The one-dimensional Hermite function `h_l`.
    pub fn hermite(trunc: usize, l: u32) -> Result<Self> {
        Self::basis(
            trunc,
            MultiIndex::new(vec![l]),
            Complex::new(T::one(), T::zero()),
        )
    }

    /// Builds a vector from `(α, c)` pairs, summing repeats.
    pub fn from_terms(
        n: usize,
        trunc: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Complex<T>)>,
    ) -> Result<Self> {
        let mut v = Self::zero(n, trunc);
        for (alpha, c) in terms {
            v.add_term(alpha, c)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Complex<T>) -> Result<()> {
        if alpha.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.dim(),
            });
        }
        if alpha.degree() > self.trunc {
            return Err(Error::Invariant(format!(
                "{alpha} has degree {} above truncation {}",
                alpha.degree(),
                self.trunc
            )));
        }
        self.accumulate(alpha, c);
        Ok(())
    }

    fn accumulate(&mut self, alpha: MultiIndex, c: Complex<T>) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(alpha) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                // canonical form: no stored zeros
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn overflow(&self) -> Option<Overflow> {
        self.overflow
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex<T>)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex<T> {
        self.coeffs
            .get(alpha)
            .cloned()
            .unwrap_or_else(Complex::zero)
    }

    /// Coefficient of `h_l` for `n = 1`.
    pub fn level_coeff(&self, l: u32) -> Complex<T> {
        self.coeff(&MultiIndex::new(vec![l]))
    }

    /// Highest degree present, if any.
    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    /// Same vector in a different window. Fails if a stored term would not fit.
    pub fn with_trunc(&self, trunc: usize) -> Result<Self> {
        if let Some(d) = self.max_degree().filter(|&d| d > trunc) {
            return Err(Error::Invariant(format!(
                "degree {d} does not fit truncation {trunc}"
            )));
        }
        Ok(SpinorVector {
            trunc,
            ..self.clone()
        })
    }

    pub fn scaled(&self, s: &Complex<T>) -> Self {
        let mut out = SpinorVector {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (alpha, c) in &self.coeffs {
            out.accumulate(alpha.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.trunc = self.trunc.max(other.trunc);
        for (alpha, c) in &other.coeffs {
            out.accumulate(alpha.clone(), c.clone());
        }
        out.overflow = Overflow::merge(self.overflow, other.overflow);
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-Complex::<T>::new(T::one(), T::zero())))
    }

    /// Largest coefficient modulus, as a double.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .values()
            .map(ComplexExt::magnitude)
            .fold(0.0, f64::max)
    }

    /// Exactly zero in exact mode, every coefficient within `tol` otherwise.
    pub fn near_zero(&self, tol: f64) -> bool {
        self.coeffs.values().all(|c| c.near_zero(tol))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// `X_{a+1} · φ` for a single basis vector.
    fn apply_basis(&self, a: usize) -> Self {
        let n = self.n;
        let j = a % n;
        let position = a < n;
        let half = T::ratio(1, 2);
        let mut out = SpinorVector {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        let mut clipped: Option<Overflow> = None;
        for (alpha, c) in &self.coeffs {
            let aj = T::from_int(i64::from(alpha.entries()[j]));
            if let Some(lower) = alpha.lowered(j) {
                // −i α_j  or  −α_j
                let factor = if position {
                    Complex::imag(-aj)
                } else {
                    Complex::real(-aj)
                };
                out.accumulate(lower, c.clone() * factor);
            }
            let upper = alpha.raised(j);
            if upper.degree() > self.trunc {
                let hit = Overflow {
                    max_degree: upper.degree(),
                    terms: 1,
                };
                clipped = Overflow::merge(clipped, Some(hit));
                continue;
            }
            // −i/2  or  +1/2
            let factor = if position {
                Complex::imag(-half.clone())
            } else {
                Complex::real(half.clone())
            };
            out.accumulate(upper, c.clone() * factor);
        }
        out.overflow = Overflow::merge(self.overflow, clipped);
        out
    }
}

/// Symplectic Clifford multiplication `X · φ`.
///
/// The window of the result equals that of `φ`; raising terms that leave it are
/// counted in [`SpinorVector::overflow`] instead of being kept.
pub fn clifford_apply<T: Real>(x: &MVector<T>, phi: &SpinorVector<T>) -> Result<SpinorVector<T>> {
    if x.n() != phi.n() {
        return Err(Error::DimensionMismatch {
            expected: phi.n(),
            found: x.n(),
        });
    }
    let mut out = SpinorVector::zero(phi.n(), phi.trunc());
    out.overflow = phi.overflow();
    for (a, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = phi.apply_basis(a).scaled(&Complex::real(c.clone()));
        out = out.plus(&term)?;
    }
    Ok(out)
}

/// `X_{a+1} · φ` for a zero-based basis index.
pub fn clifford_basis<T: Real>(a: usize, phi: &SpinorVector<T>) -> Result<SpinorVector<T>> {
    if a >= 2 * phi.n() {
        return Err(Error::DimensionMismatch {
            expected: 2 * phi.n(),
            found: a + 1,
        });
    }
    Ok(phi.apply_basis(a))
}

/// Harmonic oscillator `H₀ = ½(X₂·X₂· + X₁·X₁·)` on `L²(ℝ)`.
///
/// `H₀ h_l = −(2l+1)/2 · h_l`.
pub fn oscillator_apply<T: Real>(phi: &SpinorVector<T>) -> Result<SpinorVector<T>> {
    if phi.n() != 1 {
        return Err(Error::NotOneDimensional(phi.n()));
    }
    let x1 = MVector::basis(1, 0);
    let x2 = MVector::basis(1, 1);
    let pp = clifford_apply(&x2, &clifford_apply(&x2, phi)?)?;
    let qq = clifford_apply(&x1, &clifford_apply(&x1, phi)?)?;
    Ok(pp.plus(&qq)?.scaled(&Complex::real(T::ratio(1, 2))))
}

/// Eigenvalue `i(2l+1)` of the isotropy action `λ_*(E₀) = −2i H₀` on `W_l`.
pub fn weight_on_wl<T: Real>(l: u32) -> Complex<T> {
    let h = SpinorVector::<T>::hermite(l as usize + 2, l).expect("h_l fits its own window");
    let image = oscillator_apply(&h).expect("n = 1");
    let energy = image.level_coeff(l);
    let residual = image.minus(&h.scaled(&energy)).expect("same dimension");
    let weight = Complex::imag(T::from_int(-2)) * energy;
    let closed = Complex::imag(T::from_int(2 * i64::from(l) + 1));
    assert!(
        residual.near_zero(1e-12) && (weight.clone() - closed).near_zero(1e-12),
        "h_{l} is not an oscillator eigenvector"
    );
    weight
}
