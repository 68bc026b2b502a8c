//! Symplectic Dirac operators on `ℂP¹`.
//!
//! The crate is generic over the scalar type: `f32`/`f64` for numerics and
//! [`Exact`] (arbitrary-precision rationals) where identities must hold
//! exactly. Aliases for the common instantiations live at the crate root.
//!
//! * [`hermite_clifford`]: the Clifford action of `ℝ^{2n}` on truncated
//!   Hermite expansions.
//! * [`su2_rep`]: the representations `τ_k` of `𝔰𝔲(2)` on binary forms.
//! * [`intertwiners`]: the `U(1)`-equivariant maps `𝐔_k → 𝐖_l`.
//! * [`dirac_cp1`]: the reduced operators and their spectra.
//! * [`verify`] and [`report`]: named checks and per-`k` summaries.

pub mod dirac_cp1;
pub mod error;
pub mod hermite_clifford;
pub mod intertwiners;
pub mod report;
pub mod scalar;
pub mod su2_rep;
pub mod verify;

use nalgebra::DMatrix;
use num_complex::Complex;

pub use error::{Error, Result};
pub use scalar::{ComplexExt, Real};

/// Dense complex matrix over the scalar `T`.
pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Exact scalar.
pub type Exact = num_rational::BigRational;

pub type ExactSpinor = hermite_clifford::SpinorVector<Exact>;
pub type FloatSpinor = hermite_clifford::SpinorVector<f64>;
pub type ExactRep = su2_rep::RepMatrices<Exact>;
pub type FloatRep = su2_rep::RepMatrices<f64>;
pub type ExactDirac = dirac_cp1::DiracMatrix<Exact>;
pub type FloatDirac = dirac_cp1::DiracMatrix<f64>;
