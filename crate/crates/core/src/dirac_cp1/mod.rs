//! Symplectic Dirac operators `D_k`, `D̃_k` and `P_k` on `ℂP¹ = SU(2)/U(1)`.
//!
//! For odd `k` the invariant space `𝔙_k ⊗ 𝐔_k` reduces both Dirac operators to
//! `m×m` matrices on `𝐔_k`, `m = (k+1)/2`. This module builds them twice (from
//! the defining composites and from the closed-form tridiagonal matrices),
//! and derives their exact and numerical spectral data.

mod assembly;
mod charpoly;
mod dyadic;
mod matrix;
mod spectral;
mod sturm;

pub use assembly::{
    a_coeff, assemble_closed_form, assemble_from_definition, assemble_from_definition_unnormalized,
    assemble_unnormalized_closed_form, operator_size, to_normalized, unnormalized_coeffs, ACoeff,
};
pub use charpoly::{charpoly_exact, CharPoly};
pub use dyadic::{Dyadic, IntegerJacobi};
pub use matrix::{i_commutator, phase_strip, Basis, DiracMatrix, Surd};
pub use spectral::{
    abs_det, charpoly_residual, det_product, exact_spectrum, kernel_dim, kernel_parity_rule,
    norm_growth, norm_growth_row, p_closed_form, p_from_a_squares, p_numeric, p_operator, spectrum,
    spectrum_of, spectrum_with, to_sym_tridiagonal, NormGrowth, P_OFF_DIAGONAL_TOL,
};
pub use sturm::{Bisection, SymTridiagonal};
