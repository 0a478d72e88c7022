//! Two-variable zeta function of the rationals and its relatives.
//!
//! The crate evaluates `Z(w, s) = ∫ θ(e^{2x})^w e^{sx} dx` (suitably
//! regularized) and its entire completion `ξ(w, s)` on `C²`, the exact
//! coefficient polynomials of `θ^w`, zeros of `ξ(u, ·)` for real `u`, the
//! probability semigroup carried by `Z(-u, ·)` on its critical line, and the
//! analogous functions for imaginary quadratic fields of class number one.
//!
//! Real-argument kernels are generic over [`num_traits::Float`]; the
//! complex evaluators run in binary64 ([`Real`], [`Complex`]) and the exact
//! algebra uses [`Rational`].

mod cmath;
pub mod context;
pub mod numfield;
pub mod qseries;
pub mod quad;
pub mod semigroup;
pub mod theta_kernel;
pub mod zeroscan;
pub mod zeta2;

pub use context::{Error, EvalContext, Result};

/// Real scalar of the numeric core.
pub type Real = f64;
/// Complex scalar of the numeric core.
pub type Complex = num_complex::Complex64;
/// Exact rational scalar of the series and polynomial algebra.
pub type Rational = num_rational::BigRational;
