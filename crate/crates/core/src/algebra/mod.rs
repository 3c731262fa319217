//! Exact coefficient fields, polynomials, rational functions and the
//! characteristic-p differential toolkit.

mod diff;
mod extension;
mod factor;
mod field;
mod linalg;
mod poly;
mod ratfunc;

pub use diff::{
    deflate_p, derivative_iter, frobenius_twist, indicator_over_pth_power,
    rational_wilson_derivative, residue_at, residue_at_with_cap, wilson_derivative,
};
pub use extension::Extension;
pub use factor::{closure_multiplicities, roots_over, squarefree_decomposition};
pub use field::{Field, FieldKind, PrimeField};
pub use linalg::{echelon, EchelonForm};
pub use poly::Poly;
pub use ratfunc::{RatFuncField, RationalFunction};

/// F_p(L)[b]/(m): an algebraic extension of the rational function field.
pub type AlgebraicRatFunc = Extension<RatFuncField>;
/// F_{p^k}.
pub type GaloisField = Extension<PrimeField>;
