//! Exact scalars and sparse multivariate polynomials.

mod division;
mod monomial;
mod poly;
mod scalar;
mod text;
mod univariate;

pub use division::normal_form;
pub(crate) use division::{make_monic, reduce_terms, sub_scaled, Terms};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::{det3, Polynomial};
pub use scalar::{is_prime, CoeffField, Scalar};
pub use text::Ring;
pub use univariate::Univariate;
