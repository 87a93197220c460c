//! Framed realization schemes as ideals, Groebner bases and the invariants read off them.

mod buchberger;
mod dimension;
mod elim;
mod ideal;

pub use crate::enumerate::FramedSuperfiguration;
pub use buchberger::{buchberger, buchberger_with_budget, is_reduced_groebner_basis, GroebnerBasis, DEFAULT_BUDGET};
pub use dimension::{
    generic_minimal_polynomial, krull_dimension, minimal_polynomial, staircase, summarize, zero_dim_summary,
    SchemeSummary,
};
pub use elim::{eliminate_linear_variables, simplify, Substitution};
pub use ideal::{build_ideal, build_matrix, IdealPresentation, IdealStats};
