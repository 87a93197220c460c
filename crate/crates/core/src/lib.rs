//! Exact tooling for point-line incidence structures: linear spaces, their isomorph-free
//! enumeration, the affine schemes of framed superfigurations, Groebner bases over Q and
//! prime fields, and realization counting over prime fields.

pub mod algebra;
pub mod catalog;
pub mod census;
pub mod enumerate;
pub mod error;
pub mod gb;
pub mod realize;
pub mod space;

pub use error::{Error, Result};
pub use space::{CollinearityFamily, LinearSpace, PointSet};
