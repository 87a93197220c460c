//! Isomorphism classes, exhaustive generation, Glynn reduction and V-shaped frames.

mod canon;
mod frame;
mod generate;
mod reduce;

pub use canon::{are_isomorphic, automorphisms, canonical_form, CanonicalCertificate, CanonicalForm};
pub use frame::{find_v_frame, frame_ordering, is_combinatorial_frame, v_frames, FramedSuperfiguration, VFrame};
pub use generate::{class_counts, enumerate_linear_spaces, enumerate_with_certificates, SpaceFilter};
pub use reduce::{glynn_reduce, glynn_reduce_at, reduce_fully, GlynnReductionStep};

/// `true` when every point lies on at least three full lines.
pub fn is_superfiguration(s: &crate::LinearSpace) -> bool {
    s.is_superfiguration()
}
