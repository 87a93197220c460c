use crate::error::{Error, Result};
use crate::space::LinearSpace;

/// One Glynn step: a point on at most two full lines is forgotten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlynnReductionStep {
    /// 1-based label of the removed point in the input space.
    pub removed_point: u32,
    /// The induced space on the other points, relabeled in order.
    pub reduced: LinearSpace,
    /// Number of reduced lines that the removed point extends; the fiber is a
    /// projective space of dimension `2 - fiber_codim`.
    pub fiber_codim: u8,
}

impl GlynnReductionStep {
    pub fn fiber_dimension(&self) -> u8 {
        2 - self.fiber_codim
    }
}

/// Forgets the point with the fewest full lines (smallest label on ties), or returns
/// `None` for a superfiguration.
pub fn glynn_reduce(s: &LinearSpace) -> Result<Option<GlynnReductionStep>> {
    if s.n() <= 1 {
        return Err(Error::SinglePoint);
    }
    let p = (0..s.n()).min_by_key(|&p| (s.degree(p), p)).expect("n > 1");
    if s.degree(p) > 2 {
        return Ok(None);
    }
    glynn_reduce_at(s, p as u32 + 1).map(Some)
}

/// Forgets the point with 1-based label `point`, which must lie on at most two full lines.
pub fn glynn_reduce_at(s: &LinearSpace, point: u32) -> Result<GlynnReductionStep> {
    if s.n() <= 1 {
        return Err(Error::SinglePoint);
    }
    if point == 0 || point as usize > s.n() {
        return Err(Error::PointOutOfRange { point, n: s.n() });
    }
    let p = point as usize - 1;
    let degree = s.degree(p);
    if degree > 2 {
        return Err(Error::NotReducibleAt(point));
    }
    let reduced = s.induced_subspace(s.points().without(p))?;
    Ok(GlynnReductionStep { removed_point: point, reduced, fiber_codim: degree as u8 })
}

/// Iterates [`glynn_reduce`] until a superfiguration or a single point remains.
pub fn reduce_fully(s: &LinearSpace) -> (Vec<GlynnReductionStep>, LinearSpace) {
    let mut steps = Vec::new();
    let mut current = s.clone();
    while current.n() > 1 {
        match glynn_reduce(&current).expect("n > 1") {
            Some(step) => {
                current = step.reduced.clone();
                steps.push(step);
            }
            None => break,
        }
    }
    (steps, current)
}
