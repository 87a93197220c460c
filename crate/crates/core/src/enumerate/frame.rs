use crate::error::{Error, Result};
use crate::space::{LinearSpace, PointSet};

/// Four distinct points, no three on a common full line.
pub fn is_combinatorial_frame(s: &LinearSpace, points: [usize; 4]) -> bool {
    let set = PointSet::from_indices(points);
    set.len() == 4 && points.iter().all(|&p| p < s.n()) && s.lines().iter().all(|l| l.intersection(set).len() < 3)
}

/// Five points `(p1, .., p5)` with `p1 p2 p3` and `p1 p4 p5` collinear and `(p2, p3, p4, p5)`
/// a combinatorial frame. Stored as 1-based labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VFrame {
    pub points: [u32; 5],
}

impl VFrame {
    fn indices(&self) -> [usize; 5] {
        self.points.map(|p| p as usize - 1)
    }

    pub fn validate(&self, s: &LinearSpace) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidFrame(format!("{:?}: {why}", self.points)));
        if self.points.iter().any(|&p| p == 0 || p as usize > s.n()) {
            return bad("point out of range");
        }
        let [p1, p2, p3, p4, p5] = self.indices();
        if PointSet::from_indices([p1, p2, p3, p4, p5]).len() != 5 {
            return bad("points are not distinct");
        }
        if !s.is_collinear_set(PointSet::from_indices([p1, p2, p3])) {
            return bad("p1 p2 p3 not collinear");
        }
        if !s.is_collinear_set(PointSet::from_indices([p1, p4, p5])) {
            return bad("p1 p4 p5 not collinear");
        }
        if !is_combinatorial_frame(s, [p2, p3, p4, p5]) {
            return bad("p2 p3 p4 p5 is not a frame");
        }
        Ok(())
    }

    /// The full line through `p1, p2, p3`.
    pub fn first_line(&self, s: &LinearSpace) -> PointSet {
        let [p1, p2, ..] = self.indices();
        s.line_through(p1, p2).expect("validated frame")
    }
}

/// V-shaped frame following the constructive argument: the smallest point, its two
/// lexicographically first full lines, and the two smallest other points on each.
pub fn find_v_frame(s: &LinearSpace) -> Result<VFrame> {
    if let Some(p) = (0..s.n()).find(|&p| s.degree(p) < 3) {
        return Err(Error::NotSuperfiguration(p as u32 + 1));
    }
    let p1 = 0;
    let mut through: Vec<PointSet> = s.lines_through(p1).collect();
    through.sort();
    let a: Vec<u32> = through[0].without(p1).labels();
    let b: Vec<u32> = through[1].without(p1).labels();
    let frame = VFrame { points: [1, a[0], a[1], b[0], b[1]] };
    frame.validate(s).map_err(|e| Error::InvalidFrame(format!("internal: {e}")))?;
    Ok(frame)
}

/// Every V-shaped frame with `p2 < p3` and `p4 < p5`. Swapping within either pair gives an
/// isomorphic framed scheme, so these representatives suffice.
pub fn v_frames(s: &LinearSpace) -> Vec<VFrame> {
    let mut out = Vec::new();
    for p1 in 0..s.n() {
        let through: Vec<PointSet> = s.lines_through(p1).collect();
        for (i, l1) in through.iter().enumerate() {
            for (j, l2) in through.iter().enumerate() {
                if i == j {
                    continue;
                }
                let a: Vec<usize> = l1.without(p1).iter().collect();
                let b: Vec<usize> = l2.without(p1).iter().collect();
                for x in 0..a.len() {
                    for y in x + 1..a.len() {
                        for u in 0..b.len() {
                            for v in u + 1..b.len() {
                                let points = [p1, a[x], a[y], b[u], b[v]].map(|p| p as u32 + 1);
                                out.push(VFrame { points });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A linear space relabeled so that a V-frame sits at `1..=5` and the remaining points of the
/// line through `1, 2, 3` come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedSuperfiguration {
    /// The relabeled space.
    pub space: LinearSpace,
    /// `order[new_index] = old_index` into the original space.
    pub order: Vec<usize>,
    /// Points other than 4, 5 off the line through 1, 2, 3.
    pub n_prime: usize,
    /// Extra points on the line through 1, 2, 3.
    pub n_doubleprime: usize,
}

impl FramedSuperfiguration {
    /// Wraps a space whose labels already satisfy the framing conventions.
    pub fn from_framed(space: LinearSpace) -> Result<Self> {
        let identity = VFrame { points: [1, 2, 3, 4, 5] };
        let fs = frame_ordering(&space, identity)?;
        if fs.space != space {
            return Err(Error::InvalidFrame("points on the line through 1, 2, 3 must be labeled last".into()));
        }
        Ok(fs)
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// The full line through `1, 2, 3`.
    pub fn first_line(&self) -> PointSet {
        self.space.line_through(0, 1).expect("framed")
    }
}

/// Relabels `s` so that `vf` becomes `(1, 2, 3, 4, 5)`, the other points off the first line
/// follow in their original order, and the other points of the first line come last.
pub fn frame_ordering(s: &LinearSpace, vf: VFrame) -> Result<FramedSuperfiguration> {
    vf.validate(s)?;
    let frame = vf.indices();
    let frame_set = PointSet::from_indices(frame);
    let first_line = vf.first_line(s);
    let mut order: Vec<usize> = frame.to_vec();
    let middle: Vec<usize> = s.points().difference(frame_set).difference(first_line).iter().collect();
    let tail: Vec<usize> = first_line.difference(frame_set).iter().collect();
    order.extend(&middle);
    order.extend(&tail);
    let mut perm = vec![0usize; s.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok(FramedSuperfiguration { space: s.relabel(&perm), order, n_prime: middle.len(), n_doubleprime: tail.len() })
}
