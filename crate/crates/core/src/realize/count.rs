use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::plane::{Plane, ProjPoint};
use crate::enumerate::{is_combinatorial_frame, FramedSuperfiguration};
use crate::error::{Error, Result};
use crate::space::LinearSpace;

/// Largest search space the naive oracle accepts.
pub const ORACLE_CAP: u128 = 100_000_000;

/// Standard frame images of the four frame points.
pub const STANDARD_FRAME: [ProjPoint; 4] = [[0, 0, 1], [0, 1, 0], [1, 1, 1], [1, 0, 0]];

/// Images of the first five points in the chart of a framed superfiguration.
const V_FRAME: [ProjPoint; 5] = [[0, 1, 1], [0, 0, 1], [0, 1, 0], [1, 1, 1], [1, 0, 0]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    Chart,
    FramedWeak,
    FramedStrong,
    StrongTotal,
    WeakTotal,
}

impl CountMode {
    pub fn parse(s: &str) -> Option<CountMode> {
        match s {
            "chart" => Some(CountMode::Chart),
            "framed-weak" => Some(CountMode::FramedWeak),
            "framed-strong" => Some(CountMode::FramedStrong),
            "strong-total" => Some(CountMode::StrongTotal),
            "weak-total" => Some(CountMode::WeakTotal),
            _ => None,
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CountMode::Chart => "chart",
            CountMode::FramedWeak => "framed-weak",
            CountMode::FramedStrong => "framed-strong",
            CountMode::StrongTotal => "strong-total",
            CountMode::WeakTotal => "weak-total",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationCount {
    pub q: u64,
    pub mode: CountMode,
    pub count: u128,
}

/// Where a point may be placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    Fixed(ProjPoint),
    /// `[1 : y : z]`.
    Affine,
    /// `[0 : 1 : w]`.
    AtInfinity,
    Free,
}

impl Domain {
    fn admits(&self, p: &ProjPoint) -> bool {
        match self {
            Domain::Fixed(x) => x == p,
            Domain::Affine => p[0] == 1,
            Domain::AtInfinity => p[0] == 0 && p[1] == 1,
            Domain::Free => true,
        }
    }

    fn enumerate(&self, plane: &Plane) -> Vec<ProjPoint> {
        let q = plane.q();
        match self {
            Domain::Fixed(x) => vec![*x],
            Domain::Affine => (0..q * q).map(|k| [1, k / q, k % q]).collect(),
            Domain::AtInfinity => (0..q).map(|w| [0, 1, w]).collect(),
            Domain::Free => plane.points().collect(),
        }
    }

    fn size(&self, q: u128) -> u128 {
        match self {
            Domain::Fixed(_) => 1,
            Domain::Affine => q * q,
            Domain::AtInfinity => q,
            Domain::Free => q * q + q + 1,
        }
    }
}

/// A realization counting problem: a linear space, a domain per point, and whether
/// realizations must be strong.
#[derive(Clone, Debug)]
pub struct Problem {
    space: LinearSpace,
    plane: Plane,
    domains: Vec<Domain>,
    strong: bool,
    mode: CountMode,
    order: Vec<usize>,
    lines_through: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
}

impl Problem {
    fn new(space: &LinearSpace, q: u64, domains: Vec<Domain>, strong: bool, mode: CountMode) -> Result<Self> {
        let plane = Plane::new(q)?;
        let n = space.n();
        let members: Vec<Vec<usize>> = space.lines().iter().map(|l| l.iter().collect()).collect();
        let mut lines_through = vec![Vec::new(); n];
        for (i, m) in members.iter().enumerate() {
            for &p in m {
                lines_through[p].push(i);
            }
        }
        // Fixed points first, then greedily the point on the most lines already holding two
        // ordered points, ties by index.
        let mut order: Vec<usize> = (0..n).filter(|&p| matches!(domains[p], Domain::Fixed(_))).collect();
        let mut done = vec![false; n];
        for &p in &order {
            done[p] = true;
        }
        while order.len() < n {
            let known = |p: usize| {
                lines_through[p].iter().filter(|&&l| members[l].iter().filter(|&&x| done[x]).count() >= 2).count()
            };
            let next = (0..n).filter(|&p| !done[p]).max_by_key(|&p| (known(p), std::cmp::Reverse(p))).unwrap();
            done[next] = true;
            order.push(next);
        }
        Ok(Problem { space: space.clone(), plane, domains, strong, mode, order, lines_through, members })
    }

    /// Points of a framed superfiguration in the chart: the V-frame fixed, the next `n'` points
    /// affine, the last `n''` on the line at infinity. Weak, coincidences allowed.
    pub fn chart(fs: &FramedSuperfiguration, q: u64) -> Result<Self> {
        let n = fs.n();
        let domains = (0..n)
            .map(|p| match p {
                0..=4 => Domain::Fixed(V_FRAME[p]),
                _ if p < 5 + fs.n_prime => Domain::Affine,
                _ => Domain::AtInfinity,
            })
            .collect();
        Self::new(&fs.space, q, domains, false, CountMode::Chart)
    }

    /// Maps with the given frame (1-based labels) sent to the standard frame.
    pub fn framed(s: &LinearSpace, frame: [u32; 4], q: u64, strong: bool) -> Result<Self> {
        let idx = frame.map(|p| p as usize).map(|p| p.wrapping_sub(1));
        if idx.iter().any(|&p| p >= s.n()) || !is_combinatorial_frame(s, idx) {
            return Err(Error::InvalidFrame(format!("{frame:?} is not a combinatorial frame")));
        }
        let mut domains = vec![Domain::Free; s.n()];
        for (k, &p) in idx.iter().enumerate() {
            domains[p] = Domain::Fixed(STANDARD_FRAME[k]);
        }
        let mode = if strong { CountMode::FramedStrong } else { CountMode::FramedWeak };
        Self::new(s, q, domains, strong, mode)
    }

    /// Every map into `P^2(F_q)` with no point pinned.
    pub fn unframed(s: &LinearSpace, q: u64, strong: bool) -> Result<Self> {
        let mode = if strong { CountMode::StrongTotal } else { CountMode::WeakTotal };
        Self::new(s, q, vec![Domain::Free; s.n()], strong, mode)
    }

    pub fn q(&self) -> u64 {
        self.plane.q() as u64
    }

    /// Join of the placed points of line `l`, if they span a line.
    fn span(&self, l: usize, placed: &[Option<ProjPoint>]) -> Option<ProjPoint> {
        let mut first: Option<ProjPoint> = None;
        for &x in &self.members[l] {
            if let Some(px) = placed[x] {
                match first {
                    None => first = Some(px),
                    Some(f) if f != px => return self.plane.cross(&f, &px),
                    Some(_) => {}
                }
            }
        }
        None
    }

    fn candidates(&self, p: usize, placed: &[Option<ProjPoint>]) -> Vec<ProjPoint> {
        let mut known: Vec<ProjPoint> = Vec::new();
        for &l in &self.lines_through[p] {
            if let Some(line) = self.span(l, placed) {
                if !known.contains(&line) {
                    known.push(line);
                }
            }
        }
        let domain = self.domains[p];
        let raw = match known.len() {
            0 => domain.enumerate(&self.plane),
            1 => self.plane.points_on(&known[0]).into_iter().filter(|x| domain.admits(x)).collect(),
            _ => {
                let meet = self.plane.cross(&known[0], &known[1]).expect("distinct lines");
                if known[2..].iter().all(|l| self.plane.incident(&meet, l)) && domain.admits(&meet) {
                    vec![meet]
                } else {
                    Vec::new()
                }
            }
        };
        if !self.strong {
            return raw;
        }
        raw.into_iter().filter(|c| self.strong_ok(p, c, placed)).collect()
    }

    /// Distinct from every placed point, and off every line through two placed points unless
    /// the three points are collinear in the space.
    fn strong_ok(&self, p: usize, c: &ProjPoint, placed: &[Option<ProjPoint>]) -> bool {
        let pts: Vec<(usize, ProjPoint)> = placed.iter().enumerate().filter_map(|(i, x)| x.map(|x| (i, x))).collect();
        if pts.iter().any(|(_, x)| x == c) {
            return false;
        }
        for (i, &(a, pa)) in pts.iter().enumerate() {
            for &(b, pb) in &pts[i + 1..] {
                let together = self.space.line_through(a, b).is_some_and(|l| l.contains(p));
                if !together && self.plane.collinear(&pa, &pb, c) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self, depth: usize, placed: &mut Vec<Option<ProjPoint>>, visit: &mut dyn FnMut(&[Option<ProjPoint>])) {
        if depth == self.order.len() {
            visit(placed);
            return;
        }
        let p = self.order[depth];
        for c in self.candidates(p, placed) {
            placed[p] = Some(c);
            self.search(depth + 1, placed, visit);
        }
        placed[p] = None;
    }

    fn count_from(&self, depth: usize, placed: &mut Vec<Option<ProjPoint>>) -> u128 {
        if depth == self.order.len() {
            return 1;
        }
        let p = self.order[depth];
        let mut total = 0;
        for c in self.candidates(p, placed) {
            placed[p] = Some(c);
            total += self.count_from(depth + 1, placed);
        }
        placed[p] = None;
        total
    }

    /// Exact count, split across workers at the first free point.
    pub fn count(&self) -> RealizationCount {
        let mut placed = vec![None; self.space.n()];
        let mut depth = 0;
        while depth < self.order.len() {
            let p = self.order[depth];
            if !matches!(self.domains[p], Domain::Fixed(_)) {
                break;
            }
            let cands = self.candidates(p, &placed);
            if cands.is_empty() {
                return self.result(0);
            }
            placed[p] = Some(cands[0]);
            depth += 1;
        }
        if depth == self.order.len() {
            return self.result(1);
        }
        let p = self.order[depth];
        let total = self
            .candidates(p, &placed)
            .into_par_iter()
            .map(|c| {
                let mut local = placed.clone();
                local[p] = Some(c);
                self.count_from(depth + 1, &mut local)
            })
            .sum();
        self.result(total)
    }

    fn result(&self, count: u128) -> RealizationCount {
        RealizationCount { q: self.q(), mode: self.mode, count }
    }

    /// Every realization, as images indexed by point.
    pub fn realizations(&self) -> Vec<Vec<ProjPoint>> {
        let mut out = Vec::new();
        let mut placed = vec![None; self.space.n()];
        self.search(0, &mut placed, &mut |pl| out.push(pl.iter().map(|x| x.unwrap()).collect()));
        out
    }

    /// Whether an assignment satisfies the problem, checked from the definitions.
    pub fn accepts(&self, images: &[ProjPoint]) -> bool {
        if images.len() != self.space.n() {
            return false;
        }
        if !images.iter().zip(&self.domains).all(|(x, d)| d.admits(x)) {
            return false;
        }
        let n = images.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.strong && images[a] == images[b] {
                    return false;
                }
                for c in b + 1..n {
                    let in_s = self.space.line_through(a, b).is_some_and(|l| l.contains(c));
                    let in_image = self.plane.collinear(&images[a], &images[b], &images[c]);
                    if (in_s && !in_image) || (self.strong && !in_s && in_image) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Product of the domain sizes.
    pub fn search_space(&self) -> u128 {
        let q = self.q() as u128;
        self.domains.iter().map(|d| d.size(q)).product()
    }

    /// Full enumeration of every assignment with no propagation.
    pub fn naive_count(&self) -> Result<RealizationCount> {
        let size = self.search_space();
        if size > ORACLE_CAP {
            return Err(Error::OracleCap(size));
        }
        let lists: Vec<Vec<ProjPoint>> = self.domains.iter().map(|d| d.enumerate(&self.plane)).collect();
        let mut idx = vec![0usize; lists.len()];
        let mut images: Vec<ProjPoint> = lists.iter().map(|l| l[0]).collect();
        let mut count = 0u128;
        loop {
            if self.accepts(&images) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == lists.len() {
                    return Ok(self.result(count));
                }
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    images[k] = lists[k][idx[k]];
                    break;
                }
                idx[k] = 0;
                images[k] = lists[k][0];
                k += 1;
            }
        }
    }
}

/// Weak solutions of the chart equations of a framed superfiguration over `F_q`.
pub fn count_chart_points(fs: &FramedSuperfiguration, q: u64) -> Result<RealizationCount> {
    Ok(Problem::chart(fs, q)?.count())
}

/// Framed weak or strong realizations over `F_q`.
pub fn count_framed(s: &LinearSpace, frame: [u32; 4], q: u64, strong: bool) -> Result<RealizationCount> {
    Ok(Problem::framed(s, frame, q, strong)?.count())
}

/// `|PGL_3(F_q)| = q^3 (q^3 - 1) (q^2 - 1)`.
pub fn pgl3_order(q: u64) -> u128 {
    let q = q as u128;
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// Lexicographically first combinatorial frame, as 1-based labels.
pub fn first_combinatorial_frame(s: &LinearSpace) -> Option<[u32; 4]> {
    let n = s.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if is_combinatorial_frame(s, [a, b, c, d]) {
                        return Some([a, b, c, d].map(|p| p as u32 + 1));
                    }
                }
            }
        }
    }
    None
}

/// All strong realizations over `F_q`, from the framed count at `frame`.
pub fn strong_total_with_frame(s: &LinearSpace, frame: [u32; 4], q: u64) -> Result<RealizationCount> {
    let framed = count_framed(s, frame, q, true)?;
    Ok(RealizationCount { q, mode: CountMode::StrongTotal, count: framed.count * pgl3_order(q) })
}

/// All strong realizations over `F_q`, using the first combinatorial frame.
pub fn strong_total(s: &LinearSpace, q: u64) -> Result<RealizationCount> {
    let frame = first_combinatorial_frame(s).ok_or_else(|| Error::InvalidFrame("no combinatorial frame".into()))?;
    strong_total_with_frame(s, frame, q)
}

/// Whether a strong realization exists over each `F_p`.
pub fn characteristic_scan(s: &LinearSpace, primes: &[u64]) -> Result<BTreeMap<u64, bool>> {
    let frame = first_combinatorial_frame(s).ok_or_else(|| Error::InvalidFrame("no combinatorial frame".into()))?;
    primes.iter().map(|&p| Ok((p, count_framed(s, frame, p, true)?.count > 0))).collect()
}

/// Independent count by exhaustive enumeration; fails past [`ORACLE_CAP`] assignments.
pub fn naive_count_oracle(problem: &Problem) -> Result<RealizationCount> {
    problem.naive_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> LinearSpace {
        LinearSpace::from_labels(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7], [3, 4, 7], [3, 5, 6], [2, 5, 7], [2, 4, 6]])
            .unwrap()
    }

    #[test]
    fn fano_counts() {
        let f = fano();
        let fs = FramedSuperfiguration::from_framed(f.clone()).unwrap();
        assert_eq!(count_chart_points(&fs, 2).unwrap().count, 1);
        assert_eq!(count_chart_points(&fs, 3).unwrap().count, 0);
        let frame = first_combinatorial_frame(&f).unwrap();
        assert_eq!(count_framed(&f, frame, 2, true).unwrap().count, 1);
        assert_eq!(count_framed(&f, frame, 3, true).unwrap().count, 0);
        assert_eq!(strong_total(&f, 2).unwrap().count, 168);
    }

    #[test]
    fn group_order() {
        assert_eq!(pgl3_order(2), 168);
        assert_eq!(pgl3_order(3), 5616);
    }

    #[test]
    fn one_free_point() {
        let s = LinearSpace::trivial(5).unwrap();
        let p = Problem::framed(&s, [1, 2, 3, 4], 2, false).unwrap();
        assert_eq!(p.count().count, 7);
        assert_eq!(p.naive_count().unwrap().count, 7);
    }

    #[test]
    fn bad_inputs() {
        let f = fano();
        assert!(count_framed(&f, [1, 2, 3, 4], 2, true).is_err());
        assert!(count_framed(&f, [1, 2, 4, 7], 4, true).is_err());
        let big = LinearSpace::trivial(12).unwrap();
        let p = Problem::framed(&big, [1, 2, 3, 4], 7, false).unwrap();
        assert!(matches!(p.naive_count(), Err(Error::OracleCap(_))));
    }
}
