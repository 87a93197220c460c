//! Canonical labeling of linear spaces by partition refinement and backtracking.
//!
//! The search tree individualizes one point of a non-singleton cell at a time and refines
//! the resulting ordered partition against the point/full-line incidences. Every leaf gives
//! a relabeling; the certificate is the smallest relabeled line set over all leaves.
//! Automorphisms found at equal leaves prune sibling branches in the same orbit and abort
//! subtrees that are images of already explored ones.

use std::fmt;

use crate::space::{LinearSpace, PointSet};

/// Total-order key identifying an isomorphism class of linear spaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCertificate {
    n: u32,
    lines: Vec<u64>,
}

impl CanonicalCertificate {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Byte encoding: point count then each relabeled line mask, little endian.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 8 * self.lines.len());
        out.extend_from_slice(&self.n.to_le_bytes());
        for l in &self.lines {
            out.extend_from_slice(&l.to_le_bytes());
        }
        out
    }

    /// Lowercase hex of [`CanonicalCertificate::to_bytes`]; used as a cache key.
    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The canonical representative itself.
    pub fn space(&self) -> LinearSpace {
        LinearSpace::from_sorted_unchecked(
            self.n as usize,
            self.lines.iter().map(|&b| PointSet::from_bits(b)).collect(),
        )
    }
}

impl fmt::Debug for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

/// Result of [`canonical_form`].
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: CanonicalCertificate,
    /// `labeling[old_index] = new_index` maps the input onto the canonical representative.
    pub labeling: Vec<usize>,
}

#[inline]
fn mix(mut h: u64) -> u64 {
    h ^= h >> 33;
    h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
    h ^= h >> 33;
    h = h.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    h ^ (h >> 33)
}

type Partition = Vec<Vec<usize>>;

struct Searcher<'a> {
    n: usize,
    lines: &'a [PointSet],
    incident: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
}

#[derive(Clone)]
struct Leaf {
    encoding: Vec<u64>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(s: &'a LinearSpace) -> Self {
        let n = s.n();
        let lines = s.lines();
        let incident = (0..n).map(|p| (0..lines.len()).filter(|&l| lines[l].contains(p)).collect()).collect();
        Searcher { n, lines, incident, generators: Vec::new(), first: None, best: None }
    }

    /// Splits cells until every point's multiset of incident-line colorings is constant on cells.
    fn refine(&self, cells: &mut Partition) {
        let mut color = vec![0usize; self.n];
        let mut line_sig = vec![0u64; self.lines.len()];
        let mut point_sig = vec![0u64; self.n];
        let mut scratch: Vec<u64> = Vec::new();
        loop {
            if cells.len() == self.n {
                return;
            }
            for (c, cell) in cells.iter().enumerate() {
                for &p in cell {
                    color[p] = c;
                }
            }
            for (l, line) in self.lines.iter().enumerate() {
                scratch.clear();
                scratch.extend(line.iter().map(|p| color[p] as u64));
                scratch.sort_unstable();
                line_sig[l] = scratch.iter().fold(0x9e37_79b9 ^ scratch.len() as u64, |h, &c| mix(h ^ c));
            }
            for (sig, incident) in point_sig.iter_mut().zip(&self.incident) {
                scratch.clear();
                scratch.extend(incident.iter().map(|&l| line_sig[l]));
                scratch.sort_unstable();
                *sig = scratch.iter().fold(scratch.len() as u64, |h, &s| mix(h.wrapping_add(s)));
            }
            let mut next: Partition = Vec::with_capacity(cells.len() + 1);
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut members = cell.clone();
                members.sort_by_key(|&p| (point_sig[p], p));
                let mut start = 0;
                for i in 1..=members.len() {
                    if i == members.len() || point_sig[members[i]] != point_sig[members[start]] {
                        next.push(members[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return;
            }
            *cells = next;
        }
    }

    fn encode(&self, labeling: &[usize]) -> Vec<u64> {
        let mut enc: Vec<u64> = self.lines.iter().map(|l| l.map(labeling).bits()).collect();
        enc.sort_unstable_by_key(|&b| PointSet::from_bits(b));
        enc
    }

    fn orbit_roots(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            if path.iter().any(|&p| g[p] != p) {
                continue;
            }
            for (a, &b) in g.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        (0..self.n).map(|x| find(&mut parent, x)).collect()
    }

    /// Returns `Some(depth)` to abandon the search up to the node at that depth.
    fn search(&mut self, cells: Partition, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let (target, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .expect("non-discrete partition has a non-singleton cell");
        let members = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() && !self.generators.is_empty() {
                let roots = self.orbit_roots(path);
                if explored.iter().any(|&e| roots[e] == roots[v]) {
                    continue;
                }
            }
            let mut child: Partition = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&p| p != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            self.refine(&mut child);
            path.push(v);
            let jump = self.search(child, path);
            path.pop();
            explored.push(v);
            if let Some(depth) = jump {
                if depth < path.len() {
                    return Some(depth);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &Partition, path: &[usize]) -> Option<usize> {
        let mut labeling = vec![0usize; self.n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let encoding = self.encode(&labeling);
        let leaf = Leaf { encoding, labeling, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(leaf.clone());
            self.first = Some(leaf);
            return None;
        };
        let common = |other: &Leaf| other.path.iter().zip(path).take_while(|(a, b)| a == b).count();
        if leaf.encoding == first.encoding {
            let gen = automorphism(&first.labeling, &leaf.labeling);
            let depth = common(first);
            self.generators.push(gen);
            return Some(depth);
        }
        let best = self.best.as_ref().unwrap();
        if leaf.encoding == best.encoding {
            let gen = automorphism(&best.labeling, &leaf.labeling);
            let depth = common(best);
            self.generators.push(gen);
            return Some(depth);
        }
        if leaf.encoding < best.encoding {
            self.best = Some(leaf);
        }
        None
    }
}

/// `from^{-1} ∘ to` for two labelings with the same image.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0usize; from.len()];
    for (p, &pos) in from.iter().enumerate() {
        inverse[pos] = p;
    }
    to.iter().map(|&pos| inverse[pos]).collect()
}

/// Canonical certificate and a labeling realizing it.
pub fn canonical_form(s: &LinearSpace) -> CanonicalForm {
    let mut searcher = Searcher::new(s);
    let mut cells: Partition = vec![(0..s.n()).collect()];
    searcher.refine(&mut cells);
    searcher.search(cells, &mut Vec::new());
    let best = searcher.best.expect("search visits at least one leaf");
    CanonicalForm {
        certificate: CanonicalCertificate { n: s.n() as u32, lines: best.encoding },
        labeling: best.labeling,
    }
}

/// Generators of the automorphism group found while canonizing (not necessarily a full
/// generating set; every element is a genuine automorphism).
pub fn automorphisms(s: &LinearSpace) -> Vec<Vec<usize>> {
    let mut searcher = Searcher::new(s);
    let mut cells: Partition = vec![(0..s.n()).collect()];
    searcher.refine(&mut cells);
    searcher.search(cells, &mut Vec::new());
    searcher.generators
}

/// Isomorphism test. The witness maps point index `i` of `a` to `witness[i]` of `b`.
pub fn are_isomorphic(a: &LinearSpace, b: &LinearSpace) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.lines().len() != b.lines().len() {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.certificate != cb.certificate {
        return None;
    }
    let mut b_inverse = vec![0usize; b.n()];
    for (p, &pos) in cb.labeling.iter().enumerate() {
        b_inverse[pos] = p;
    }
    let witness: Vec<usize> = ca.labeling.iter().map(|&pos| b_inverse[pos]).collect();
    assert_eq!(a.relabel(&witness), *b, "certificate match must yield an isomorphism");
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fano() -> LinearSpace {
        LinearSpace::from_labels(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7], [3, 4, 7], [3, 5, 6], [2, 5, 7], [2, 4, 6]])
            .unwrap()
    }

    #[test]
    fn fano_certificate_is_relabeling_invariant() {
        let f = fano();
        let cert = canonical_form(&f).certificate;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            let g = f.relabel(&perm);
            assert_eq!(canonical_form(&g).certificate, cert);
            let w = are_isomorphic(&f, &g).unwrap();
            assert_eq!(f.relabel(&w), g);
        }
    }

    #[test]
    fn canonical_labeling_reproduces_certificate() {
        let f = fano();
        let form = canonical_form(&f);
        assert_eq!(f.relabel(&form.labeling), form.certificate.space());
    }

    #[test]
    fn highly_symmetric_spaces_finish() {
        for n in 1..=12 {
            let empty = LinearSpace::trivial(n).unwrap();
            let c = canonical_form(&empty);
            assert_eq!(c.certificate.n(), n);
        }
        let one_line = LinearSpace::new(12, [PointSet::full(12)]).unwrap();
        let _ = canonical_form(&one_line);
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let mk = LinearSpace::from_labels(
            8,
            &[[1, 2, 3], [1, 4, 5], [5, 6, 7], [1, 7, 8], [3, 5, 8], [2, 6, 8], [3, 4, 6], [2, 4, 7]],
        )
        .unwrap();
        assert!(are_isomorphic(&fano(), &mk).is_none());
    }

    #[test]
    fn automorphisms_are_genuine() {
        let f = fano();
        let gens = automorphisms(&f);
        assert!(!gens.is_empty());
        for g in gens {
            assert_eq!(f.relabel(&g), f);
        }
    }
}
