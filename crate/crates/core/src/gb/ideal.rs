use serde::{Deserialize, Serialize};

use crate::algebra::{det3, CoeffField, Polynomial, Ring};
use crate::enumerate::FramedSuperfiguration;
use crate::error::{Error, Result};

/// Generators of an ideal in a named polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    ring: Ring,
    generators: Vec<String>,
}

impl IdealPresentation {
    /// Zero generators are dropped.
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.field() != ring.field || g.nvars() != ring.nvars() {
                return Err(Error::RingMismatch("generator outside the ring".into()));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealPresentation { ring, generators })
    }

    pub fn parse(ring: Ring, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.format(g)).collect()
    }

    /// Reduction to another coefficient field.
    pub fn to_field(&self, field: CoeffField) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.to_field(field)).collect::<Result<Vec<_>>>()?;
        Self::new(self.ring.with_field(field), gens)
    }

    /// `true` when some generator is a nonzero constant.
    pub fn has_unit_generator(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson { ring: self.ring.clone(), generators: self.generator_strings() })
            .expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: IdealJson = serde_json::from_str(s)?;
        let ring = Ring::new(raw.ring.field, raw.ring.vars)?;
        let gens: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
        Self::parse(ring, &gens)
    }
}

/// Column `j` of the coordinate matrix: the frame, then `(1, y, z)` points, then `(0, 1, w)`
/// points on the first line.
pub fn build_matrix(fs: &FramedSuperfiguration, field: CoeffField) -> Result<(Ring, Vec<[Polynomial; 3]>)> {
    let (np, ndp) = (fs.n_prime, fs.n_doubleprime);
    let ring = Ring::framed(field, np, ndp)?;
    let c = |v: i64| ring.from_int(v);
    let fixed = [[0, 1, 1], [0, 0, 1], [0, 1, 0], [1, 1, 1], [1, 0, 0]];
    let mut cols: Vec<[Polynomial; 3]> = fixed.iter().map(|col| col.map(c)).collect();
    for j in 0..np {
        cols.push([c(1), ring.var(j), ring.var(np + j)]);
    }
    for j in 0..ndp {
        cols.push([c(0), c(1), ring.var(2 * np + j)]);
    }
    Ok((ring, cols))
}

/// Counts from [`build_ideal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealStats {
    /// One determinant per collinear triple.
    pub determinants: usize,
    /// Determinants that vanish identically.
    pub trivial: usize,
}

/// The ideal of determinants of all collinear triples, with identically zero ones dropped.
pub fn build_ideal(fs: &FramedSuperfiguration, field: CoeffField) -> Result<(IdealPresentation, IdealStats)> {
    let (ring, cols) = build_matrix(fs, field)?;
    let mut gens = Vec::new();
    let mut stats = IdealStats { determinants: 0, trivial: 0 };
    for line in fs.space.lines() {
        let pts: Vec<usize> = line.iter().collect();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                for c in b + 1..pts.len() {
                    stats.determinants += 1;
                    let d = det3([&cols[pts[a]], &cols[pts[b]], &cols[pts[c]]]);
                    if d.is_zero() {
                        stats.trivial += 1;
                        log::debug!("determinant of {:?} vanishes identically", [pts[a] + 1, pts[b] + 1, pts[c] + 1]);
                    } else {
                        gens.push(d);
                    }
                }
            }
        }
    }
    Ok((IdealPresentation::new(ring, gens)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LinearSpace;

    fn fano() -> FramedSuperfiguration {
        let s =
            LinearSpace::from_labels(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7], [3, 4, 7], [3, 5, 6], [2, 5, 7], [2, 4, 6]])
                .unwrap();
        FramedSuperfiguration::from_framed(s).unwrap()
    }

    #[test]
    fn fano_matrix_and_generators() {
        let (ring, cols) = build_matrix(&fano(), CoeffField::Rational).unwrap();
        let col6: Vec<String> = cols[5].iter().map(|p| ring.format(p)).collect();
        assert_eq!(col6, ["1", "y1", "z1"]);
        let (ideal, stats) = build_ideal(&fano(), CoeffField::Rational).unwrap();
        assert_eq!(stats, IdealStats { determinants: 7, trivial: 2 });
        assert_eq!(ideal.generators.len(), 5);
    }

    #[test]
    fn json_round_trip() {
        let (ideal, _) = build_ideal(&fano(), CoeffField::Prime(2)).unwrap();
        let text = ideal.to_json_value().to_string();
        assert!(text.contains("\"coeff\":\"Fp:2\""));
        assert_eq!(IdealPresentation::from_json_str(&text).unwrap(), ideal);
    }
}
