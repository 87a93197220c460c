//! Points and lines of the projective plane over a prime field.

use crate::algebra::is_prime;
use crate::error::{Error, Result};

/// Homogeneous coordinates with first nonzero coordinate 1.
pub type ProjPoint = [u32; 3];

/// `P^2(F_q)` for a prime `q`. Lines use the same normalized triples as points, with incidence
/// given by a vanishing dot product.
#[derive(Clone, Debug)]
pub struct Plane {
    q: u32,
    inverses: Vec<u32>,
}

impl Plane {
    /// Primes below `2^16` keep all products in `u64` comfortably.
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q >= 1 << 16 {
            return Err(Error::NotPrime(q));
        }
        let q32 = q as u32;
        let mut inverses = vec![0u32; q as usize];
        for a in 1..q {
            let mut r = 1u64;
            let (mut b, mut e) = (a, q - 2);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % q;
                }
                b = b * b % q;
                e >>= 1;
            }
            inverses[a as usize] = r as u32;
        }
        Ok(Plane { q: q32, inverses })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q^2 + q + 1`.
    pub fn num_points(&self) -> u64 {
        let q = self.q as u64;
        q * q + q + 1
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn normalize(&self, v: [u32; 3]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = self.inverses[lead as usize];
        Some(v.map(|c| self.mul(c, inv)))
    }

    pub fn cross(&self, a: &ProjPoint, b: &ProjPoint) -> Option<ProjPoint> {
        let c = [
            self.sub(self.mul(a[1], b[2]), self.mul(a[2], b[1])),
            self.sub(self.mul(a[2], b[0]), self.mul(a[0], b[2])),
            self.sub(self.mul(a[0], b[1]), self.mul(a[1], b[0])),
        ];
        self.normalize(c)
    }

    pub fn incident(&self, p: &ProjPoint, l: &ProjPoint) -> bool {
        let q = self.q as u64;
        (p[0] as u64 * l[0] as u64 + p[1] as u64 * l[1] as u64 + p[2] as u64 * l[2] as u64).is_multiple_of(q)
    }

    pub fn collinear(&self, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
        match self.cross(a, b) {
            Some(l) => self.incident(c, &l),
            None => true,
        }
    }

    /// Every point, in the order `[0:0:1]`, `[0:1:c]`, `[1:b:c]`.
    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        let q = self.q;
        std::iter::once([0, 0, 1]).chain((0..q).map(|c| [0, 1, c])).chain((0..q * q).map(move |k| [1, k / q, k % q]))
    }

    /// The `q + 1` points of a line.
    pub fn points_on(&self, l: &ProjPoint) -> Vec<ProjPoint> {
        // Two distinct points of the line span it.
        let candidates = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];
        let mut basis = Vec::new();
        for e in candidates {
            if let Some(p) = self.cross(l, &e) {
                if !basis.contains(&p) {
                    basis.push(p);
                }
            }
            if basis.len() == 2 {
                break;
            }
        }
        let (u, v) = (basis[0], basis[1]);
        let mut out = vec![v];
        for t in 0..self.q {
            let w = [0, 1, 2].map(|i| (u[i] + self.mul(t, v[i])) % self.q);
            out.push(self.normalize(w).expect("independent"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_incidences() {
        let p = Plane::new(2).unwrap();
        let pts: Vec<ProjPoint> = p.points().collect();
        assert_eq!(pts.len(), 7);
        for l in &pts {
            let on = p.points_on(l);
            assert_eq!(on.len(), 3);
            assert!(on.iter().all(|x| p.incident(x, l)));
        }
    }

    #[test]
    fn join_and_meet() {
        let p = Plane::new(7).unwrap();
        let (a, b) = ([1, 2, 3], [0, 1, 5]);
        let l = p.cross(&a, &b).unwrap();
        assert!(p.incident(&a, &l) && p.incident(&b, &l));
        assert_eq!(p.cross(&a, &a), None);
        assert!(p.collinear(&a, &b, &[1, 2, 3]));
        assert!(Plane::new(8).is_err());
    }
}
