//! The framed-scheme pipeline run over whole classes of superfigurations.
//!
//! Zero-dimensional schemes are identified through the squarefree minimal polynomial of a
//! separating linear form. Its irreducible factors are matched against a list of known
//! polynomials by comparing numbers of roots modulo many primes: two number fields of degree
//! at most 6 with the same splitting counts at all primes are isomorphic, so the fingerprint
//! identifies each factor's field without factoring over Q.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{is_prime, CoeffField, MonomialOrder, Univariate};
use crate::enumerate::{canonical_form, enumerate_linear_spaces, find_v_frame, frame_ordering, SpaceFilter, VFrame};
use crate::error::{Error, Result};
use crate::gb::{
    build_ideal, generic_minimal_polynomial, krull_dimension, simplify, staircase, GroebnerBasis, IdealStats,
    Substitution,
};
use crate::LinearSpace;

/// Minimal polynomials of the zero-dimensional components found among 10-point superfigurations.
pub const KNOWN_MINIMAL_POLYNOMIALS: [&str; 9] = [
    "x^2 - 2",
    "x^2 - 5",
    "x^2 + 1",
    "x^2 + 3",
    "x^2 + 7",
    "x^3 - x - 1",
    "x^3 - x^2 + x + 1",
    "x^3 - 5*x^2 + 6*x - 1",
    "x^4 - x^3 + x^2 - x + 1",
];

/// Number of primes in a fingerprint.
pub const FINGERPRINT_PRIMES: usize = 60;

/// Factors of a squarefree polynomial in terms of known irreducible polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Index into the known list and multiplicity, for every known factor that occurs.
    pub known: Vec<(usize, usize)>,
    /// Number of rational roots.
    pub linear: usize,
}

/// Matches the irreducible factors of a squarefree `m` against `known` (irreducible, degree
/// at least 2) plus linear factors, by root counts at the first [`FINGERPRINT_PRIMES`] primes
/// above 100 that are good for every polynomial involved.
pub fn decompose(m: &Univariate, known: &[Univariate]) -> Option<Decomposition> {
    let degree = m.degree()?;
    let primes: Vec<u64> = (101u64..)
        .filter(|&p| is_prime(p) && m.is_good_prime(p) && known.iter().all(|g| g.is_good_prime(p)))
        .take(FINGERPRINT_PRIMES)
        .collect();
    let target: Vec<i64> = primes.iter().map(|&p| m.count_roots_mod(p).unwrap() as i64).collect();
    let prints: Vec<Vec<i64>> =
        known.iter().map(|g| primes.iter().map(|&p| g.count_roots_mod(p).unwrap() as i64).collect()).collect();
    let degrees: Vec<usize> = known.iter().map(|g| g.degree().unwrap_or(0)).collect();

    fn search(
        i: usize,
        left: usize,
        residual: &mut Vec<i64>,
        prints: &[Vec<i64>],
        degrees: &[usize],
        chosen: &mut Vec<(usize, usize)>,
    ) -> bool {
        if i == prints.len() {
            return residual.iter().all(|&r| r == left as i64);
        }
        let max = left / degrees[i].max(1);
        for mult in (0..=max).rev() {
            let k = mult as i64;
            if residual.iter().zip(&prints[i]).any(|(r, c)| r - k * c < 0) {
                continue;
            }
            for (r, c) in residual.iter_mut().zip(&prints[i]) {
                *r -= k * c;
            }
            if mult > 0 {
                chosen.push((i, mult));
            }
            if search(i + 1, left - mult * degrees[i], residual, prints, degrees, chosen) {
                return true;
            }
            if mult > 0 {
                chosen.pop();
            }
            for (r, c) in residual.iter_mut().zip(&prints[i]) {
                *r += k * c;
            }
        }
        false
    }

    let mut residual = target;
    let mut chosen = Vec::new();
    if search(0, degree, &mut residual, &prints, &degrees, &mut chosen) {
        let used: usize = chosen.iter().map(|&(i, k)| degrees[i] * k).sum();
        Some(Decomposition { known: chosen, linear: degree - used })
    } else {
        None
    }
}

/// Parsed [`KNOWN_MINIMAL_POLYNOMIALS`].
pub fn known_minimal_polynomials() -> Vec<Univariate> {
    KNOWN_MINIMAL_POLYNOMIALS
        .iter()
        .map(|t| Univariate::parse(CoeffField::Rational, t).expect("valid polynomial"))
        .collect()
}

/// Everything the pipeline computes for one framed superfiguration over Q.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub frame: VFrame,
    pub n_prime: usize,
    pub n_doubleprime: usize,
    pub stats: IdealStats,
    pub generators: usize,
    pub substitutions: Vec<Substitution>,
    pub gb: GroebnerBasis,
    pub krull_dimension: i64,
    pub quotient_dimension: Option<usize>,
    /// Squarefree minimal polynomial of a separating linear form, when zero-dimensional.
    pub eliminant: Option<Univariate>,
}

impl Analysis {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "frame": self.frame.points,
            "n_prime": self.n_prime,
            "n_doubleprime": self.n_doubleprime,
            "determinants": self.stats.determinants,
            "trivial": self.stats.trivial,
            "generators": self.generators,
            "substitutions": self.substitutions,
            "remaining_vars": self.gb.ring.vars,
            "gb_size": self.gb.elements.len(),
            "krull_dimension": self.krull_dimension,
            "quotient_dimension": self.quotient_dimension,
            "eliminant": self.eliminant.as_ref().map(|m| m.format("x")),
        })
    }
}

/// Frames `s` (with `frame`, or the first V-frame found), builds its ideal over Q, simplifies
/// it and reads off dimension and eliminant.
pub fn analyze(s: &LinearSpace, frame: Option<VFrame>, budget: u64) -> Result<Analysis> {
    let frame = match frame {
        Some(f) => f,
        None => find_v_frame(s)?,
    };
    let fs = frame_ordering(s, frame)?;
    let (ideal, stats) = build_ideal(&fs, CoeffField::Rational)?;
    let generators = ideal.generators.len();
    let (gb, substitutions) = simplify(&ideal, MonomialOrder::DegRevLex, budget)?;
    let dim = krull_dimension(&gb);
    let (quotient_dimension, eliminant) = if dim == 0 {
        let size = staircase(&gb).map(|s| s.len());
        (size, Some(generic_minimal_polynomial(&gb)?.1))
    } else {
        (None, None)
    };
    Ok(Analysis {
        frame,
        n_prime: fs.n_prime,
        n_doubleprime: fs.n_doubleprime,
        stats,
        generators,
        substitutions,
        gb,
        krull_dimension: dim,
        quotient_dimension,
        eliminant,
    })
}

/// One census line.
#[derive(Clone, Debug)]
pub struct CensusRow {
    pub certificate: String,
    pub space: LinearSpace,
    pub outcome: std::result::Result<CensusFindings, String>,
    pub elapsed_ms: u128,
}

/// The part of an [`Analysis`] a census keeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusFindings {
    pub frame: [u32; 5],
    pub krull_dimension: i64,
    pub quotient_dimension: Option<usize>,
    pub eliminant: Option<String>,
    /// Known factors by text, plus the number of rational points; `None` when unmatched.
    pub factors: Option<(Vec<(String, usize)>, usize)>,
}

impl CensusFindings {
    pub fn to_json_value(&self) -> serde_json::Value {
        let factors = self.factors.as_ref().map(|(known, linear)| {
            json!({
                "known": known.iter().map(|(p, k)| json!({"polynomial": p, "multiplicity": k})).collect::<Vec<_>>(),
                "linear": linear,
            })
        });
        json!({
            "frame": self.frame,
            "krull_dimension": self.krull_dimension,
            "quotient_dimension": self.quotient_dimension,
            "eliminant": self.eliminant,
            "factors": factors,
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed census findings: {v}"));
        let frame: [u32; 5] = serde_json::from_value(v["frame"].clone()).map_err(|_| bad())?;
        let krull_dimension = v["krull_dimension"].as_i64().ok_or_else(bad)?;
        let quotient_dimension = v["quotient_dimension"].as_u64().map(|d| d as usize);
        let eliminant = v["eliminant"].as_str().map(String::from);
        let factors = match &v["factors"] {
            serde_json::Value::Null => None,
            f => {
                let known = f["known"]
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|k| Some((k["polynomial"].as_str()?.to_string(), k["multiplicity"].as_u64()? as usize)))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(bad)?;
                Some((known, f["linear"].as_u64().ok_or_else(bad)? as usize))
            }
        };
        Ok(CensusFindings { frame, krull_dimension, quotient_dimension, eliminant, factors })
    }
}

impl CensusRow {
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = json!({
            "certificate": self.certificate,
            "space": self.space.to_json(),
            "elapsed_ms": self.elapsed_ms,
        });
        match &self.outcome {
            Ok(f) => v["findings"] = f.to_json_value(),
            Err(e) => v["error"] = json!(e),
        }
        v
    }
}

impl CensusFindings {
    /// Keeps the census view of `a`, matching its eliminant against [`KNOWN_MINIMAL_POLYNOMIALS`].
    pub fn from_analysis(a: &Analysis) -> Self {
        let known = known_minimal_polynomials();
        let factors = a.eliminant.as_ref().and_then(|m| decompose(m, &known)).map(|d| {
            let named = d.known.iter().map(|&(i, k)| (KNOWN_MINIMAL_POLYNOMIALS[i].to_string(), k)).collect();
            (named, d.linear)
        });
        CensusFindings {
            frame: a.frame.points,
            krull_dimension: a.krull_dimension,
            quotient_dimension: a.quotient_dimension,
            eliminant: a.eliminant.as_ref().map(|m| m.format("x")),
            factors,
        }
    }
}

/// Runs [`analyze`] with the first V-frame and keeps the census view.
pub fn census_findings(s: &LinearSpace, budget: u64) -> Result<CensusFindings> {
    Ok(CensusFindings::from_analysis(&analyze(s, None, budget)?))
}

/// Census row for `s`, keyed by its canonical certificate.
pub fn census_row(s: &LinearSpace, budget: u64) -> CensusRow {
    let start = Instant::now();
    let certificate = canonical_form(s).certificate.to_hex();
    let outcome = census_findings(s, budget).map_err(|e| e.to_string());
    CensusRow { certificate, space: s.clone(), outcome, elapsed_ms: start.elapsed().as_millis() }
}

/// The pipeline over every superfiguration class on `n` points, in certificate order.
pub fn census(n: usize, budget: u64) -> Vec<CensusRow> {
    let spaces = enumerate_linear_spaces(n, SpaceFilter::Superfigurations);
    spaces.par_iter().map(|s| census_row(s, budget)).collect()
}

/// Aggregate view of census rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub classes: usize,
    pub failures: usize,
    pub by_dimension: BTreeMap<i64, usize>,
    /// Known polynomial text to the number of classes where it occurs.
    pub occurrences: BTreeMap<String, usize>,
    /// Zero-dimensional classes whose eliminant has a factor outside the known list.
    pub unmatched: Vec<String>,
}

impl CensusSummary {
    pub fn from_rows<'a>(rows: impl IntoIterator<Item = &'a CensusFindings>, failures: usize) -> Self {
        let mut out = CensusSummary { failures, ..Default::default() };
        for f in rows {
            out.classes += 1;
            *out.by_dimension.entry(f.krull_dimension).or_default() += 1;
            if f.krull_dimension != 0 {
                continue;
            }
            match &f.factors {
                Some((known, _)) => {
                    for (p, _) in known {
                        *out.occurrences.entry(p.clone()).or_default() += 1;
                    }
                }
                None => out.unmatched.push(f.eliminant.clone().unwrap_or_default()),
            }
        }
        out.classes += failures;
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "classes": self.classes,
            "failures": self.failures,
            "by_dimension": self.by_dimension.iter().map(|(d, c)| (d.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            "occurrences": self.occurrences,
            "unmatched": self.unmatched,
        })
    }
}
