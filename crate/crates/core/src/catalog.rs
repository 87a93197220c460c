//! Named linear spaces with expected facts, and the checker that recomputes them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{CoeffField, Univariate};
use crate::census::{analyze, Analysis};
use crate::enumerate::{find_v_frame, frame_ordering, FramedSuperfiguration, VFrame};
use crate::error::{Error, Result};
use crate::gb::{build_ideal, eliminate_linear_variables, DEFAULT_BUDGET};
use crate::realize::{characteristic_scan, count_chart_points, count_framed};
use crate::space::{LinearSpace, PointSet, SpaceJson};

const SOURCES: [&str; 11] = [
    include_str!("../catalog/fano.json"),
    include_str!("../catalog/mobius-kantor.json"),
    include_str!("../catalog/pappus.json"),
    include_str!("../catalog/desargues.json"),
    include_str!("../catalog/special-desargues.json"),
    include_str!("../catalog/planar-degeneration.json"),
    include_str!("../catalog/elliptic-11.json"),
    include_str!("../catalog/cubic-field.json"),
    include_str!("../catalog/quartic-field.json"),
    include_str!("../catalog/starfish.json"),
    include_str!("../catalog/anti-pappian.json"),
];

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the published literature.
    Literature,
    /// Computed by an independent method such as direct root search.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedFact {
    pub value: Value,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    description: String,
    space: SpaceJson,
    #[serde(default)]
    frame: Option<[u32; 5]>,
    expected: BTreeMap<String, ExpectedFact>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    /// Lines exactly as listed in the source, in order.
    pub listed_lines: Vec<Vec<u32>>,
    pub space: LinearSpace,
    /// V-frame used for the framed scheme; the first one found when absent.
    pub frame: Option<VFrame>,
    pub expected: BTreeMap<String, ExpectedFact>,
}

impl CatalogEntry {
    fn parse(text: &str) -> Result<Self> {
        let raw: RawEntry = serde_json::from_str(text)?;
        let listed_lines = raw.space.lines.clone();
        let space = LinearSpace::try_from(raw.space)?;
        let frame = raw.frame.map(|points| VFrame { points });
        if let Some(f) = frame {
            f.validate(&space)?;
        }
        Ok(CatalogEntry {
            name: raw.name,
            description: raw.description,
            listed_lines,
            space,
            frame,
            expected: raw.expected,
        })
    }

    pub fn v_frame(&self) -> Result<VFrame> {
        match self.frame {
            Some(f) => Ok(f),
            None => find_v_frame(&self.space),
        }
    }

    pub fn framed(&self) -> Result<FramedSuperfiguration> {
        frame_ordering(&self.space, self.v_frame()?)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "name": self.name,
            "description": self.description,
            "space": {"n": self.space.n(), "lines": self.listed_lines},
            "frame": self.frame.map(|f| f.points),
            "expected": self.expected,
        })
    }
}

fn entries_cell() -> &'static Vec<CatalogEntry> {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        SOURCES.iter().map(|t| CatalogEntry::parse(t).expect("bundled catalog entries are valid")).collect()
    })
}

/// Every entry, in catalog order.
pub fn entries() -> &'static [CatalogEntry] {
    entries_cell()
}

pub fn list() -> Vec<&'static str> {
    entries().iter().map(|e| e.name.as_str()).collect()
}

pub fn get(name: &str) -> Result<&'static CatalogEntry> {
    entries().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// The 11-point superfiguration on the residues mod 11: `{i, j, k}` is a line when
/// `i + j + k = 0 mod 11`. Residue `r` gets label `r + 1`.
pub fn torsion_superfiguration() -> LinearSpace {
    let mut lines = Vec::new();
    for i in 0..11usize {
        for j in i + 1..11 {
            for k in j + 1..11 {
                if (i + j + k) % 11 == 0 {
                    lines.push(PointSet::from_indices([i, j, k]));
                }
            }
        }
    }
    LinearSpace::new(11, lines).expect("three residues determine at most one line")
}

/// `T_r`: the space induced on the residues other than `r`, relabeled in order.
pub fn torsion_deletion(r: u32) -> Result<LinearSpace> {
    let full = torsion_superfiguration();
    if r > 10 {
        return Err(Error::PointOutOfRange { point: r + 1, n: 11 });
    }
    full.induced_subspace(full.points().without(r as usize))
}

/// One compared fact.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactCheck {
    pub fact: String,
    pub provenance: Provenance,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub checks: Vec<FactCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FactCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Context<'a> {
    entry: &'a CatalogEntry,
    analysis: OnceLock<std::result::Result<Analysis, String>>,
}

impl Context<'_> {
    fn analysis(&self) -> std::result::Result<&Analysis, String> {
        self.analysis
            .get_or_init(|| {
                analyze(&self.entry.space, Some(self.entry.v_frame().map_err(|e| e.to_string())?), DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| e.clone())
    }
}

fn prime_map(v: &Value) -> std::result::Result<BTreeMap<u64, Value>, String> {
    let obj = v.as_object().ok_or("expected an object keyed by primes")?;
    obj.iter().map(|(k, v)| k.parse::<u64>().map(|p| (p, v.clone())).map_err(|_| format!("bad prime {k}"))).collect()
}

fn to_object(m: BTreeMap<u64, Value>) -> Value {
    Value::Object(m.into_iter().map(|(p, v)| (p.to_string(), v)).collect())
}

/// Compares generator lists up to sign and order.
fn same_generators(ctx: &Context, expected: &Value) -> std::result::Result<(Value, bool), String> {
    let fs = ctx.entry.framed().map_err(|e| e.to_string())?;
    let (ideal, _) = build_ideal(&fs, CoeffField::Rational).map_err(|e| e.to_string())?;
    let wanted: Vec<&str> = expected
        .as_array()
        .ok_or("expected a list")?
        .iter()
        .map(|g| g.as_str().ok_or("expected strings"))
        .collect::<std::result::Result<_, _>>()?;
    let mut remaining = ideal.generators.clone();
    let mut pass = true;
    for w in wanted {
        let g = ideal.ring.parse(w).map_err(|e| e.to_string())?;
        match remaining.iter().position(|h| *h == g || *h == g.neg()) {
            Some(i) => {
                remaining.remove(i);
            }
            None => pass = false,
        }
    }
    Ok((json!(ideal.generator_strings()), pass && remaining.is_empty()))
}

fn integer_obstruction(ctx: &Context) -> std::result::Result<Value, String> {
    let fs = ctx.entry.framed().map_err(|e| e.to_string())?;
    let (ideal, _) = build_ideal(&fs, CoeffField::Rational).map_err(|e| e.to_string())?;
    let (reduced, _) = eliminate_linear_variables(&ideal);
    match reduced.generators.as_slice() {
        [c] if c.is_constant() => {
            let v = c.constant_value().ok_or("not constant")?;
            let r = v.as_rational().ok_or("not rational")?;
            Ok(json!(r.numer().to_string().trim_start_matches('-').parse::<u64>().ok()))
        }
        _ => Ok(Value::Null),
    }
}

fn eliminant(ctx: &Context, expected: &Value) -> std::result::Result<(Value, bool), String> {
    let a = ctx.analysis()?;
    let text = expected["polynomial"].as_str().ok_or("missing polynomial")?;
    let want = Univariate::parse(CoeffField::Rational, text).map_err(|e| e.to_string())?;
    let primes: Vec<u64> = serde_json::from_value(expected["primes"].clone()).map_err(|e| e.to_string())?;
    let Some(got) = &a.eliminant else {
        return Ok((json!({"krull_dimension": a.krull_dimension}), false));
    };
    let mut pass = got.degree() == want.degree();
    let mut counts = BTreeMap::new();
    for p in primes {
        let (g, w) = (got.count_roots_mod(p), want.count_roots_mod(p));
        pass &= g.is_some() && g == w;
        counts.insert(p, json!([g, w]));
    }
    Ok((json!({"polynomial": got.format("x"), "root_counts": to_object(counts)}), pass))
}

fn check_fact(ctx: &Context, fact: &str, expected: &Value) -> std::result::Result<(Value, bool), String> {
    let s = &ctx.entry.space;
    let equal = |v: Value| {
        let pass = v == *expected;
        Ok((v, pass))
    };
    match fact {
        "configuration" => equal(json!(s.is_configuration())),
        "superfiguration" => equal(json!(s.is_superfiguration())),
        "lines" => equal(json!(s.lines().len())),
        "longest_line" => equal(json!(s.lines().iter().map(|l| l.len()).max().unwrap_or(2))),
        "n_prime" => equal(json!(ctx.entry.framed().map_err(|e| e.to_string())?.n_prime)),
        "n_doubleprime" => equal(json!(ctx.entry.framed().map_err(|e| e.to_string())?.n_doubleprime)),
        "determinants" => equal(json!(ctx.analysis()?.stats.determinants)),
        "trivial_determinants" => equal(json!(ctx.analysis()?.stats.trivial)),
        "generators" => same_generators(ctx, expected),
        "unit_ideal" => equal(json!(ctx.analysis()?.gb.is_unit())),
        "integer_obstruction" => equal(integer_obstruction(ctx)?),
        "krull_dimension" => equal(json!(ctx.analysis()?.krull_dimension)),
        "min_krull_dimension" => {
            let d = ctx.analysis()?.krull_dimension;
            Ok((json!(d), expected.as_i64().is_some_and(|m| d >= m)))
        }
        "quotient_dimension" => equal(json!(ctx.analysis()?.quotient_dimension)),
        "eliminant" => eliminant(ctx, expected),
        "chart_counts" => {
            let fs = ctx.entry.framed().map_err(|e| e.to_string())?;
            let mut got = BTreeMap::new();
            for p in prime_map(expected)?.into_keys() {
                got.insert(p, json!(count_chart_points(&fs, p).map_err(|e| e.to_string())?.count));
            }
            equal(to_object(got))
        }
        "strong_framed_counts" => {
            let vf = ctx.entry.v_frame().map_err(|e| e.to_string())?;
            let frame = [vf.points[1], vf.points[2], vf.points[3], vf.points[4]];
            let mut got = BTreeMap::new();
            for p in prime_map(expected)?.into_keys() {
                got.insert(p, json!(count_framed(s, frame, p, true).map_err(|e| e.to_string())?.count));
            }
            equal(to_object(got))
        }
        "realizable" => {
            let primes: Vec<u64> = prime_map(expected)?.into_keys().collect();
            let scan = characteristic_scan(s, &primes).map_err(|e| e.to_string())?;
            equal(to_object(scan.into_iter().map(|(p, b)| (p, json!(b))).collect()))
        }
        other => Err(format!("unsupported fact {other:?}")),
    }
}

/// Recomputes every expected fact of `entry`.
pub fn verify_entry(entry: &CatalogEntry) -> VerifyReport {
    let ctx = Context { entry, analysis: OnceLock::new() };
    let checks = entry
        .expected
        .iter()
        .map(|(fact, e)| {
            let (computed, pass) = match check_fact(&ctx, fact, &e.value) {
                Ok(r) => r,
                Err(msg) => (json!({"error": msg}), false),
            };
            FactCheck { fact: fact.clone(), provenance: e.provenance, expected: e.value.clone(), computed, pass }
        })
        .collect();
    VerifyReport { name: entry.name.clone(), checks }
}

pub fn verify(name: &str) -> Result<VerifyReport> {
    Ok(verify_entry(get(name)?))
}

/// Reports for every entry, in catalog order.
pub fn verify_all() -> Vec<VerifyReport> {
    entries().par_iter().map(verify_entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::are_isomorphic;

    #[test]
    fn lookup() {
        assert_eq!(list().len(), SOURCES.len());
        let fano = get("fano").unwrap();
        assert_eq!((fano.space.n(), fano.space.lines().len()), (7, 7));
        assert!(matches!(get("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn torsion_spaces() {
        let full = torsion_superfiguration();
        assert_eq!(full.lines().len(), 15);
        assert!(full.is_superfiguration());
        let s = &get("elliptic-11").unwrap().space;
        for r in 1..=10 {
            assert!(are_isomorphic(&torsion_deletion(r).unwrap(), s).is_some(), "T_{r}");
        }
        let t0 = torsion_deletion(0).unwrap();
        assert!(t0.is_configuration());
        assert!(are_isomorphic(&t0, s).is_none());
    }

    #[test]
    fn fano_verifies() {
        let r = verify("fano").unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
