use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use incidence::algebra::MonomialOrder;
use incidence::catalog;
use incidence::census::{analyze, census_row, CensusFindings, CensusRow, CensusSummary};
use incidence::enumerate::{enumerate_with_certificates, frame_ordering, reduce_fully, SpaceFilter};
use incidence::gb::{
    buchberger_with_budget, build_ideal, generic_minimal_polynomial, krull_dimension, simplify, zero_dim_summary,
    GroebnerBasis, Substitution,
};
use incidence::realize::{
    characteristic_scan, count_chart_points, count_framed, first_combinatorial_frame, strong_total_with_frame,
    CountMode, Problem,
};
use incidence::space::{closure, validate_linear_space};

use crate::input::{read_gb, SpaceInput};
use crate::{CatalogCommand, Command, Failure, SchemeArgs};

/// Environment variable naming the census cache directory.
pub const CACHE_ENV: &str = "INCIDENCE_CACHE_DIR";

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{v}")?;
    Ok(())
}

pub fn run(command: &Command, out: Out) -> Result<(), Failure> {
    match command {
        Command::Validate(input) => {
            let family = input.family()?;
            match validate_linear_space(&family) {
                Ok(()) => emit(out, &json!({"valid": true})),
                Err(v) => {
                    emit(out, &json!({"valid": false, "axiom": v.axiom(), "reason": v.to_string()}))?;
                    Err(Failure::mismatch(format!("not a linear space: {v}")))
                }
            }
        }
        Command::Closure(input) => emit(out, &json!(closure(&input.family()?).to_json())),
        Command::Enumerate { n, superfigurations } => {
            if *n == 0 || *n > 12 {
                return Err(Failure::malformed("--n must be between 1 and 12"));
            }
            let filter = if *superfigurations { SpaceFilter::Superfigurations } else { SpaceFilter::All };
            for (cert, s) in enumerate_with_certificates(*n, filter) {
                let mut v = json!(s.to_json());
                v["certificate"] = json!(cert.to_hex());
                emit(out, &v)?;
            }
            Ok(())
        }
        Command::Reduce(input) => {
            let s = input.space()?;
            let (steps, last) = reduce_fully(&s);
            let steps: Vec<Value> = steps
                .iter()
                .map(|st| {
                    json!({
                        "removed_point": st.removed_point,
                        "n": st.fiber_codim,
                        "fiber_dimension": st.fiber_dimension(),
                        "reduced": st.reduced.to_json(),
                    })
                })
                .collect();
            emit(
                out,
                &json!({
                    "steps": steps,
                    "result": last.to_json(),
                    "superfiguration": last.is_superfiguration(),
                }),
            )
        }
        Command::Frame { input, frame } => {
            let s = input.space()?;
            let vf = input.v_frame(frame.as_deref(), &s)?;
            let fs = frame_ordering(&s, vf).map_err(Failure::from)?;
            let order: Vec<usize> = fs.order.iter().map(|i| i + 1).collect();
            emit(
                out,
                &json!({
                    "frame": vf.points,
                    "order": order,
                    "n_prime": fs.n_prime,
                    "n_doubleprime": fs.n_doubleprime,
                    "space": fs.space.to_json(),
                }),
            )
        }
        Command::Ideal(input) => {
            let mut v;
            if input.ideal.is_some() {
                v = input.ideal()?.to_json_value();
            } else {
                let s = input.source.space()?;
                let vf = input.source.v_frame(input.frame.as_deref(), &s)?;
                let fs = frame_ordering(&s, vf).map_err(Failure::from)?;
                let (ideal, stats) = build_ideal(&fs, input.coeff).map_err(Failure::from)?;
                v = ideal.to_json_value();
                v["frame"] = json!(vf.points);
                v["determinants"] = json!(stats.determinants);
                v["trivial"] = json!(stats.trivial);
            }
            emit(out, &v)
        }
        Command::Gb { input, order, budget, simplify: simp } => {
            let ideal = input.ideal()?;
            let (gb, subs) = if *simp {
                simplify(&ideal, *order, *budget).map_err(Failure::from)?
            } else {
                (buchberger_with_budget(&ideal, *order, *budget).map_err(Failure::from)?, Vec::new())
            };
            let mut v = gb.to_json_value();
            if *simp {
                v["substitutions"] = json!(subs);
            }
            emit(out, &v)
        }
        Command::Dim(args) => {
            let (gb, _) = scheme(args)?;
            emit(out, &json!({"krull_dimension": krull_dimension(&gb)}))
        }
        Command::Summary(args) => {
            let (gb, subs) = scheme(args)?;
            let summary = zero_dim_summary(&gb).map_err(Failure::from)?;
            let (weights, eliminant) = generic_minimal_polynomial(&gb).map_err(Failure::from)?;
            let mut v = summary.to_json_value();
            v["substitutions"] = json!(subs);
            v["remaining_vars"] = json!(gb.ring.vars);
            v["eliminant"] = json!({"weights": weights, "polynomial": eliminant.format("x")});
            emit(out, &v)
        }
        Command::Count { input, q, mode, frame } => count(input, *q, mode, frame.as_deref(), out),
        Command::Scan { input, primes } => {
            let s = input.space()?;
            let scan = characteristic_scan(&s, primes).map_err(Failure::from)?;
            let map: serde_json::Map<String, Value> =
                scan.into_iter().map(|(p, b)| (p.to_string(), json!(b))).collect();
            emit(out, &Value::Object(map))
        }
        Command::Census { n, budget, no_cache } => census(*n, *budget, *no_cache, out),
        Command::Catalog(c) => catalog_command(c, out),
    }
}

/// Simplified Groebner basis from a space, ideal or stored basis.
fn scheme(args: &SchemeArgs) -> Result<(GroebnerBasis, Vec<Substitution>), Failure> {
    if let Some(p) = &args.gb {
        return Ok((read_gb(p)?, Vec::new()));
    }
    let ideal = args.input.ideal()?;
    simplify(&ideal, MonomialOrder::DegRevLex, args.budget).map_err(Failure::from)
}

fn four_points(v: &[u32]) -> Result<[u32; 4], Failure> {
    v.try_into().map_err(|_| Failure::malformed("this mode needs a four-point frame"))
}

fn count(input: &SpaceInput, q: u64, mode: &str, frame: Option<&[u32]>, out: Out) -> Result<(), Failure> {
    let mode = CountMode::parse(mode).ok_or_else(|| Failure::malformed(format!("unknown mode {mode:?}")))?;
    let s = input.space()?;
    let start = Instant::now();
    let (result, used_frame) = match mode {
        CountMode::Chart => {
            let vf = input.v_frame(frame, &s)?;
            let fs = frame_ordering(&s, vf).map_err(Failure::from)?;
            (count_chart_points(&fs, q), vf.points.to_vec())
        }
        CountMode::WeakTotal => (Problem::unframed(&s, q, false).map(|p| p.count()), Vec::new()),
        _ => {
            let f = match frame {
                Some(f) => four_points(f)?,
                None => first_combinatorial_frame(&s)
                    .ok_or_else(|| Failure::malformed("the space has no combinatorial frame"))?,
            };
            let r = match mode {
                CountMode::FramedWeak => count_framed(&s, f, q, false),
                CountMode::FramedStrong => count_framed(&s, f, q, true),
                _ => strong_total_with_frame(&s, f, q),
            };
            (r, f.to_vec())
        }
    };
    let r = result.map_err(Failure::from)?;
    emit(
        out,
        &json!({
            "q": r.q,
            "mode": r.mode.to_string(),
            "count": r.count,
            "frame": used_frame,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        }),
    )
}

fn cache_dir(no_cache: bool) -> Option<PathBuf> {
    if no_cache {
        return None;
    }
    let base =
        std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("incidence-cache"));
    let dir = base.join("census");
    match fs::create_dir_all(&dir) {
        Ok(()) => Some(dir),
        Err(e) => {
            log::warn!("cache disabled, cannot create {}: {e}", dir.display());
            None
        }
    }
}

fn cached_row(dir: &Path, cert: &str, s: &incidence::LinearSpace, budget: u64) -> CensusRow {
    let path = dir.join(format!("{cert}.json"));
    if let Ok(text) = fs::read_to_string(&path) {
        let parsed = serde_json::from_str::<Value>(&text)
            .ok()
            .and_then(|v| CensusFindings::from_json_value(&v["findings"]).ok());
        if let Some(f) = parsed {
            log::debug!("census cache hit {cert}");
            return CensusRow { certificate: cert.to_string(), space: s.clone(), outcome: Ok(f), elapsed_ms: 0 };
        }
    }
    let start = Instant::now();
    let outcome = analyze(s, None, budget).map(|a| {
        let findings = CensusFindings::from_analysis(&a);
        let record = json!({"findings": findings.to_json_value(), "gb": a.gb.to_json_value()});
        if let Err(e) = fs::write(&path, record.to_string()) {
            log::warn!("cannot write {}: {e}", path.display());
        }
        findings
    });
    CensusRow {
        certificate: cert.to_string(),
        space: s.clone(),
        outcome: outcome.map_err(|e| e.to_string()),
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn census(n: usize, budget: u64, no_cache: bool, out: Out) -> Result<(), Failure> {
    if !(7..=12).contains(&n) {
        return Err(Failure::malformed("--n must be between 7 and 12"));
    }
    let spaces = enumerate_with_certificates(n, SpaceFilter::Superfigurations);
    let dir = cache_dir(no_cache);
    let rows: Vec<CensusRow> = spaces
        .par_iter()
        .map(|(cert, s)| match &dir {
            Some(d) => cached_row(d, &cert.to_hex(), s, budget),
            None => census_row(s, budget),
        })
        .collect();
    let mut failures = 0;
    let mut budget_hit = false;
    let mut found = Vec::new();
    for row in &rows {
        emit(out, &row.to_json_value())?;
        match &row.outcome {
            Ok(f) => found.push(f.clone()),
            Err(e) => {
                failures += 1;
                budget_hit |= e.contains("budget");
            }
        }
    }
    let summary = CensusSummary::from_rows(found.iter(), failures);
    emit(out, &json!({"summary": summary.to_json_value()}))?;
    if budget_hit {
        return Err(Failure { code: Failure::BUDGET, message: "some classes exceeded the step budget".into() });
    }
    if failures > 0 {
        return Err(Failure::malformed(format!("{failures} classes failed")));
    }
    Ok(())
}

fn catalog_command(c: &CatalogCommand, out: Out) -> Result<(), Failure> {
    match c {
        CatalogCommand::List => emit(out, &json!(catalog::list())),
        CatalogCommand::Show { name } => emit(out, &catalog::get(name).map_err(Failure::from)?.to_json_value()),
        CatalogCommand::Verify { names } => {
            let entries: Vec<&catalog::CatalogEntry> = if names.is_empty() {
                catalog::entries().iter().collect()
            } else {
                names.iter().map(|n| catalog::get(n)).collect::<Result<_, _>>().map_err(Failure::from)?
            };
            let reports: Vec<catalog::VerifyReport> = entries.par_iter().map(|e| catalog::verify_entry(e)).collect();
            let mut bad = Vec::new();
            for r in &reports {
                emit(out, &json!({"name": r.name, "passed": r.passed(), "checks": r.checks}))?;
                if !r.passed() {
                    bad.push(r.name.clone());
                }
            }
            if bad.is_empty() {
                Ok(())
            } else {
                Err(Failure::mismatch(format!("mismatches in {}", bad.join(", "))))
            }
        }
    }
}
