//! Exhaustive enumeration of clarified and field-like specs whose level
//! constraints come from a bounded catalog of subfields.
//!
//! Counts are relative to the catalog: `φ^m(F^H)` with `m <= max_frob` and
//! `H` a subgroup of the group generated by the action (all Frobenius
//! subgroups on a finite field).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{decompose, is_fixed_point_iso};
use crate::aut::FieldAut;
use crate::construct::{coinduce, glue, GlueData};
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::spec::TambaraSpec;
use crate::subfield::{subfield_compare, AutGroup, NormalForm, SubfieldDescriptor};
use crate::validate::{symbolically_valid, validate, SamplingPolicy};

pub const CENSUS_VERSION: u32 = 1;

/// Largest `n` and `max_frob` a census accepts.
pub const MAX_CENSUS_N: u32 = 4;
pub const MAX_CENSUS_FROB: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Backend {
    pub field: Field,
    /// Action of the generator of `C_{p^n}` (or of `C_{p^s}` on a coordinate).
    pub action: FieldAut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub p: u64,
    pub n: u32,
    pub backends: Vec<Backend>,
    pub max_frob: u32,
    pub seed: u64,
    /// Worker threads; `0` lets the pool decide.
    pub threads: usize,
}

impl CensusConfig {
    pub fn new(p: u64, n: u32, backends: Vec<Backend>) -> Self {
        CensusConfig {
            p,
            n,
            backends,
            max_frob: n + 1,
            seed: SamplingPolicy::default().seed,
            threads: 0,
        }
    }

    pub fn single(p: u64, n: u32, field: Field, action: FieldAut) -> Self {
        CensusConfig::new(p, n, vec![Backend { field, action }])
    }

    pub fn check(&self) -> Result<()> {
        if self.n > MAX_CENSUS_N {
            return Err(usage!("census over C_{}^{} is unbounded for desk use (n <= {MAX_CENSUS_N})", self.p, self.n));
        }
        if self.max_frob > MAX_CENSUS_FROB {
            return Err(usage!("max_frob {} exceeds {MAX_CENSUS_FROB}", self.max_frob));
        }
        if self.max_frob < self.n {
            return Err(usage!("max_frob {} must be at least n = {}", self.max_frob, self.n));
        }
        if self.p.checked_pow(self.n).is_none_or(|q| q > 64) {
            return Err(usage!("group C_{}^{} is too large for a census", self.p, self.n));
        }
        for b in &self.backends {
            b.action.check(&b.field)?;
            if b.field.size().is_some_and(|q| q > 1 << 16) {
                return Err(usage!("{} is too large for a census", b.field));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub field: Field,
    pub action: FieldAut,
    /// Number of clarified `C_{p^n}` specs.
    pub count: usize,
    pub clarified: Vec<TambaraSpec>,
    pub field_like_count: usize,
    /// All field-like `C_{p^n}` specs, separated ones included.
    pub field_like: Vec<TambaraSpec>,
    /// `is_fixed_point_iso` of each entry of `field_like`.
    pub fixed_point_iso: Vec<bool>,
    pub cross_checks: Vec<CrossCheck>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub census_version: u32,
    pub completeness: String,
    pub p: u64,
    pub n: u32,
    pub max_frob: u32,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn empty(p: u64, n: u32, max_frob: u32) -> Self {
        CensusReport {
            census_version: CENSUS_VERSION,
            completeness: "catalog-relative".into(),
            p,
            n,
            max_frob,
            rows: vec![],
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.failures.is_empty() && r.cross_checks.iter().all(|c| c.passed))
    }
}

/// Subgroups of the cyclic group generated by `a`.
fn cyclic_subgroups(field: &Field, a: &FieldAut) -> Result<Vec<AutGroup>> {
    let d = a.order(field)?;
    let mut out = Vec::new();
    for e in (1..=d).filter(|e| d % e == 0) {
        let g = AutGroup::generated(&[a.power(e, field)], field)
            .ok_or_else(|| usage!("group generated by {a} is too large"))?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Canonical catalog descriptors for a backend.
pub fn catalog(field: &Field, action: &FieldAut, max_frob: u32) -> Result<Vec<SubfieldDescriptor>> {
    let groups = match field {
        Field::Gf { .. } => cyclic_subgroups(field, &FieldAut::frobenius(1))?,
        Field::RatFunc { .. } => cyclic_subgroups(field, action)?,
    };
    let depths = if field.is_perfect() { 0 } else { max_frob };
    let mut out = BTreeSet::new();
    for g in &groups {
        for m in 0..=depths {
            out.insert(NormalForm { frob: m, group: g.clone() }.to_descriptor(field));
        }
    }
    Ok(out.into_iter().collect())
}

/// Descending chains `D_0 = base ⊇ D_1 ⊇ ... ⊇ D_len` from the catalog.
fn descending_chains(field: &Field, base: &SubfieldDescriptor, cat: &[SubfieldDescriptor], len: u32) -> Vec<Vec<SubfieldDescriptor>> {
    let mut chains = vec![vec![base.clone()]];
    for _ in 0..len {
        let mut next = Vec::new();
        for c in &chains {
            let last = c.last().unwrap();
            for d in cat {
                if subfield_compare(d, last, field).a_in_b() {
                    let mut e = c.clone();
                    e.push(d.clone());
                    next.push(e);
                }
            }
        }
        chains = next;
    }
    chains
}

fn dedup_sorted(specs: Vec<TambaraSpec>) -> Vec<TambaraSpec> {
    let mut seen = BTreeMap::new();
    for k in specs {
        seen.entry(k.canonical()).or_insert(k.canonical());
    }
    seen.into_values().collect()
}

/// Clarified `C_{p^s}`-specs on `base ⊆ field` with the given action,
/// decided by the symbolic tier.
pub fn clarified_specs(
    p: u64,
    s: u32,
    field: &Field,
    action: &FieldAut,
    base: &SubfieldDescriptor,
    max_frob: u32,
) -> Result<Vec<TambaraSpec>> {
    specs_over_catalog(p, s, field, action, base, &catalog(field, action, max_frob)?)
}

fn specs_over_catalog(
    p: u64,
    s: u32,
    field: &Field,
    action: &FieldAut,
    base: &SubfieldDescriptor,
    cat: &[SubfieldDescriptor],
) -> Result<Vec<TambaraSpec>> {
    let candidates: Vec<TambaraSpec> = descending_chains(field, base, cat, s)
        .into_iter()
        .map(|chain| TambaraSpec::new(p, s, s, field.clone(), action.clone(), chain))
        .collect::<Result<_>>()?;
    let valid: Vec<TambaraSpec> = candidates.into_par_iter().filter(symbolically_valid).collect();
    Ok(dedup_sorted(valid))
}

/// The same set generated by gluing compatible top and bottom pieces.
fn clarified_by_gluing(p: u64, s: u32, field: &Field, action: &FieldAut, max_frob: u32) -> Result<Vec<TambaraSpec>> {
    let restricted = action.power(p.pow(s - 1), field);
    let cat = catalog(field, action, max_frob)?;
    let bottoms = specs_over_catalog(p, 1, field, &restricted, &SubfieldDescriptor::Full, &cat)?;
    let mut out = Vec::new();
    for bottom in bottoms {
        let base = bottom.level_field(1);
        for top in specs_over_catalog(p, s - 1, field, action, &base, &cat)? {
            let g = GlueData {
                top,
                bottom: bottom.clone(),
                field: field.clone(),
                action: action.clone(),
            };
            out.push(glue(&g)?);
        }
    }
    Ok(dedup_sorted(out))
}

fn names(specs: &[TambaraSpec]) -> Value {
    json!(specs.iter().map(|k| format!("{:?}", k.chain)).collect::<Vec<_>>())
}

fn census_row(cfg: &CensusConfig, b: &Backend) -> Result<CensusRow> {
    let (p, n, field, action) = (cfg.p, cfg.n, &b.field, &b.action);
    let policy = SamplingPolicy::with_seed(cfg.seed);
    let recheck = SamplingPolicy::with_seed(cfg.seed.wrapping_add(1));
    let char_is_p = field.characteristic() == p;
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    let order = action.order(field)?;
    let divides = |s: u32| p.pow(s) % order == 0;
    let clarified = if divides(n) {
        clarified_specs(p, n, field, action, &SubfieldDescriptor::Full, cfg.max_frob)?
    } else {
        vec![]
    };

    // symbolic decisions against the sampled tier
    let rejected: Vec<String> = clarified
        .par_iter()
        .map(|k| (k, validate(k, &policy)))
        .filter_map(|(k, r)| match r {
            Ok(r) if r.is_field_like() => None,
            Ok(r) => Some(format!("{:?}: {}", k.chain, r.failures[0].message)),
            Err(e) => Some(format!("{:?}: {e}", k.chain)),
        })
        .collect();
    failures.extend(rejected);

    if n == 1 && divides(1) {
        let trivial = action.is_identity(field);
        let expected: BTreeSet<SubfieldDescriptor> = if trivial && char_is_p {
            catalog(field, action, cfg.max_frob)?
                .into_iter()
                .filter(|d| subfield_compare(&SubfieldDescriptor::frob_image(1), d, field).a_in_b())
                .collect()
        } else {
            BTreeSet::from([SubfieldDescriptor::fixed([action.clone()]).canonical(field)])
        };
        let found: BTreeSet<SubfieldDescriptor> = clarified.iter().map(|k| k.level_field(1)).collect();
        checks.push(CrossCheck {
            name: "cp_classification".into(),
            passed: found == expected,
            detail: json!({ "expected": expected, "found": found }),
        });
    }

    if n >= 2 && divides(n) {
        let glued = clarified_by_gluing(p, n, field, action, cfg.max_frob)?;
        checks.push(CrossCheck {
            name: "glue_route".into(),
            passed: glued == clarified,
            detail: json!({ "direct": clarified.len(), "glued": glued.len() }),
        });
    }

    let mut field_like = Vec::new();
    for s in (0..=n).filter(|&s| divides(s)) {
        let ells = if s == n {
            clarified.clone()
        } else {
            clarified_specs(p, s, field, action, &SubfieldDescriptor::Full, cfg.max_frob)?
        };
        for ell in ells {
            field_like.push(coinduce(&ell, n)?);
        }
    }
    let field_like = dedup_sorted(field_like);

    let round_trips: Vec<String> = field_like
        .par_iter()
        .filter_map(|k| match decompose(k, true, &policy) {
            Ok(c) if c.verified() && c.s == k.s && c.ell.same_functor(&k.clarified_part()) => None,
            Ok(c) => Some(format!("{:?}: certificate {:?}", k.chain, c.evidence)),
            Err(e) => Some(format!("{:?}: {e}", k.chain)),
        })
        .collect();
    checks.push(CrossCheck {
        name: "decompose_round_trip".into(),
        passed: round_trips.is_empty(),
        detail: json!({ "specs": field_like.len(), "failures": round_trips }),
    });

    let revalid: Vec<String> = field_like
        .par_iter()
        .filter(|k| !validate(k, &recheck).is_ok_and(|r| r.is_field_like()))
        .map(|k| format!("{:?}", k.chain))
        .collect();
    checks.push(CrossCheck {
        name: "revalidation".into(),
        passed: revalid.is_empty(),
        detail: json!({ "failures": revalid }),
    });

    let iso: Vec<bool> = field_like.iter().map(is_fixed_point_iso).collect::<Result<_>>()?;
    if !char_is_p {
        checks.push(CrossCheck {
            name: "char_not_p_fixed_point".into(),
            passed: iso.iter().all(|&b| b),
            detail: json!({ "non_fixed_point": names(&field_like.iter().zip(&iso).filter(|(_, b)| !**b).map(|(k, _)| k.clone()).collect::<Vec<_>>()) }),
        });
    } else if field.is_perfect() {
        let bad: Vec<TambaraSpec> = clarified
            .iter()
            .filter(|k| !is_fixed_point_iso(k).unwrap_or(false))
            .cloned()
            .collect();
        checks.push(CrossCheck {
            name: "perfect_fixed_point".into(),
            passed: bad.is_empty(),
            detail: json!({ "non_fixed_point": names(&bad) }),
        });
    }

    Ok(CensusRow {
        field: field.clone(),
        action: action.normalize(field),
        count: clarified.len(),
        clarified,
        field_like_count: field_like.len(),
        field_like,
        fixed_point_iso: iso,
        cross_checks: checks,
        failures,
    })
}

/// Runs the census for every backend in `cfg`.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport> {
    cfg.check()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.threads > 0 {
        builder = builder.num_threads(cfg.threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    let rows = pool.install(|| cfg.backends.iter().map(|b| census_row(cfg, b)).collect::<Result<Vec<_>>>())?;
    let mut report = CensusReport::empty(cfg.p, cfg.n, cfg.max_frob);
    report.rows = rows;
    Ok(report)
}

/// Clarified `C_p` census; the report's count is the number of valid tops.
pub fn enumerate_clarified_cp(cfg: &CensusConfig) -> Result<CensusReport> {
    if cfg.n != 1 {
        return Err(usage!("enumerate_clarified_cp needs n = 1, got {}", cfg.n));
    }
    run_census(cfg)
}

pub fn enumerate_field_like(cfg: &CensusConfig) -> Result<CensusReport> {
    run_census(cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(usage!("format must be json or markdown, got {s:?}")),
        }
    }
}

pub fn emit_report(r: &CensusReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => markdown(r),
    }
}

fn markdown(r: &CensusReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Census: C_{}^{} (max_frob {})\n", r.p, r.n, r.max_frob);
    let _ = writeln!(s, "Counts are {}.\n", r.completeness);
    let _ = writeln!(s, "| field | action | clarified | field-like | fixed-point |");
    let _ = writeln!(s, "|---|---|---|---|---|");
    for row in &r.rows {
        let fp = row.fixed_point_iso.iter().filter(|&&b| b).count();
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            row.field.name(),
            row.action,
            row.count,
            row.field_like_count,
            fp
        );
    }
    let _ = writeln!(s, "\n## Cross-checks\n");
    let _ = writeln!(s, "| field | action | check | result |");
    let _ = writeln!(s, "|---|---|---|---|");
    for row in &r.rows {
        for c in &row.cross_checks {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                row.field.name(),
                row.action,
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
    }
    let failures: Vec<&String> = r.rows.iter().flat_map(|row| &row.failures).collect();
    if !failures.is_empty() {
        let _ = writeln!(s, "\n## Failures\n");
        for f in failures {
            let _ = writeln!(s, "- {f}");
        }
    }
    s
}
