//! Decomposition into coinduced clarified specs, comparison with the
//! fixed-point functor, and checks of the classification statements on
//! concrete specs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::aut::FieldAut;
use crate::construct::coinduce;
use crate::error::{usage, Error, Result};
use crate::field::{Field, FieldElem};
use crate::gring::GRingElem;
use crate::spec::TambaraSpec;
use crate::subfield::{orbit_fold, subfield_compare, AutGroup, Relation, SubfieldDescriptor};
use crate::validate::{validate, SamplingPolicy};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub check: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub s: u32,
    pub ell: TambaraSpec,
    pub evidence: Vec<Evidence>,
}

impl DecompositionCertificate {
    pub fn verified(&self) -> bool {
        self.evidence.iter().all(|e| e.passed)
    }
}

/// Size of the orbit of the first standard idempotent.
fn idempotent_orbit(k: &TambaraSpec) -> usize {
    let g = k.gring();
    let e0 = g.standard_idempotents().swap_remove(0);
    (0..g.group_order() as i64)
        .map(|e| g.act(e, &e0))
        .collect::<BTreeSet<GRingElem>>()
        .len()
}

/// Writes `k` as the coinduction of a clarified spec.
pub fn decompose(k: &TambaraSpec, require_field_like: bool, policy: &SamplingPolicy) -> Result<DecompositionCertificate> {
    if require_field_like {
        let report = validate(k, policy)?;
        if !report.is_field_like() {
            return Err(Error::NotFieldLike(
                report
                    .failures
                    .first()
                    .map(|f| format!("{}: {}", f.check, f.message))
                    .unwrap_or_default(),
            ));
        }
    }
    let orbit = idempotent_orbit(k);
    let mut s = k.n;
    let mut size = 1usize;
    while size < orbit {
        size *= k.p as usize;
        s = s.checked_sub(1).ok_or_else(|| Error::Consistency("idempotent orbit exceeds the group".into()))?;
    }
    if size != orbit || s != k.s {
        return Err(Error::Consistency(format!(
            "idempotent orbit has size {orbit}, but the stored stabilizer exponent is {}",
            k.s
        )));
    }
    let ell = k.clarified_part();
    let mut evidence = vec![Evidence {
        check: "idempotent_orbit".into(),
        passed: true,
        detail: json!({ "orbit_size": orbit, "s": s }),
    }];

    let back = coinduce(&ell, k.n)?;
    let mismatched: Vec<u32> = (0..=k.n)
        .filter(|&i| subfield_compare(&back.level_field(i), &k.level_field(i), &k.field) != Relation::Equal)
        .collect();
    evidence.push(Evidence {
        check: "levelwise_equal".into(),
        passed: mismatched.is_empty() && back.same_functor(k),
        detail: json!({ "mismatched_levels": mismatched }),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut trips = 0usize;
    let mut bad = Vec::new();
    for i in 0..=k.n {
        let li = i.min(s);
        for _ in 0..8 {
            let v = k.sample_level(i, &mut rng, policy.max_degree);
            let x = v.coords[0].clone();
            let single = ell.gring().constant(&x);
            let rebuilt = k.assemble(i, &vec![x.clone(); k.free_coords(i)]);
            trips += 1;
            if !ell.level_contains(li, &single) || !k.level_contains(i, &rebuilt) || rebuilt.coords[0] != x {
                bad.push(json!({ "level": i, "value": v }));
            }
        }
    }
    evidence.push(Evidence {
        check: "sampled_round_trip".into(),
        passed: bad.is_empty(),
        detail: json!({ "samples": trips, "failures": bad }),
    });
    Ok(DecompositionCertificate { s, ell, evidence })
}

/// Whether every level is the full fixed subring of the bottom level.
pub fn is_fixed_point_iso(k: &TambaraSpec) -> Result<bool> {
    for i in 0..=k.s {
        let full = SubfieldDescriptor::intersect([
            k.chain[0].clone(),
            SubfieldDescriptor::fixed([k.stabilizer_aut(i)]),
        ]);
        match subfield_compare(&k.level_field(i), &full, &k.field) {
            Relation::Equal => {}
            Relation::Unknown => {
                return Err(Error::Precondition(format!("cannot decide level {i} of {k:?}")))
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    CharNotP,
    PerfectFixedPoints,
    NontrivialCpAction,
    IntermediateFields,
    CoinducedForm,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::CharNotP,
        Theorem::PerfectFixedPoints,
        Theorem::NontrivialCpAction,
        Theorem::IntermediateFields,
        Theorem::CoinducedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::CharNotP => "char_not_p",
            Theorem::PerfectFixedPoints => "perfect_fixed_points",
            Theorem::NontrivialCpAction => "nontrivial_cp_action",
            Theorem::IntermediateFields => "intermediate_fields",
            Theorem::CoinducedForm => "coinduced_form",
        }
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| usage!("unknown theorem {s:?}"))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub theorem: String,
    pub hypotheses_met: bool,
    pub conclusion_holds: bool,
    pub witnesses: Vec<Value>,
}

/// Checks one classification statement on `k`. Unmet hypotheses are
/// reported, not raised.
pub fn check_theorem(name: Theorem, k: &TambaraSpec, policy: &SamplingPolicy) -> Result<CheckResult> {
    let result = |hyp: bool, holds: bool, witnesses: Vec<Value>| CheckResult {
        theorem: name.name().to_string(),
        hypotheses_met: hyp,
        conclusion_holds: holds,
        witnesses,
    };
    let report = validate(k, policy)?;
    if !report.is_field_like() {
        let w = report.failures.iter().map(|f| json!({ "check": f.check, "message": f.message })).collect();
        return Ok(result(false, false, w));
    }
    let field = &k.field;
    let char_is_p = k.characteristic() == k.p;
    Ok(match name {
        Theorem::CharNotP => {
            if char_is_p {
                return Ok(result(false, false, vec![json!({ "characteristic": k.characteristic() })]));
            }
            result(true, is_fixed_point_iso(k)?, vec![])
        }
        Theorem::PerfectFixedPoints => {
            if !k.is_clarified() || !char_is_p {
                return Ok(result(false, false, vec![json!({ "clarified": k.is_clarified(), "char_is_p": char_is_p })]));
            }
            if !field.is_perfect() {
                // t, or any generator of the fixed field, has no p-th root
                let t = field.generator();
                return Ok(result(false, false, vec![json!({ "no_pth_root": t })]));
            }
            result(true, is_fixed_point_iso(k)?, vec![])
        }
        Theorem::NontrivialCpAction => {
            if !k.is_clarified() || !char_is_p || k.n == 0 {
                return Ok(result(false, false, vec![]));
            }
            let order = k.base_action_order().unwrap_or(1);
            if order == 1 {
                return Ok(result(false, false, vec![json!({ "action_order": 1 })]));
            }
            let r = (1..=k.n).find(|&r| k.p.pow(r) == order).unwrap_or(k.n);
            let kernel = k.n - r;
            let lk = k.level_field(kernel);
            let mut bad = Vec::new();
            for i in kernel..=k.n {
                let want = SubfieldDescriptor::intersect([lk.clone(), SubfieldDescriptor::fixed([k.stabilizer_aut(i)])]);
                if subfield_compare(&k.level_field(i), &want, field) != Relation::Equal {
                    bad.push(json!({ "level": i, "found": k.level_field(i), "expected": want.canonical(field) }));
                }
            }
            let holds = bad.is_empty() && (k.n > 1 || is_fixed_point_iso(k)?);
            result(true, holds, bad)
        }
        Theorem::IntermediateFields => {
            if !k.is_clarified() || !char_is_p {
                return Ok(result(false, false, vec![]));
            }
            let lower = k.lower_bound_field()?;
            let mut bad = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
            for i in 0..=k.n {
                let level = k.level_field(i);
                if !subfield_compare(&lower, &level, field).a_in_b() {
                    bad.push(json!({ "level": i, "missing": lower }));
                }
                for x in lower.boundary_elements(field) {
                    if !k.level_contains(i, &k.gring().constant(&x)) {
                        bad.push(json!({ "level": i, "element": x }));
                    }
                }
                for _ in 0..16 {
                    let u = k.sample_level(i, &mut rng, policy.max_degree);
                    let v = k.sample_level(i, &mut rng, policy.max_degree);
                    let x = &u.coords[0];
                    let prod = k.gring().constant(&field.mul(x, &v.coords[0]));
                    let inv_ok = field
                        .inv(x)
                        .map(|y| k.level_contains(i, &k.gring().constant(&y)))
                        .unwrap_or(true);
                    if !k.level_contains(i, &prod) || !inv_ok {
                        bad.push(json!({ "level": i, "element": x }));
                    }
                }
            }
            result(true, bad.is_empty(), bad)
        }
        Theorem::CoinducedForm => match decompose(k, false, policy) {
            Ok(cert) => {
                let ok = cert.verified();
                result(true, ok, vec![serde_json::to_value(&cert)?])
            }
            Err(e) => result(true, false, vec![json!({ "error": e.to_string() })]),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceMode {
    Exhaustive,
    Sampled,
}

impl FromStr for TraceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(TraceMode::Exhaustive),
            "sampled" => Ok(TraceMode::Sampled),
            _ => Err(usage!("trace mode must be exhaustive or sampled, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TraceOutcome {
    /// `certificate` holds `z` with `Tr(z) != 0`; since the trace is linear
    /// over the fixed field, `Tr(y z / Tr(z)) = y` for every fixed `y`.
    Surjective { certificate: Value },
    NotSurjective { witness: Value },
    Inconclusive,
}

/// `Tr(x) = sum of a^e(x)` over the cyclic group generated by `a`.
pub fn trace(field: &Field, a: &FieldAut, x: &FieldElem) -> Result<FieldElem> {
    let d = a.order(field)?;
    let orbit: Vec<FieldAut> = (0..d).map(|e| a.power(e, field)).collect();
    Ok(orbit_fold(field, &orbit, x, false))
}

/// Non-constant coefficients of `prod (X - h(t))` over the group: they
/// generate the fixed field of `F_p(t)`.
fn fixed_field_generators(field: &Field, a: &FieldAut) -> Result<Vec<FieldElem>> {
    let group = AutGroup::generated(std::slice::from_ref(a), field)
        .ok_or_else(|| usage!("group generated by {a} is too large"))?;
    let t = field.generator();
    let mut coeffs = vec![field.one()];
    for h in group.elements() {
        let root = h.apply_unchecked(field, &t);
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(c, &root));
        }
        coeffs = next;
    }
    let constant = SubfieldDescriptor::fixed([FieldAut::frobenius(1)]);
    Ok(coeffs
        .into_iter()
        .filter(|c| match c {
            FieldElem::Rat(q) => !(q.num().degree().unwrap_or(0) == 0 && q.den().degree() == Some(0)),
            FieldElem::Gf(_) => !constant.contains(field, c),
        })
        .collect())
}

/// Decides (or certifies) surjectivity of the trace onto the fixed field.
pub fn trace_image_check(field: &Field, a: &FieldAut, mode: TraceMode) -> Result<TraceOutcome> {
    a.check(field)?;
    if a.is_identity(field) {
        return Err(usage!("the trace of the identity is multiplication by 1; pick a nontrivial automorphism"));
    }
    match mode {
        TraceMode::Exhaustive => {
            if !field.size().is_some_and(|q| q <= 81) {
                return Err(usage!("exhaustive trace check needs a finite field with at most 81 elements"));
            }
            let elems = field.elements()?;
            let image: BTreeSet<FieldElem> = elems.iter().map(|x| trace(field, a, x)).collect::<Result<_>>()?;
            let missing = elems
                .iter()
                .find(|y| a.apply_unchecked(field, y) == **y && !image.contains(*y));
            Ok(match missing {
                None => TraceOutcome::Surjective {
                    certificate: json!({ "image_size": image.len() }),
                },
                Some(y) => TraceOutcome::NotSurjective { witness: json!(y) },
            })
        }
        TraceMode::Sampled => {
            let t = field.generator();
            let mut cands = vec![field.one(), t.clone()];
            for e in 2..8u64 {
                cands.push(field.pow_u(&t, e));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
            cands.extend((0..64).map(|_| field.random(&mut rng, 3)));
            for z in cands {
                let tz = trace(field, a, &z)?;
                if !field.is_zero(&tz) {
                    let generators = match field {
                        Field::RatFunc { .. } => fixed_field_generators(field, a)?,
                        Field::Gf { .. } => vec![],
                    };
                    return Ok(TraceOutcome::Surjective {
                        certificate: json!({ "z": z, "trace": tz, "fixed_field_generators": generators }),
                    });
                }
            }
            Ok(TraceOutcome::Inconclusive)
        }
    }
}
