//! Validation of [`TambaraSpec`]s.
//!
//! Two tiers run on every spec. The symbolic tier decides closure exactly
//! from the normal forms of the level fields `L_i = D_i ∩ Fix(a^(p^(s-i)))`:
//! going from level `j` to `j + 1` the relevant automorphism is
//! `b = a^(p^(s-j-1))`, and
//!
//! * if `b` moves `L_j`, the trace onto `L_j^b` is surjective, so closure
//!   forces `L_{j+1} = L_j^b`;
//! * if `b` fixes `L_j`, the transfer is multiplication by `p`: in
//!   characteristic `p` it vanishes and the norm is `φ`, forcing
//!   `φ(L_j) ⊆ L_{j+1}`; otherwise it is invertible, forcing `L_{j+1} = L_j`.
//!
//! The sampled tier applies transfers, norms and Weyl translates to concrete
//! level elements (all of them for small finite fields) and can only refute.
//! When the symbolic tier fails, a concrete witness is searched for and, if
//! needed, built directly (`x = y z / Tr(z)` for transfers).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::aut::FieldAut;
use crate::error::{usage, Error, Result};
use crate::field::{Field, FieldElem};
use crate::gring::GRingElem;
use crate::spec::{TambaraElem, TambaraSpec};
use crate::subfield::{orbit_fold, subfield_compare, NormalForm, Relation, SubfieldDescriptor};

/// How many concrete elements the sampled tier probes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingPolicy {
    pub seed: u64,
    /// Pseudo-random elements per level (divided among coordinates).
    pub random_samples: usize,
    /// Finite fields up to this size are enumerated.
    pub exhaustive_limit: u64,
    /// Level elements are enumerated when there are at most this many.
    pub tuple_limit: usize,
    /// Degree bound for random rational functions.
    pub max_degree: usize,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            seed: 0x7a3b_a1a5,
            random_samples: 256,
            exhaustive_limit: 81,
            tuple_limit: 4096,
            max_degree: 3,
        }
    }
}

impl SamplingPolicy {
    pub fn with_seed(seed: u64) -> Self {
        SamplingPolicy {
            seed,
            ..SamplingPolicy::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ValidFieldLike,
    ValidNotFieldLike,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub witness: Value,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub verdict: Verdict,
    pub checks_run: Vec<String>,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_field_like(&self) -> bool {
        self.verdict == Verdict::ValidFieldLike
    }

    pub fn failed(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

pub const CHECKS: [&str; 9] = [
    "base_stable",
    "wrap_order",
    "chain_descending",
    "weyl_stable",
    "transfer_closure",
    "norm_closure",
    "invariant_ideal_free",
    "weyl_closure",
    "unknown_comparison",
];

/// Collects at most one failure per (check, source level, target level).
struct Failures(BTreeMap<(String, u32, u32), Failure>);

impl Failures {
    fn push(&mut self, check: &str, from: u32, to: u32, witness: Value, message: String) {
        self.0
            .entry((check.to_string(), from, to))
            .or_insert(Failure {
                check: check.to_string(),
                witness,
                message,
            });
    }

    fn has(&self, check: &str, from: u32, to: u32) -> bool {
        self.0.contains_key(&(check.to_string(), from, to))
    }
}

fn elem_json(x: &TambaraElem) -> Value {
    serde_json::to_value(x).expect("element serializes")
}

pub fn validate(spec: &TambaraSpec, policy: &SamplingPolicy) -> Result<ValidationReport> {
    if policy.random_samples == 0 && policy.exhaustive_limit == 0 {
        return Err(usage!("sampling policy draws no elements"));
    }
    let mut out = Failures(BTreeMap::new());
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    structural(spec, &mut out);
    symbolic(spec, policy, &mut rng, &mut out);

    if !spec.gring().invariant_ideal_free() {
        out.push(
            "invariant_ideal_free",
            0,
            0,
            Value::Null,
            "coordinates are not permuted transitively".into(),
        );
    }

    let levels: Vec<Vec<GRingElem>> = (0..=spec.n)
        .map(|j| level_elements(spec, j, policy, &mut rng))
        .collect();
    for (j, elems) in levels.iter().enumerate() {
        let j = j as u32;
        for v in elems {
            let x = TambaraElem { level: j, value: v.clone() };
            for i in j + 1..=spec.n {
                probe(&mut out, "transfer_closure", j, i, &x, spec.tr(j, i, &x));
                probe(&mut out, "norm_closure", j, i, &x, spec.norm(j, i, &x));
            }
            if j < spec.n {
                probe(&mut out, "weyl_closure", j, j, &x, spec.weyl_act(j, 1, &x));
            }
        }
    }

    let mut failures: Vec<Failure> = out.0.into_values().collect();
    failures.sort_by(|a, b| (&a.check, a.witness.to_string()).cmp(&(&b.check, b.witness.to_string())));
    let verdict = if failures.is_empty() {
        Verdict::ValidFieldLike
    } else if failures.iter().all(|f| f.check == "invariant_ideal_free") {
        Verdict::ValidNotFieldLike
    } else {
        Verdict::Invalid
    };
    Ok(ValidationReport {
        verdict,
        checks_run: CHECKS.iter().map(|c| c.to_string()).collect(),
        failures,
    })
}

/// The structural and symbolic tiers alone: an exact decision for catalog
/// specs, without witness search beyond boundary elements.
pub fn symbolically_valid(spec: &TambaraSpec) -> bool {
    let policy = SamplingPolicy {
        random_samples: 0,
        exhaustive_limit: 0,
        ..SamplingPolicy::default()
    };
    let mut out = Failures(BTreeMap::new());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    structural(spec, &mut out);
    symbolic(spec, &policy, &mut rng, &mut out);
    out.0.is_empty() && spec.gring().invariant_ideal_free()
}

fn probe(out: &mut Failures, check: &str, j: u32, i: u32, x: &TambaraElem, r: Result<TambaraElem>) {
    match r {
        Ok(_) => {}
        Err(Error::Closure { op, level, witness }) => {
            if !out.has(check, j, i) {
                out.push(
                    check,
                    j,
                    i,
                    elem_json(x),
                    format!("{op} from level {j} lands outside level {level}: {witness}"),
                );
            }
        }
        Err(e) => out.push(check, j, i, elem_json(x), format!("probe error: {e}")),
    }
}

fn structural(spec: &TambaraSpec, out: &mut Failures) {
    let field = &spec.field;
    match spec.chain[0].stable_under(&spec.action, field) {
        Some(true) => {}
        Some(false) => out.push(
            "base_stable",
            0,
            0,
            json!({ "a": spec.chain[0], "b": spec.action }),
            "bottom constraint is not stable under the action".into(),
        ),
        None => out.push(
            "unknown_comparison",
            0,
            0,
            json!({ "a": spec.chain[0] }),
            "bottom constraint has no normal form".into(),
        ),
    }
    match spec.base_action_order() {
        Some(e) if spec.p.pow(spec.s).is_multiple_of(e) => {}
        Some(e) => out.push(
            "wrap_order",
            0,
            0,
            json!({ "a": spec.chain[0], "b": spec.action }),
            format!("action has order {e} on the bottom, not dividing {}^{}", spec.p, spec.s),
        ),
        None => {}
    }
    for i in 1..=spec.s as usize {
        let rel = subfield_compare(&spec.chain[i], &spec.chain[i - 1], field);
        let check = match rel {
            Relation::Unknown => "unknown_comparison",
            r if r.a_in_b() => continue,
            _ => "chain_descending",
        };
        out.push(
            check,
            i as u32 - 1,
            i as u32,
            json!({ "a": spec.chain[i], "b": spec.chain[i - 1], "relation": rel }),
            format!("D_{i} is not contained in D_{}", i - 1),
        );
    }
}

/// Candidate field elements of a level field: boundary elements then samples.
fn candidates(field: &Field, nf: &NormalForm, policy: &SamplingPolicy, rng: &mut ChaCha8Rng) -> Vec<FieldElem> {
    let mut out = nf.boundary_elements(field);
    if field.size().is_some_and(|q| q <= policy.exhaustive_limit) {
        out.extend(field.elements().expect("small finite field").into_iter().filter(|x| {
            let d = nf.to_descriptor(field);
            d.contains(field, x)
        }));
    }
    out.extend((0..policy.random_samples.min(64)).map(|_| nf.sample(field, rng, policy.max_degree)));
    out
}

fn constant_elem(spec: &TambaraSpec, level: u32, x: &FieldElem) -> TambaraElem {
    TambaraElem {
        level,
        value: spec.gring().constant(x),
    }
}

fn symbolic(spec: &TambaraSpec, policy: &SamplingPolicy, rng: &mut ChaCha8Rng, out: &mut Failures) {
    let field = &spec.field;
    let char_is_p = spec.characteristic() == spec.p;
    let nfs: Vec<Option<NormalForm>> = (0..=spec.s).map(|i| spec.level_normal_form(i)).collect();

    for (i, nf) in nfs.iter().enumerate() {
        let i = i as u32;
        let Some(nf) = nf else {
            out.push(
                "unknown_comparison",
                i,
                i,
                json!({ "a": spec.level_field(i) }),
                format!("level {i} has no normal form"),
            );
            continue;
        };
        if i < spec.n && !nf.group.normalized_by(&spec.action, field) {
            let witness = candidates(field, nf, policy, rng)
                .into_iter()
                .map(|x| constant_elem(spec, i, &x))
                .find(|x| spec.weyl_act(i, 1, x).is_err());
            out.push(
                "weyl_stable",
                i,
                i,
                witness.as_ref().map(elem_json).unwrap_or(Value::Null),
                format!("level {i} is not stable under the Weyl action"),
            );
        }
    }

    for j in 0..spec.s {
        let (Some(lj), Some(lk)) = (&nfs[j as usize], &nfs[j as usize + 1]) else {
            continue;
        };
        let b = spec.action.power(spec.p.pow(spec.s - j - 1), field);
        let b_moves = !lj.group.contains_aut(&b, field);
        if b_moves || !char_is_p {
            let Some(required) = (if b_moves { lj.with_fixed(&b, field) } else { Some(lj.clone()) }) else {
                continue;
            };
            if *lk == required {
                continue;
            }
            let witness = transfer_witness(spec, j, lj, &required, &b, b_moves, policy, rng);
            out.push(
                "transfer_closure",
                j,
                j + 1,
                witness.as_ref().map(elem_json).unwrap_or(Value::Null),
                format!(
                    "level {} must be {:?} to contain all transfers from level {j}, found {:?}",
                    j + 1,
                    required.to_descriptor(field),
                    lk.to_descriptor(field)
                ),
            );
        } else {
            let image = lj.frobenius_image(1, field);
            if image.within(lk) {
                continue;
            }
            let witness = candidates(field, lj, policy, rng)
                .into_iter()
                .map(|x| constant_elem(spec, j, &x))
                .find(|x| spec.norm(j, j + 1, x).is_err());
            out.push(
                "norm_closure",
                j,
                j + 1,
                witness.as_ref().map(elem_json).unwrap_or(Value::Null),
                format!(
                    "level {} must contain the Frobenius image {:?} of level {j}",
                    j + 1,
                    image.to_descriptor(field)
                ),
            );
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn transfer_witness(
    spec: &TambaraSpec,
    j: u32,
    lj: &NormalForm,
    required: &NormalForm,
    b: &FieldAut,
    b_moves: bool,
    policy: &SamplingPolicy,
    rng: &mut ChaCha8Rng,
) -> Option<TambaraElem> {
    let field = &spec.field;
    let fails = |x: &TambaraElem| matches!(spec.tr(j, j + 1, x), Err(Error::Closure { .. }));
    let lj_cands = candidates(field, lj, policy, rng);
    if let Some(x) = lj_cands.iter().map(|x| constant_elem(spec, j, x)).find(|x| fails(x)) {
        return Some(x);
    }
    // y in the required field but outside level j + 1, spread by a trace-one element
    let target = spec.level_field(j + 1);
    let ys: Vec<FieldElem> = candidates(field, required, policy, rng)
        .into_iter()
        .filter(|y| !target.contains(field, y))
        .collect();
    let y = ys.first()?;
    let x = if b_moves {
        let orbit: Vec<FieldAut> = (0..spec.p).map(|c| b.power(c, field)).collect();
        let z = lj_cands
            .iter()
            .find(|z| !field.is_zero(&orbit_fold(field, &orbit, z, false)))?;
        let tz = orbit_fold(field, &orbit, z, false);
        field.div(&field.mul(y, z), &tz).ok()?
    } else {
        field.div(y, &field.from_int(spec.p)).ok()?
    };
    Some(constant_elem(spec, j, &x)).filter(|x| fails(x))
}

/// Concrete level-`j` elements for the sampled tier.
pub fn level_elements(spec: &TambaraSpec, j: u32, policy: &SamplingPolicy, rng: &mut ChaCha8Rng) -> Vec<GRingElem> {
    let field = &spec.field;
    let Some(nf) = spec.level_normal_form(j) else {
        return vec![spec.gring().one()];
    };
    let free = spec.free_coords(j);
    let desc: SubfieldDescriptor = nf.to_descriptor(field);
    if field.size().is_some_and(|q| q <= policy.exhaustive_limit) {
        let pool: Vec<FieldElem> = field
            .elements()
            .expect("small field")
            .into_iter()
            .filter(|x| desc.contains(field, x))
            .collect();
        let total = (pool.len() as u128).checked_pow(free as u32);
        if total.is_some_and(|t| t <= policy.tuple_limit as u128) {
            let total = total.unwrap() as usize;
            return (0..total)
                .map(|mut idx| {
                    let coords: Vec<FieldElem> = (0..free)
                        .map(|_| {
                            let c = pool[idx % pool.len()].clone();
                            idx /= pool.len();
                            c
                        })
                        .collect();
                    spec.assemble(j, &coords)
                })
                .collect();
        }
        let count = (policy.random_samples / free).max(32);
        return (0..count)
            .map(|_| {
                let coords: Vec<FieldElem> = (0..free).map(|_| pool.choose(rng).unwrap().clone()).collect();
                spec.assemble(j, &coords)
            })
            .collect();
    }
    let mut out: Vec<GRingElem> = nf
        .boundary_elements(field)
        .iter()
        .map(|x| spec.assemble(j, &vec![x.clone(); free]))
        .collect();
    let count = (policy.random_samples / free).max(32);
    out.extend((0..count).map(|_| spec.sample_level(j, rng, policy.max_degree)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use SubfieldDescriptor as D;

    fn run(spec: &TambaraSpec) -> ValidationReport {
        validate(spec, &SamplingPolicy::default()).unwrap()
    }

    #[test]
    fn frobenius_example_is_field_like() {
        let f = Field::ratfunc(2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap();
        let r = run(&k);
        assert_eq!(r.verdict, Verdict::ValidFieldLike, "{r:?}");
    }

    #[test]
    fn fixed_point_functors_are_field_like() {
        let cases = [
            (Field::gf(2, 2).unwrap(), FieldAut::frobenius(1), 1),
            (Field::gf(2, 4).unwrap(), FieldAut::frobenius(1), 2),
            (Field::gf(3, 2).unwrap(), FieldAut::frobenius(1), 1),
            (Field::ratfunc(2).unwrap(), FieldAut::shift(), 1),
            (Field::ratfunc(2).unwrap(), FieldAut::Trivial, 2),
        ];
        for (f, a, n) in cases {
            let k = TambaraSpec::new(2, n, n, f, a, vec![D::Full; n as usize + 1]).unwrap();
            let r = run(&k);
            assert_eq!(r.verdict, Verdict::ValidFieldLike, "{k:?}: {r:?}");
        }
    }

    #[test]
    fn proper_top_under_shift_has_transfer_witness() {
        let f = Field::ratfunc(2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::shift(), vec![D::Full, D::frob_image(1)]).unwrap();
        let r = run(&k);
        assert_eq!(r.verdict, Verdict::Invalid);
        let fail = r.failures.iter().find(|f| f.check == "transfer_closure").unwrap();
        assert!(!fail.witness.is_null(), "{r:?}");
    }

    #[test]
    fn missing_squares_fail_norm_closure() {
        let f = Field::ratfunc(2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::frob_image(2)]).unwrap();
        let r = run(&k);
        assert!(r.failed("norm_closure"), "{r:?}");
        assert!(r.failures.iter().all(|f| !f.witness.is_null()));
    }

    #[test]
    fn invertible_transfer_forces_equality() {
        // C_2 acting trivially on GF(9): the transfer is doubling, a bijection
        let f = Field::gf(3, 2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::fixed([FieldAut::frobenius(1)])]).unwrap();
        let r = run(&k);
        let fail = r.failures.iter().find(|f| f.check == "transfer_closure").unwrap();
        assert!(!fail.witness.is_null());
    }

    #[test]
    fn non_descending_chain() {
        let f = Field::ratfunc(2).unwrap();
        let k = TambaraSpec::new(2, 2, 2, f, FieldAut::Trivial, vec![D::Full, D::frob_image(2), D::frob_image(1)]).unwrap();
        let r = run(&k);
        assert!(r.failed("chain_descending"));
        assert_eq!(r.verdict, Verdict::Invalid);
    }

    #[test]
    fn empty_policy_rejected() {
        let f = Field::gf(2, 2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::Full]).unwrap();
        let policy = SamplingPolicy {
            random_samples: 0,
            exhaustive_limit: 0,
            ..SamplingPolicy::default()
        };
        assert!(matches!(validate(&k, &policy), Err(Error::Usage(_))));
    }

    #[test]
    fn report_json_shape() {
        let f = Field::gf(2, 2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::Full]).unwrap();
        let js = serde_json::to_string(&run(&k)).unwrap();
        assert!(js.starts_with(r#"{"verdict":"valid_field_like","checks_run":["base_stable""#));
        assert!(js.ends_with(r#""failures":[]}"#));
    }
}
