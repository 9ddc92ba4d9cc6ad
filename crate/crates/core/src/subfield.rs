//! Subfields with decidable membership.
//!
//! Every descriptor in the catalog denotes a field of the shape
//! `φ^m(F^H)`: the image under the `m`-th Frobenius iterate of the fixed
//! field of a finite automorphism group `H`. Since automorphisms commute
//! with Frobenius and Frobenius is injective, `φ^m(F^H) = φ^m(F) ∩ F^H`, so
//! intersections combine as `(max m, <H ∪ H'>)`. Containment of two such
//! fields is decided exactly:
//!
//! * on a finite (perfect) field the Frobenius part vanishes and
//!   `F^H ⊆ F^H'` iff `H' ⊆ H`;
//! * on `F_p(t)`, `φ^m(F^H) ⊆ φ^m'(F^H')` iff `m >= m'` and `H' ⊆ H`. A
//!   smaller depth can never fit inside a larger one because `F / F^H` is
//!   separable while `F / φ(F)` is purely inseparable.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aut::{mat_mul, projective_normal, FieldAut, Mat, IDENTITY};
use crate::error::{usage, Result};
use crate::field::{Field, FieldElem};
use crate::poly::Poly;

/// Largest Möbius group whose closure is computed before comparisons give up.
const GROUP_CAP: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubfieldDescriptor {
    Full,
    /// Image of the `depth`-th Frobenius iterate.
    FrobImage { depth: u32 },
    /// Elements fixed by every listed automorphism.
    Fixed { auts: Vec<FieldAut> },
    Intersect { parts: Vec<SubfieldDescriptor> },
}

/// Outcome of comparing two subfields `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// `a ⊆ b`, strictly.
    ASubsetB,
    /// `b ⊆ a`, strictly.
    BSubsetA,
    Incomparable,
    Unknown,
}

impl Relation {
    /// `a ⊆ b` is established.
    pub fn a_in_b(self) -> bool {
        matches!(self, Relation::Equal | Relation::ASubsetB)
    }

    pub fn b_in_a(self) -> bool {
        matches!(self, Relation::Equal | Relation::BSubsetA)
    }
}

/// A finite group of automorphisms, stored in a canonical way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum AutGroup {
    /// `<φ^step>` inside `Gal(GF(p^k)/F_p)`; `step` divides `k`, `step == k` is trivial.
    Frob { step: u32, k: u32 },
    /// All elements (projectively normalized matrices), identity included.
    Mobius { p: u64, elems: BTreeSet<Mat> },
}

impl AutGroup {
    pub(crate) fn trivial(field: &Field) -> AutGroup {
        match field {
            Field::Gf { k, .. } => AutGroup::Frob { step: *k, k: *k },
            Field::RatFunc { p } => AutGroup::Mobius {
                p: *p,
                elems: BTreeSet::from([IDENTITY]),
            },
        }
    }

    /// Subgroup generated by `auts`; `None` if the closure exceeds the cap.
    pub(crate) fn generated(auts: &[FieldAut], field: &Field) -> Option<AutGroup> {
        let mut group = AutGroup::trivial(field);
        for a in auts {
            group = group.join_aut(a, field)?;
        }
        Some(group)
    }

    fn join_aut(&self, a: &FieldAut, field: &Field) -> Option<AutGroup> {
        match (self, a.normalize(field)) {
            (_, FieldAut::Trivial) => Some(self.clone()),
            (AutGroup::Frob { step, k }, FieldAut::Frobenius { power }) => Some(AutGroup::Frob {
                step: crate::aut::gcd(*step, power),
                k: *k,
            }),
            (AutGroup::Mobius { p, elems }, FieldAut::Mobius { matrix }) => {
                let mut gens: Vec<Mat> = generators_of(elems, *p);
                gens.push(matrix);
                closure(&gens, *p).map(|elems| AutGroup::Mobius { p: *p, elems })
            }
            _ => None,
        }
    }

    pub(crate) fn join(&self, other: &AutGroup, field: &Field) -> Option<AutGroup> {
        other
            .generators(field)
            .iter()
            .try_fold(self.clone(), |g, a| g.join_aut(a, field))
    }

    pub(crate) fn contains_group(&self, other: &AutGroup) -> bool {
        match (self, other) {
            (AutGroup::Frob { step: a, .. }, AutGroup::Frob { step: b, .. }) => b % a == 0,
            (AutGroup::Mobius { elems: a, .. }, AutGroup::Mobius { elems: b, .. }) => b.is_subset(a),
            _ => false,
        }
    }

    pub(crate) fn contains_aut(&self, a: &FieldAut, field: &Field) -> bool {
        match (self, a.normalize(field)) {
            (_, FieldAut::Trivial) => true,
            (AutGroup::Frob { step, .. }, FieldAut::Frobenius { power }) => power % step == 0,
            (AutGroup::Mobius { elems, .. }, FieldAut::Mobius { matrix }) => elems.contains(&matrix),
            _ => false,
        }
    }

    pub(crate) fn is_trivial(&self) -> bool {
        match self {
            AutGroup::Frob { step, k } => step == k,
            AutGroup::Mobius { elems, .. } => elems.len() == 1,
        }
    }

    /// Every element as an automorphism, identity first.
    pub(crate) fn elements(&self) -> Vec<FieldAut> {
        match self {
            AutGroup::Frob { step, k } => (0..k / step)
                .map(|i| {
                    if i == 0 {
                        FieldAut::Trivial
                    } else {
                        FieldAut::Frobenius { power: i * step }
                    }
                })
                .collect(),
            AutGroup::Mobius { elems, .. } => {
                let mut out = vec![FieldAut::Trivial];
                out.extend(
                    elems
                        .iter()
                        .filter(|m| **m != IDENTITY)
                        .map(|m| FieldAut::Mobius { matrix: *m }),
                );
                out
            }
        }
    }

    /// Canonical generating set: greedy over sorted elements.
    pub(crate) fn generators(&self, _field: &Field) -> Vec<FieldAut> {
        match self {
            AutGroup::Frob { step, k } if step == k => vec![],
            AutGroup::Frob { step, .. } => vec![FieldAut::Frobenius { power: *step }],
            AutGroup::Mobius { p, elems } => generators_of(elems, *p)
                .into_iter()
                .map(|matrix| FieldAut::Mobius { matrix })
                .collect(),
        }
    }

    /// `a H a^-1 = H`.
    pub(crate) fn normalized_by(&self, a: &FieldAut, field: &Field) -> bool {
        match (self, a.normalize(field)) {
            (AutGroup::Frob { .. }, _) | (_, FieldAut::Trivial) => true,
            (AutGroup::Mobius { p, elems }, FieldAut::Mobius { matrix }) => {
                let inv = match (FieldAut::Mobius { matrix }).inverse(field) {
                    FieldAut::Mobius { matrix } => matrix,
                    _ => IDENTITY,
                };
                elems.iter().all(|h| {
                    let c = projective_normal(&mat_mul(&mat_mul(&matrix, h, *p), &inv, *p), *p);
                    elems.contains(&c)
                })
            }
            _ => false,
        }
    }
}

fn generators_of(elems: &BTreeSet<Mat>, p: u64) -> Vec<Mat> {
    let mut gens = Vec::new();
    let mut span = BTreeSet::from([IDENTITY]);
    for m in elems {
        if !span.contains(m) {
            gens.push(*m);
            span = closure(&gens, p).expect("subgroup of a capped group");
        }
    }
    gens
}

fn closure(gens: &[Mat], p: u64) -> Option<BTreeSet<Mat>> {
    let mut elems = BTreeSet::from([IDENTITY]);
    let mut frontier = vec![IDENTITY];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = projective_normal(&mat_mul(&x, g, p), p);
            if elems.insert(y) {
                if elems.len() > GROUP_CAP {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(elems)
}

/// `φ^frob(F^group)`. On finite fields `frob` is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct NormalForm {
    pub(crate) frob: u32,
    pub(crate) group: AutGroup,
}

impl NormalForm {
    pub(crate) fn full(field: &Field) -> NormalForm {
        NormalForm {
            frob: 0,
            group: AutGroup::trivial(field),
        }
    }

    pub(crate) fn intersect(&self, other: &NormalForm, field: &Field) -> Option<NormalForm> {
        Some(NormalForm {
            frob: self.frob.max(other.frob),
            group: self.group.join(&other.group, field)?,
        })
    }

    /// `self ⊆ other`
    pub(crate) fn within(&self, other: &NormalForm) -> bool {
        self.frob >= other.frob && self.group.contains_group(&other.group)
    }

    /// Image under `φ^m`.
    pub(crate) fn frobenius_image(&self, m: u32, field: &Field) -> NormalForm {
        NormalForm {
            frob: if field.is_perfect() { 0 } else { self.frob + m },
            group: self.group.clone(),
        }
    }

    pub(crate) fn with_fixed(&self, a: &FieldAut, field: &Field) -> Option<NormalForm> {
        Some(NormalForm {
            frob: self.frob,
            group: self.group.join_aut(a, field)?,
        })
    }

    pub(crate) fn to_descriptor(&self, field: &Field) -> SubfieldDescriptor {
        let mut parts = Vec::new();
        if self.frob > 0 {
            parts.push(SubfieldDescriptor::FrobImage { depth: self.frob });
        }
        if !self.group.is_trivial() {
            parts.push(SubfieldDescriptor::Fixed {
                auts: self.group.generators(field),
            });
        }
        match parts.len() {
            0 => SubfieldDescriptor::Full,
            1 => parts.pop().unwrap(),
            _ => SubfieldDescriptor::Intersect { parts },
        }
    }

    /// A pseudo-random element: a trace or norm over the group, pushed through `φ^frob`.
    pub(crate) fn sample<R: Rng + ?Sized>(&self, field: &Field, rng: &mut R, degree: usize) -> FieldElem {
        let x = field.random(rng, degree);
        let elems = self.group.elements();
        let y = match rng.gen_range(0..3) {
            0 => orbit_fold(field, &elems, &x, false),
            1 => orbit_fold(field, &elems, &x, true),
            _ => {
                let tx = field.mul(&x, &field.generator());
                orbit_fold(field, &elems, &tx, false)
            }
        };
        field.frobenius(&y, self.frob)
    }

    /// Structured elements of the subfield: orbit traces and norms of `t`, `t + 1`, `1/t`.
    pub(crate) fn boundary_elements(&self, field: &Field) -> Vec<FieldElem> {
        let t = field.generator();
        let t1 = field.add(&t, &field.one());
        let elems = self.group.elements();
        let mut out = vec![field.zero(), field.one()];
        for base in [t.clone(), t1] {
            out.push(orbit_fold(field, &elems, &base, false));
            out.push(orbit_fold(field, &elems, &base, true));
        }
        if let Ok(ti) = field.inv(&t) {
            out.push(orbit_fold(field, &elems, &ti, true));
        }
        let t2 = field.mul(&t, &t);
        out.push(orbit_fold(field, &elems, &field.mul(&t2, &t), false));
        let mut out: Vec<FieldElem> = out.into_iter().map(|y| field.frobenius(&y, self.frob)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Sum (or product) of `x` over the listed automorphisms.
pub(crate) fn orbit_fold(field: &Field, auts: &[FieldAut], x: &FieldElem, product: bool) -> FieldElem {
    let init = if product { field.one() } else { field.zero() };
    auts.iter().fold(init, |acc, a| {
        let y = a.apply_unchecked(field, x);
        if product {
            field.mul(&acc, &y)
        } else {
            field.add(&acc, &y)
        }
    })
}

impl SubfieldDescriptor {
    pub fn frob_image(depth: u32) -> Self {
        SubfieldDescriptor::FrobImage { depth }
    }

    pub fn fixed(auts: impl IntoIterator<Item = FieldAut>) -> Self {
        SubfieldDescriptor::Fixed {
            auts: auts.into_iter().collect(),
        }
    }

    pub fn intersect(parts: impl IntoIterator<Item = SubfieldDescriptor>) -> Self {
        SubfieldDescriptor::Intersect {
            parts: parts.into_iter().collect(),
        }
    }

    /// Checks that every automorphism mentioned acts on `field`.
    pub fn check(&self, field: &Field) -> Result<()> {
        match self {
            SubfieldDescriptor::Full => Ok(()),
            SubfieldDescriptor::FrobImage { depth } => {
                if *depth == 0 {
                    Err(usage!("Frobenius image depth must be at least 1"))
                } else {
                    Ok(())
                }
            }
            SubfieldDescriptor::Fixed { auts } => auts.iter().try_for_each(|a| a.check(field)),
            SubfieldDescriptor::Intersect { parts } => parts.iter().try_for_each(|d| d.check(field)),
        }
    }

    /// Membership, decided directly from the definition.
    pub fn contains(&self, field: &Field, x: &FieldElem) -> bool {
        match self {
            SubfieldDescriptor::Full => true,
            SubfieldDescriptor::FrobImage { depth } => match x {
                FieldElem::Gf(_) => true,
                FieldElem::Rat(q) => {
                    let step = field.characteristic().pow(*depth);
                    q.num().exponents_divisible_by(step) && q.den().exponents_divisible_by(step)
                }
            },
            SubfieldDescriptor::Fixed { auts } => {
                auts.iter().all(|a| a.apply_unchecked(field, x) == *x)
            }
            SubfieldDescriptor::Intersect { parts } => parts.iter().all(|d| d.contains(field, x)),
        }
    }

    /// `φ^m(F^H)` form; `None` when a generated group is too large to close.
    pub(crate) fn normal_form(&self, field: &Field) -> Option<NormalForm> {
        match self {
            SubfieldDescriptor::Full => Some(NormalForm::full(field)),
            SubfieldDescriptor::FrobImage { depth } => Some(NormalForm {
                frob: if field.is_perfect() { 0 } else { *depth },
                group: AutGroup::trivial(field),
            }),
            SubfieldDescriptor::Fixed { auts } => Some(NormalForm {
                frob: 0,
                group: AutGroup::generated(auts, field)?,
            }),
            SubfieldDescriptor::Intersect { parts } => parts
                .iter()
                .try_fold(NormalForm::full(field), |acc, d| acc.intersect(&d.normal_form(field)?, field)),
        }
    }

    /// Canonical descriptor of the same subfield (unchanged if no normal form exists).
    pub fn canonical(&self, field: &Field) -> SubfieldDescriptor {
        match self.normal_form(field) {
            Some(nf) => nf.to_descriptor(field),
            None => self.clone(),
        }
    }

    /// `a(self) = self`; `None` if undecidable within the catalog.
    pub fn stable_under(&self, a: &FieldAut, field: &Field) -> Option<bool> {
        Some(self.normal_form(field)?.group.normalized_by(a, field))
    }

    /// A pseudo-random element of this subfield, when it has a normal form.
    pub fn sample<R: Rng + ?Sized>(&self, field: &Field, rng: &mut R, degree: usize) -> Option<FieldElem> {
        self.normal_form(field).map(|nf| nf.sample(field, rng, degree))
    }

    pub fn boundary_elements(&self, field: &Field) -> Vec<FieldElem> {
        self.normal_form(field)
            .map(|nf| nf.boundary_elements(field))
            .unwrap_or_else(|| vec![field.zero(), field.one()])
    }
}

/// Decides the containment relation between `a` and `b` inside `field`.
///
/// Catalog descriptors are compared exactly through their normal forms. If a
/// normal form cannot be computed the comparison falls back to membership
/// sampling, which can only refute containments; it answers `Incomparable`
/// when both directions are refuted and `Unknown` otherwise.
pub fn subfield_compare(a: &SubfieldDescriptor, b: &SubfieldDescriptor, field: &Field) -> Relation {
    if a.check(field).is_err() || b.check(field).is_err() {
        return Relation::Unknown;
    }
    match (a.normal_form(field), b.normal_form(field)) {
        (Some(na), Some(nb)) => match (na.within(&nb), nb.within(&na)) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::ASubsetB,
            (false, true) => Relation::BSubsetA,
            (false, false) => Relation::Incomparable,
        },
        _ => compare_by_sampling(a, b, field),
    }
}

fn compare_by_sampling(a: &SubfieldDescriptor, b: &SubfieldDescriptor, field: &Field) -> Relation {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let mut candidates = a.boundary_elements(field);
    candidates.extend(b.boundary_elements(field));
    candidates.extend((0..256).map(|_| field.random(&mut rng, 3)));
    let mut a_not_b = false;
    let mut b_not_a = false;
    for x in &candidates {
        let (in_a, in_b) = (a.contains(field, x), b.contains(field, x));
        a_not_b |= in_a && !in_b;
        b_not_a |= in_b && !in_a;
    }
    if a_not_b && b_not_a {
        Relation::Incomparable
    } else {
        Relation::Unknown
    }
}

impl fmt::Debug for SubfieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubfieldDescriptor::Full => f.write_str("Full"),
            SubfieldDescriptor::FrobImage { depth } => write!(f, "FrobImage({depth})"),
            SubfieldDescriptor::Fixed { auts } => write!(f, "Fixed({auts:?})"),
            SubfieldDescriptor::Intersect { parts } => write!(f, "Intersect({parts:?})"),
        }
    }
}

impl fmt::Display for SubfieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Convenience: `x` as a polynomial in `t` inside `field`.
pub fn poly_elem(field: &Field, coeffs: &[u64]) -> FieldElem {
    field.from_poly(Poly::new(field.characteristic(), coeffs.iter().copied()))
}
