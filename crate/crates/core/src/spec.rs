//! Tambara functors presented as subfunctors of a fixed-point functor.
//!
//! A [`TambaraSpec`] is a bottom G-ring (`p^(n-s)` copies of a field with a
//! twisted shift) together with subfield constraints `D_0 ⊇ ... ⊇ D_s`.
//! Level `i` consists of the elements fixed by `C_{p^i}` whose coordinates
//! all lie in `D_min(i,s)`. Restrictions are inclusions, transfers and norms
//! are orbit sums and products, so the Tambara formulae hold whenever the
//! levels are closed under these maps.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aut::FieldAut;
use crate::error::{usage, Error, Result};
use crate::field::{Field, FieldElem};
use crate::gring::{GRingDescriptor, GRingElem, MAX_GROUP_ORDER};
use crate::poly::is_prime;
use crate::subfield::{subfield_compare, NormalForm, Relation, SubfieldDescriptor};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr")]
pub struct TambaraSpec {
    pub p: u64,
    pub n: u32,
    /// Stabilizer exponent of a bottom coordinate; `s = n` means clarified.
    pub s: u32,
    pub field: Field,
    /// Action of the generator of `C_{p^s}` on the coordinate field.
    pub action: FieldAut,
    /// `D_0, ..., D_s`; levels above `s` use `D_s`.
    pub chain: Vec<SubfieldDescriptor>,
}

#[derive(Deserialize)]
struct SpecRepr {
    p: u64,
    n: u32,
    s: u32,
    field: Field,
    action: FieldAut,
    chain: Vec<SubfieldDescriptor>,
}

impl TryFrom<SpecRepr> for TambaraSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        TambaraSpec::new(r.p, r.n, r.s, r.field, r.action, r.chain)
    }
}

/// An element of a given level.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TambaraElem {
    pub level: u32,
    pub value: GRingElem,
}

impl fmt::Debug for TambaraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.value, self.level)
    }
}

impl TambaraSpec {
    /// Loads a spec. Accepts chains of length `s + 1`, or `n + 1` when the
    /// entries above `s` all equal `D_s`. Closure properties are left to
    /// [`crate::validate::validate`].
    pub fn new(
        p: u64,
        n: u32,
        s: u32,
        field: Field,
        action: FieldAut,
        mut chain: Vec<SubfieldDescriptor>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(usage!("group prime {p} is not prime"));
        }
        if s > n {
            return Err(usage!("stabilizer exponent {s} exceeds n = {n}"));
        }
        match p.checked_pow(n) {
            Some(q) if q <= MAX_GROUP_ORDER => {}
            _ => return Err(usage!("group C_{p}^{n} is too large")),
        }
        action.check(&field)?;
        for d in &chain {
            d.check(&field)?;
        }
        let want = s as usize + 1;
        if chain.len() == n as usize + 1 && chain.len() > want {
            for (i, d) in chain.iter().enumerate().skip(want) {
                if subfield_compare(d, &chain[s as usize], &field) != Relation::Equal {
                    return Err(usage!(
                        "chain entry {i} is {d:?}, but levels above s = {s} are pinned to D_{s} = {:?}",
                        chain[s as usize]
                    ));
                }
            }
            chain.truncate(want);
        }
        if chain.len() != want {
            return Err(usage!(
                "chain has {} entries, expected {want} (or {})",
                chain.len(),
                n + 1
            ));
        }
        Ok(TambaraSpec {
            p,
            n,
            s,
            field,
            action,
            chain,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// The bottom G-ring (unchecked: relative specs may have a base field
    /// smaller than `field`, on which `action` has smaller order).
    pub fn gring(&self) -> GRingDescriptor {
        GRingDescriptor {
            p: self.p,
            n: self.n,
            s: self.s,
            field: self.field.clone(),
            wrap: self.action.clone(),
        }
    }

    pub fn is_clarified(&self) -> bool {
        self.s == self.n
    }

    /// Characteristic of the bottom level, which is that of the functor.
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn descriptor(&self, i: u32) -> &SubfieldDescriptor {
        &self.chain[i.min(self.s) as usize]
    }

    /// Coordinates of level-`i` elements must be fixed by this automorphism.
    pub fn stabilizer_aut(&self, i: u32) -> FieldAut {
        let e = self.p.pow(self.s - i.min(self.s));
        self.action.power(e, &self.field)
    }

    /// Field in which each coordinate of a level-`i` element lives.
    pub fn level_field(&self, i: u32) -> SubfieldDescriptor {
        SubfieldDescriptor::intersect([
            self.descriptor(i).clone(),
            SubfieldDescriptor::fixed([self.stabilizer_aut(i)]),
        ])
        .canonical(&self.field)
    }

    pub(crate) fn level_normal_form(&self, i: u32) -> Option<NormalForm> {
        self.level_field(i).normal_form(&self.field)
    }

    pub fn level_contains(&self, i: u32, v: &GRingElem) -> bool {
        let g = self.gring();
        i <= self.n
            && v.coords.len() == g.coord_count()
            && v.coords.iter().all(|x| self.field.contains(x))
            && g.fixed_by(i, v)
            && v.coords.iter().all(|x| self.descriptor(i).contains(&self.field, x))
    }

    pub fn elem(&self, level: u32, value: GRingElem) -> Result<TambaraElem> {
        if !self.level_contains(level, &value) {
            return Err(Error::Precondition(format!("{value:?} is not in level {level}")));
        }
        Ok(TambaraElem { level, value })
    }

    fn expect_level(&self, x: &TambaraElem, i: u32) -> Result<()> {
        if x.level != i || !self.level_contains(i, &x.value) {
            return Err(Error::Precondition(format!("{x:?} is not an element of level {i}")));
        }
        Ok(())
    }

    fn land(&self, op: &str, i: u32, value: GRingElem) -> Result<TambaraElem> {
        if self.level_contains(i, &value) {
            Ok(TambaraElem { level: i, value })
        } else {
            Err(Error::Closure {
                op: op.to_string(),
                level: i,
                witness: serde_json::to_string(&value).expect("element serializes"),
            })
        }
    }

    /// Restriction from level `i` to level `j <= i`: an inclusion.
    pub fn res(&self, i: u32, j: u32, x: &TambaraElem) -> Result<TambaraElem> {
        if j > i {
            return Err(usage!("restriction needs j <= i, got {j} > {i}"));
        }
        self.expect_level(x, i)?;
        Ok(TambaraElem {
            level: j,
            value: x.value.clone(),
        })
    }

    /// Transfer from level `j` to level `i >= j`.
    pub fn tr(&self, j: u32, i: u32, x: &TambaraElem) -> Result<TambaraElem> {
        self.expect_level(x, j)?;
        let v = self.gring().orbit_sum(j, i, &x.value)?;
        self.land("transfer", i, v)
    }

    /// Norm from level `j` to level `i >= j`.
    pub fn norm(&self, j: u32, i: u32, x: &TambaraElem) -> Result<TambaraElem> {
        self.expect_level(x, j)?;
        let v = self.gring().orbit_product(j, i, &x.value)?;
        self.land("norm", i, v)
    }

    /// Weyl action of `g^e` on level `i`.
    pub fn weyl_act(&self, i: u32, e: i64, x: &TambaraElem) -> Result<TambaraElem> {
        self.expect_level(x, i)?;
        let v = self.gring().act(e, &x.value);
        self.land("weyl", i, v)
    }

    /// `φ^n` of the `G`-fixed part of the bottom level, clarified char-`p` specs only.
    pub fn lower_bound_field(&self) -> Result<SubfieldDescriptor> {
        if !self.is_clarified() {
            return Err(usage!("lower bound field needs a clarified spec (s = {} < n = {})", self.s, self.n));
        }
        if self.characteristic() != self.p {
            return Err(usage!(
                "lower bound field needs characteristic {} to equal the group prime {}",
                self.characteristic(),
                self.p
            ));
        }
        let mut parts = vec![SubfieldDescriptor::fixed([self.action.clone()]), self.chain[0].clone()];
        if self.n > 0 {
            parts.insert(0, SubfieldDescriptor::frob_image(self.n));
        }
        Ok(SubfieldDescriptor::intersect(parts).canonical(&self.field))
    }

    /// Same functor with each constraint replaced by the canonical level field.
    pub fn canonical(&self) -> TambaraSpec {
        TambaraSpec {
            p: self.p,
            n: self.n,
            s: self.s,
            field: self.field.clone(),
            action: self.action.normalize(&self.field),
            chain: (0..=self.s).map(|i| self.level_field(i)).collect(),
        }
    }

    /// Equality as functors (same levels inside the same G-ring).
    pub fn same_functor(&self, other: &TambaraSpec) -> bool {
        self.canonical() == other.canonical()
    }

    /// The clarified `C_{p^s}`-spec whose coinduction this is.
    pub fn clarified_part(&self) -> TambaraSpec {
        TambaraSpec {
            p: self.p,
            n: self.s,
            s: self.s,
            field: self.field.clone(),
            action: self.action.clone(),
            chain: self.chain.clone(),
        }
    }

    /// Least `e >= 1` with `action^e` trivial on `D_0`; `None` if `D_0` has no normal form.
    pub fn base_action_order(&self) -> Option<u64> {
        let nf = self.chain[0].normal_form(&self.field)?;
        let full = self.action.order(&self.field).ok()?;
        (1..=full).find(|&e| {
            full % e == 0 && nf.group.contains_aut(&self.action.power(e, &self.field), &self.field)
        })
    }

    /// Number of independent coordinates of a level-`i` element.
    pub fn free_coords(&self, i: u32) -> usize {
        self.p.pow(self.n - i.max(self.s)) as usize
    }

    /// Level-`i` element whose first `free_coords(i)` coordinates are `free`
    /// (each in [`Self::level_field`]`(i)`); the rest is forced by the group.
    pub fn assemble(&self, i: u32, free: &[FieldElem]) -> GRingElem {
        let g = self.gring();
        let big_n = g.coord_count();
        if i <= self.s {
            return GRingElem { coords: free.to_vec() };
        }
        let mut u = g.zero();
        u.coords[..free.len()].clone_from_slice(free);
        debug_assert_eq!(free.len() * (big_n / free.len()), big_n);
        g.orbit_sum(self.s, i, &u).expect("free block is wrap-fixed")
    }

    /// A pseudo-random level-`i` element.
    pub fn sample_level<R: Rng + ?Sized>(&self, i: u32, rng: &mut R, degree: usize) -> GRingElem {
        let nf = self.level_normal_form(i);
        let free: Vec<FieldElem> = (0..self.free_coords(i))
            .map(|_| match &nf {
                Some(nf) => nf.sample(&self.field, rng, degree),
                None => self.field.one(),
            })
            .collect();
        self.assemble(i, &free)
    }
}

impl fmt::Debug for TambaraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C_{}^{} spec over {} (s = {}, action {}) {:?}",
            self.p, self.n, self.field, self.s, self.action, self.chain
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use SubfieldDescriptor as D;

    fn frob_example() -> TambaraSpec {
        let f = Field::ratfunc(2).unwrap();
        TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap()
    }

    fn single(spec: &TambaraSpec, x: FieldElem) -> GRingElem {
        spec.gring().constant(&x)
    }

    #[test]
    fn frobenius_top_level() {
        let k = frob_example();
        let f = &k.field;
        let t = single(&k, f.generator());
        let t2 = single(&k, f.from_poly(Poly::new(2, [0, 0, 1])));
        assert!(!k.level_contains(1, &t));
        assert!(k.level_contains(1, &t2));
        assert!(k.level_contains(0, &t));
        let x = k.elem(1, t2.clone()).unwrap();
        assert_eq!(k.res(1, 0, &x).unwrap().value, t2);
        // res ∘ norm is squaring, res ∘ tr vanishes
        let y = k.elem(0, t.clone()).unwrap();
        assert_eq!(k.norm(0, 1, &y).unwrap().value, t2);
        assert_eq!(k.tr(0, 1, &y).unwrap().value, k.gring().zero());
    }

    #[test]
    fn transfer_escapes_into_closure_error() {
        let f = Field::gf(2, 2).unwrap();
        // a deliberately wrong top level GF(2) under trivial action
        let bad = TambaraSpec::new(
            2,
            1,
            1,
            f.clone(),
            FieldAut::Trivial,
            vec![D::Full, D::fixed([FieldAut::frobenius(1)])],
        )
        .unwrap();
        let w = bad.elem(0, single(&bad, f.generator())).unwrap();
        match bad.norm(0, 1, &w) {
            Err(Error::Closure { op, level, .. }) => {
                assert_eq!(op, "norm");
                assert_eq!(level, 1);
            }
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn fixed_point_gf4() {
        let f = Field::gf(2, 2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f.clone(), FieldAut::frobenius(1), vec![D::Full, D::Full]).unwrap();
        let w = k.elem(0, single(&k, f.generator())).unwrap();
        assert_eq!(k.tr(0, 1, &w).unwrap().value, k.gring().one());
        assert_eq!(k.norm(0, 1, &w).unwrap().value, k.gring().one());
        let one = k.elem(1, k.gring().one()).unwrap();
        assert_eq!(k.res(1, 0, &one).unwrap().value, k.gring().one());
        assert_eq!(k.tr(1, 1, &one).unwrap(), one);
        assert_eq!(k.weyl_act(1, 1, &one).unwrap(), one);
        assert!(matches!(k.res(0, 1, &w), Err(Error::Usage(_))));
        assert!(matches!(k.res(1, 0, &w), Err(Error::Precondition(_))));
    }

    #[test]
    fn gf9_trace_of_i_vanishes() {
        let f = Field::gf(3, 2).unwrap();
        let k = TambaraSpec::new(2, 1, 1, f.clone(), FieldAut::frobenius(1), vec![D::Full, D::Full]).unwrap();
        let i = f.generator();
        assert_eq!(f.mul(&i, &i), f.from_int(2));
        let x = k.elem(0, single(&k, i)).unwrap();
        assert_eq!(k.tr(0, 1, &x).unwrap().value, k.gring().zero());
    }

    #[test]
    fn lower_bound_fields() {
        let k = frob_example();
        assert_eq!(k.lower_bound_field().unwrap(), D::frob_image(1));
        let f = Field::gf(2, 2).unwrap();
        let g = TambaraSpec::new(2, 1, 1, f.clone(), FieldAut::frobenius(1), vec![D::Full, D::Full]).unwrap();
        let lb = g.lower_bound_field().unwrap();
        let gf2: Vec<_> = f.elements().unwrap().into_iter().filter(|x| lb.contains(&f, x)).collect();
        assert_eq!(gf2, vec![f.zero(), f.one()]);
        let triv = TambaraSpec::new(2, 1, 1, f, FieldAut::Trivial, vec![D::Full, D::Full]).unwrap();
        assert_eq!(triv.lower_bound_field().unwrap(), D::Full);
        let sep = TambaraSpec::new(2, 1, 0, Field::gf(2, 2).unwrap(), FieldAut::Trivial, vec![D::Full]).unwrap();
        assert!(sep.lower_bound_field().is_err());
        let gf9 = TambaraSpec::new(2, 1, 1, Field::gf(3, 2).unwrap(), FieldAut::Trivial, vec![D::Full, D::Full]).unwrap();
        assert!(gf9.lower_bound_field().is_err());
    }

    #[test]
    fn loader_rules() {
        let f = Field::ratfunc(2).unwrap();
        let long = TambaraSpec::new(2, 2, 1, f.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1), D::frob_image(1)]);
        assert_eq!(long.unwrap().chain.len(), 2);
        let bad = TambaraSpec::new(2, 2, 1, f.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1), D::frob_image(2)]);
        assert!(bad.is_err());
        assert!(TambaraSpec::new(2, 1, 2, f.clone(), FieldAut::Trivial, vec![D::Full]).is_err());
        assert!(TambaraSpec::new(4, 1, 1, f.clone(), FieldAut::Trivial, vec![D::Full, D::Full]).is_err());
        assert!(TambaraSpec::new(2, 1, 1, f, FieldAut::frobenius(1), vec![D::Full, D::Full]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = frob_example();
        let js = k.to_json();
        assert_eq!(
            js,
            r#"{"p":2,"n":1,"s":1,"field":{"kind":"ratfunc","p":2},"action":{"kind":"trivial"},"chain":[{"kind":"full"},{"kind":"frob_image","depth":1}]}"#
        );
        assert_eq!(TambaraSpec::from_json(&js).unwrap(), k);
        assert!(matches!(TambaraSpec::from_json("{\"p\":2}"), Err(Error::Parse(_))));
    }

    #[test]
    fn trivial_group() {
        let f = Field::gf(2, 2).unwrap();
        let k = TambaraSpec::new(2, 0, 0, f.clone(), FieldAut::Trivial, vec![D::Full]).unwrap();
        let x = k.elem(0, single(&k, f.generator())).unwrap();
        assert_eq!(k.tr(0, 0, &x).unwrap(), x);
        assert_eq!(k.norm(0, 0, &x).unwrap(), x);
        assert!(k.is_clarified());
    }

    #[test]
    fn assembled_elements_are_in_their_level() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = Field::gf(2, 4).unwrap();
        let k = TambaraSpec::new(2, 3, 1, f, FieldAut::frobenius(2), vec![D::Full, D::Full]).unwrap();
        for i in 0..=3 {
            for _ in 0..20 {
                let v = k.sample_level(i, &mut rng, 2);
                assert!(k.level_contains(i, &v), "level {i}: {v:?}");
            }
        }
    }
}
