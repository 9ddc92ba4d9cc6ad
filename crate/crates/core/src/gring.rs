//! Field-like G-rings for `G = C_{p^n}`: `p^(n-s)` copies of a field,
//! permuted cyclically by the generator, which applies the `wrap`
//! automorphism (the action of the generator of `C_{p^s}`) whenever a
//! coordinate passes the end.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aut::FieldAut;
use crate::error::{usage, Error, Result};
use crate::field::{ElemRepr, Field, FieldElem};
use crate::poly::is_prime;

/// Largest group order accepted.
pub const MAX_GROUP_ORDER: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GRingDescriptor {
    /// Group prime.
    pub p: u64,
    /// `G = C_{p^n}`.
    pub n: u32,
    /// Stabilizer `C_{p^s}` of a coordinate.
    pub s: u32,
    pub field: Field,
    /// Action of the generator of `C_{p^s}` on the coordinate field.
    pub wrap: FieldAut,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GRingElem {
    pub coords: Vec<FieldElem>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GRingElemRepr {
    pub coords: Vec<ElemRepr>,
}

impl GRingDescriptor {
    pub fn new(p: u64, n: u32, s: u32, field: Field, wrap: FieldAut) -> Result<Self> {
        let d = GRingDescriptor { p, n, s, field, wrap };
        d.check()?;
        Ok(d)
    }

    pub fn check(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(usage!("group prime {} is not prime", self.p));
        }
        if self.s > self.n {
            return Err(usage!("stabilizer exponent {} exceeds n = {}", self.s, self.n));
        }
        match self.p.checked_pow(self.n) {
            Some(q) if q <= MAX_GROUP_ORDER => {}
            _ => return Err(usage!("group C_{}^{} is too large", self.p, self.n)),
        }
        let ord = self.wrap.order(&self.field)?;
        if !self.p.pow(self.s).is_multiple_of(ord) {
            return Err(usage!(
                "wrap {} has order {ord}, which does not divide {}^{}",
                self.wrap,
                self.p,
                self.s
            ));
        }
        Ok(())
    }

    pub fn group_order(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `p^(n-s)`.
    pub fn coord_count(&self) -> usize {
        self.p.pow(self.n - self.s) as usize
    }

    /// Order of `wrap` on the field.
    pub fn wrap_order(&self) -> u64 {
        self.wrap.order(&self.field).expect("checked descriptor")
    }

    pub fn zero(&self) -> GRingElem {
        self.constant(&self.field.zero())
    }

    pub fn one(&self) -> GRingElem {
        self.constant(&self.field.one())
    }

    /// `x` in every coordinate.
    pub fn constant(&self, x: &FieldElem) -> GRingElem {
        GRingElem {
            coords: vec![x.clone(); self.coord_count()],
        }
    }

    pub fn elem(&self, coords: Vec<FieldElem>) -> Result<GRingElem> {
        let v = GRingElem { coords };
        self.check_elem(&v)?;
        Ok(v)
    }

    pub fn check_elem(&self, v: &GRingElem) -> Result<()> {
        if v.coords.len() != self.coord_count() {
            return Err(usage!(
                "element has {} coordinates, expected {}",
                v.coords.len(),
                self.coord_count()
            ));
        }
        v.coords.iter().try_for_each(|x| self.field.check(x))
    }

    pub fn decode(&self, repr: &GRingElemRepr) -> Result<GRingElem> {
        let coords = repr
            .coords
            .iter()
            .map(|c| self.field.decode(c))
            .collect::<Result<Vec<_>>>()?;
        self.elem(coords)
    }

    pub fn add(&self, u: &GRingElem, v: &GRingElem) -> GRingElem {
        self.zip(u, v, |x, y| self.field.add(x, y))
    }

    pub fn sub(&self, u: &GRingElem, v: &GRingElem) -> GRingElem {
        self.zip(u, v, |x, y| self.field.sub(x, y))
    }

    pub fn mul(&self, u: &GRingElem, v: &GRingElem) -> GRingElem {
        self.zip(u, v, |x, y| self.field.mul(x, y))
    }

    fn zip(&self, u: &GRingElem, v: &GRingElem, f: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> GRingElem {
        GRingElem {
            coords: u.coords.iter().zip(&v.coords).map(|(x, y)| f(x, y)).collect(),
        }
    }

    /// Action of `g^e`. Coordinate `k` of the result is `wrap^(-q)(v_r)`
    /// where `k - e = qN + r`, `0 <= r < N`.
    pub fn act(&self, e: i64, v: &GRingElem) -> GRingElem {
        let order = self.group_order() as i64;
        let e = e.rem_euclid(order);
        if e == 0 {
            return v.clone();
        }
        let big_n = self.coord_count() as i64;
        let wrap_order = self.wrap_order() as i64;
        let coords = (0..big_n)
            .map(|k| {
                let diff = k - e;
                let q = diff.div_euclid(big_n);
                let r = diff.rem_euclid(big_n) as usize;
                let w = (-q).rem_euclid(wrap_order) as u64;
                if w == 0 {
                    v.coords[r].clone()
                } else {
                    self.wrap.power(w, &self.field).apply_unchecked(&self.field, &v.coords[r])
                }
            })
            .collect();
        GRingElem { coords }
    }

    /// Fixed by the subgroup `C_{p^j}`, generated by `g^(p^(n-j))`.
    pub fn fixed_by(&self, j: u32, v: &GRingElem) -> bool {
        if j == 0 {
            return true;
        }
        self.act(self.p.pow(self.n - j) as i64, v) == *v
    }

    /// Exponents `c * p^(n-l)` for `c < p^(l-j)`: coset representatives of `C_{p^l}/C_{p^j}`.
    pub fn coset_reps(&self, j: u32, l: u32) -> Vec<i64> {
        let step = self.p.pow(self.n - l) as i64;
        (0..self.p.pow(l - j) as i64).map(|c| c * step).collect()
    }

    fn orbit_fold(&self, j: u32, l: u32, v: &GRingElem, product: bool) -> Result<GRingElem> {
        if j > l || l > self.n {
            return Err(usage!("need 0 <= {j} <= {l} <= {}", self.n));
        }
        if !self.fixed_by(j, v) {
            return Err(Error::Precondition(format!("{v:?} is not fixed by C_{}^{j}", self.p)));
        }
        let init = if product { self.one() } else { self.zero() };
        Ok(self.coset_reps(j, l).into_iter().fold(init, |acc, e| {
            let w = self.act(e, v);
            if product {
                self.mul(&acc, &w)
            } else {
                self.add(&acc, &w)
            }
        }))
    }

    /// Sum over `C_{p^l}/C_{p^j}` of the translates of `v`.
    pub fn orbit_sum(&self, j: u32, l: u32, v: &GRingElem) -> Result<GRingElem> {
        self.orbit_fold(j, l, v, false)
    }

    /// Product over `C_{p^l}/C_{p^j}` of the translates of `v`.
    pub fn orbit_product(&self, j: u32, l: u32, v: &GRingElem) -> Result<GRingElem> {
        self.orbit_fold(j, l, v, true)
    }

    /// Coordinate projections `e_0, ..., e_{N-1}`.
    pub fn standard_idempotents(&self) -> Vec<GRingElem> {
        let n = self.coord_count();
        (0..n)
            .map(|i| GRingElem {
                coords: (0..n)
                    .map(|k| if k == i { self.field.one() } else { self.field.zero() })
                    .collect(),
            })
            .collect()
    }

    /// Where the generator sends each coordinate index.
    pub fn coordinate_permutation(&self) -> Vec<usize> {
        let n = self.coord_count();
        (0..n).map(|k| (k + 1) % n).collect()
    }

    /// No nontrivial invariant ideals: each coordinate is a field, so this
    /// holds iff the permutation of coordinates is transitive.
    pub fn invariant_ideal_free(&self) -> bool {
        is_transitive(&self.coordinate_permutation())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, degree: usize) -> GRingElem {
        GRingElem {
            coords: (0..self.coord_count()).map(|_| self.field.random(rng, degree)).collect(),
        }
    }
}

/// True iff the cyclic group generated by `perm` acts transitively on its indices.
pub fn is_transitive(perm: &[usize]) -> bool {
    if perm.is_empty() {
        return false;
    }
    let mut seen = vec![false; perm.len()];
    let mut k = 0;
    for _ in 0..perm.len() {
        if seen[k] {
            return false;
        }
        seen[k] = true;
        k = perm[k];
    }
    k == 0
}

impl fmt::Debug for GRingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C_{}^{}/C_{}^{} over {} (wrap {})",
            self.p, self.n, self.p, self.s, self.field, self.wrap
        )
    }
}

impl fmt::Debug for GRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> Field {
        Field::gf(2, 2).unwrap()
    }

    fn omega(f: &Field) -> FieldElem {
        f.generator()
    }

    /// The generator applied `e` times, one literal shift at a time.
    #[allow(clippy::manual_memcpy)]
    fn act_by_steps(d: &GRingDescriptor, e: u64, v: &GRingElem) -> GRingElem {
        let mut cur = v.clone();
        for _ in 0..e {
            let n = cur.coords.len();
            let mut next = cur.coords.clone();
            for k in 1..n {
                next[k] = cur.coords[k - 1].clone();
            }
            next[0] = d.wrap.apply(&d.field, &cur.coords[n - 1]).unwrap();
            cur = GRingElem { coords: next };
        }
        cur
    }

    #[test]
    fn swap_on_two_coordinates() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 1, 0, f.clone(), FieldAut::Trivial).unwrap();
        let v = d.elem(vec![f.one(), omega(&f)]).unwrap();
        assert_eq!(d.act(1, &v).coords, vec![omega(&f), f.one()]);
        assert_eq!(d.act(0, &v), v);
    }

    #[test]
    fn single_coordinate_wrap() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 1, 1, f.clone(), FieldAut::frobenius(1)).unwrap();
        let v = d.elem(vec![omega(&f)]).unwrap();
        let w = f.add(&omega(&f), &f.one());
        assert_eq!(d.act(1, &v).coords, vec![w]);
        assert!(!d.fixed_by(1, &v));
        assert!(d.fixed_by(1, &d.one()));
        assert_eq!(d.orbit_sum(0, 1, &v).unwrap(), d.one());
        assert_eq!(d.orbit_product(0, 1, &v).unwrap(), d.one());
        assert_eq!(d.orbit_sum(1, 1, &d.one()).unwrap(), d.one());
    }

    #[test]
    fn diagonal_is_fixed() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 1, 0, f.clone(), FieldAut::Trivial).unwrap();
        assert!(d.fixed_by(1, &d.constant(&omega(&f))));
        assert!(!d.fixed_by(1, &d.elem(vec![f.one(), omega(&f)]).unwrap()));
        assert!(d.fixed_by(0, &d.elem(vec![f.one(), omega(&f)]).unwrap()));
    }

    #[test]
    fn orbit_sum_requires_fixed_input() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 2, 1, f.clone(), FieldAut::frobenius(1)).unwrap();
        let v = d.elem(vec![omega(&f), f.one()]).unwrap();
        assert!(matches!(d.orbit_sum(1, 2, &v), Err(Error::Precondition(_))));
    }

    #[test]
    fn idempotents() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 1, 0, f.clone(), FieldAut::Trivial).unwrap();
        let e = d.standard_idempotents();
        assert_eq!(e[0].coords, vec![f.one(), f.zero()]);
        assert_eq!(e[1].coords, vec![f.zero(), f.one()]);
        assert_eq!(d.add(&e[0], &e[1]), d.one());
        assert_eq!(d.mul(&e[0], &e[1]), d.zero());
        assert_eq!(d.act(1, &e[0]), e[1]);
    }

    #[test]
    fn transitivity() {
        let f = gf4();
        let d = GRingDescriptor::new(2, 2, 1, f.clone(), FieldAut::frobenius(1)).unwrap();
        assert!(d.invariant_ideal_free());
        assert!(!is_transitive(&[0, 1]));
        assert!(!is_transitive(&[1, 0, 2]));
        assert!(is_transitive(&[0]));
    }

    #[test]
    fn closed_form_matches_literal_shifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cases = [
            GRingDescriptor::new(2, 3, 1, Field::gf(2, 2).unwrap(), FieldAut::frobenius(1)).unwrap(),
            GRingDescriptor::new(2, 2, 2, Field::gf(2, 4).unwrap(), FieldAut::frobenius(1)).unwrap(),
            GRingDescriptor::new(3, 2, 1, Field::ratfunc(3).unwrap(), FieldAut::shift()).unwrap(),
            GRingDescriptor::new(2, 2, 1, Field::gf(3, 2).unwrap(), FieldAut::frobenius(1)).unwrap(),
        ];
        for d in &cases {
            for _ in 0..10 {
                let v = d.random(&mut rng, 2);
                for e in 0..=d.group_order() {
                    assert_eq!(d.act(e as i64, &v), act_by_steps(d, e, &v), "{d:?} e={e}");
                }
                assert_eq!(d.act(-1, &d.act(1, &v)), v);
            }
        }
    }

    #[test]
    fn bad_wrap_order_rejected() {
        // φ on GF(8) has order 3, not a power of 2
        let f = Field::gf(2, 3).unwrap();
        assert!(GRingDescriptor::new(2, 1, 1, f, FieldAut::frobenius(1)).is_err());
        let f = gf4();
        assert!(GRingDescriptor::new(2, 1, 0, f, FieldAut::frobenius(1)).is_err());
    }

    #[test]
    fn json_shape() {
        let f = Field::ratfunc(2).unwrap();
        let d = GRingDescriptor::new(2, 1, 1, f.clone(), FieldAut::shift()).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"p":2,"n":1,"s":1,"field":{"kind":"ratfunc","p":2},"wrap":{"kind":"mobius","matrix":[1,1,0,1]}}"#
        );
        let v = d.elem(vec![f.from_poly(Poly::new(2, [0, 1]))]).unwrap();
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(js, r#"{"coords":[{"num":[0,1],"den":[1]}]}"#);
        let repr: GRingElemRepr = serde_json::from_str(&js).unwrap();
        assert_eq!(d.decode(&repr).unwrap(), v);
    }
}
