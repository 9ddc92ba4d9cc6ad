//! Coefficient fields: finite fields `GF(p^k)` and the rational function
//! field `F_p(t)`, with exact arithmetic and canonical element forms.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::poly::{is_prime, Poly, MAX_PRIME};

/// A concrete field backend.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum Field {
    /// `F_p[x]/(modulus)` with `modulus` monic irreducible of degree `k`.
    Gf { p: u64, k: u32, modulus: Poly },
    /// `F_p(t)`.
    RatFunc { p: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum FieldRepr {
    Gf {
        p: u64,
        k: u32,
        /// Omitted on input means the default modulus of [`Field::gf`].
        #[serde(default)]
        modulus: Option<Vec<u64>>,
    },
    Ratfunc { p: u64 },
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        match repr {
            FieldRepr::Gf { p, k, modulus } => {
                check_prime(p)?;
                match modulus {
                    Some(m) => Field::gf_with_modulus(p, k, Poly::from_canonical(p, m)?),
                    None => Field::gf(p, k),
                }
            }
            FieldRepr::Ratfunc { p } => Field::ratfunc(p),
        }
    }
}

impl From<Field> for FieldRepr {
    fn from(field: Field) -> Self {
        match field {
            Field::Gf { p, k, modulus } => FieldRepr::Gf {
                p,
                k,
                modulus: Some(modulus.into_coeffs()),
            },
            Field::RatFunc { p } => FieldRepr::Ratfunc { p },
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(usage!("{p} is not a supported prime"));
    }
    Ok(())
}

/// A rational function in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Reduces `num / den` to canonical form. `den` must be nonzero.
    fn normalize(num: Poly, den: Poly) -> RatFn {
        debug_assert!(!den.is_zero());
        let p = den.p();
        if num.is_zero() {
            return RatFn { num, den: Poly::one(p) };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.is_monic() {
            return RatFn { num, den };
        }
        let inv = crate::poly::mod_inv(den.leading(), p);
        RatFn {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |f: &Field| match f {
            Field::Gf { p, k, modulus } => (0, *p, *k, modulus.coeffs().to_vec()),
            Field::RatFunc { p } => (1, *p, 0, vec![]),
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of a [`Field`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "ElemRepr")]
pub enum FieldElem {
    /// Residue of degree below the modulus degree.
    Gf(Poly),
    Rat(RatFn),
}

/// Wire form of a field element. Carries no characteristic, so decoding into
/// a [`FieldElem`] goes through [`Field::decode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Gf { residue: Vec<u64> },
    Rat { num: Vec<u64>, den: Vec<u64> },
}

impl From<FieldElem> for ElemRepr {
    fn from(x: FieldElem) -> Self {
        match x {
            FieldElem::Gf(r) => ElemRepr::Gf {
                residue: r.into_coeffs(),
            },
            FieldElem::Rat(RatFn { num, den }) => ElemRepr::Rat {
                num: num.into_coeffs(),
                den: den.into_coeffs(),
            },
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Gf(r) => write!(f, "[{}]", r.display_in("x")),
            FieldElem::Rat(q) if q.den.is_one() => write!(f, "{}", q.num),
            FieldElem::Rat(q) => write!(f, "({})/({})", q.num, q.den),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Binary operations exposed through the checked [`Field::arith`] entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Field {
    /// `GF(p^k)` with the first monic irreducible modulus in base-`p` order.
    pub fn gf(p: u64, k: u32) -> Result<Field> {
        check_prime(p)?;
        if k == 0 {
            return Err(usage!("extension degree must be at least 1"));
        }
        Ok(Field::Gf {
            p,
            k,
            modulus: Poly::first_irreducible(p, k as usize),
        })
    }

    pub fn gf_with_modulus(p: u64, k: u32, modulus: Poly) -> Result<Field> {
        check_prime(p)?;
        if modulus.p() != p {
            return Err(usage!("modulus is over F_{}, expected F_{p}", modulus.p()));
        }
        if modulus.degree() != Some(k as usize) || k == 0 {
            return Err(usage!("modulus {modulus} does not have degree {k}"));
        }
        if !modulus.is_monic() {
            return Err(usage!("modulus {modulus} is not monic"));
        }
        if !modulus.is_irreducible() {
            return Err(usage!("modulus {modulus} is reducible over F_{p}"));
        }
        Ok(Field::Gf { p, k, modulus })
    }

    pub fn ratfunc(p: u64) -> Result<Field> {
        check_prime(p)?;
        Ok(Field::RatFunc { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Gf { p, .. } | Field::RatFunc { p } => *p,
        }
    }

    /// Number of elements, when finite and representable.
    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Gf { p, k, .. } => p.checked_pow(*k),
            Field::RatFunc { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Gf { .. })
    }

    /// Finite fields are perfect; `F_p(t)` is not (`t` has no `p`-th root).
    pub fn is_perfect(&self) -> bool {
        self.is_finite()
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: u64) -> FieldElem {
        let p = self.characteristic();
        match self {
            Field::Gf { .. } => FieldElem::Gf(Poly::constant(p, c)),
            Field::RatFunc { .. } => FieldElem::Rat(RatFn {
                num: Poly::constant(p, c),
                den: Poly::one(p),
            }),
        }
    }

    /// The canonical generator: `t` in `F_p(t)`, the class of `x` in `GF(p^k)`.
    pub fn generator(&self) -> FieldElem {
        let p = self.characteristic();
        match self {
            Field::Gf { modulus, .. } => {
                FieldElem::Gf(Poly::t(p).rem(modulus).expect("nonzero modulus"))
            }
            Field::RatFunc { .. } => FieldElem::Rat(RatFn {
                num: Poly::t(p),
                den: Poly::one(p),
            }),
        }
    }

    /// A polynomial in `t` as an element of `F_p(t)`, or reduced into `GF(p^k)`.
    pub fn from_poly(&self, f: Poly) -> FieldElem {
        match self {
            Field::Gf { modulus, .. } => FieldElem::Gf(f.rem(modulus).expect("nonzero modulus")),
            Field::RatFunc { p } => FieldElem::Rat(RatFn {
                num: f,
                den: Poly::one(*p),
            }),
        }
    }

    /// `num / den` in `F_p(t)`, reduced to canonical form.
    pub fn ratio(&self, num: Poly, den: Poly) -> Result<FieldElem> {
        match self {
            Field::RatFunc { p } => {
                if num.p() != *p || den.p() != *p {
                    return Err(usage!("polynomials are not over F_{p}"));
                }
                if den.is_zero() {
                    return Err(Error::Domain("zero denominator".into()));
                }
                Ok(FieldElem::Rat(RatFn::normalize(num, den)))
            }
            Field::Gf { .. } => {
                let n = self.from_poly(num);
                let d = self.from_poly(den);
                self.div(&n, &d)
            }
        }
    }

    /// True when `x` is a canonical element of this field.
    pub fn contains(&self, x: &FieldElem) -> bool {
        match (self, x) {
            (Field::Gf { p, k, .. }, FieldElem::Gf(r)) => {
                r.p() == *p && r.degree().is_none_or(|d| d < *k as usize)
            }
            (Field::RatFunc { p }, FieldElem::Rat(q)) => {
                q.num.p() == *p
                    && q.den.p() == *p
                    && q.den.is_monic()
                    && (if q.num.is_zero() {
                        q.den.is_one()
                    } else {
                        q.num.gcd(&q.den).is_one()
                    })
            }
            _ => false,
        }
    }

    pub fn check(&self, x: &FieldElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(usage!("element {x:?} does not belong to {self}"))
        }
    }

    /// Decodes a wire element, rejecting anything not already canonical.
    pub fn decode(&self, repr: &ElemRepr) -> Result<FieldElem> {
        let p = self.characteristic();
        let x = match (self, repr) {
            (Field::Gf { .. }, ElemRepr::Gf { residue }) => {
                FieldElem::Gf(Poly::from_canonical(p, residue.clone())?)
            }
            (Field::RatFunc { .. }, ElemRepr::Rat { num, den }) => FieldElem::Rat(RatFn {
                num: Poly::from_canonical(p, num.clone())?,
                den: Poly::from_canonical(p, den.clone())?,
            }),
            _ => return Err(Error::Parse(format!("element {repr:?} has the wrong shape for {self}"))),
        };
        if !self.contains(&x) {
            return Err(Error::Parse(format!(
                "element {repr:?} is not in canonical form for {self}"
            )));
        }
        Ok(x)
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        match x {
            FieldElem::Gf(r) => r.is_zero(),
            FieldElem::Rat(q) => q.num.is_zero(),
        }
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        match (x, y) {
            (FieldElem::Gf(a), FieldElem::Gf(b)) => FieldElem::Gf(a.add(b)),
            (FieldElem::Rat(a), FieldElem::Rat(b)) => {
                if a.den == b.den {
                    return FieldElem::Rat(RatFn::normalize(a.num.add(&b.num), a.den.clone()));
                }
                let g = a.den.gcd(&b.den);
                let bd = b.den.div_exact(&g);
                let ad = a.den.div_exact(&g);
                let num = a.num.mul(&bd).add(&b.num.mul(&ad));
                FieldElem::Rat(RatFn::normalize(num, a.den.mul(&bd)))
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        match x {
            FieldElem::Gf(a) => FieldElem::Gf(a.neg()),
            FieldElem::Rat(q) => FieldElem::Rat(RatFn {
                num: q.num.neg(),
                den: q.den.clone(),
            }),
        }
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        match (self, x, y) {
            (Field::Gf { modulus, .. }, FieldElem::Gf(a), FieldElem::Gf(b)) => {
                FieldElem::Gf(a.mul(b).rem(modulus).expect("nonzero modulus"))
            }
            (_, FieldElem::Rat(a), FieldElem::Rat(b)) => {
                if a.num.is_zero() || b.num.is_zero() {
                    return self.zero();
                }
                // cross-cancel so the product is already coprime
                let g1 = a.num.gcd(&b.den);
                let g2 = b.num.gcd(&a.den);
                let num = a.num.div_exact(&g1).mul(&b.num.div_exact(&g2));
                let den = a.den.div_exact(&g2).mul(&b.den.div_exact(&g1));
                let p = den.p();
                let inv = crate::poly::mod_inv(den.leading(), p);
                if inv == 1 {
                    FieldElem::Rat(RatFn { num, den })
                } else {
                    FieldElem::Rat(RatFn {
                        num: num.scale(inv),
                        den: den.scale(inv),
                    })
                }
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(x) {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match (self, x) {
            (Field::Gf { modulus, .. }, FieldElem::Gf(a)) => {
                let (g, u, _) = a.ext_gcd(modulus);
                debug_assert!(g.is_one());
                FieldElem::Gf(u.rem(modulus)?)
            }
            (_, FieldElem::Rat(q)) => FieldElem::Rat(RatFn::normalize(q.den.clone(), q.num.clone())),
            _ => return Err(usage!("element {x:?} does not belong to {self}")),
        })
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// `x^e`; negative exponents invert first.
    pub fn pow(&self, x: &FieldElem, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        Ok(self.pow_u(&base, e.unsigned_abs()))
    }

    pub fn pow_u(&self, x: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Checked binary arithmetic: both operands must belong to this field.
    pub fn arith(&self, op: ArithOp, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        self.check(x)?;
        self.check(y)?;
        match op {
            ArithOp::Add => Ok(self.add(x, y)),
            ArithOp::Sub => Ok(self.sub(x, y)),
            ArithOp::Mul => Ok(self.mul(x, y)),
            ArithOp::Div => self.div(x, y),
        }
    }

    /// `x^(p^m)`.
    pub fn frobenius(&self, x: &FieldElem, m: u32) -> FieldElem {
        let p = self.characteristic();
        match (self, x) {
            (Field::Gf { k, .. }, FieldElem::Gf(_)) => {
                let mut y = x.clone();
                for _ in 0..(m % k) {
                    y = self.pow_u(&y, p);
                }
                y
            }
            (Field::RatFunc { .. }, FieldElem::Rat(q)) => {
                // coefficients lie in F_p, so f(t)^(p^m) = f(t^(p^m)); coprimality is preserved
                let q_exp = (p as usize).pow(m);
                FieldElem::Rat(RatFn {
                    num: q.num.inflate(q_exp),
                    den: q.den.inflate(q_exp),
                })
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    /// Every element of a finite field, in residue order.
    pub fn elements(&self) -> Result<Vec<FieldElem>> {
        let Field::Gf { p, k, .. } = self else {
            return Err(usage!("{self} is infinite"));
        };
        let size = self
            .size()
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| usage!("{self} is too large to enumerate"))?;
        Ok((0..size)
            .map(|idx| {
                let digits = (0..*k).map(|i| idx / p.pow(i) % p);
                FieldElem::Gf(Poly::new(*p, digits))
            })
            .collect())
    }

    /// A pseudo-random element; rational functions use numerator and
    /// denominator degrees up to `max_degree`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, max_degree: usize) -> FieldElem {
        let p = self.characteristic();
        match self {
            Field::Gf { k, .. } => FieldElem::Gf(Poly::new(p, (0..*k).map(|_| rng.gen_range(0..p)))),
            Field::RatFunc { .. } => {
                let dn = rng.gen_range(0..=max_degree);
                let num = Poly::new(p, (0..=dn).map(|_| rng.gen_range(0..p)));
                let dd = rng.gen_range(0..=max_degree);
                let mut den: Vec<u64> = (0..dd).map(|_| rng.gen_range(0..p)).collect();
                den.push(1);
                FieldElem::Rat(RatFn::normalize(num, Poly::new(p, den)))
            }
        }
    }

    /// Short human-readable name, e.g. `GF(2^2)` or `F_2(t)`.
    pub fn name(&self) -> String {
        match self {
            Field::Gf { p, k, .. } => format!("GF({p}^{k})"),
            Field::RatFunc { p } => format!("F_{p}(t)"),
        }
    }

    /// Shorthand accepted by the command line: `gf:<p>:<k>[:modulus-csv]` or `ratfunc:<p>`.
    pub fn parse_shorthand(s: &str) -> Result<Field> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| usage!("bad number {t:?} in field shorthand {s:?}"))
        };
        match parts.as_slice() {
            ["gf", p, k] => Field::gf(num(p)?, num(k)? as u32),
            ["gf", p, k, modulus] => {
                let p = num(p)?;
                let coeffs = modulus.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Field::gf_with_modulus(p, num(k)? as u32, Poly::new(p, coeffs))
            }
            ["ratfunc", p] => Field::ratfunc(num(p)?),
            _ => Err(usage!(
                "field shorthand {s:?} must be gf:<p>:<k>[:modulus-csv] or ratfunc:<p>"
            )),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Gf { modulus, .. } => {
                write!(f, "{} = F_{}[x]/({})", self.name(), self.characteristic(), modulus.display_in("x"))
            }
            Field::RatFunc { .. } => f.write_str(&self.name()),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> Field {
        Field::gf(2, 2).unwrap()
    }

    #[test]
    fn omega_squared_in_gf4() {
        let f = gf4();
        let w = f.generator();
        let w_plus_1 = f.add(&w, &f.one());
        assert_eq!(f.mul(&w, &w), w_plus_1);
    }

    #[test]
    fn inverse_of_one_is_one() {
        for f in [gf4(), Field::ratfunc(3).unwrap()] {
            assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        }
    }

    #[test]
    fn reciprocal_of_reduced_fraction() {
        let f = Field::ratfunc(2).unwrap();
        let x = f.ratio(Poly::t(2), Poly::new(2, [1, 1])).unwrap();
        let expected = f.ratio(Poly::new(2, [1, 1]), Poly::t(2)).unwrap();
        assert_eq!(f.inv(&x).unwrap(), expected);
    }

    #[test]
    fn inverting_zero_is_a_domain_error() {
        let f = gf4();
        assert!(matches!(f.inv(&f.zero()), Err(Error::Domain(_))));
        let r = Field::ratfunc(2).unwrap();
        assert!(matches!(r.inv(&r.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn mismatched_descriptor_is_usage_error() {
        let f = gf4();
        let r = Field::ratfunc(2).unwrap();
        assert!(matches!(
            f.arith(ArithOp::Mul, &r.one(), &f.one()),
            Err(Error::Usage(_))
        ));
        let g9 = Field::gf(3, 2).unwrap();
        assert!(g9.arith(ArithOp::Add, &f.generator(), &g9.one()).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f = gf4();
        let w = f.generator();
        assert_eq!(f.frobenius(&w, 1), f.add(&w, &f.one()));
        assert_eq!(f.frobenius(&f.zero(), 3), f.zero());
        let r = Field::ratfunc(2).unwrap();
        let t1 = r.from_poly(Poly::new(2, [1, 1]));
        assert_eq!(r.frobenius(&t1, 1), r.from_poly(Poly::new(2, [1, 0, 1])));
    }

    #[test]
    fn gf9_modulus_has_square_root_of_minus_one() {
        let f = Field::gf(3, 2).unwrap();
        let i = f.generator();
        assert_eq!(f.mul(&i, &i), f.from_int(2));
    }

    #[test]
    fn ratfunc_canonical_form_after_operations() {
        let f = Field::ratfunc(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = f.random(&mut rng, 4);
            let y = f.random(&mut rng, 4);
            for z in [f.add(&x, &y), f.mul(&x, &y), f.sub(&x, &y)] {
                assert!(f.contains(&z), "{z:?}");
            }
            if !f.is_zero(&y) {
                let q = f.mul(&x, &y);
                if !f.is_zero(&q) {
                    assert_eq!(f.div(&q, &q).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn decode_rejects_noncanonical() {
        let f = Field::ratfunc(2).unwrap();
        let bad = ElemRepr::Rat { num: vec![0, 1], den: vec![0, 1] };
        assert!(f.decode(&bad).is_err());
        let good = ElemRepr::Rat { num: vec![0, 1], den: vec![1, 1] };
        let x = f.decode(&good).unwrap();
        assert_eq!(serde_json::to_value(&x).unwrap(), serde_json::json!({"num": [0, 1], "den": [1, 1]}));
        let g = gf4();
        assert!(g.decode(&ElemRepr::Gf { residue: vec![1, 1, 1] }).is_err());
        assert_eq!(g.decode(&ElemRepr::Gf { residue: vec![0, 1] }).unwrap(), g.generator());
    }

    #[test]
    fn field_json_round_trip() {
        for f in [gf4(), Field::gf(3, 2).unwrap(), Field::ratfunc(5).unwrap()] {
            let s = serde_json::to_string(&f).unwrap();
            let back: Field = serde_json::from_str(&s).unwrap();
            assert_eq!(back, f);
        }
        assert_eq!(
            serde_json::to_string(&gf4()).unwrap(),
            r#"{"kind":"gf","p":2,"k":2,"modulus":[1,1,1]}"#
        );
        let reducible = r#"{"kind":"gf","p":2,"k":2,"modulus":[1,0,1]}"#;
        assert!(serde_json::from_str::<Field>(reducible).is_err());
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!(Field::parse_shorthand("gf:2:2").unwrap(), gf4());
        assert_eq!(
            Field::parse_shorthand("gf:3:2:1,0,1").unwrap(),
            Field::gf(3, 2).unwrap()
        );
        assert_eq!(Field::parse_shorthand("ratfunc:5").unwrap(), Field::ratfunc(5).unwrap());
        assert!(Field::parse_shorthand("gf:4:2").is_err());
        assert!(Field::parse_shorthand("qq").is_err());
    }
}
