//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored little-endian and always reduced into `[0, p)`;
//! the zero polynomial has no coefficients, every other polynomial has a
//! nonzero leading coefficient. Two polynomials are equal exactly when their
//! coefficient vectors are equal.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted as a characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial from arbitrary coefficients, reducing mod `p` and trimming.
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut poly = Poly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Accepts only coefficient vectors already in canonical form.
    pub fn from_canonical(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::Parse(format!("coefficient {c} is not reduced mod {p}")));
        }
        if coeffs.last() == Some(&0) {
            return Err(Error::Parse(format!(
                "polynomial {coeffs:?} has trailing zero coefficients"
            )));
        }
        Ok(Poly { p, coeffs })
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, [c])
    }

    /// `c * t^e`
    pub fn monomial(p: u64, c: u64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(p, coeffs)
    }

    /// The variable `t`.
    pub fn t(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.p, other.p);
        let len = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        Poly::new(p, (0..len).map(|i| (self.coeff(i) + other.coeff(i)) % p))
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly::new(p, self.coeffs.iter().map(|&c| (p - c) % p))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let p = self.p;
        let c = c % p;
        Poly::new(p, self.coeffs.iter().map(|&a| a * c % p))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Poly::new(p, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let p = self.p;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(p), self.clone()));
        }
        let lead_inv = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dlen - 1] * lead_inv % p;
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - c * d % p) % p;
            }
        }
        rem.truncate(dlen - 1);
        Ok((Poly::new(p, quot), Poly::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; callers guarantee divisibility.
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.leading(), self.p))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inv(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `t -> t^q`.
    pub fn inflate(&self, q: usize) -> Poly {
        if self.is_zero() || q == 1 {
            return self.clone();
        }
        let mut out = vec![0u64; (self.coeffs.len() - 1) * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * q] = c;
        }
        Poly::new(self.p, out)
    }

    /// True when every exponent carrying a nonzero coefficient is a multiple of `q`.
    pub fn exponents_divisible_by(&self, q: u64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || (i as u64).is_multiple_of(q))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// Rabin's irreducibility test for a polynomial of positive degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(k) = self.degree() else { return false };
        if k == 0 {
            return false;
        }
        let f = self.monic();
        let p = self.p;
        let t = Poly::t(p);
        // t^(p^i) mod f for i = 0..=k
        let mut frob = vec![t.rem(&f).expect("nonzero")];
        for _ in 0..k {
            let next = frob.last().unwrap().pow_mod(p, &f).expect("nonzero");
            frob.push(next);
        }
        if frob[k] != frob[0] {
            return false;
        }
        let mut m = k;
        let mut q = 2;
        let mut prime_factors = Vec::new();
        while q * q <= m {
            if m % q == 0 {
                prime_factors.push(q);
                while m % q == 0 {
                    m /= q;
                }
            }
            q += 1;
        }
        if m > 1 {
            prime_factors.push(m);
        }
        prime_factors.into_iter().all(|q| {
            let h = frob[k / q].sub(&frob[0]);
            f.gcd(&h).is_one()
        })
    }

    /// Smallest monic irreducible of degree `k`, ordering lower coefficients
    /// as a base-`p` integer read little-endian.
    pub fn first_irreducible(p: u64, k: usize) -> Poly {
        assert!(k >= 1);
        let mut index: u64 = 0;
        loop {
            let mut digits = Vec::with_capacity(k + 1);
            let mut rest = index;
            for _ in 0..k {
                digits.push(rest % p);
                rest /= p;
            }
            digits.push(1);
            let candidate = Poly::new(p, digits);
            if candidate.is_irreducible() {
                return candidate;
            }
            index += 1;
        }
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, c) => format!("{c}{var}^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.display_in("t"), self.p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(c: &[u64]) -> Poly {
        Poly::new(2, c.iter().copied())
    }

    #[test]
    fn gcd_of_squares_over_f2() {
        // t^2 + 1 = (t + 1)^2 and t^4 + t^2 + 1 = (t^2 + t + 1)^2 share no factor
        let a = f2(&[1, 0, 1]);
        let b = f2(&[1, 0, 1, 0, 1]);
        assert_eq!(a.gcd(&b), Poly::one(2));
    }

    #[test]
    fn add_zero_is_identity() {
        let f = f2(&[1, 1, 0, 1]);
        assert_eq!(f.add(&Poly::zero(2)), f);
    }

    #[test]
    fn square_in_char_two() {
        let f = f2(&[1, 1]);
        assert_eq!(f.mul(&f), f2(&[1, 0, 1]));
    }

    #[test]
    fn divmod_by_zero_is_domain_error() {
        assert!(matches!(f2(&[1]).divmod(&Poly::zero(2)), Err(Error::Domain(_))));
    }

    #[test]
    fn divmod_reconstructs() {
        let a = Poly::new(5, [3, 1, 4, 1, 2]);
        let b = Poly::new(5, [2, 0, 3]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = Poly::new(3, [1, 2, 0, 1]);
        let b = Poly::new(3, [2, 1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn canonical_parsing_rejects_trailing_zero() {
        assert!(Poly::from_canonical(2, vec![1, 0]).is_err());
        assert!(Poly::from_canonical(2, vec![2]).is_err());
        assert!(Poly::from_canonical(2, vec![1, 1]).is_ok());
    }

    #[test]
    fn first_irreducibles_are_the_usual_moduli() {
        assert_eq!(Poly::first_irreducible(2, 2), f2(&[1, 1, 1]));
        assert_eq!(Poly::first_irreducible(2, 3), f2(&[1, 1, 0, 1]));
        assert_eq!(Poly::first_irreducible(2, 4), f2(&[1, 1, 0, 0, 1]));
        assert_eq!(Poly::first_irreducible(3, 2), Poly::new(3, [1, 0, 1]));
    }

    #[test]
    fn irreducibility_matches_root_search_for_small_degrees() {
        // degree <= 3 polynomials are irreducible iff they have no root
        for p in [2u64, 3, 5] {
            for deg in 2..=3usize {
                let total = p.pow(deg as u32);
                for idx in 0..total {
                    let mut c: Vec<u64> = (0..deg).map(|i| idx / p.pow(i as u32) % p).collect();
                    c.push(1);
                    let f = Poly::new(p, c);
                    let has_root = (0..p).any(|x| f.eval(x) == 0);
                    assert_eq!(f.is_irreducible(), !has_root, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn inflate_and_divisibility() {
        let f = Poly::new(3, [1, 2, 1]);
        let g = f.inflate(3);
        assert!(g.exponents_divisible_by(3));
        assert!(!f.exponents_divisible_by(3));
        assert_eq!(f.pow(3), g);
    }
}
