//! Field automorphisms of finite order: powers of Frobenius on `GF(p^k)` and
//! Möbius substitutions `t -> (a t + b) / (c t + d)` on `F_p(t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::field::{Field, FieldElem};
use crate::poly::{mod_inv, Poly};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldAut {
    Trivial,
    /// `x -> x^(p^power)` on a finite field.
    Frobenius { power: u32 },
    /// `f(t) -> f((a t + b) / (c t + d))` with `matrix = [a, b, c, d]`.
    Mobius { matrix: [u64; 4] },
}

pub(crate) type Mat = [u64; 4];

pub(crate) fn mat_mul(x: &Mat, y: &Mat, p: u64) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn det(m: &Mat, p: u64) -> u64 {
    (m[0] * m[3] % p + p - m[1] * m[2] % p) % p
}

/// Scales a matrix so its first nonzero entry is one.
pub(crate) fn projective_normal(m: &Mat, p: u64) -> Mat {
    let lead = m.iter().copied().find(|&c| c != 0).expect("invertible matrix");
    let inv = mod_inv(lead, p);
    [m[0] * inv % p, m[1] * inv % p, m[2] * inv % p, m[3] * inv % p]
}

pub(crate) const IDENTITY: Mat = [1, 0, 0, 1];

fn mat_pow(m: &Mat, mut e: u64, p: u64) -> Mat {
    let mut acc = IDENTITY;
    let mut base = *m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, p);
        }
        base = mat_mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

impl FieldAut {
    pub fn frobenius(power: u32) -> FieldAut {
        FieldAut::Frobenius { power }
    }

    pub fn mobius(a: u64, b: u64, c: u64, d: u64) -> FieldAut {
        FieldAut::Mobius { matrix: [a, b, c, d] }
    }

    /// The translation `t -> t + 1`, of order `p` on `F_p(t)`.
    pub fn shift() -> FieldAut {
        FieldAut::mobius(1, 1, 0, 1)
    }

    /// Checks that this automorphism acts on `field`.
    pub fn check(&self, field: &Field) -> Result<()> {
        match (self, field) {
            (FieldAut::Trivial, _) => Ok(()),
            (FieldAut::Frobenius { power }, Field::Gf { .. }) => {
                if *power == 0 {
                    Err(usage!("Frobenius power must be at least 1"))
                } else {
                    Ok(())
                }
            }
            (FieldAut::Mobius { matrix }, Field::RatFunc { p }) => {
                if matrix.iter().any(|&c| c >= *p) {
                    return Err(usage!("Möbius entries {matrix:?} are not reduced mod {p}"));
                }
                if det(matrix, *p) == 0 {
                    return Err(usage!("Möbius matrix {matrix:?} is singular mod {p}"));
                }
                Ok(())
            }
            (FieldAut::Frobenius { .. }, Field::RatFunc { .. }) => Err(usage!(
                "Frobenius is not an automorphism of {field}; use a Möbius substitution"
            )),
            (FieldAut::Mobius { .. }, Field::Gf { .. }) => {
                Err(usage!("Möbius substitutions act on F_p(t), not on {field}"))
            }
        }
    }

    /// Checked application.
    pub fn apply(&self, field: &Field, x: &FieldElem) -> Result<FieldElem> {
        self.check(field)?;
        field.check(x)?;
        Ok(self.apply_unchecked(field, x))
    }

    pub(crate) fn apply_unchecked(&self, field: &Field, x: &FieldElem) -> FieldElem {
        match (self, x) {
            (FieldAut::Trivial, _) => x.clone(),
            (FieldAut::Frobenius { power }, _) => field.frobenius(x, *power),
            (FieldAut::Mobius { matrix }, FieldElem::Rat(q)) => {
                let p = field.characteristic();
                let [a, b, c, d] = *matrix;
                let top = Poly::new(p, [b, a]);
                let bottom = Poly::new(p, [d, c]);
                let dn = q.num().degree().unwrap_or(0);
                let dd = q.den().degree().unwrap_or(0);
                let m = dn.max(dd);
                let mut top_pows = vec![Poly::one(p)];
                let mut bottom_pows = vec![Poly::one(p)];
                for i in 1..=m {
                    top_pows.push(top_pows[i - 1].mul(&top));
                    bottom_pows.push(bottom_pows[i - 1].mul(&bottom));
                }
                // f(M t) * (c t + d)^m, numerator and denominator alike
                let subst = |f: &Poly| {
                    f.coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .fold(Poly::zero(p), |acc, (i, &c)| {
                            acc.add(&top_pows[i].mul(&bottom_pows[m - i]).scale(c))
                        })
                };
                field
                    .ratio(subst(q.num()), subst(q.den()))
                    .expect("automorphism image of a nonzero denominator is nonzero")
            }
            _ => panic!("automorphism {self:?} does not act on {x:?}"),
        }
    }

    /// Canonical representative: Frobenius powers reduced mod `k`, Möbius
    /// matrices scaled projectively, identities collapsed to `Trivial`.
    pub fn normalize(&self, field: &Field) -> FieldAut {
        match (self, field) {
            (FieldAut::Frobenius { power }, Field::Gf { k, .. }) => match power % k {
                0 => FieldAut::Trivial,
                r => FieldAut::Frobenius { power: r },
            },
            (FieldAut::Mobius { matrix }, Field::RatFunc { p }) => {
                let m = projective_normal(matrix, *p);
                if m == IDENTITY {
                    FieldAut::Trivial
                } else {
                    FieldAut::Mobius { matrix: m }
                }
            }
            _ => self.clone(),
        }
    }

    pub fn is_identity(&self, field: &Field) -> bool {
        self.normalize(field) == FieldAut::Trivial
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FieldAut, field: &Field) -> FieldAut {
        let out = match (self, other) {
            (FieldAut::Trivial, o) | (o, FieldAut::Trivial) => o.clone(),
            (FieldAut::Frobenius { power: a }, FieldAut::Frobenius { power: b }) => {
                let k = match field {
                    Field::Gf { k, .. } => *k,
                    Field::RatFunc { .. } => 1,
                };
                FieldAut::Frobenius { power: (a % k) + (b % k) }
            }
            // substitution is contravariant: (σ_M ∘ σ_N) f = f(N M t)
            (FieldAut::Mobius { matrix: m }, FieldAut::Mobius { matrix: n }) => FieldAut::Mobius {
                matrix: mat_mul(n, m, field.characteristic()),
            },
            _ => panic!("cannot compose {self:?} with {other:?}"),
        };
        out.normalize(field)
    }

    pub fn power(&self, e: u64, field: &Field) -> FieldAut {
        match self.normalize(field) {
            FieldAut::Trivial => FieldAut::Trivial,
            FieldAut::Frobenius { power } => {
                let k = match field {
                    Field::Gf { k, .. } => *k as u64,
                    Field::RatFunc { .. } => unreachable!("checked above"),
                };
                FieldAut::Frobenius {
                    power: ((power as u64 % k) * (e % k) % k) as u32,
                }
                .normalize(field)
            }
            FieldAut::Mobius { matrix } => FieldAut::Mobius {
                matrix: mat_pow(&matrix, e, field.characteristic()),
            }
            .normalize(field),
        }
    }

    pub fn inverse(&self, field: &Field) -> FieldAut {
        match self.normalize(field) {
            FieldAut::Trivial => FieldAut::Trivial,
            FieldAut::Frobenius { power } => {
                let k = match field {
                    Field::Gf { k, .. } => *k,
                    Field::RatFunc { .. } => unreachable!(),
                };
                FieldAut::Frobenius { power: k - power }.normalize(field)
            }
            FieldAut::Mobius { matrix: [a, b, c, d] } => {
                let p = field.characteristic();
                FieldAut::Mobius {
                    matrix: [d, (p - b) % p, (p - c) % p, a],
                }
                .normalize(field)
            }
        }
    }

    /// Least `e >= 1` with `self^e` the identity on `field`.
    pub fn order(&self, field: &Field) -> Result<u64> {
        self.check(field)?;
        Ok(match self.normalize(field) {
            FieldAut::Trivial => 1,
            FieldAut::Frobenius { power } => {
                let Field::Gf { k, .. } = field else { unreachable!() };
                (*k / gcd(*k, power)) as u64
            }
            FieldAut::Mobius { matrix } => {
                let p = field.characteristic();
                let mut acc = matrix;
                let mut e = 1;
                while projective_normal(&acc, p) != IDENTITY {
                    acc = mat_mul(&acc, &matrix, p);
                    e += 1;
                }
                e
            }
        })
    }

    /// Shorthand: `trivial`, `frob:<m>`, `mobius:<a>,<b>,<c>,<d>`.
    pub fn parse_shorthand(s: &str) -> Result<FieldAut> {
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| usage!("bad number {t:?} in action shorthand {s:?}"))
        };
        if s == "trivial" {
            return Ok(FieldAut::Trivial);
        }
        if let Some(m) = s.strip_prefix("frob:") {
            return Ok(FieldAut::Frobenius { power: num(m)? as u32 });
        }
        if let Some(rest) = s.strip_prefix("mobius:") {
            let entries = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
            let matrix: [u64; 4] = entries
                .try_into()
                .map_err(|_| usage!("Möbius shorthand {s:?} needs four entries"))?;
            return Ok(FieldAut::Mobius { matrix });
        }
        Err(usage!(
            "action shorthand {s:?} must be trivial, frob:<m> or mobius:<a>,<b>,<c>,<d>"
        ))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Debug for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldAut::Trivial => f.write_str("id"),
            FieldAut::Frobenius { power: 1 } => f.write_str("φ"),
            FieldAut::Frobenius { power } => write!(f, "φ^{power}"),
            FieldAut::Mobius { matrix: [a, b, c, d] } => {
                let (num, den) = (linear(*a, *b), linear(*c, *d));
                let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
                if den == "1" {
                    write!(f, "t↦{num}")
                } else {
                    write!(f, "t↦{}/{}", wrap(num), wrap(den))
                }
            }
        }
    }
}

fn linear(a: u64, b: u64) -> String {
    let lead = match a {
        0 => String::new(),
        1 => "t".to_string(),
        a => format!("{a}t"),
    };
    match (lead.is_empty(), b) {
        (true, b) => b.to_string(),
        (false, 0) => lead,
        (false, b) => format!("{lead}+{b}"),
    }
}

impl fmt::Display for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
