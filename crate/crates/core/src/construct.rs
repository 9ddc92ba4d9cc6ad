//! Constructions of specs: fixed-point functors, coinduction, restriction
//! of clarified specs, and the top/bottom splitting with its inverse gluing.

use serde::{Deserialize, Serialize};

use crate::aut::FieldAut;
use crate::error::{usage, Error, Result};
use crate::field::Field;
use crate::spec::TambaraSpec;
use crate::subfield::{subfield_compare, Relation, SubfieldDescriptor};
use crate::validate::{validate, SamplingPolicy};

/// The pieces a clarified `C_{p^n}`-spec is glued from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueData {
    /// Clarified `C_{p^(n-1)}`-spec.
    pub top: TambaraSpec,
    /// Clarified `C_p`-spec.
    pub bottom: TambaraSpec,
    pub field: Field,
    /// Action of the generator of `C_{p^n}` on `field`.
    pub action: FieldAut,
}

/// `G/H -> F^H` for `G = C_{p^n}` acting on `field` through `action`.
pub fn fixed_point_functor(field: &Field, action: &FieldAut, p: u64, n: u32) -> Result<TambaraSpec> {
    let ord = action.order(field)?;
    let group = p
        .checked_pow(n)
        .ok_or_else(|| usage!("group C_{p}^{n} is too large"))?;
    if group % ord != 0 {
        return Err(usage!("action {action} has order {ord}, which does not divide {p}^{n}"));
    }
    TambaraSpec::new(
        p,
        n,
        n,
        field.clone(),
        action.clone(),
        vec![SubfieldDescriptor::Full; n as usize + 1],
    )
}

/// Coinduction of a clarified `C_{p^s}`-spec up to `C_{p^n}`.
pub fn coinduce(ell: &TambaraSpec, n: u32) -> Result<TambaraSpec> {
    if !ell.is_clarified() {
        return Err(usage!("coinduction takes a clarified spec (s = {}, n = {})", ell.s, ell.n));
    }
    if n < ell.n {
        return Err(usage!("cannot coinduce a C_{}^{} spec down to n = {n}", ell.p, ell.n));
    }
    TambaraSpec::new(ell.p, n, ell.n, ell.field.clone(), ell.action.clone(), ell.chain.clone())
}

/// Restriction of a clarified spec to `C_{p^m}`.
pub fn restrict_clarified(k: &TambaraSpec, m: u32) -> Result<TambaraSpec> {
    if !k.is_clarified() {
        return Err(usage!("restriction is only implemented for clarified specs"));
    }
    if m > k.n {
        return Err(usage!("cannot restrict C_{}^{} to m = {m}", k.p, k.n));
    }
    TambaraSpec::new(
        k.p,
        m,
        m,
        k.field.clone(),
        k.action.power(k.p.pow(k.n - m), &k.field),
        k.chain[..=m as usize].to_vec(),
    )
}

/// The `C_{p^(n-1)}`-spec formed by levels `1..=n`. Its base field is level
/// 1, kept as a constraint inside the same ambient field.
pub fn extract_top(k: &TambaraSpec) -> Result<TambaraSpec> {
    if !k.is_clarified() {
        return Err(usage!("extract_top takes a clarified spec"));
    }
    if k.n == 0 {
        return Err(usage!("extract_top needs n >= 1"));
    }
    TambaraSpec::new(
        k.p,
        k.n - 1,
        k.n - 1,
        k.field.clone(),
        k.action.normalize(&k.field),
        (1..=k.n).map(|i| k.level_field(i)).collect(),
    )
}

/// The underlying `C_p`-spec.
pub fn extract_bottom(k: &TambaraSpec) -> Result<TambaraSpec> {
    if k.n == 0 {
        return Err(usage!("extract_bottom needs n >= 1"));
    }
    restrict_clarified(k, 1)
}

/// The glue data that [`glue`] turns back into `k`.
pub fn split(k: &TambaraSpec) -> Result<GlueData> {
    Ok(GlueData {
        top: extract_top(k)?,
        bottom: extract_bottom(k)?,
        field: k.field.clone(),
        action: k.action.clone(),
    })
}

fn pair(a: &SubfieldDescriptor, b: &SubfieldDescriptor, rel: Relation) -> String {
    format!("{a:?} vs {b:?} ({rel:?})")
}

/// Reassembles a clarified `C_{p^n}`-spec from its top and bottom pieces.
pub fn glue(g: &GlueData) -> Result<TambaraSpec> {
    let GlueData { top, bottom, field, action } = g;
    let p = bottom.p;
    action.check(field)?;
    if !top.is_clarified() || !bottom.is_clarified() || bottom.n != 1 {
        return Err(usage!("glue takes a clarified C_{p}^(n-1) top and a clarified C_{p} bottom"));
    }
    if top.p != p || top.field != *field || bottom.field != *field {
        return Err(usage!("glue pieces must share the group prime and the ambient field"));
    }
    let n = top.n + 1;
    let policy = SamplingPolicy::default();
    for (name, piece) in [("top", top), ("bottom", bottom)] {
        let report = validate(piece, &policy)?;
        if !report.is_field_like() {
            return Err(Error::Precondition(format!(
                "glue {name} is not field-like: {}",
                report.failures[0].message
            )));
        }
    }

    let bottom_top = bottom.level_field(1);
    let top_base = top.level_field(0);
    let rel = subfield_compare(&bottom_top, &top_base, field);
    if rel != Relation::Equal {
        return Err(Error::Glue {
            criterion: 1,
            detail: format!("top level of the bottom piece must equal the base of the top piece: {}", pair(&bottom_top, &top_base, rel)),
        });
    }

    let rel = subfield_compare(&bottom.chain[0], &SubfieldDescriptor::Full, field);
    let restricted = action.power(p.pow(n - 1), field);
    if rel != Relation::Equal {
        return Err(Error::Glue {
            criterion: 2,
            detail: format!("bottom piece must sit on the whole field: {}", pair(&bottom.chain[0], &SubfieldDescriptor::Full, rel)),
        });
    }
    if bottom.action.normalize(field) != restricted {
        return Err(Error::Glue {
            criterion: 2,
            detail: format!(
                "bottom piece acts by {}, but the restricted action is {restricted}",
                bottom.action
            ),
        });
    }

    let difference = action.inverse(field).compose(&top.action, field);
    let agree = SubfieldDescriptor::fixed([difference]);
    let rel = subfield_compare(&top.chain[0], &agree, field);
    if !rel.a_in_b() {
        return Err(Error::Glue {
            criterion: 3,
            detail: format!(
                "top piece acts by {} on its base, which is not the action {action} induced from the field: {}",
                top.action,
                pair(&top.chain[0], &agree, rel)
            ),
        });
    }

    let mut chain = vec![SubfieldDescriptor::Full];
    chain.extend(top.chain.iter().cloned());
    let k = TambaraSpec::new(p, n, n, field.clone(), action.clone(), chain)?;
    let report = validate(&k, &policy)?;
    if !report.is_field_like() {
        return Err(Error::Consistency(format!(
            "glued spec fails validation: {}",
            report.failures[0].message
        )));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use SubfieldDescriptor as D;

    fn f2t() -> Field {
        Field::ratfunc(2).unwrap()
    }

    fn c4_chain(chain: Vec<D>) -> TambaraSpec {
        TambaraSpec::new(2, 2, 2, f2t(), FieldAut::Trivial, chain).unwrap()
    }

    #[test]
    fn fixed_point_gf4() {
        let f = Field::gf(2, 2).unwrap();
        let k = fixed_point_functor(&f, &FieldAut::frobenius(1), 2, 1).unwrap();
        let top = k.level_field(1);
        let elems: Vec<_> = f.elements().unwrap().into_iter().filter(|x| top.contains(&f, x)).collect();
        assert_eq!(elems, vec![f.zero(), f.one()]);
        let f8 = Field::gf(2, 3).unwrap();
        assert!(fixed_point_functor(&f8, &FieldAut::frobenius(1), 2, 2).is_err());
    }

    #[test]
    fn coinduce_and_restrict() {
        let f = Field::gf(2, 2).unwrap();
        let bare = fixed_point_functor(&f, &FieldAut::Trivial, 2, 0).unwrap();
        let c = coinduce(&bare, 1).unwrap();
        assert_eq!((c.n, c.s, c.gring().coord_count()), (1, 0, 2));
        assert_eq!(coinduce(&bare, 0).unwrap(), bare);
        assert!(coinduce(&c, 2).is_err());
        let k = c4_chain(vec![D::Full, D::frob_image(1), D::frob_image(2)]);
        assert!(coinduce(&k, 1).is_err());
        let r = restrict_clarified(&k, 1).unwrap();
        assert_eq!(r.chain, vec![D::Full, D::frob_image(1)]);
        assert_eq!(restrict_clarified(&k, 2).unwrap(), k);
        assert!(restrict_clarified(&c, 0).is_err());
    }

    #[test]
    fn extract_bottom_restricts_action() {
        let f = Field::gf(2, 4).unwrap();
        let k = fixed_point_functor(&f, &FieldAut::frobenius(1), 2, 2).unwrap();
        let b = extract_bottom(&k).unwrap();
        assert_eq!(b, fixed_point_functor(&f, &FieldAut::frobenius(2), 2, 1).unwrap());
    }

    #[test]
    fn extract_top_of_frobenius_example() {
        let k = TambaraSpec::new(2, 1, 1, f2t(), FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap();
        let t = extract_top(&k).unwrap();
        assert_eq!((t.n, t.chain.clone()), (0, vec![D::frob_image(1)]));
    }

    #[test]
    fn glue_round_trip() {
        let k = c4_chain(vec![D::Full, D::frob_image(1), D::frob_image(2)]);
        let g = split(&k).unwrap();
        assert!(glue(&g).unwrap().same_functor(&k));
    }

    #[test]
    fn glue_criteria() {
        let k = c4_chain(vec![D::Full, D::frob_image(1), D::frob_image(1)]);
        let good = split(&k).unwrap();

        let mut g = good.clone();
        g.bottom = TambaraSpec::new(2, 1, 1, f2t(), FieldAut::Trivial, vec![D::Full, D::Full]).unwrap();
        assert!(matches!(glue(&g), Err(Error::Glue { criterion: 1, .. })));

        // the bottom piece acts by Frobenius while the field action is trivial
        let f = Field::gf(2, 2).unwrap();
        let k = fixed_point_functor(&f, &FieldAut::frobenius(1), 2, 1).unwrap();
        let mut g = split(&k).unwrap();
        g.action = FieldAut::Trivial;
        g.top = TambaraSpec::new(2, 0, 0, f.clone(), FieldAut::Trivial, vec![D::fixed([FieldAut::frobenius(1)])]).unwrap();
        assert!(matches!(glue(&g), Err(Error::Glue { criterion: 2, .. })));

        let mut g = good;
        g.top = TambaraSpec::new(2, 1, 1, f2t(), FieldAut::shift(), vec![D::frob_image(1), D::frob_image(1)]).unwrap();
        g.bottom = TambaraSpec::new(2, 1, 1, f2t(), FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap();
        assert!(matches!(glue(&g), Err(Error::Glue { criterion: 3, .. })), "{:?}", glue(&g));
    }

    #[test]
    fn glue_json_shape() {
        let k = c4_chain(vec![D::Full, D::Full, D::frob_image(1)]);
        let js = serde_json::to_value(split(&k).unwrap()).unwrap();
        let keys: Vec<_> = js.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["action", "bottom", "field", "top"]);
    }
}
