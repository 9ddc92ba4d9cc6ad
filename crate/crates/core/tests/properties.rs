use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tambara::aut::FieldAut;
use tambara::construct::{coinduce, fixed_point_functor};
use tambara::field::{ElemRepr, Field, FieldElem};
use tambara::gring::{GRingDescriptor, GRingElem};
use tambara::poly::Poly;
use tambara::spec::TambaraSpec;
use tambara::subfield::{subfield_compare, SubfieldDescriptor as D};
use tambara::validate::{validate, SamplingPolicy, Verdict};

fn fields() -> Vec<Field> {
    vec![
        Field::gf(2, 2).unwrap(),
        Field::gf(2, 3).unwrap(),
        Field::gf(3, 2).unwrap(),
        Field::gf(5, 2).unwrap(),
        Field::ratfunc(2).unwrap(),
        Field::ratfunc(3).unwrap(),
    ]
}

fn field() -> impl Strategy<Value = Field> {
    proptest::sample::select(fields())
}

fn elems(f: &Field, seed: u64, count: usize) -> Vec<FieldElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| f.random(&mut rng, 3)).collect()
}

/// Automorphisms of each field whose behaviour is easy to state.
fn auts(f: &Field) -> Vec<FieldAut> {
    match f {
        Field::Gf { k, .. } => std::iter::once(FieldAut::Trivial).chain((1..*k).map(FieldAut::frobenius)).collect(),
        Field::RatFunc { .. } => vec![
            FieldAut::Trivial,
            FieldAut::shift(),
            FieldAut::mobius(0, 1, 1, 0),
            FieldAut::mobius(1, 0, 1, 1),
        ],
    }
}

/// Specs exercising wraps, coinduction and Frobenius-image levels.
fn specs() -> Vec<TambaraSpec> {
    let gf4 = Field::gf(2, 2).unwrap();
    let gf16 = Field::gf(2, 4).unwrap();
    let f2t = Field::ratfunc(2).unwrap();
    let f3t = Field::ratfunc(3).unwrap();
    vec![
        fixed_point_functor(&gf4, &FieldAut::frobenius(1), 2, 2).unwrap(),
        fixed_point_functor(&gf16, &FieldAut::frobenius(1), 2, 2).unwrap(),
        fixed_point_functor(&f2t, &FieldAut::shift(), 2, 2).unwrap(),
        fixed_point_functor(&f3t, &FieldAut::shift(), 3, 1).unwrap(),
        coinduce(&fixed_point_functor(&gf4, &FieldAut::frobenius(1), 2, 1).unwrap(), 3).unwrap(),
        TambaraSpec::new(2, 2, 2, f2t.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1), D::frob_image(2)]).unwrap(),
        TambaraSpec::new(2, 2, 1, f2t, FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap(),
    ]
}

fn spec() -> impl Strategy<Value = TambaraSpec> {
    proptest::sample::select(specs())
}

/// Clarified specs with trivial action whose characteristic is the group prime.
fn trivial_char_p_specs() -> Vec<TambaraSpec> {
    let f2t = Field::ratfunc(2).unwrap();
    let f3t = Field::ratfunc(3).unwrap();
    let gf9 = Field::gf(3, 2).unwrap();
    vec![
        TambaraSpec::new(2, 1, 1, f2t.clone(), FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap(),
        TambaraSpec::new(2, 2, 2, f2t, FieldAut::Trivial, vec![D::Full, D::frob_image(1), D::frob_image(2)]).unwrap(),
        TambaraSpec::new(3, 1, 1, f3t, FieldAut::Trivial, vec![D::Full, D::frob_image(1)]).unwrap(),
        fixed_point_functor(&gf9, &FieldAut::Trivial, 3, 2).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn frobenius_is_a_ring_map(f in field(), seed in any::<u64>(), m in 0u32..4) {
        let v = elems(&f, seed, 2);
        let (x, y) = (&v[0], &v[1]);
        prop_assert_eq!(f.frobenius(&f.add(x, y), m), f.add(&f.frobenius(x, m), &f.frobenius(y, m)));
        prop_assert_eq!(f.frobenius(&f.mul(x, y), m), f.mul(&f.frobenius(x, m), &f.frobenius(y, m)));
        prop_assert_eq!(f.frobenius(x, m), f.pow_u(x, f.characteristic().pow(m)));
    }

    #[test]
    fn automorphisms_are_invertible_ring_maps(f in field(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let all = auts(&f);
        let a = pick.get(&all);
        let b = &all[(pick.index(all.len()) + 1) % all.len()];
        let v = elems(&f, seed, 2);
        let (x, y) = (&v[0], &v[1]);
        let ap = |z: &FieldElem| a.apply(&f, z).unwrap();
        prop_assert_eq!(ap(&f.add(x, y)), f.add(&ap(x), &ap(y)));
        prop_assert_eq!(ap(&f.mul(x, y)), f.mul(&ap(x), &ap(y)));
        prop_assert_eq!(a.inverse(&f).apply(&f, &ap(x)).unwrap(), x.clone());
        prop_assert_eq!(a.compose(b, &f).apply(&f, x).unwrap(), ap(&b.apply(&f, x).unwrap()));
        let ord = a.order(&f).unwrap();
        prop_assert!(a.power(ord, &f).is_identity(&f));
    }

    #[test]
    fn ratfunc_canonical_form(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(0u64..5, 1..5),
                              b in prop::collection::vec(0u64..5, 1..5), c in prop::collection::vec(0u64..5, 1..4)) {
        let f = Field::ratfunc(p).unwrap();
        let (a, b, c) = (Poly::new(p, a), Poly::new(p, b), Poly::new(p, c));
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = f.ratio(a.clone(), b.clone()).unwrap();
        prop_assert_eq!(&f.ratio(a.mul(&c), b.mul(&c)).unwrap(), &x);
        let FieldElem::Rat(q) = &x else { unreachable!() };
        prop_assert!(q.den().is_monic());
        prop_assert!(q.num().gcd(q.den()).is_one() || q.num().is_zero());
        let wire: ElemRepr = x.clone().into();
        prop_assert_eq!(f.decode(&wire).unwrap(), x);
    }

    #[test]
    fn frobenius_images_nest(p in prop::sample::select(vec![2u64, 3]), m in 1u32..4, seed in any::<u64>()) {
        let f = Field::ratfunc(p).unwrap();
        for x in elems(&f, seed, 4) {
            let y = f.frobenius(&x, m);
            prop_assert!(D::frob_image(m).contains(&f, &y));
            prop_assert!(D::frob_image(m - 1).contains(&f, &y) || m == 1);
        }
        prop_assert!(subfield_compare(&D::frob_image(m + 1), &D::frob_image(m), &f).a_in_b());
        prop_assert!(!subfield_compare(&D::frob_image(m), &D::frob_image(m + 1), &f).a_in_b());
    }

    #[test]
    fn action_composes(k in spec(), seed in any::<u64>(), e1 in -40i64..40, e2 in -40i64..40) {
        let g = k.gring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = g.random(&mut rng, 2);
        prop_assert_eq!(g.act(e1, &g.act(e2, &v)), g.act(e1 + e2, &v));
        prop_assert_eq!(g.act(g.group_order() as i64, &v), v.clone());
        let (w, u) = (g.random(&mut rng, 2), g.act(e1, &g.mul(&v, &v)));
        prop_assert_eq!(g.act(e1, &g.add(&v, &w)), g.add(&g.act(e1, &v), &g.act(e1, &w)));
        prop_assert_eq!(u, g.mul(&g.act(e1, &v), &g.act(e1, &v)));
    }

    #[test]
    fn orbit_sums_add_and_products_multiply(k in spec(), seed in any::<u64>()) {
        let g = k.gring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for l in 0..=k.n {
            for j in 0..=l {
                let u = k.sample_level(j, &mut rng, 2);
                let v = k.sample_level(j, &mut rng, 2);
                let s = |x: &GRingElem| g.orbit_sum(j, l, x).unwrap();
                let pr = |x: &GRingElem| g.orbit_product(j, l, x).unwrap();
                prop_assert_eq!(s(&g.add(&u, &v)), g.add(&s(&u), &s(&v)));
                prop_assert_eq!(pr(&g.mul(&u, &v)), g.mul(&pr(&u), &pr(&v)));
                prop_assert!(g.fixed_by(l, &s(&u)) && g.fixed_by(l, &pr(&u)));
            }
        }
    }

    #[test]
    fn transfers_and_norms_compose(k in spec(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..=k.n {
            for j in 0..=i {
                for l in 0..=j {
                    let x = k.elem(l, k.sample_level(l, &mut rng, 2)).unwrap();
                    let tr2 = k.tr(j, i, &k.tr(l, j, &x).unwrap()).unwrap();
                    prop_assert_eq!(tr2, k.tr(l, i, &x).unwrap());
                    let nm2 = k.norm(j, i, &k.norm(l, j, &x).unwrap()).unwrap();
                    prop_assert_eq!(nm2, k.norm(l, i, &x).unwrap());
                    let up = k.elem(i, k.sample_level(i, &mut rng, 2)).unwrap();
                    let down = k.res(j, l, &k.res(i, j, &up).unwrap()).unwrap();
                    prop_assert_eq!(down, k.res(i, l, &up).unwrap());
                }
            }
        }
    }

    #[test]
    fn trivial_action_norm_is_frobenius_and_transfer_vanishes(
        k in proptest::sample::select(trivial_char_p_specs()),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = &k.field;
        for i in 1..=k.n {
            for j in 0..i {
                let x = k.elem(j, k.sample_level(j, &mut rng, 2)).unwrap();
                let nm = k.norm(j, i, &x).unwrap();
                let frob: Vec<FieldElem> = x.value.coords.iter().map(|c| f.frobenius(c, i - j)).collect();
                prop_assert_eq!(&nm.value.coords, &frob);
                prop_assert_eq!(k.tr(j, i, &x).unwrap().value, k.gring().zero());
            }
        }
    }

    #[test]
    fn literal_wrap_matches(p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        // one coordinate: the generator is the wrap itself
        let f = Field::ratfunc(p).unwrap();
        let g = GRingDescriptor::new(p, 1, 1, f.clone(), FieldAut::shift()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = g.random(&mut rng, 2);
        let w = FieldAut::shift().apply(&f, &v.coords[0]).unwrap();
        prop_assert_eq!(&g.act(1, &v).coords[0], &w);
    }

    #[test]
    fn spec_json_and_canonical_forms(k in spec(), seed in any::<u64>()) {
        let back = TambaraSpec::from_json(&k.to_json()).unwrap();
        prop_assert_eq!(&back, &k);
        let c = k.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(c.same_functor(&k));
        let report = validate(&k, &SamplingPolicy::with_seed(seed)).unwrap();
        prop_assert_eq!(report.verdict == Verdict::ValidFieldLike, report.failures.is_empty());
        prop_assert!(report.is_field_like());
    }
}
