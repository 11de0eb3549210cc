use proptest::prelude::*;

use vtc_core::catdata::{CategorySpec, Label, SimpleLabel};
use vtc_core::exact::{IntPoly, Phase, Poly, Rat, RatFunc};
use vtc_core::fusion::{ring_mul, FusionElement};

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| Rat::frac(p, q))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 0..4).prop_map(Poly::new)
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn vir_label() -> impl Strategy<Value = SimpleLabel> {
    (1u32..=6, 1u32..=6).prop_map(|(r, s)| Label::VirasoroT(r, s))
}

fn svir_label() -> impl Strategy<Value = SimpleLabel> {
    (1u32..=6, 1u32..=6).prop_filter_map("n+m even", |(n, m)| ((n + m) % 2 == 0).then_some(Label::SuperVir(n, m)))
}

proptest! {
    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFunc::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), RatFunc::one());
        }
    }

    #[test]
    fn substitution_is_functorial(a in ratfunc(), b in ratfunc(), g in ratfunc(), x in rat()) {
        if let (Ok(ag), Ok(bg)) = (a.substitute(&g), b.substitute(&g)) {
            prop_assert_eq!((&a + &b).substitute(&g).unwrap(), &ag + &bg);
            prop_assert_eq!((&a * &b).substitute(&g).unwrap(), &ag * &bg);
            if let Ok(gx) = g.eval(&x) {
                if let (Ok(lhs), Ok(rhs)) = (ag.eval(&x), a.eval(&gx)) {
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
        prop_assert_eq!(a.substitute(&RatFunc::var()).unwrap(), a);
    }

    #[test]
    fn ratfunc_text_roundtrip(a in ratfunc()) {
        let text = a.to_string_in("s");
        prop_assert_eq!(RatFunc::parse(&text, "s").unwrap(), a);
    }

    #[test]
    fn intpoly_decision_matches_brute_force(coeffs in prop::collection::vec(rat(), 0..4)) {
        let p = IntPoly::new(coeffs);
        let brute = (1..=100).find(|&r| !p.eval(r).is_integer());
        prop_assert_eq!(p.first_non_integer(), brute);
        prop_assert_eq!(p.integer_valued_on_positives(), brute.is_none());
    }

    #[test]
    fn intpoly_interpolation_recovers_values(values in prop::collection::vec(rat(), 1..5)) {
        let p = IntPoly::interpolate(&values);
        for (i, v) in values.iter().enumerate() {
            prop_assert_eq!(&p.eval(i as i64 + 1), v);
        }
    }

    #[test]
    fn phases_form_a_group(a in rat(), b in rat(), c in rat()) {
        let (pa, pb, pc) = (Phase::from_exponent(&a), Phase::from_exponent(&b), Phase::from_exponent(&c));
        prop_assert_eq!(&(&pa + &pb) + &pc, &pa + &(&pb + &pc));
        prop_assert_eq!(&pa + &pb, &pb + &pa);
        prop_assert_eq!(&pa + &Phase::trivial(), pa.clone());
        prop_assert!((&pa + &(-&pa)).is_trivial());
        prop_assert_eq!(Phase::from_exponent(&(&a + &Rat::from_int(3))), pa);
    }

    #[test]
    fn label_text_roundtrip(x in vir_label(), y in svir_label()) {
        for l in [x.clone(), y, Label::pair(x.clone(), Label::VirasoroKp2(2, 3))] {
            prop_assert_eq!(l.to_string().parse::<SimpleLabel>().unwrap(), l);
        }
    }

    #[test]
    fn virasoro_ring_is_commutative_and_associative(a in vir_label(), b in vir_label(), c in vir_label()) {
        let cat = CategorySpec::builtin("virasoro-t").unwrap();
        let el = |x: &SimpleLabel| FusionElement::simple(x.clone());
        prop_assert_eq!(ring_mul(&cat, &el(&a), &el(&b)).unwrap(), ring_mul(&cat, &el(&b), &el(&a)).unwrap());
        let left = ring_mul(&cat, &ring_mul(&cat, &el(&a), &el(&b)).unwrap(), &el(&c)).unwrap();
        let right = ring_mul(&cat, &el(&a), &ring_mul(&cat, &el(&b), &el(&c)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn supervir_ring_is_commutative_and_associative(a in svir_label(), b in svir_label(), c in svir_label()) {
        let cat = CategorySpec::builtin("supervir").unwrap();
        let el = |x: &SimpleLabel| FusionElement::simple(x.clone());
        prop_assert_eq!(ring_mul(&cat, &el(&a), &el(&b)).unwrap(), ring_mul(&cat, &el(&b), &el(&a)).unwrap());
        let left = ring_mul(&cat, &ring_mul(&cat, &el(&a), &el(&b)).unwrap(), &el(&c)).unwrap();
        let right = ring_mul(&cat, &el(&a), &ring_mul(&cat, &el(&b), &el(&c)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
