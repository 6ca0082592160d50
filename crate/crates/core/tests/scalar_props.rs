use num_complex::Complex64;
use proptest::prelude::*;
use qplane::scalars::{approx_eq, geom_ratio, Assignment, Scalar, Unit};

fn small_poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0i64..=3, 0i64..=2), 1..4).prop_map(|terms| {
        let mut acc = Scalar::zero();
        for (c, eq, et) in terms {
            let t = Scalar::var("t").unwrap().pow(et).unwrap();
            acc = acc + Scalar::from_int(c) * Scalar::q_pow(eq) * t;
        }
        acc
    })
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

fn small_unit() -> impl Strategy<Value = Unit> {
    (prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], -3i64..=3, -2i64..=2)
        .prop_filter("not one", |(c, a, b)| !(*c == 1 && *a == 0 && *b == 0))
        .prop_map(|(c, a, b)| {
            Unit::from_int(c)
                .unwrap()
                .mul(&Unit::q_pow(a))
                .mul(&Unit::var("t").unwrap().pow(b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!((&a + &b) + c.clone(), a + (b + c));
    }

    #[test]
    fn multiplication_distributes(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn canonical_equality_is_structural(a in small_scalar(), b in small_scalar()) {
        let s1 = &a + &b;
        let s2 = &b + &a;
        prop_assert_eq!(&s1, &s2);
        prop_assert_eq!(s1.to_string(), s2.to_string());
        prop_assert!((&s1 - &s2).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn geom_ratio_telescopes(g in small_unit(), p in -12i64..=12) {
        let gs = g.to_scalar();
        let lhs = geom_ratio(&g, p).unwrap() * (&gs - &Scalar::one());
        let rhs = gs.pow(p).unwrap() - Scalar::one();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_multiplicative(a in small_scalar(), b in small_scalar(), tv in 0.4f64..2.5) {
        let pt = Assignment::default_q().set("t", Complex64::new(tv, 0.3)).unwrap();
        let ab = &a * &b;
        if let (Ok(ea), Ok(eb), Ok(eab)) = (pt.eval(&a), pt.eval(&b), pt.eval(&ab)) {
            prop_assert!(approx_eq(eab, ea * eb, 1e-9), "{} vs {}", eab, ea * eb);
        }
        let s = &a + &b;
        if let (Ok(ea), Ok(eb), Ok(es)) = (pt.eval(&a), pt.eval(&b), pt.eval(&s)) {
            prop_assert!(approx_eq(es, ea + eb, 1e-9));
        }
    }
}
