use proptest::prelude::*;
use qplane::autgroup::{Auto, Sl2};
use qplane::qalgebra::{LineElement, PlaneElement};
use qplane::scalars::{Scalar, Unit};
use qplane::uqsl2::{pbw_normalize, pbw_normalize_with, Generator, PBWElement, Strategy as Order};

fn coeff() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -2i64..=2, 0i64..=1)
        .prop_filter("nonzero", |(c, _, _)| *c != 0)
        .prop_map(|(c, e, t)| {
            let tv = Scalar::var("t").unwrap().pow(t).unwrap();
            Scalar::from_int(c) * Scalar::q_pow(e) + tv
        })
        .prop_filter("nonzero sum", |s| !s.is_zero())
}

fn plane() -> impl Strategy<Value = PlaneElement> {
    prop::collection::vec(((-4i64..=4, -4i64..=4), coeff()), 1..4).prop_map(PlaneElement::from_terms)
}

fn line() -> impl Strategy<Value = LineElement> {
    prop::collection::vec((-4i64..=4, coeff()), 1..4).prop_map(LineElement::from_terms)
}

fn word() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(
        prop_oneof![Just(Generator::K), Just(Generator::Kinv), Just(Generator::E), Just(Generator::F)],
        0..=6,
    )
}

fn sl2() -> impl Strategy<Value = Sl2> {
    prop::collection::vec(0usize..3, 0..5).prop_map(|idx| {
        let gens = [Sl2::new(1, 1, 0, 1).unwrap(), Sl2::new(0, -1, 1, 0).unwrap(), Sl2::new(1, 0, -1, 1).unwrap()];
        idx.into_iter().fold(Sl2::IDENTITY, |acc, i| acc.mul(&gens[i]))
    })
}

fn unit() -> impl Strategy<Value = Unit> {
    (prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], -2i64..=2, -2i64..=2).prop_map(|(c, a, b)| {
        Unit::from_int(c).unwrap().mul(&Unit::q_pow(a)).mul(&Unit::var("t").unwrap().pow(b))
    })
}

fn auto() -> impl Strategy<Value = Auto> {
    (sl2(), unit(), unit()).prop_map(|(s, a, b)| Auto::new(s, a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_is_associative(a in plane(), b in plane(), c in plane()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn plane_distributes(a in plane(), b in plane(), c in plane()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
    }

    #[test]
    fn plane_has_no_zero_divisors(a in plane(), b in plane()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert!(!a.mul(&b).is_zero());
    }

    #[test]
    fn monomial_powers_add(c in coeff(), i0 in -3i64..=3, j0 in -3i64..=3, i in -5i64..=5, j in -5i64..=5) {
        let m = PlaneElement::monomial(c, i0, j0);
        let lhs = m.monomial_pow(i + j).unwrap();
        let rhs = m.monomial_pow(i).unwrap().mul(&m.monomial_pow(j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn line_commutes(a in line(), b in line()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn pbw_normal_form_is_confluent(w1 in word(), w2 in word()) {
        let mut w = w1.clone();
        w.extend(w2.iter().copied());
        let left = pbw_normalize_with(&w, Order::Leftmost);
        let right = pbw_normalize_with(&w, Order::Rightmost);
        prop_assert_eq!(&left, &right);
        let split = pbw_normalize(&w1).mul(&pbw_normalize(&w2));
        prop_assert_eq!(&left, &split);
    }

    #[test]
    fn pbw_product_is_associative(w1 in word(), w2 in word(), w3 in word()) {
        let (a, b, c) = (pbw_normalize(&w1), pbw_normalize(&w2), pbw_normalize(&w3));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&PBWElement::one()), a);
    }

    #[test]
    fn automorphisms_are_multiplicative(phi in auto(), a in plane(), b in plane()) {
        prop_assert_eq!(phi.apply(&a.mul(&b)), phi.apply(&a).mul(&phi.apply(&b)));
    }

    #[test]
    fn composition_and_inverse(phi in auto(), psi in auto(), a in plane()) {
        prop_assert_eq!(phi.compose(&psi).apply(&a), phi.apply(&psi.apply(&a)));
        prop_assert_eq!(phi.inverse().apply(&phi.apply(&a)), a);
    }

    #[test]
    fn semidirect_law(s in sl2(), mu in unit(), nu in unit(), a in plane()) {
        let sig = Auto::matrix(s);
        let lhs = sig.inverse().compose(&Auto::units(mu.clone(), nu.clone())).compose(&sig);
        let (ma, mb) = sig.conjugate_units(&mu, &nu);
        prop_assert_eq!(lhs.apply(&a), Auto::units(ma, mb).apply(&a));
    }

    #[test]
    fn small_trace_orders(idx in 0usize..3, a in unit(), b in unit()) {
        let s = [Sl2::new(-1, -1, 1, 0).unwrap(), Sl2::new(0, -1, 1, 0).unwrap(), Sl2::new(1, -1, 1, 0).unwrap()][idx];
        let d = Auto::new(s, a, b).order(24);
        prop_assert!(matches!(d, Some(d) if d > 2), "{:?}", d);
    }
}
