mod common;

use proptest::prelude::*;
use skeinst::coeffring::{gcd, LaurentRational, Poly, Variable};

fn atom() -> impl Strategy<Value = LaurentRational> {
    (-3i64..=3, -2i32..=2, -1i32..=2, 0i32..=2, 0i32..=1).prop_map(|(c, a, b, z, s)| {
        let mut x = LaurentRational::from_int(c);
        x = &x * &LaurentRational::u().pow(a).unwrap();
        x = &x * &LaurentRational::v().pow(b).unwrap();
        x = &x * &LaurentRational::z().pow(z).unwrap();
        &x * &LaurentRational::s(s).pow(1).unwrap()
    })
}

fn poly_lr() -> impl Strategy<Value = LaurentRational> {
    prop::collection::vec(atom(), 1..=3).prop_map(|v| v.iter().fold(LaurentRational::zero(), |a, b| &a + b))
}

fn value() -> impl Strategy<Value = LaurentRational> {
    (poly_lr(), poly_lr()).prop_map(|(n, d)| if d.is_zero() { n } else { n.checked_div(&d).unwrap() })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2, 0u32..=1), 1..=3).prop_map(|ts| {
        let mut p = Poly::zero();
        for (c, a, b, z) in ts {
            let t = LaurentRational::from_int(c).numer().clone();
            let m = Poly::var(Variable::U).pow(a).mul(&Poly::var(Variable::V).pow(b)).mul(&Poly::var(Variable::Z).pow(z));
            p = p.add(&t.mul(&m));
        }
        p
    })
}

proptest! {
    #![proptest_config(common::config(96))]

    #[test]
    fn ring_laws(a in value(), b in value(), c in value()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentRational::one(), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in value(), b in value()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        prop_assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_text_round_trip(a in value()) {
        let back: LaurentRational = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), a.to_string());
    }

    #[test]
    fn canonical_form_is_unique(a in value(), b in value()) {
        prop_assume!(!b.is_zero());
        // the same value built along a different path has the same representation
        let x = &(&a + &b) - &b;
        prop_assert_eq!(x.numer(), a.numer());
        prop_assert_eq!(x.denom(), a.denom());
    }

    #[test]
    fn gcd_divides(p in poly(), q in poly(), r in poly()) {
        prop_assume!(!r.is_zero() && !p.is_zero() && !q.is_zero());
        let a = p.mul(&r);
        let b = q.mul(&r);
        let g = gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
        // the common factor r survives
        prop_assert!(g.exact_div(&r).is_some());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in value(), b in value(), w in poly_lr()) {
        let binds = [(Variable::Z, w.clone())].into_iter().collect();
        let sa = a.substitute(&binds);
        let sb = b.substitute(&binds);
        let sab = (&a * &b).substitute(&binds);
        if let (Ok(sa), Ok(sb), Ok(sab)) = (sa, sb, sab) {
            prop_assert_eq!(sab, &sa * &sb);
        }
    }
}
