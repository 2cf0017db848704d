use proptest::prelude::*;
use qvir::{Coeff, Var};

fn poly() -> impl Strategy<Value = Coeff> {
    prop::collection::vec((-3i64..=3, -2i64..=3, -2i64..=3, 0i64..=2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Coeff::zero(), |acc, (c, a, b, k)| {
            acc.add(&Coeff::monomial([a, b, k, 0, 0]).scale_int(c))
        })
    })
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| n.div(&d).ok())
}

fn nonzero() -> impl Strategy<Value = Coeff> {
    coeff().prop_filter("zero", |c| !c.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_a_group(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&Coeff::zero()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn multiplication_and_distributivity(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&Coeff::one()), a.clone());
    }

    #[test]
    fn inverses(a in nonzero(), b in nonzero()) {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        prop_assert_eq!(a.pow(-2).unwrap(), a.mul(&a).inv().unwrap());
        prop_assert!(Coeff::zero().inv().is_err());
    }

    #[test]
    fn equality_is_cross_multiplication(a in coeff(), b in nonzero(), c in nonzero()) {
        let lhs = a.mul(&c).div(&b.mul(&c)).unwrap();
        prop_assert_eq!(lhs.clone(), a.div(&b).unwrap());
        // a/b == x/y exactly when a*y == x*b
        let x = a.mul(&c);
        let y = b.mul(&c);
        prop_assert_eq!(a.mul(&y), x.mul(&b));
        prop_assert_eq!(lhs.to_json(), a.div(&b).unwrap().to_json());
    }

    #[test]
    fn canonical_form_is_idempotent(a in coeff()) {
        let once = Coeff::from_json(&a.to_json()).unwrap();
        let twice = Coeff::from_json(&once.to_json()).unwrap();
        prop_assert_eq!(&once, &a);
        prop_assert_eq!(once.to_json(), twice.to_json());
        prop_assert_eq!(once.to_json(), a.to_json());
        let text = serde_json::to_string(&a).unwrap();
        let back: Coeff = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in coeff(), b in coeff(), s in nonzero(), r in 1i64..4) {
        let bind = [(Var::Q, s), (Var::K, Coeff::from_int(r))];
        let img = |x: &Coeff| x.substitute(&bind);
        if let (Ok(ia), Ok(ib)) = (img(&a), img(&b)) {
            prop_assert_eq!(img(&a.add(&b)).unwrap(), ia.add(&ib));
            prop_assert_eq!(img(&a.mul(&b)).unwrap(), ia.mul(&ib));
        }
    }

    #[test]
    fn identity_substitution(a in coeff()) {
        let bind: Vec<_> = Var::ALL.iter().map(|&v| (v, Coeff::var(v))).collect();
        prop_assert_eq!(a.substitute(&bind).unwrap(), a);
    }
}

#[test]
fn half_integer_powers() {
    let h = Coeff::half_power_qt(1);
    assert_eq!(h.mul(&h), Coeff::q().div(&Coeff::t()).unwrap());
    assert!(h.has_half_exponents());
    assert!(!Coeff::qt(2, -1).has_half_exponents());
}
