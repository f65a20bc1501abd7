use rug::ops::Pow;
use planarcount::pseries::{newton_scalar, BSeries, Rat, USeries};
use planarcount::Error;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rat::from((n, d)))
}

fn useries(order: usize) -> impl Strategy<Value = USeries> {
    prop::collection::vec(rat(), order + 1).prop_map(USeries::from_coeffs)
}

fn bseries(n: usize, m: usize) -> impl Strategy<Value = BSeries> {
    prop::collection::vec(rat(), (n + 1) * (m + 1)).prop_map(move |v| {
        BSeries::from_fn(n, m, |k, q| v[k * (m + 1) + q].clone())
    })
}

fn with_constant(s: &USeries, c: i64) -> USeries {
    let mut coeffs = s.coeffs().to_vec();
    coeffs[0] = Rat::from(c);
    USeries::from_coeffs(coeffs)
}

fn bwith_constant(s: &BSeries, c: i64) -> BSeries {
    let mut t = s.clone();
    t.set_coeff(0, 0, Rat::from(c));
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms_univariate(a in useries(16), b in useries(16), c in useries(16)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn ring_axioms_bivariate(a in bseries(5, 6), b in bseries(5, 6), c in bseries(5, 6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn unit_division_round_trip(a in useries(12), b in useries(12)) {
        let b = with_constant(&b, 3);
        prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
        prop_assert_eq!(b.div(&b).unwrap(), USeries::one(12));
    }

    #[test]
    fn exp_log_round_trip(s in useries(12), t in bseries(4, 5)) {
        let s = with_constant(&s, 0);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
        let t = bwith_constant(&t, 0);
        prop_assert_eq!(t.exp().unwrap().log().unwrap(), t);
    }

    #[test]
    fn calculus_round_trip(s in useries(10), t in bseries(4, 6)) {
        prop_assert_eq!(s.integrate().derive(), s);
        prop_assert_eq!(t.integrate_y().derive_y(), t.clone());
        prop_assert_eq!(t.integrate_x().derive_x(), t);
    }

    #[test]
    fn newton_residual_vanishes(s in useries(10)) {
        // F = x·exp(S·F) has a unique solution with F(0) = 0.
        let n = 10;
        let x = USeries::var(n);
        let sol = newton_scalar(
            |f: &USeries| Ok(f - &(&x * &(&s * f).exp()?)),
            |f: &USeries| {
                let e = (&s * f).exp()?;
                Ok(&USeries::one(n) - &(&x * &(&s * &e)))
            },
            &USeries::zero(n),
            n,
        ).unwrap();
        let residual = &sol - &(&x * &(&s * &sol).exp().unwrap());
        prop_assert!(residual.is_zero());
    }
}

#[test]
fn polynomial_identities() {
    let one_plus = USeries::from_poly(&[Rat::from(1), Rat::from(1)], 5);
    let one_minus = USeries::from_poly(&[Rat::from(1), Rat::from(-1)], 5);
    assert_eq!(&one_plus * &one_minus, USeries::from_poly(&[1, 0, -1].map(Rat::from), 5));
    let geo = USeries::from_poly(&[Rat::from(1), Rat::from(1)], 3).inverse().unwrap();
    assert_eq!(geo, USeries::from_poly(&[1, -1, 1, -1].map(Rat::from), 3));
}

#[test]
fn precondition_errors() {
    let s = USeries::var(4);
    assert!(matches!(s.inverse(), Err(Error::NotAUnit)));
    assert!(matches!(USeries::one(4).exp(), Err(Error::BadConstantTerm(_))));
    assert!(matches!(USeries::var(4).log(), Err(Error::BadConstantTerm(_))));
    assert!(matches!(USeries::var(4).compose(&USeries::one(4)), Err(Error::Composition(_))));
}

#[test]
fn composition_examples() {
    let n = 6;
    let geometric = USeries::from_poly(&[Rat::from(1), Rat::from(-1)], n).inverse().unwrap();
    let x2 = USeries::var(5).shift(1);
    assert_eq!(
        geometric.truncate(5).compose(&x2).unwrap(),
        USeries::from_poly(&[1, 0, 1, 0, 1, 0].map(Rat::from), 5)
    );
    // log(1+u) ∘ (exp(x) − 1) = x
    let log1p = USeries::from_poly(&[Rat::from(1), Rat::from(1)], n).log().unwrap();
    let expm1 = &USeries::var(n).exp().unwrap() - &USeries::one(n);
    assert_eq!(log1p.compose(&expm1).unwrap(), USeries::var(n));
    let s = USeries::from_poly(&[0, 2, -1, 7].map(Rat::from), n);
    assert_eq!(USeries::var(n).compose(&s).unwrap(), s);
}

#[test]
fn lagrange_coefficients() {
    let n = 8;
    let x = USeries::var(n);
    let f = newton_scalar(
        |f: &USeries| Ok(f - &(&x * &f.exp()?)),
        |f: &USeries| Ok(&USeries::one(n) - &(&x * &f.exp()?)),
        &USeries::zero(n),
        n,
    )
    .unwrap();
    for k in 1..=n as u32 {
        let expect = Rat::from((rug::Integer::from(k).pow(k - 1), rug::Integer::from(rug::Integer::factorial(k))));
        assert_eq!(f.coeff(k as usize).unwrap(), &expect);
    }
}
