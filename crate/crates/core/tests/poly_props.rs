mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use regulus::poly::{
    arithmetic_membership_certificate, membership_certificate, parse_poly, parse_poly_over,
    triangular_divide, Monomial, MultiPoly, TriangularPoint,
};
use regulus::sample::{random_poly, variable_names};
use regulus::{Fp, PrimeField, Rational, RationalField};

fn int_coeff(r: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(r.random_range(-5i64..=5))
}

fn zz(text: &str, v: &[&str]) -> MultiPoly<BigInt> {
    parse_poly(text, &vars(v)).unwrap()
}

/// Triangular-monic generators over ℤ with level degrees in 1..=2.
fn random_int_point(r: &mut ChaCha8Rng, n: usize) -> TriangularPoint<BigInt> {
    let one = BigInt::from(1);
    let gens = (0..n)
        .map(|i| {
            let d = r.random_range(1..=2);
            let mut g = MultiPoly::term(Monomial::var(n, i, d), one.clone());
            for e in 0..d {
                let tail = random_poly(r, n, i, 2, 2, int_coeff);
                g = g.add(&tail.mul_term(&Monomial::var(n, i, e), &one));
            }
            g
        })
        .collect();
    TriangularPoint::new(gens).unwrap()
}

#[test]
fn parse_examples() {
    let f = zz("x*y - 2", &["x", "y"]);
    let terms: Vec<(Vec<u32>, BigInt)> = f
        .terms()
        .map(|(m, c)| (m.exps().to_vec(), c.clone()))
        .collect();
    assert_eq!(
        terms,
        vec![
            (vec![0, 0], BigInt::from(-2)),
            (vec![1, 1], BigInt::from(1))
        ]
    );
    assert!(zz("0", &["x"]).is_zero());
    let g = zz("x^3 + x + 3", &["x"]);
    assert_eq!(g.num_terms(), 3);
    assert_eq!(
        g.coefficient(&Monomial::new(vec![3])),
        Some(&BigInt::from(1))
    );
    assert_eq!(g.constant_term(), Some(&BigInt::from(3)));
}

#[test]
fn parse_errors_carry_positions() {
    let v = vars(&["x", "y"]);
    for (text, col) in [
        ("x + z", 5),
        ("x^-1", 3),
        ("x * (y + 1", 11),
        ("x y", 3),
        ("2 +", 4),
    ] {
        match parse_poly(text, &v).unwrap_err() {
            regulus::Error::Parse { position, .. } => assert_eq!(position, col, "{text}"),
            other => panic!("{text}: unexpected {other:?}"),
        }
    }
}

#[test]
fn derivative_examples() {
    let v = ["x", "y"];
    assert_eq!(
        zz("x^3 + x + 3", &["x"]).partial_derivative(0),
        zz("3*x^2 + 1", &["x"])
    );
    assert!(zz("7", &["x"]).partial_derivative(0).is_zero());
    assert_eq!(zz("x*y - 2", &v).partial_derivative(1), zz("x", &v));
}

#[test]
fn division_examples() {
    let pt = TriangularPoint::with_prime(vec![zz("x^2 + 1", &["x"])], 3).unwrap();
    let d = triangular_divide(&zz("x^3 + x + 3", &["x"]), &pt);
    assert_eq!(
        (d.quotients, d.remainder),
        (vec![zz("x", &["x"])], zz("3", &["x"]))
    );

    let v = vars(&["x", "y"]);
    let qq = |s: &str| parse_poly_over::<Rational>(s, &v, &RationalField).unwrap();
    let pt = TriangularPoint::new(vec![qq("x^2 - 2"), qq("y^2 - x")]).unwrap();
    let d = triangular_divide(&qq("x^2 - 2"), &pt);
    assert_eq!(d.quotients, vec![qq("1"), qq("0")]);
    let d = triangular_divide(&qq("y^2 - x^3 + x"), &pt);
    assert_eq!(d.quotients, vec![qq("-x"), qq("1")]);
    assert!(d.remainder.is_zero());
}

#[test]
fn membership_examples() {
    let pt = TriangularPoint::with_prime(vec![zz("x^2 + 1", &["x"])], 3).unwrap();
    assert!(arithmetic_membership_certificate(
        &zz("x^3 + x + 3", &["x"]),
        &pt
    ));
    assert!(!arithmetic_membership_certificate(&zz("1", &["x"]), &pt));

    let v = vars(&["x", "y"]);
    let qq = |s: &str| parse_poly_over::<Rational>(s, &v, &RationalField).unwrap();
    let pt = TriangularPoint::new(vec![qq("x^2 - 2"), qq("y^2 - x")]).unwrap();
    assert!(membership_certificate(&qq("y^2 - x^3 + x"), &pt));
    assert!(!membership_certificate(&qq("1"), &pt));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn division_is_exact(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let point = random_int_point(&mut r, n);
        let f = random_poly(&mut r, n, n, 4, 6, int_coeff);
        let d = triangular_divide(&f, &point);
        let mut rebuilt = d.remainder.clone();
        for (h, g) in d.quotients.iter().zip(point.generators()) {
            rebuilt = rebuilt.add(&h.mul(g));
        }
        prop_assert_eq!(&rebuilt, &f);
        for (i, &deg) in point.degrees().iter().enumerate() {
            prop_assert!(d.remainder.degree_in(i) < deg);
        }
    }

    #[test]
    fn derivative_rules(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let f = random_poly(&mut r, n, n, 4, 5, int_coeff);
        let g = random_poly(&mut r, n, n, 4, 5, int_coeff);
        for j in 0..n {
            let (df, dg) = (f.partial_derivative(j), g.partial_derivative(j));
            prop_assert_eq!(f.add(&g).partial_derivative(j), df.add(&dg));
            prop_assert_eq!(f.mul(&g).partial_derivative(j), f.mul(&dg).add(&g.mul(&df)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_round_trips(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let names = variable_names(n);
        let f = random_poly(&mut r, n, n, 5, 6, int_coeff);
        let printed = f.display(&names).to_string();
        prop_assert_eq!(parse_poly(&printed, &names).unwrap(), f);

        let f7 = PrimeField::new(7).unwrap();
        let g = random_poly(&mut r, n, n, 5, 6, |r: &mut ChaCha8Rng| f7.elem(r.random_range(0..7)));
        let printed = g.display(&names).to_string();
        prop_assert_eq!(parse_poly_over::<Fp>(&printed, &names, &f7).unwrap(), g);
    }
}
