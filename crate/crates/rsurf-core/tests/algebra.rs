use num_complex::Complex64 as C;
use proptest::prelude::*;
use rsurf_core::algebra::*;
use rsurf_core::error::Error;
use std::collections::BTreeMap;

fn bp(s: &str) -> BivariatePoly {
    parse_poly(s).unwrap()
}

fn uni(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

#[test]
fn parse_examples() {
    let p = bp("y^2 - x^2 + 4");
    let want: Vec<((i32, i32), Rational)> = vec![((0, 0), rat_int(4)), ((0, 2), rat_int(1)), ((2, 0), rat_int(-1))];
    let mut got = p.sorted_terms();
    got.sort();
    assert_eq!(got, want);
    assert!(bp("0").is_zero());
    assert!(bp("x - x").is_zero());
    assert_eq!(bp("3/4*x").coeff(1, 0), rat(3, 4));
    assert_eq!(bp("(x + y)^2"), bp("x^2 + 2*x*y + y^2"));
}

#[test]
fn parse_substitution() {
    let mut subs = BTreeMap::new();
    subs.insert("c".to_string(), rat_int(3));
    let p = parse_poly_with("y^2 - x^3 - c", &subs).unwrap();
    assert_eq!(p.coeff(0, 0), rat_int(-3));
    assert!(matches!(parse_poly("y^2 - c"), Err(Error::UnknownIdentifier { .. })));
}

#[test]
fn parse_errors() {
    for s in ["", "x +", "x^", "(x", "x / 0", "x / y", "2 $ x", "x^-1"] {
        assert!(parse_poly(s).is_err(), "{s:?} parsed");
    }
}

#[test]
fn resultant_examples() {
    let r = resultant_y(&bp("y^2 - x^2 + 4"), &bp("2*y")).unwrap();
    assert_eq!(r, uni(&[16, 0, -4]));
    let r = resultant_y(&bp("y - x"), &bp("1")).unwrap();
    assert_eq!(r, uni(&[1]));
    let r = resultant_y(&bp("y^2 - x^6 + 1"), &bp("2*y")).unwrap();
    assert_eq!(r, uni(&[4, 0, 0, 0, 0, 0, -4]));
}

#[test]
fn discriminant_is_resultant_with_derivative() {
    for s in ["y^2 - x^3 + x", "y^3 + x*y + x^2 - 1", "x*y^2 + y + x^3"] {
        let p = bp(s);
        assert_eq!(discriminant_y(&p).unwrap(), resultant_y(&p, &p.deriv_y()).unwrap(), "{s}");
    }
}

fn sorted(mut v: Vec<C>) -> Vec<C> {
    v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    v
}

#[test]
fn root_examples() {
    let r = roots_univariate(&uni(&[16, 0, -4]), 1e-12).unwrap();
    let v = sorted(r.iter().map(|r| r.value).collect());
    assert_eq!(v.len(), 2);
    assert!((v[0] + 2.0).norm() < 1e-12 && (v[1] - 2.0).norm() < 1e-12);
    let r = roots_univariate(&uni(&[-1, 0, 0, 0, 1]), 1e-12).unwrap();
    let v = sorted(r.iter().map(|r| r.value).collect());
    let want = [C::new(-1.0, 0.0), C::new(0.0, -1.0), C::new(0.0, 1.0), C::new(1.0, 0.0)];
    for (a, b) in v.iter().zip(want) {
        assert!((a - b).norm() < 1e-12);
    }
    assert!(roots_univariate(&uni(&[5]), 1e-12).unwrap().is_empty());
    assert!(roots_univariate(&UniPoly::zero(), 1e-12).is_err());
}

#[test]
fn multiplicities() {
    // (x - 1)^3 (x + 2)
    let p = &uni(&[-1, 1]).pow(3) * &uni(&[2, 1]);
    let r = roots_univariate(&p, 1e-12).unwrap();
    assert_eq!(r.len(), 2);
    for root in r {
        let m = if (root.value - 1.0).norm() < 1e-10 { 3 } else { 1 };
        assert_eq!(root.multiplicity, m);
    }
}

fn small_uni() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 1..6).prop_map(|c| UniPoly::from_ints(&c))
}

fn small_bi() -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec(((0i32..5, 0i32..4), -7i64..=7, 1i64..4), 0..7)
        .prop_map(|t| BivariatePoly::from_terms(t.into_iter().map(|((i, j), n, d)| ((i, j), rat(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn display_parse_round_trip(p in small_bi()) {
        let q = parse_poly(&p.to_string()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn div_rem_identity(a in small_uni(), d in small_uni()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides(a in small_uni(), b in small_uni()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).1.is_zero());
        prop_assert!(b.div_rem(&g).1.is_zero());
    }

    // P = y^2 + c(x) y + a(x), G = b1(x) y + b0(x): the resultant is
    // prod G(y_i) = b1^2 a - b0 b1 c + b0^2 by Vieta.
    #[test]
    fn resultant_matches_vieta(a in small_uni(), c in small_uni(), b0 in small_uni(), b1 in small_uni()) {
        prop_assume!(!b1.is_zero());
        let lift = |u: &UniPoly, j: i32| BivariatePoly::from_terms(u.coeffs().iter().enumerate().map(|(i, r)| ((i as i32, j), r.clone())));
        let p = &(&BivariatePoly::monomial(rat_int(1), 0, 2) + &lift(&c, 1)) + &lift(&a, 0);
        let g = &lift(&b1, 1) + &lift(&b0, 0);
        let want = &(&(&(&b1 * &b1) * &a) - &(&(&b0 * &b1) * &c)) + &(&b0 * &b0);
        prop_assert_eq!(resultant_y(&p, &g).unwrap(), want);
    }

    #[test]
    fn roots_of_products(rs in prop::collection::vec(-6i64..=6, 1..6)) {
        let mut p = uni(&[1]);
        for r in &rs {
            p = &p * &uni(&[-r, 1]);
        }
        let got = roots_univariate(&p, 1e-12).unwrap();
        let total: usize = got.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, rs.len());
        for r in &rs {
            prop_assert!(got.iter().any(|g| (g.value - *r as f64).norm() < 1e-9));
        }
    }
}
