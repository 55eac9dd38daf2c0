use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsurf_core::algebra::{cpoly_eval, parse_poly, rat, rat_int, BivariatePoly, UniPoly};
use rsurf_core::error::Error;
use rsurf_core::fundform::*;
use rsurf_core::newton::polytope;

fn split(c: &[i64]) -> HyperellipticSplit {
    hyperelliptic_split(&UniPoly::from_ints(c)).unwrap()
}

#[test]
fn split_examples() {
    let s = split(&[-4, 0, 1]);
    assert_eq!((s.u, s.v), (UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[-4])));
    let s = split(&[-1, 0, 0, 0, 1]);
    assert_eq!((s.u, s.v), (UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[-1])));
    let s = split(&[4, 0, -5, 0, 1]);
    assert_eq!(s.u, UniPoly::new(vec![rat(-5, 2), rat_int(0), rat_int(1)]));
    assert_eq!(s.v, UniPoly::new(vec![rat(-9, 4)]));
}

#[test]
fn split_rejects() {
    assert!(matches!(hyperelliptic_split(&UniPoly::from_ints(&[1, 0, 0, 1])), Err(Error::OddDegree)));
    assert!(matches!(hyperelliptic_split(&UniPoly::from_ints(&[1, 0, 2])), Err(Error::NonSquareLeading)));
    assert!(hyperelliptic_split(&UniPoly::zero()).is_err());
}

#[test]
fn correction_examples() {
    let q = correction_polynomial(&parse_poly("y - x").unwrap()).unwrap();
    assert!(q.q4.is_zero());
    let q = correction_polynomial(&parse_poly("y^2 - x^2 + 4").unwrap()).unwrap();
    assert!(q.is_symmetric());
    assert!(correction_polynomial(&BivariatePoly::zero()).is_err());
}

fn curve_point(q: &UniPoly, x: C) -> (C, C) {
    (x, cpoly_eval(&q.to_complex(), x).sqrt())
}

fn rand_c(rng: &mut ChaCha8Rng, r: f64) -> C {
    C::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

// the closed form, evaluated directly
fn b_hyp_direct(s: &HyperellipticSplit, (x, y): (C, C), (xp, yp): (C, C)) -> C {
    let (u, v) = (s.u.to_complex(), s.v.to_complex());
    let num = y * yp + cpoly_eval(&u, x) * cpoly_eval(&u, xp) + (cpoly_eval(&v, x) + cpoly_eval(&v, xp)) * 0.5;
    num / (y * yp * 2.0 * (x - xp) * (x - xp))
}

#[test]
fn hyperelliptic_b_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in [vec![-4i64, 0, 1], vec![1, 2, 0, -3, 1], vec![-1, 0, 0, 0, 0, 0, 1]] {
        let s = split(&c);
        let sn = s.to_numeric();
        for _ in 0..50 {
            let p = curve_point(&s.q, rand_c(&mut rng, 2.0));
            let mut q = curve_point(&s.q, rand_c(&mut rng, 2.0));
            if rng.gen_bool(0.5) {
                q.1 = -q.1;
            }
            let got = hyperelliptic_b(&sn, p, q).unwrap();
            let want = b_hyp_direct(&s, p, q);
            assert!((got - want).norm() <= 1e-9 * want.norm().max(1.0), "{c:?}: {got} vs {want}");
        }
    }
}

#[test]
fn hyperelliptic_b_smooth_across_antidiagonal() {
    let s = split(&[1, 2, 0, -3, 1]);
    let sn = s.to_numeric();
    let (x, y) = curve_point(&s.q, C::new(0.7, 0.3));
    let at = hyperelliptic_b(&sn, (x, y), (x, -y)).unwrap();
    for h in [1e-3, 1e-4] {
        let (xp, yp) = curve_point(&s.q, x + h);
        let yp = if (yp + y).norm() < (yp - y).norm() { yp } else { -yp };
        let near = hyperelliptic_b(&sn, (x, y), (xp, yp)).unwrap();
        assert!((near - at).norm() < 1e3 * h * at.norm().max(1.0));
    }
}

// B0 - B_hyp = N / (4 y y') with N the exact difference numerator
#[test]
fn general_minus_hyperelliptic_is_numerator() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for c in [vec![-4i64, 0, 1], vec![1, 2, 0, -3, 1], vec![-1, 0, 0, 0, 0, 0, 1], vec![3, -1, 0, 2, 0, 1, 1]] {
        let s = split(&c);
        let p = BivariatePoly::hyperelliptic(&s.q);
        let q4 = correction_polynomial(&p).unwrap();
        let n = hyperelliptic_difference_numerator(&s, &q4);
        assert!(only_interior_monomials(&n, &polytope(&p).unwrap()), "{c:?}");
        let sn = s.to_numeric();
        for _ in 0..30 {
            let a = curve_point(&s.q, rand_c(&mut rng, 1.5));
            let b = curve_point(&s.q, rand_c(&mut rng, 1.5));
            let d = general_b0(&p, &q4, a, b).unwrap() - hyperelliptic_b(&sn, a, b).unwrap();
            let want = n.eval(a.0, a.1, b.0, b.1) / (a.1 * b.1 * 4.0);
            let scale = general_b0(&p, &q4, a, b).unwrap().norm().max(1.0);
            assert!((d - want).norm() < 1e-8 * scale, "{c:?}: {d} vs {want}");
        }
    }
}

#[test]
fn b0_double_pole() {
    let p = parse_poly("y^3 + x^3 + 1 - 2*x*y").unwrap();
    let q4 = correction_polynomial(&p).unwrap();
    // a point on the curve by Newton in y
    let x = C::new(0.4, 0.2);
    let mut y = C::new(-1.0, 0.1);
    for _ in 0..60 {
        y -= p.eval_c(x, y) / p.deriv_y().eval_c(x, y);
    }
    let a = (x, y);
    for h in [1e-3f64, 1e-4] {
        let xp = x + h;
        let mut yp = y;
        for _ in 0..60 {
            yp -= p.eval_c(xp, yp) / p.deriv_y().eval_c(xp, yp);
        }
        let v = general_b0(&p, &q4, a, (xp, yp)).unwrap() * (h * h);
        assert!((v - 1.0).norm() < 100.0 * h, "{v}");
        let w = general_b0(&p, &q4, (xp, yp), a).unwrap() * (h * h);
        assert!((v - w).norm() < 1e-9);
    }
}

#[test]
fn b0_rejects_off_curve() {
    let p = parse_poly("y^2 - x^3 + x").unwrap();
    let q4 = correction_polynomial(&p).unwrap();
    let r = general_b0(&p, &q4, (C::new(2.0, 0.0), C::new(1.0, 0.0)), (C::new(0.5, 0.0), C::new(0.3, 0.1)));
    assert!(matches!(r, Err(Error::OffCurve(_))));
}

// Q(0) != 0 keeps the standard hyperelliptic polygon
fn random_q() -> impl Strategy<Value = Vec<i64>> {
    (1usize..5, prop::collection::vec(-4i64..=4, 10), 1i64..4, prop::bool::ANY).prop_map(|(d, c, l, s)| {
        let mut v: Vec<i64> = c[..2 * d].to_vec();
        if v[0] == 0 {
            v[0] = if s { 1 } else { -1 };
        }
        v.push(l * l);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn split_identity(c in random_q()) {
        let s = split(&c);
        prop_assert!(split_is_normalized(&s));
        prop_assert_eq!(&(&s.u * &s.u) + &s.v, s.q.clone());
        prop_assert_eq!(s.u.degree().unwrap() * 2, s.q.degree().unwrap());
    }

    #[test]
    fn correction_symmetric(terms in prop::collection::btree_map((0i32..5, 0i32..5), -3i64..=3, 3..8)) {
        let p = BivariatePoly::from_terms(terms.into_iter().map(|(k, v)| (k, rat_int(v))));
        prop_assume!(!p.is_zero());
        let q = correction_polynomial(&p).unwrap();
        prop_assert!(q.is_symmetric());
        prop_assert_eq!(q.q4.swapped(), q.q4);
    }

    #[test]
    fn difference_numerator_interior(c in random_q()) {
        let s = split(&c);
        let p = BivariatePoly::hyperelliptic(&s.q);
        let Ok(lp) = polytope(&p) else { return Ok(()) };
        let q4 = correction_polynomial(&p).unwrap();
        prop_assert!(only_interior_monomials(&hyperelliptic_difference_numerator(&s, &q4), &lp));
    }
}
