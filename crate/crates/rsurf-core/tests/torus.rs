use num_complex::Complex64 as C;
use proptest::prelude::*;
use rsurf_core::error::Error;
use rsurf_core::torus::*;
use std::f64::consts::PI;

const EPS: f64 = 1e-15;

fn close(a: C, b: C, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn reduce_examples() {
    let (t, m) = reduce_modular(C::new(0.0, 1.0)).unwrap();
    assert_eq!((t, m), (C::new(0.0, 1.0), ModularMatrix::IDENTITY));
    let (t, m) = reduce_modular(C::new(5.0, 1.0)).unwrap();
    assert!(close(t, C::new(0.0, 1.0), 1e-15));
    assert_eq!(m, ModularMatrix::t_pow(-5));
    let (t, m) = reduce_modular(C::new(0.3, 0.4)).unwrap();
    assert!(close(t, C::new(-0.2, 1.6), 1e-14), "{t}");
    assert_eq!(m.det(), 1);
    assert!(matches!(reduce_modular(C::new(0.3, 0.0)), Err(Error::NotSiegel(_))));
    assert!(matches!(reduce_modular(C::new(0.3, -1.0)), Err(Error::NotSiegel(_))));
}

#[test]
fn boundary_ties() {
    // Re = 1/2 maps to -1/2
    let (t, _) = reduce_modular(C::new(0.5, 2.0)).unwrap();
    assert!(close(t, C::new(-0.5, 2.0), 1e-15));
    // on the unit circle only Re <= 0 is kept
    let w = C::from_polar(1.0, PI / 3.0);
    let (t, _) = reduce_modular(w).unwrap();
    assert!(t.re <= 0.0 && (t.norm() - 1.0).abs() < 1e-14, "{t}");
}

#[test]
fn modular_matrix_algebra() {
    assert!(matches!(ModularMatrix::new(1, 1, 1, 1), Err(Error::BadModular)));
    let a = ModularMatrix::new(2, 1, 1, 1).unwrap();
    let b = ModularMatrix::new(1, -3, 0, 1).unwrap();
    assert_eq!(a * a.inverse(), ModularMatrix::IDENTITY);
    let tau = C::new(0.1, 0.9);
    assert!(close(a.apply(b.apply(tau)), (a * b).apply(tau), 1e-14));
}

// g2 = 60 G4, g3 = 140 G6 from the Eisenstein q-series
fn eisenstein_invariants(tau: C) -> (C, C) {
    let q = (C::new(0.0, 2.0 * PI) * tau).exp();
    let sigma = |n: u64, k: u32| (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powi(k as i32)).sum::<f64>();
    let (mut e4, mut e6) = (C::new(1.0, 0.0), C::new(1.0, 0.0));
    let mut qn = C::new(1.0, 0.0);
    for n in 1..80u64 {
        qn *= q;
        e4 += qn * 240.0 * sigma(n, 3);
        e6 -= qn * 504.0 * sigma(n, 5);
    }
    let pi4 = PI.powi(4);
    (e4 * (60.0 * pi4 / 45.0), e6 * (140.0 * 2.0 * pi4 * PI * PI / 945.0))
}

#[test]
fn invariants_match_eisenstein() {
    for tau in [C::new(0.0, 1.0), C::new(0.2, 1.3), C::new(-0.45, 0.95), C::new(0.1, 2.5)] {
        let (g2, g3) = weierstrass_invariants(tau, EPS).unwrap();
        let (e2, e3) = eisenstein_invariants(tau);
        assert!(close(g2, e2, 1e-10), "{tau}: {g2} vs {e2}");
        assert!(close(g3, e3, 1e-10), "{tau}: {g3} vs {e3}");
    }
    // square lattice: g3 = 0
    let (_, g3) = weierstrass_invariants(C::new(0.0, 1.0), EPS).unwrap();
    assert!(g3.norm() < 1e-10);
}

#[test]
fn half_period_values_sum_to_zero() {
    for tau in [C::new(0.0, 1.0), C::new(0.2, 1.3)] {
        let e: Vec<C> = [C::new(0.5, 0.0), tau / 2.0, (tau + 1.0) / 2.0].iter().map(|&z| weierstrass_p(z, tau, EPS).unwrap()).collect();
        assert!((e[0] + e[1] + e[2]).norm() < 1e-11);
        for &z in &[C::new(0.5, 0.0), tau / 2.0] {
            assert!(weierstrass_p_prime(z, tau, EPS).unwrap().norm() < 1e-10);
        }
    }
}

// truncated symmetric lattice sum, error O(|z|^2 / N^2)
fn brute_p(z: C, tau: C, n: i64) -> C {
    let mut s = z.inv() * z.inv();
    for a in -n..=n {
        for b in -n..=n {
            if a == 0 && b == 0 {
                continue;
            }
            let w = tau * b as f64 + a as f64;
            s += ((z - w) * (z - w)).inv() - (w * w).inv();
        }
    }
    s
}

#[test]
fn matches_lattice_sum() {
    let tau = C::new(0.0, 1.0);
    let z = C::new(0.23, 0.11);
    let got = weierstrass_p(z, tau, EPS).unwrap();
    let want = brute_p(z, tau, 300);
    assert!((got - want).norm() < 1e-4 * want.norm(), "{got} vs {want}");
}

#[test]
fn lattice_point_rejected() {
    let tau = C::new(0.2, 1.3);
    assert!(weierstrass_p(tau + 1.0, tau, EPS).is_err());
    assert!(weierstrass_p(C::new(0.1, 0.1), C::new(0.0, -1.0), EPS).is_err());
}

#[test]
fn torus_point_representative() {
    let tau = C::new(0.2, 1.3);
    let p = TorusPoint::new(C::new(2.7, 0.0) - tau * 3.0 + tau * 0.4, tau);
    let (a, b) = lattice_coords(p.abel(), tau);
    assert!((a - 0.7).abs() < 1e-12 && (b - 0.4).abs() < 1e-12);
}

fn upper() -> impl Strategy<Value = C> {
    (-20.0f64..20.0, 0.01f64..5.0).prop_map(|(x, y)| C::new(x, y))
}

fn generic_z() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..0.95, 0.05f64..0.95)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduction_lands_in_domain(tau in upper()) {
        let (t, m) = reduce_modular(tau).unwrap();
        prop_assert_eq!(m.det(), 1);
        prop_assert!(t.re >= -0.5 - 1e-12 && t.re < 0.5 + 1e-12);
        prop_assert!(t.norm() >= 1.0 - 1e-12);
        prop_assert!(close(m.apply(tau), t, 1e-9));
    }

    #[test]
    fn p_even_and_periodic(tau in upper(), (a, b) in generic_z()) {
        let (tau, _) = reduce_modular(tau).unwrap();
        let z = tau * b + a;
        let p = weierstrass_p(z, tau, EPS).unwrap();
        prop_assert!(close(weierstrass_p(-z, tau, EPS).unwrap(), p, 1e-9));
        prop_assert!(close(weierstrass_p(z + 1.0, tau, EPS).unwrap(), p, 1e-9));
        prop_assert!(close(weierstrass_p(z + tau, tau, EPS).unwrap(), p, 1e-9));
        prop_assert!(close(weierstrass_p_prime(-z, tau, EPS).unwrap(), -weierstrass_p_prime(z, tau, EPS).unwrap(), 1e-9));
    }

    #[test]
    fn differential_equation(tau in upper(), (a, b) in generic_z()) {
        let (tau, _) = reduce_modular(tau).unwrap();
        let (g2, g3) = eisenstein_invariants(tau);
        let z = tau * b + a;
        let p = weierstrass_p(z, tau, EPS).unwrap();
        let dp = weierstrass_p_prime(z, tau, EPS).unwrap();
        let rhs = p * p * p * 4.0 - g2 * p - g3;
        prop_assert!((dp * dp - rhs).norm() <= 1e-8 * (dp * dp).norm().max(g2.norm() * p.norm()).max(1.0));
    }

    #[test]
    fn derivative_by_differences(tau in upper(), (a, b) in generic_z()) {
        let (tau, _) = reduce_modular(tau).unwrap();
        let z = tau * b + a;
        let h = 1e-5;
        let fd = (weierstrass_p(z + h, tau, EPS).unwrap() - weierstrass_p(z - h, tau, EPS).unwrap()) / (2.0 * h);
        let dp = weierstrass_p_prime(z, tau, EPS).unwrap();
        prop_assert!(close(fd, dp, 1e-5));
    }

    #[test]
    fn double_pole(tau in upper(), arg in 0.0f64..std::f64::consts::TAU) {
        let (tau, _) = reduce_modular(tau).unwrap();
        let z = C::from_polar(1e-3, arg);
        let v = weierstrass_p(z, tau, EPS).unwrap() * z * z;
        prop_assert!((v - 1.0).norm() < 1e-4);
    }
}
