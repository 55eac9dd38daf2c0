use num_traits::Zero;
use proptest::prelude::*;
use rsurf_core::algebra::{rat, rat_int, Rational};
use rsurf_core::error::Error;
use rsurf_core::wpvol::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Mutex;

static ENGINE: Mutex<Option<WpEngine>> = Mutex::new(None);

fn vol(g: u32, n: u32) -> VolumePoly {
    let mut e = ENGINE.lock().unwrap();
    e.get_or_insert_with(|| WpEngine::new(DEFAULT_CAP)).volume(g, n).unwrap()
}

// exact map (m_1..m_n, pi^2 power) -> coefficient
type Flat = BTreeMap<(Vec<u32>, u32), Rational>;

fn flat(v: &VolumePoly) -> Flat {
    let mut out = Flat::new();
    for (m, p) in &v.terms {
        for (&k, c) in p.terms() {
            out.insert((m.clone(), k), c.clone());
        }
    }
    out
}

fn put(f: &mut Flat, key: (Vec<u32>, u32), c: Rational) {
    let e = f.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&key);
    }
}

fn pow_i(b: i64, e: u32) -> Rational {
    rat_int(b.pow(e))
}

// V_{g,n+1}(L, 2 pi i): L_{n+1}^2 = -4 pi^2
fn at_2pi_i(v: &VolumePoly) -> Flat {
    let mut out = Flat::new();
    for ((m, k), c) in flat(v) {
        let (last, rest) = m.split_last().unwrap();
        put(&mut out, (rest.to_vec(), k + last), c * pow_i(-4, *last));
    }
    out
}

// string equation: V_{g,n+1}(L, 2 pi i) = sum_k int_0^{L_k} L_k V_{g,n} dL_k
fn string_rhs(v: &VolumePoly) -> Flat {
    let mut out = Flat::new();
    for ((m, k), c) in flat(v) {
        for i in 0..m.len() {
            let mut m2 = m.clone();
            m2[i] += 1;
            put(&mut out, (m2, k), c.clone() / rat_int(2 * m[i] as i64 + 2));
        }
    }
    out
}

// dilaton equation: dV_{g,n+1}/dL_{n+1}(L, 2 pi i) = 2 pi i (2g - 2 + n) V_{g,n};
// both sides multiplied by 2 pi i
fn dilaton_lhs(v: &VolumePoly) -> Flat {
    let mut out = Flat::new();
    for ((m, k), c) in flat(v) {
        let (last, rest) = m.split_last().unwrap();
        if *last > 0 {
            put(&mut out, (rest.to_vec(), k + last), c * rat_int(2 * *last as i64) * pow_i(-4, *last));
        }
    }
    out
}

fn dilaton_rhs(v: &VolumePoly, g: u32, n: u32) -> Flat {
    let mut out = Flat::new();
    for ((m, k), c) in flat(v) {
        put(&mut out, (m, k + 1), c * rat_int(-4 * (2 * g as i64 - 2 + n as i64)));
    }
    out
}

fn sym2(l: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            s += f(l[i], l[j]);
        }
    }
    s
}

#[test]
fn unstable_rejected() {
    for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
        assert!(matches!(volume(g, n), Err(Error::Unstable(..))), "({g},{n})");
    }
}

#[test]
fn low_volumes_exact() {
    let v = vol(1, 1);
    assert_eq!(v.coeff(&[1], 0), rat(1, 48));
    assert_eq!(v.coeff(&[0], 1), rat(1, 12));
    assert_eq!(v.terms.len(), 2);
    let v = vol(0, 3);
    assert_eq!(v.coeff(&[0, 0, 0], 0), rat_int(1));
    assert_eq!(v.terms.len(), 1);
    let v = vol(0, 4);
    assert_eq!(v.coeff(&[1, 0, 0, 0], 0), rat(1, 2));
    assert_eq!(v.coeff(&[0, 0, 0, 0], 1), rat_int(2));
    assert_eq!(v.terms.len(), 5);
}

#[test]
fn literature_values() {
    let l = [0.3, 1.1, 2.0, 0.7, 1.9];
    let p2 = PI * PI;
    let s2: f64 = l.iter().map(|x| x * x).sum();
    let s4: f64 = l.iter().map(|x| x.powi(4)).sum();
    let v05 = s4 / 8.0 + sym2(&l, |a, b| a * a * b * b) / 2.0 + 3.0 * p2 * s2 + 10.0 * p2 * p2;
    assert!((vol(0, 5).eval(&l) - v05).abs() < 1e-10 * v05);
    let (a, b) = (l[0] * l[0], l[1] * l[1]);
    let v12 = (4.0 * p2 + a + b) * (12.0 * p2 + a + b) / 192.0;
    assert!((vol(1, 2).eval(&l[..2]) - v12).abs() < 1e-12 * v12);
    let v21 = (4.0 * p2 + a) * (12.0 * p2 + a) * (6960.0 * p2 * p2 + 384.0 * p2 * a + 5.0 * a * a) / 2211840.0;
    assert!((vol(2, 1).eval(&l[..1]) - v21).abs() < 1e-12 * v21);
}

#[test]
fn string_and_dilaton() {
    for (g, n) in [(0u32, 3u32), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let small = vol(g, n);
        let big = vol(g, n + 1);
        assert_eq!(at_2pi_i(&big), string_rhs(&small), "string ({g},{n})");
        assert_eq!(dilaton_lhs(&big), dilaton_rhs(&small, g, n), "dilaton ({g},{n})");
    }
}

#[test]
fn structure() {
    for (g, n) in [(0u32, 6u32), (1, 4), (2, 2), (3, 1)] {
        let v = vol(g, n);
        assert!(v.is_symmetric());
        assert!(v.all_positive());
        assert_eq!(v.homogeneous_degree(), Some(3 * g + n - 3));
        assert_eq!(v.n, n as usize);
    }
}

#[test]
fn laplace_round_trip() {
    for (g, n) in [(0u32, 4u32), (1, 1), (1, 2), (2, 1), (0, 5)] {
        let v = vol(g, n);
        let w = laplace(&v);
        assert_eq!(inverse_laplace(&w).unwrap(), v);
        assert_eq!(w, w_laurent(g, n).unwrap());
        assert!(w.is_symmetric());
    }
}

#[test]
fn cap_enforced() {
    assert!(WpEngine::new(2).volume(0, 6).is_err());
    assert!(WpEngine::new(2).volume(1, 1).is_ok());
}

#[test]
fn latex_renders() {
    let s = vol(1, 1).to_latex();
    assert!(s.contains("\\pi"), "{s}");
    assert!(s.contains("L_{1}") || s.contains("L_1"), "{s}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn eval_symmetric(l in prop::collection::vec(0.0f64..3.0, 4), i in 0usize..4, j in 0usize..4) {
        let v = vol(1, 4);
        let mut m = l.clone();
        m.swap(i, j);
        let (a, b) = (v.eval(&l), v.eval(&m));
        prop_assert!((a - b).abs() <= 1e-12 * a.abs());
    }

    #[test]
    fn eval_increasing(l in prop::collection::vec(0.0f64..3.0, 3), i in 0usize..3, h in 0.01f64..1.0) {
        let v = vol(1, 3);
        let mut m = l.clone();
        m[i] += h;
        prop_assert!(v.eval(&m) > v.eval(&l));
    }
}
