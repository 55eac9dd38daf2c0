use proptest::prelude::*;
use rsurf_core::algebra::{parse_poly, BivariatePoly, UniPoly};
use rsurf_core::error::Error;
use rsurf_core::newton::*;

fn lp(s: &str) -> LatticePolygon {
    polytope(&parse_poly(s).unwrap()).unwrap()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

// brute force: strictly inside every half plane of every pair that leaves
// all support points on one side
fn brute_interior(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let (x0, x1) = (pts.iter().map(|p| p.0).min().unwrap(), pts.iter().map(|p| p.0).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.1).min().unwrap(), pts.iter().map(|p| p.1).max().unwrap());
    let mut lines = Vec::new();
    for &a in pts {
        for &b in pts {
            if a == b {
                continue;
            }
            let s: Vec<i64> = pts.iter().map(|&p| cross(a, b, p)).collect();
            if s.iter().all(|&v| v >= 0) {
                lines.push((a, b));
            }
        }
    }
    let mut out = Vec::new();
    for i in x0..=x1 {
        for j in y0..=y1 {
            if lines.iter().all(|&(a, b)| cross(a, b, (i, j)) > 0) {
                out.push((i, j));
            }
        }
    }
    out
}

#[test]
fn interior_examples() {
    assert_eq!(lp("1 + 3*x*y + x^2*y + x*y^2").interior, vec![(1, 1)]);
    assert_eq!(lp("y^2 - x^6 + 1").interior, vec![(1, 1), (2, 1)]);
    assert!(matches!(polytope(&parse_poly("y - x").unwrap()), Err(Error::DegenerateHull(1))));
}

#[test]
fn hyperelliptic_genus() {
    for g in 0..=5usize {
        for deg in [2 * g + 1, 2 * g + 2] {
            if deg < 2 {
                continue;
            }
            let q = UniPoly::from_ints(&vec![1i64; deg + 1]);
            let p = BivariatePoly::hyperelliptic(&q);
            assert_eq!(genus(&p).unwrap(), g as i64, "deg {deg}");
        }
    }
}

#[test]
fn edges_and_degenerate() {
    let t = lp("1 + x^3 + y^3");
    assert_eq!(t.edges.len(), 3);
    assert_eq!(t.edges.iter().map(|e| e.lattice_length()).sum::<i64>(), 9);
    assert_eq!(t.interior, vec![(1, 1)]);
    assert!(matches!(polytope(&parse_poly("x^2*y").unwrap()), Err(Error::DegenerateHull(0))));
    assert!(matches!(polytope(&parse_poly("1 + x*y + x^2*y^2").unwrap()), Err(Error::DegenerateHull(1))));
    assert!(polytope(&parse_poly("0").unwrap()).is_err());
}

#[test]
fn form_kinds() {
    let p = parse_poly("y^2 - x^6 + 1").unwrap();
    assert_eq!(classify_form(&p, 1, 1).unwrap(), FormKind::FirstKind);
    assert!(matches!(classify_form(&p, 0, 0).unwrap(), FormKind::ThirdKind(e) if e.len() == 2));
    assert!(matches!(classify_form(&p, 3, 1).unwrap(), FormKind::ThirdKind(e) if e.len() == 1));
    match classify_form(&p, 7, 1).unwrap() {
        FormKind::SecondKind(v) => assert!(v.iter().all(|(e, k)| *k == e.value((7, 1)) - e.m + 1 && *k >= 1)),
        k => panic!("{k:?}"),
    }
}

fn support() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::btree_set((0i64..7, 0i64..7), 3..9).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    // Pick: 2A = 2I + B - 2
    #[test]
    fn pick(pts in support()) {
        let Ok(lp) = LatticePolygon::from_points(&pts) else { return Ok(()) };
        let b: i64 = lp.edges.iter().map(|e| e.lattice_length()).sum();
        prop_assert_eq!(lp.twice_area(), 2 * lp.interior.len() as i64 + b - 2);
        prop_assert_eq!(lp.boundary_points().len() as i64, b);
    }

    #[test]
    fn interior_matches_brute_force(pts in support()) {
        let Ok(lp) = LatticePolygon::from_points(&pts) else { return Ok(()) };
        prop_assert_eq!(lp.interior, brute_interior(&pts));
    }

    #[test]
    fn support_below_every_edge(pts in support()) {
        let Ok(lp) = LatticePolygon::from_points(&pts) else { return Ok(()) };
        for e in &lp.edges {
            prop_assert_eq!(e.value(e.from), e.m);
            prop_assert_eq!(e.value(e.to), e.m);
            prop_assert!(pts.iter().all(|&p| e.value(p) <= e.m));
            prop_assert_eq!(num_integer::gcd(e.alpha, e.beta).abs(), 1);
        }
    }
}
