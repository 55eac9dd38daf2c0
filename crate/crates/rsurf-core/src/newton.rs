//! Newton polygon of a plane curve: hull, tangent edges, interior points,
//! genus and the kind of the forms `x^(k-1) y^(l-1) dx / P_y`.

use alloc::vec::Vec;
use num_integer::Integer;

use crate::algebra::BivariatePoly;
use crate::error::{Error, Result};

/// Hull edge on the line `alpha*i + beta*j = m`. `(alpha, beta)` is the
/// primitive outward normal, so every support point has
/// `alpha*i + beta*j <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub alpha: i64,
    pub beta: i64,
    pub m: i64,
    pub from: (i64, i64),
    pub to: (i64, i64),
}

impl Edge {
    pub fn value(&self, (k, l): (i64, i64)) -> i64 {
        self.alpha * k + self.beta * l
    }

    /// Number of lattice steps along the edge.
    pub fn lattice_length(&self) -> i64 {
        (self.to.0 - self.from.0).gcd(&(self.to.1 - self.from.1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    /// Support of the polynomial, sorted.
    pub points: Vec<(i64, i64)>,
    /// Hull vertices in counterclockwise order, starting from the
    /// lexicographically smallest.
    pub hull: Vec<(i64, i64)>,
    /// `edges[k]` joins `hull[k]` to `hull[k+1]`.
    pub edges: Vec<Edge>,
    /// Lattice points strictly inside, sorted.
    pub interior: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    FirstKind,
    /// On the boundary. Holds the edges through the point: two at a corner,
    /// one elsewhere (the simple poles are then two punctures over that
    /// edge).
    ThirdKind(Vec<Edge>),
    /// Outside. Every edge with `alpha*k + beta*l >= m`, with pole order
    /// `alpha*k + beta*l - m + 1`.
    SecondKind(Vec<(Edge, i64)>),
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain. Collinear points are dropped from the hull.
fn monotone_chain(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl LatticePolygon {
    /// Newton polytope of an arbitrary finite point set.
    pub fn from_points(points: &[(i64, i64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroInput("empty support"));
        }
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let hull = monotone_chain(&pts);
        if hull.len() < 3 {
            return Err(Error::DegenerateHull(hull.len() - 1));
        }
        let n = hull.len();
        let edges: Vec<Edge> = (0..n)
            .map(|k| {
                let a = hull[k];
                let b = hull[(k + 1) % n];
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let g = dx.gcd(&dy);
                let (alpha, beta) = (dy / g, -dx / g);
                Edge { alpha, beta, m: alpha * a.0 + beta * a.1, from: a, to: b }
            })
            .collect();
        let (imin, imax) = (hull.iter().map(|p| p.0).min().unwrap(), hull.iter().map(|p| p.0).max().unwrap());
        let (jmin, jmax) = (hull.iter().map(|p| p.1).min().unwrap(), hull.iter().map(|p| p.1).max().unwrap());
        let mut interior = Vec::new();
        for i in imin..=imax {
            for j in jmin..=jmax {
                if edges.iter().all(|e| e.value((i, j)) < e.m) {
                    interior.push((i, j));
                }
            }
        }
        Ok(LatticePolygon { points: pts, hull, edges, interior })
    }

    pub fn is_interior(&self, p: (i64, i64)) -> bool {
        self.edges.iter().all(|e| e.value(p) < e.m)
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        self.edges.iter().all(|e| e.value(p) <= e.m)
    }

    /// Lattice points on the boundary, in no particular order.
    pub fn boundary_points(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            let g = e.lattice_length();
            let (sx, sy) = ((e.to.0 - e.from.0) / g, (e.to.1 - e.from.1) / g);
            for s in 0..g {
                out.push((e.from.0 + s * sx, e.from.1 + s * sy));
            }
        }
        out
    }

    /// Twice the area, by the shoelace formula.
    pub fn twice_area(&self) -> i64 {
        let n = self.hull.len();
        (0..n).map(|k| cross((0, 0), self.hull[k], self.hull[(k + 1) % n])).sum()
    }

    pub fn classify(&self, k: i64, l: i64) -> FormKind {
        let p = (k, l);
        if self.is_interior(p) {
            return FormKind::FirstKind;
        }
        if self.contains(p) {
            return FormKind::ThirdKind(self.edges.iter().filter(|e| e.value(p) == e.m).copied().collect());
        }
        FormKind::SecondKind(
            self.edges
                .iter()
                .filter(|e| e.value(p) > e.m - 1)
                .map(|e| (*e, e.value(p) - e.m + 1))
                .collect(),
        )
    }
}

/// Support of `P` as integer pairs; rejects Laurent exponents.
pub fn support(p: &BivariatePoly) -> Result<Vec<(i64, i64)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("zero polynomial has no Newton polygon"));
    }
    if p.has_negative_exponents() {
        return Err(Error::NegativeExponent);
    }
    Ok(p.support().into_iter().map(|(i, j)| (i as i64, j as i64)).collect())
}

pub fn polytope(p: &BivariatePoly) -> Result<LatticePolygon> {
    LatticePolygon::from_points(&support(p)?)
}

/// Generic genus, the number of interior lattice points.
pub fn genus(p: &BivariatePoly) -> Result<i64> {
    genus_nodal(p, 0)
}

/// Genus of a curve with `nodal_count` ordinary nodes. Nodes are not
/// detected here.
pub fn genus_nodal(p: &BivariatePoly, nodal_count: usize) -> Result<i64> {
    Ok(polytope(p)?.interior.len() as i64 - nodal_count as i64)
}

pub fn classify_form(p: &BivariatePoly, k: i64, l: i64) -> Result<FormKind> {
    Ok(polytope(p)?.classify(k, l))
}

/// `(alpha, beta, m)` for every hull edge.
pub fn tangent_directions(p: &BivariatePoly) -> Result<Vec<(i64, i64, i64)>> {
    Ok(polytope(p)?.edges.iter().map(|e| (e.alpha, e.beta, e.m)).collect())
}
