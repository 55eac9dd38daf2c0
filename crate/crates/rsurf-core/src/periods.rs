//! Periods of hyperelliptic curves `y^2 = Q(x)`: branch points and cuts,
//! A/B periods of `x^(k-1) dx / (2y)`, the normalized period matrix, Abel
//! map, Riemann constant and the bilinear relations.
//!
//! `y` is evaluated through the explicit branch
//! `y_e(x) = sqrt(lead) Π_c (x - m_c) sqrt(1 - t_c^2/(x - m_c)^2)` whose
//! discontinuities are exactly the cuts `[m_c - t_c, m_c + t_c]`; a point
//! `(x, y)` is on sheet `σ = y / y_e(x) = ±1`, and crossing a cut flips σ.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::algebra::{roots_univariate, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::quad::Adaptive;
use crate::theta::{theta, SiegelMatrix};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Largest trapezoid size tried on the A-contours.
pub const MAX_NODES: usize = 1 << 15;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve {
    pub q: UniPoly,
    pub qc: Vec<Complex64>,
    pub branch_points: Vec<Complex64>,
    pub cuts: Vec<(Complex64, Complex64)>,
    pub genus: usize,
    sqrt_lead: Complex64,
    scale: f64,
}

/// Ellipse `m + t cosh(ρ + iθ)` around a cut.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    pub m: Complex64,
    pub t: Complex64,
    pub rho: f64,
}

impl Contour {
    pub fn at(&self, theta: f64) -> (Complex64, Complex64) {
        let w = Complex64::new(self.rho, theta);
        (self.m + self.t * w.cosh(), self.t * I * w.sinh())
    }
}

fn cmp_points(a: &Complex64, b: &Complex64, scale: f64) -> core::cmp::Ordering {
    if (a.re - b.re).abs() > 1e-9 * scale {
        a.re.partial_cmp(&b.re).unwrap()
    } else {
        a.im.partial_cmp(&b.im).unwrap()
    }
}

/// Intersection of segments `p0 p1` and `q0 q1`: parameters `(s, r)`.
fn seg_intersect(p0: Complex64, p1: Complex64, q0: Complex64, q1: Complex64) -> Option<(f64, f64)> {
    let d = p1 - p0;
    let e = q1 - q0;
    let den = d.re * e.im - d.im * e.re;
    if den.abs() <= 1e-14 * d.norm() * e.norm() {
        return None;
    }
    let w = q0 - p0;
    let s = (w.re * e.im - w.im * e.re) / den;
    let r = (w.re * d.im - w.im * d.re) / den;
    Some((s, r))
}

fn seg_point_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

fn seg_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    if let Some((s, r)) = seg_intersect(a, b, c, d) {
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&r) {
            return 0.0;
        }
    }
    seg_point_distance(a, b, c).min(seg_point_distance(a, b, d)).min(seg_point_distance(c, d, a)).min(seg_point_distance(c, d, b))
}

pub fn build_curve(q: &UniPoly) -> Result<HyperellipticCurve> {
    let deg = q.degree().ok_or(Error::ZeroInput("zero polynomial"))?;
    if deg % 2 == 1 {
        return Err(Error::OddDegree);
    }
    if deg < 4 {
        return Err(Error::Invalid("degree below 4: genus 0, no periods".into()));
    }
    let roots = roots_univariate(q, 1e-12)?;
    if roots.iter().any(|r| r.multiplicity > 1) {
        return Err(Error::Singular("branch points collide"));
    }
    let mut bp: Vec<Complex64> = roots.iter().map(|r| r.value).collect();
    let scale = bp.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..bp.len() {
        for j in 0..i {
            if (bp[i] - bp[j]).norm() <= 1e-8 * scale {
                return Err(Error::Singular("branch points collide"));
            }
        }
    }
    bp.sort_by(|a, b| cmp_points(a, b, scale));
    let cuts: Vec<(Complex64, Complex64)> = bp.chunks(2).map(|c| (c[0], c[1])).collect();
    for i in 0..cuts.len() {
        for j in 0..i {
            if seg_distance(cuts[i].0, cuts[i].1, cuts[j].0, cuts[j].1) <= 1e-9 * scale {
                return Err(Error::Invalid("cuts intersect".into()));
            }
        }
    }
    let qc = q.to_complex();
    let sqrt_lead = qc[deg].sqrt();
    Ok(HyperellipticCurve { q: q.clone(), qc, branch_points: bp, genus: deg / 2 - 1, cuts, sqrt_lead, scale })
}

impl HyperellipticCurve {
    /// The explicit branch `y_e`.
    pub fn y(&self, x: Complex64) -> Complex64 {
        self.y_anchored(x, &[])
    }

    /// `y_e(x)` with `x - p` supplied exactly for the anchors `(p, x - p)`,
    /// which keeps the value accurate close to a branch point.
    fn y_anchored(&self, x: Complex64, anchors: &[(Complex64, Complex64)]) -> Complex64 {
        let diff = |p: Complex64| anchors.iter().find(|(q, _)| *q == p).map(|(_, o)| *o).unwrap_or(x - p);
        let mut acc = self.sqrt_lead;
        for &(a, b) in &self.cuts {
            let m = (a + b) * 0.5;
            let d = x - m;
            acc *= d * (diff(a) * diff(b) / (d * d)).sqrt();
        }
        acc
    }

    pub fn q_at(&self, x: Complex64) -> Complex64 {
        crate::algebra::cpoly_eval(&self.qc, x)
    }

    fn q_abs(&self, x: Complex64) -> f64 {
        self.qc.iter().enumerate().map(|(k, c)| c.norm() * x.norm().powi(k as i32)).sum()
    }

    pub fn is_branch(&self, x: Complex64) -> bool {
        self.branch_points.iter().any(|&e| (x - e).norm() <= 1e-12 * self.scale)
    }

    pub fn check_point(&self, p: (Complex64, Complex64)) -> Result<()> {
        let (x, y) = p;
        let s = y.norm_sqr() + self.q_abs(x);
        let r = (y * y - self.q_at(x)).norm() / s.max(1e-300);
        if r > 1e-9 {
            return Err(Error::OffCurve(r));
        }
        Ok(())
    }

    /// `±1` with `y = σ y_e(x)`; branch points get `+1`.
    pub fn sheet(&self, p: (Complex64, Complex64)) -> Result<f64> {
        self.check_point(p)?;
        if self.is_branch(p.0) {
            return Ok(1.0);
        }
        for &(a, b) in &self.cuts {
            if seg_point_distance(a, b, p.0) <= 1e-12 * self.scale {
                return Err(Error::Invalid("point lies on a cut".into()));
            }
        }
        let ye = self.y(p.0);
        Ok(if (p.1 - ye).norm() <= (p.1 + ye).norm() { 1.0 } else { -1.0 })
    }

    /// Ellipse around cut `i` with semi-minor axis a quarter of the
    /// distance to the nearest other cut.
    pub fn contour(&self, i: usize) -> Contour {
        let (a, b) = self.cuts[i];
        let d = (0..self.cuts.len())
            .filter(|&j| j != i)
            .map(|j| seg_distance(a, b, self.cuts[j].0, self.cuts[j].1))
            .fold(f64::INFINITY, f64::min);
        let t = (b - a) * 0.5;
        let rho = (0.25 * d / t.norm()).asinh();
        Contour { m: (a + b) * 0.5, t, rho }
    }

    /// Raw form values `x^(k-1) / (2 y_e(x))`, k = 1..g.
    fn forms(&self, x: Complex64) -> Vec<Complex64> {
        self.forms_anchored(x, &[])
    }

    fn forms_anchored(&self, x: Complex64, anchors: &[(Complex64, Complex64)]) -> Vec<Complex64> {
        let y2 = self.y_anchored(x, anchors) * 2.0;
        let mut out = Vec::with_capacity(self.genus);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..self.genus {
            out.push(p / y2);
            p *= x;
        }
        out
    }

    /// Raw integrals of the forms along the straight segment `x0 -> x1`
    /// starting on `sheet`; returns the integrals and the arrival sheet.
    pub fn segment_integral(&self, x0: Complex64, x1: Complex64, sheet: f64, quad: &Adaptive) -> Result<(Vec<Complex64>, f64)> {
        let g = self.genus;
        if (x1 - x0).norm() == 0.0 {
            return Ok((vec![Complex64::zero(); g], sheet));
        }
        let tol = 1e-12;
        let mut cross: Vec<f64> = Vec::new();
        for &e in &self.branch_points {
            let d = x1 - x0;
            let s = ((e - x0) * d.conj()).re / d.norm_sqr();
            if s > tol && s < 1.0 - tol && (x0 + d * s - e).norm() <= 1e-10 * self.scale {
                return Err(Error::PathThroughBranchPoint);
            }
        }
        let near = |p: Complex64, q: Complex64| (p - q).norm() <= 1e-12 * self.scale;
        for &(a, b) in &self.cuts {
            // a path that starts or ends at an end of this cut only touches it,
            // unless it runs back along the cut
            let touch = [(x0, x1 - x0), (x1, x0 - x1)].into_iter().find_map(|(p, dir)| {
                if near(p, a) {
                    Some(b - a)
                } else if near(p, b) {
                    Some(a - b)
                } else {
                    None
                }
                .map(|inward| (dir, inward))
            });
            if let Some((dir, inward)) = touch {
                let cross = (dir.conj() * inward).im;
                if cross.abs() <= 1e-9 * dir.norm() * inward.norm() && (dir.conj() * inward).re > 0.0 {
                    return Err(Error::PathThroughBranchPoint);
                }
                continue;
            }
            match seg_intersect(x0, x1, a, b) {
                Some((s, r)) if s > tol && s < 1.0 - tol && r > -tol && r < 1.0 + tol => {
                    if r <= tol || r >= 1.0 - tol {
                        return Err(Error::PathThroughBranchPoint);
                    }
                    cross.push(s);
                }
                Some((s, r)) if (s.abs() <= tol || (s - 1.0).abs() <= tol) && r > tol && r < 1.0 - tol => {
                    return Err(Error::Invalid("path endpoint lies on a cut".into()));
                }
                None => {
                    // parallel: reject overlap with the cut
                    if seg_point_distance(a, b, x0) <= 1e-12 * self.scale && seg_point_distance(a, b, x1) <= 1e-12 * self.scale {
                        return Err(Error::PathThroughBranchPoint);
                    }
                }
                _ => {}
            }
        }
        cross.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut knots = vec![0.0];
        knots.extend(cross.iter().copied());
        knots.push(1.0);
        let d = x1 - x0;
        let mut sigma = sheet;
        let mut total = vec![Complex64::zero(); g];
        for w in knots.windows(2) {
            let (sa, sb) = (w[0], w[1]);
            let start_branch = sa == 0.0 && self.is_branch(x0);
            let end_branch = sb == 1.0 && self.is_branch(x1);
            let sig = sigma;
            let f = |t: f64| -> Result<Vec<Complex64>> {
                // smoothing substitutions for the 1/sqrt endpoint behaviour
                // (u, 1 - u, du/dt)
                let (u, w, du) = match (start_branch, end_branch) {
                    (false, false) => (t, 1.0 - t, 1.0),
                    (true, false) => (t * t, 1.0 - t * t, 2.0 * t),
                    (false, true) => (1.0 - (1.0 - t) * (1.0 - t), (1.0 - t) * (1.0 - t), 2.0 * (1.0 - t)),
                    (true, true) => {
                        let (sn, cs) = (PI * t / 2.0).sin_cos();
                        (sn * sn, cs * cs, PI * sn * cs)
                    }
                };
                let s = sa + (sb - sa) * u;
                let x = x0 + d * s;
                let jac = d * (sb - sa) * du * sig;
                let mut anchors = [(x0, d * s), (x1, -d * ((1.0 - sb) + (sb - sa) * w))];
                let na = if start_branch { 1 } else { 0 };
                if !end_branch {
                    anchors[1] = anchors[0];
                }
                let v = self.forms_anchored(x, if start_branch || end_branch { &anchors[1 - na..] } else { &[] });
                if v.iter().any(|z| !z.is_finite()) {
                    return Err(Error::PathThroughBranchPoint);
                }
                Ok(v.into_iter().map(|z| z * jac).collect())
            };
            let part = quad.integrate(&f, 0.0, 1.0)?;
            for (s, p) in total.iter_mut().zip(part) {
                *s += p;
            }
            sigma = -sigma;
        }
        // the last flip was after the final piece
        sigma = -sigma;
        Ok((total, sigma))
    }

    /// Raw integrals along the polyline `x0 -> pts...`.
    pub fn polyline_integral(&self, x0: Complex64, sheet: f64, pts: &[Complex64], quad: &Adaptive) -> Result<(Vec<Complex64>, f64)> {
        let mut total = vec![Complex64::zero(); self.genus];
        let mut cur = x0;
        let mut s = sheet;
        for &p in pts {
            let (v, s2) = self.segment_integral(cur, p, s, quad)?;
            for (a, b) in total.iter_mut().zip(v) {
                *a += b;
            }
            cur = p;
            s = s2;
        }
        Ok((total, s))
    }

    /// Straight segment if it is admissible, else a two-leg detour through
    /// a waypoint off the segment.
    pub fn route_integral(&self, x0: Complex64, x1: Complex64, sheet: f64, quad: &Adaptive) -> Result<(Vec<Complex64>, f64)> {
        match self.segment_integral(x0, x1, sheet, quad) {
            Err(Error::PathThroughBranchPoint) => {}
            other => return other,
        }
        let mid = (x0 + x1) * 0.5;
        let normal = (x1 - x0) * I;
        for k in [0.13, -0.13, 0.31, -0.31, 0.7, -0.7] {
            let w = mid + normal * k;
            if let Ok(r) = self.polyline_integral(x0, sheet, &[w, x1], quad) {
                return Ok(r);
            }
        }
        Err(Error::PathThroughBranchPoint)
    }

    /// Route from `a` to `b` avoiding all cuts other than at the endpoints:
    /// straight if possible, else through one waypoint off the segment.
    fn gap_route(&self, a: Complex64, b: Complex64) -> Result<Vec<Complex64>> {
        let clear = |p: Complex64, q: Complex64| {
            self.cuts.iter().all(|&(c, d)| match seg_intersect(p, q, c, d) {
                Some((s, r)) => !(s > 1e-9 && s < 1.0 - 1e-9 && r > -1e-9 && r < 1.0 + 1e-9),
                None => true,
            })
        };
        if clear(a, b) {
            return Ok(vec![b]);
        }
        let mid = (a + b) * 0.5;
        let normal = (b - a) * I;
        for k in [0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0] {
            let w = mid + normal * k;
            if clear(a, w) && clear(w, b) && !self.is_branch(w) {
                return Ok(vec![w, b]);
            }
        }
        Err(Error::Invalid("no cut-free route between consecutive cuts".into()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    /// `a[(i, k)] = ∮_{A_i} x^(k-1) dx / (2y)`
    pub a: CMat,
    /// `bm[(i, k)] = ∮_{B_i} x^(k-1) dx / (2y)`
    pub bm: CMat,
    pub a_inv: CMat,
    pub tau: SiegelMatrix,
    /// Largest `|τ_ij - τ_ji|` before symmetrization.
    pub asymmetry: f64,
    /// Trapezoid nodes used on each A-contour at convergence.
    pub nodes: usize,
    pub basis_note: &'static str,
}

pub const BASIS_NOTE: &str = "un-normalized basis x^(k-1) dx/(2y), k = 1..g";

/// A-periods by the `n`-point periodic trapezoid rule on the contours.
pub fn a_periods(curve: &HyperellipticCurve, n: usize) -> CMat {
    let g = curve.genus;
    let mut a = CMat::zeros(g, g);
    for i in 0..g {
        let c = curve.contour(i);
        for j in 0..n {
            let th = 2.0 * PI * j as f64 / n as f64;
            let (x, dx) = c.at(th);
            for (k, f) in curve.forms(x).into_iter().enumerate() {
                a[(i, k)] += f * dx * (2.0 * PI / n as f64);
            }
        }
    }
    a
}

pub fn period_matrix(curve: &HyperellipticCurve, tol: f64) -> Result<PeriodData> {
    let g = curve.genus;
    let quad = Adaptive::new((tol * 1e-3).max(1e-14));
    // loops through consecutive cuts: 2 ∫ from the end of cut j to the start of cut j+1
    let mut gaps = Vec::with_capacity(g);
    for j in 0..g {
        let from = curve.cuts[j].1;
        let route = curve.gap_route(from, curve.cuts[j + 1].0)?;
        let (v, _) = curve.polyline_integral(from, 1.0, &route, &quad)?;
        gaps.push(v);
    }
    let mut bm = CMat::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            for k in 0..g {
                bm[(i, k)] += gaps[j][k] * 2.0;
            }
        }
    }
    let mut n = 32;
    let mut prev: Option<CMat> = None;
    let (a, tau0) = loop {
        let a = a_periods(curve, n);
        let ainv = a.inverse().ok_or(Error::Singular("A-period matrix singular"))?;
        let tau0 = &bm * &ainv;
        if let Some(p) = &prev {
            if (&tau0 - p).max_abs() < tol && n >= 64 {
                break (a, tau0);
            }
        }
        prev = Some(tau0);
        n *= 2;
        if n > MAX_NODES {
            return Err(Error::NonConvergence(n / 2));
        }
    };
    let a_inv = a.inverse().ok_or(Error::Singular("A-period matrix singular"))?;
    // orientation: B·A intersection signs are uniform, so only ±τ is possible
    for sign in [1.0, -1.0] {
        let t1 = tau0.map(|z| z * sign);
        let mut k = CMat::zeros(g, g);
        let mut integral = true;
        for i in 0..g {
            for j in i + 1..g {
                let d = t1[(i, j)] - t1[(j, i)];
                let r = d.re.round();
                if (d - r).norm() > 1e-6 {
                    integral = false;
                }
                k[(i, j)] = Complex64::new(r, 0.0);
            }
        }
        if !integral {
            continue;
        }
        let t2 = &t1 - &k;
        let asym = (0..g).flat_map(|i| (0..g).map(move |j| (i, j))).map(|(i, j)| (t2[(i, j)] - t2[(j, i)]).norm()).fold(0.0, f64::max);
        let sym = CMat::from_fn(g, g, |i, j| (t2[(i, j)] + t2[(j, i)]) * 0.5);
        if let Ok(tau) = SiegelMatrix::new(sym) {
            let bm2 = &bm.map(|z| z * sign) - &(&k * &a);
            return Ok(PeriodData { a, bm: bm2, a_inv, tau, asymmetry: asym, nodes: n, basis_note: BASIS_NOTE });
        }
    }
    Err(Error::NotSiegel("period matrix not symmetric with positive imaginary part"))
}

/// `max_{k,l} |Σ_i A_ik B_il - B_ik A_il|` on the raw periods.
pub fn bilinear_check(data: &PeriodData) -> f64 {
    let m = &(&data.a.transpose() * &data.bm) - &(&data.bm.transpose() * &data.a);
    m.max_abs()
}

/// `2i Σ_i (A_ik conj(B_ik) - B_ik conj(A_ik))` for each raw basis form;
/// real and positive for a correctly oriented basis.
pub fn bilinear_inequality(data: &PeriodData) -> Vec<f64> {
    let g = data.a.rows;
    (0..g)
        .map(|k| {
            let s: Complex64 = (0..g).map(|i| data.a[(i, k)] * data.bm[(i, k)].conj() - data.bm[(i, k)] * data.a[(i, k)].conj()).sum();
            (I * 2.0 * s).re
        })
        .collect()
}

fn normalize(data: &PeriodData, raw: &[Complex64]) -> Vec<Complex64> {
    let g = raw.len();
    (0..g).map(|j| (0..g).map(|k| raw[k] * data.a_inv[(k, j)]).sum()).collect()
}

/// Raw integrals from `o` to `p` along a straight path, or through the
/// branch point nearest to `p` when the straight path arrives on the
/// other sheet.
fn raw_abel(curve: &HyperellipticCurve, p: (Complex64, Complex64), o: (Complex64, Complex64), quad: &Adaptive) -> Result<Vec<Complex64>> {
    let so = curve.sheet(o)?;
    let sp = curve.sheet(p)?;
    let (v, arrive) = curve.route_integral(o.0, p.0, so, quad)?;
    if arrive == sp || curve.is_branch(p.0) {
        return Ok(v);
    }
    let mut order: Vec<Complex64> = curve.branch_points.clone();
    order.sort_by(|a, b| (*a - p.0).norm().partial_cmp(&(*b - p.0).norm()).unwrap());
    let mut last = Error::PathThroughBranchPoint;
    for e in order {
        let legs = curve.route_integral(o.0, e, so, quad).and_then(|(v1, _)| curve.route_integral(e, p.0, 1.0, quad).map(|w| (v1, w)));
        match legs {
            Ok((v1, (v2, s2))) => {
                let flip = if s2 == sp { 1.0 } else { -1.0 };
                return Ok(v1.iter().zip(&v2).map(|(a, b)| a + b * flip).collect());
            }
            Err(err) => last = err,
        }
    }
    Err(last)
}

/// `u(p) = ∫_o^p ω` in the normalized basis.
pub fn abel_map(curve: &HyperellipticCurve, data: &PeriodData, p: (Complex64, Complex64), basepoint: (Complex64, Complex64)) -> Result<Vec<Complex64>> {
    let quad = Adaptive::new(1e-14);
    let raw = raw_abel(curve, p, basepoint, &quad)?;
    Ok(normalize(data, &raw))
}

/// Normalized integrals along an explicit polyline in the x-plane starting
/// on the sheet of `start`.
pub fn abel_polyline(curve: &HyperellipticCurve, data: &PeriodData, start: (Complex64, Complex64), pts: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let quad = Adaptive::new(1e-14);
    let s = curve.sheet(start)?;
    let (raw, arrive) = curve.polyline_integral(start.0, s, pts, &quad)?;
    Ok((normalize(data, &raw), arrive))
}

/// Riemann constant for `basepoint`, in the convention
/// `Θ(K - u(D)) = 0` for every effective divisor `D` of degree `g - 1`.
///
/// Based at the branch point `e = cuts[0].0` the constant is a half period;
/// it is the unique one satisfying the vanishing condition on a handful of
/// test divisors. Then `K_o = K_e - (g - 1) u_e(o)`.
pub fn riemann_constant(curve: &HyperellipticCurve, data: &PeriodData, basepoint: (Complex64, Complex64)) -> Result<Vec<Complex64>> {
    let g = curve.genus;
    let e = (curve.cuts[0].0, Complex64::zero());
    let ke = branch_riemann_constant(curve, data)?;
    let uo = abel_map(curve, data, basepoint, e)?;
    Ok((0..g).map(|i| ke[i] - uo[i] * (g as f64 - 1.0)).collect())
}

/// Points on the A-contours, safely away from every cut.
fn test_points(curve: &HyperellipticCurve, count: usize) -> Vec<(Complex64, Complex64)> {
    (0..count)
        .map(|j| {
            let (x, _) = curve.contour(j % curve.genus).at(0.7 + 1.3 * j as f64);
            (x, curve.y(x))
        })
        .collect()
}

/// The half period `K_e` (basepoint `cuts[0].0`).
pub fn branch_riemann_constant(curve: &HyperellipticCurve, data: &PeriodData) -> Result<Vec<Complex64>> {
    let g = curve.genus;
    let e = (curve.cuts[0].0, Complex64::zero());
    let pts = test_points(curve, g + 2);
    let us: Vec<Vec<Complex64>> = pts.iter().map(|&p| abel_map(curve, data, p, e)).collect::<Result<_>>()?;
    // divisors of degree g - 1 from consecutive windows of the test points
    let divisors: Vec<Vec<Complex64>> = (0..3)
        .map(|j| {
            let mut acc = vec![Complex64::zero(); g];
            for l in 0..g - 1 {
                for (a, b) in acc.iter_mut().zip(&us[(j + l) % us.len()]) {
                    *a += b;
                }
            }
            acc
        })
        .take(if g == 1 { 1 } else { 3 })
        .collect();
    let tau = data.tau.entries();
    let mut scored: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(1 << (2 * g));
    for code in 0..(1usize << (2 * g)) {
        let cand: Vec<Complex64> = (0..g)
            .map(|i| {
                let a = ((code >> i) & 1) as f64;
                let shift: Complex64 = (0..g).map(|j| tau[(i, j)] * ((code >> (g + j)) & 1) as f64).sum();
                (shift + a) * 0.5
            })
            .collect();
        let mut worst: f64 = 0.0;
        for u in &divisors {
            let v: Vec<Complex64> = cand.iter().zip(u).map(|(a, b)| a - b).collect();
            // reduce first so the quasi-periodic factor does not dominate
            let (n, m, _) = lattice_distance(&v, &data.tau);
            let w: Vec<Complex64> = (0..g)
                .map(|i| v[i] - n[i] as f64 - (0..g).map(|j| tau[(i, j)] * m[j] as f64).sum::<Complex64>())
                .collect();
            worst = worst.max(theta(&w, &data.tau, 1e-14)?.value.norm());
        }
        scored.push((worst, cand));
    }
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let (best, second) = (scored[0].0, scored[1].0);
    if best > 1e-6 || second < 1e3 * best.max(1e-12) {
        return Err(Error::Inconclusive(best));
    }
    Ok(scored.swap_remove(0).1)
}

/// Nearest lattice point `n + τm` to `v` and the distance to it.
pub fn lattice_distance(v: &[Complex64], tau: &SiegelMatrix) -> (Vec<i64>, Vec<i64>, f64) {
    let g = v.len();
    let y: Vec<f64> = v.iter().map(|z| z.im).collect();
    let mf = tau.im_inverse().mul_vec(&y);
    let base_m: Vec<i64> = mf.iter().map(|x| x.round() as i64).collect();
    let t = tau.entries();
    let mut best = (vec![0; g], vec![0; g], f64::INFINITY);
    // small neighbourhood search around the rounded coordinates
    let span: i64 = if g <= 3 { 1 } else { 0 };
    let total = (2 * span + 1).pow(g as u32);
    for code in 0..total {
        let mut m = base_m.clone();
        let mut c = code;
        for mi in m.iter_mut() {
            *mi += (c % (2 * span + 1)) - span;
            c /= 2 * span + 1;
        }
        let w: Vec<Complex64> = (0..g).map(|i| v[i] - (0..g).map(|j| t[(i, j)] * m[j] as f64).sum::<Complex64>()).collect();
        let n: Vec<i64> = w.iter().map(|z| z.re.round() as i64).collect();
        let d = w.iter().zip(&n).map(|(z, &k)| (z - k as f64).norm_sqr()).sum::<f64>().sqrt();
        if d < best.2 {
            best = (n, m, d);
        }
    }
    best
}
