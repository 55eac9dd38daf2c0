//! Fundamental bidifferential of the second kind on a plane curve
//! `P(x, y) = 0`: the general Newton polygon construction
//!
//! ```text
//! B0 = -[ P(x,y') P(x',y) / ((x-x')^2 (y-y')^2) - Q(x,y;x',y') ] / (P_y(x,y) P_y(x',y')) dx dx'
//! ```
//!
//! with its correction polynomial `Q`, and the closed form for
//! hyperelliptic curves `y^2 = Q(x)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::algebra::{rat, rat_int, rational_sqrt, to_f64, BivariatePoly, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::newton::{polytope, LatticePolygon};

/// Relative residual allowed for points claimed to be on the curve.
pub const ON_CURVE_TOL: f64 = 1e-10;

/// `Q = U^2 + V` with `U` the polynomial part of `sqrt(Q)` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticSplit {
    pub q: UniPoly,
    pub u: UniPoly,
    pub v: UniPoly,
}

/// Exact split. The leading coefficient of `Q` must be a rational square;
/// the sign of `U` is the one with positive leading coefficient.
pub fn hyperelliptic_split(q: &UniPoly) -> Result<HyperellipticSplit> {
    let deg = q.degree().ok_or(Error::ZeroInput("zero polynomial"))?;
    if deg % 2 == 1 || deg < 2 {
        return Err(Error::OddDegree);
    }
    let d = deg / 2;
    let s0 = rational_sqrt(&q.leading()).ok_or(Error::NonSquareLeading)?;
    // sqrt of the reversed polynomial r(t) = t^deg Q(1/t) as a power series
    let r: Vec<Rational> = (0..=deg).map(|k| q.coeff(deg - k)).collect();
    let mut s = vec![s0.clone()];
    let two_s0 = &s0 * rat_int(2);
    for k in 1..=d {
        let mut acc = r[k].clone();
        for j in 1..k {
            acc -= &s[j] * &s[k - j];
        }
        s.push(acc / &two_s0);
    }
    let u = UniPoly::new((0..=d).map(|k| s[d - k].clone()).collect());
    let v = q - &(&u * &u);
    Ok(HyperellipticSplit { q: q.clone(), u, v })
}

/// Float version for leading coefficients that are not rational squares;
/// principal square root.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticSplitNum {
    pub q: Vec<Complex64>,
    pub u: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

pub fn hyperelliptic_split_numeric(q: &[Complex64]) -> Result<HyperellipticSplitNum> {
    let mut q = q.to_vec();
    while q.last().is_some_and(|c| c.norm() == 0.0) {
        q.pop();
    }
    if q.is_empty() {
        return Err(Error::ZeroInput("zero polynomial"));
    }
    let deg = q.len() - 1;
    if deg % 2 == 1 || deg < 2 {
        return Err(Error::OddDegree);
    }
    let d = deg / 2;
    let s0 = q[deg].sqrt();
    let mut s = vec![s0];
    for k in 1..=d {
        let mut acc = q[deg - k];
        for j in 1..k {
            acc -= s[j] * s[k - j];
        }
        s.push(acc / (s0 * 2.0));
    }
    let u: Vec<Complex64> = (0..=d).map(|k| s[d - k]).collect();
    let u2 = crate::algebra::cpoly_mul(&u, &u);
    let mut v: Vec<Complex64> = (0..=deg).map(|k| q[k] - u2.get(k).copied().unwrap_or_default()).collect();
    while v.last().is_some_and(|c| c.norm() <= 1e-14 * s0.norm_sqr()) {
        v.pop();
    }
    Ok(HyperellipticSplitNum { q, u, v })
}

impl HyperellipticSplit {
    pub fn to_numeric(&self) -> HyperellipticSplitNum {
        HyperellipticSplitNum { q: self.q.to_complex(), u: self.u.to_complex(), v: self.v.to_complex() }
    }
}

fn ev(p: &[Complex64], x: Complex64) -> Complex64 {
    crate::algebra::cpoly_eval(p, x)
}

fn check_hyper_point(q: &[Complex64], x: Complex64, y: Complex64) -> Result<()> {
    let scale: f64 = y.norm_sqr() + q.iter().enumerate().map(|(k, c)| c.norm() * num_traits::Float::powi(x.norm(), k as i32)).sum::<f64>();
    let r = (y * y - ev(q, x)).norm();
    if r > ON_CURVE_TOL * scale.max(1e-300) {
        return Err(Error::OffCurve(r / scale.max(1e-300)));
    }
    Ok(())
}

/// Coefficient of `dx dx'` in
/// `[y y' + U(x) U(x') + V(x)/2 + V(x')/2] / [2 y y' (x - x')^2]`.
///
/// Near the antidiagonal `(x', y') ~ (x, -y)` the numerator is rewritten
/// as `(A^2 - Q(x) Q(x')) / (A - y y')` with `A = U U' + (V + V')/2`, and
/// `A^2 - Q Q'` is divisible by `(x - x')^2`, so the value stays accurate
/// there and at `x = x'` exactly.
pub fn hyperelliptic_b(split: &HyperellipticSplitNum, p: (Complex64, Complex64), q: (Complex64, Complex64)) -> Result<Complex64> {
    let ((x, y), (xp, yp)) = (p, q);
    check_hyper_point(&split.q, x, y)?;
    check_hyper_point(&split.q, xp, yp)?;
    if y.norm() == 0.0 || yp.norm() == 0.0 {
        return Err(Error::Singular("branch point: dx vanishes"));
    }
    let a = ev(&split.u, x) * ev(&split.u, xp) + (ev(&split.v, x) + ev(&split.v, xp)) * 0.5;
    let yy = y * yp;
    if (a + yy).norm() >= (a - yy).norm() {
        let dx = x - xp;
        if dx.norm() == 0.0 {
            return Err(Error::Singular("double pole on the diagonal"));
        }
        Ok((yy + a) / (yy * 2.0 * dx * dx))
    } else {
        let f = antidiagonal_quotient(split, x, xp);
        Ok(f / ((a - yy) * yy * 2.0))
    }
}

/// `(A(x,x')^2 - Q(x) Q(x')) / (x - x')^2` evaluated through dense
/// coefficient tables and two synthetic divisions.
fn antidiagonal_quotient(s: &HyperellipticSplitNum, x: Complex64, xp: Complex64) -> Complex64 {
    let n = s.q.len();
    let zero = Complex64::new(0.0, 0.0);
    // A as a table a[i][j] for x^i x'^j
    let mut a = vec![vec![zero; n]; n];
    for (i, &ui) in s.u.iter().enumerate() {
        for (j, &uj) in s.u.iter().enumerate() {
            a[i][j] += ui * uj;
        }
    }
    for (i, &vi) in s.v.iter().enumerate() {
        a[i][0] += vi * 0.5;
        a[0][i] += vi * 0.5;
    }
    let m = 2 * n - 1;
    let mut g = vec![vec![zero; m]; m];
    for i1 in 0..n {
        for j1 in 0..n {
            if a[i1][j1] == zero {
                continue;
            }
            for i2 in 0..n {
                for j2 in 0..n {
                    g[i1 + i2][j1 + j2] += a[i1][j1] * a[i2][j2];
                }
            }
        }
    }
    for (i, &qi) in s.q.iter().enumerate() {
        for (j, &qj) in s.q.iter().enumerate() {
            g[i][j] -= qi * qj;
        }
    }
    let g = divide_x_minus_xp(&divide_x_minus_xp(&g));
    let mut acc = zero;
    for row in g.iter().rev() {
        acc = acc * x + ev(row, xp);
    }
    acc
}

/// Synthetic division of `sum g[i][j] x^i x'^j` by `x - x'`, assuming the
/// remainder vanishes.
fn divide_x_minus_xp(g: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = g.len();
    let w = g[0].len();
    let zero = Complex64::new(0.0, 0.0);
    if n < 2 {
        return vec![vec![zero; w + 1]];
    }
    // q_{i-1} = g_i + x' q_i, coefficients in x' grow by one
    let mut q = vec![vec![zero; w + n]; n - 1];
    let mut prev = vec![zero; w + n];
    for i in (1..n).rev() {
        let mut cur = vec![zero; w + n];
        for (j, &c) in g[i].iter().enumerate() {
            cur[j] += c;
        }
        for j in 0..w + n - 1 {
            cur[j + 1] += prev[j];
        }
        q[i - 1] = cur.clone();
        prev = cur;
    }
    q
}

/// Exact polynomial in `(x, y, x', y')`, keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly4 {
    pub terms: BTreeMap<[i32; 4], Rational>,
}

impl Poly4 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, e: [i32; 4], c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(x, y) <-> (x', y')`
    pub fn swapped(&self) -> Self {
        let mut p = Poly4::zero();
        for (e, c) in &self.terms {
            p.add_term([e[2], e[3], e[0], e[1]], c.clone());
        }
        p
    }

    pub fn is_symmetric(&self) -> bool {
        self.swapped() == *self
    }

    pub fn eval(&self, x: Complex64, y: Complex64, xp: Complex64, yp: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| x.powi(e[0]) * y.powi(e[1]) * xp.powi(e[2]) * yp.powi(e[3]) * to_f64(c))
            .sum()
    }

    /// Embed a polynomial in `x` (`primed = false`) or `x'`.
    pub fn from_uni(u: &UniPoly, primed: bool) -> Self {
        let mut p = Poly4::zero();
        for (k, c) in u.coeffs().iter().enumerate() {
            let e = if primed { [0, 0, k as i32, 0] } else { [k as i32, 0, 0, 0] };
            p.add_term(e, c.clone());
        }
        p
    }

    /// Replace `y^2 -> Q(x)` and `y'^2 -> Q(x')` until both y-degrees are
    /// at most 1.
    pub fn reduce_hyperelliptic(&self, q: &UniPoly) -> Self {
        let mut cur = self.clone();
        loop {
            let Some((&e, _)) = cur.terms.iter().find(|(e, _)| e[1] >= 2 || e[3] >= 2) else {
                return cur;
            };
            let c = cur.terms.remove(&e).unwrap();
            let primed = e[3] >= 2;
            for (k, qk) in q.coeffs().iter().enumerate() {
                let mut f = e;
                if primed {
                    f[3] -= 2;
                    f[2] += k as i32;
                } else {
                    f[1] -= 2;
                    f[0] += k as i32;
                }
                cur.add_term(f, &c * qk);
            }
        }
    }
}

impl Add for &Poly4 {
    type Output = Poly4;
    fn add(self, o: &Poly4) -> Poly4 {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &Poly4 {
    type Output = Poly4;
    fn sub(self, o: &Poly4) -> Poly4 {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, -c);
        }
        p
    }
}

impl Mul for &Poly4 {
    type Output = Poly4;
    fn mul(self, o: &Poly4) -> Poly4 {
        let mut p = Poly4::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                p.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], ca * cb);
            }
        }
        p
    }
}

/// The correction polynomial `Q(x, y; x', y')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionPoly {
    pub q4: Poly4,
}

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Closed triangle membership by exact orientation signs.
fn in_triangle(p: Pt, a: Pt, b: Pt, c: Pt) -> bool {
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    let neg = d1 < 0 || d2 < 0 || d3 < 0;
    let pos = d1 > 0 || d2 > 0 || d3 > 0;
    !(neg && pos)
}

/// Closed segment membership: collinear and between the endpoints.
fn on_segment(p: Pt, a: Pt, b: Pt) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Assemble `Q` term by term from the triple sum over pairs of support
/// points and lattice points `(u, v)` of the triangle
/// `(i,j), (i',j'), (i,j')` with weight `|u - i| |v - j'|`:
/// an exterior `(u, v)` off the segment contributes
/// `x^(u-1) y^(v-1) x'^(i+i'-u-1) y'^(j+j'-v-1)`; an exterior `(u, v)`
/// whose mirror `(i+i'-u, j+j'-v)` is interior contributes the swapped
/// monomial; a point of the segment contributes half the first monomial.
pub fn correction_polynomial(p: &BivariatePoly) -> Result<CorrectionPoly> {
    if p.is_zero() {
        return Err(Error::ZeroInput("zero polynomial"));
    }
    match polytope(p) {
        Ok(lp) => Ok(CorrectionPoly { q4: correction_with(p, |pt| lp.is_interior(pt)) }),
        // a segment or a point has no interior lattice points
        Err(Error::DegenerateHull(_)) => Ok(CorrectionPoly { q4: correction_with(p, |_| false) }),
        Err(e) => Err(e),
    }
}

fn correction_with(p: &BivariatePoly, is_interior: impl Fn(Pt) -> bool) -> Poly4 {
    let half = rat(1, 2);
    let terms: Vec<(Pt, Rational)> = p.terms().map(|(&(i, j), c)| ((i as i64, j as i64), c.clone())).collect();
    let mut q = Poly4::zero();
    for &((i, j), ref pij) in &terms {
        for &((ip, jp), ref pipjp) in &terms {
            let a = (i, j);
            let b = (ip, jp);
            let c = (i, jp);
            let coeff = pij * pipjp;
            for u in i.min(ip)..=i.max(ip) {
                for v in j.min(jp)..=j.max(jp) {
                    let w = (u - i).abs() * (v - jp).abs();
                    if w == 0 || !in_triangle((u, v), a, b, c) {
                        continue;
                    }
                    let wc = &coeff * rat_int(w);
                    let interior = is_interior((u, v));
                    let seg = on_segment((u, v), a, b);
                    let mirror = (i + ip - u, j + jp - v);
                    let e1 = [(u - 1) as i32, (v - 1) as i32, (i + ip - u - 1) as i32, (j + jp - v - 1) as i32];
                    if !interior && !seg {
                        q.add_term(e1, wc.clone());
                    }
                    if !interior && is_interior(mirror) {
                        q.add_term([e1[2], e1[3], e1[0], e1[1]], wc.clone());
                    }
                    if seg {
                        q.add_term(e1, &wc * &half);
                    }
                }
            }
        }
    }
    q
}

/// `(P(x, b) - P(x, a)) / (b - a)` as a function of `x`, evaluated
/// without cancellation: `y^j` becomes `sum_{s+t=j-1} a^s b^t`.
fn delta_y(p: &BivariatePoly, x: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for (&(i, j), c) in p.terms() {
        if j <= 0 {
            continue;
        }
        let mut h = Complex64::zero();
        for s in 0..j {
            h += a.powi(s) * b.powi(j - 1 - s);
        }
        acc += x.powi(i) * h * to_f64(c);
    }
    acc
}

fn delta_x(p: &BivariatePoly, a: Complex64, b: Complex64, y: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for (&(i, j), c) in p.terms() {
        if i <= 0 {
            continue;
        }
        let mut h = Complex64::zero();
        for s in 0..i {
            h += a.powi(s) * b.powi(i - 1 - s);
        }
        acc += y.powi(j) * h * to_f64(c);
    }
    acc
}

fn check_point(p: &BivariatePoly, x: Complex64, y: Complex64) -> Result<()> {
    let scale = p.eval_abs(x, y).max(1e-300);
    let r = p.eval_c(x, y).norm() / scale;
    if r > ON_CURVE_TOL {
        return Err(Error::OffCurve(r));
    }
    Ok(())
}

/// Coefficient of `dx dx'` of `B0` at two points of the curve.
///
/// On the curve `P(x,y')P(x',y)/(y-y')^2 = -Dy P(x) Dy P(x')` and
/// `P(x,y')P(x',y)/(x-x')^2 = -Dx P(y') Dx P(y)` with `D` the divided
/// differences, so the apparent poles at `x = x'` (`y != y'`) and `y = y'`
/// (`x != x'`) are removed analytically; the smaller of the two
/// denominators is avoided.
pub fn general_b0(p: &BivariatePoly, q4: &CorrectionPoly, a: (Complex64, Complex64), b: (Complex64, Complex64)) -> Result<Complex64> {
    let ((x, y), (xp, yp)) = (a, b);
    check_point(p, x, y)?;
    check_point(p, xp, yp)?;
    let py = p.deriv_y();
    let px = p.deriv_x();
    let (d1, d2) = (py.eval_c(x, y), py.eval_c(xp, yp));
    let tiny = |v: Complex64, x: Complex64, y: Complex64, q: &BivariatePoly| v.norm() <= 1e-12 * q.eval_abs(x, y).max(1e-300);
    for (pt, d) in [((x, y), d1), ((xp, yp), d2)] {
        if tiny(d, pt.0, pt.1, &py) {
            if tiny(px.eval_c(pt.0, pt.1), pt.0, pt.1, &px) {
                return Err(Error::Nodal);
            }
            return Err(Error::Singular("branch point: dx vanishes"));
        }
    }
    let dx = x - xp;
    let dy = y - yp;
    if dx.norm() == 0.0 && dy.norm() == 0.0 {
        return Err(Error::Singular("double pole on the diagonal"));
    }
    let t = if dx.norm() >= dy.norm() {
        -delta_y(p, x, y, yp) * delta_y(p, xp, y, yp) / (dx * dx)
    } else {
        -delta_x(p, x, xp, yp) * delta_x(p, x, xp, y) / (dy * dy)
    };
    Ok(-(t - q4.q4.eval(x, y, xp, yp)) / (d1 * d2))
}

/// For `P = y^2 - Q`: the exact numerator `N` with
/// `B0 - B_hyp = N / (4 y y') dx dx'`, reduced modulo the curve. It equals
/// `((U(x) - U(x'))/(x - x'))^2 + Q4`, and should only contain monomials
/// `x^(u-1) y^(v-1)` with `(u, v)` interior in each variable pair.
pub fn hyperelliptic_difference_numerator(split: &HyperellipticSplit, q4: &CorrectionPoly) -> Poly4 {
    let d = divided_difference(&split.u);
    (&(&d * &d) + &q4.q4).reduce_hyperelliptic(&split.q)
}

/// `(U(x) - U(x')) / (x - x')` as a polynomial in `x, x'`.
pub fn divided_difference(u: &UniPoly) -> Poly4 {
    let mut p = Poly4::zero();
    for (k, c) in u.coeffs().iter().enumerate() {
        for s in 0..k {
            p.add_term([s as i32, 0, (k - 1 - s) as i32, 0], c.clone());
        }
    }
    p
}

/// Every monomial `x^a y^b x'^c y'^d` has `(a+1, b+1)` and `(c+1, d+1)`
/// strictly inside the polygon.
pub fn only_interior_monomials(n: &Poly4, lp: &LatticePolygon) -> bool {
    n.terms.keys().all(|e| {
        lp.is_interior((e[0] as i64 + 1, e[1] as i64 + 1)) && lp.is_interior((e[2] as i64 + 1, e[3] as i64 + 1))
    })
}

impl CorrectionPoly {
    pub fn is_symmetric(&self) -> bool {
        self.q4.is_symmetric()
    }
}

/// Leading sign helper for tests and the CLI: true if every coefficient of
/// `U` is rational and the leading one positive.
pub fn split_is_normalized(s: &HyperellipticSplit) -> bool {
    s.u.leading().is_positive() && (&(&s.u * &s.u) + &s.v) == s.q && s.v.degree().map_or(true, |dv| dv < s.u.degree().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn splits() {
        let s = hyperelliptic_split(&UniPoly::from_ints(&[-4, 0, 1])).unwrap();
        assert_eq!(s.u, UniPoly::from_ints(&[0, 1]));
        assert_eq!(s.v, UniPoly::from_ints(&[-4]));
        let s = hyperelliptic_split(&UniPoly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.u, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(s.v, UniPoly::from_ints(&[-1]));
        let s = hyperelliptic_split(&UniPoly::from_ints(&[4, 0, -5, 0, 1])).unwrap();
        assert_eq!(s.u, UniPoly::new(vec![rat(-5, 2), rat(0, 1), rat(1, 1)]));
        assert_eq!(s.v, UniPoly::new(vec![rat(-9, 4)]));
        assert!(split_is_normalized(&s));
        assert_eq!(hyperelliptic_split(&UniPoly::from_ints(&[1, 0, 0, 1])), Err(Error::OddDegree));
        assert_eq!(hyperelliptic_split(&UniPoly::from_ints(&[1, 0, 2])), Err(Error::NonSquareLeading));
    }

    #[test]
    fn y_minus_x() {
        let p = parse_poly("y - x").unwrap();
        let q = correction_polynomial(&p).unwrap();
        assert!(q.q4.is_zero());
        let (x, xp) = (c(0.3, 0.1), c(-0.7, 0.4));
        let v = general_b0(&p, &q, (x, x), (xp, xp)).unwrap();
        assert!((v - (x - xp).powi(-2)).norm() < 1e-14);
    }

    #[test]
    fn sphere_correction_symmetric() {
        let q = correction_polynomial(&parse_poly("y^2 - x^2 + 4").unwrap()).unwrap();
        assert!(q.is_symmetric());
    }

    #[test]
    fn antidiagonal_finite() {
        let s = hyperelliptic_split(&UniPoly::from_ints(&[4, 0, -5, 0, 1])).unwrap().to_numeric();
        let x = c(0.4, 0.7);
        let y = ev(&s.q, x).sqrt();
        let exact = hyperelliptic_b(&s, (x, y), (x, -y)).unwrap();
        assert!(exact.is_finite());
        let h = 1e-4;
        let xp = x + h;
        let yp = -ev(&s.q, xp).sqrt() * (ev(&s.q, xp).sqrt() / y).re.signum();
        let near = hyperelliptic_b(&s, (x, y), (xp, yp)).unwrap();
        assert!((near - exact).norm() < 1e-2 * (1.0 + exact.norm()));
    }

    #[test]
    fn hyperelliptic_difference_is_holomorphic() {
        for q in [vec![-1, 0, 0, 0, 0, 0, 1], vec![4, 0, -5, 0, 1], vec![1, 2, 0, -3, 1, 0, 4], vec![0, 1, 0, 0, 0, 0, 0, 0, 1]] {
            let qp = UniPoly::from_ints(&q);
            let split = hyperelliptic_split(&qp).unwrap();
            let p = BivariatePoly::hyperelliptic(&qp);
            let lp = polytope(&p).unwrap();
            let cq = correction_polynomial(&p).unwrap();
            assert!(cq.is_symmetric());
            let n = hyperelliptic_difference_numerator(&split, &cq);
            assert!(only_interior_monomials(&n, &lp), "{q:?}: {:?}", n.terms);
        }
    }

    #[test]
    fn general_curve_diagonal_pole() {
        // smooth plane cubic
        let p = parse_poly("y^3 + x^3 - 3*x*y + 1/5").unwrap();
        let cq = correction_polynomial(&p).unwrap();
        assert!(cq.is_symmetric());
        let pick = |x: Complex64| {
            let coeffs: Vec<Complex64> = p.y_coefficients().iter().map(|u| u.eval_c(x)).collect();
            crate::algebra::roots_complex(&coeffs, 1e-13).unwrap()[0].value
        };
        let x = c(0.31, 0.22);
        let y = pick(x);
        let x2 = c(-0.4, 0.5);
        let y2 = pick(x2);
        let ab = general_b0(&p, &cq, (x, y), (x2, y2)).unwrap();
        let ba = general_b0(&p, &cq, (x2, y2), (x, y)).unwrap();
        assert!((ab - ba).norm() < 1e-10 * ab.norm());
        // near the diagonal on the same sheet B ~ 1/(x-x')^2 + O(1)
        let pyf = p.deriv_y();
        let pxf = p.deriv_x();
        let slope = -pxf.eval_c(x, y) / pyf.eval_c(x, y);
        for h in [1e-3, 1e-4] {
            let xp = x + h;
            let coeffs: Vec<Complex64> = p.y_coefficients().iter().map(|u| u.eval_c(xp)).collect();
            let guess = y + slope * h;
            let yp = crate::algebra::roots_complex(&coeffs, 1e-13)
                .unwrap()
                .into_iter()
                .map(|r| r.value)
                .min_by(|a, b| (a - guess).norm().partial_cmp(&(b - guess).norm()).unwrap())
                .unwrap();
            let v = general_b0(&p, &cq, (x, y), (xp, yp)).unwrap();
            let reg = v - 1.0 / (h * h);
            assert!(reg.norm() < 1e3, "{h} {reg}");
        }
    }
}
