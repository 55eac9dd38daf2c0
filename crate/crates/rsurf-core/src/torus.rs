//! Genus one: the torus `C / (Z + tau Z)`, Weierstrass `p`, and modular
//! transformations.

use core::f64::consts::PI;
use core::ops::Mul;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Reduction loop cap; unreachable for valid input.
pub const REDUCE_CAP: usize = 10_000;
/// Boundary tolerance of the fundamental domain test.
pub const TIE: f64 = 1e-14;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `[[a, b], [c, d]]` with `ad - bc = 1`, acting by `(a tau + b)/(c tau + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ModularMatrix {
    pub const IDENTITY: Self = ModularMatrix { a: 1, b: 0, c: 0, d: 1 };
    /// `tau -> -1/tau`
    pub const S: Self = ModularMatrix { a: 0, b: -1, c: 1, d: 0 };
    /// `tau -> tau + 1`
    pub const T: Self = ModularMatrix { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = ModularMatrix { a, b, c, d };
        if m.det() != 1 {
            return Err(Error::BadModular);
        }
        Ok(m)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn t_pow(k: i64) -> Self {
        ModularMatrix { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn inverse(&self) -> Self {
        ModularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }
}

impl Mul for ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, o: Self) -> Self {
        ModularMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// Möbius action `(a tau + b)/(c tau + d)`; `apply(apply(t, m1), m2) =
/// apply(t, m2 * m1)`.
pub fn apply_modular_g1(tau: Complex64, m: &ModularMatrix) -> Result<Complex64> {
    if m.det() != 1 {
        return Err(Error::BadModular);
    }
    if !(tau.im > 0.0) {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    Ok(m.apply(tau))
}

/// New modulus after the change of marking `A' = delta A + gamma B`,
/// `B' = beta A + alpha B`: `(alpha tau - gamma)/(delta - beta tau)`.
/// This is the Möbius action of `[[alpha, -gamma], [-beta, delta]]`.
pub fn marking_change_g1(tau: Complex64, alpha: i64, beta: i64, gamma: i64, delta: i64) -> Result<Complex64> {
    if alpha * delta - beta * gamma != 1 {
        return Err(Error::BadModular);
    }
    if !(tau.im > 0.0) {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    Ok((tau * alpha as f64 - gamma as f64) / (c(delta as f64, 0.0) - tau * beta as f64))
}

/// Moves `tau` into the closed fundamental domain
/// `-1/2 <= Re tau < 1/2`, `|tau| >= 1`, with `|tau| = 1` only for
/// `Re tau <= 0`. Returns `(tau0, M)` with `tau0 = M tau`.
pub fn reduce_modular(tau: Complex64) -> Result<(Complex64, ModularMatrix)> {
    if !(tau.im > 0.0) || !tau.is_finite() {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    let mut t = tau;
    let mut m = ModularMatrix::IDENTITY;
    for _ in 0..REDUCE_CAP {
        let k = (t.re + 0.5).floor();
        if k != 0.0 {
            t -= k;
            m = ModularMatrix::t_pow(-(k as i64)) * m;
        }
        if (t.re - 0.5).abs() < TIE {
            t -= 1.0;
            m = ModularMatrix::t_pow(-1) * m;
        }
        let r = t.norm_sqr();
        if r < 1.0 - TIE || ((r - 1.0).abs() <= TIE && t.re > TIE) {
            t = -t.inv();
            m = ModularMatrix::S * m;
            continue;
        }
        return Ok((t, m));
    }
    Err(Error::StepCap(REDUCE_CAP))
}

/// Point of `C / (Z + tau Z)` with representative `a + b tau`,
/// `a, b` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint {
    pub z: Complex64,
    pub tau: Complex64,
}

impl TorusPoint {
    pub fn new(z: Complex64, tau: Complex64) -> Self {
        let (a, b) = lattice_coords(z, tau);
        let (a, b) = (a - a.floor(), b - b.floor());
        TorusPoint { z: c(a, 0.0) + tau * b, tau }
    }

    /// The Abel map of the torus is the identity on the representative.
    pub fn abel(&self) -> Complex64 {
        self.z
    }
}

/// Real coordinates `(a, b)` with `z = a + b tau`.
pub fn lattice_coords(z: Complex64, tau: Complex64) -> (f64, f64) {
    let b = z.im / tau.im;
    (z.re - b * tau.re, b)
}

/// Sum over `n` of `pi^2 / sin^2(pi (z + n tau))` with a bound on the
/// neglected part. Assumes `|Im z| <= Im tau`.
fn row_sum(z: Complex64, tau: Complex64, eps: f64, deriv: bool) -> Complex64 {
    let f = |w: Complex64| -> Complex64 {
        let s = (w * PI).sin();
        if deriv {
            -(w * PI).cos() / (s * s * s) * (2.0 * PI * PI * PI)
        } else {
            (s * s).inv() * (PI * PI)
        }
    };
    let mut acc = f(z);
    let q = (-2.0 * PI * tau.im).exp();
    for n in 1..10_000 {
        let term = f(z + tau * n as f64) + f(z - tau * n as f64);
        acc += term;
        // |pi^2/sin^2(pi w)| <= 4 pi^2 e^{-2 pi |Im w|}/(1 - e^{-2 pi |Im w|})^2,
        // and the remaining rows decay geometrically with ratio q
        let ymin = n as f64 * tau.im - z.im.abs();
        if ymin > 0.0 {
            let e = (-2.0 * PI * (ymin + tau.im)).exp();
            let scale = if deriv { 16.0 * PI * PI * PI } else { 4.0 * PI * PI };
            let tail = 2.0 * scale * e / ((1.0 - e) * (1.0 - e) * (1.0 - q));
            if tail < eps * 0.25 {
                break;
            }
        }
    }
    acc
}

/// `sum_{n != 0} pi^2 / sin^2(pi n tau)`.
fn constant_row(tau: Complex64, eps: f64) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    let q = (-2.0 * PI * tau.im).exp();
    for n in 1..10_000 {
        let s = (tau * (PI * n as f64)).sin();
        acc += (s * s).inv() * (2.0 * PI * PI);
        let e = (-2.0 * PI * (n + 1) as f64 * tau.im).exp();
        if 8.0 * PI * PI * e / ((1.0 - e) * (1.0 - e) * (1.0 - q)) < eps * 0.25 {
            break;
        }
    }
    acc
}

fn reduce_for_wp(z: Complex64, tau: Complex64) -> Result<Complex64> {
    let (a, b) = lattice_coords(z, tau);
    let (a, b) = (a - a.round(), b - b.round());
    if a.abs() < 1e-300 && b.abs() < 1e-300 {
        return Err(Error::Singular("Weierstrass p at a lattice point"));
    }
    Ok(c(a, 0.0) + tau * b)
}

/// Weierstrass `p` for the lattice `Z + tau Z`, to absolute accuracy about
/// `eps` plus rounding.
///
/// Summing the lattice first along `Z` gives
/// `p(z) = sum_n pi^2/sin^2(pi(z + n tau)) - pi^2/3 - sum_{n != 0} pi^2/sin^2(pi n tau)`,
/// whose rows decay like `exp(-2 pi |n| Im tau)`.
pub fn weierstrass_p(z: Complex64, tau: Complex64, eps: f64) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    let w = reduce_for_wp(z, tau)?;
    Ok(row_sum(w, tau, eps, false) - PI * PI / 3.0 - constant_row(tau, eps))
}

/// Derivative `p'(z)`.
pub fn weierstrass_p_prime(z: Complex64, tau: Complex64, eps: f64) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    let w = reduce_for_wp(z, tau)?;
    Ok(row_sum(w, tau, eps, true))
}

/// Invariants `(g2, g3)` with `p'^2 = 4 p^3 - g2 p - g3`, fitted from
/// two sample points.
pub fn weierstrass_invariants(tau: Complex64, eps: f64) -> Result<(Complex64, Complex64)> {
    let z1 = c(0.31, 0.0) + tau * 0.17;
    let z2 = c(0.13, 0.0) + tau * 0.41;
    let (p1, d1) = (weierstrass_p(z1, tau, eps)?, weierstrass_p_prime(z1, tau, eps)?);
    let (p2, d2) = (weierstrass_p(z2, tau, eps)?, weierstrass_p_prime(z2, tau, eps)?);
    // r_i = 4 p_i^3 - p_i'^2 = g2 p_i + g3
    let r1 = p1 * p1 * p1 * 4.0 - d1 * d1;
    let r2 = p2 * p2 * p2 * 4.0 - d2 * d2;
    let g2 = (r1 - r2) / (p1 - p2);
    Ok((g2, r1 - g2 * p1))
}
