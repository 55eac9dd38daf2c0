//! Quadrature helpers: Gauss-Legendre nodes and an adaptive vector-valued
//! integrator on real intervals.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

pub struct Adaptive {
    xs: Vec<f64>,
    ws: Vec<f64>,
    pub tol: f64,
    pub max_depth: usize,
}

impl Adaptive {
    pub fn new(tol: f64) -> Self {
        let (xs, ws) = gauss_legendre(20);
        Self { xs, ws, tol, max_depth: 40 }
    }

    fn rule(&self, f: &impl Fn(f64) -> Result<Vec<Complex64>>, a: f64, b: f64) -> Result<Vec<Complex64>> {
        let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut acc: Vec<Complex64> = Vec::new();
        for (x, w) in self.xs.iter().zip(&self.ws) {
            let v = f(m + h * x)?;
            if acc.is_empty() {
                acc = vec![Complex64::new(0.0, 0.0); v.len()];
            }
            for (s, t) in acc.iter_mut().zip(v) {
                *s += t * (w * h);
            }
        }
        Ok(acc)
    }

    /// Integral over `[a, b]`, bisecting until the one-level estimates agree
    /// to `tol` (absolute, per component, scaled by `max(1, |I|)`).
    pub fn integrate(&self, f: &impl Fn(f64) -> Result<Vec<Complex64>>, a: f64, b: f64) -> Result<Vec<Complex64>> {
        let pieces = 4;
        let mut total: Vec<Complex64> = Vec::new();
        for k in 0..pieces {
            let lo = a + (b - a) * k as f64 / pieces as f64;
            let hi = a + (b - a) * (k + 1) as f64 / pieces as f64;
            let whole = self.rule(f, lo, hi)?;
            let part = self.rec(f, lo, hi, whole, 0)?;
            if total.is_empty() {
                total = part;
            } else {
                for (s, t) in total.iter_mut().zip(part) {
                    *s += t;
                }
            }
        }
        Ok(total)
    }

    fn rec(&self, f: &impl Fn(f64) -> Result<Vec<Complex64>>, a: f64, b: f64, whole: Vec<Complex64>, depth: usize) -> Result<Vec<Complex64>> {
        let m = (a + b) / 2.0;
        let l = self.rule(f, a, m)?;
        let r = self.rule(f, m, b)?;
        let both: Vec<Complex64> = l.iter().zip(&r).map(|(x, y)| x + y).collect();
        let err = both.iter().zip(&whole).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let scale = both.iter().map(|x| x.norm()).fold(1.0, f64::max);
        if err <= self.tol * scale {
            return Ok(both);
        }
        if depth >= self.max_depth {
            return Err(Error::NonConvergence(depth));
        }
        let mut out = self.rec(f, a, m, l, depth + 1)?;
        let right = self.rec(f, m, b, r, depth + 1)?;
        for (s, t) in out.iter_mut().zip(right) {
            *s += t;
        }
        Ok(out)
    }
}
