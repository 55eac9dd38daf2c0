//! Helpers for polynomials with complex float coefficients, lowest degree
//! first.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

pub fn cpoly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

pub fn cpoly_deriv(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().enumerate().skip(1).map(|(k, &a)| a * k as f64).collect()
}

pub fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

pub fn cpoly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default())
        .collect()
}

pub fn cpoly_scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    a.iter().map(|&x| x * s).collect()
}

/// `prod (z - r)`
pub fn cpoly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        p = cpoly_mul(&p, &[-r, Complex64::new(1.0, 0.0)]);
    }
    p
}

/// Lagrange interpolation through `(x_i, y_i)`, degree below `xs.len()`.
pub fn cpoly_interpolate(xs: &[Complex64], ys: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let others: Vec<Complex64> = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        let basis = cpoly_from_roots(&others);
        let denom = cpoly_eval(&basis, xi);
        out = cpoly_add(&out, &cpoly_scale(&basis, yi / denom));
    }
    out
}
