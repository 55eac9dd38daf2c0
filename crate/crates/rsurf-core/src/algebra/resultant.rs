use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::bivariate::BivariatePoly;
use super::rational::{rat_int, Rational};
use super::univariate::UniPoly;
use crate::error::{Error, Result};
use crate::linalg::det_rational;

/// Resultant in y, as a polynomial in x.
///
/// The Sylvester determinant is evaluated at enough integer abscissae and
/// interpolated; evaluation commutes with the determinant so the result is
/// exact. A second argument of y-degree 0 gives `G^deg_y(P)`, and in
/// particular `resultant_y(P, 1) = 1`.
pub fn resultant_y(p: &BivariatePoly, g: &BivariatePoly) -> Result<UniPoly> {
    if p.is_zero() && g.is_zero() {
        return Err(Error::ZeroInput("both resultant arguments are zero"));
    }
    if p.has_negative_exponents() || g.has_negative_exponents() {
        return Err(Error::NegativeExponent);
    }
    if p.is_zero() || g.is_zero() {
        return Ok(UniPoly::zero());
    }
    let a = p.y_coefficients();
    let b = g.y_coefficients();
    let m = a.len() - 1;
    let n = b.len() - 1;
    let dx = |c: &[UniPoly]| c.iter().filter_map(|u| u.degree()).max().unwrap_or(0);
    let bound = n * dx(&a) + m * dx(&b);

    let xs: Vec<Rational> = (0..=bound as i64).map(rat_int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let av: Vec<Rational> = a.iter().map(|u| u.eval(x)).collect();
            let bv: Vec<Rational> = b.iter().map(|u| u.eval(x)).collect();
            det_rational(sylvester(&av, &bv))
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}

/// `Resultant(P, dP/dy)`.
pub fn discriminant_y(p: &BivariatePoly) -> Result<UniPoly> {
    resultant_y(p, &p.deriv_y())
}

/// Sylvester matrix of two polynomials given by ascending coefficients.
/// Rows hold descending coefficients, the usual layout.
fn sylvester(a: &[Rational], b: &[Rational]) -> Vec<Vec<Rational>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut s = vec![vec![Rational::zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[n + r][r + k] = c.clone();
        }
    }
    s
}

/// Newton divided differences.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut poly = UniPoly::zero();
    for i in (0..n).rev() {
        let factor = UniPoly::new(vec![-xs[i].clone(), Rational::one()]);
        poly = &(&poly * &factor) + &UniPoly::constant(dd[i].clone());
    }
    poly
}
