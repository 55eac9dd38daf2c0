//! Quadratic differentials with prescribed double poles and the Strebel
//! graph cells of `M_{0,3} x R_+^3`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Num;

use crate::algebra::{cpoly_add, cpoly_eval, cpoly_from_roots, cpoly_interpolate, cpoly_mul, cpoly_scale, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::torus::weierstrass_p;

/// Graph 1 is the theta graph (`L0 = l1 + l2`, `L1 = l2 + l3`,
/// `Linf = l3 + l1`). Graphs 2, 3, 4 are the dumbbells where `Linf`, `L1`,
/// `L0` respectively exceeds the sum of the other two; there `l1`, `l2` are
/// the loops around the two smaller boundaries (in the order `0, 1, inf`) and
/// `l3` is the bridge, so the dominant length is `l1 + l2 + 2 l3`.
#[derive(Clone, Debug, PartialEq)]
pub struct PantsClassification<T> {
    pub graph: u8,
    pub lengths: [T; 3],
}

/// Which of the four open cells contain `(L0, L1, Linf)`. Ties count for
/// no dumbbell, so they fall into the closure of cell 1.
pub fn region_predicates<T: Num + PartialOrd + Clone>(l0: &T, l1: &T, linf: &T) -> [bool; 4] {
    let g2 = linf.clone() > l0.clone() + l1.clone();
    let g3 = l1.clone() > l0.clone() + linf.clone();
    let g4 = l0.clone() > l1.clone() + linf.clone();
    [!(g2 || g3 || g4), g2, g3, g4]
}

fn classify_generic<T: Num + PartialOrd + Clone>(l0: T, l1: T, linf: T) -> Result<PantsClassification<T>> {
    if !(l0 > T::zero() && l1 > T::zero() && linf > T::zero()) {
        return Err(Error::Invalid("boundary lengths must be positive".into()));
    }
    let two = T::one() + T::one();
    let p = region_predicates(&l0, &l1, &linf);
    let (graph, lengths) = if p[1] {
        (2, [l0.clone(), l1.clone(), (linf - l0 - l1) / two])
    } else if p[2] {
        (3, [l0.clone(), linf.clone(), (l1 - l0 - linf) / two])
    } else if p[3] {
        (4, [l1.clone(), linf.clone(), (l0 - l1 - linf) / two])
    } else {
        (
            1,
            [
                (l0.clone() + linf.clone() - l1.clone()) / two.clone(),
                (l0.clone() + l1.clone() - linf.clone()) / two.clone(),
                (l1 + linf - l0) / two,
            ],
        )
    };
    Ok(PantsClassification { graph, lengths })
}

pub fn classify_pants(l0: f64, l1: f64, linf: f64) -> Result<PantsClassification<f64>> {
    if !(l0.is_finite() && l1.is_finite() && linf.is_finite()) {
        return Err(Error::Invalid("boundary lengths must be finite".into()));
    }
    classify_generic(l0, l1, linf)
}

pub fn classify_pants_exact(l0: &Rational, l1: &Rational, linf: &Rational) -> Result<PantsClassification<Rational>> {
    classify_generic(l0.clone(), l1.clone(), linf.clone())
}

/// `(L0, L1, Linf)` recovered from a graph and its edge lengths.
pub fn boundary_lengths<T: Num + Clone>(c: &PantsClassification<T>) -> [T; 3] {
    let [a, b, e] = c.lengths.clone();
    let two = T::one() + T::one();
    let big = a.clone() + b.clone() + two * e.clone();
    match c.graph {
        2 => [a, b, big],
        3 => [a, big, b],
        4 => [big, a, b],
        _ => [a.clone() + b.clone(), b + e.clone(), e + a],
    }
}

/// `3g - 3 + n`.
pub fn dim_quad_space(g: i64, n: i64) -> Result<i64> {
    if g < 0 || n < 0 || 2 - 2 * g - n >= 0 {
        return Err(Error::Unstable(g, n));
    }
    Ok(3 * g - 3 + n)
}

/// `omega / dz^2` for a quadratic differential with double poles of
/// leading coefficient `-L_i^2`.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadDiff {
    /// `f(z) / prod (z - p_i)^2`. If `infinity` is set, infinity is a marked
    /// point too.
    Sphere {
        numerator: Vec<Complex64>,
        poles: Vec<Complex64>,
        lengths: Vec<f64>,
        infinity: Option<f64>,
        params: Vec<Complex64>,
    },
    /// `-L0^2 p(z; tau) + c` on `C / (Z + tau Z)`, marked point at 0.
    Torus { tau: Complex64, l0: f64, c: Complex64 },
}

impl QuadDiff {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            QuadDiff::Sphere { numerator, poles, .. } => {
                let den = poles.iter().fold(Complex64::new(1.0, 0.0), |acc, &p| acc * (z - p) * (z - p));
                if den.norm() == 0.0 {
                    return Err(Error::Singular("quadratic differential at a pole"));
                }
                Ok(cpoly_eval(numerator, z) / den)
            }
            QuadDiff::Torus { tau, l0, c } => Ok(-weierstrass_p(z, *tau, 1e-14)? * (l0 * l0) + c),
        }
    }

    /// Leading coefficient of the double pole at marked point `i`; on the
    /// sphere index `poles.len()` means infinity (in the coordinate `1/z`).
    pub fn leading_coefficient(&self, i: usize) -> Result<Complex64> {
        match self {
            QuadDiff::Sphere { numerator, poles, infinity, .. } => {
                if i < poles.len() {
                    let p = poles[i];
                    let rest = poles.iter().enumerate().filter(|&(j, _)| j != i).fold(Complex64::new(1.0, 0.0), |acc, (_, &q)| acc * (p - q) * (p - q));
                    Ok(cpoly_eval(numerator, p) / rest)
                } else if i == poles.len() && infinity.is_some() {
                    // omega/dz^2 ~ a z^-2 at infinity, and dz^2 = dw^2 / w^4
                    Ok(numerator.get(2 * poles.len() - 2).copied().unwrap_or_default())
                } else {
                    Err(Error::Invalid("no such marked point".into()))
                }
            }
            QuadDiff::Torus { l0, .. } => {
                if i == 0 {
                    Ok(Complex64::new(-l0 * l0, 0.0))
                } else {
                    Err(Error::Invalid("no such marked point".into()))
                }
            }
        }
    }

    /// Number of free complex parameters of the family.
    pub fn free_dimension(&self) -> usize {
        match self {
            QuadDiff::Sphere { params, .. } => params.len(),
            QuadDiff::Torus { .. } => 1,
        }
    }
}

/// Genus zero. Finite marked points `poles` with lengths, optionally
/// infinity with length `l_inf`, and the free coefficients `c_j` of
/// `f = f_0 - prod (z - p_i) sum c_j z^j`. There must be exactly
/// `n - 3` of them, `n` counting infinity when marked.
pub fn quad_diff_sphere(poles: &[Complex64], lengths: &[f64], l_inf: Option<f64>, params: &[Complex64]) -> Result<QuadDiff> {
    if poles.len() != lengths.len() {
        return Err(Error::Invalid("one length per marked point".into()));
    }
    let n = poles.len() + l_inf.is_some() as usize;
    if n < 3 {
        return Err(Error::Unstable(0, n as i64));
    }
    if params.len() != n - 3 {
        return Err(Error::Invalid("expected n - 3 free parameters".into()));
    }
    for i in 0..poles.len() {
        for j in 0..i {
            if (poles[i] - poles[j]).norm() == 0.0 {
                return Err(Error::Coincident);
            }
        }
    }
    let values: Vec<Complex64> = poles
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let rest = poles.iter().enumerate().filter(|&(j, _)| j != i).fold(Complex64::new(1.0, 0.0), |acc, (_, &q)| acc * (p - q) * (p - q));
            -rest * (lengths[i] * lengths[i])
        })
        .collect();
    let prod = cpoly_from_roots(poles);
    let mut f = cpoly_interpolate(poles, &values);
    if let Some(li) = l_inf {
        // -L^2 z^(m-2) prod(z - p) vanishes at the p_i and fixes the top term
        let m = poles.len();
        let mut lead = vec![Complex64::new(0.0, 0.0); m - 2];
        lead.push(Complex64::new(-li * li, 0.0));
        f = cpoly_add(&f, &cpoly_mul(&lead, &prod));
    }
    if !params.is_empty() {
        f = cpoly_add(&f, &cpoly_scale(&cpoly_mul(&prod, params), Complex64::new(-1.0, 0.0)));
    }
    Ok(QuadDiff::Sphere { numerator: f, poles: poles.to_vec(), lengths: lengths.to_vec(), infinity: l_inf, params: params.to_vec() })
}

/// `(0,3)` with marked points `0, 1, inf`.
pub fn quad_diff_03(l0: f64, l1: f64, linf: f64) -> Result<QuadDiff> {
    quad_diff_sphere(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], &[l0, l1], Some(linf), &[])
}

/// `(0,4)` with marked points `0, 1, inf, p` and free constant `c`.
pub fn quad_diff_04(p: Complex64, l0: f64, l1: f64, linf: f64, lp: f64, c: Complex64) -> Result<QuadDiff> {
    quad_diff_sphere(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), p], &[l0, l1, lp], Some(linf), &[c])
}

/// `(0,n)`, all points finite.
pub fn quad_diff_0n(poles: &[Complex64], lengths: &[f64], params: &[Complex64]) -> Result<QuadDiff> {
    quad_diff_sphere(poles, lengths, None, params)
}

/// `(1,1)`: `(-L0^2 p(z; tau) + c) dz^2`.
pub fn quad_diff_11(tau: Complex64, l0: f64, c: Complex64) -> Result<QuadDiff> {
    if !(tau.im > 0.0) {
        return Err(Error::NotSiegel("Im tau must be positive"));
    }
    Ok(QuadDiff::Torus { tau, l0, c })
}

/// Exact `(0,3)` differential, squared lengths as input:
/// numerator `-Linf^2 z^2 + (Linf^2 + L0^2 - L1^2) z - L0^2`, denominator
/// `z^2 (z - 1)^2`.
pub fn quad_diff_03_exact(l0_sq: &Rational, l1_sq: &Rational, linf_sq: &Rational) -> (UniPoly, UniPoly) {
    let num = UniPoly::new(vec![-l0_sq.clone(), linf_sq + l0_sq - l1_sq, -linf_sq.clone()]);
    let den = UniPoly::from_ints(&[0, 0, 1, -2, 1]);
    (num, den)
}
