use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
// redundant whenever std's float methods are linked in
#[allow(unused_imports)]
use num_traits::Float;

use super::univariate::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

const MAX_ITER: usize = 800;
/// Relative distance below which numeric roots are merged.
const CLUSTER: f64 = 1e-9;

/// Roots of an exact polynomial.
///
/// The polynomial is split into square-free factors exactly, so multiple
/// roots come back with their true multiplicity and full accuracy. Each
/// reported root is within `tol` of a true root, certified by the
/// `deg * |f/f'|` inclusion radius of the square-free factor.
pub fn roots_univariate(p: &UniPoly, tol: f64) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("root finding on the zero polynomial"));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    let mut out: Vec<Root> = Vec::new();
    for (f, k) in p.squarefree() {
        let c = f.to_complex();
        for z in aberth(&c, tol)? {
            out.push(Root { value: z, multiplicity: k });
        }
    }
    Ok(cluster(out))
}

/// Roots of a polynomial with complex float coefficients (lowest degree
/// first). Roots closer than `1e-9 * scale` are merged and reported with
/// multiplicity.
pub fn roots_complex(coeffs: &[Complex64], tol: f64) -> Result<Vec<Root>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| *z == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroInput("root finding on the zero polynomial"));
    }
    let zs = aberth_loose(&c)?;
    let roots: Vec<Root> = zs.into_iter().map(|z| Root { value: z, multiplicity: 1 }).collect();
    let merged = cluster(roots);
    let n = c.len() - 1;
    for r in &merged {
        if r.multiplicity == 1 {
            let (f, fp) = eval_d(&c, r.value);
            if fp.norm() > 0.0 && n as f64 * (f / fp).norm() > tol {
                return Err(Error::NonConvergence(MAX_ITER));
            }
        }
    }
    Ok(merged)
}

fn cluster(roots: Vec<Root>) -> Vec<Root> {
    let scale = roots.iter().map(|r| r.value.norm()).fold(1.0, f64::max);
    let mut out: Vec<Root> = Vec::new();
    'next: for r in roots {
        for o in out.iter_mut() {
            if (o.value - r.value).norm() < CLUSTER * scale {
                let w = o.multiplicity as f64;
                let v = r.multiplicity as f64;
                o.value = (o.value * w + r.value * v) / (w + v);
                o.multiplicity += r.multiplicity;
                continue 'next;
            }
        }
        out.push(r);
    }
    out
}

fn eval_d(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        d = d * z + f;
        f = f * z + a;
    }
    (f, d)
}

fn aberth_iterate(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(alloc::vec![-c[0] / c[1]]);
    }
    let lead = c[n].norm();
    // Fujiwara style radius
    let mut radius: f64 = 0.0;
    for (k, a) in c.iter().enumerate().take(n) {
        radius = radius.max((a.norm() / lead).powf(1.0 / (n - k) as f64));
    }
    let radius = radius.max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITER {
        let mut moved: f64 = 0.0;
        for k in 0..n {
            let (f, d) = eval_d(c, z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let w = f / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            return Ok(z);
        }
    }
    Ok(z)
}

fn polish(c: &[Complex64], z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..4 {
            let (f, d) = eval_d(c, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = f / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
            if step.norm() <= 1e-17 * (1.0 + r.norm()) {
                break;
            }
        }
    }
}

fn aberth(c: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let mut z = aberth_iterate(c)?;
    polish(c, &mut z);
    let n = c.len() - 1;
    for r in &z {
        let (f, d) = eval_d(c, *r);
        if f.norm() == 0.0 {
            continue;
        }
        if d.norm() == 0.0 || n as f64 * (f / d).norm() > tol {
            return Err(Error::NonConvergence(MAX_ITER));
        }
    }
    Ok(z)
}

fn aberth_loose(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut z = aberth_iterate(c)?;
    polish(c, &mut z);
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn has(rs: &[Root], z: Complex64, tol: f64) -> bool {
        rs.iter().any(|r| (r.value - z).norm() < tol)
    }

    #[test]
    fn quadratic() {
        let rs = roots_univariate(&UniPoly::from_ints(&[16, 0, -4]), 1e-12).unwrap();
        assert_eq!(rs.len(), 2);
        assert!(has(&rs, Complex64::new(2.0, 0.0), 1e-12));
        assert!(has(&rs, Complex64::new(-2.0, 0.0), 1e-12));
    }

    #[test]
    fn fourth_roots_of_unity() {
        let rs = roots_univariate(&UniPoly::from_ints(&[-1, 0, 0, 0, 1]), 1e-12).unwrap();
        assert_eq!(rs.len(), 4);
        for z in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            assert!(has(&rs, Complex64::new(z.0, z.1), 1e-12));
        }
    }

    #[test]
    fn constant_has_none() {
        assert!(roots_univariate(&UniPoly::constant(rat_int(5)), 1e-12).unwrap().is_empty());
    }

    #[test]
    fn multiplicity_exact() {
        let f = &UniPoly::from_ints(&[-1, 1]).pow(3) * &UniPoly::from_ints(&[1, 0, 1]);
        let rs = roots_univariate(&f, 1e-12).unwrap();
        let total: usize = rs.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, 5);
        let one = rs.iter().find(|r| (r.value - 1.0).norm() < 1e-12).unwrap();
        assert_eq!(one.multiplicity, 3);
    }

    #[test]
    fn numeric_cubic() {
        let c = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let rs = roots_complex(&c, 1e-12).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(has(&rs, Complex64::from_polar(1.0, 2.0 * PI / 3.0), 1e-12));
    }

    #[test]
    fn numeric_exact_duplicates_merge() {
        let rs = cluster(alloc::vec![
            Root { value: Complex64::new(1.0, 0.0), multiplicity: 1 },
            Root { value: Complex64::new(1.0 + 1e-12, 0.0), multiplicity: 1 },
        ]);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].multiplicity, 2);
    }
}
