//! Small dense linear algebra: exact rational elimination and `f64` /
//! complex matrices of the sizes that occur here (genus a handful).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul, Sub};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::algebra::Rational;

/// Determinant by fraction-carrying Gaussian elimination.
pub fn det_rational(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Rank over Q.
pub fn rank_rational(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let p = a[rank][col].clone();
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &p;
                for c in col..cols {
                    let v = &f * &a[rank][c];
                    a[r][c] -= v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

pub type CMat = Mat<Complex64>;
pub type RMat = Mat<f64>;

impl<T: Copy + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<U: Copy + Zero>(&self, f: impl Fn(T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Copy + Zero + Mul<Output = T>> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows);
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    r[(i, j)] = r[(i, j)] + a * o[(k, j)];
                }
            }
        }
        r
    }
}

impl<T: Copy + Zero + Sub<Output = T>> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, o: &Mat<T>) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(&a, &b)| a - b).collect() }
    }
}

impl CMat {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::zero() })
    }

    pub fn re(&self) -> RMat {
        self.map(|z| z.re)
    }

    pub fn im(&self) -> RMat {
        self.map(|z| z.im)
    }

    pub fn from_parts(re: &RMat, im: &RMat) -> Self {
        Mat::from_fn(re.rows, re.cols, |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Gauss-Jordan with partial pivoting; `None` if numerically singular.
    pub fn inverse(&self) -> Option<CMat> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for c in 0..n {
            let piv = (c..n).max_by(|&x, &y| a[(x, c)].norm().partial_cmp(&a[(y, c)].norm()).unwrap())?;
            if a[(piv, c)].norm() == 0.0 {
                return None;
            }
            for j in 0..n {
                a.data.swap(piv * n + j, c * n + j);
                inv.data.swap(piv * n + j, c * n + j);
            }
            let p = a[(c, c)].inv();
            for j in 0..n {
                a[(c, j)] *= p;
                inv[(c, j)] *= p;
            }
            for r in 0..n {
                if r != c {
                    let f = a[(r, c)];
                    if f.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let (ac, ic) = (a[(c, j)], inv[(c, j)]);
                        a[(r, j)] -= f * ac;
                        inv[(r, j)] -= f * ic;
                    }
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Complex64 {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for c in 0..n {
            let piv = (c..n).max_by(|&x, &y| a[(x, c)].norm().partial_cmp(&a[(y, c)].norm()).unwrap()).unwrap();
            if a[(piv, c)].is_zero() {
                return Complex64::zero();
            }
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = -det;
            }
            let p = a[(c, c)];
            det *= p;
            for r in c + 1..n {
                let f = a[(r, c)] / p;
                for j in c..n {
                    let v = a[(c, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        det
    }
}

impl RMat {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    /// Lower Cholesky factor `L` with `A = L L^T`; `None` unless positive
    /// definite.
    pub fn cholesky(&self) -> Option<RMat> {
        let n = self.rows;
        let mut l = RMat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if !(s > 0.0) {
                        return None;
                    }
                    l[(i, i)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Some(l)
    }

    pub fn inverse(&self) -> Option<RMat> {
        let c = CMat::from_parts(self, &RMat::zeros(self.rows, self.cols)).inverse()?;
        Some(c.re())
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
    pub fn sym_eigenvalues(&self) -> Vec<f64> {
        let n = self.rows;
        let mut a = self.clone();
        for _ in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off += a[(i, j)] * a[(i, j)];
                    }
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        (0..n).map(|i| a[(i, i)]).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.sym_eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }
}
