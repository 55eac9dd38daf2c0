use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_int, to_f64, Rational};
use super::univariate::UniPoly;

/// Sparse Laurent polynomial in two variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(i32, i32), Rational>,
    vars: [String; 2],
}

impl Default for BivariatePoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { terms: BTreeMap::new(), vars: ["x".to_string(), "y".to_string()] }
    }

    pub fn with_vars(mut self, x: &str, y: &str) -> Self {
        self.vars = [x.to_string(), y.to_string()];
        self
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars[0], &self.vars[1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: i32, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    /// `y^2 - Q(x)`
    pub fn hyperelliptic(q: &UniPoly) -> Self {
        let mut p = Self::monomial(Rational::one(), 0, 2);
        for (k, c) in q.coeffs().iter().enumerate() {
            p.add_term(k as i32, 0, -c);
        }
        p
    }

    pub fn add_term(&mut self, i: i32, j: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: i32, j: i32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<(i32, i32)> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|&(i, j)| i < 0 || j < 0)
    }

    /// Highest power of y, `None` for zero.
    pub fn degree_y(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn degree_x(&self) -> Option<i32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Coefficients of `y^0 .. y^d` as polynomials in x. Requires
    /// non-negative exponents.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let d = self.degree_y().unwrap_or(-1);
        let mut out = Vec::new();
        for j in 0..=d {
            let mut v: Vec<Rational> = Vec::new();
            for (&(i, jj), c) in &self.terms {
                if jj == j {
                    let i = i as usize;
                    if v.len() <= i {
                        v.resize(i + 1, Rational::zero());
                    }
                    v[i] += c;
                }
            }
            out.push(UniPoly::new(v));
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut p = Self::zero();
        p.vars = self.vars.clone();
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, c * s);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(Rational::one());
        r.vars = self.vars.clone();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn deriv_x(&self) -> Self {
        let mut p = Self::zero();
        p.vars = self.vars.clone();
        for (&(i, j), c) in &self.terms {
            p.add_term(i - 1, j, c * rat_int(i as i64));
        }
        p
    }

    pub fn deriv_y(&self) -> Self {
        let mut p = Self::zero();
        p.vars = self.vars.clone();
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j - 1, c * rat_int(j as i64));
        }
        p
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * rpow(x, i) * rpow(y, j);
        }
        acc
    }

    pub fn eval_c(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for (&(i, j), c) in &self.terms {
            acc += x.powi(i) * y.powi(j) * to_f64(c);
        }
        acc
    }

    /// Sum of |coefficient| * |x|^i |y|^j, the natural scale for relative
    /// residuals.
    pub fn eval_abs(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm(), y.norm());
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(&c.abs()) * num_traits::Float::powi(ax, i) * num_traits::Float::powi(ay, j))
            .sum()
    }

    /// Terms sorted the way the printer emits them.
    pub fn sorted_terms(&self) -> Vec<((i32, i32), Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by_key(|&((i, j), _)| Reverse((i + j, i)));
        v
    }
}

fn rpow(x: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        Rational::one() / num_traits::pow(x.clone(), (-e) as usize)
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, o: &BivariatePoly) -> BivariatePoly {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, o: &BivariatePoly) -> BivariatePoly {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, -c);
        }
        p
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, o: &BivariatePoly) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        p.vars = self.vars.clone();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-Rational::one())
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    f.write_str(name)?;
    if e != 1 {
        write!(f, "^{}", e)?;
    }
    Ok(())
}

/// Canonical form: terms by (total degree, power of x) descending, rational
/// coefficients written as `a/b*`, which the parser reads back as
/// `(a/b)*...`.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut first = true;
            if !a.is_one() || (i == 0 && j == 0) {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                first = false;
            }
            fmt_var(f, &self.vars[0], i, &mut first)?;
            fmt_var(f, &self.vars[1], j, &mut first)?;
        }
        Ok(())
    }
}
