//! Weil-Petersson volumes through Mirzakhani's recursion in Laplace space.
//!
//! `W_{g,n}` is the Laplace transform of `V_{g,n}`; it is a polynomial in
//! the `1/z_i^2` with coefficients in `Q[pi^2]`. The recursion is
//!
//! ```text
//! W_{g,n+1}(z_1..z_n, z_{n+1}) = Res_{z=0} dz/(z_{n+1}^2 - z^2) * pi/sin(2 pi z) *
//!     [ W_{g-1,n+2}(z, -z, z_I) + sum' W_{g1,1+|I1|}(z, I1) W_{g2,1+|I2|}(-z, I2) ]
//! ```
//!
//! where the primed sum skips the splits with `(g_i, I_i) = (0, {})` and
//! `W_{0,2}(a, b) = 1/(a - b)^2` only ever appears contracted against `z`.
//! The `W_{g-1,n+2}` reading of the first bracket term is the one that
//! reproduces `W_{1,1}` and `W_{0,4}`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat_int, Rational};
use crate::error::{Error, Result};

/// Default bound on `3g - 3 + n`.
pub const DEFAULT_CAP: u32 = 12;

/// Polynomial in `pi^2` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * (pi^2)^k`
    pub fn term(c: Rational, k: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0)
    }

    pub fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_assign(&mut self, o: &PiPoly) {
        for (&k, c) in &o.coeffs {
            self.add_term(k, c.clone());
        }
    }

    pub fn mul(&self, o: &PiPoly) -> PiPoly {
        let mut r = PiPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &o.coeffs {
                r.add_term(a + b, ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, s: &Rational) -> PiPoly {
        let mut r = PiPoly::zero();
        for (&k, c) in &self.coeffs {
            r.add_term(k, c * s);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.coeffs.iter()
    }

    /// Value at `pi^2 = pi2`.
    pub fn eval(&self, pi2: f64) -> f64 {
        self.coeffs.iter().map(|(&k, c)| crate::algebra::to_f64(c) * num_traits::Float::powi(pi2, k as i32)).sum()
    }
}

/// `sum terms[k] * prod z_i^(-2 k_i)`, every `k_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPLaurent {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, PiPoly>,
}

/// `sum terms[m] * prod L_i^(2 m_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, PiPoly>,
}

fn add_into(map: &mut BTreeMap<Vec<u32>, PiPoly>, key: Vec<u32>, p: &PiPoly) {
    if p.is_zero() {
        return;
    }
    let e = map.entry(key.clone()).or_default();
    e.add_assign(p);
    if e.is_zero() {
        map.remove(&key);
    }
}

fn is_symmetric(n: usize, terms: &BTreeMap<Vec<u32>, PiPoly>) -> bool {
    for (k, c) in terms {
        for i in 0..n.saturating_sub(1) {
            let mut s = k.clone();
            s.swap(i, i + 1);
            if terms.get(&s) != Some(c) {
                return false;
            }
        }
    }
    true
}

impl WPLaurent {
    pub fn is_symmetric(&self) -> bool {
        is_symmetric(self.n, &self.terms)
    }

    /// Evaluate at real points.
    pub fn eval(&self, z: &[f64]) -> f64 {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        self.terms
            .iter()
            .map(|(k, c)| c.eval(pi2) * k.iter().zip(z).map(|(&ki, &zi)| num_traits::Float::powi(zi, -2 * ki as i32)).product::<f64>())
            .sum()
    }
}

impl VolumePoly {
    pub fn is_symmetric(&self) -> bool {
        is_symmetric(self.n, &self.terms)
    }

    /// `Some(d)` if every term has `sum m_i + pi-power = d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (m, c) in &self.terms {
            let base: u32 = m.iter().sum();
            for (&k, _) in c.terms() {
                match deg {
                    None => deg = Some(base + k),
                    Some(d) if d != base + k => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|c| c.terms().all(|(_, r)| r.is_positive()))
    }

    /// Coefficient of `prod L_i^(2 m_i) (pi^2)^k`.
    pub fn coeff(&self, m: &[u32], k: u32) -> Rational {
        self.terms.get(m).map(|p| p.coeff(k)).unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, l: &[f64]) -> f64 {
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        self.terms
            .iter()
            .map(|(m, c)| c.eval(pi2) * m.iter().zip(l).map(|(&mi, &li)| num_traits::Float::powi(li, 2 * mi as i32)).product::<f64>())
            .sum()
    }

    /// LaTeX rendering, highest degree terms first.
    pub fn to_latex(&self) -> String {
        use core::fmt::Write;
        let mut flat: Vec<(Vec<u32>, u32, Rational)> = Vec::new();
        for (m, c) in &self.terms {
            for (&k, r) in c.terms() {
                flat.push((m.clone(), k, r.clone()));
            }
        }
        flat.sort_by(|a, b| (b.0.iter().sum::<u32>(), &b.0).cmp(&(a.0.iter().sum::<u32>(), &a.0)));
        let mut s = String::new();
        if flat.is_empty() {
            return "0".into();
        }
        for (idx, (m, k, r)) in flat.iter().enumerate() {
            let neg = r.is_negative();
            if idx > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = r.abs();
            let mut mono = String::new();
            if *k > 0 {
                mono.push_str("\\pi^{");
                let _ = write!(mono, "{}", 2 * k);
                mono.push('}');
            }
            for (i, &mi) in m.iter().enumerate() {
                if mi > 0 {
                    let _ = write!(mono, "L_{{{}}}^{{{}}}", i + 1, 2 * mi);
                }
            }
            if a.denom().is_one() {
                if !a.is_one() || mono.is_empty() {
                    let _ = write!(s, "{}", a.numer());
                }
            } else {
                let _ = write!(s, "\\frac{{{}}}{{{}}}", a.numer(), a.denom());
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Display for VolumePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_latex())
    }
}

/// Taylor coefficients `c_k` of `w / sin(w) = sum c_k w^(2k)`, `k < order`,
/// by exact series division.
pub fn sinc_inverse_coeffs(order: usize) -> Vec<Rational> {
    // sin(w)/w = sum s_k w^(2k), s_k = (-1)^k / (2k+1)!
    let mut s = Vec::with_capacity(order);
    let mut fact = Rational::one();
    for k in 0..order {
        if k > 0 {
            fact = fact * rat_int((2 * k) as i64) * rat_int((2 * k + 1) as i64);
        }
        let v = Rational::one() / &fact;
        s.push(if k % 2 == 0 { v } else { -v });
    }
    let mut c: Vec<Rational> = Vec::with_capacity(order);
    for k in 0..order {
        let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
        for j in 1..=k {
            acc -= &s[j] * &c[k - j];
        }
        c.push(acc);
    }
    c
}

/// `2z * pi/sin(2 pi z) = sum_k a_k z^(2k)` with `a_k = c_k (2 pi)^(2k)`
/// folded into `Q[pi^2]`. At most 64 terms.
pub fn kernel_series(order: usize) -> Result<Vec<PiPoly>> {
    if order > 64 {
        return Err(Error::TooLarge("kernel series order above 64"));
    }
    Ok(sinc_inverse_coeffs(order)
        .into_iter()
        .enumerate()
        .map(|(k, c)| PiPoly::term(c * num_traits::pow(rat_int(4), k), k as u32))
        .collect())
}

/// `W_{0,3}`, the only base case stored as a table.
pub fn base_cases() -> BTreeMap<(u32, u32), WPLaurent> {
    let mut t = BTreeMap::new();
    let mut terms = BTreeMap::new();
    terms.insert(vec![1, 1, 1], PiPoly::constant(Rational::one()));
    t.insert((0, 3), WPLaurent { n: 3, terms });
    t
}

/// `W_{0,2}(z, -z) = 1/(4 z^2)`, as (half power of z, coefficient).
pub fn w02_antidiagonal() -> (i32, Rational) {
    (-1, Rational::new(1.into(), 4.into()))
}

fn stable(g: u32, n: u32) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// A bracket factor: keys are (e, ks) for `z^(2e) prod_j z_j^(-2 ks[j])`
/// over the `n` outer variables.
type Series = BTreeMap<(i32, Vec<u32>), PiPoly>;

fn series_add(s: &mut Series, key: (i32, Vec<u32>), p: PiPoly) {
    if p.is_zero() {
        return;
    }
    let e = s.entry(key.clone()).or_default();
    e.add_assign(&p);
    if e.is_zero() {
        s.remove(&key);
    }
}

fn min_e(s: &Series) -> i32 {
    s.keys().map(|k| k.0).min().unwrap_or(0)
}

/// Memoizing driver. One engine can serve many requests.
#[derive(Clone, Debug)]
pub struct WpEngine {
    memo: BTreeMap<(u32, u32), WPLaurent>,
    cap: u32,
    kernel: Vec<PiPoly>,
}

impl Default for WpEngine {
    fn default() -> Self {
        Self::new(DEFAULT_CAP)
    }
}

impl WpEngine {
    pub fn new(cap: u32) -> Self {
        WpEngine { memo: base_cases(), cap, kernel: Vec::new() }
    }

    fn check(&self, g: u32, n: u32) -> Result<()> {
        if !stable(g, n) {
            return Err(Error::Unstable(g as i64, n as i64));
        }
        if n == 0 {
            return Err(Error::Invalid("the recursion needs at least one boundary (n >= 1)".into()));
        }
        if 3 * g + n - 3 > self.cap {
            return Err(Error::TooLarge("3g - 3 + n exceeds the configured cap"));
        }
        Ok(())
    }

    /// `W_{g,n}`.
    pub fn laurent(&mut self, g: u32, n: u32) -> Result<WPLaurent> {
        self.check(g, n)?;
        self.compute(g, n)?;
        Ok(self.memo[&(g, n)].clone())
    }

    /// `V_{g,n}`.
    pub fn volume(&mut self, g: u32, n: u32) -> Result<VolumePoly> {
        let w = self.laurent(g, n)?;
        inverse_laplace(&w)
    }

    fn compute(&mut self, g: u32, n: u32) -> Result<()> {
        if self.memo.contains_key(&(g, n)) {
            return Ok(());
        }
        // dependencies first, so the step itself only reads the memo
        if g >= 1 && !(g == 1 && n == 1) {
            self.compute(g - 1, n + 1)?;
        }
        for g1 in 0..=g {
            for s1 in 0..n {
                let (g2, s2) = (g - g1, n - 1 - s1);
                for (gg, ss) in [(g1, s1), (g2, s2)] {
                    if stable(gg, ss + 1) && (gg, ss + 1) != (g, n) {
                        self.compute(gg, ss + 1)?;
                    }
                }
            }
        }
        let w = self.step(g, n)?;
        self.memo.insert((g, n), w);
        Ok(())
    }

    /// Substitute `W_{g',n'}` at `(z, vars...)` or, with `double`, at
    /// `(z, -z, vars...)`; `vars` are outer variable indices.
    fn factor(&self, g: u32, nn: u32, vars: &[usize], n_outer: usize, double: bool) -> Series {
        let mut s = Series::new();
        if (g, nn) == (0, 2) && double {
            let (e, c) = w02_antidiagonal();
            s.insert((e, vec![0; n_outer]), PiPoly::constant(c));
            return s;
        }
        let w = &self.memo[&(g, nn)];
        let skip = if double { 2 } else { 1 };
        for (k, c) in &w.terms {
            let e = -(k[..skip].iter().sum::<u32>() as i32);
            let mut ks = vec![0u32; n_outer];
            for (t, &v) in vars.iter().enumerate() {
                ks[v] = k[skip + t];
            }
            series_add(&mut s, (e, ks), c.clone());
        }
        s
    }

    /// Even part of `W_{0,2}(z, z_j) = sum_k (k+1) z^k z_j^(-k-2)` up to
    /// `z^(2 qmax)`. Odd powers of `z` cannot reach the residue: the other
    /// factor is even in `z` or itself a `W_{0,2}`, in which case only the
    /// constant terms survive the `e <= 0` cut.
    fn w02_series(j: usize, n_outer: usize, qmax: i32) -> Series {
        let mut s = Series::new();
        for q in 0..=qmax.max(0) {
            let mut ks = vec![0u32; n_outer];
            ks[j] = q as u32 + 1;
            s.insert((q, ks), PiPoly::constant(rat_int(2 * q as i64 + 1)));
        }
        s
    }

    fn product(a: &Series, b: &Series, out: &mut Series) {
        for ((ea, ka), ca) in a {
            for ((eb, kb), cb) in b {
                if ea + eb > 0 {
                    continue;
                }
                let ks: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                series_add(out, (ea + eb, ks), ca.mul(cb));
            }
        }
    }

    fn step(&mut self, g: u32, n1: u32) -> Result<WPLaurent> {
        let n = (n1 - 1) as usize;
        let mut bracket = Series::new();
        if g >= 1 {
            let vars: Vec<usize> = (0..n).collect();
            let f = self.factor(g - 1, n1 + 1, &vars, n, true);
            for (k, c) in f {
                series_add(&mut bracket, k, c);
            }
        }
        for g1 in 0..=g {
            let g2 = g - g1;
            for mask in 0u32..(1 << n) {
                let i1: Vec<usize> = (0..n).filter(|&t| mask & (1 << t) != 0).collect();
                let i2: Vec<usize> = (0..n).filter(|&t| mask & (1 << t) == 0).collect();
                if (g1 == 0 && i1.is_empty()) || (g2 == 0 && i2.is_empty()) {
                    continue;
                }
                let w02_1 = g1 == 0 && i1.len() == 1;
                let w02_2 = g2 == 0 && i2.len() == 1;
                match (w02_1, w02_2) {
                    (false, false) => {
                        let a = self.factor(g1, i1.len() as u32 + 1, &i1, n, false);
                        let b = self.factor(g2, i2.len() as u32 + 1, &i2, n, false);
                        Self::product(&a, &b, &mut bracket);
                    }
                    (true, false) => {
                        let b = self.factor(g2, i2.len() as u32 + 1, &i2, n, false);
                        let a = Self::w02_series(i1[0], n, -min_e(&b));
                        Self::product(&a, &b, &mut bracket);
                    }
                    (false, true) => {
                        let a = self.factor(g1, i1.len() as u32 + 1, &i1, n, false);
                        let b = Self::w02_series(i2[0], n, -min_e(&a));
                        Self::product(&a, &b, &mut bracket);
                    }
                    (true, true) => {
                        let a = Self::w02_series(i1[0], n, 0);
                        let b = Self::w02_series(i2[0], n, 0);
                        Self::product(&a, &b, &mut bracket);
                    }
                }
            }
        }

        // Res z^(2e) * (1/(2z)) sum_k a_k z^(2k) * sum_b z^(2b) z_{n+1}^(-2b-2)
        // picks 2e + 2k + 2b = 0.
        let need = (-min_e(&bracket)).max(0) as usize;
        let bound = 2 * (3 * g as usize + n1 as usize - 3) + 4;
        debug_assert!(2 * need <= bound + 4, "truncation order above the documented bound");
        if self.kernel.len() < need + 1 {
            self.kernel = kernel_series(need + 1)?;
        }
        let half = Rational::new(1.into(), 2.into());
        let mut terms: BTreeMap<Vec<u32>, PiPoly> = BTreeMap::new();
        for ((e, ks), c) in &bracket {
            if *e > 0 {
                continue;
            }
            let m = (-e) as usize;
            for k in 0..=m {
                let b = m - k;
                let mut key = ks.clone();
                key.push(b as u32 + 1);
                add_into(&mut terms, key, &c.mul(&self.kernel[k]).scale(&half));
            }
        }
        let w = WPLaurent { n: n1 as usize, terms };
        if w.terms.keys().any(|k| k.iter().any(|&v| v == 0)) {
            return Err(Error::Invalid("recursion produced a term regular in some variable".into()));
        }
        if !w.is_symmetric() {
            return Err(Error::Invalid("recursion output is not symmetric".into()));
        }
        Ok(w)
    }
}

/// `prod z_i^(-(2k_i + 2))  ->  prod L_i^(2 k_i) / (2 k_i + 1)!`
pub fn inverse_laplace(w: &WPLaurent) -> Result<VolumePoly> {
    let mut terms = BTreeMap::new();
    for (k, c) in &w.terms {
        let mut scale = Rational::one();
        let mut m = Vec::with_capacity(k.len());
        for &ki in k {
            if ki == 0 {
                return Err(Error::Invalid("term without a 1/z^2 factor".into()));
            }
            let mi = ki - 1;
            let mut f = Rational::one();
            for t in 1..=(2 * mi + 1) {
                f *= rat_int(t as i64);
            }
            scale /= f;
            m.push(mi);
        }
        add_into(&mut terms, m, &c.scale(&scale));
    }
    Ok(VolumePoly { n: w.n, terms })
}

/// Forward transform, the exact inverse of [`inverse_laplace`].
pub fn laplace(v: &VolumePoly) -> WPLaurent {
    let mut terms = BTreeMap::new();
    for (m, c) in &v.terms {
        let mut scale = Rational::one();
        for &mi in m {
            for t in 1..=(2 * mi + 1) {
                scale *= rat_int(t as i64);
            }
        }
        add_into(&mut terms, m.iter().map(|&x| x + 1).collect(), &c.scale(&scale));
    }
    WPLaurent { n: v.n, terms }
}

/// `W_{g,n}` with a fresh engine and the default cap.
pub fn w_laurent(g: u32, n: u32) -> Result<WPLaurent> {
    WpEngine::default().laurent(g, n)
}

/// `V_{g,n}` with a fresh engine and the default cap.
pub fn volume(g: u32, n: u32) -> Result<VolumePoly> {
    WpEngine::default().volume(g, n)
}

#[cfg(test)]
fn w02(a: f64, b: f64) -> f64 {
    1.0 / ((a - b) * (a - b))
}
