//! Divisors, Abel images of divisors and Riemann-Roch dimensions.
//!
//! `r(-D)` is the dimension of `{f : (f) + D >= 0}` and `i(D)` the dimension
//! of the matching space of 1-forms, so that `r(-D) = deg D + 1 - g + i(D)`.
//! Genus 0 and 1 are computed; higher genus only gets the identity and
//! inequality checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::periods::lattice_distance;
use crate::theta::SiegelMatrix;

/// Lattice membership: at most this far from `Z^g + τZ^g` counts as on it.
pub const LATTICE_TOL: f64 = 1e-8;
/// Between the two thresholds the test refuses to decide.
pub const INCONCLUSIVE_TOL: f64 = 1e-6;
pub const CANONICAL_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct Divisor<P> {
    entries: Vec<(P, i64)>,
}

impl<P: PartialEq + Clone> Divisor<P> {
    /// Rejects repeated points and zero weights.
    pub fn new(entries: Vec<(P, i64)>) -> Result<Self> {
        for (i, (p, w)) in entries.iter().enumerate() {
            if *w == 0 {
                return Err(Error::Invalid("zero weight in divisor".into()));
            }
            if entries[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::Invalid("repeated point in divisor".into()));
            }
        }
        Ok(Divisor { entries })
    }

    /// Sums the weights of repeated points and drops zeros.
    pub fn collect(entries: impl IntoIterator<Item = (P, i64)>) -> Self {
        let mut out: Vec<(P, i64)> = Vec::new();
        for (p, w) in entries {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += w,
                None => out.push((p, w)),
            }
        }
        out.retain(|(_, w)| *w != 0);
        Divisor { entries: out }
    }

    pub fn zero() -> Self {
        Divisor { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[(P, i64)] {
        &self.entries
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|(_, w)| *w > 0)
    }

    /// `D = D_+ - D_-` with both parts positive.
    pub fn split(&self) -> (Self, Self) {
        let pos = self.entries.iter().filter(|(_, w)| *w > 0).cloned().collect();
        let neg = self.entries.iter().filter(|(_, w)| *w < 0).map(|(p, w)| (p.clone(), -w)).collect();
        (Divisor { entries: pos }, Divisor { entries: neg })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::collect(self.entries.iter().chain(other.entries.iter()).cloned())
    }

    pub fn neg(&self) -> Self {
        Divisor { entries: self.entries.iter().map(|(p, w)| (p.clone(), -w)).collect() }
    }

    /// `u(D) = Σ w u(p)`; `abel` must know every point.
    pub fn abel(&self, g: usize, abel: impl Fn(&P) -> Option<Vec<Complex64>>) -> Result<Vec<Complex64>> {
        let mut acc = vec![Complex64::zero(); g];
        for (p, w) in &self.entries {
            let u = abel(p).ok_or_else(|| Error::Invalid("missing Abel value for a divisor point".into()))?;
            if u.len() != g {
                return Err(Error::Invalid(format!("Abel value of length {} for genus {g}", u.len())));
            }
            for (a, b) in acc.iter_mut().zip(u) {
                *a += b * *w as f64;
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RRResult {
    pub r_minus_d: u64,
    pub i_d: u64,
    pub genus: u64,
    pub degree: i64,
}

impl RRResult {
    /// Checks `r(-D) = deg D + 1 - g + i(D)`.
    pub fn new(r_minus_d: u64, i_d: u64, degree: i64, genus: u64) -> Result<Self> {
        if r_minus_d as i128 != degree as i128 + 1 - genus as i128 + i_d as i128 {
            return Err(Error::Invalid(format!("Riemann-Roch identity fails: r={r_minus_d}, i={i_d}, deg={degree}, g={genus}")));
        }
        Ok(RRResult { r_minus_d, i_d, genus, degree })
    }
}

pub fn rr_genus0<P: PartialEq + Clone>(d: &Divisor<P>) -> Result<RRResult> {
    let n = d.degree();
    RRResult::new((1 + n).max(0) as u64, (-1 - n).max(0) as u64, n, 0)
}

/// `true` when `v` lies on the lattice, `false` when it is clearly off, and
/// an error in the band between `tol` and [`INCONCLUSIVE_TOL`].
pub fn on_lattice(v: &[Complex64], tau: &SiegelMatrix, tol: f64) -> Result<bool> {
    let (_, _, dist) = lattice_distance(v, tau);
    if dist <= tol {
        Ok(true)
    } else if dist < INCONCLUSIVE_TOL {
        Err(Error::Inconclusive(dist))
    } else {
        Ok(false)
    }
}

/// Genus one: `deg D > 0` gives `deg D`, `deg D < 0` gives 0, and degree 0
/// gives 1 exactly when `u(D)` is on the lattice.
pub fn rr_genus1<P: PartialEq + Clone>(d: &Divisor<P>, tau: Complex64, abel: impl Fn(&P) -> Option<Complex64>) -> Result<RRResult> {
    let n = d.degree();
    let r = if n > 0 {
        n as u64
    } else if n < 0 {
        0
    } else {
        let t = SiegelMatrix::scalar(tau)?;
        let u = d.abel(1, |p| abel(p).map(|z| vec![z]))?;
        if on_lattice(&u, &t, LATTICE_TOL)? {
            1
        } else {
            0
        }
    };
    // i(D) = r(-D) - deg D - 1 + g
    let i = r as i64 - n;
    RRResult::new(r, i as u64, n, 1)
}

/// Degree 0 and `u(D)` on the lattice.
pub fn is_principal<P: PartialEq + Clone>(d: &Divisor<P>, tau: &SiegelMatrix, abel: impl Fn(&P) -> Option<Vec<Complex64>>) -> Result<bool> {
    if d.degree() != 0 {
        return Ok(false);
    }
    let u = d.abel(tau.g(), abel)?;
    on_lattice(&u, tau, LATTICE_TOL)
}

/// Degree `2g - 2` and `u(D) ≡ 2K`.
pub fn canonical_check<P: PartialEq + Clone>(
    form_divisor: &Divisor<P>,
    g: usize,
    tau: &SiegelMatrix,
    abel: impl Fn(&P) -> Option<Vec<Complex64>>,
    k: &[Complex64],
) -> Result<bool> {
    if tau.g() != g || k.len() != g {
        return Err(Error::Invalid("genus does not match the period data".into()));
    }
    if form_divisor.degree() != 2 * g as i64 - 2 {
        return Ok(false);
    }
    let u = form_divisor.abel(g, abel)?;
    let v: Vec<Complex64> = u.iter().zip(k).map(|(a, b)| a - b * 2.0).collect();
    on_lattice(&v, tau, CANONICAL_TOL)
}

/// `r(-D) >= deg D - g + 1` for positive `D`, genus 0 or 1.
pub fn riemann_inequality_check<P: PartialEq + Clone>(d: &Divisor<P>, g: usize) -> Result<bool> {
    if !d.is_positive() {
        return Err(Error::Invalid("divisor must be positive".into()));
    }
    let r = match g {
        0 => rr_genus0(d)?.r_minus_d,
        // a positive divisor has deg > 0 or is empty; no Abel data needed
        1 => {
            if d.degree() == 0 {
                1
            } else {
                d.degree() as u64
            }
        }
        _ => return Err(Error::Invalid(format!("unsupported genus {g}"))),
    };
    Ok(r as i64 >= d.degree() - g as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_invariants() {
        assert!(Divisor::new(vec![(1, 2), (1, 3)]).is_err());
        assert!(Divisor::new(vec![(1, 0)]).is_err());
        let d = Divisor::collect([(1, 3), (2, -3), (1, -3)]);
        assert_eq!(d.entries(), &[(2, -3)]);
        assert_eq!(Divisor::<i32>::zero().degree(), 0);
    }

    #[test]
    fn genus_zero_examples() {
        let r = rr_genus0(&Divisor::<i32>::zero()).unwrap();
        assert_eq!((r.r_minus_d, r.i_d), (1, 0));
        let r = rr_genus0(&Divisor::new(vec![(0, 3)]).unwrap()).unwrap();
        assert_eq!((r.r_minus_d, r.i_d), (4, 0));
        let r = rr_genus0(&Divisor::new(vec![(0, -2)]).unwrap()).unwrap();
        assert_eq!((r.r_minus_d, r.i_d), (0, 1));
    }

    #[test]
    fn rr_constructor_rejects() {
        assert!(RRResult::new(2, 0, 3, 1).is_err());
        assert!(RRResult::new(3, 0, 3, 1).is_ok());
    }
}
