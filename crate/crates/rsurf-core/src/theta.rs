//! Riemann theta function `Θ(u, τ) = Σ_n exp(πi n·τn + 2πi n·u)` with a
//! certified truncation, its derivatives, and the objects built from it:
//! prime form, Bergman and Szegő kernels, Fay and Hirota checks, and the
//! determinant form of the Szegő kernel of a pinched curve.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{CMat, RMat};

const I: Complex64 = Complex64::new(0.0, 1.0);
const U_ROUND: f64 = f64::EPSILON;
/// Lattice points visited before giving up on an ill-conditioned `Im τ`.
pub const MAX_LATTICE_POINTS: usize = 4_000_000;
pub const MAX_GENUS: usize = 8;

/// Symmetric complex matrix with positive definite imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelMatrix {
    g: usize,
    entries: CMat,
    chol: RMat,
    im_inv: RMat,
    lambda_min: f64,
}

impl SiegelMatrix {
    pub fn new(entries: CMat) -> Result<Self> {
        if entries.rows != entries.cols || entries.rows == 0 {
            return Err(Error::NotSiegel("not a nonempty square matrix"));
        }
        let g = entries.rows;
        if g > MAX_GENUS {
            return Err(Error::TooLarge("genus above 8"));
        }
        for i in 0..g {
            for j in 0..g {
                let (a, b) = (entries[(i, j)], entries[(j, i)]);
                if !(a.re.is_finite() && a.im.is_finite()) {
                    return Err(Error::NotSiegel("non-finite entry"));
                }
                if (a - b).norm() >= 1e-12 {
                    return Err(Error::NotSiegel("not symmetric"));
                }
            }
        }
        // symmetrize exactly so that n·τn is computed on a symmetric matrix
        let entries = CMat::from_fn(g, g, |i, j| (entries[(i, j)] + entries[(j, i)]) * 0.5);
        let y = entries.im();
        let lambda_min = y.min_eigenvalue();
        if !(lambda_min > 0.0) {
            return Err(Error::NotSiegel("imaginary part not positive definite"));
        }
        let chol = y.cholesky().ok_or(Error::NotSiegel("imaginary part not positive definite"))?;
        let im_inv = y.inverse().ok_or(Error::NotSiegel("imaginary part singular"))?;
        Ok(Self { g, entries, chol, im_inv, lambda_min })
    }

    pub fn scalar(tau: Complex64) -> Result<Self> {
        Self::new(CMat::from_fn(1, 1, |_, _| tau))
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    /// `(Im τ)^{-1}`
    pub fn im_inverse(&self) -> &RMat {
        &self.im_inv
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Half period `a/2 + τ b/2` with `a, b ∈ {0,1}^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCharacteristic {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub parity: Parity,
}

impl HalfCharacteristic {
    pub fn new(a: Vec<u8>, b: Vec<u8>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() || a.iter().chain(&b).any(|&x| x > 1) {
            return Err(Error::Invalid("characteristic entries must be 0/1 vectors of equal length".into()));
        }
        let dot: u32 = a.iter().zip(&b).map(|(&x, &y)| (x * y) as u32).sum();
        let parity = if dot % 2 == 1 { Parity::Odd } else { Parity::Even };
        Ok(Self { a, b, parity })
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn point(&self, tau: &SiegelMatrix) -> Vec<Complex64> {
        let g = self.a.len();
        (0..g)
            .map(|i| {
                let tb: Complex64 = (0..g).map(|j| tau.entries[(i, j)] * self.b[j] as f64).sum();
                (tb + self.a[i] as f64) * 0.5
            })
            .collect()
    }
}

/// All `2^{2g}` characteristics.
pub fn all_characteristics(g: usize) -> Vec<HalfCharacteristic> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (2 * g)) {
        let a: Vec<u8> = (0..g).map(|i| ((mask >> i) & 1) as u8).collect();
        let b: Vec<u8> = (0..g).map(|i| ((mask >> (g + i)) & 1) as u8).collect();
        out.push(HalfCharacteristic::new(a, b).expect("0/1 entries"));
    }
    out
}

/// The `2^{g-1}(2^g - 1)` odd characteristics.
pub fn odd_characteristics(g: usize) -> Vec<HalfCharacteristic> {
    all_characteristics(g).into_iter().filter(|c| c.is_odd()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    pub error_bound: f64,
}

/// Value, gradient and Hessian of `Θ` with an error bound for each.
#[derive(Clone, Debug)]
pub struct ThetaJet {
    pub value: Complex64,
    pub grad: Vec<Complex64>,
    pub hess: CMat,
    pub bounds: [f64; 3],
    pub points: usize,
}

/// Tail bound for the `m`-th derivative.
///
/// With `x = n + c`, `c = (Im τ)^{-1} Im u`, the terms satisfy
/// `|t_n| = exp(π c·Yc) exp(-π x·Yx)` and derivatives add a factor at most
/// `(2π|n|)^m <= (2π)^m (|x|_Y/√λ + |c|)^m`. For `x·Yx >= R^2 >= m/π` this
/// factor times `exp(-π x·Yx/2)` is decreasing, and the remaining sum
/// `Σ exp(-π x·Yx/2) <= Π_i Σ_k exp(-πλ(k+c_i)^2/2) <= (1 + √(2/λ))^g`.
fn tail_bound(m: usize, r: f64, shift: f64, lambda: f64, cnorm: f64, g: usize) -> f64 {
    let count = (1.0 + (2.0 / lambda).sqrt()).powi(g as i32);
    let poly = (2.0 * PI * (r / lambda.sqrt() + cnorm)).powi(m as i32);
    (shift - PI * r * r / 2.0).exp() * count * poly
}

/// Visit every `n ∈ Z^g` with `(n+c)·Y(n+c) <= r2` where `Y = L L^T`.
fn enumerate(l: &RMat, c: &[f64], r2: f64, f: &mut impl FnMut(&[i64])) -> Result<usize> {
    let g = c.len();
    let mut n = vec![0i64; g];
    let mut count = 0usize;
    rec(l, c, r2, g, 0.0, &mut n, &mut count, f)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn rec(l: &RMat, c: &[f64], r2: f64, level: usize, partial: f64, n: &mut [i64], count: &mut usize, f: &mut impl FnMut(&[i64])) -> Result<()> {
    if level == 0 {
        *count += 1;
        if *count > MAX_LATTICE_POINTS {
            return Err(Error::TooLarge("theta ellipsoid exceeds the lattice point cap"));
        }
        f(n);
        return Ok(());
    }
    let i = level - 1;
    let s: f64 = (i + 1..c.len()).map(|j| l[(j, i)] * (n[j] as f64 + c[j])).sum();
    let rem = r2 - partial;
    if rem < 0.0 {
        return Ok(());
    }
    let t = rem.sqrt();
    let lii = l[(i, i)];
    let lo = ((-t - s) / lii - c[i]).ceil() as i64;
    let hi = ((t - s) / lii - c[i]).floor() as i64;
    for k in lo..=hi {
        n[i] = k;
        let z = lii * (k as f64 + c[i]) + s;
        rec(l, c, r2, i, partial + z * z, n, count, f)?;
    }
    Ok(())
}

/// Lattice sums for `Θ` and derivatives up to `order` (0, 1 or 2).
pub fn theta_jet(u: &[Complex64], tau: &SiegelMatrix, eps: f64, order: usize) -> Result<ThetaJet> {
    let g = tau.g;
    if u.len() != g {
        return Err(Error::Invalid("argument length differs from genus".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Invalid("eps must be positive".into()));
    }
    if u.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Invalid("non-finite argument".into()));
    }
    let order = order.min(2);
    let y: Vec<f64> = u.iter().map(|z| z.im).collect();
    let c = tau.im_inv.mul_vec(&y);
    let ymat = tau.entries.im();
    let yc = ymat.mul_vec(&c);
    let shift = PI * c.iter().zip(&yc).map(|(a, b)| a * b).sum::<f64>();
    let cnorm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lambda = tau.lambda_min;
    let count = (1.0 + (2.0 / lambda).sqrt()).powi(g as i32);
    let mut r2 = ((2.0 / PI) * ((count / eps).ln() + shift)).max(order as f64).max(1.0);
    let mut guard = 0;
    while tail_bound(order, r2.sqrt(), shift, lambda, cnorm, g) > eps {
        r2 *= 1.1;
        guard += 1;
        if guard > 2000 {
            return Err(Error::TooLarge("theta truncation radius"));
        }
    }
    let r = r2.sqrt();
    let tau_m = &tau.entries;
    let mut value = Complex64::zero();
    let mut grad = vec![Complex64::zero(); g];
    let mut hess = CMat::zeros(g, g);
    let mut abs = [0.0f64; 3];
    let mut rnd = [0.0f64; 3];
    // terms are recentred as exp(phase) with the real part bounded by `shift`
    let points = enumerate(&tau.chol, &c, r2, &mut |n: &[i64]| {
        let mut quad = Complex64::zero();
        for i in 0..g {
            if n[i] == 0 {
                continue;
            }
            let mut row = Complex64::zero();
            for j in 0..g {
                row += tau_m[(i, j)] * n[j] as f64;
            }
            quad += row * n[i] as f64;
        }
        let lin: Complex64 = n.iter().zip(u).map(|(&k, &z)| z * k as f64).sum();
        let phase = I * PI * quad + I * 2.0 * PI * lin;
        let t = phase.exp();
        let ta = t.norm();
        // exp loses about |phase| ulps after argument reduction
        let w = 4.0 + phase.norm();
        value += t;
        abs[0] += ta;
        rnd[0] += ta * w;
        if order >= 1 {
            let nn: f64 = n.iter().map(|&k| (k * k) as f64).sum::<f64>().sqrt();
            abs[1] += ta * 2.0 * PI * nn;
            abs[2] += ta * (2.0 * PI * nn).powi(2);
            rnd[1] += ta * 2.0 * PI * nn * w;
            rnd[2] += ta * (2.0 * PI * nn).powi(2) * w;
            for i in 0..g {
                let di = I * 2.0 * PI * n[i] as f64;
                grad[i] += di * t;
                if order >= 2 {
                    for j in 0..g {
                        hess[(i, j)] += di * (I * 2.0 * PI * n[j] as f64) * t;
                    }
                }
            }
        }
    })?;
    // recursive summation adds at most (N-1) u Σ|t|
    let sum_err = U_ROUND * points as f64;
    let bounds: [f64; 3] = core::array::from_fn(|m| tail_bound(m, r, shift, lambda, cnorm, g) + U_ROUND * rnd[m] + sum_err * abs[m]);
    Ok(ThetaJet { value, grad, hess, bounds, points })
}

/// `Θ(u, τ)` within `eps` (plus rounding, reported in `error_bound`).
pub fn theta(u: &[Complex64], tau: &SiegelMatrix, eps: f64) -> Result<ThetaValue> {
    let j = theta_jet(u, tau, eps, 0)?;
    Ok(ThetaValue { value: j.value, error_bound: j.bounds[0] })
}

pub fn theta_grad(u: &[Complex64], tau: &SiegelMatrix, eps: f64) -> Result<Vec<Complex64>> {
    Ok(theta_jet(u, tau, eps, 1)?.grad)
}

pub fn theta_hessian(u: &[Complex64], tau: &SiegelMatrix, eps: f64) -> Result<CMat> {
    Ok(theta_jet(u, tau, eps, 2)?.hess)
}

/// `|Θ(u + τn) - Θ(u) exp(-2πi n·u - πi n·τn)|`, divided by
/// `max(1, |Θ(u) exp(...)|)` so that large shifts are measured relative to
/// the size of the values.
pub fn theta_quasi_residual(u: &[Complex64], n: &[i64], tau: &SiegelMatrix) -> Result<f64> {
    let g = tau.g;
    if n.len() != g {
        return Err(Error::Invalid("shift length differs from genus".into()));
    }
    let tn: Vec<Complex64> = (0..g).map(|i| (0..g).map(|j| tau.entries[(i, j)] * n[j] as f64).sum()).collect();
    let ntn: Complex64 = n.iter().zip(&tn).map(|(&k, &z)| z * k as f64).sum();
    let nu: Complex64 = n.iter().zip(u).map(|(&k, &z)| z * k as f64).sum();
    let phase = (-I * 2.0 * PI * nu - I * PI * ntn).exp();
    let base = theta(u, tau, 1e-15)?;
    let shifted: Vec<Complex64> = u.iter().zip(&tn).map(|(a, b)| a + b).collect();
    let scale = (phase.norm() * base.value.norm()).max(1.0);
    let lhs = theta(&shifted, tau, 1e-15 * scale)?;
    Ok((lhs.value - base.value * phase).norm() / scale)
}

fn ensure_off_divisor(j: &ThetaJet) -> Result<()> {
    if j.value.norm() < 1e3 * j.bounds[0] {
        return Err(Error::Singular("argument on the theta divisor"));
    }
    Ok(())
}

/// Hessian of `log Θ` at `v`.
pub fn log_theta_hessian(v: &[Complex64], tau: &SiegelMatrix, eps: f64) -> Result<CMat> {
    let j = theta_jet(v, tau, eps, 2)?;
    ensure_off_divisor(&j)?;
    let g = tau.g;
    let t = j.value;
    Ok(CMat::from_fn(g, g, |a, b| j.hess[(a, b)] / t - j.grad[a] * j.grad[b] / (t * t)))
}

pub fn log_theta_grad(v: &[Complex64], tau: &SiegelMatrix, eps: f64) -> Result<Vec<Complex64>> {
    let j = theta_jet(v, tau, eps, 1)?;
    ensure_off_divisor(&j)?;
    Ok(j.grad.iter().map(|d| d / j.value).collect())
}

const EPS: f64 = 1e-14;

/// Coefficient of `B = d_p d_q log Θ(u(p) - u(q) + c)` against the
/// holomorphic-form values `du_p`, `du_q`.
pub fn bergman_theta(
    tau: &SiegelMatrix,
    c: &HalfCharacteristic,
    u_p: &[Complex64],
    u_q: &[Complex64],
    du_p: &[Complex64],
    du_q: &[Complex64],
) -> Result<Complex64> {
    let g = tau.g;
    if c.a.len() != g || !c.is_odd() {
        return Err(Error::Invalid("an odd characteristic of matching genus is required".into()));
    }
    if [u_p.len(), u_q.len(), du_p.len(), du_q.len()].iter().any(|&l| l != g) {
        return Err(Error::Invalid("vector length differs from genus".into()));
    }
    let cp = c.point(tau);
    let v: Vec<Complex64> = (0..g).map(|i| u_p[i] - u_q[i] + cp[i]).collect();
    let h = log_theta_hessian(&v, tau, EPS)?;
    let mut acc = Complex64::zero();
    for i in 0..g {
        for j in 0..g {
            acc -= du_p[i] * h[(i, j)] * du_q[j];
        }
    }
    Ok(acc)
}

/// `B + 2πi Σ κ_ij ω_i(p) ω_j(q)`
pub fn kernel_shift(b: Complex64, omega_p: &[Complex64], omega_q: &[Complex64], kappa: &CMat) -> Result<Complex64> {
    let g = omega_p.len();
    if omega_q.len() != g || kappa.rows != g || kappa.cols != g {
        return Err(Error::Invalid("dimension mismatch".into()));
    }
    let scale = kappa.max_abs().max(1.0);
    for i in 0..g {
        for j in 0..i {
            if (kappa[(i, j)] - kappa[(j, i)]).norm() > 1e-12 * scale {
                return Err(Error::Invalid("kappa is not symmetric".into()));
            }
        }
    }
    let mut acc = Complex64::zero();
    for i in 0..g {
        for j in 0..g {
            acc += kappa[(i, j)] * omega_p[i] * omega_q[j];
        }
    }
    Ok(b + I * 2.0 * PI * acc)
}

/// `κ = (log Θ)''(ζ) / (πi)`, so that the shift adds `2 Σ (log Θ)''_ij ω_i ω_j`.
pub fn klein_kappa(zeta: &[Complex64], tau: &SiegelMatrix) -> Result<CMat> {
    let h = log_theta_hessian(zeta, tau, EPS)?;
    Ok(h.map(|z| z / (I * PI)))
}

/// `κ = (i/2) (Im τ)^{-1}`
pub fn schiffer_kappa(tau: &SiegelMatrix) -> CMat {
    tau.im_inv.map(|x| Complex64::new(0.0, 0.5 * x))
}

/// Genus one helpers in the torus coordinate (Abel map the identity).
fn g1(tau: Complex64) -> Result<(SiegelMatrix, Complex64)> {
    let t = SiegelMatrix::scalar(tau)?;
    Ok((t, (tau + 1.0) * 0.5))
}

/// `Θ'(c)` for the odd characteristic `c = (1+τ)/2`.
fn theta_prime_c(t: &SiegelMatrix, c: Complex64) -> Result<Complex64> {
    let d = theta_grad(&[c], t, EPS)?[0];
    if d.norm() < 1e-12 {
        return Err(Error::Singular("theta'(c) vanishes"));
    }
    Ok(d)
}

/// Odd theta with characteristic `(1,1)` up to a constant:
/// `e^{πi x} Θ(x + c)`, normalized by `Θ'(c)` so that `E(z,w) ~ z - w`.
fn prime_g1(t: &SiegelMatrix, c: Complex64, norm: Complex64, x: Complex64) -> Result<Complex64> {
    Ok((I * PI * x).exp() * theta(&[x + c], t, EPS)?.value / norm)
}

/// Prime form `E(z, w)` on `C/(Z + τZ)` in the `dz` trivialization.
pub fn prime_form_g1(tau: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
    let (t, c) = g1(tau)?;
    let norm = theta_prime_c(&t, c)?;
    prime_g1(&t, c, norm, z - w)
}

/// `d_p log [Θ(p - q1 + c) / Θ(p - q2 + c)]`, residues `+1` at `q1`,
/// `-1` at `q2`.
pub fn third_kind_form_g1(tau: Complex64, q1: Complex64, q2: Complex64, p: Complex64) -> Result<Complex64> {
    let (t, c) = g1(tau)?;
    if torus_distance(q1 - q2, tau) < 1e-12 {
        return Err(Error::Coincident);
    }
    let a = log_theta_grad(&[p - q1 + c], &t, EPS).map_err(|_| Error::Singular("evaluation at a pole"))?[0];
    let b = log_theta_grad(&[p - q2 + c], &t, EPS).map_err(|_| Error::Singular("evaluation at a pole"))?[0];
    Ok(a - b)
}

/// Distance from `z` to the lattice `Z + τZ`, measured in the plane after
/// reducing to the parallelogram around 0.
pub fn torus_distance(z: Complex64, tau: Complex64) -> f64 {
    let b = (z.im / tau.im).round();
    let z1 = z - tau * b;
    let a = z1.re.round();
    let mut best = f64::INFINITY;
    for da in -1..=1 {
        for db in -1..=1 {
            best = best.min((z1 - (a + da as f64) - tau * db as f64).norm());
        }
    }
    best
}

/// Szegő kernel `Θ(z - w + ζ + c) / (E(z, w) Θ(ζ + c))`, behaving like
/// `1/(z - w)` on the diagonal.
pub fn szego_g1(tau: Complex64, zeta: Complex64, z: Complex64, w: Complex64) -> Result<Complex64> {
    let t = SiegelMatrix::scalar(tau)?;
    let ctx = FayCtx::new(&t, &[zeta], &odd_characteristics(1)[0])?;
    ctx.s(&[z], &[w])
}

/// Shared data for kernel identities in arbitrary genus: the shift
/// `e = ζ + c` and the odd theta `e^{πi b·x} Θ(x + δ)` used in place of the
/// prime form. The half-differential factors of the prime form cancel in
/// every identity checked here, so only Abel images are needed. In genus
/// one the odd theta is normalized by `Θ'(δ)` and is the prime form.
struct FayCtx<'a> {
    tau: &'a SiegelMatrix,
    e: Vec<Complex64>,
    theta_e: Complex64,
    delta: Vec<Complex64>,
    b: Vec<f64>,
    norm: Complex64,
}

impl<'a> FayCtx<'a> {
    fn new(tau: &'a SiegelMatrix, zeta: &[Complex64], ch: &HalfCharacteristic) -> Result<Self> {
        let g = tau.g;
        if zeta.len() != g || ch.a.len() != g {
            return Err(Error::Invalid("vector length differs from genus".into()));
        }
        if !ch.is_odd() {
            return Err(Error::Invalid("an odd characteristic is required".into()));
        }
        let delta = ch.point(tau);
        let e: Vec<Complex64> = zeta.iter().zip(&delta).map(|(a, b)| a + b).collect();
        let te = theta(&e, tau, EPS)?;
        if te.value.norm() < 1e3 * te.error_bound {
            return Err(Error::Singular("theta(zeta + c) vanishes"));
        }
        let norm = if g == 1 { theta_prime_c(tau, delta[0])? } else { Complex64::new(1.0, 0.0) };
        let b = ch.b.iter().map(|&x| x as f64).collect();
        Ok(Self { tau, e, theta_e: te.value, delta, b, norm })
    }

    fn odd(&self, x: &[Complex64]) -> Result<Complex64> {
        let arg: Vec<Complex64> = x.iter().zip(&self.delta).map(|(a, b)| a + b).collect();
        let bx: Complex64 = x.iter().zip(&self.b).map(|(a, b)| a * b).sum();
        Ok((I * PI * bx).exp() * theta(&arg, self.tau, EPS)?.value / self.norm)
    }

    fn prime(&self, x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
        let d: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.odd(&d)
    }

    /// `S(x, y) = Θ(x - y + e) / (Θ(e) E(x, y))`
    fn s(&self, x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
        let e = self.prime(x, y)?;
        if e.norm() < 1e-12 {
            return Err(Error::Coincident);
        }
        let arg: Vec<Complex64> = (0..x.len()).map(|i| x[i] - y[i] + self.e[i]).collect();
        Ok(theta(&arg, self.tau, EPS)?.value / (self.theta_e * e))
    }

    /// Closed form of `det S(x_i, y_j)`:
    /// `Θ(e + Σx - Σy)/Θ(e) · Π_{i<j} E(x_i,x_j) E(y_j,y_i) / Π_{i,j} E(x_i,y_j)`.
    fn closed(&self, xs: &[Vec<Complex64>], ys: &[Vec<Complex64>]) -> Result<Complex64> {
        let n = xs.len();
        let g = self.tau.g;
        let mut arg = self.e.clone();
        for k in 0..n {
            for i in 0..g {
                arg[i] += xs[k][i] - ys[k][i];
            }
        }
        let mut v = theta(&arg, self.tau, EPS)?.value / self.theta_e;
        for i in 0..n {
            for j in i + 1..n {
                v *= self.prime(&xs[i], &xs[j])? * self.prime(&ys[j], &ys[i])?;
            }
            for j in 0..n {
                v /= self.prime(&xs[i], &ys[j])?;
            }
        }
        Ok(v)
    }

    fn ensure_distinct(&self, pts: &[&Vec<Complex64>]) -> Result<()> {
        for i in 0..pts.len() {
            for j in 0..i {
                if self.prime(pts[i], pts[j])?.norm() < 1e-8 {
                    return Err(Error::Coincident);
                }
            }
        }
        Ok(())
    }
}

/// Determinant by permutation expansion, with the sum of absolute values
/// of the products as a cancellation scale.
fn leibniz(m: &[Vec<Complex64>]) -> (Complex64, f64) {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = Complex64::zero();
    let mut scale = 0.0;
    permute(&mut perm, 0, m, &mut det, &mut scale);
    (det, scale)
}

fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<Complex64>], det: &mut Complex64, scale: &mut f64) {
    let n = p.len();
    if k == n {
        let mut sign = 1.0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        let prod: Complex64 = (0..n).map(|i| m[i][p[i]]).product();
        *det += prod * sign;
        *scale += prod.norm();
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, m, det, scale);
        p.swap(k, i);
    }
}

/// Relative residual of
/// `T(Ω + Σ ω_{z_i,z'_i}) / T(Ω) = det ψ(z_i, z'_j)` with
/// `ψ(z, z') = S(u(z'), u(z))`: the left side from its theta closed form,
/// the right side as a determinant of Szegő values. `zs[i]` and `zps[i]`
/// are Abel images of points of the curve (any point in genus one).
/// Divided by the largest of `|closed|` and the sum of absolute values of
/// the determinant's products.
pub fn plucker_check(
    tau: &SiegelMatrix,
    zeta: &[Complex64],
    delta: &HalfCharacteristic,
    zs: &[Vec<Complex64>],
    zps: &[Vec<Complex64>],
) -> Result<f64> {
    let n = zs.len();
    if n == 0 || zps.len() != n {
        return Err(Error::Invalid("need matching nonempty point lists".into()));
    }
    if n > 6 {
        return Err(Error::TooLarge("determinant size above 6"));
    }
    let ctx = FayCtx::new(tau, zeta, delta)?;
    let all: Vec<&Vec<Complex64>> = zs.iter().chain(zps).collect();
    ctx.ensure_distinct(&all)?;
    let m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| ctx.s(&zps[j], &zs[i])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let (det, scale) = leibniz(&m);
    let closed = ctx.closed(zps, zs)?;
    Ok((closed - det).norm() / closed.norm().max(scale).max(1e-300))
}

/// Two by two case: `T(Ω+ω_{z1,z2}+ω_{z3,z4})/T(Ω) = ψ12 ψ34 - ψ14 ψ32`.
pub fn fay_check(tau: &SiegelMatrix, zeta: &[Complex64], delta: &HalfCharacteristic, z: [&[Complex64]; 4]) -> Result<f64> {
    let v: Vec<Vec<Complex64>> = z.iter().map(|p| p.to_vec()).collect();
    plucker_check(tau, zeta, delta, &[v[0].clone(), v[2].clone()], &[v[1].clone(), v[3].clone()])
}

pub fn fay_check_g1(tau: Complex64, zeta: Complex64, z: [Complex64; 4]) -> Result<f64> {
    let t = SiegelMatrix::scalar(tau)?;
    fay_check(&t, &[zeta], &odd_characteristics(1)[0], [&[z[0]], &[z[1]], &[z[2]], &[z[3]]])
}

/// First-order limit of the Fay identity at `z3 = z + h`, `z4 = z`:
/// `(LHS/ψ(z3, z4) - ψ(z1, z2)) / h` against `ψ(z1, z) ψ(z, z2)`, the
/// `z3 -> z4` limit. Returns the absolute difference, which is `O(h)`.
pub fn hirota_check(tau: Complex64, zeta: Complex64, z1: Complex64, z2: Complex64, z: Complex64, h: f64) -> Result<f64> {
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::Invalid("h must lie in [1e-4, 1e-2]".into()));
    }
    let t = SiegelMatrix::scalar(tau)?;
    let ctx = FayCtx::new(&t, &[zeta], &odd_characteristics(1)[0])?;
    let z3 = z + h;
    let p = |a: Complex64| vec![a];
    ctx.ensure_distinct(&[&p(z1), &p(z2), &p(z)])?;
    let psi = |a: Complex64, b: Complex64| ctx.s(&[b], &[a]);
    let lhs = ctx.closed(&[p(z2), p(z)], &[p(z1), p(z3)])?;
    let d = (lhs / psi(z3, z)? - psi(z1, z2)?) / h;
    let target = psi(z1, z)? * psi(z, z2)?;
    Ok((d - target).norm())
}

/// Szegő kernel of a pinched genus zero curve,
/// `det_{0..N} M / det_{1..N} M` with
/// `M_ij = exp(∫_{p_{j,-}}^{p_{i,+}} Ω) / (p_{i,+} - p_{j,-})`,
/// `p_{0,+} = z`, `p_{0,-} = w`. `omega[(i, j)]` holds the integral.
pub fn degenerate_szego(pairs: &[(Complex64, Complex64)], omega: &CMat, z: Complex64, w: Complex64) -> Result<Complex64> {
    let n = pairs.len();
    if omega.rows != n + 1 || omega.cols != n + 1 {
        return Err(Error::Invalid("omega table must be (N+1)x(N+1)".into()));
    }
    let plus: Vec<Complex64> = core::iter::once(z).chain(pairs.iter().map(|p| p.0)).collect();
    let minus: Vec<Complex64> = core::iter::once(w).chain(pairs.iter().map(|p| p.1)).collect();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a == b || pairs[..i].iter().any(|&(c, d)| c == a || d == b || c == b || d == a) {
            return Err(Error::Invalid("nodal pairs must be distinct".into()));
        }
    }
    let mut m = CMat::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            let d = plus[i] - minus[j];
            if d.norm() == 0.0 {
                return Err(Error::Coincident);
            }
            m[(i, j)] = omega[(i, j)].exp() / d;
        }
    }
    let sub = CMat::from_fn(n, n, |i, j| m[(i + 1, j + 1)]);
    let den = if n == 0 { Complex64::new(1.0, 0.0) } else { sub.det() };
    let scale = if n == 0 { 1.0 } else { sub.max_abs().powi(n as i32) };
    if den.norm() <= 1e-13 * scale {
        return Err(Error::Singular("denominator determinant vanishes"));
    }
    Ok(m.det() / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_lattice_value() {
        let t = SiegelMatrix::scalar(c(0.0, 1.0)).unwrap();
        let v = theta(&[c(0.0, 0.0)], &t, 1e-14).unwrap();
        // oracle: brute force over |n| <= 50
        let brute: f64 = (-50i32..=50).map(|n| (-PI * (n * n) as f64).exp()).sum();
        assert!((v.value.re - brute).abs() < 1e-14);
        assert!((v.value.re - 1.086434811213308).abs() < 1e-14);
        assert!(v.error_bound <= 1e-13);
    }

    #[test]
    fn characteristic_counts() {
        assert_eq!(odd_characteristics(1), vec![HalfCharacteristic::new(vec![1], vec![1]).unwrap()]);
        assert_eq!(odd_characteristics(2).len(), 6);
        assert_eq!(odd_characteristics(3).len(), 28);
    }

    #[test]
    fn odd_point_zero() {
        let t = SiegelMatrix::scalar(c(0.0, 1.0)).unwrap();
        let cp = c(0.5, 0.5);
        assert!(theta(&[cp], &t, 1e-14).unwrap().value.norm() < 1e-10);
        assert!(theta_grad(&[cp], &t, 1e-14).unwrap()[0].norm() > 0.1);
    }

    #[test]
    fn not_siegel() {
        let bad = CMat::from_fn(2, 2, |i, j| if i == j { c(0.0, 1.0) } else { c(0.1 * i as f64, 0.0) });
        assert_eq!(SiegelMatrix::new(bad), Err(Error::NotSiegel("not symmetric")));
        assert!(SiegelMatrix::scalar(c(0.0, -1.0)).is_err());
    }

    #[test]
    fn schiffer_square() {
        let k = schiffer_kappa(&SiegelMatrix::scalar(c(0.0, 1.0)).unwrap());
        assert!((k[(0, 0)] - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn degenerate_small_cases() {
        let (z, w) = (c(0.3, 0.2), c(-1.0, 0.5));
        let v = degenerate_szego(&[], &CMat::zeros(1, 1), z, w).unwrap();
        assert!((v - 1.0 / (z - w)).norm() < 1e-15);
        let (a, b) = (c(2.0, 1.0), c(-0.5, -1.5));
        let v = degenerate_szego(&[(a, b)], &CMat::zeros(2, 2), z, w).unwrap();
        let oracle = (a - z) * (w - b) / ((z - w) * (z - b) * (a - w));
        assert!((v - oracle).norm() < 1e-13);
    }
}
