//! The ten acceptance criteria. Each criterion is a list of named checks
//! plus a runtime budget; a criterion passes when every check passes inside
//! the budget.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsurf_core::algebra::{fmt_rational, parse_poly, rat, rat_int, to_f64, BivariatePoly, Rational, UniPoly};
use rsurf_core::divisors::{rr_genus0, rr_genus1, Divisor};
use rsurf_core::fundform::{correction_polynomial, general_b0, hyperelliptic_difference_numerator, hyperelliptic_split, only_interior_monomials};
use rsurf_core::linalg::{rank_rational, CMat};
use rsurf_core::newton::{classify_form, genus, polytope, FormKind};
use rsurf_core::periods::{bilinear_check, bilinear_inequality, build_curve, period_matrix, PeriodData};
use rsurf_core::strebel::{classify_pants_exact, quad_diff_03_exact, region_predicates};
use rsurf_core::theta::{
    bergman_theta, fay_check_g1, hirota_check, odd_characteristics, theta, theta_quasi_residual, third_kind_form_g1, SiegelMatrix,
};
use rsurf_core::torus::{reduce_modular, weierstrass_p};
use rsurf_core::wpvol::{w_laurent, PiPoly, WpEngine, DEFAULT_CAP};
use rsurf_core::Complex as C;

/// Every numeric threshold used below.
pub mod tol {
    pub const THETA_EPS: f64 = 1e-13;
    pub const QUASI: f64 = 1e-9;
    pub const PARITY: f64 = 1e-10;
    pub const ODD_CHAR: f64 = 1e-9;
    pub const PERIOD_TOL: f64 = 1e-10;
    pub const SQUARE_TAU: f64 = 1e-7;
    pub const LEGENDRE_TAU: f64 = 1e-7;
    pub const SEXTIC_SYM: f64 = 1e-8;
    pub const BILINEAR: f64 = 1e-8;
    pub const CYCLE: f64 = 1e-8;
    pub const RESIDUE: f64 = 1e-6;
    pub const FAY: f64 = 1e-9;
    /// `r(h) / r(h/2)` must be within this of 2.
    pub const HIROTA_RATIO: f64 = 0.2;
    pub const WP_EPS: f64 = 1e-14;
}

/// Checks that cannot pass as stated, as `(criterion, check)`. They are run
/// and reported like every other check.
pub const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[(6, "legendre_vs_iKp_over_K")];

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name, pass, detail: detail.into() }
}

fn failed<E: std::fmt::Display>(name: &'static str, e: E) -> Check {
    check(name, false, format!("error: {e}"))
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn in_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn pass(&self) -> bool {
        self.in_budget() && self.checks.iter().all(|c| c.pass)
    }

    /// Failing checks that are not listed in [`KNOWN_UNATTAINABLE`], plus
    /// `"runtime"` when over budget.
    pub fn unexpected_failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.pass && !KNOWN_UNATTAINABLE.contains(&(self.id, c.name)))
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        if !self.in_budget() {
            out.push(format!("runtime {:.2?} over budget {:.0?}", self.elapsed, self.budget));
        }
        out
    }

    /// One line: `PASS 3 title (elapsed / budget)` with failing checks
    /// appended.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {:>2} {} ({:.3} s / {} s)",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        for c in self.checks.iter().filter(|c| !c.pass) {
            let known = if KNOWN_UNATTAINABLE.contains(&(self.id, c.name)) { " [known]" } else { "" };
            s.push_str(&format!("; {}{known}: {}", c.name, c.detail));
        }
        if !self.in_budget() {
            s.push_str("; runtime over budget");
        }
        s
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget_secs: u64,
    run: fn() -> Vec<Check>,
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "WP volumes, exact", budget_secs: 1, run: c1 },
    Criterion { id: 2, title: "Laplace forms, exact", budget_secs: 1, run: c2 },
    Criterion { id: 3, title: "WP symmetry, homogeneity, positivity", budget_secs: 60, run: c3 },
    Criterion { id: 4, title: "Newton genus and form classification", budget_secs: 1, run: c4 },
    Criterion { id: 5, title: "Theta identities", budget_secs: 30, run: c5 },
    Criterion { id: 6, title: "Hyperelliptic periods", budget_secs: 60, run: c6 },
    Criterion { id: 7, title: "Genus-1 kernel suite", budget_secs: 120, run: c7 },
    Criterion { id: 8, title: "Fundamental form algebra", budget_secs: 30, run: c8 },
    Criterion { id: 9, title: "Riemann-Roch", budget_secs: 30, run: c9 },
    Criterion { id: 10, title: "Strebel cells", budget_secs: 5, run: c10 },
];

pub fn run(id: u8) -> Option<Outcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let t = Instant::now();
    let checks = (c.run)();
    Some(Outcome { id, title: c.title, checks, elapsed: t.elapsed(), budget: Duration::from_secs(c.budget_secs) })
}

/// Runs the selected criteria on at most `threads` worker threads; results
/// come back in id order.
pub fn run_many(ids: &[u8], threads: usize) -> Vec<Outcome> {
    let threads = threads.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads.min(ids.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(&id) = ids.get(k) else { break };
                if let Some(o) = run(id) {
                    results.lock().unwrap().push(o);
                }
            });
        }
    });
    let mut out = results.into_inner().unwrap();
    out.sort_by_key(|o| o.id);
    out
}

pub fn run_all(threads: usize) -> Vec<Outcome> {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.id).collect();
    run_many(&ids, threads)
}

fn terms(list: &[(&[u32], PiPoly)]) -> BTreeMap<Vec<u32>, PiPoly> {
    list.iter().map(|(k, p)| (k.to_vec(), p.clone())).collect()
}

fn pi(k: u32, n: i64, d: i64) -> PiPoly {
    PiPoly::term(rat(n, d), k)
}

fn c1() -> Vec<Check> {
    let half = pi(0, 1, 2);
    let expected = [
        ("V03", 0, 3, terms(&[(&[0, 0, 0], pi(0, 1, 1))])),
        ("V11", 1, 1, terms(&[(&[0], pi(1, 1, 12)), (&[1], pi(0, 1, 48))])),
        (
            "V04",
            0,
            4,
            terms(&[
                (&[0, 0, 0, 0], pi(1, 2, 1)),
                (&[1, 0, 0, 0], half.clone()),
                (&[0, 1, 0, 0], half.clone()),
                (&[0, 0, 1, 0], half.clone()),
                (&[0, 0, 0, 1], half),
            ]),
        ),
    ];
    let mut e = WpEngine::new(DEFAULT_CAP);
    expected
        .into_iter()
        .map(|(name, g, n, want)| match e.volume(g, n) {
            Ok(v) => check(name, v.terms == want, v.to_latex()),
            Err(err) => failed(name, err),
        })
        .collect()
}

fn c2() -> Vec<Check> {
    let mut w04 = vec![(vec![1u32, 1, 1, 1], pi(1, 2, 1))];
    for i in 0..4 {
        let mut k = vec![1u32; 4];
        k[i] = 2;
        w04.push((k, pi(0, 3, 1)));
    }
    let expected = [
        ("W03", 0, 3, terms(&[(&[1, 1, 1], pi(0, 1, 1))])),
        ("W11", 1, 1, terms(&[(&[1], pi(1, 1, 12)), (&[2], pi(0, 1, 8))])),
        ("W04", 0, 4, w04.into_iter().collect()),
    ];
    expected
        .into_iter()
        .map(|(name, g, n, want)| match w_laurent(g, n) {
            Ok(w) => check(name, w.terms == want, format!("{} terms", w.terms.len())),
            Err(err) => failed(name, err),
        })
        .collect()
}

/// Stable `(g, n)` with `n >= 1` and `3g - 3 + n <= 6`.
pub fn structural_range() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=3u32 {
        for n in 1..=9u32 {
            let d = 3 * g as i64 - 3 + n as i64;
            if 2 * g as i64 - 2 + n as i64 > 0 && d <= 6 {
                out.push((g, n));
            }
        }
    }
    out
}

fn c3() -> Vec<Check> {
    let mut e = WpEngine::new(DEFAULT_CAP);
    let (mut sym, mut hom, mut pos) = (Vec::new(), Vec::new(), Vec::new());
    let range = structural_range();
    for &(g, n) in &range {
        match e.volume(g, n) {
            Ok(v) => {
                if !v.is_symmetric() {
                    sym.push((g, n));
                }
                if v.homogeneous_degree() != Some(3 * g + n - 3) {
                    hom.push((g, n));
                }
                if !v.all_positive() {
                    pos.push((g, n));
                }
            }
            Err(err) => return vec![failed("volumes", format!("({g},{n}): {err}"))],
        }
    }
    let detail = |bad: &Vec<(u32, u32)>| if bad.is_empty() { format!("{} types", range.len()) } else { format!("fails on {bad:?}") };
    vec![
        check("symmetry", sym.is_empty(), detail(&sym)),
        check("homogeneity", hom.is_empty(), detail(&hom)),
        check("positivity", pos.is_empty(), detail(&pos)),
    ]
}

fn c4() -> Vec<Check> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for d in [4, 6, 8, 10] {
        let g = parse_poly(&format!("y^2 - x^{d} + x - 1")).and_then(|p| genus(&p));
        if g != Ok(d / 2 - 1) {
            bad.push((d, g));
        }
    }
    out.push(check("hyperelliptic_genus", bad.is_empty(), format!("{bad:?}")));
    let g0 = parse_poly("y^2 - x^2 + 4").and_then(|p| genus(&p));
    out.push(check("conic_genus", g0 == Ok(0), format!("{g0:?}")));
    let p = parse_poly("y^2 - x^6 + 1").unwrap();
    let k11 = classify_form(&p, 1, 1);
    out.push(check("first_kind_1_1", k11 == Ok(FormKind::FirstKind), format!("{k11:?}")));
    let k31 = classify_form(&p, 3, 1);
    out.push(check("third_kind_3_1", matches!(k31, Ok(FormKind::ThirdKind(ref e)) if !e.is_empty()), format!("{k31:?}")));
    let k41 = classify_form(&p, 4, 1);
    let order2 = matches!(&k41, Ok(FormKind::SecondKind(e)) if !e.is_empty() && e.iter().map(|x| x.1).max() == Some(2));
    out.push(check("second_kind_4_1_order_2", order2, format!("{k41:?}")));
    out
}

fn rand_c(rng: &mut ChaCha8Rng, r: f64) -> C {
    C::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn random_siegel(rng: &mut ChaCha8Rng, g: usize) -> SiegelMatrix {
    loop {
        let mut m = CMat::zeros(g, g);
        for i in 0..g {
            for j in 0..=i {
                let z = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
                m[(i, j)] = z;
                m[(j, i)] = z;
            }
            m[(i, i)] += C::new(0.0, 1.0);
        }
        if let Ok(t) = SiegelMatrix::new(m) {
            return t;
        }
    }
}

fn c5() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut quasi, mut parity, mut odd) = (0f64, 0f64, 0f64);
    for trial in 0..100 {
        let g = 1 + trial % 3;
        let t = random_siegel(&mut rng, g);
        let u: Vec<C> = (0..g).map(|_| rand_c(&mut rng, 0.5)).collect();
        let n: Vec<i64> = (0..g).map(|_| rng.gen_range(-2..=2)).collect();
        let step = || -> rsurf_core::Result<(f64, f64, f64)> {
            let q = theta_quasi_residual(&u, &n, &t)?;
            let neg: Vec<C> = u.iter().map(|z| -z).collect();
            let p = (theta(&neg, &t, tol::THETA_EPS)?.value - theta(&u, &t, tol::THETA_EPS)?.value).norm();
            let mut o = 0f64;
            for ch in odd_characteristics(g) {
                o = o.max(theta(&ch.point(&t), &t, tol::THETA_EPS)?.value.norm());
            }
            Ok((q, p, o))
        };
        match step() {
            Ok((q, p, o)) => {
                quasi = quasi.max(q);
                parity = parity.max(p);
                odd = odd.max(o);
            }
            Err(e) => return vec![failed("theta", e)],
        }
    }
    vec![
        check("quasi_periodicity", quasi < tol::QUASI, format!("max {quasi:e}")),
        check("parity", parity < tol::PARITY, format!("max {parity:e}")),
        check("odd_characteristics", odd < tol::ODD_CHAR, format!("max {odd:e}")),
    ]
}

/// `K(k)` by the arithmetic-geometric mean.
pub fn agm_k(k: f64) -> f64 {
    let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
    // quadratic convergence; the iterates can oscillate in the last bit
    for _ in 0..40 {
        let (a2, b2) = ((a + b) / 2.0, (a * b).sqrt());
        a = a2;
        b = b2;
    }
    PI / (2.0 * a)
}

fn reduced(t: C) -> C {
    reduce_modular(t).map(|r| r.0).unwrap_or(C::new(f64::NAN, f64::NAN))
}

fn periods_of(coeffs: &[i64]) -> rsurf_core::Result<PeriodData> {
    period_matrix(&build_curve(&UniPoly::from_ints(coeffs))?, tol::PERIOD_TOL)
}

fn c6() -> Vec<Check> {
    let mut out = Vec::new();
    let mut all = Vec::new();
    // k = 1/sqrt(2) gives the square lattice
    let k = std::f64::consts::FRAC_1_SQRT_2;
    let square = C::new(0.0, agm_k((1.0 - k * k).sqrt()) / agm_k(k));
    match periods_of(&[-1, 0, 0, 0, 1]) {
        Ok(d) => {
            let t = reduced(d.tau.entries()[(0, 0)]);
            let e = (t - reduced(square)).norm().max((t - C::new(0.0, 1.0)).norm());
            out.push(check("quartic_square", e < tol::SQUARE_TAU, format!("reduced tau {t}, error {e:e}")));
            all.push(d);
        }
        Err(e) => out.push(failed("quartic_square", e)),
    }
    // (1 - x^2)(1 - x^2/4), scaled by 4
    let k = 0.5f64;
    let kp = (1.0 - k * k).sqrt();
    let literal = C::new(0.0, agm_k(kp) / agm_k(k));
    match periods_of(&[4, 0, -5, 0, 1]) {
        Ok(d) => {
            let t = reduced(d.tau.entries()[(0, 0)]);
            let e = (t - reduced(literal)).norm();
            let half = (t - reduced(literal / 2.0)).norm();
            out.push(check(
                "legendre_vs_iKp_over_K",
                e < tol::LEGENDRE_TAU,
                format!("reduced tau {t}, iK'/K = {literal}, error {e:e}; distance to iK'/(2K) is {half:e}"),
            ));
            all.push(d);
        }
        Err(e) => out.push(failed("legendre_vs_iKp_over_K", e)),
    }
    match periods_of(&[-1, 0, 0, 0, 0, 0, 1]) {
        Ok(d) => {
            let t = d.tau.entries();
            let sym = (t[(0, 1)] - t[(1, 0)]).norm().max(d.asymmetry);
            let lmin = d.tau.lambda_min();
            out.push(check("sextic_symmetric", sym < tol::SEXTIC_SYM && lmin > 0.0, format!("asymmetry {sym:e}, min eig Im tau {lmin}")));
            all.push(d);
        }
        Err(e) => out.push(failed("sextic_symmetric", e)),
    }
    match periods_of(&[1, 2, 0, -3, 1, 0, 1, 0, 1]) {
        Ok(d) => all.push(d),
        Err(e) => out.push(failed("genus_three", e)),
    }
    let bil = all.iter().map(bilinear_check).fold(0.0, f64::max);
    out.push(check("bilinear_residual", bil < tol::BILINEAR, format!("max {bil:e} over {} curves", all.len())));
    let ineq = all.iter().flat_map(bilinear_inequality).fold(f64::INFINITY, f64::min);
    out.push(check("bilinear_inequality", ineq > 0.0, format!("min {ineq:e}")));
    out
}

fn trapezoid(n: usize, a: C, b: C, f: impl Fn(C) -> rsurf_core::Result<C>) -> rsurf_core::Result<C> {
    let h = (b - a) / n as f64;
    let mut s = C::new(0.0, 0.0);
    for k in 0..n {
        s += f(a + h * k as f64)?;
    }
    Ok(s * h)
}

fn kernel_suite(tau: C, seed: u64) -> rsurf_core::Result<[f64; 5]> {
    let i = C::new(0.0, 1.0);
    let t = SiegelMatrix::scalar(tau)?;
    let ch = &odd_characteristics(1)[0];
    let one = [C::new(1.0, 0.0)];
    let p = C::new(0.37, 0.51);
    let b = |q: C| bergman_theta(&t, ch, &[p], &[q], &one, &one);
    let a_cycle = trapezoid(64, C::new(0.0, 0.0), C::new(1.0, 0.0), b)?.norm();
    let b_cycle = (trapezoid(128, C::new(0.0, 0.0), tau, b)? - 2.0 * PI * i).norm();
    let (q1, q2) = (C::new(0.3, 0.4), C::new(0.6, 0.45));
    let res = |q: C| -> rsurf_core::Result<C> {
        let (r, n) = (1e-2, 32);
        let mut s = C::new(0.0, 0.0);
        for k in 0..n {
            let e = (i * 2.0 * PI * k as f64 / n as f64).exp();
            s += third_kind_form_g1(tau, q1, q2, q + e * r)? * e * r * i * 2.0 * PI / n as f64;
        }
        Ok(s / (2.0 * PI * i))
    };
    let residue = (res(q1)? - 1.0).norm().max((res(q2)? + 1.0).norm());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fay = 0f64;
    for _ in 0..100 {
        let zs = [rand_c(&mut rng, 0.5), rand_c(&mut rng, 0.5), rand_c(&mut rng, 0.5), rand_c(&mut rng, 0.5)];
        let zeta = rand_c(&mut rng, 0.3);
        fay = fay.max(fay_check_g1(tau, zeta, zs)?);
    }
    let (z1, z2, z, zeta) = (C::new(0.1, 0.3), C::new(0.6, -0.2), C::new(0.35, 0.6), C::new(0.4, 0.9));
    let ratio = hirota_check(tau, zeta, z1, z2, z, 1e-3)? / hirota_check(tau, zeta, z1, z2, z, 5e-4)?;
    Ok([a_cycle, b_cycle, residue, fay, ratio])
}

fn c7() -> Vec<Check> {
    let mut out = Vec::new();
    for (k, tau) in [C::new(0.0, 1.0), C::new(0.0, 2.0)].into_iter().enumerate() {
        let names: [[&'static str; 5]; 2] = [
            ["a_cycle_tau_i", "b_cycle_tau_i", "residues_tau_i", "fay_tau_i", "hirota_tau_i"],
            ["a_cycle_tau_2i", "b_cycle_tau_2i", "residues_tau_2i", "fay_tau_2i", "hirota_tau_2i"],
        ];
        match kernel_suite(tau, 70 + k as u64) {
            Ok([a, b, r, f, h]) => {
                out.push(check(names[k][0], a < tol::CYCLE, format!("{a:e}")));
                out.push(check(names[k][1], b < tol::CYCLE, format!("{b:e}")));
                out.push(check(names[k][2], r < tol::RESIDUE, format!("{r:e}")));
                out.push(check(names[k][3], f < tol::FAY, format!("max {f:e}")));
                out.push(check(names[k][4], (h - 2.0).abs() < tol::HIROTA_RATIO, format!("r(h)/r(h/2) = {h}")));
            }
            Err(e) => out.push(failed(names[k][0], e)),
        }
    }
    out
}

fn random_support_poly(rng: &mut ChaCha8Rng) -> BivariatePoly {
    loop {
        let mut p = BivariatePoly::zero();
        for _ in 0..rng.gen_range(3..=7) {
            let c = rng.gen_range(-5..=5);
            if c != 0 {
                p.add_term(rng.gen_range(0..=4), rng.gen_range(0..=3), rat(c, rng.gen_range(1..=3)));
            }
        }
        if polytope(&p).is_ok() {
            return p;
        }
    }
}

fn c8() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut asym = Vec::new();
    for _ in 0..20 {
        let p = random_support_poly(&mut rng);
        match correction_polynomial(&p) {
            Ok(q) if q.is_symmetric() => {}
            Ok(_) => asym.push(p.to_string()),
            Err(e) => asym.push(format!("{p}: {e}")),
        }
    }
    out.push(check("q4_symmetric", asym.is_empty(), format!("{asym:?}")));
    // exact: B0 Py Py' = Q4 - P(x,y')P(x',y) / ((x-x')^2 (y-y')^2) on y = x
    let line = parse_poly("y - x").unwrap();
    match correction_polynomial(&line) {
        Ok(q) => {
            let (px, py) = (line.deriv_x(), line.deriv_y());
            let mut exact = q.q4.is_zero() && px.eval(&rat_int(0), &rat_int(0)) == rat_int(-1);
            let mut numeric = 0f64;
            for (a, b) in [(rat(3, 4), rat(-1, 4)), (rat(2, 1), rat(7, 3)), (rat(-5, 2), rat(1, 9))] {
                let dx = &a - &b;
                let cross = line.eval(&a, &b) * line.eval(&b, &a);
                let b0 = -(cross / (&dx * &dx * &dx * &dx)) / (py.eval(&a, &a) * py.eval(&b, &b));
                exact &= b0 == (&dx * &dx).recip();
                let (x, xp) = (C::new(to_f64(&a), 0.0), C::new(to_f64(&b), 0.0));
                match general_b0(&line, &q, (x, x), (xp, xp)) {
                    Ok(v) => numeric = numeric.max((v * (x - xp).powi(2) - 1.0).norm()),
                    Err(_) => numeric = f64::INFINITY,
                }
            }
            out.push(check("line_b0", exact && numeric < 1e-14, format!("exact {exact}, numeric relative error {numeric:e}")));
        }
        Err(e) => out.push(failed("line_b0", e)),
    }
    let q = UniPoly::from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
    let p = parse_poly("y^2 - x^6 + 1").unwrap();
    let diff = hyperelliptic_split(&q).and_then(|s| {
        let lp = polytope(&p)?;
        let cq = correction_polynomial(&p)?;
        Ok(only_interior_monomials(&hyperelliptic_difference_numerator(&s, &cq), &lp))
    });
    out.push(match diff {
        Ok(ok) => check("interior_numerator", ok, "y^2 - x^6 + 1"),
        Err(e) => failed("interior_numerator", e),
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Pt {
    Fin(i64),
    Inf,
}

fn weight(d: &Divisor<Pt>, p: Pt) -> i64 {
    d.entries().iter().find(|(q, _)| *q == p).map(|e| e.1).unwrap_or(0)
}

/// `dim {f : (f) + D >= 0}` by linear algebra on `f = N(x) / Π (x - a)^D(a)`.
fn brute_r(d: &Divisor<Pt>) -> u64 {
    let den: i64 = d.entries().iter().filter(|(p, w)| matches!(p, Pt::Fin(_)) && *w > 0).map(|e| e.1).sum();
    let top = den + weight(d, Pt::Inf);
    if top < 0 {
        return 0;
    }
    let n = (top + 1) as usize;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &(p, w) in d.entries() {
        if let Pt::Fin(a) = p {
            // N vanishes to order -w at a
            for j in 0..(-w).max(0) as usize {
                let row = (0..n)
                    .map(|c| {
                        if c < j {
                            return rat_int(0);
                        }
                        let falling: i64 = (0..j as i64).map(|t| c as i64 - t).product();
                        let power = (0..c - j).fold(rat_int(1), |acc, _| acc * rat_int(a));
                        rat_int(falling) * power
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    (n - rank_rational(rows)) as u64
}

/// `i(D)`: forms `f dx` with `(f dx) >= D`, and `dx` has a double pole at
/// infinity.
fn brute_i(d: &Divisor<Pt>) -> u64 {
    brute_r(&d.neg().add(&Divisor::new(vec![(Pt::Inf, -2)]).unwrap()))
}

fn random_divisor(rng: &mut ChaCha8Rng) -> Divisor<Pt> {
    let mut pts = vec![Pt::Inf, Pt::Fin(0), Pt::Fin(1), Pt::Fin(-2), Pt::Fin(3), Pt::Fin(5)];
    let mut entries = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let p = pts.remove(rng.gen_range(0..pts.len()));
        let w = rng.gen_range(-3..=3);
        if w != 0 {
            entries.push((p, w));
        }
    }
    Divisor::new(entries).unwrap()
}

fn c9() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let d = random_divisor(&mut rng);
        match rr_genus0(&d) {
            Ok(r) if r.r_minus_d == brute_r(&d) && r.i_d == brute_i(&d) => {}
            other => bad.push(format!("{:?}: {other:?}", d.entries())),
        }
    }
    out.push(check("genus0_brute_force", bad.is_empty(), format!("{} mismatches {bad:?}", bad.len())));

    let (a, b) = (C::new(0.31, 0.22), C::new(-0.17, 0.41));
    let zero = C::new(0.0, 0.0);
    let mut fam = Vec::new();
    let mut identity = true;
    for tau in [C::new(0.0, 1.0), C::new(0.2, 1.3)] {
        let ab = |p: &C| Some(*p);
        let wp = |z: C| weierstrass_p(z, tau, tol::WP_EPS);
        let mut run = || -> rsurf_core::Result<[bool; 3]> {
            // constants: a single point has r = 1
            let single = rr_genus1(&Divisor::new(vec![(a, 1)])?, tau, ab)?;
            // ℘ - ℘(a) realizes (a) + (-a) - 2(0)
            let d = Divisor::new(vec![(a, 1), (-a, 1), (zero, -2)])?;
            let r = rr_genus1(&d, tau, ab)?;
            let h = 1e-4;
            let vanishes = (wp(-a)? - wp(a)?).norm() < 1e-10 && ((wp(C::new(h, 0.0))? - wp(a)?) * h * h - 1.0).norm() < 1e-6;
            let principal = (r.r_minus_d, r.i_d) == (1, 1) && vanishes;
            // (a) - (b): ℘ - ℘(a) does not vanish at b
            let r2 = rr_genus1(&Divisor::new(vec![(a, 1), (b, -1)])?, tau, ab)?;
            let not_principal = r2.r_minus_d == 0 && (wp(b)? - wp(a)?).norm() > 1e-3;
            for rr in [single, r, r2] {
                identity &= rr.r_minus_d as i64 == rr.degree + 1 - 1 + rr.i_d as i64;
            }
            Ok([single.r_minus_d == 1, principal, not_principal])
        };
        match run() {
            Ok(v) => fam.push(v),
            Err(e) => return vec![out.remove(0), failed("genus1_wp_families", e)],
        }
    }
    let ok = fam.iter().all(|v| v.iter().all(|x| *x));
    out.push(check("genus1_wp_families", ok, format!("{fam:?}")));
    out.push(check("genus1_identity", identity, ""));
    out
}

fn c10() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..10_000 {
        let (x, y, z): (f64, f64, f64) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
        if region_predicates(&x, &y, &z).iter().filter(|b| **b).count() != 1 {
            bad += 1;
        }
    }
    out.push(check("partition", bad == 0, format!("{bad} of 10000 triples")));
    let c = classify_pants_exact(&rat_int(2), &rat_int(3), &rat_int(4));
    let want = [rat(3, 2), rat(1, 2), rat(5, 2)];
    out.push(match c {
        Ok(c) => check("pants_2_3_4", c.lengths == want, format!("graph {} lengths {:?}", c.graph, c.lengths.iter().map(fmt_rational).collect::<Vec<_>>())),
        Err(e) => failed("pants_2_3_4", e),
    });
    let mut lead_ok = true;
    for _ in 0..50 {
        let l: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(1..50), rng.gen_range(1..20))).collect();
        let sq: Vec<Rational> = l.iter().map(|x| x * x).collect();
        let (num, den) = quad_diff_03_exact(&sq[0], &sq[1], &sq[2]);
        // double poles at 0 and 1 with coefficient -L^2, and -Linf^2 at infinity
        let at0 = num.eval(&rat_int(0)) / den.div_rem(&UniPoly::from_ints(&[0, 0, 1])).0.eval(&rat_int(0));
        let at1 = num.eval(&rat_int(1)) / den.div_rem(&UniPoly::from_ints(&[1, -2, 1])).0.eval(&rat_int(1));
        let inf = num.leading() / den.leading();
        lead_ok &= at0 == -sq[0].clone() && at1 == -sq[1].clone() && inf == -sq[2].clone() && num.degree() == Some(2) && den.degree() == Some(4);
    }
    out.push(check("quad_diff_leading", lead_ok, "50 random rational triples"));
    out
}
