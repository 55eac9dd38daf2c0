//! Command line front end. Exit codes: 0 success, 1 domain error (JSON
//! error object on stderr), 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsurf_core::algebra::{parse_poly, BivariatePoly, Rational, UniPoly};
use rsurf_core::divisors::{rr_genus0, rr_genus1, Divisor, RRResult, LATTICE_TOL};
use rsurf_core::fundform::{correction_polynomial, hyperelliptic_difference_numerator, hyperelliptic_split, only_interior_monomials, Poly4};
use rsurf_core::newton::{polytope, FormKind};
use rsurf_core::periods::{bilinear_check, build_curve, period_matrix, DEFAULT_TOL};
use rsurf_core::strebel::{classify_pants, classify_pants_exact};
use rsurf_core::theta::{fay_check, odd_characteristics, theta, SiegelMatrix};
use rsurf_core::torus::{reduce_modular, weierstrass_p, TIE};
use rsurf_core::wpvol::{VolumePoly, WpEngine, DEFAULT_CAP};
use rsurf_core::{Complex, Error};
use serde_json::{json, Value};

use crate::acceptance;
use crate::json::{self as wire, float};

#[derive(Parser, Debug)]
#[command(name = "rsurf", version, about = "Compact Riemann surface computations")]
struct Cli {
    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Newton polygon: support, hull, edges, interior points, genus.
    Newton {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Genus from interior lattice points, minus known nodes.
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 0)]
        nodes: usize,
    },
    /// Holomorphic form basis, or the kind of `x^(k-1) y^(l-1) dx / P_y`.
    Forms {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, requires = "l", allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, requires = "k", allow_hyphen_values = true)]
        l: Option<i64>,
    },
    /// Correction polynomial of the fundamental form, or the `(U, V)` split.
    Fundform {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "hyperelliptic", conflicts_with = "hyperelliptic")]
        poly: Option<String>,
        /// `Q(x)` of `y^2 = Q(x)`.
        #[arg(long, allow_hyphen_values = true)]
        hyperelliptic: Option<String>,
    },
    /// Riemann theta function with its truncation bound.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    /// Fay trisecant identity on random configurations.
    FayCheck {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Genus-1 helpers.
    Torus {
        #[command(subcommand)]
        op: TorusCmd,
    },
    /// Period matrix of `y^2 = Q(x)`.
    Periods {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Riemann-Roch dimensions in genus 0 or 1.
    Rr {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        genus: u8,
        /// `[[point, weight], ...]`; points are `"inf"` or `"num/den"` in
        /// genus 0 and `[re, im]` torus coordinates in genus 1.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// `re,im`, required in genus 1.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
    },
    /// Weil-Petersson volume polynomial.
    Wp {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        latex: bool,
        /// Maximum `3g - 3 + n`.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u32,
    },
    /// Strebel graph of the pair of pants with boundary lengths `L0,L1,Linf`.
    Strebel {
        #[arg(long = "L", value_delimiter = ',', allow_hyphen_values = true)]
        lengths: Vec<String>,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Comma separated criterion ids; all by default.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum TorusCmd {
    /// Moves `tau` into the fundamental domain.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Weierstrass `p(z; tau)`.
    Wp {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 1e-14)]
        eps: f64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// Ran fine, but a check did not pass; the report still goes to stdout.
    Check(Value, String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

enum Output {
    Json(Value),
    Text(String),
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = dispatch(&cli).and_then(|o| emit(&cli, o));
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            1
        }
        Err(Failure::Check(report, m)) => {
            if let Err(Failure::Io(io)) = emit(&cli, Output::Json(report)) {
                eprintln!("{}", json!({"error": {"kind": "io", "message": io}}));
            }
            eprintln!("{}", json!({"error": {"kind": "check_failed", "message": m}}));
            1
        }
        Err(Failure::Io(m)) => {
            eprintln!("{}", json!({"error": {"kind": "io", "message": m}}));
            1
        }
    }
}

fn emit(cli: &Cli, o: Output) -> Result<(), Failure> {
    let text = match o {
        Output::Text(t) => t,
        Output::Json(v) if cli.format == Format::Pretty => serde_json::to_string_pretty(&v).expect("serializable"),
        Output::Json(v) => v.to_string(),
    };
    match &cli.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = std::io::stdout().lock();
            writeln!(s, "{text}").map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

/// Worker count from `RSURF_THREADS`, defaulting to the available cores.
fn threads() -> Result<usize, Failure> {
    match std::env::var("RSURF_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(usage(format!("RSURF_THREADS must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let latex_ok = matches!(cli.cmd, Cmd::Wp { .. });
    if cli.format == Format::Latex && !latex_ok {
        return Err(usage("latex output is only available for `wp`"));
    }
    let threads = threads()?;
    let v = match &cli.cmd {
        Cmd::Newton { poly } => newton(poly)?,
        Cmd::Genus { poly, nodes } => {
            let lp = polytope(&read_poly(poly)?)?;
            json!({"genus": lp.interior.len() as i64 - *nodes as i64})
        }
        Cmd::Forms { poly, k, l } => forms(poly, k.zip(*l))?,
        Cmd::Fundform { poly, hyperelliptic } => match (poly, hyperelliptic) {
            (Some(p), None) => fundform(p)?,
            (None, Some(q)) => fundform_split(q)?,
            _ => return Err(usage("give exactly one of --poly and --hyperelliptic")),
        },
        Cmd::Theta { tau, u, eps } => theta_cmd(tau, u, *eps)?,
        Cmd::FayCheck { tau, g, trials, seed, tol } => fay(tau, *g, *trials, *seed, *tol)?,
        Cmd::Torus { op: TorusCmd::Reduce { tau } } => {
            let t = wire::parse_pair(tau).map_err(usage)?;
            let (t0, m) = reduce_modular(t)?;
            json!({"tau": wire::complex(t), "reduced": wire::complex(t0), "matrix": [[m.a, m.b], [m.c, m.d]], "tol": float(TIE)})
        }
        Cmd::Torus { op: TorusCmd::Wp { tau, z, eps } } => {
            let t = wire::parse_pair(tau).map_err(usage)?;
            let z = wire::parse_pair(z).map_err(usage)?;
            json!({"value": wire::complex(weierstrass_p(z, t, *eps)?), "eps": float(*eps)})
        }
        Cmd::Periods { q, tol } => periods(q, *tol)?,
        Cmd::Rr { genus, divisor, tau } => rr(*genus, divisor, tau.as_deref())?,
        Cmd::Wp { g, n, latex, cap } => {
            let v = WpEngine::new(*cap).volume(*g, *n)?;
            if *latex || cli.format == Format::Latex {
                return Ok(Output::Text(v.to_latex()));
            }
            wp_json(*g, *n, &v)
        }
        Cmd::Strebel { lengths } => strebel(lengths)?,
        Cmd::Selftest { only } => return selftest(only, threads),
    };
    Ok(Output::Json(v))
}

fn read_poly(text: &str) -> Result<BivariatePoly, Failure> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("polynomial JSON: {e}")))?;
        return wire::parse_bivariate(&v).map_err(usage);
    }
    Ok(parse_poly(text)?)
}

fn read_json(name: &str, text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("--{name}: {e}")))
}

fn read_univariate(text: &str) -> Result<UniPoly, Failure> {
    let p = read_poly(text)?;
    if p.degree_y().unwrap_or(0) != 0 {
        return Err(Failure::Domain(Error::Invalid("Q must not involve y".into())));
    }
    Ok(p.y_coefficients().into_iter().next().unwrap_or_else(UniPoly::zero))
}

fn pt(p: (i64, i64)) -> Value {
    json!([p.0, p.1])
}

fn newton(text: &str) -> Result<Value, Failure> {
    let lp = polytope(&read_poly(text)?)?;
    let edges: Vec<Value> = lp
        .edges
        .iter()
        .map(|e| json!({"normal": [e.alpha, e.beta], "m": e.m, "from": pt(e.from), "to": pt(e.to), "lattice_length": e.lattice_length()}))
        .collect();
    Ok(json!({
        "support": lp.points.iter().copied().map(pt).collect::<Vec<_>>(),
        "hull": lp.hull.iter().copied().map(pt).collect::<Vec<_>>(),
        "edges": edges,
        "interior": lp.interior.iter().copied().map(pt).collect::<Vec<_>>(),
        "genus": lp.interior.len(),
    }))
}

fn forms(text: &str, kl: Option<(i64, i64)>) -> Result<Value, Failure> {
    let lp = polytope(&read_poly(text)?)?;
    let mut v = json!({
        "genus": lp.interior.len(),
        "first_kind": lp.interior.iter().copied().map(pt).collect::<Vec<_>>(),
    });
    if let Some((k, l)) = kl {
        let edge = |e: &rsurf_core::newton::Edge, order: Option<i64>| {
            let mut o = json!({"normal": [e.alpha, e.beta], "m": e.m});
            if let Some(ord) = order {
                o["pole_order"] = json!(ord);
            }
            o
        };
        let (kind, edges): (&str, Vec<Value>) = match lp.classify(k, l) {
            FormKind::FirstKind => ("first", Vec::new()),
            FormKind::ThirdKind(es) => ("third", es.iter().map(|e| edge(e, None)).collect()),
            FormKind::SecondKind(es) => ("second", es.iter().map(|(e, o)| edge(e, Some(*o))).collect()),
        };
        v["classification"] = json!({"k": k, "l": l, "kind": kind, "edges": edges});
    }
    Ok(v)
}

fn poly4(p: &Poly4) -> Value {
    Value::Array(p.terms.iter().map(|(e, c)| json!([e[0], e[1], e[2], e[3], wire::rational(c)])).collect())
}

fn fundform(text: &str) -> Result<Value, Failure> {
    let q = correction_polynomial(&read_poly(text)?)?;
    Ok(json!({"q4": poly4(&q.q4), "symmetric": q.is_symmetric()}))
}

fn fundform_split(text: &str) -> Result<Value, Failure> {
    let q = read_univariate(text)?;
    let split = hyperelliptic_split(&q)?;
    let p = BivariatePoly::hyperelliptic(&q);
    let lp = polytope(&p)?;
    let n = hyperelliptic_difference_numerator(&split, &correction_polynomial(&p)?);
    Ok(json!({
        "q": wire::univariate(&split.q),
        "u": wire::univariate(&split.u),
        "v": wire::univariate(&split.v),
        "difference_numerator": poly4(&n),
        "interior_only": only_interior_monomials(&n, &lp),
    }))
}

fn siegel(text: &str) -> Result<SiegelMatrix, Failure> {
    let m = wire::parse_cmat(&read_json("tau", text)?).map_err(usage)?;
    Ok(SiegelMatrix::new(m)?)
}

fn theta_cmd(tau: &str, u: &str, eps: f64) -> Result<Value, Failure> {
    let t = siegel(tau)?;
    let u = wire::parse_complex_vec(&read_json("u", u)?).map_err(usage)?;
    if u.len() != t.g() {
        return Err(usage(format!("u has length {} but tau is {}x{}", u.len(), t.g(), t.g())));
    }
    let v = theta(&u, &t, eps)?;
    Ok(json!({"g": t.g(), "value": wire::complex(v.value), "error_bound": float(v.error_bound), "eps": float(eps)}))
}

fn fay(tau: &str, g: usize, trials: usize, seed: u64, tol: f64) -> Result<Value, Failure> {
    if g != 1 {
        // for g > 1 the identity only holds on Abel images of curve points
        return Err(usage("fay-check supports --g 1 only"));
    }
    let t = siegel(tau)?;
    if t.g() != g {
        return Err(usage(format!("--g {g} does not match tau of size {}", t.g())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = |r: f64| Complex::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
    let delta = &odd_characteristics(g)[0];
    let mut worst = 0f64;
    let mut failures = 0usize;
    for _ in 0..trials {
        let zs: Vec<Vec<Complex>> = (0..4).map(|_| (0..g).map(|_| c(0.5)).collect()).collect();
        let zeta: Vec<Complex> = (0..g).map(|_| c(0.3)).collect();
        let r = fay_check(&t, &zeta, delta, [&zs[0], &zs[1], &zs[2], &zs[3]])?;
        worst = worst.max(r);
        if !(r < tol) {
            failures += 1;
        }
    }
    let report = json!({"g": g, "trials": trials, "seed": seed, "max_residual": float(worst), "failures": failures, "tol": float(tol), "pass": failures == 0});
    if failures > 0 {
        return Err(Failure::Check(report, format!("{failures} of {trials} residuals above {tol:e}")));
    }
    Ok(report)
}

fn periods(text: &str, tol: f64) -> Result<Value, Failure> {
    if !(tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let curve = build_curve(&read_univariate(text)?)?;
    let d = period_matrix(&curve, tol)?;
    Ok(json!({
        "genus": curve.genus,
        "branch_points": wire::complex_vec(&curve.branch_points),
        "cuts": curve.cuts.iter().map(|(a, b)| json!([wire::complex(*a), wire::complex(*b)])).collect::<Vec<_>>(),
        "A": wire::cmat(&d.a),
        "B": wire::cmat(&d.bm),
        "tau": wire::cmat(d.tau.entries()),
        "bilinear_residual": float(bilinear_check(&d)),
        "asymmetry": float(d.asymmetry),
        "nodes": d.nodes,
        "basis": d.basis_note,
        "tol": float(tol),
    }))
}

#[derive(Clone, Debug, PartialEq)]
enum SpherePoint {
    Finite(Rational),
    Infinity,
}

fn divisor_entries(v: &Value) -> Result<Vec<(&Value, i64)>, Failure> {
    let arr = v.as_array().ok_or_else(|| usage("divisor must be a list of [point, weight]"))?;
    arr.iter()
        .map(|e| match e.as_array().map(|a| a.as_slice()) {
            Some([p, w]) => w.as_i64().map(|w| (p, w)).ok_or_else(|| usage("weights must be integers")),
            _ => Err(usage("divisor entries must be [point, weight]")),
        })
        .collect()
}

fn rr_json(r: &RRResult, tol: Option<f64>) -> Value {
    let mut v = json!({"r_minus_D": r.r_minus_d, "i_D": r.i_d, "genus": r.genus, "degree": r.degree});
    if let Some(t) = tol {
        v["lattice_tol"] = float(t);
    }
    v
}

fn rr(genus: u8, divisor: &str, tau: Option<&str>) -> Result<Value, Failure> {
    let v = read_json("divisor", divisor)?;
    let entries = divisor_entries(&v)?;
    if genus == 0 {
        let pts = entries
            .into_iter()
            .map(|(p, w)| {
                let q = match p {
                    Value::String(s) if s == "inf" => SpherePoint::Infinity,
                    Value::String(s) => SpherePoint::Finite(wire::parse_exact(s).map_err(usage)?),
                    Value::Number(n) if n.is_i64() => SpherePoint::Finite(Rational::from_integer(n.as_i64().unwrap().into())),
                    _ => return Err(usage("genus 0 points are \"inf\" or \"num/den\"")),
                };
                Ok((q, w))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        return Ok(rr_json(&rr_genus0(&Divisor::new(pts)?)?, None));
    }
    let tau = wire::parse_pair(tau.ok_or_else(|| usage("--tau is required in genus 1"))?).map_err(usage)?;
    let pts = entries
        .into_iter()
        .map(|(p, w)| Ok((wire::parse_complex(p).map_err(usage)?, w)))
        .collect::<Result<Vec<(Complex, i64)>, Failure>>()?;
    let r = rr_genus1(&Divisor::new(pts)?, tau, |p: &Complex| Some(*p))?;
    Ok(rr_json(&r, Some(LATTICE_TOL)))
}

fn wp_json(g: u32, n: u32, v: &VolumePoly) -> Value {
    let mut terms = Vec::new();
    for (m, c) in v.terms.iter().rev() {
        for (k, r) in c.terms() {
            let exps: Vec<u32> = m.iter().map(|e| 2 * e).collect();
            terms.push(json!({"L_exponents": exps, "pi2_power": k, "coeff": wire::rational(r)}));
        }
    }
    json!({"g": g, "n": n, "terms": terms})
}

fn strebel(lengths: &[String]) -> Result<Value, Failure> {
    if lengths.len() != 3 {
        return Err(usage("--L takes three lengths L0,L1,Linf"));
    }
    let exact: Result<Vec<Rational>, _> = lengths.iter().map(|s| wire::parse_exact(s)).collect();
    if let Ok(l) = exact {
        let c = classify_pants_exact(&l[0], &l[1], &l[2])?;
        return Ok(json!({"graph": c.graph, "lengths": c.lengths.iter().map(wire::rational).collect::<Vec<_>>(), "exact": true}));
    }
    let l = lengths.iter().map(|s| s.trim().parse::<f64>().map_err(|_| usage(format!("bad length `{s}`")))).collect::<Result<Vec<_>, _>>()?;
    let c = classify_pants(l[0], l[1], l[2])?;
    Ok(json!({"graph": c.graph, "lengths": c.lengths.iter().map(|x| float(*x)).collect::<Vec<_>>(), "exact": false}))
}

fn selftest(only: &[u8], threads: usize) -> Result<Output, Failure> {
    let ids: Vec<u8> = if only.is_empty() { acceptance::CRITERIA.iter().map(|c| c.id).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !acceptance::CRITERIA.iter().any(|c| c.id == **id)) {
        return Err(usage(format!("no criterion {bad}")));
    }
    let outcomes = acceptance::run_many(&ids, threads);
    let mut unexpected = 0;
    let mut list = Vec::new();
    for o in &outcomes {
        eprintln!("{}", o.line());
        unexpected += o.unexpected_failures().len();
        let checks: Vec<Value> = o
            .checks
            .iter()
            .map(|c| {
                json!({"name": c.name, "pass": c.pass, "detail": c.detail, "known_unattainable": acceptance::KNOWN_UNATTAINABLE.contains(&(o.id, c.name))})
            })
            .collect();
        list.push(json!({
            "id": o.id, "title": o.title, "pass": o.pass(), "checks": checks,
            "elapsed_s": float(o.elapsed.as_secs_f64()), "budget_s": o.budget.as_secs(),
        }));
    }
    let report = json!({"criteria": list, "threads": threads, "unexpected_failures": unexpected});
    if unexpected > 0 {
        return Err(Failure::Check(report, format!("{unexpected} unexpected failures")));
    }
    Ok(Output::Json(report))
}
