//! Wire format helpers: exact rationals as `"num/den"` strings, floats with
//! 17 significant digits, complex numbers as `[re, im]`.

use std::str::FromStr;

use rsurf_core::algebra::{fmt_rational, parse_rational, BivariatePoly, Rational, UniPoly};
use rsurf_core::linalg::CMat;
use rsurf_core::Complex;
use serde_json::{Number, Value};

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    // arbitrary_precision keeps the digits as written
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float"))
}

pub fn complex(z: Complex) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

pub fn complex_vec(v: &[Complex]) -> Value {
    Value::Array(v.iter().map(|z| complex(*z)).collect())
}

pub fn cmat(m: &CMat) -> Value {
    Value::Array((0..m.rows).map(|i| Value::Array((0..m.cols).map(|j| complex(m[(i, j)])).collect())).collect())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

/// `[[i, j, "num/den"], ...]` in the canonical term order.
pub fn bivariate(p: &BivariatePoly) -> Value {
    Value::Array(p.sorted_terms().into_iter().map(|((i, j), c)| serde_json::json!([i, j, fmt_rational(&c)])).collect())
}

/// A univariate polynomial in `x` in the same triple encoding, `j = 0`.
pub fn univariate(p: &UniPoly) -> Value {
    let terms = p.coeffs().iter().enumerate().rev().filter(|(_, c)| !num_traits_zero(c)).map(|(i, c)| serde_json::json!([i, 0, fmt_rational(c)]));
    Value::Array(terms.collect())
}

fn num_traits_zero(c: &Rational) -> bool {
    *c == Rational::from_integer(0.into())
}

pub fn parse_bivariate(v: &Value) -> Result<BivariatePoly, String> {
    let arr = v.as_array().ok_or("polynomial JSON must be a list of [i, j, \"num/den\"]")?;
    let mut p = BivariatePoly::zero();
    for t in arr {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or("each term must be [i, j, \"num/den\"]")?;
        let e = |v: &Value| v.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or("exponents must be integers");
        let c = match &t[2] {
            Value::String(s) => parse_rational(s).ok_or_else(|| format!("bad rational `{s}`"))?,
            Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap().into()),
            _ => return Err("coefficients must be \"num/den\" strings".into()),
        };
        p.add_term(e(&t[0])?, e(&t[1])?, c);
    }
    Ok(p)
}

/// `"re,im"` or a bare real.
pub fn parse_pair(s: &str) -> Result<Complex, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`"));
    match s.split_once(',') {
        Some((a, b)) => Ok(Complex::new(num(a)?, num(b)?)),
        None => Ok(Complex::new(num(s)?, 0.0)),
    }
}

/// `[re, im]` or a bare real.
pub fn parse_complex(v: &Value) -> Result<Complex, String> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex::new(x, 0.0));
    }
    match v.as_array().map(|a| a.as_slice()) {
        Some([a, b]) if a.is_number() && b.is_number() => Ok(Complex::new(a.as_f64().unwrap(), b.as_f64().unwrap())),
        _ => Err(format!("expected a complex number [re, im], got {v}")),
    }
}

pub fn parse_complex_vec(v: &Value) -> Result<Vec<Complex>, String> {
    if let Ok(z) = parse_complex(v) {
        return Ok(vec![z]);
    }
    v.as_array().ok_or("expected a list of complex numbers")?.iter().map(parse_complex).collect()
}

/// A square matrix of complex numbers, or a single complex number for `g = 1`.
pub fn parse_cmat(v: &Value) -> Result<CMat, String> {
    if let Ok(z) = parse_complex(v) {
        return Ok(CMat::from_fn(1, 1, |_, _| z));
    }
    let rows = v.as_array().ok_or("expected a matrix as a list of rows")?;
    let rows: Vec<Vec<Complex>> = rows.iter().map(|r| r.as_array().ok_or("matrix rows must be lists")?.iter().map(parse_complex).collect()).collect::<Result<_, String>>()?;
    let g = rows.len();
    if g == 0 || rows.iter().any(|r| r.len() != g) {
        return Err("matrix must be square and non-empty".into());
    }
    Ok(CMat::from_fn(g, g, |i, j| rows[i][j]))
}

/// Exact decimal or `num/den`: `"2.5"` gives `5/2`.
pub fn parse_exact(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some(r) = parse_rational(s) {
        return Ok(r);
    }
    let bad = || format!("bad number `{s}`");
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() && int.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let sign = if neg { "-" } else { "" };
    let r = parse_rational(&format!("{sign}{int}{frac}/1{}", "0".repeat(frac.len()))).ok_or_else(bad)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsurf_core::algebra::rat;

    #[test]
    fn float_digits() {
        // the serializer may normalize the exponent sign, never the digits
        assert!(float(0.1).to_string().starts_with("1.0000000000000001e"));
        assert!(float(-2.0).to_string().starts_with("-2.0000000000000000e"));
        let back: Value = serde_json::from_str(&float(1.0 / 3.0).to_string()).unwrap();
        assert_eq!(back.as_f64(), Some(1.0 / 3.0));
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(parse_exact("2.5"), Ok(rat(5, 2)));
        assert_eq!(parse_exact("-0.25"), Ok(rat(-1, 4)));
        assert_eq!(parse_exact("3/6"), Ok(rat(1, 2)));
        assert_eq!(parse_exact("0.0"), Ok(rat(0, 1)));
        assert!(parse_exact("1.2.3").is_err());
        assert!(parse_exact("abc").is_err());
    }

    #[test]
    fn matrices() {
        let m = parse_cmat(&serde_json::json!([[[0, 1], [0.5, 0]], [[0.5, 0], [0, 2]]])).unwrap();
        assert_eq!(m[(1, 1)], Complex::new(0.0, 2.0));
        assert!(parse_cmat(&serde_json::json!([[[0, 1]], [[0, 1]]])).is_err());
        assert_eq!(parse_cmat(&serde_json::json!([0, 1])).unwrap().rows, 1);
    }

    #[test]
    fn polynomial_round_trip() {
        let p = rsurf_core::algebra::parse_poly("y^2 - x^6 + 1/3").unwrap();
        assert_eq!(parse_bivariate(&bivariate(&p)).unwrap(), p);
    }
}
