//! Canonical text, LaTeX and JSON forms of polynomials and series.
//!
//! Text form of one monomial: `(-297/128 i) k^-7 k1^4`. Terms are joined by
//! ` + ` in canonical order and the zero polynomial is `0`. A series file holds
//! an `order_cap N` line followed by one `g^m: <poly>` line per order; blank
//! lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use super::poly::{DiffPolynomial, MonoKey};
use super::rational::{ExactRational, GaussRational};
use super::series::GradedSeries;
use crate::error::{Error, Result};

/// A monomial without its coefficient, e.g. `k^-3 k1^2`.
pub fn key_to_text(key: &MonoKey) -> String {
    let mut parts = Vec::new();
    match key.kpow() {
        0 => {}
        1 => parts.push("k".to_string()),
        p => parts.push(format!("k^{p}")),
    }
    for (j, e) in key.dexp_entries() {
        if e == 1 {
            parts.push(format!("k{j}"));
        } else {
            parts.push(format!("k{j}^{e}"));
        }
    }
    parts.join(" ")
}

pub fn poly_to_text(p: &DiffPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .map(|(k, c)| {
            let factors = key_to_text(k);
            if factors.is_empty() {
                format!("({c})")
            } else {
                format!("({c}) {factors}")
            }
        })
        .collect();
    terms.join(" + ")
}

fn parse_factor(tok: &str, kpow: &mut i32, dexp: &mut Vec<u32>) -> Result<()> {
    let bad = || Error::parse(format!("bad factor `{tok}`"));
    let rest = tok.strip_prefix('k').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    if idx.is_empty() {
        let e: i32 = exp.map(str::parse).transpose().map_err(|_| bad())?.unwrap_or(1);
        *kpow += e;
    } else {
        let j: usize = idx.parse().map_err(|_| bad())?;
        if j == 0 {
            return Err(bad());
        }
        let e: u32 = exp.map(str::parse).transpose().map_err(|_| bad())?.unwrap_or(1);
        if dexp.len() < j {
            dexp.resize(j, 0);
        }
        dexp[j - 1] += e;
    }
    Ok(())
}

/// Parses the canonical text form. Term order in the input does not matter.
pub fn parse_poly(s: &str) -> Result<DiffPolynomial> {
    let s = s.trim();
    let mut p = DiffPolynomial::zero();
    if s == "0" {
        return Ok(p);
    }
    let mut rest = s;
    loop {
        let inner_start = rest.strip_prefix('(').ok_or_else(|| Error::parse(format!("expected `(` at `{rest}`")))?;
        let close = inner_start.find(')').ok_or_else(|| Error::parse(format!("unclosed coefficient in `{s}`")))?;
        let coeff: GaussRational = inner_start[..close].parse()?;
        if coeff.is_zero() {
            return Err(Error::parse(format!("zero coefficient in `{s}`")));
        }
        let after = &inner_start[close + 1..];
        let (factors, next) = match after.find(" + (") {
            Some(pos) => (&after[..pos], Some(&after[pos + 3..])),
            None => (after, None),
        };
        let mut kpow = 0;
        let mut dexp = Vec::new();
        for tok in factors.split_whitespace() {
            parse_factor(tok, &mut kpow, &mut dexp)?;
        }
        p.add_term(MonoKey::new(kpow, dexp), coeff);
        match next {
            Some(n) => rest = n,
            None => break,
        }
    }
    Ok(p)
}

pub fn series_to_text(s: &GradedSeries) -> String {
    let mut out = String::new();
    writeln!(out, "order_cap {}", s.order_cap()).unwrap();
    for (m, c) in s.coeffs().iter().enumerate() {
        writeln!(out, "g^{m}: {}", poly_to_text(c)).unwrap();
    }
    out
}

pub fn parse_series(text: &str) -> Result<GradedSeries> {
    let mut cap: Option<usize> = None;
    let mut coeffs: Vec<Option<DiffPolynomial>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Error::parse(format!("line {}: {msg}", lineno + 1));
        if let Some(n) = line.strip_prefix("order_cap ") {
            let n: usize = n.trim().parse().map_err(|_| at(format!("bad order_cap `{n}`")))?;
            if n == 0 || cap.is_some() {
                return Err(at("order_cap must appear once and be >= 1".into()));
            }
            cap = Some(n);
            coeffs = vec![None; n];
            continue;
        }
        let n = cap.ok_or_else(|| at("order_cap line must come first".into()))?;
        let (head, body) = line.split_once(':').ok_or_else(|| at(format!("expected `g^m: ...`, got `{line}`")))?;
        let m: usize = head
            .trim()
            .strip_prefix("g^")
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| at(format!("bad order label `{head}`")))?;
        if m >= n {
            return Err(at(format!("order {m} beyond order_cap {n}")));
        }
        if coeffs[m].is_some() {
            return Err(at(format!("order {m} given twice")));
        }
        coeffs[m] = Some(parse_poly(body).map_err(|e| at(e.to_string()))?);
    }
    if cap.is_none() {
        return Err(Error::parse("missing order_cap line"));
    }
    let coeffs = coeffs
        .into_iter()
        .enumerate()
        .map(|(m, c)| c.ok_or_else(|| Error::parse(format!("order {m} missing"))))
        .collect::<Result<Vec<_>>>()?;
    GradedSeries::from_coeffs(coeffs)
}

// ---- LaTeX ----

fn latex_symbol(j: usize) -> String {
    match j {
        0 => "k".into(),
        1..=3 => format!("k{}", "'".repeat(j)),
        _ => format!("k^{{({j})}}"),
    }
}

fn latex_rational(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_coeff(c: &GaussRational) -> (bool, String) {
    // (negative, magnitude text) for axis-aligned coefficients; general ones are parenthesised.
    if c.is_real() {
        (c.re.is_negative(), latex_rational(&c.re.abs()))
    } else if c.is_imaginary() {
        (c.im.is_negative(), format!("{}\\,i", latex_rational(&c.im.abs())))
    } else {
        let sign = if c.im.is_negative() { "-" } else { "+" };
        (
            false,
            format!(
                "\\left({} {} {}\\,i\\right)",
                if c.re.is_negative() { format!("-{}", latex_rational(&c.re.abs())) } else { latex_rational(&c.re) },
                sign,
                latex_rational(&c.im.abs())
            ),
        )
    }
}

pub fn poly_to_latex(p: &DiffPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (key, c)) in p.terms().enumerate() {
        let (neg, mag) = latex_coeff(c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&mag);
        match key.kpow() {
            0 => {}
            1 => out.push_str("\\,k"),
            p => write!(out, "\\,k^{{{p}}}").unwrap(),
        }
        for (j, e) in key.dexp_entries() {
            let s = latex_symbol(j);
            if e == 1 {
                write!(out, "\\,{s}").unwrap();
            } else {
                write!(out, "\\,{{{s}}}^{{{e}}}").unwrap();
            }
        }
    }
    out
}

fn latex_k_power(e: i64) -> String {
    match e {
        1 => "k".into(),
        _ => format!("k^{{{e}}}"),
    }
}

/// Symbols of one monomial with its k power shifted by `shift`, split into
/// numerator and denominator factors.
fn latex_symbols(key: &MonoKey, shift: i64) -> (Vec<String>, Vec<String>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    let kp = key.kpow() as i64 + shift;
    if kp > 0 {
        num.push(latex_k_power(kp));
    } else if kp < 0 {
        den.push(latex_k_power(-kp));
    }
    for (j, e) in key.dexp_entries() {
        let s = latex_symbol(j);
        num.push(if e == 1 { s } else { format!("{{{s}}}^{{{e}}}") });
    }
    (num, den)
}

fn latex_fraction(num: &[String], den: &[String]) -> String {
    let top = if num.is_empty() { "1".to_string() } else { num.join("\\,") };
    if den.is_empty() {
        top
    } else {
        format!("\\frac{{{top}}}{{{}}}", den.join("\\,"))
    }
}

/// Renders `p` as `(integer polynomial) * c / k^e`, the layout of hand-written
/// WKB tables, e.g. `\left(3\,{k'}^{2} - 2\,k\,k''\right)\frac{i}{8\,k^{3}}`.
/// A single monomial is written as one fraction. The result starts with `-`
/// when the overall sign is negative. `None` unless every coefficient is
/// purely real or every one purely imaginary.
pub fn poly_to_latex_factored(p: &DiffPolynomial) -> Option<String> {
    if p.is_zero() {
        return None;
    }
    let imaginary = if p.all_coeffs(GaussRational::is_real) {
        false
    } else if p.all_coeffs(GaussRational::is_imaginary) {
        true
    } else {
        return None;
    };
    let terms: Vec<(&MonoKey, &ExactRational)> =
        p.terms().map(|(k, c)| (k, if imaginary { &c.im } else { &c.re })).collect();
    let den = terms.iter().fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    let mut ints: Vec<BigInt> = terms.iter().map(|(_, r)| r.numer() * (&den / r.denom())).collect();
    let common = ints.iter().fold(BigInt::from(0), |acc, n| acc.gcd(n));
    for n in &mut ints {
        *n /= &common;
    }
    let negative = ints.iter().all(|n| n.is_negative());
    if negative {
        for n in &mut ints {
            *n = -&*n;
        }
    }
    let kmin = terms.iter().map(|(k, _)| k.kpow() as i64).min().expect("non-zero polynomial");
    let sign = if negative { "-" } else { "" };
    let unit = if imaginary { vec!["i".to_string()] } else { vec![] };
    let big = |n: &BigInt| (!n.is_one()).then(|| n.to_string());

    if terms.len() == 1 {
        let (mut num, mut dens) = latex_symbols(terms[0].0, 0);
        let mut top: Vec<String> = big(&common).into_iter().chain(unit).collect();
        top.append(&mut num);
        let mut bottom: Vec<String> = big(&den).into_iter().collect();
        bottom.append(&mut dens);
        return Some(format!("{sign}{}", latex_fraction(&top, &bottom)));
    }

    // lowest remaining power of k first
    let mut order: Vec<usize> = (0..terms.len()).collect();
    order.sort_by_key(|&j| terms[j].0.kpow());
    let mut inner = String::new();
    for (pos, &j) in order.iter().enumerate() {
        let n = &ints[j];
        if pos == 0 {
            if n.is_negative() {
                inner.push('-');
            }
        } else {
            inner.push_str(if n.is_negative() { " - " } else { " + " });
        }
        let (syms, _) = latex_symbols(terms[j].0, -kmin);
        let mag = n.abs();
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || syms.is_empty() {
            parts.push(mag.to_string());
        }
        parts.extend(syms);
        inner.push_str(&parts.join("\\,"));
    }
    let mut top: Vec<String> = big(&common).into_iter().chain(unit).collect();
    let mut bottom: Vec<String> = big(&den).into_iter().collect();
    if kmin > 0 {
        top.push(latex_k_power(kmin));
    } else if kmin < 0 {
        bottom.push(latex_k_power(-kmin));
    }
    Some(format!("{sign}\\left({inner}\\right){}", latex_fraction(&top, &bottom)))
}

/// Display form `y = i\,k - g\,\frac{k'}{2\,k} + ...`, one order per line.
/// Orders with mixed real and imaginary coefficients fall back to the expanded form.
pub fn series_to_latex(s: &GradedSeries) -> String {
    let mut out = String::from("y = ");
    let mut first = true;
    for (m, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = poly_to_latex_factored(c).unwrap_or_else(|| format!("\\left({}\\right)", poly_to_latex(c)));
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, body),
        };
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "\n  - " } else { "\n  + " });
        }
        first = false;
        let g = match m {
            0 => String::new(),
            1 => "g\\,".into(),
            _ => format!("g^{{{m}}}\\,"),
        };
        write!(out, "{g}{body}").unwrap();
    }
    if first {
        out.push('0');
    }
    out.push('\n');
    out
}

// ---- JSON ----

/// Integers that fit in i64 become JSON numbers; larger ones become decimal strings.
fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(BigInt::from).ok_or_else(|| Error::parse(format!("non-integer `{n}` in rational")))
        }
        Value::String(s) => s.parse().map_err(|_| Error::parse(format!("bad integer string `{s}`"))),
        other => Err(Error::parse(format!("expected integer, got {other}"))),
    }
}

fn rational_json(r: &ExactRational) -> Value {
    json!([bigint_json(r.numer()), bigint_json(r.denom())])
}

fn rational_from_json(v: &Value) -> Result<ExactRational> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::parse("rational must be [num, den]"))?;
    let d = bigint_from_json(&arr[1])?;
    if d <= BigInt::from(0) {
        return Err(Error::parse("rational denominator must be positive"));
    }
    ExactRational::from_big(bigint_from_json(&arr[0])?, d)
}

pub fn poly_to_json(p: &DiffPolynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(k, c)| {
                let mut dexp = Map::new();
                for (j, e) in k.dexp_entries() {
                    dexp.insert(j.to_string(), json!(e));
                }
                json!({
                    "kpow": k.kpow(),
                    "dexp": dexp,
                    "re": rational_json(&c.re),
                    "im": rational_json(&c.im),
                })
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<DiffPolynomial> {
    let arr = v.as_array().ok_or_else(|| Error::parse("polynomial must be a JSON array"))?;
    let mut p = DiffPolynomial::zero();
    for t in arr {
        let kpow = t
            .get("kpow")
            .and_then(Value::as_i64)
            .and_then(|v| i32::try_from(v).ok())
            .ok_or_else(|| Error::parse("monomial needs integer kpow"))?;
        let mut dexp = Vec::new();
        if let Some(map) = t.get("dexp").and_then(Value::as_object) {
            for (j, e) in map {
                let j: usize = j.parse().map_err(|_| Error::parse(format!("bad dexp key `{j}`")))?;
                let e = e
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| Error::parse("dexp values must be positive integers"))?;
                if j == 0 || e == 0 {
                    return Err(Error::parse("dexp keys and values must be >= 1"));
                }
                if dexp.len() < j {
                    dexp.resize(j, 0);
                }
                dexp[j - 1] = e;
            }
        } else {
            return Err(Error::parse("monomial needs a dexp object"));
        }
        let re = rational_from_json(t.get("re").ok_or_else(|| Error::parse("monomial needs re"))?)?;
        let im = rational_from_json(t.get("im").ok_or_else(|| Error::parse("monomial needs im"))?)?;
        let c = GaussRational::new(re, im);
        if c.is_zero() {
            return Err(Error::parse("zero coefficient in JSON monomial"));
        }
        p.add_term(MonoKey::new(kpow, dexp), c);
    }
    Ok(p)
}

pub fn series_to_json(s: &GradedSeries) -> Value {
    json!({
        "order_cap": s.order_cap(),
        "orders": s.coeffs().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn series_from_json(v: &Value) -> Result<GradedSeries> {
    let orders =
        v.get("orders").and_then(Value::as_array).ok_or_else(|| Error::parse("series JSON needs an `orders` array"))?;
    let coeffs = orders.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?;
    if let Some(cap) = v.get("order_cap").and_then(Value::as_u64) {
        if cap as usize != coeffs.len() {
            return Err(Error::parse("order_cap does not match number of orders"));
        }
    }
    GradedSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_text_matches_documented_style() {
        let p = DiffPolynomial::from_monomials([super::super::poly::DiffMonomial::new(
            GaussRational::i_ratio(-297, 128),
            -7,
            vec![4],
        )]);
        assert_eq!(poly_to_text(&p), "(-297/128 i) k^-7 k1^4");
        assert_eq!(parse_poly("(-297/128 i) k^-7 k1^4").unwrap(), p);
    }

    #[test]
    fn text_roundtrip_and_zero() {
        for s in ["0", "(1 i) k", "(-1/4 i) k^-2 k2 + (3/8 i) k^-3 k1^2", "(1/2 - 1 i)", "(2) k3^2 k5"] {
            assert_eq!(poly_to_text(&parse_poly(s).unwrap()), s);
        }
        assert!(parse_poly("(0) k").is_err());
        assert!(parse_poly("3 k").is_err());
        assert!(parse_poly("(1) q").is_err());
    }

    #[test]
    fn series_text_roundtrip() {
        let text = "# comment\norder_cap 3\ng^0: (1 i) k\ng^1: (-1/2) k^-1 k1\n\ng^2: 0\n";
        let s = parse_series(text).unwrap();
        assert_eq!(parse_series(&series_to_text(&s)).unwrap(), s);
        assert!(parse_series("order_cap 2\ng^0: (1) k\n").is_err());
        assert!(parse_series("g^0: (1) k\n").is_err());
        assert!(parse_series("order_cap 1\ng^1: (1) k\n").is_err());
    }

    #[test]
    fn json_roundtrip_with_big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let c = GaussRational::new(ExactRational::from_big(big, BigInt::from(7)).unwrap(), ExactRational::new(-1, 3));
        let p = DiffPolynomial::from_monomials([super::super::poly::DiffMonomial::new(c, -3, vec![2, 0, 1])]);
        let v = poly_to_json(&p);
        assert_eq!(v[0]["dexp"]["1"], 2);
        assert_eq!(v[0]["dexp"]["3"], 1);
        assert!(v[0]["re"][0].is_string());
        let back = poly_from_json(&serde_json::from_str(&v.to_string()).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn latex_second_order_bracket() {
        let p = parse_poly("(3/8 i) k^-3 k1^2 + (-1/4 i) k^-2 k2").unwrap();
        assert_eq!(poly_to_latex(&p), "-\\frac{1}{4}\\,i\\,k^{-2}\\,k'' + \\frac{3}{8}\\,i\\,k^{-3}\\,{k'}^{2}");
        assert_eq!(
            poly_to_latex_factored(&p).unwrap(),
            "\\left(3\\,{k'}^{2} - 2\\,k\\,k''\\right)\\frac{i}{8\\,k^{3}}"
        );
    }
}
