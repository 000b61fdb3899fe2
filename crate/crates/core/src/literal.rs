//! JSON literals for series, weights and operators.
//!
//! Scalars are a number, a rational string `"p/q"`, or a pair `[re, im]` of
//! either. A series is an array of scalars indexed by degree (an exact
//! polynomial), `{"coeffs": [...], "truncated": true}` for a truncation, or
//! a named symbol:
//!
//! ```text
//! {"kind": "log1m", "cap": 512}                      log(1/(1−z))
//! {"kind": "binomial", "a": 0.5, "w": [1, 0], "cap": 64}   (1 − wz)^a
//! {"kind": "geometric", "cap": 64}                   1/(1−z)
//! {"kind": "monomial", "k": 3}                       z³
//! ```
//!
//! An operator is a list of `{"coeff": c, "word": "SST"}` terms, or
//! `{"terms": [...], "rank_one": [{"x": i, "y": j, "coeff": c}]}` where the
//! rank-one part is `Σ c·g₀^i g(0)^j · δ₀`. The empty word is the identity.

use num::rational::BigRational;
use num::traits::ToPrimitive;
use serde_json::{json, Value};

use crate::coeff::{format_rational, parse_rational, Coeff, Complex64, ExactComplex};
use crate::error::{Error, Result};
use crate::opnorm::{FamilyKind, TestFamily};
use crate::taylor::{named, ExactSeries, Series, TaylorSeries};
use crate::weights::RadialWeightDescriptor;
use crate::words::{BivariatePoly, CanonicalSTForm, GOperatorExpr, Word};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_json(text: &str, what: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("{what}: malformed JSON ({e})")))
}

fn real_part(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            let x = n.as_f64().ok_or_else(|| perr(format!("number {n} is not representable")))?;
            BigRational::from_float(x).ok_or_else(|| perr(format!("non-finite number {n}")))
        }
        Value::String(s) => parse_rational(s).map_err(|e| perr(e.to_string())),
        other => Err(perr(format!("expected a number or \"p/q\", got {other}"))),
    }
}

/// A scalar, lifted exactly (decimal numbers keep their binary value).
pub fn parse_scalar(v: &Value) -> Result<ExactComplex> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(ExactComplex::new(real_part(&pair[0])?, real_part(&pair[1])?)),
        Value::Array(_) => Err(perr("a complex scalar is a pair [re, im]")),
        other => Ok(ExactComplex::real(real_part(other)?)),
    }
}

fn as_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn scalar_c64(v: &Value) -> Result<Complex64> {
    let z = parse_scalar(v)?;
    Ok(Complex64::new(as_f64(&z.re), as_f64(&z.im)))
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| perr(format!("{what}: missing field `{key}`")))
}

fn usize_field(obj: &serde_json::Map<String, Value>, key: &str, what: &str) -> Result<usize> {
    field(obj, key, what)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| perr(format!("{what}: `{key}` must be a non-negative integer")))
}

fn coeff_list<C>(v: &Value, conv: impl Fn(&Value) -> Result<C>) -> Result<Vec<C>> {
    let items = v.as_array().ok_or_else(|| perr("series coefficients must be an array"))?;
    if items.is_empty() {
        return Err(perr("a series needs at least one coefficient"));
    }
    items.iter().map(conv).collect()
}

/// Parses a double-precision series literal.
pub fn parse_series(text: &str) -> Result<TaylorSeries> {
    series_from_value(&parse_json(text, "series")?)
}

pub fn series_from_value(v: &Value) -> Result<TaylorSeries> {
    match v {
        Value::Array(_) => Ok(Series::polynomial(coeff_list(v, scalar_c64)?)),
        Value::Object(obj) => {
            if let Some(c) = obj.get("coeffs") {
                let c = coeff_list(c, scalar_c64)?;
                let truncated = obj.get("truncated").and_then(Value::as_bool).unwrap_or(false);
                return Ok(if truncated { Series::truncated(c) } else { Series::polynomial(c) });
            }
            let kind = field(obj, "kind", "series")?
                .as_str()
                .ok_or_else(|| perr("series: `kind` must be a string"))?;
            match kind {
                "log1m" => Ok(named::log_one_minus_inv(usize_field(obj, "cap", "log1m")?)),
                "geometric" => Ok(named::geometric(usize_field(obj, "cap", "geometric")?)),
                "monomial" => Ok(TaylorSeries::monomial(usize_field(obj, "k", "monomial")?)),
                "binomial" => {
                    let a = field(obj, "a", "binomial")?;
                    let a = as_f64(&real_part(a)?);
                    let w = obj.get("w").map(scalar_c64).transpose()?.unwrap_or(Complex64::new(1.0, 0.0));
                    Ok(named::binomial(a, w, usize_field(obj, "cap", "binomial")?))
                }
                other => Err(perr(format!(
                    "unknown series kind `{other}` (expected log1m, geometric, monomial or binomial)"
                ))),
            }
        }
        other => Err(perr(format!("series: expected an array or an object, got {other}"))),
    }
}

/// Parses an exact series: an array of scalars, or `{"coeffs", "truncated"}`.
pub fn parse_exact_series(text: &str) -> Result<ExactSeries> {
    let v = parse_json(text, "series")?;
    match &v {
        Value::Array(_) => Ok(Series::polynomial(coeff_list(&v, parse_scalar)?)),
        Value::Object(obj) if obj.contains_key("coeffs") => {
            let c = coeff_list(&obj["coeffs"], parse_scalar)?;
            let truncated = obj.get("truncated").and_then(Value::as_bool).unwrap_or(false);
            Ok(if truncated { Series::truncated(c) } else { Series::polynomial(c) })
        }
        _ => Err(perr("exact series: expected an array of scalars or {\"coeffs\": [...]}")),
    }
}

/// `[[re, im], …]`, wrapped with the truncation flag when truncated.
pub fn series_to_json(f: &TaylorSeries) -> Value {
    let c: Vec<Value> = f.coeffs().iter().map(|z| json!([z.re, z.im])).collect();
    if f.is_exact() {
        Value::Array(c)
    } else {
        json!({"coeffs": c, "truncated": true})
    }
}

pub fn scalar_to_json(z: &ExactComplex) -> Value {
    json!([format_rational(&z.re), format_rational(&z.im)])
}

pub fn exact_series_to_json(f: &ExactSeries) -> Value {
    let c: Vec<Value> = f.coeffs().iter().map(scalar_to_json).collect();
    if f.is_exact() {
        Value::Array(c)
    } else {
        json!({"coeffs": c, "truncated": true})
    }
}

/// Parses `{"kind": "standard", "alpha": 0}` and friends.
pub fn parse_weight(text: &str) -> Result<RadialWeightDescriptor> {
    serde_json::from_str(text).map_err(|e| perr(format!("weight: {e}")))
}

/// Parses a test family: a [`FamilyKind`] object such as
/// `{"kind": "monomials", "max_degree": 30}`, optionally with
/// `"restrict_h0": true`. A `custom` family lists series literals.
pub fn parse_family(text: &str) -> Result<TestFamily> {
    let mut v = parse_json(text, "family")?;
    let obj = v.as_object_mut().ok_or_else(|| perr("family: expected an object"))?;
    let restrict_h0 = match obj.remove("restrict_h0") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| perr("family: `restrict_h0` must be a boolean"))?,
    };
    let kind = if obj.get("kind").and_then(Value::as_str) == Some("custom") {
        let list = field(obj, "series", "custom family")?
            .as_array()
            .ok_or_else(|| perr("custom family: `series` must be an array of series literals"))?;
        FamilyKind::Custom {
            series: list.iter().map(series_from_value).collect::<Result<_>>()?,
        }
    } else {
        serde_json::from_value(v).map_err(|e| perr(format!("family: {e}")))?
    };
    Ok(TestFamily { kind, restrict_h0 })
}

fn parse_terms(v: &Value) -> Result<Vec<(ExactComplex, Word)>> {
    let items = v.as_array().ok_or_else(|| perr("operator terms must be an array"))?;
    items
        .iter()
        .map(|t| {
            let obj = t.as_object().ok_or_else(|| perr("operator term must be {\"coeff\", \"word\"}"))?;
            let word = field(obj, "word", "operator term")?
                .as_str()
                .ok_or_else(|| perr("operator term: `word` must be a string"))?
                .parse::<Word>()?;
            let coeff = match obj.get("coeff") {
                Some(c) => parse_scalar(c)?,
                None => ExactComplex::one(),
            };
            Ok((coeff, word))
        })
        .collect()
}

/// Parses an operator literal.
pub fn parse_operator(text: &str) -> Result<GOperatorExpr> {
    let v = parse_json(text, "operator")?;
    match &v {
        Value::Array(_) => Ok(GOperatorExpr::from_terms(parse_terms(&v)?)),
        Value::Object(obj) => {
            let terms = match obj.get("terms") {
                Some(t) => parse_terms(t)?,
                None => Vec::new(),
            };
            let mut p = BivariatePoly::zero();
            if let Some(r) = obj.get("rank_one") {
                let items = r.as_array().ok_or_else(|| perr("rank_one must be an array"))?;
                for it in items {
                    let o = it.as_object().ok_or_else(|| perr("rank_one term must be {\"x\", \"y\", \"coeff\"}"))?;
                    let x = usize_field(o, "x", "rank_one")? as u32;
                    let y = usize_field(o, "y", "rank_one")? as u32;
                    p.add_term(x, y, parse_scalar(field(o, "coeff", "rank_one")?)?);
                }
            }
            Ok(GOperatorExpr::from_terms(terms).with_rank_one(p))
        }
        _ => Err(perr("operator: expected a term list or {\"terms\", \"rank_one\"}")),
    }
}

fn rank_one_json(p: &BivariatePoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|((i, j), c)| json!({"x": i, "y": j, "coeff": scalar_to_json(c)}))
            .collect(),
    )
}

pub fn operator_to_json(op: &GOperatorExpr) -> Value {
    let terms: Vec<Value> = op
        .terms()
        .iter()
        .map(|(w, c)| json!({"coeff": scalar_to_json(c), "word": w.to_string()}))
        .collect();
    json!({"terms": terms, "rank_one": rank_one_json(op.rank_one()), "display": op.to_string()})
}

pub fn canonical_to_json(form: &CanonicalSTForm) -> Value {
    let st: Vec<Value> = form
        .st_terms()
        .into_iter()
        .map(|(c, a, b)| json!({"coeff": scalar_to_json(&c), "s": a, "t": b}))
        .collect();
    let s_poly: Vec<Value> = form
        .s_poly()
        .iter()
        .map(|(a, c)| json!({"coeff": scalar_to_json(c), "s": a}))
        .collect();
    json!({
        "st": st,
        "s_poly": s_poly,
        "identity": scalar_to_json(form.identity()),
        "rank_one": rank_one_json(form.rank_one()),
        "display": form.to_string(),
    })
}
