use paraprod_core::literal::{
    canonical_to_json, parse_family, parse_operator, parse_scalar, parse_series, parse_weight,
};
use paraprod_core::norms::{
    b_phi_seminorm, bergman_norm, bergman_norm_quadrature, bloch_seminorm, c1_omega_star_seminorm,
    calderon_check, cap_doubling, garsia_seminorm, kernel_integral_check, lip_seminorm, tent_norm,
    tent_norm_monte_carlo, CarlesonGrid, GarsiaGrid, QuadratureConfig, SeminormEstimate, SupGrid,
};
use paraprod_core::opnorm::{
    opnorm_lower, power_lemma_check, radicality_experiment, two_letter_survey, OpNormSetup,
    TestFamily,
};
use paraprod_core::weights::{beta_exponent, classify_doubling, default_grid, Verdict};
use paraprod_core::words::{canonicalize, commutator_iter, cor22_decompose, run_identity_suite};
use paraprod_core::{Coeff, Error, Result, TaylorSeries};
use serde_json::{json, Value};

use crate::args::{Command, Experiment, SeminormKind};

pub enum Output {
    Json(Value),
    Csv(String),
}

pub struct Outcome {
    pub output: Output,
    /// Some result is inconclusive, unconverged or truncation-limited.
    pub inconclusive: bool,
}

fn json_out(v: Value, inconclusive: bool) -> Outcome {
    Outcome {
        output: Output::Json(v),
        inconclusive,
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

struct Prepared {
    g: TaylorSeries,
    family: TestFamily,
    setup: OpNormSetup,
}

fn prepare(exp: &Experiment, quad: QuadratureConfig) -> Result<Prepared> {
    let mut setup = OpNormSetup::new(exp.p, parse_weight(&exp.weight)?, exp.refine, exp.seed);
    setup.quadrature = quad;
    Ok(Prepared {
        g: parse_series(&exp.symbol)?,
        family: parse_family(&exp.family)?,
        setup,
    })
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// For named series with a `cap`, the same literal at another cap.
fn at_cap(series: &str, cap: usize) -> Option<Result<TaylorSeries>> {
    let mut v: Value = serde_json::from_str(series).ok()?;
    let obj = v.as_object_mut()?;
    obj.get("cap")?;
    obj.insert("cap".into(), json!(cap));
    Some(parse_series(&v.to_string()))
}

fn seminorm(kind: SeminormKind, series: &str, s: Option<f64>, weight: Option<&str>) -> Result<Outcome> {
    let grid = SupGrid::default();
    let weight = weight.map(parse_weight).transpose()?;
    let need_weight = || weight.clone().ok_or_else(|| usage("this seminorm needs --weight"));
    let eval = |f: &TaylorSeries| -> Result<SeminormEstimate> {
        match kind {
            SeminormKind::Bloch => bloch_seminorm(f, &grid),
            SeminormKind::Garsia => garsia_seminorm(f, &GarsiaGrid::default()),
            SeminormKind::Lip => lip_seminorm(f, s.ok_or_else(|| usage("--kind lip needs --s"))?, &grid),
            SeminormKind::C1star => c1_omega_star_seminorm(f, &need_weight()?, &CarlesonGrid::default()),
            SeminormKind::Bphi => b_phi_seminorm(f, &need_weight()?, &grid),
        }
    };
    let f = parse_series(series)?;
    if f.is_exact() {
        let e = eval(&f)?;
        return Ok(json_out(json!({"value": e.value, "estimate": to_json(&e), "truncation": null}), false));
    }
    // named symbols are re-expanded at 2N; explicit truncations can only be
    // compared with their own N/2 truncation
    let cap = f.cap();
    let named = at_cap(series, cap).is_some();
    let doubled = if named {
        cap_doubling(|n| at_cap(series, n).expect("named").expect("reparses"), cap, eval)?
    } else {
        cap_doubling(|n| f.truncate_to(n), cap / 2, eval)?
    };
    let e = if named { &doubled.at_cap } else { &doubled.at_double_cap }.clone();
    Ok(json_out(
        json!({"value": e.value, "estimate": to_json(&e), "truncation": to_json(&doubled)}),
        doubled.truncation_limited,
    ))
}

pub fn run(cmd: &Command, quad: QuadratureConfig) -> Result<Outcome> {
    quad.validate()?;
    match cmd {
        Command::Norm { series, p, weight, quadrature } => {
            let f = parse_series(series)?;
            let w = parse_weight(weight)?;
            let e = if *quadrature {
                bergman_norm_quadrature(&f, *p, &w, &quad)?
            } else {
                bergman_norm(&f, *p, &w, &quad)?
            };
            Ok(json_out(to_json(&e), !e.converged))
        }
        Command::TentNorm { series, p, weight, mc_samples, seed } => {
            let f = parse_series(series)?;
            let w = parse_weight(weight)?;
            let e = tent_norm(&f, *p, &w, &quad)?;
            let mut v = to_json(&e);
            if let Some(n) = mc_samples {
                if *p != 2.0 {
                    return Err(usage("the Monte-Carlo cross-check is available for p = 2 only"));
                }
                let seed = seed.ok_or_else(|| usage("--mc-samples needs --seed"))?;
                let mc = tent_norm_monte_carlo(&f, &w, *n, seed)?;
                v["monte_carlo"] = json!({
                    "value": mc.mean.sqrt(),
                    "value_squared": mc.mean,
                    "sigma_squared": mc.sigma,
                    "samples": mc.samples,
                });
            }
            Ok(json_out(v, !e.converged))
        }
        Command::Seminorm { kind, series, s, weight } => seminorm(*kind, series, *s, weight.as_deref()),
        Command::Calderon { series, p, weight } => {
            let c = calderon_check(&parse_series(series)?, *p, &parse_weight(weight)?, &quad)?;
            Ok(json_out(to_json(&c), !c.converged))
        }
        Command::KernelCheck { xi, eta, weight } => {
            let v: Value = serde_json::from_str(xi).map_err(|e| Error::Parse(format!("xi: {e}")))?;
            let xi = parse_scalar(&v)?.to_c64();
            let k = kernel_integral_check(xi, *eta, &parse_weight(weight)?, &quad)?;
            Ok(json_out(to_json(&k), !k.converged))
        }
        Command::WeightClass { weight, grid } => {
            let w = parse_weight(weight)?;
            let grid = match grid {
                Some(g) => serde_json::from_str::<Vec<f64>>(g).map_err(|e| Error::Parse(format!("grid: {e}")))?,
                None => default_grid(),
            };
            let report = classify_doubling(&w, &grid)?;
            let beta = match beta_exponent(&w, &grid) {
                Ok(b) => to_json(&b),
                Err(Error::NotUpperDoubling { .. }) => Value::Null,
                Err(e) => return Err(e),
            };
            let inconclusive = report.in_upper_doubling.verdict == Verdict::Inconclusive
                || report.in_lower_doubling.verdict == Verdict::Inconclusive;
            Ok(json_out(json!({"report": to_json(&report), "beta": beta}), inconclusive))
        }
        Command::Canonicalize { expr } => {
            let form = canonicalize(&parse_operator(expr)?)?;
            Ok(json_out(canonical_to_json(&form), false))
        }
        Command::Commutator { expr, k } => {
            let c = commutator_iter(&parse_operator(expr)?, *k)?;
            Ok(json_out(canonical_to_json(&canonicalize(&c)?), false))
        }
        Command::Decompose { m, n, j } => {
            let d = cor22_decompose(*m, *n, *j)?;
            Ok(json_out(
                json!({"m": d.m, "n": d.n, "j": d.j, "q": d.q, "d": d.d, "word": d.word.to_string()}),
                false,
            ))
        }
        Command::Identities { seed, cases } => Ok(json_out(to_json(&run_identity_suite(*seed, *cases)?), false)),
        Command::Opnorm { op, exp } => {
            let pr = prepare(exp, quad)?;
            let e = opnorm_lower(&parse_operator(op)?, &pr.g, &pr.family, &pr.setup)?;
            Ok(json_out(to_json(&e), e.truncation_limited))
        }
        Command::Radicality { exp, n_max } => {
            let pr = prepare(exp, quad)?;
            let t = radicality_experiment(&pr.g, *n_max, &pr.family, &pr.setup)?;
            let c = t.fitted_c.map(|c| c.to_string()).unwrap_or_default();
            let rows = t
                .rows
                .iter()
                .map(|r| vec![r.m.to_string(), r.lower_bound.to_string(), r.root.to_string(), c.clone()])
                .collect();
            Ok(Outcome {
                output: Output::Csv(csv_string(&["m", "lower_bound", "root", "fitted_c"], rows)?),
                inconclusive: false,
            })
        }
        Command::PowerLemma { exp, n } => {
            let pr = prepare(exp, quad)?;
            let r = power_lemma_check(&pr.g, *n, &pr.family, &pr.setup)?;
            let mut rows: Vec<Vec<String>> = r
                .constants
                .iter()
                .map(|(id, c)| vec![id.clone(), c.to_string(), "ok".into()])
                .collect();
            rows.extend(r.degenerate.iter().map(|id| vec![id.clone(), String::new(), "degenerate".into()]));
            Ok(Outcome {
                output: Output::Csv(csv_string(&["member", "constant", "status"], rows)?),
                inconclusive: false,
            })
        }
        Command::TwoLetter { exp } => {
            let pr = prepare(exp, quad)?;
            let s = two_letter_survey(&pr.g, &pr.family, &pr.setup)?;
            let mut rows: Vec<Vec<String>> = s
                .rows
                .iter()
                .map(|(w, e)| vec!["word".into(), w.clone(), e.lower_bound.to_string()])
                .collect();
            rows.extend(
                s.identities
                    .iter()
                    .map(|v| vec!["identity".into(), v.identity.clone(), v.holds.to_string()]),
            );
            let inconclusive = s.rows.iter().any(|(_, e)| e.truncation_limited);
            Ok(Outcome {
                output: Output::Csv(csv_string(&["kind", "name", "value"], rows)?),
                inconclusive,
            })
        }
    }
}
