use rug::Float;
use serde_json::{json, Value};

use asymlog::accel::{asympk_transform, digit_agreement, extract_coefficient, parse_csv};
use asymlog::constants::{
    cpq_decay_fit, cpq_with, glaisher_with, stieltjes_with, table1, zeta_derivative_with, ConstantResult, Plan,
};
use asymlog::exact::{
    bernoulli_number, c_table, harmonic_number, rational_from_str, rational_to_string, stirling_first_kind,
    stirling_s,
};
use asymlog::expansions::{direct_sum, expand, Family};
use asymlog::metazeta::{abel_limit_check, bootstrap_ci, meta_zeta, AbelLimit};
use asymlog::norlund::{asymp_taylor, norlund_poly, taylor_coeffs_at};
use asymlog::polylog::{li_reflection, nielsen, polylog};
use asymlog::real::{bits_for, format_real, parse_real, Real};
use asymlog::suites::{run_suite, Suite, SuiteParams};
use asymlog::{Error, Result};

use super::args::*;

/// A finished command: the JSON result, its plain rendering, and for
/// `verify` the per-instance lines.
pub struct Report {
    pub result: Value,
    pub plain: Vec<String>,
    pub lines: Option<Vec<Value>>,
    pub failed: usize,
}

impl Report {
    fn new(result: Value, plain: Vec<String>) -> Report {
        Report { result, plain, lines: None, failed: 0 }
    }
}

fn fmt(x: &Real, digits: u32) -> String {
    format_real(x, digits.max(1))
}

fn family(s: &str) -> Result<Family> {
    s.parse()
}

fn constant_report(name: &str, mut head: serde_json::Map<String, Value>, r: &ConstantResult, digits: u32) -> Report {
    let value = match &r.exact {
        Some(q) => rational_to_string(q),
        None => fmt(&r.value, digits),
    };
    head.insert("constant".into(), name.into());
    head.insert("value".into(), value.clone().into());
    head.insert("digits".into(), r.digits_claimed.min(digits).into());
    head.insert("n".into(), r.n_used.into());
    head.insert("m".into(), r.m_used.into());
    head.insert("residual_estimate".into(), fmt(&r.residual_estimate, 3).into());
    Report::new(Value::Object(head), vec![value])
}

fn plan(n: Option<u64>, m: Option<u32>) -> Plan {
    Plan { n, m }
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Bernoulli(a) => {
            let b = rational_to_string(&bernoulli_number(a.n));
            Ok(Report::new(json!({ "n": a.n, "value": b }), vec![b]))
        }
        Command::Harmonic(a) => {
            if a.i < 1 {
                return Err(Error::Domain("harmonic order must be positive".into()));
            }
            let h = rational_to_string(&harmonic_number(a.n, a.i));
            Ok(Report::new(json!({ "n": a.n, "i": a.i, "value": h }), vec![h]))
        }
        Command::Stirling(a) => match (a.n, a.k, a.r, a.t) {
            (Some(n), Some(k), _, _) => {
                let v = stirling_first_kind(n, k)?.to_string();
                Ok(Report::new(json!({ "kind": "first", "n": n, "k": k, "value": v }), vec![v]))
            }
            (None, None, Some(r), Some(t)) => {
                let v = rational_to_string(&stirling_s(r, a.s, t)?);
                Ok(Report::new(json!({ "kind": "S", "r": r, "s": a.s, "t": t, "value": v }), vec![v]))
            }
            _ => Err(Error::Domain("stirling needs --r and --t, or --n and --k".into())),
        },
        Command::Ctable(a) => {
            let v = rational_to_string(&c_table(a.j, a.i)?);
            Ok(Report::new(json!({ "j": a.j, "i": a.i, "value": v }), vec![v]))
        }
        Command::Expansion(a) => {
            let e = expand(family(&a.family)?, a.p, a.q, a.m)?;
            let v = e.to_json();
            let mut plain: Vec<String> = e
                .terms
                .iter()
                .map(|t| {
                    format!(
                        "{} * n^{} * (log n)^{} [{}]",
                        t.coeff.to_json(),
                        t.n_power,
                        t.log_power,
                        t.special.name()
                    )
                })
                .collect();
            plain.push(format!("constant: {}", e.constant.to_json()));
            plain.push(format!("error: O(n^{} (log n)^{})", e.error_n_power, e.error_log_power));
            Ok(Report::new(v, plain))
        }
        Command::DirectSum(a) => {
            let f = family(&a.family)?;
            let v = direct_sum(f, a.p, a.q, a.n, a.digits)?;
            let s = fmt(&v, a.digits);
            Ok(Report::new(
                json!({ "family": f.to_string(), "p": a.p, "q": a.q, "n": a.n, "value": s, "digits": a.digits }),
                vec![s],
            ))
        }
        Command::ZetaDeriv(a) => {
            let r = zeta_derivative_with(a.p, a.a, a.digits, plan(a.n, a.m))?;
            let mut h = serde_json::Map::new();
            h.insert("p".into(), a.p.into());
            h.insert("a".into(), a.a.into());
            Ok(constant_report("zeta_deriv", h, &r, a.digits))
        }
        Command::Stieltjes(a) => {
            let r = stieltjes_with(a.p, a.digits, plan(a.n, a.m))?;
            let mut h = serde_json::Map::new();
            h.insert("p".into(), a.p.into());
            Ok(constant_report("stieltjes", h, &r, a.digits))
        }
        Command::Glaisher(a) => {
            let r = glaisher_with(a.q, a.digits, plan(a.n, a.m))?;
            let mut h = serde_json::Map::new();
            h.insert("q".into(), a.q.into());
            Ok(constant_report("glaisher", h, &r, a.digits))
        }
        Command::Cpq(a) => {
            let r = cpq_with(a.p, a.q, a.digits, plan(a.n, a.m))?;
            let mut h = serde_json::Map::new();
            h.insert("p".into(), a.p.into());
            h.insert("q".into(), a.q.into());
            Ok(constant_report("cpq", h, &r, a.digits))
        }
        Command::Table1(a) => {
            let cells = table1(a.digits)?;
            let entries: Vec<Value> = cells
                .iter()
                .map(|c| json!({ "p": c.p, "q": c.q, "value": fmt(&c.cpq, a.digits), "leading": c.leading }))
                .collect();
            let mut plain = vec![format!("{:>3} {}", "p", (0..=4).map(|q| format!("{:>16}", format!("q={q}"))).collect::<String>())];
            for p in 1..=6u32 {
                let row: String = cells
                    .iter()
                    .filter(|c| c.p == p)
                    .map(|c| format!("{:>16}", fmt(&c.cpq, a.digits)))
                    .collect();
                plain.push(format!("{p:>3} {row}"));
            }
            let mut result = json!({ "digits": a.digits, "cells": entries });
            if a.fit {
                let f = cpq_decay_fit((4, 12), (4, 10))?;
                result["fit"] = json!({
                    "a": f.a, "b": f.b, "c": f.c, "d": f.d, "rms": f.rms,
                    "rms_leading_only": f.rms_leading_only,
                    "rms_with_corrections": f.rms_with_corrections,
                    "shrinkage": f.shrinkage(), "points": f.points,
                });
                plain.push(format!(
                    "fit: a={:.5} b={:.5} c={:.5} d={:.5} rms={:.2e} shrinkage={:.1}",
                    f.a, f.b, f.c, f.d, f.rms, f.shrinkage()
                ));
            }
            Ok(Report::new(result, plain))
        }
        Command::Asympk(a) => {
            let text = std::fs::read_to_string(&a.input)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", a.input)))?;
            let seq = parse_csv(&text, bits_for(a.digits))?;
            match a.j {
                Some(j) => {
                    let x = extract_coefficient(&seq, j, a.k)?;
                    let s = fmt(&x.value, a.digits);
                    Ok(Report::new(
                        json!({ "j": j, "k": a.k, "value": s, "estimated_digits": x.estimated_digits }),
                        vec![s],
                    ))
                }
                None => {
                    let t = asympk_transform(&seq, a.k)?;
                    let agree = digit_agreement(&t, a.stride)?;
                    let s = fmt(t.last(), a.digits);
                    Ok(Report::new(
                        json!({ "k": a.k, "value": s, "agreeing_digits": agree, "terms": seq.len() }),
                        vec![s, format!("agreeing digits: {agree}")],
                    ))
                }
            }
        }
        Command::Polylog(a) => {
            let x = parse_real(&a.x, bits_for(a.digits) + 16)?;
            let v = if a.reflection { li_reflection(a.j, &x, a.digits)? } else { polylog(a.j, &x, a.digits)? };
            let s = fmt(&v, a.digits);
            Ok(Report::new(json!({ "j": a.j, "x": a.x, "reflection": a.reflection, "value": s }), vec![s]))
        }
        Command::Nielsen(a) => {
            let x = parse_real(&a.x, bits_for(a.digits) + 16)?;
            let v = nielsen(a.k, a.p, &x, a.digits)?;
            let s = fmt(&v, a.digits);
            Ok(Report::new(json!({ "k": a.k, "p": a.p, "x": a.x, "value": s }), vec![s]))
        }
        Command::Verify(a) => {
            let suites: Vec<Suite> =
                if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
            let params = SuiteParams { max_p: a.max_p, max_n: a.max_n, k: a.k };
            let mut lines = Vec::new();
            let mut failed = 0;
            for s in suites {
                let checks = run_suite(s, params)?;
                eprintln!("{s}: {} instances", checks.len());
                for c in &checks {
                    if !c.holds {
                        failed += 1;
                    }
                    lines.push(c.to_json());
                }
            }
            let plain = lines.iter().map(Value::to_string).collect();
            let total = lines.len();
            Ok(Report {
                result: json!({ "instances": total, "failed": failed }),
                plain,
                lines: Some(lines),
                failed,
            })
        }
        Command::Taylor(a) => {
            let want_exact = a.exact || !a.asymp;
            let mut result = json!({ "k": a.k, "n": a.n });
            let mut plain = Vec::new();
            let mut exact_val = None;
            if want_exact {
                let q = taylor_coeffs_at(a.k, &[a.n])?.remove(0);
                let s = rational_to_string(&q);
                result["exact"] = s.clone().into();
                result["exact_decimal"] = fmt(&Float::with_val(bits_for(a.digits), &q), a.digits).into();
                plain.push(s);
                exact_val = Some(q);
            }
            if a.asymp {
                let v = asymp_taylor(a.n, a.k, a.terms, a.digits)?;
                result["asymp"] = fmt(&v, a.digits).into();
                result["terms"] = a.terms.into();
                plain.push(fmt(&v, a.digits));
                if let Some(q) = exact_val {
                    let r = Float::with_val(bits_for(a.digits), &q) / &v;
                    result["ratio"] = fmt(&r, 8).into();
                    plain.push(format!("ratio: {}", fmt(&r, 8)));
                }
            }
            Ok(Report::new(result, plain))
        }
        Command::Norlund(a) => {
            let alpha = rational_from_str(&a.alpha)
                .ok_or_else(|| Error::Domain(format!("cannot parse rational `{}`", a.alpha)))?;
            let v = rational_to_string(&norlund_poly(a.n, a.order, &alpha));
            Ok(Report::new(json!({ "n": a.n, "order": a.order, "alpha": a.alpha, "value": v }), vec![v]))
        }
        Command::Bootstrap(a) => {
            let t = bootstrap_ci(a.max_i, a.digits)?;
            let entries: Vec<Value> = t
                .c
                .iter()
                .zip(&t.diagnostics)
                .enumerate()
                .map(|(i, (c, d))| {
                    json!({
                        "i": i,
                        "c": fmt(c, a.digits),
                        "residual": fmt(&d.residual, 3),
                        "s_min": d.s_grid.iter().cloned().fold(f64::INFINITY, f64::min),
                        "s_max": d.s_grid.iter().cloned().fold(0.0, f64::max),
                        "grid_points": d.s_grid.len(),
                    })
                })
                .collect();
            let plain = t
                .c
                .iter()
                .zip(&t.diagnostics)
                .enumerate()
                .map(|(i, (c, d))| format!("c_{i} = {}  (residual {})", fmt(c, a.digits), fmt(&d.residual, 3)))
                .collect();
            Ok(Report::new(json!({ "max_i": a.max_i, "digits": a.digits, "c": entries }), plain))
        }
        Command::Metazeta(a) => match (&a.s, &a.limit) {
            (Some(s), None) => {
                let prec = bits_for(a.digits) + 16;
                let sv = parse_real(s, prec)?;
                let v = meta_zeta(&sv, a.digits)?;
                let sm1 = Float::with_val(prec, &sv - 1u32);
                let with_log = Float::with_val(prec, &v + Float::with_val(prec, sm1.ln_ref()));
                Ok(Report::new(
                    json!({ "s": s, "value": fmt(&v, a.digits), "plus_log_s_minus_1": fmt(&with_log, a.digits) }),
                    vec![fmt(&v, a.digits), format!("+ log(s-1): {}", fmt(&with_log, a.digits))],
                ))
            }
            (None, Some(l)) => {
                let which: AbelLimit = l.parse()?;
                let pair = abel_limit_check(which, a.digits)?;
                let lhs = fmt(&pair.s_limit, a.digits);
                let rhs = fmt(&pair.discrete_limit, a.digits);
                Ok(Report::new(
                    json!({ "limit": l, "s_limit": lhs, "discrete_limit": rhs, "grid": pair.grid }),
                    vec![format!("s -> 1:   {lhs}"), format!("discrete: {rhs}")],
                ))
            }
            _ => Err(Error::Domain("metazeta needs --s or --limit".into())),
        },
    }
}

/// Subcommand name and its flags as given after defaults were applied.
pub fn describe(cmd: &Command) -> (&'static str, Value) {
    fn v<T: serde::Serialize>(t: &T) -> Value {
        serde_json::to_value(t).unwrap_or(Value::Null)
    }
    match cmd {
        Command::Bernoulli(a) => ("bernoulli", v(a)),
        Command::Harmonic(a) => ("harmonic", v(a)),
        Command::Stirling(a) => ("stirling", v(a)),
        Command::Ctable(a) => ("ctable", v(a)),
        Command::Expansion(a) => ("expansion", v(a)),
        Command::DirectSum(a) => ("direct-sum", v(a)),
        Command::ZetaDeriv(a) => ("zeta-deriv", v(a)),
        Command::Stieltjes(a) => ("stieltjes", v(a)),
        Command::Glaisher(a) => ("glaisher", v(a)),
        Command::Cpq(a) => ("cpq", v(a)),
        Command::Table1(a) => ("table1", v(a)),
        Command::Asympk(a) => ("asympk", v(a)),
        Command::Polylog(a) => ("polylog", v(a)),
        Command::Nielsen(a) => ("nielsen", v(a)),
        Command::Verify(a) => ("verify", v(a)),
        Command::Taylor(a) => ("taylor", v(a)),
        Command::Norlund(a) => ("norlund", v(a)),
        Command::Bootstrap(a) => ("bootstrap", v(a)),
        Command::Metazeta(a) => ("metazeta", v(a)),
    }
}
