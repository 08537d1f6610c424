use rug::Float;

use crate::budget::{check_digits, MAX_M, MAX_N};
use crate::error::{Error, Result};
use crate::expansions::{
    direct_sum, evaluate_terms, expand, omitted_block, AsymptoticExpansion, ConstantValues, Family,
};
use crate::real::{bits_for, log10_abs, Real};

/// A constant obtained as `direct sum - non-constant terms` at a cut-off `n`.
#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub value: Real,
    /// Decimal digits (absolute) the result is claimed to carry.
    pub digits_claimed: u32,
    pub n_used: u64,
    pub m_used: u32,
    /// Estimated absolute error: size of the first omitted block plus
    /// rounding.
    pub residual_estimate: Real,
    /// Exact value, when the constant is rational.
    pub exact: Option<rug::Rational>,
}

impl ConstantResult {
    pub(crate) fn exact_value(value: Real, q: rug::Rational) -> Self {
        let prec = value.prec();
        ConstantResult {
            value,
            digits_claimed: (prec as f64 / std::f64::consts::LOG2_10) as u32,
            n_used: 0,
            m_used: 0,
            residual_estimate: Float::with_val(prec, 0),
            exact: Some(q),
        }
    }

    pub(crate) fn map(mut self, f: impl FnOnce(Real) -> Real) -> Self {
        self.value = f(self.value);
        self
    }
}

/// Cut-off and order for an extraction.
#[derive(Debug, Clone, Copy, Default)]
pub struct Plan {
    pub n: Option<u64>,
    pub m: Option<u32>,
}

fn default_m(family: Family, q: u32, digits: u32) -> u32 {
    let base = (digits / 2).clamp(6, 25);
    match family {
        Family::S2 => base.max(q.div_ceil(2) + 2),
        _ => base,
    }
}

fn omitted_size(family: Family, p: u32, q: u32, m: u32, n: u64) -> Result<f64> {
    let block = omitted_block(family, p, q, m)?;
    let v = crate::expansions::evaluate_list(&block, n, &ConstantValues::builtin(), 20)?;
    Ok(log10_abs(&v))
}

fn choose_n(family: Family, p: u32, q: u32, m: u32, target_log10: f64) -> Result<u64> {
    let mut n: u64 = 8;
    loop {
        let knee_ok = (m as f64) < std::f64::consts::PI * n as f64;
        if knee_ok && omitted_size(family, p, q, m, n)? < target_log10 {
            return Ok(n);
        }
        if n >= MAX_N {
            return Err(Error::Budget(format!(
                "{family} constant (p = {p}, q = {q}) needs n > {MAX_N} at m = {m}"
            )));
        }
        n = (n * 3 / 2).min(MAX_N);
    }
}

fn leading_log10(e: &AsymptoticExpansion, n: u64) -> Result<f64> {
    let lead = e.terms.first().cloned().into_iter().collect::<Vec<_>>();
    if lead.is_empty() {
        return Ok(0.0);
    }
    let v = crate::expansions::evaluate_list(&lead, n, &ConstantValues::builtin(), 20)?;
    Ok(log10_abs(&v).max(0.0))
}

/// Numeric value of the constant slot of `family(p, q)` to `digits` digits.
pub fn extract_constant(family: Family, p: u32, q: u32, digits: u32, plan: Plan) -> Result<ConstantResult> {
    check_digits(digits)?;
    if family == Family::S3 {
        return Err(Error::Domain(
            "S3 constants are known in closed form; extraction applies to S1, S2, S4".into(),
        ));
    }
    let m = plan.m.unwrap_or_else(|| default_m(family, q, digits));
    if m > MAX_M {
        return Err(Error::Budget(format!("Euler-Maclaurin order {m} exceeds {MAX_M}")));
    }
    let mut target = -(digits as f64) - 2.0;
    let mut attempt = 0;
    loop {
        let n = match plan.n {
            Some(n) => {
                if n > MAX_N {
                    return Err(Error::Budget(format!("cut-off {n} exceeds {MAX_N}")));
                }
                n
            }
            None => choose_n(family, p, q, m, target)?,
        };
        let e = expand(family, p, q, m)?;
        let head = leading_log10(&e, n)?;
        let work_digits = digits + 6 + head.ceil() as u32;
        let direct = direct_sum(family, p, q, n, work_digits)?;
        let terms = evaluate_terms(&e, n, &ConstantValues::builtin(), work_digits, false)?;
        let prec = bits_for(digits) + 16;
        let value = Float::with_val(prec, direct - terms);
        let omitted = omitted_size(family, p, q, e.m, n)?;
        let rounding = -(digits as f64) - 4.0;
        let resid_log = if omitted > rounding {
            omitted + (1.0 + 10f64.powf(rounding - omitted)).log10()
        } else {
            rounding + (1.0 + 10f64.powf(omitted - rounding)).log10()
        };
        // relative accuracy for small constants: tighten once
        let mag = log10_abs(&value);
        if plan.n.is_none() && attempt == 0 && mag < 0.0 && resid_log > mag - digits as f64 {
            target = mag - digits as f64 - 2.0;
            attempt += 1;
            continue;
        }
        let residual = Float::with_val(prec, 10f64.powf(resid_log));
        let claimed = ((-resid_log).floor().max(0.0) as u32).min(digits);
        return Ok(ConstantResult {
            value,
            digits_claimed: claimed,
            n_used: n,
            m_used: e.m,
            residual_estimate: residual,
            exact: None,
        });
    }
}
