//! Constants defined as the constant terms of the expansions: `gamma`, the
//! Stieltjes constants, `zeta^{(p)}` at integers, the generalized Glaisher
//! constants and `C_{p,q}`.

mod extract;
mod gamma;
mod table;

pub use extract::{extract_constant, ConstantResult, Plan};
pub use gamma::{euler_gamma, euler_gamma_reference};
pub use table::{cpq_decay_fit, table1, DecayFit, Table1Cell};

use std::collections::HashMap;
use std::sync::RwLock;

use rug::{Float, Rational};

use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_number, factorial, srst};
use crate::expansions::{Family, Symbol};
use crate::real::{bits_for, from_rational, log2pi_half, zeta_int, Real};

fn sign(p: u32) -> i32 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `zeta^{(p)}(a)` for integer `a != 1`.
///
/// `a >= 2` uses the S1 constant `(-1)^p zeta^{(p)}(a)`; `a = -q <= 0` uses
/// the S2 constant `(-1)^p zeta^{(p)}(-q) + B_{q+1}/(q+1) p! S_{p,1,q}`.
pub fn zeta_derivative(p: u32, a: i64, digits: u32) -> Result<ConstantResult> {
    zeta_derivative_with(p, a, digits, Plan::default())
}

pub fn zeta_derivative_with(p: u32, a: i64, digits: u32, plan: Plan) -> Result<ConstantResult> {
    if a == 1 {
        return domain("zeta has a pole at s = 1");
    }
    crate::budget::check_digits(digits)?;
    let prec = bits_for(digits) + 16;
    if p == 0 {
        if a >= 2 {
            let v = zeta_int(a as u32, prec)?;
            let mut r = ConstantResult::exact_value(v, Rational::new());
            r.exact = None;
            return Ok(r);
        }
        let q = (-a) as u32;
        let z = -(bernoulli_number(q as usize + 1) / Rational::from(q + 1));
        return Ok(ConstantResult::exact_value(from_rational(prec, &z), z));
    }
    if a >= 2 {
        let r = extract_constant(Family::S1, p, a as u32, digits, plan)?;
        return Ok(r.map(|v| v * sign(p)));
    }
    let q = (-a) as u32;
    let r = extract_constant(Family::S2, p, q, digits, plan)?;
    let known = bernoulli_number(q as usize + 1) / Rational::from(q + 1) * factorial(p) * srst(p as i64, 1, q as i64);
    Ok(r.map(|v| (v - from_rational(prec, &known)) * sign(p)))
}

/// Stieltjes constant `gamma_p` (`gamma_0 = gamma`) from the S1 `q = 1`
/// constant.
pub fn stieltjes(p: u32, digits: u32) -> Result<ConstantResult> {
    stieltjes_with(p, digits, Plan::default())
}

pub fn stieltjes_with(p: u32, digits: u32, plan: Plan) -> Result<ConstantResult> {
    extract_constant(Family::S1, p, 1, digits, plan)
}

/// Generalized Glaisher constant `-zeta'(-q) + B_{q+1} H_q/(q+1)`; `q = 0`
/// gives `log(2 pi)/2`.
pub fn glaisher(q: u32, digits: u32) -> Result<ConstantResult> {
    glaisher_with(q, digits, Plan::default())
}

pub fn glaisher_with(q: u32, digits: u32, plan: Plan) -> Result<ConstantResult> {
    extract_constant(Family::S2, 1, q, digits, plan)
}

/// `C_{p,q}`, the constant term of `sum_{k=2}^{n-1} 1/(k^q (log k)^p)`.
pub fn cpq(p: u32, q: u32, digits: u32) -> Result<ConstantResult> {
    cpq_with(p, q, digits, Plan::default())
}

pub fn cpq_with(p: u32, q: u32, digits: u32, plan: Plan) -> Result<ConstantResult> {
    if p < 1 {
        return domain("C_{p,q} requires p >= 1");
    }
    extract_constant(Family::S4, p, q, digits, plan)
}

type Cache = RwLock<Option<HashMap<Symbol, (u32, Real)>>>;
static CACHE: Cache = RwLock::new(None);

/// Numeric value of any constant symbol, computed on first use and cached
/// at the highest digit count requested so far.
pub fn resolve(s: Symbol, digits: u32) -> Result<Real> {
    let s = s.canonical();
    let prec = bits_for(digits) + 16;
    match s {
        Symbol::One => return Ok(Float::with_val(prec, 1)),
        Symbol::Gamma => return Ok(euler_gamma(prec)),
        Symbol::Zeta(k) => return zeta_int(k, prec),
        Symbol::Log2PiHalf => return Ok(log2pi_half(prec)),
        _ => {}
    }
    if let Some(map) = CACHE.read().expect("constant cache").as_ref() {
        if let Some((d, v)) = map.get(&s) {
            if *d >= digits {
                return Ok(Float::with_val(prec, v));
            }
        }
    }
    let r = match s {
        Symbol::Stieltjes(p) => stieltjes(p, digits)?,
        Symbol::ZetaDeriv { p, a } => zeta_derivative(p, a, digits)?,
        Symbol::Cpq { p, q } => cpq(p, q, digits)?,
        Symbol::Glaisher(q) => glaisher(q, digits)?,
        _ => return Err(Error::Unresolved(s.to_string())),
    };
    let mut guard = CACHE.write().expect("constant cache");
    let map = guard.get_or_insert_with(HashMap::new);
    let slot = map.entry(s).or_insert_with(|| (digits, r.value.clone()));
    if slot.0 < digits {
        *slot = (digits, r.value.clone());
    }
    Ok(Float::with_val(prec, &r.value))
}
