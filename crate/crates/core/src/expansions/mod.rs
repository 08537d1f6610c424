//! Asymptotic expansions of the four sum families as exact data.
//!
//! | family | sum |
//! |---|---|
//! | S1 | `sum_{k=1}^{n} (log k)^p / k^q` |
//! | S2 | `sum_{k=1}^{n} k^q (log k)^p` |
//! | S3 | `sum_{k=1}^{n-1} (log k)^p / (n-k)^q` |
//! | S4 | `sum_{k=2}^{n-1} 1 / (k^q (log k)^p)` |

mod dblock;
mod direct;
mod eval;
mod families;
mod symbol;

pub use dblock::{d_block_s3, d_block_s3_report, d_closed_form, DBlockReport, DReading};
pub use direct::direct_sum;
pub use eval::{evaluate, evaluate_list, evaluate_terms, ConstantValues};
pub use families::{expand, expand_s1, expand_s2, expand_s3, expand_s4, omitted_block};
pub use symbol::{ConstExpr, Symbol};

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::S1 => "S1",
            Family::S2 => "S2",
            Family::S3 => "S3",
            Family::S4 => "S4",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "S1" | "1" => Ok(Family::S1),
            "S2" | "2" => Ok(Family::S2),
            "S3" | "3" => Ok(Family::S3),
            "S4" | "4" => Ok(Family::S4),
            _ => Err(Error::Domain(format!("unknown family `{s}` (expected S1..S4)"))),
        }
    }
}

/// Non-polynomial factor carried by a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Special {
    None,
    /// `li(n)`.
    Li,
    /// `Ei(scale * log n)`.
    Ei { scale: i64 },
    /// `log log n`.
    LogLog,
}

impl Special {
    pub fn name(&self) -> &'static str {
        match self {
            Special::None => "none",
            Special::Li => "li",
            Special::Ei { .. } => "ei",
            Special::LogLog => "loglog",
        }
    }
}

/// `coeff * n^n_power * (log n)^log_power * special(n)`.
///
/// `log_power` is signed: the S4 expansions carry inverse powers of `log n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm {
    pub coeff: ConstExpr,
    pub n_power: i64,
    pub log_power: i64,
    pub special: Special,
}

impl ExpansionTerm {
    pub fn new(coeff: ConstExpr, n_power: i64, log_power: i64) -> Self {
        ExpansionTerm {
            coeff,
            n_power,
            log_power,
            special: Special::None,
        }
    }

    pub fn special(coeff: ConstExpr, special: Special) -> Self {
        ExpansionTerm {
            coeff,
            n_power: 0,
            log_power: 0,
            special,
        }
    }

    /// Growth class `(power of n, power of log n)` used for ordering.
    pub fn order_key(&self) -> (i64, i64) {
        match self.special {
            Special::None => (self.n_power, self.log_power),
            Special::Li => (1, -1),
            Special::Ei { scale } => (scale, -1),
            Special::LogLog => (0, 0),
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "coeff": self.coeff.to_json(),
            "n_power": self.n_power,
            "log_power": self.log_power,
            "special": self.special.name(),
        });
        if let Special::Ei { scale } = self.special {
            v["ei_scale"] = json!(scale);
        }
        v
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Domain("malformed expansion term".into());
        let coeff = ConstExpr::from_json(v.get("coeff").ok_or_else(bad)?)?;
        let n_power = v.get("n_power").and_then(Value::as_i64).ok_or_else(bad)?;
        let log_power = v.get("log_power").and_then(Value::as_i64).ok_or_else(bad)?;
        let special = match v.get("special").and_then(Value::as_str).ok_or_else(bad)? {
            "none" => Special::None,
            "li" => Special::Li,
            "loglog" => Special::LogLog,
            "ei" => Special::Ei {
                scale: v.get("ei_scale").and_then(Value::as_i64).ok_or_else(bad)?,
            },
            _ => return Err(bad()),
        };
        Ok(ExpansionTerm {
            coeff,
            n_power,
            log_power,
            special,
        })
    }
}

/// Terms in non-increasing order of growth, a constant slot, and the order
/// `n^error_n_power (log n)^error_log_power` of the truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    pub family: Family,
    pub p: u32,
    pub q: u32,
    pub m: u32,
    pub terms: Vec<ExpansionTerm>,
    pub constant: ConstExpr,
    pub error_n_power: i64,
    pub error_log_power: i64,
}

impl AsymptoticExpansion {
    pub(crate) fn new(family: Family, p: u32, q: u32, m: u32) -> Self {
        AsymptoticExpansion {
            family,
            p,
            q,
            m,
            terms: Vec::new(),
            constant: ConstExpr::zero(),
            error_n_power: 0,
            error_log_power: 0,
        }
    }

    /// Adds a plain term, merging with an existing term of the same shape.
    /// Terms with `n_power = log_power = 0` go to the constant slot.
    pub(crate) fn push(&mut self, coeff: ConstExpr, n_power: i64, log_power: i64) {
        if coeff.is_zero() {
            return;
        }
        if n_power == 0 && log_power == 0 {
            self.constant.add(&coeff);
            return;
        }
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.special == Special::None && t.n_power == n_power && t.log_power == log_power)
        {
            t.coeff.add(&coeff);
            return;
        }
        self.terms.push(ExpansionTerm::new(coeff, n_power, log_power));
    }

    pub(crate) fn push_special(&mut self, coeff: ConstExpr, special: Special) {
        if !coeff.is_zero() {
            self.terms.push(ExpansionTerm::special(coeff, special));
        }
    }

    /// Drops cancelled terms and sorts by decreasing growth, specials first
    /// among equal keys.
    pub(crate) fn finish(mut self) -> Self {
        self.terms.retain(|t| !t.coeff.is_zero());
        self.terms.sort_by(|a, b| {
            b.order_key()
                .cmp(&a.order_key())
                .then_with(|| (a.special == Special::None).cmp(&(b.special == Special::None)))
        });
        self
    }

    /// All symbols used by the terms and the constant.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self
            .terms
            .iter()
            .flat_map(|t| t.coeff.symbols())
            .chain(self.constant.symbols())
            .filter(|s| *s != Symbol::One)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.to_string(),
            "p": self.p,
            "q": self.q,
            "m": self.m,
            "terms": self.terms.iter().map(ExpansionTerm::to_json).collect::<Vec<_>>(),
            "constant": self.constant.to_json(),
            "error": {"n_power": self.error_n_power, "log_power": self.error_log_power},
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Domain("malformed expansion".into());
        let int = |k: &str| v.get(k).and_then(Value::as_u64).ok_or_else(bad);
        let family: Family = v.get("family").and_then(Value::as_str).ok_or_else(bad)?.parse()?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(ExpansionTerm::from_json)
            .collect::<Result<Vec<_>>>()?;
        let err = v.get("error").ok_or_else(bad)?;
        Ok(AsymptoticExpansion {
            family,
            p: int("p")? as u32,
            q: int("q")? as u32,
            m: int("m")? as u32,
            terms,
            constant: ConstExpr::from_json(v.get("constant").ok_or_else(bad)?)?,
            error_n_power: err.get("n_power").and_then(Value::as_i64).ok_or_else(bad)?,
            error_log_power: err.get("log_power").and_then(Value::as_i64).ok_or_else(bad)?,
        })
    }
}
