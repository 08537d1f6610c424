use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rational_from_str, rational_to_string};

/// A named constant that may appear in an expansion coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    One,
    Gamma,
    /// Stieltjes constant `gamma_p`, `p >= 1`.
    Stieltjes(u32),
    /// `zeta(s)` for integer `s >= 2`.
    Zeta(u32),
    /// `zeta^{(p)}(a)`, `p >= 1`, `a != 1`.
    ZetaDeriv { p: u32, a: i64 },
    /// `log(2 pi) / 2`.
    Log2PiHalf,
    /// Constant term `C_{p,q}` of `sum 1/(k^q (log k)^p)`.
    Cpq { p: u32, q: u32 },
    /// Generalized Glaisher constant `-zeta'(-q) + B_{q+1} H_q/(q+1)`.
    Glaisher(u32),
}

impl Symbol {
    /// Normalizes aliases: `gamma_0` is `gamma`, `zeta^{(0)}(s)` is `zeta(s)`.
    pub fn canonical(self) -> Symbol {
        match self {
            Symbol::Stieltjes(0) => Symbol::Gamma,
            Symbol::ZetaDeriv { p: 0, a } if a >= 2 => Symbol::Zeta(a as u32),
            s => s,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::One => write!(f, "1"),
            Symbol::Gamma => write!(f, "gamma"),
            Symbol::Stieltjes(p) => write!(f, "stieltjes({p})"),
            Symbol::Zeta(s) => write!(f, "zeta({s})"),
            Symbol::ZetaDeriv { p, a } => write!(f, "zeta_deriv({p},{a})"),
            Symbol::Log2PiHalf => write!(f, "log2pi_half"),
            Symbol::Cpq { p, q } => write!(f, "cpq({p},{q})"),
            Symbol::Glaisher(q) => write!(f, "glaisher({q})"),
        }
    }
}

fn args(s: &str, name: &str) -> Option<Vec<i64>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let s = s.trim();
        let bad = || Error::Domain(format!("unknown constant symbol `{s}`"));
        let one = |v: Option<Vec<i64>>| -> Result<u32> {
            match v.as_deref() {
                Some([x]) if *x >= 0 => Ok(*x as u32),
                _ => Err(bad()),
            }
        };
        Ok(match s {
            "1" => Symbol::One,
            "gamma" => Symbol::Gamma,
            "log2pi_half" => Symbol::Log2PiHalf,
            _ if s.starts_with("stieltjes") => Symbol::Stieltjes(one(args(s, "stieltjes"))?),
            _ if s.starts_with("zeta_deriv") => match args(s, "zeta_deriv").as_deref() {
                Some([p, a]) if *p >= 0 => Symbol::ZetaDeriv { p: *p as u32, a: *a },
                _ => return Err(bad()),
            },
            _ if s.starts_with("zeta") => Symbol::Zeta(one(args(s, "zeta"))?),
            _ if s.starts_with("cpq") => match args(s, "cpq").as_deref() {
                Some([p, q]) if *p >= 1 && *q >= 0 => Symbol::Cpq {
                    p: *p as u32,
                    q: *q as u32,
                },
                _ => return Err(bad()),
            },
            _ if s.starts_with("glaisher") => Symbol::Glaisher(one(args(s, "glaisher"))?),
            _ => return Err(bad()),
        })
    }
}

/// A finite linear combination of [`Symbol`]s with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstExpr {
    terms: BTreeMap<Symbol, Rational>,
}

impl ConstExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(Symbol::One, q);
        e
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut e = Self::zero();
        e.add_term(s, Rational::from(1));
        e
    }

    pub fn term(s: Symbol, q: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(s, q);
        e
    }

    pub fn add_term(&mut self, s: Symbol, q: Rational) {
        if q == 0 {
            return;
        }
        let s = s.canonical();
        let slot = self.terms.entry(s).or_default();
        *slot += q;
        if *slot == 0 {
            self.terms.remove(&s);
        }
    }

    pub fn add(&mut self, other: &ConstExpr) {
        for (s, q) in &other.terms {
            self.add_term(*s, q.clone());
        }
    }

    pub fn scaled(&self, q: &Rational) -> ConstExpr {
        let mut out = ConstExpr::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, Rational::from(c * q));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `ONE`.
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&Symbol::One).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, s: Symbol) -> Rational {
        self.terms.get(&s.canonical()).cloned().unwrap_or_default()
    }

    /// True when only `ONE` occurs.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|s| *s == Symbol::One)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.keys().copied()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(s, q)| json!({"rat": rational_to_string(q), "symbol": s.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<ConstExpr> {
        let bad = || Error::Domain("malformed constant expression".into());
        let mut e = ConstExpr::zero();
        for item in v.as_array().ok_or_else(bad)? {
            let q = item
                .get("rat")
                .and_then(Value::as_str)
                .and_then(rational_from_str)
                .ok_or_else(bad)?;
            let s: Symbol = item.get("symbol").and_then(Value::as_str).ok_or_else(bad)?.parse()?;
            e.add_term(s, q);
        }
        Ok(e)
    }
}

impl fmt::Display for ConstExpr {
    /// Renders as `a/b*sym + c/d*sym2`, or `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *s == Symbol::One {
                write!(f, "{}", rational_to_string(q))?;
            } else {
                write!(f, "{}*{}", rational_to_string(q), s)?;
            }
        }
        Ok(())
    }
}

impl FromStr for ConstExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConstExpr> {
        let mut e = ConstExpr::zero();
        let s = s.trim();
        if s == "0" {
            return Ok(e);
        }
        for part in s.split(" + ") {
            let (q, sym) = match part.split_once('*') {
                Some((q, sym)) => (q, sym.parse()?),
                None => (part, Symbol::One),
            };
            let q = rational_from_str(q)
                .ok_or_else(|| Error::Domain(format!("bad rational `{q}` in constant expression")))?;
            e.add_term(sym, q);
        }
        Ok(e)
    }
}
