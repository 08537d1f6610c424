use rug::ops::Pow;
use std::collections::HashMap;

use rug::Float;

use super::{AsymptoticExpansion, ConstExpr, ExpansionTerm, Special, Symbol};
use crate::error::{domain, Error, Result};
use crate::real::{bits_for, exp_integral_ei, from_rational, log2pi_half, log_integral, zeta_int, Precision, Real};

/// Numeric values for constant symbols.
///
/// `ONE`, `gamma`, `zeta(s)` and `log(2 pi)/2` are always available. Other
/// symbols come from explicitly inserted values or, when `compute_missing`
/// is set, from [`crate::constants::resolve`].
#[derive(Debug, Clone, Default)]
pub struct ConstantValues {
    values: HashMap<Symbol, Real>,
    compute_missing: bool,
}

impl ConstantValues {
    /// Built-ins only; any other symbol is an error.
    pub fn builtin() -> Self {
        Self::default()
    }

    /// Built-ins plus on-demand extraction of every other symbol.
    pub fn computing() -> Self {
        ConstantValues {
            values: HashMap::new(),
            compute_missing: true,
        }
    }

    pub fn insert(&mut self, s: Symbol, v: Real) {
        self.values.insert(s.canonical(), v);
    }

    pub fn with(mut self, s: Symbol, v: Real) -> Self {
        self.insert(s, v);
        self
    }

    pub fn value(&self, s: Symbol, prec: u32) -> Result<Real> {
        let s = s.canonical();
        if let Some(v) = self.values.get(&s) {
            return Ok(Float::with_val(prec, v));
        }
        match s {
            Symbol::One => Ok(Float::with_val(prec, 1)),
            Symbol::Gamma => Ok(crate::constants::euler_gamma(prec)),
            Symbol::Zeta(k) => zeta_int(k, prec),
            Symbol::Log2PiHalf => Ok(log2pi_half(prec)),
            _ if self.compute_missing => {
                let digits = (prec.saturating_sub(Precision::MIN_GUARD) as f64 / std::f64::consts::LOG2_10).ceil() as u32;
                crate::constants::resolve(s, digits).map(|v| Float::with_val(prec, v))
            }
            _ => Err(Error::Unresolved(s.to_string())),
        }
    }

    pub fn expr(&self, e: &ConstExpr, prec: u32) -> Result<Real> {
        let mut acc = Float::with_val(prec, 0);
        for (s, q) in e.iter() {
            let v = self.value(*s, prec)?;
            acc += v * from_rational(prec, q);
        }
        Ok(acc)
    }
}

struct Point {
    n: Real,
    log_n: Real,
    prec: u32,
}

impl Point {
    fn term(&self, t: &ExpansionTerm, values: &ConstantValues) -> Result<Real> {
        let c = values.expr(&t.coeff, self.prec)?;
        let shape = match t.special {
            Special::None => {
                let a = Float::with_val(self.prec, (&self.n).pow(t.n_power as i32));
                let b = Float::with_val(self.prec, (&self.log_n).pow(t.log_power as i32));
                a * b
            }
            Special::Li => log_integral(&self.n)?,
            Special::Ei { scale } => {
                let x = Float::with_val(self.prec, &self.log_n * scale);
                exp_integral_ei(&x)?
            }
            Special::LogLog => Float::with_val(self.prec, self.log_n.ln_ref()),
        };
        Ok(c * shape)
    }
}

/// `sum of terms (+ constant)` at `n` with about `digits` correct digits
/// relative to the largest term.
pub fn evaluate_terms(
    e: &AsymptoticExpansion,
    n: u64,
    values: &ConstantValues,
    digits: u32,
    include_constant: bool,
) -> Result<Real> {
    let mut acc = evaluate_list(&e.terms, n, values, digits)?;
    if include_constant {
        acc += values.expr(&e.constant, acc.prec())?;
    }
    Ok(acc)
}

/// Numeric value of the expansion (terms plus constant) at `n`.
pub fn evaluate(e: &AsymptoticExpansion, n: u64, values: &ConstantValues, digits: u32) -> Result<Real> {
    evaluate_terms(e, n, values, digits, true)
}

pub fn evaluate_list(terms: &[ExpansionTerm], n: u64, values: &ConstantValues, digits: u32) -> Result<Real> {
    if n < 2 {
        return domain("expansions are evaluated at n >= 2");
    }
    let prec = bits_for(digits) + 16;
    let nf = Float::with_val(prec, n);
    let log_n = Float::with_val(prec, nf.ln_ref());
    let pt = Point { n: nf, log_n, prec };
    let mut acc = Float::with_val(prec, 0);
    for t in terms {
        acc += pt.term(t, values)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansions::{expand_s1, Family};
    use crate::exact::harmonic_number;
    use rug::Rational;

    #[test]
    fn single_constant() {
        let mut e = AsymptoticExpansion::new(Family::S1, 0, 1, 1);
        e.constant = ConstExpr::rational(Rational::from(1));
        let v = evaluate(&e, 10, &ConstantValues::builtin(), 20).unwrap();
        assert_eq!(v, 1);
    }

    #[test]
    fn harmonic_100() {
        let e = expand_s1(0, 1, 3).unwrap();
        let v = evaluate(&e, 100, &ConstantValues::builtin(), 40).unwrap();
        let h = from_rational(200, &harmonic_number(100, 1));
        let diff = Float::with_val(200, &v - &h).abs();
        // |B_8 / (8 n^8)| * 2
        let bound = 2.0 / 30.0 / 8.0 * 1e-16;
        assert!(diff.to_f64() < bound, "{diff}");
    }

    #[test]
    fn unresolved_symbol_named() {
        let e = expand_s1(1, 2, 1).unwrap();
        match evaluate(&e, 10, &ConstantValues::builtin(), 20) {
            Err(Error::Unresolved(s)) => assert_eq!(s, "zeta_deriv(1,2)"),
            other => panic!("{other:?}"),
        }
    }
}
