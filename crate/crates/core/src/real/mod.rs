//! Arbitrary-precision reals and the special functions the expansions need.
//!
//! Functions take their arguments as [`Real`] values and return results at
//! the precision of the (first) argument unless a precision is passed.

mod ei;
mod gamma;
mod quad;
mod zeta;

pub use ei::{exp_integral_e1, exp_integral_ei, log_integral};
pub use gamma::upper_incomplete_gamma;
pub use quad::{tanh_sinh, QuadNode};
pub use zeta::{zeta_int, zeta_real};

use rug::float::{Constant, Round};
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Arbitrary-precision binary floating value (MPFR).
pub type Real = Float;

/// Requested decimal accuracy together with guard bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    /// Target decimal digits.
    pub digits: u32,
    /// Extra binary digits carried beyond the target.
    pub guard_bits: u32,
}

impl Precision {
    pub const MIN_GUARD: u32 = 64;

    pub fn new(digits: u32) -> Self {
        Precision {
            digits,
            guard_bits: Self::MIN_GUARD,
        }
    }

    /// Guard bits sized for a computation summing `terms` terms.
    pub fn with_terms(digits: u32, terms: u64) -> Self {
        let extra = 64 - terms.max(1).leading_zeros();
        Precision {
            digits,
            guard_bits: Self::MIN_GUARD + extra,
        }
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.digits) + self.guard_bits
    }
}

/// `ceil(d * log2(10))`.
pub fn digits_to_bits(d: u32) -> u32 {
    ((d as f64) * std::f64::consts::LOG2_10).ceil() as u32
}

/// Bits for `d` digits plus the minimum guard.
pub fn bits_for(d: u32) -> u32 {
    Precision::new(d).bits()
}

pub fn real(prec: u32, v: f64) -> Real {
    Float::with_val(prec, v)
}

pub fn from_int(prec: u32, v: i64) -> Real {
    Float::with_val(prec, v)
}

pub fn from_rational(prec: u32, q: &Rational) -> Real {
    Float::with_val(prec, q)
}

pub fn pi(prec: u32) -> Real {
    Float::with_val(prec, Constant::Pi)
}

pub fn ln2(prec: u32) -> Real {
    Float::with_val(prec, Constant::Log2)
}

/// `log(2 pi) / 2`.
pub fn log2pi_half(prec: u32) -> Real {
    let mut x = pi(prec + 8) * 2u32;
    x.ln_mut();
    x /= 2u32;
    Float::with_val(prec, x)
}

/// Natural logarithm of a positive integer.
pub fn ln_int(prec: u32, n: u64) -> Real {
    let mut x = Float::with_val(prec, n);
    x.ln_mut();
    x
}

/// Rounds a value to a new precision.
pub fn round_to(x: &Real, prec: u32) -> Real {
    Float::with_val(prec, x)
}

/// Binary exponent of `|x|`. Zero maps to `i32::MIN / 2`.
pub fn exponent(x: &Real) -> i32 {
    if x.is_zero() {
        i32::MIN / 2
    } else {
        x.get_exp().unwrap_or(0)
    }
}

/// Approximate base-10 logarithm of `|x|` (very negative for zero).
pub fn log10_abs(x: &Real) -> f64 {
    if x.is_zero() {
        return -1.0e9;
    }
    let mut a = Float::with_val(64, x.abs_ref());
    a.log10_mut();
    a.to_f64()
}

/// Number of decimal digits on which `a` and `b` agree relative to `|a|`.
pub fn agreeing_digits(a: &Real, b: &Real) -> f64 {
    let diff = Float::with_val(a.prec().max(b.prec()), a - b);
    if diff.is_zero() {
        return (a.prec() as f64) / std::f64::consts::LOG2_10;
    }
    let scale = if a.is_zero() { 0.0 } else { log10_abs(a) };
    scale - log10_abs(&diff)
}

/// Scientific notation `d.ddd…e±k` with `digits` significant digits.
pub fn format_real(x: &Real, digits: u32) -> String {
    let digits = digits.max(1) as usize;
    if x.is_zero() {
        return format!("0.{}e+0", "0".repeat(digits.saturating_sub(1)));
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, s, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    let exp = exp.unwrap_or(0) - 1;
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    let esign = if exp < 0 { "-" } else { "+" };
    if tail.is_empty() {
        format!("{sign}{head}e{esign}{}", exp.abs())
    } else {
        format!("{sign}{head}.{tail}e{esign}{}", exp.abs())
    }
}

/// Parses a decimal string at the given precision.
pub fn parse_real(s: &str, prec: u32) -> Result<Real> {
    let v = Float::parse(s.trim()).map_err(|e| Error::Domain(format!("cannot parse real `{s}`: {e}")))?;
    Ok(Float::with_val(prec, v))
}

/// Euler's constant at `prec` bits from the library cache.
pub fn euler_gamma(prec: u32) -> Real {
    crate::constants::euler_gamma(prec)
}
