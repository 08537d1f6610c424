//! Polylogarithms, the Nielsen integrals `S_{k,p}(x) = Li_{k+1,1^{p-1}}(x)`,
//! the `Li_j(1-x)` reflection and the exact Bernoulli/harmonic identities
//! around them.

mod identities;

pub use identities::{
    bernoulli_conjecture, bernoulli_identity_one, binomial_harmonic_identity, harmonic_power_identity,
    log_power_identity, log_power_series, nielsen_coefficients, s11_coefficient_identity, s12_coefficient_identity,
    s12_reduced_identity, t_numbers, t_numbers_by_definition, IdentityCheck,
};

use rug::ops::Pow;
use rug::Float;

use crate::error::{domain, Result};
use crate::exact::{factorial, srst};
use crate::real::{bits_for, exponent, from_rational, tanh_sinh, zeta_int, Real};

fn guard(digits: u32) -> u32 {
    bits_for(digits) + 32
}

// sum_{n>=1} c(n) x^n until the terms drop below the working precision
fn power_series(x: &Real, wp: u32, c: impl Fn(u64) -> Real) -> Real {
    let mut sum = Float::with_val(wp, 0);
    let mut xn = Float::with_val(wp, x);
    let mut n = 1u64;
    loop {
        let t = Float::with_val(wp, &xn * c(n));
        sum += &t;
        if !t.is_zero() && !sum.is_zero() && exponent(&t) < exponent(&sum) - wp as i32 - 4 {
            break;
        }
        xn *= x;
        if xn.is_zero() {
            break;
        }
        n += 1;
    }
    sum
}

fn li_series(j: u32, x: &Real, wp: u32) -> Real {
    power_series(x, wp, |n| Float::with_val(wp, n).pow(-(j as i32)))
}

/// `Li_j(x) = sum_{n>=1} x^n/n^j` for `|x| <= 1`.
pub fn polylog(j: u32, x: &Real, digits: u32) -> Result<Real> {
    if j == 0 {
        return domain("polylog order must be at least 1");
    }
    let wp = guard(digits);
    let out = bits_for(digits);
    let x = Float::with_val(wp, x);
    if x.is_nan() || x.clone().abs() > 1 {
        return domain("polylog requires |x| <= 1");
    }
    if j == 1 {
        if x == 1 {
            return domain("Li_1 diverges at x = 1");
        }
        let v = -Float::with_val(wp, -&x).ln_1p();
        return Ok(Float::with_val(out, v));
    }
    let v = li_wp(j, &x, wp)?;
    Ok(Float::with_val(out, v))
}

fn li_wp(j: u32, x: &Real, wp: u32) -> Result<Real> {
    if *x == 1 {
        return zeta_int(j, wp);
    }
    if *x < -0.5 {
        // Li_j(x) = 2^{1-j} Li_j(x^2) - Li_j(-x)
        let x2 = Float::with_val(wp, x.square_ref());
        let a = li_wp(j, &x2, wp)? >> (j - 1);
        let b = li_wp(j, &Float::with_val(wp, -x), wp)?;
        return Ok(a - b);
    }
    if *x > 0.75 {
        let y = Float::with_val(wp, 1 - x);
        return reflection_wp(j, &y, wp);
    }
    Ok(li_series(j, x, wp))
}

fn reflection_wp(j: u32, x: &Real, wp: u32) -> Result<Real> {
    let log1mx = Float::with_val(wp, Float::with_val(wp, -x).ln_1p());
    let mut sum = Float::with_val(wp, 0);
    let mut pw = Float::with_val(wp, 1);
    for r in 0..j {
        let p = j - r - 1;
        let mut c = nielsen_wp(1, p, x, wp)?;
        c = -c;
        if j - r >= 2 {
            c += zeta_int(j - r, wp)?;
        }
        sum += c * &pw / Float::with_val(wp, factorial(r));
        pw *= &log1mx;
    }
    Ok(sum)
}

/// `Li_j(1-x)` through `sum_{r<j} (zeta(j-r) - S_{1,j-r-1}(x)) log^r(1-x)/r!`,
/// the `zeta(1)` term dropped.
pub fn li_reflection(j: u32, x: &Real, digits: u32) -> Result<Real> {
    if j < 2 {
        return domain("li_reflection requires j >= 2");
    }
    if !(*x > 0 && *x < 1) {
        return domain("li_reflection requires 0 < x < 1");
    }
    let wp = guard(digits);
    let v = reflection_wp(j, &Float::with_val(wp, x), wp)?;
    Ok(Float::with_val(bits_for(digits), v))
}

/// Nielsen integral `S_{k,p}(x) = sum_{n>=1} S_{p-1,1,n-1} x^n / n^{k+1}`.
///
/// `S_{1,0}(x) = log x`. Near `|x| = 1` the integral representation is used.
pub fn nielsen(k: u32, p: u32, x: &Real, digits: u32) -> Result<Real> {
    if k == 0 {
        return domain("nielsen requires k >= 1");
    }
    let wp = guard(digits);
    let v = nielsen_wp(k, p, &Float::with_val(wp, x), wp)?;
    Ok(Float::with_val(bits_for(digits), v))
}

fn nielsen_wp(k: u32, p: u32, x: &Real, wp: u32) -> Result<Real> {
    if p == 0 {
        if k == 1 && *x > 0 {
            return Ok(Float::with_val(wp, x.ln_ref()));
        }
        return domain("S_{k,0} is only defined as S_{1,0}(x) = log x for x > 0");
    }
    if x.is_nan() || x.clone().abs() > 1 {
        return domain("nielsen requires |x| <= 1");
    }
    if x.is_zero() {
        return Ok(Float::with_val(wp, 0));
    }
    if x.clone().abs() <= 0.5 {
        let c = move |n: u64| {
            let s = srst(p as i64 - 1, 1, n as i64 - 1);
            from_rational(wp, &s) / Float::with_val(wp, n).pow(k + 1)
        };
        return Ok(power_series(x, wp, c));
    }
    // (-1)^{k+p-1}/((k-1)! p!) int_0^1 log^{k-1}(y) log^p(1-xy) dy/y
    let qp = wp + 16;
    let xx = Float::with_val(qp, x);
    let one_minus_x = Float::with_val(qp, 1 - &xx);
    let zero = Float::with_val(qp, 0);
    let one = Float::with_val(qp, 1);
    let integral = tanh_sinh(&zero, &one, qp, |node| {
        if node.from_a.is_zero() || node.from_b.is_zero() {
            return Float::with_val(qp, 0);
        }
        let y = node.from_a;
        let arg = Float::with_val(qp, &xx * node.from_b) + &one_minus_x;
        let lg = Float::with_val(qp, arg.ln_ref());
        let ly = if *y < 0.5 {
            Float::with_val(qp, y.ln_ref())
        } else {
            Float::with_val(qp, -node.from_b).ln_1p()
        };
        Float::with_val(qp, (&ly).pow(k as i32 - 1)) * lg.pow(p) / y
    })?;
    let norm = Float::with_val(qp, factorial(k - 1) * factorial(p));
    let sign = if (k + p - 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(Float::with_val(wp, integral / norm * sign))
}
