use rug::Float;

use super::ei::e1_core;
use super::{exponent, Real};
use crate::error::{domain, Result};

/// Legendre continued fraction for `Gamma(z, x)`, modified Lentz iteration.
/// Converges for `x > 0`; fast once `x >= max(1, |z|)`.
pub(crate) fn legendre_cf(z: &Real, x: &Real, wp: u32) -> Real {
    let tiny = Float::with_val(wp, Float::i_exp(1, -(wp as i32) * 4));
    let eps_exp = -(wp as i32) + 3;
    let b = |j: u64| Float::with_val(wp, x + (2 * j - 1)) - z;
    let a = |j: u64| {
        let jm = j - 1;
        -(Float::with_val(wp, jm) * Float::with_val(wp, Float::with_val(wp, jm) - z))
    };
    let mut f = b(1);
    if f.is_zero() {
        f = tiny.clone();
    }
    let mut c = f.clone();
    let mut d = Float::with_val(wp, 0);
    let mut j = 2u64;
    loop {
        let aj = a(j);
        let bj = b(j);
        d = Float::with_val(wp, &aj * &d) + &bj;
        if d.is_zero() {
            d = tiny.clone();
        }
        c = Float::with_val(wp, &aj / &c) + &bj;
        if c.is_zero() {
            c = tiny.clone();
        }
        d.recip_mut();
        let delta = Float::with_val(wp, &c * &d);
        f *= &delta;
        let dev = delta - 1u32;
        if exponent(&dev) < eps_exp || j > 2_000_000 {
            break;
        }
        j += 1;
    }
    // e^{-x} x^z / f
    let mut lx = Float::with_val(wp, x.ln_ref());
    lx *= z;
    lx -= x;
    lx.exp_mut();
    lx / f
}

/// Lower incomplete gamma `gamma(a, x)` for `a > 0` by its power series,
/// plus the magnitude of its largest partial term.
fn lower_series(a: &Real, x: &Real, wp: u32) -> Real {
    let mut term = Float::with_val(wp, a.recip_ref());
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term *= x;
        term /= Float::with_val(wp, a + k);
        sum += &term;
        if exponent(&term) < exponent(&sum) - wp as i32 - 4 && k > 2 {
            break;
        }
        k += 1;
    }
    let mut pre = Float::with_val(wp, x.ln_ref());
    pre *= a;
    pre -= x;
    pre.exp_mut();
    pre * sum
}

/// Upper incomplete gamma `Gamma(z, x) = int_x^inf t^{z-1} e^{-t} dt`, `x > 0`.
///
/// Uses the continued fraction when `x >= max(1, |z|)`, otherwise the
/// series `Gamma(a) - gamma(a, x)` with `a` in `(0, 1]` shifted down to
/// `z` by `Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s`.
pub fn upper_incomplete_gamma(z: &Real, x: &Real) -> Result<Real> {
    if !x.is_finite() || *x <= 0 {
        return domain("upper incomplete gamma requires x > 0");
    }
    if !z.is_finite() {
        return domain("upper incomplete gamma requires finite z");
    }
    let prec = z.prec().max(x.prec());
    let zf = z.to_f64();
    let xf = x.to_f64();
    if xf >= 1.0f64.max(zf.abs()) {
        let wp = prec + 64;
        let v = legendre_cf(&Float::with_val(wp, z), &Float::with_val(wp, x), wp);
        return Ok(Float::with_val(prec, v));
    }
    let mut extra = 64u32;
    loop {
        let (v, lost) = series_route(z, x, prec + extra);
        if lost + 16 < extra as i32 {
            return Ok(Float::with_val(prec, v));
        }
        extra = 2 * extra + lost.max(0) as u32;
    }
}

// returns the value and the worst cancellation (in bits) seen on the way
fn series_route(z: &Real, x: &Real, wp: u32) -> (Real, i32) {
    let z = Float::with_val(wp, z);
    let x = Float::with_val(wp, x);
    let zf = z.to_f64();
    let mut lost = 0i32;
    let from_series = |a: &Real, lost: &mut i32| {
        let g = Float::with_val(wp, a.gamma_ref());
        let low = lower_series(a, &x, wp);
        let v = Float::with_val(wp, &g - &low);
        *lost = (*lost).max(exponent(&g).max(exponent(&low)) - exponent(&v));
        v
    };
    if zf > 0.0 {
        let v = from_series(&z, &mut lost);
        return (v, lost);
    }
    let (mut s, mut val) = if zf.fract() == 0.0 {
        (Float::with_val(wp, 0), e1_core(&x, wp))
    } else {
        let m = (-zf).floor() as i64 + 1;
        let a = Float::with_val(wp, &z + m);
        let v = from_series(&a, &mut lost);
        (a, v)
    };
    while Float::with_val(wp, &s - &z).to_f64() > 0.5 {
        let s1 = Float::with_val(wp, &s - 1u32);
        let mut p = Float::with_val(wp, x.ln_ref());
        p *= &s1;
        p -= &x;
        p.exp_mut();
        let num = Float::with_val(wp, &val - &p);
        lost = lost.max(exponent(&val).max(exponent(&p)) - exponent(&num));
        val = num / &s1;
        s = s1;
    }
    (val, lost)
}
