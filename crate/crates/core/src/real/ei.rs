use rug::Float;

use super::gamma::legendre_cf;
use super::{euler_gamma, exponent, Real};
use crate::error::{domain, Result};

/// `gamma + log|x| + sum_{k>=1} x^k/(k k!)` at `wp` bits, together with the
/// number of bits lost to cancellation.
fn ei_series(x: &Real, wp: u32) -> (Real, i32) {
    let x = Float::with_val(wp, x);
    let mut head = euler_gamma(wp);
    head += Float::with_val(wp, x.abs_ref()).ln();
    let mut term = Float::with_val(wp, 1);
    let mut sum = Float::with_val(wp, 0);
    let mut biggest = exponent(&head);
    let mut k = 1u64;
    loop {
        term *= &x;
        term /= k;
        let t = Float::with_val(wp, &term / k);
        sum += &t;
        biggest = biggest.max(exponent(&t));
        if k > 4 && exponent(&t) < exponent(&sum) - wp as i32 - 4 {
            break;
        }
        k += 1;
    }
    let out = head + sum;
    let lost = biggest - exponent(&out);
    (out, lost.max(0))
}

/// Exponential integral `Ei(x) = -PV int_{-x}^inf e^{-t}/t dt`, `x != 0`.
pub fn exp_integral_ei(x: &Real) -> Result<Real> {
    if x.is_zero() || !x.is_finite() {
        return domain("Ei(x) requires finite x != 0");
    }
    let prec = x.prec();
    if x.is_sign_negative() {
        let y = Float::with_val(prec, -x);
        return Ok(-e1_core(&y, prec));
    }
    let bits = prec as f64 * std::f64::consts::LN_2;
    if x.to_f64() > bits + 40.0 {
        return Ok(ei_asymptotic(x, prec));
    }
    let mut extra = 64u32;
    loop {
        let (v, lost) = ei_series(x, prec + extra);
        if (lost as u32) + 16 < extra {
            return Ok(Float::with_val(prec, v));
        }
        extra = 2 * extra + lost as u32;
    }
}

// e^x/x sum k!/x^k, usable once x exceeds the working precision in nats
fn ei_asymptotic(x: &Real, prec: u32) -> Real {
    let wp = prec + 32;
    let x = Float::with_val(wp, x);
    let mut term = Float::with_val(wp, 1);
    let mut sum = Float::with_val(wp, 1);
    let mut k = 1u64;
    loop {
        let next = Float::with_val(wp, &term * k) / &x;
        if next.clone().abs() >= term.clone().abs() || exponent(&next) < -(wp as i32) - 2 {
            break;
        }
        term = next;
        sum += &term;
        k += 1;
    }
    let e = Float::with_val(wp, x.exp_ref());
    Float::with_val(prec, e * sum / x)
}

/// `E_1(y) = int_y^inf e^{-t}/t dt` for `y > 0`.
pub fn exp_integral_e1(y: &Real) -> Result<Real> {
    if !y.is_finite() || *y <= 0 {
        return domain("E1(y) requires y > 0");
    }
    Ok(e1_core(y, y.prec()))
}

pub(crate) fn e1_core(y: &Real, prec: u32) -> Real {
    let yf = y.to_f64();
    if yf >= 2.0 {
        let wp = prec + 32;
        let z = Float::with_val(wp, 0);
        return Float::with_val(prec, legendre_cf(&z, &Float::with_val(wp, y), wp));
    }
    let extra = 64 + (3.0 * yf).ceil() as u32;
    let neg = Float::with_val(prec + extra, -y);
    let (v, _) = ei_series(&neg, prec + extra);
    Float::with_val(prec, -v)
}

/// Logarithmic integral `li(x) = Ei(log x)` for `x > 1`.
pub fn log_integral(x: &Real) -> Result<Real> {
    if !x.is_finite() || *x <= 1 {
        return domain("li(x) requires x > 1");
    }
    let prec = x.prec();
    let l = Float::with_val(prec + 16, x.ln_ref());
    exp_integral_ei(&l).map(|v| Float::with_val(prec, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn values() {
        let one = Float::with_val(128, 1);
        assert!(close(&exp_integral_ei(&one).unwrap(), 1.8951178163559368, 1e-15));
        assert!(close(&exp_integral_ei(&(-one.clone())).unwrap(), -0.21938393439552029, 1e-15));
        assert!(close(&exp_integral_ei(&Float::with_val(128, -5)).unwrap(), -0.0011482955912753257, 1e-17));
        assert!(close(&exp_integral_ei(&Float::with_val(128, 30)).unwrap(), 368973209407.2742, 1e-3));
        assert!(exp_integral_ei(&Float::with_val(64, 0)).is_err());
        let two = Float::with_val(128, 2);
        assert!(close(&log_integral(&two).unwrap(), 1.045_163_780_117_493, 1e-15));
        assert!(log_integral(&one).is_err());
    }

    #[test]
    fn near_root() {
        let root = Float::with_val(200, 0.3725074107813666);
        let v = exp_integral_ei(&root).unwrap();
        assert!(v.clone().abs() < 1e-15);
        let a = exp_integral_ei(&Float::with_val(200, 0.372)).unwrap();
        let b = exp_integral_ei(&Float::with_val(200, 0.373)).unwrap();
        assert!(a < 0 && b > 0);
    }

    #[test]
    fn large_argument_switch() {
        // both sides of the asymptotic switch at 64-bit precision
        let p = 64;
        for x in [80.0, 90.0] {
            let v = exp_integral_ei(&Float::with_val(p, x)).unwrap();
            let w = exp_integral_ei(&Float::with_val(p + 200, x)).unwrap();
            let rel = Float::with_val(p + 200, &v - &w) / &w;
            assert!(rel.abs() < 1e-17, "x={x}");
        }
    }
}
