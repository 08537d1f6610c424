use rug::Float;

use super::{exponent, pi, Real};
use crate::error::{Error, Result};

/// A quadrature node: the abscissa and its distances to both endpoints.
///
/// Near an endpoint the distance carries more relative accuracy than the
/// abscissa itself, which matters for endpoint singularities.
pub struct QuadNode<'a> {
    pub x: &'a Real,
    pub from_a: &'a Real,
    pub from_b: &'a Real,
}

const MAX_LEVEL: u32 = 14;

/// Tanh-sinh (double exponential) quadrature of `f` over `[a, b]` at `prec`
/// bits, refined by halving the step until successive estimates agree.
pub fn tanh_sinh<F>(a: &Real, b: &Real, prec: u32, f: F) -> Result<Real>
where
    F: Fn(&QuadNode) -> Real,
{
    let wp = prec + 32;
    let a = Float::with_val(wp, a);
    let b = Float::with_val(wp, b);
    let half = Float::with_val(wp, &b - &a) / 2u32;
    let half_pi = pi(wp) / 2u32;
    let v_max = wp as f64 * std::f64::consts::LN_2 / 2.0 + 20.0;
    let u_max = (2.0 * v_max / std::f64::consts::PI).asinh();

    // sum of w f over nodes u = k h with k in `ks`, both signs
    let eval = |h: &Real, ks: &mut dyn Iterator<Item = u64>| -> (Real, Real) {
        let mut sum = Float::with_val(wp, 0);
        let mut l1 = Float::with_val(wp, 0);
        for k in ks {
            let u = Float::with_val(wp, h * k);
            if u.to_f64() > u_max {
                break;
            }
            let eu = Float::with_val(wp, u.exp_ref());
            let emu = Float::with_val(wp, eu.recip_ref());
            let sinh = Float::with_val(wp, &eu - &emu) / 2u32;
            let cosh = Float::with_val(wp, &eu + &emu) / 2u32;
            let v = Float::with_val(wp, &half_pi * &sinh);
            let e2v = Float::with_val(wp, -Float::with_val(wp, &v * 2u32)).exp();
            // 1 - tanh v = 2 e^{-2v} / (1 + e^{-2v}), 1 + tanh v = 2 / (1 + e^{-2v})
            let denom = Float::with_val(wp, &e2v + 1u32);
            let near = Float::with_val(wp, &e2v * 2u32) / &denom * &half;
            let far = Float::with_val(wp, 2u32 / &denom) * &half;
            let coshv = Float::with_val(wp, v.cosh_ref());
            let w = Float::with_val(wp, &half_pi * &cosh) / Float::with_val(wp, coshv.square_ref());
            let xr = Float::with_val(wp, &b - &near);
            let fr = f(&QuadNode {
                x: &xr,
                from_a: &far,
                from_b: &near,
            });
            let mut acc = fr;
            if k != 0 {
                let xl = Float::with_val(wp, &a + &near);
                let fl = f(&QuadNode {
                    x: &xl,
                    from_a: &near,
                    from_b: &far,
                });
                l1 += Float::with_val(wp, acc.abs_ref()) * &w;
                l1 += Float::with_val(wp, fl.abs_ref()) * &w;
                acc += fl;
            } else {
                l1 += Float::with_val(wp, acc.abs_ref()) * &w;
            }
            sum += acc * w;
        }
        (sum, l1)
    };

    let mut h = Float::with_val(wp, 1);
    let (mut raw, mut l1) = eval(&h, &mut (0u64..));
    let mut est = Float::with_val(wp, &raw * &h) * &half;
    for level in 1..=MAX_LEVEL {
        h /= 2u32;
        let (add, add_l1) = eval(&h, &mut (0u64..).map(|k| 2 * k + 1));
        raw += add;
        l1 += add_l1;
        let next = Float::with_val(wp, &raw * &h) * &half;
        let diff = Float::with_val(wp, &next - &est);
        let scale = Float::with_val(wp, &l1 * &h) * Float::with_val(wp, half.abs_ref());
        est = next;
        if level >= 3 && (diff.is_zero() || exponent(&diff) < exponent(&scale) - prec as i32 / 2 - 8) {
            return Ok(Float::with_val(prec, est));
        }
    }
    Err(Error::Convergence(format!(
        "tanh-sinh quadrature did not settle within {MAX_LEVEL} levels"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_singular() {
        let p = 200;
        let zero = Float::with_val(p, 0);
        let one = Float::with_val(p, 1);
        let v = tanh_sinh(&zero, &one, p, |n| Float::with_val(p, n.x.square_ref())).unwrap();
        let third = Float::with_val(p, 1) / 3u32;
        assert!(Float::with_val(p, &v - &third).abs() < 1e-55);
        // int_0^1 log(1 - y)/y dy = -zeta(2)
        let v = tanh_sinh(&zero, &one, p, |n| {
            let l = Float::with_val(p, n.from_b.ln_ref());
            l / n.x
        })
        .unwrap();
        let z2 = Float::with_val(p, 2u32).zeta();
        assert!(Float::with_val(p, &v + &z2).abs() < 1e-55);
    }
}
