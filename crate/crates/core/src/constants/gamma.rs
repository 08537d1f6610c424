use std::sync::RwLock;

use rug::float::Constant;
use rug::Float;

use crate::accel::{asympk_transform, Sequence};
use crate::real::Real;

static CACHE: RwLock<Option<Real>> = RwLock::new(None);

/// Euler's constant from `asymp_k` applied to `H_n - log n`, cached at the
/// highest precision requested so far.
pub fn euler_gamma(prec: u32) -> Real {
    if let Some(g) = CACHE.read().expect("gamma cache").as_ref() {
        if g.prec() >= prec {
            return Float::with_val(prec, g);
        }
    }
    let g = gamma_by_acceleration(prec + 16);
    let mut slot = CACHE.write().expect("gamma cache");
    let keep = match slot.as_ref() {
        Some(old) if old.prec() >= g.prec() => old.clone(),
        _ => g,
    };
    *slot = Some(keep.clone());
    Float::with_val(prec, keep)
}

/// Parameters `(k, n0, working bits)` for a target of `prec` bits.
pub(crate) fn gamma_plan(prec: u32) -> (u32, i64, u32) {
    let digits = prec as f64 / std::f64::consts::LOG2_10;
    let k = ((digits + 3.0) / 1.5).ceil().max(4.0) as u32;
    let n0 = 2 * k as i64;
    let extra = (1.21 * k as f64 + 20.0) * std::f64::consts::LOG2_10;
    (k, n0, prec + extra.ceil() as u32)
}

pub(crate) fn gamma_by_acceleration(prec: u32) -> Real {
    let (k, n0, wp) = gamma_plan(prec);
    let mut h = Float::with_val(wp, 0);
    for i in 1..n0 {
        h += Float::with_val(wp, i).recip();
    }
    let mut values = Vec::with_capacity(k as usize + 1);
    for n in n0..=n0 + k as i64 {
        h += Float::with_val(wp, n).recip();
        let ln = Float::with_val(wp, n).ln();
        values.push(Float::with_val(wp, &h - ln));
    }
    let seq = Sequence::new(n0, values).expect("k >= 4 gives enough terms");
    let t = asympk_transform(&seq, k).expect("length k + 1");
    Float::with_val(prec, t.last())
}

/// MPFR's own value, for comparison only.
pub fn euler_gamma_reference(prec: u32) -> Real {
    Float::with_val(prec, Constant::Euler)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference() {
        for digits in [10u32, 30, 60, 100, 150] {
            let prec = crate::real::bits_for(digits);
            let ours = gamma_by_acceleration(prec);
            let theirs = euler_gamma_reference(prec);
            let d = crate::real::agreeing_digits(&theirs, &ours);
            assert!(d > (digits + 10) as f64, "digits {digits}: agree {d}");
        }
    }
}
