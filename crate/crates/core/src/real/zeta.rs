use rug::Float;

use super::{from_rational, Real};
use crate::error::{domain, Result};
use crate::exact::{bernoulli_number, factorial};

/// Riemann zeta at real `s > 1` by Euler-Maclaurin from a cut `N`.
pub fn zeta_real(s: &Real) -> Result<Real> {
    if !s.is_finite() || *s <= 1 {
        return domain("zeta_real requires s > 1");
    }
    let prec = s.prec();
    let digits = (prec as f64 / std::f64::consts::LOG2_10) as u32 + 4;
    let nn = (digits as f64 / 1.8).ceil() as u64 + 10;
    let m = nn;
    let wp = prec + 32 + 2 * (64 - nn.leading_zeros());
    let s = Float::with_val(wp, s);
    let mut sum = Float::with_val(wp, 0);
    for k in 1..nn {
        let lk = Float::with_val(wp, k).ln();
        sum += Float::with_val(wp, -Float::with_val(wp, &lk * &s)).exp();
    }
    let ln_n = Float::with_val(wp, nn).ln();
    let n_pow = Float::with_val(wp, -Float::with_val(wp, &ln_n * &s)).exp(); // N^{-s}
    let nf = Float::with_val(wp, nn);
    let sm1 = Float::with_val(wp, &s - 1u32);
    // N^{1-s}/(s-1) + N^{-s}/2
    sum += Float::with_val(wp, &n_pow * &nf) / &sm1;
    sum += Float::with_val(wp, &n_pow / 2u32);
    // + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
    let mut rising = s.clone();
    let mut npow = Float::with_val(wp, &n_pow / &nf);
    let n2 = Float::with_val(wp, nf.square_ref());
    for j in 1..=m {
        if j > 1 {
            rising *= Float::with_val(wp, &s + (2 * j - 3));
            rising *= Float::with_val(wp, &s + (2 * j - 2));
            npow /= &n2;
        }
        let c = from_rational(wp, &(bernoulli_number(2 * j as usize) / factorial(2 * j as u32)));
        sum += c * &rising * &npow;
    }
    Ok(Float::with_val(prec, sum))
}

/// `zeta(s)` for an integer `s >= 2` at `prec` bits.
pub fn zeta_int(s: u32, prec: u32) -> Result<Real> {
    if s < 2 {
        return domain("zeta_int requires s >= 2");
    }
    zeta_real(&Float::with_val(prec, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn against_mpfr() {
        for s in [2u32, 3, 5, 10, 40] {
            let p = 300;
            let ours = zeta_int(s, p).unwrap();
            let theirs = Float::with_val(p, s).zeta();
            let rel = Float::with_val(p, &ours - &theirs) / &theirs;
            assert!(rel.abs() < 1e-85, "s={s}");
        }
        let s = Float::with_val(200, 1.25);
        let ours = zeta_real(&s).unwrap();
        let theirs = Float::with_val(200, s.zeta_ref());
        assert!(Float::with_val(200, &ours - &theirs).abs() < 1e-55);
        assert!(zeta_int(1, 64).is_err());
    }
}
