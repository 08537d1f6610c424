use rug::ops::Pow;
use rug::Float;

use super::Family;
use crate::budget::check_direct;
use crate::error::{domain, Result};
use crate::real::{Precision, Real};

const LEAF: u64 = 256;

/// Sum of `term(k)` over `lo..hi` by a fixed pairwise tree, so the result
/// does not depend on how the halves are scheduled.
fn pairwise<F>(lo: u64, hi: u64, prec: u32, term: &F) -> Real
where
    F: Fn(u64) -> Real + Sync,
{
    if hi - lo <= LEAF {
        let mut acc = Float::with_val(prec, 0);
        for k in lo..hi {
            acc += term(k);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    let (a, b) = rayon::join(|| pairwise(lo, mid, prec, term), || pairwise(mid, hi, prec, term));
    a + b
}

/// The defining finite sum of a family, computed term by term.
///
/// The working precision is `digits` decimal digits plus guard bits sized
/// for `n` terms; the result carries that precision.
pub fn direct_sum(family: Family, p: u32, q: u32, n: u64, digits: u32) -> Result<Real> {
    check_direct(n, digits)?;
    match family {
        Family::S1 | Family::S2 if n < 1 => return domain("direct sum needs n >= 1"),
        Family::S1 if q < 1 => return domain("S1 requires q >= 1"),
        Family::S3 | Family::S4 if n < 3 => return domain("S3 and S4 direct sums need n >= 3"),
        Family::S3 if p < 1 || q < 1 => return domain("S3 requires p >= 1 and q >= 1"),
        Family::S4 if p < 1 => return domain("S4 requires p >= 1"),
        _ => {}
    }
    let prec = Precision::with_terms(digits, n).bits();
    let (pi, qi) = (p as i32, q as i32);
    let lnp = |k: u64| -> Real {
        let l = Float::with_val(prec, k).ln();
        l.pow(pi)
    };
    let v = match family {
        Family::S1 => pairwise(1, n + 1, prec, &|k| lnp(k) / Float::with_val(prec, k).pow(qi)),
        Family::S2 => pairwise(1, n + 1, prec, &|k| lnp(k) * Float::with_val(prec, k).pow(qi)),
        Family::S3 => pairwise(1, n, prec, &|k| lnp(k) / Float::with_val(prec, n - k).pow(qi)),
        Family::S4 => pairwise(2, n, prec, &|k| {
            let d = lnp(k) * Float::with_val(prec, k).pow(qi);
            d.recip()
        }),
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        let v = direct_sum(Family::S1, 0, 1, 4, 30).unwrap();
        let h4 = Float::with_val(v.prec(), 25) / 12u32;
        assert!(Float::with_val(v.prec(), &v - &h4).abs() < 1e-40);
        let v = direct_sum(Family::S3, 1, 1, 3, 30).unwrap();
        let l2 = Float::with_val(v.prec(), 2u32).ln();
        assert!(Float::with_val(v.prec(), &v - &l2).abs() < 1e-40);
        assert!(direct_sum(Family::S4, 1, 1, 2, 30).is_err());
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(
            direct_sum(Family::S1, 1, 2, 10_000_000, 50),
            Err(crate::Error::Budget(_))
        ));
    }

    #[test]
    fn deterministic() {
        let a = direct_sum(Family::S2, 2, 1, 3000, 40).unwrap();
        let b = direct_sum(Family::S2, 2, 1, 3000, 40).unwrap();
        assert_eq!(a.to_string_radix(16, None), b.to_string_radix(16, None));
    }
}
