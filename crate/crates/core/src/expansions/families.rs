use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{AsymptoticExpansion, ConstExpr, ExpansionTerm, Family, Special, Symbol};
use crate::error::{domain, Result};
use crate::exact::{bernoulli_number, binomial, factorial, falling, srst};

fn q_int(v: impl Into<Integer>) -> Rational {
    Rational::from(v.into())
}

fn ratio(a: impl Into<Integer>, b: impl Into<Integer>) -> Rational {
    Rational::from((a.into(), b.into()))
}

fn bern(n: u32) -> Rational {
    bernoulli_number(n as usize)
}

fn fact(n: u32) -> Integer {
    factorial(n)
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::from(1)
    } else {
        Rational::from(-1)
    }
}

fn s(r: i64, s_: u32, t: i64) -> Rational {
    srst(r, s_, t)
}

fn ceil_half(q: u32) -> u32 {
    q.div_ceil(2)
}

type Block = Vec<(ConstExpr, i64, i64)>;

fn rat(q: Rational) -> ConstExpr {
    ConstExpr::rational(q)
}

/// Expansion of `sum_{k=1}^n (log k)^p / k^q` to Euler-Maclaurin order `m`.
pub fn expand_s1(p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    if q < 1 {
        return domain("S1 requires q >= 1");
    }
    if m < 1 {
        return domain("expansion order m must be >= 1");
    }
    let mut e = AsymptoticExpansion::new(Family::S1, p, q, m);
    let (p_, q_) = (p as i64, q as i64);
    if q == 1 {
        e.push(rat(ratio(1, p + 1)), 0, p_ + 1);
        e.constant = ConstExpr::symbol(Symbol::Stieltjes(p));
        e.push(rat(ratio(1, 2)), -1, p_);
    } else {
        e.constant = ConstExpr::term(Symbol::ZetaDeriv { p, a: q_ }, sign(p_));
        for r in 0..=p {
            let c = ratio(falling(p, r), Integer::from(q - 1).pow(r + 1));
            e.push(rat(-c), 1 - q_, (p - r) as i64);
        }
        e.push(rat(ratio(1, 2)), -q_, p_);
    }
    for k in 1..=m {
        for (c, np, lp) in s1_block(p, q, k) {
            e.push(c, np, lp);
        }
    }
    e.error_n_power = if q == 1 { -(2 * m as i64 + 2) } else { -(q_ + 2 * m as i64 + 1) };
    e.error_log_power = p_;
    Ok(e.finish())
}

fn s1_block(p: u32, q: u32, k: u32) -> Block {
    let mut out = Vec::new();
    let b = bern(2 * k);
    for r in 0..=p {
        let d = if q == 1 {
            Rational::from(&b / (2 * k)) * sign(r as i64) * q_int(falling(p, r)) * s(r as i64, 1, 2 * k as i64 - 1)
        } else {
            let f = ratio(fact(2 * k + q - 2), fact(2 * k) * fact(q - 1));
            Rational::from(&b * &f)
                * sign(r as i64)
                * q_int(falling(p, r))
                * s(r as i64, q, (2 * k + q - 2) as i64)
        };
        let np = if q == 1 { -2 * k as i64 } else { -((q + 2 * k - 1) as i64) };
        out.push((rat(-d), np, (p - r) as i64));
    }
    out
}

/// Expansion of `sum_{k=1}^n k^q (log k)^p`.
///
/// The `(k = ceil(q/2), r = p)` entry of the positive-power block is a
/// constant already contained in the constant slot when `q` is odd, and is
/// never generated.
pub fn expand_s2(p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    if p == 0 && q == 0 {
        return domain("S2 requires p + q >= 1");
    }
    if m < 1 {
        return domain("expansion order m must be >= 1");
    }
    if p == 0 {
        return domain("S2 with p = 0 is a power sum; constants for it are rational (use zeta-deriv with p = 0)");
    }
    let mut e = AsymptoticExpansion::new(Family::S2, p, q, m);
    let (p_, q_) = (p as i64, q as i64);
    for r in 0..=p {
        let c = sign(r as i64) * ratio(falling(p, r), Integer::from(q + 1).pow(r + 1));
        e.push(rat(c), q_ + 1, (p - r) as i64);
    }
    e.push(rat(ratio(1, 2)), q_, p_);
    let kc = ceil_half(q);
    for k in 1..=kc {
        let b = (bern(2 * k) / fact(2 * k)) * ratio(fact(q), fact(q + 1 - 2 * k));
        for r in 0..=p {
            if q % 2 == 1 && k == kc && r == p {
                continue;
            }
            let c = Rational::from(&b * falling(p, r)) * s(r as i64, q + 2 - 2 * k, q as i64);
            e.push(rat(c), q_ + 1 - 2 * k as i64, (p - r) as i64);
        }
    }
    let mut constant = ConstExpr::term(Symbol::ZetaDeriv { p, a: -q_ }, sign(p_));
    constant.add_term(
        Symbol::One,
        (bern(q + 1) / (q + 1)) * q_int(fact(p)) * s(p_, 1, q_),
    );
    e.constant = constant;
    let m_eff = m.max(kc);
    for k in kc + 1..=m_eff {
        for (c, np, lp) in s2_tail(p, q, k) {
            e.push(c, np, lp);
        }
    }
    e.m = m_eff;
    e.error_n_power = q_ - 2 * m_eff as i64 - 1;
    e.error_log_power = p_ - 1;
    Ok(e.finish())
}

fn s2_tail(p: u32, q: u32, k: u32) -> Block {
    let mut prod = Integer::from(1);
    for i in (2 * k - q - 1)..=(2 * k) {
        prod *= i;
    }
    let base = bern(2 * k) * fact(p) * fact(q) / prod;
    let mut out = Vec::new();
    for r in 1..=p {
        let mut sum = Rational::new();
        for j in 0..=q {
            sum += sign(j as i64)
                * s(j as i64, 1, q as i64)
                * s(r as i64 - j as i64 - 1, 1, (2 * k - q - 2) as i64);
        }
        let d = Rational::from(&base / fact(p - r)) * sign((r + q + 1) as i64) * sum;
        out.push((rat(d), -((2 * k - q - 1) as i64), (p - r) as i64));
    }
    out
}

/// Expansion of `sum_{k=1}^{n-1} (log k)^p / (n-k)^q`.
///
/// For `q >= 2` the coefficients of the `n^{-(q-1)}` block come from
/// [`d_block_s3`](super::d_block_s3), which fits them against direct sums on
/// first use and caches the result.
pub fn expand_s3(p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    if p < 1 || q < 1 {
        return domain("S3 requires p >= 1 and q >= 1");
    }
    if m < 1 {
        return domain("expansion order m must be >= 1");
    }
    let mut e = expand_s3_known(p, q, m)?;
    if q >= 2 {
        let d = super::d_block_s3(p, q)?;
        let inv = ratio(1, q - 1);
        for (r, c) in d.iter().enumerate() {
            e.push(c.scaled(&inv), 1 - q as i64, (p as i64) - r as i64);
        }
    }
    Ok(e.finish())
}

/// Everything in the S3 expansion except the fitted `n^{-(q-1)}` block.
pub(crate) fn expand_s3_known(p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    let mut e = AsymptoticExpansion::new(Family::S3, p, q, m);
    let p_ = p as i64;
    if q == 1 {
        e.push(rat(Rational::from(1)), 0, p_ + 1);
        e.push(ConstExpr::symbol(Symbol::Gamma), 0, p_);
        for r in 1..=p {
            let c = sign(r as i64) * q_int(falling(p, r));
            e.push(ConstExpr::term(Symbol::Zeta(r + 1), c), 0, (p - r) as i64);
        }
        e.error_n_power = -(m as i64 + 1);
    } else {
        e.push(ConstExpr::symbol(Symbol::Zeta(q)), 0, p_);
        for i in 1..=q - 2 {
            for r in 1..=i.min(p) {
                let c = sign(r as i64) * q_int(falling(p, r)) * s(r as i64 - 1, 1, i as i64 - 1) / i;
                e.push(ConstExpr::term(Symbol::Zeta(q - i), c), -(i as i64), (p - r) as i64);
            }
        }
        e.error_n_power = -(m as i64 + q as i64);
    }
    for k in 1..=m {
        for (c, np, lp) in s3_tail(p, q, k) {
            e.push(c, np, lp);
        }
    }
    e.error_log_power = p_ - 1;
    Ok(e)
}

fn s3_tail(p: u32, q: u32, k: u32) -> Block {
    let mut out = Vec::new();
    let bk = bern(k);
    let np = -((k + q - 1) as i64);
    let lead = (&bk * sign(k as i64)) / (k * (k + q - 1));
    for r in 1..=p {
        let c = (&lead * sign(r as i64))
            * q_int(falling(p, r))
            * s(r as i64 - 1, 1, (k + q - 2) as i64);
        out.push((rat(-c), np, (p - r) as i64));
    }
    let bin = q_int(binomial((k + q - 2) as i64, (q - 1) as i64));
    out.push((
        ConstExpr::term(Symbol::ZetaDeriv { p, a: 1 - k as i64 }, sign(p as i64) * bin),
        np,
        0,
    ));
    out
}

/// Expansion of `sum_{k=2}^{n-1} 1 / (k^q (log k)^p)`.
///
/// The `li(n)` / `Ei((1-q) log n)` term and its finite prefix are kept as
/// separate terms.
pub fn expand_s4(p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    if p < 1 {
        return domain("S4 requires p >= 1");
    }
    if m < 1 {
        return domain("expansion order m must be >= 1");
    }
    let mut e = AsymptoticExpansion::new(Family::S4, p, q, m);
    let (p_, q_) = (p as i64, q as i64);
    e.constant = ConstExpr::symbol(Symbol::Cpq { p, q });
    match q {
        0 => {
            e.push_special(rat(ratio(1, fact(p - 1))), Special::Li);
            for r in 1..p {
                e.push(rat(-ratio(fact(r - 1), fact(p - 1))), 1, -(r as i64));
            }
            e.push(rat(ratio(-1, 2)), 0, -p_);
            e.error_n_power = -(2 * m as i64 + 1);
            e.error_log_power = -(p_ + 1);
        }
        1 => {
            if p == 1 {
                e.push_special(rat(Rational::from(1)), Special::LogLog);
            } else {
                e.push(rat(ratio(-1, p - 1)), 0, -(p_ - 1));
            }
            e.push(rat(ratio(-1, 2)), -1, -p_);
            e.error_n_power = -(2 * m as i64 + 2);
            e.error_log_power = -p_;
        }
        _ => {
            let one_minus_q = Integer::from(1 - q_);
            e.push_special(
                rat(ratio(one_minus_q.clone().pow(p - 1), fact(p - 1))),
                Special::Ei { scale: 1 - q_ },
            );
            for r in 1..p {
                let c = ratio(one_minus_q.clone().pow(p - 1 - r) * fact(r - 1), fact(p - 1));
                e.push(rat(-c), 1 - q_, -(r as i64));
            }
            e.push(rat(ratio(-1, 2)), -q_, -p_);
            e.error_n_power = -(2 * m as i64 + 1 + q_);
            e.error_log_power = -p_;
        }
    }
    for k in 1..=m {
        for (c, np, lp) in s4_block(p, q, k) {
            e.push(c, np, lp);
        }
    }
    Ok(e.finish())
}

fn s4_block(p: u32, q: u32, k: u32) -> Block {
    let mut out = Vec::new();
    let b = bern(2 * k);
    let p_ = p as i64;
    match q {
        0 => {
            let base = Rational::from(&b / (2 * k * (2 * k - 1)));
            for r in 1..2 * k {
                let d = (&base * ratio(fact(p - 1 + r), fact(p - 1)))
                    * s(r as i64 - 1, 1, 2 * k as i64 - 2);
                out.push((rat(-d), -(2 * k as i64 - 1), -(r as i64 + p_)));
            }
        }
        1 => {
            let base = Rational::from(&b / (2 * k));
            for r in 0..2 * k {
                let d = (&base * ratio(fact(p - 1 + r), fact(p - 1)))
                    * s(r as i64, 1, 2 * k as i64 - 1);
                out.push((rat(-d), -(2 * k as i64), -(r as i64 + p_)));
            }
        }
        _ => {
            let base = &b * ratio(fact(2 * k + q - 2), fact(2 * k) * fact(q - 1)) ;
            for r in 0..2 * k {
                let d = (&base * ratio(fact(p - 1 + r), fact(p - 1)))
                    * s(r as i64, q, (2 * k + q - 2) as i64);
                out.push((rat(-d), -((2 * k - 1 + q) as i64), -(r as i64 + p_)));
            }
        }
    }
    out
}

/// Dispatches on the family.
pub fn expand(family: Family, p: u32, q: u32, m: u32) -> Result<AsymptoticExpansion> {
    match family {
        Family::S1 => expand_s1(p, q, m),
        Family::S2 => expand_s2(p, q, m),
        Family::S3 => expand_s3(p, q, m),
        Family::S4 => expand_s4(p, q, m),
    }
}

/// The terms an order-`(m+1)` expansion adds to the order-`m` one; their
/// size at `n` is the predicted truncation error.
pub fn omitted_block(family: Family, p: u32, q: u32, m: u32) -> Result<Vec<ExpansionTerm>> {
    let block = match family {
        Family::S1 => {
            expand_s1(p, q, 1)?;
            s1_block(p, q, m + 1)
        }
        Family::S2 => {
            expand_s2(p, q, 1)?;
            s2_tail(p, q, m.max(ceil_half(q)) + 1)
        }
        Family::S3 => {
            if p < 1 || q < 1 {
                return domain("S3 requires p >= 1 and q >= 1");
            }
            s3_tail(p, q, m + 1)
        }
        Family::S4 => {
            expand_s4(p, q, 1)?;
            s4_block(p, q, m + 1)
        }
    };
    Ok(block
        .into_iter()
        .filter(|(c, _, _)| !c.is_zero())
        .map(|(c, np, lp)| ExpansionTerm::new(c, np, lp))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff_of(e: &AsymptoticExpansion, np: i64, lp: i64) -> ConstExpr {
        e.terms
            .iter()
            .find(|t| t.special == Special::None && t.n_power == np && t.log_power == lp)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    #[test]
    fn s1_harmonic_case() {
        let e = expand_s1(0, 1, 3).unwrap();
        assert_eq!(e.constant, ConstExpr::symbol(Symbol::Gamma));
        // -B_2/2 n^{-2} = -1/12
        assert_eq!(coeff_of(&e, -2, 0).rational_part(), ratio(-1, 12));
        let e = expand_s1(1, 1, 2).unwrap();
        // coefficient of n^{-2k} log^0 is B_{2k} H_{2k-1}/(2k)
        assert_eq!(coeff_of(&e, -2, 0).rational_part(), ratio(1, 12));
        assert_eq!(coeff_of(&e, -4, 0).rational_part(), ratio(-1, 120) * ratio(11, 6) / 1);
        assert_eq!(e.constant, ConstExpr::symbol(Symbol::Stieltjes(1)));
    }

    #[test]
    fn s2_constants() {
        let e = expand_s2(1, 0, 1).unwrap();
        assert_eq!(e.constant, ConstExpr::term(Symbol::ZetaDeriv { p: 1, a: 0 }, Rational::from(-1)));
        let e = expand_s2(1, 1, 2).unwrap();
        assert_eq!(e.constant.rational_part(), ratio(1, 12));
        assert_eq!(e.constant.coefficient(Symbol::ZetaDeriv { p: 1, a: -1 }), -1);
    }

    #[test]
    fn s3_constant_law() {
        for p in 1..=4u32 {
            let e = expand_s3_known(p, 1, 3).unwrap();
            let want = sign(p as i64) * q_int(fact(p));
            assert_eq!(e.constant, ConstExpr::term(Symbol::Zeta(p + 1), want));
        }
        let e = expand_s3_known(2, 3, 3).unwrap();
        assert!(e.constant.is_zero());
    }

    #[test]
    fn s4_shapes() {
        let e = expand_s4(1, 1, 2).unwrap();
        assert_eq!(e.terms[0].special, Special::LogLog);
        assert_eq!(e.constant, ConstExpr::symbol(Symbol::Cpq { p: 1, q: 1 }));
        let e = expand_s4(2, 1, 2).unwrap();
        // -d_{2,0,1} n^{-2} (log n)^{-2}, d = B_2/2 = 1/12
        assert_eq!(coeff_of(&e, -2, -2).rational_part(), ratio(-1, 12));
        let e = expand_s4(3, 2, 2).unwrap();
        assert_eq!(e.terms[0].special, Special::Ei { scale: -1 });
    }

    #[test]
    fn ordering_non_increasing() {
        for f in [Family::S1, Family::S2, Family::S4] {
            for p in 1..=3 {
                for q in 1..=3 {
                    let e = expand(f, p, q, 3).unwrap();
                    for w in e.terms.windows(2) {
                        assert!(w[0].order_key() >= w[1].order_key());
                    }
                }
            }
        }
    }
}
