//! Taylor coefficients of `(z / -log(1-z))^k`, their asymptotics through the
//! derivatives `g_i` of `1/Gamma(-alpha)` at 0, and the Norlund polynomials
//! `B_n^(a)(x)`.

mod bernoulli_poly;

pub use bernoulli_poly::{
    bernoulli_poly_link, norlund_poly, norlund_poly_coeffs, norlund_product_formula, stirling_link,
    unit_interval_identity,
};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{domain, Error, Result};
use crate::exact::{binomial, factorial};
use crate::real::{bits_for, ln_int, zeta_int, Real};

/// Largest order for the quadratic exact series routes.
pub const MAX_SERIES_ORDER: usize = 1500;
/// Largest index for the Stirling-row route to single coefficients.
pub const MAX_ROW_INDEX: u64 = 20_000;

fn mul_truncated(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// Exact coefficients `a_0..a_N` of `(z / -log(1-z))^k`: the reciprocal of
/// `sum z^n/(n+1)` raised to the `k`-th power.
pub fn taylor_coeffs(k: u32, big_n: usize) -> Result<Vec<Rational>> {
    if k < 1 {
        return domain("taylor_coeffs requires k >= 1");
    }
    if big_n > MAX_SERIES_ORDER {
        return Err(Error::Budget(format!(
            "exact series to order {big_n} exceeds {MAX_SERIES_ORDER}; use taylor_coeffs_at for single indices"
        )));
    }
    let mut recip = vec![Rational::new(); big_n + 1];
    recip[0] = Rational::from(1);
    for n in 1..=big_n {
        let mut acc = Rational::new();
        for j in 1..=n {
            acc -= Rational::from(&recip[n - j] / (j as u32 + 1));
        }
        recip[n] = acc;
    }
    let mut out = recip.clone();
    for _ in 1..k {
        out = mul_truncated(&out, &recip, big_n);
    }
    Ok(out)
}

// E[(U_1 + ... + U_k)^j] for independent uniforms on [0, 1]
fn uniform_sum_moment(k: u32, j: u32) -> Rational {
    let mut acc = Integer::new();
    for i in 0..=k {
        let t = binomial(k as i64, i as i64) * Integer::from(i).pow(j + k);
        if (k - i).is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let mut den = Integer::from(1);
    for t in j + 1..=j + k {
        den *= t;
    }
    Rational::from((acc, den))
}

/// Exact `a_n` of `(z / -log(1-z))^k` at the requested indices, from
/// `a_n = (1/n!) sum_j (-1)^j [n, j] E[(U_1+...+U_k)^j]`, streaming the
/// Stirling rows up to the largest index.
pub fn taylor_coeffs_at(k: u32, ns: &[u64]) -> Result<Vec<Rational>> {
    if k < 1 {
        return domain("taylor_coeffs_at requires k >= 1");
    }
    let top = ns.iter().copied().max().unwrap_or(0);
    if top > MAX_ROW_INDEX {
        return Err(Error::Budget(format!("coefficient index {top} exceeds {MAX_ROW_INDEX}")));
    }
    let mut wanted: Vec<(usize, u64)> = ns.iter().copied().enumerate().collect();
    wanted.sort_by_key(|w| w.1);
    let mut out = vec![Rational::new(); ns.len()];
    let mut row: Vec<Integer> = vec![Integer::from(1)];
    let mut next_w = 0;
    let mut fact = Integer::from(1);
    for n in 0..=top {
        if n > 0 {
            // [n, j] = [n-1, j-1] + (n-1) [n-1, j]
            row.push(Integer::new());
            for j in (1..=n as usize).rev() {
                let prev = std::mem::take(&mut row[j - 1]);
                row[j] *= n - 1;
                row[j] += &prev;
                row[j - 1] = prev;
            }
            row[0] *= n - 1;
            fact *= n;
        }
        while next_w < wanted.len() && wanted[next_w].1 == n {
            let mut acc = Rational::new();
            for (j, c) in row.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let t = uniform_sum_moment(k, j as u32) * c;
                if j % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            out[wanted[next_w].0] = acc / &fact;
            next_w += 1;
        }
    }
    Ok(out)
}

/// Coefficients `[alpha^0..alpha^N]` of `1/Gamma(-alpha)`, from
/// `1/Gamma(-alpha) = -alpha exp(-gamma alpha - sum_{j>=2} zeta(j) alpha^j / j)`.
fn recip_gamma_series(big_n: usize, prec: u32) -> Result<Vec<Real>> {
    let wp = prec + 32;
    // s_1..s_N of the exponent
    let mut s = vec![Float::with_val(wp, 0); big_n + 1];
    if big_n >= 1 {
        s[1] = -crate::constants::euler_gamma(wp);
    }
    for (j, sj) in s.iter_mut().enumerate().skip(2) {
        *sj = -zeta_int(j as u32, wp)? / j as u32;
    }
    // e = exp(S): e_n = (1/n) sum_{m=1}^n m s_m e_{n-m}
    let mut e = vec![Float::with_val(wp, 0); big_n + 1];
    e[0] = Float::with_val(wp, 1);
    for n in 1..=big_n {
        let mut acc = Float::with_val(wp, 0);
        for m in 1..=n {
            acc += Float::with_val(wp, &s[m] * &e[n - m]) * m as u32;
        }
        e[n] = acc / n as u32;
    }
    let mut c = vec![Float::with_val(prec, 0); big_n + 1];
    for i in 1..=big_n {
        c[i] = Float::with_val(prec, -&e[i - 1]);
    }
    Ok(c)
}

/// `g_i = d^i/d alpha^i 1/Gamma(-alpha)` at `alpha = 0`, for `i = 0..=N`.
pub fn recip_gamma_coeffs(big_n: usize, digits: u32) -> Result<Vec<Real>> {
    let prec = bits_for(digits);
    let c = recip_gamma_series(big_n, prec)?;
    Ok(c.into_iter()
        .enumerate()
        .map(|(i, v)| v * Float::with_val(prec, factorial(i as u32)))
        .collect())
}

/// `sum_{i=1}^{terms} C(k+i-1, i) g_i / (n (log n)^{k+i})`, the predicted
/// `a_n` of `(z / -log(1-z))^k`; the leading term is `-k/(n (log n)^{k+1})`.
pub fn asymp_taylor(n: u64, k: u32, terms: usize, digits: u32) -> Result<Real> {
    if n < 3 {
        return domain("asymp_taylor requires n >= 3");
    }
    if k < 1 {
        return domain("asymp_taylor requires k >= 1");
    }
    let prec = bits_for(digits);
    let g = recip_gamma_coeffs(terms, digits)?;
    let l = ln_int(prec, n);
    let mut sum = Float::with_val(prec, 0);
    for (i, gi) in g.iter().enumerate().skip(1) {
        let c = Float::with_val(prec, binomial(k as i64 + i as i64 - 1, i as i64));
        let den = Float::with_val(prec, l.clone().pow((k as usize + i) as i32)) * n;
        sum += c * gi / den;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests;
