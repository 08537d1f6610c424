use rug::{Integer, Rational};

use crate::error::{domain, Result};
use crate::exact::{bernoulli_numbers, binomial, factorial, srst};
use crate::identity::IdentityCheck;

fn series_pow(base: &[Rational], e: u64, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::new(); n + 1];
    out[0] = Rational::from(1);
    for _ in 0..e {
        let mut next = vec![Rational::new(); n + 1];
        for (i, a) in out.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in base.iter().enumerate().take(n + 1 - i) {
                next[i + j] += Rational::from(a * b);
            }
        }
        out = next;
    }
    out
}

/// Coefficients `[x^0..x^n]` of the Norlund polynomial `B_n^(order)(x)`,
/// defined by `(t/(e^t - 1))^order e^{xt} = sum B_n^(order)(x) t^n/n!`.
pub fn norlund_poly_coeffs(n: usize, order: i64) -> Vec<Rational> {
    // t/(e^t-1) = sum B_j t^j/j!, its reciprocal (e^t-1)/t = sum t^j/(j+1)!
    let base: Vec<Rational> = if order >= 0 {
        bernoulli_numbers(n).into_iter().enumerate().map(|(j, b)| b / factorial(j as u32)).collect()
    } else {
        (0..=n).map(|j| Rational::from((1, factorial(j as u32 + 1)))).collect()
    };
    let pw = series_pow(&base, order.unsigned_abs(), n);
    // B_n^(a)(x) = sum_j C(n,j) B_j^(a) x^{n-j}, B_j^(a) = j! [t^j]
    let mut out = vec![Rational::new(); n + 1];
    for (j, c) in pw.iter().enumerate() {
        out[n - j] = Rational::from(c * factorial(j as u32)) * binomial(n as i64, j as i64);
    }
    out
}

fn eval_poly(c: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for a in c.iter().rev() {
        acc *= x;
        acc += a;
    }
    acc
}

/// `B_n^(order)(alpha)`.
pub fn norlund_poly(n: usize, order: i64, alpha: &Rational) -> Rational {
    eval_poly(&norlund_poly_coeffs(n, order), alpha)
}

/// `B_n^(n+1)(alpha) = (alpha-1)(alpha-2)...(alpha-n)`.
pub fn norlund_product_formula(n: usize, alpha: &Rational) -> IdentityCheck {
    let lhs = norlund_poly(n, n as i64 + 1, alpha);
    let mut rhs = Rational::from(1);
    for i in 1..=n as u32 {
        rhs *= Rational::from(alpha - i);
    }
    IdentityCheck::new("norlund_product", vec![("n", n as i64)], lhs, rhs)
}

/// `B_n^(order)(alpha) = int_alpha^{alpha+1} B_n^(order+1)(t) dt`.
pub fn unit_interval_identity(n: usize, order: i64, alpha: &Rational) -> IdentityCheck {
    let c = norlund_poly_coeffs(n, order + 1);
    let anti: Vec<Rational> = std::iter::once(Rational::new())
        .chain(c.iter().enumerate().map(|(i, a)| Rational::from(a / (i as u32 + 1))))
        .collect();
    let hi = Rational::from(alpha + 1u32);
    let rhs = eval_poly(&anti, &hi) - eval_poly(&anti, alpha);
    let lhs = norlund_poly(n, order, alpha);
    IdentityCheck::new("norlund_unit_interval", vec![("n", n as i64), ("order", order)], lhs, rhs)
}

/// `a_n = (-1)^n B_n^(n-k+1)(1) / n!` for the coefficients of
/// `(z / -log(1-z))^k`, checked for `n = 0..=big_n`.
pub fn bernoulli_poly_link(k: u32, big_n: usize) -> Result<Vec<IdentityCheck>> {
    let a = super::taylor_coeffs(k, big_n)?;
    let one = Rational::from(1);
    Ok(a.into_iter()
        .enumerate()
        .map(|(n, an)| {
            let mut rhs = norlund_poly(n, n as i64 - k as i64 + 1, &one) / factorial(n as u32);
            if n % 2 == 1 {
                rhs = -rhs;
            }
            IdentityCheck::new("bernoulli_poly_link", vec![("k", k as i64), ("n", n as i64)], an, rhs)
        })
        .collect())
}

/// `(-1)^n B_n^(n+g+1)(1) = n! g!/(n+g) S_{g-1,1,n+g-1}` for `g >= 1`.
pub fn stirling_link(g: u32, n: usize) -> Result<IdentityCheck> {
    if g < 1 {
        return domain("stirling_link requires g >= 1");
    }
    let mut lhs = norlund_poly(n, n as i64 + g as i64 + 1, &Rational::from(1));
    if n % 2 == 1 {
        lhs = -lhs;
    }
    let s = srst(g as i64 - 1, 1, n as i64 + g as i64 - 1);
    let rhs = s * (factorial(n as u32) * factorial(g)) / Integer::from(n as u32 + g);
    Ok(IdentityCheck::new("stirling_link", vec![("g", g as i64), ("n", n as i64)], lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let one = Rational::from(1);
        assert_eq!(norlund_poly(1, 1, &one), Rational::from((1, 2)));
        assert_eq!(norlund_poly(2, 3, &one), Rational::new());
        // order 1 at x = 0 gives the Bernoulli numbers
        for (n, b) in bernoulli_numbers(10).iter().enumerate() {
            assert_eq!(&norlund_poly(n, 1, &Rational::new()), b);
        }
        assert!(stirling_link(2, 3).unwrap().holds);
    }
}
