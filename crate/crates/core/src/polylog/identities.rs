use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{domain, Result};
use crate::exact::{bernoulli_numbers, binomial, factorial, harmonic_prefix, srst};
pub use crate::identity::IdentityCheck;

fn sgn(k: i64) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn q(n: impl Into<Integer>, d: impl Into<Integer>) -> Rational {
    Rational::from((n.into(), d.into()))
}

fn ipow(b: u64, e: u32) -> Integer {
    Integer::from(b).pow(e)
}

// b_i = sum_{r=1}^i (-1)^r B_r / r for i = 0..=n
fn b_partial(bern: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Rational::new();
    out.push(acc.clone());
    for r in 1..=n {
        acc += Rational::from(&bern[r] / r as u32) * sgn(r as i64);
        out.push(acc.clone());
    }
    out
}

/// `T_{j-2,n-1}` by its recursion, with `T_{1,m} = H_m^(2)`.
pub fn t_numbers(j: u32, n: u64) -> Result<Rational> {
    if j < 3 || n < 1 {
        return domain("t_numbers requires j >= 3 and n >= 1");
    }
    let m = (n - 1) as usize;
    let mut row = harmonic_prefix(m as u64, 2);
    for a in 2..=(j - 2) as i64 {
        let mut next = Vec::with_capacity(m + 1);
        let mut acc = Rational::new();
        next.push(acc.clone());
        for i in 1..=m {
            acc += Rational::from(&row[i - 1] / i as u32);
            acc += srst(a - 1, 1, i as i64 - 1) / Integer::from(i).square();
            next.push(acc.clone());
        }
        row = next;
    }
    Ok(row[m].clone())
}

/// `T_{j-2,n-1}` from its definition: the sum of `1/(i_1 ... i_{j-3} k^2)`
/// over `1 <= i_1 < ... < i_{j-3} <= n-1` and `k` in `1..n` outside the `i`'s.
pub fn t_numbers_by_definition(j: u32, n: u64) -> Result<Rational> {
    if j < 3 || n < 1 {
        return domain("t_numbers requires j >= 3 and n >= 1");
    }
    let r = (j - 3) as usize;
    let mut total = Rational::new();
    for k in 1..n {
        // elementary symmetric e_r of {1/i : 1 <= i <= n-1, i != k}
        let mut e = vec![Rational::new(); r + 1];
        e[0] = Rational::from(1);
        for i in (1..n).filter(|&i| i != k) {
            let inv = q(1, i);
            for d in (1..=r).rev() {
                let add = Rational::from(&e[d - 1] * &inv);
                e[d] += add;
            }
        }
        total += Rational::from(&e[r] / Integer::from(k).square());
    }
    Ok(total)
}

/// `sum_{r=1}^{n-1} (-1)^r B_r/r sum_{l=r}^n (-1)^l/l C(n-1, n-l) = -1/n^2`.
pub fn bernoulli_identity_one(n: u64) -> Result<IdentityCheck> {
    if n < 2 {
        return domain("bernoulli_identity_one requires n >= 2");
    }
    let bern = bernoulli_numbers(n as usize);
    let ni = n as i64;
    // inner(r) = sum_{l=r}^n (-1)^l/l C(n-1, n-l), accumulated from l = n down
    let mut inner = vec![Rational::new(); n as usize + 2];
    for l in (1..=ni).rev() {
        let t = q(binomial(ni - 1, ni - l) * sgn(l), l);
        inner[l as usize] = Rational::from(&inner[l as usize + 1] + &t);
    }
    let mut lhs = Rational::new();
    for r in 1..ni {
        if bern[r as usize] == 0 {
            continue;
        }
        lhs += Rational::from(&bern[r as usize] / r as u32) * &inner[r as usize] * sgn(r);
    }
    Ok(IdentityCheck::new("bernoulli_one", vec![("n", ni)], lhs, q(-1, Integer::from(n).square())))
}

/// The conjectured identity
/// `sum_{r=1}^{p-1} (-1)^r B_r/r (sum_{l=r}^p (-1)^l C(p,l) H_{l-1} + 1/r + 1/(p-r))
///  = H_{p-1}^(2) + H_{p-1}/p`.
pub fn bernoulli_conjecture(p: u64) -> Result<IdentityCheck> {
    if p < 1 {
        return domain("bernoulli_conjecture requires p >= 1");
    }
    let pi = p as i64;
    let bern = bernoulli_numbers(p as usize);
    let h = harmonic_prefix(p, 1);
    let h2 = harmonic_prefix(p, 2);
    let mut inner = vec![Rational::new(); p as usize + 2];
    for l in (1..=pi).rev() {
        let t = Rational::from(&h[l as usize - 1] * binomial(pi, l)) * sgn(l);
        inner[l as usize] = Rational::from(&inner[l as usize + 1] + &t);
    }
    let mut lhs = Rational::new();
    for r in 1..pi {
        if bern[r as usize] == 0 {
            continue;
        }
        let bracket = (&inner[r as usize] + q(1, r)) + q(1, pi - r);
        lhs += Rational::from(&bern[r as usize] / r as u32) * bracket * sgn(r);
    }
    let rhs = &h2[p as usize - 1] + Rational::from(&h[p as usize - 1] / p as u32) ;
    Ok(IdentityCheck::new("conjecture", vec![("p", pi)], lhs, rhs))
}

/// `sum_{i=1}^{n-1} H_{i-1}/(n-i)^p
///  = sum_{i=1}^{n-1} (sum_{r=1}^{p-1} H_{i-1}^(p-r+1)/i^r + 2 H_{i-1}/i^p)`.
pub fn harmonic_power_identity(p: u32, n: u64) -> Result<IdentityCheck> {
    if p < 1 || n < 2 {
        return domain("harmonic_power_identity requires p >= 1 and n >= 2");
    }
    let h: Vec<Vec<Rational>> = (1..=p + 1).map(|o| harmonic_prefix(n, o)).collect();
    let mut lhs = Rational::new();
    let mut rhs = Rational::new();
    for i in 1..n {
        let hi = &h[0][i as usize - 1];
        lhs += Rational::from(hi / ipow(n - i, p));
        for r in 1..p {
            rhs += Rational::from(&h[(p - r) as usize][i as usize - 1] / ipow(i, r));
        }
        rhs += Rational::from(hi / ipow(i, p)) * 2u32;
    }
    Ok(IdentityCheck::new("harmonic_power", vec![("p", p as i64), ("n", n as i64)], lhs, rhs))
}

/// `sum_{l=1}^{p+1} (-1)^l C(p+1,l) H_{l-1} = H_p` and
/// `-sum_{l=1}^{p} (-1)^l C(p,l)/l = H_p`.
pub fn binomial_harmonic_identity(p: u64) -> Result<[IdentityCheck; 2]> {
    if p < 1 {
        return domain("binomial_harmonic_identity requires p >= 1");
    }
    let pi = p as i64;
    let h = harmonic_prefix(p, 1);
    let hp = h[p as usize].clone();
    let mut a = Rational::new();
    for l in 1..=pi + 1 {
        a += Rational::from(&h[l as usize - 1] * binomial(pi + 1, l)) * sgn(l);
    }
    let mut b = Rational::new();
    for l in 1..=pi {
        b -= q(binomial(pi, l) * sgn(l), l);
    }
    Ok([
        IdentityCheck::new("binomial_harmonic", vec![("p", pi)], a, hp.clone()),
        IdentityCheck::new("binomial_harmonic_companion", vec![("p", pi)], b, hp),
    ])
}

/// `x^n` coefficient of `sum_i ((-1)^i B_i/i^2 x^i - b_i/i (x/(x-1))^i)`
/// against that of `Li_2(x)`, which is `1/n^2`.
pub fn s11_coefficient_identity(n: u64) -> Result<IdentityCheck> {
    if n < 1 {
        return domain("coefficient index must be positive");
    }
    let ni = n as i64;
    let bern = bernoulli_numbers(n as usize);
    let b = b_partial(&bern, n as usize);
    let n2 = Integer::from(n).square();
    let mut lhs = Rational::from(&bern[n as usize] / &n2) * sgn(ni);
    for i in 1..=ni {
        // [x^n] (x/(x-1))^i = (-1)^i C(n-1, n-i)
        lhs -= Rational::from(&b[i as usize] / i as u32) * binomial(ni - 1, ni - i) * sgn(i);
    }
    Ok(IdentityCheck::new("s11_coefficient", vec![("n", ni)], lhs, q(1, n2)))
}

/// `x^n` coefficient of
/// `sum_i ((-1)^i B_i H_{i-1}/i^2 x^i - b_i/i (H_{i-1} + Li_1(x)) (x/(x-1))^i)`
/// against that of `S_{1,2}(x)`, which is `H_{n-1}/n^2`.
pub fn s12_coefficient_identity(n: u64) -> Result<IdentityCheck> {
    if n < 1 {
        return domain("coefficient index must be positive");
    }
    let ni = n as i64;
    let bern = bernoulli_numbers(n as usize);
    let b = b_partial(&bern, n as usize);
    let h = harmonic_prefix(n, 1);
    let n2 = Integer::from(n).square();
    let mut lhs = Rational::from(&bern[n as usize] * &h[n as usize - 1]) / &n2 * sgn(ni);
    for i in 1..=ni {
        let mut inner = Rational::from(&h[i as usize - 1] * binomial(ni - 1, ni - i));
        for m in i..ni {
            inner += q(binomial(m - 1, m - i), ni - m);
        }
        lhs -= Rational::from(&b[i as usize] / i as u32) * inner * sgn(i);
    }
    let rhs = Rational::from(&h[n as usize - 1] / &n2);
    Ok(IdentityCheck::new("s12_coefficient", vec![("n", ni)], lhs, rhs))
}

/// The Bernoulli-number form of the `S_{1,2}` coefficient identity:
/// `-sum_{r<p} (-1)^r B_r/r sum_{l=r}^p (-1)^l/l C(p-1,p-l) H_{l-1}
///  - sum_{n<p} (-1)^n B_n/(n^2 (p-n)) + H_{p-1}^(2)/p + 2 H_{p-1}/p^2 = H_{p-1}/p^2`.
pub fn s12_reduced_identity(p: u64) -> Result<IdentityCheck> {
    if p < 1 {
        return domain("s12_reduced_identity requires p >= 1");
    }
    let pi = p as i64;
    let bern = bernoulli_numbers(p as usize);
    let h = harmonic_prefix(p, 1);
    let h2 = harmonic_prefix(p, 2);
    let mut inner = vec![Rational::new(); p as usize + 2];
    for l in (1..=pi).rev() {
        let t = Rational::from(&h[l as usize - 1] * binomial(pi - 1, pi - l)) / l as u32 * sgn(l);
        inner[l as usize] = Rational::from(&inner[l as usize + 1] + &t);
    }
    let mut lhs = Rational::new();
    for r in 1..pi {
        if bern[r as usize] == 0 {
            continue;
        }
        lhs -= Rational::from(&bern[r as usize] / r as u32) * &inner[r as usize] * sgn(r);
        lhs -= Rational::from(&bern[r as usize] / (Integer::from(r).square() * (pi - r))) * sgn(r);
    }
    let p2 = Integer::from(p).square();
    lhs += Rational::from(&h2[p as usize - 1] / p as u32);
    lhs += Rational::from(&h[p as usize - 1] / &p2) * 2u32;
    let rhs = Rational::from(&h[p as usize - 1] / &p2);
    Ok(IdentityCheck::new("s12_reduced", vec![("p", pi)], lhs, rhs))
}

/// Taylor coefficients `[x^0..x^terms]` of `(-log(1-x))^p / p!`, by repeated
/// series multiplication.
pub fn log_power_series(p: u32, terms: usize) -> Vec<Rational> {
    let base: Vec<Rational> = (0..=terms).map(|n| if n == 0 { Rational::new() } else { q(1, n) }).collect();
    let mut acc = vec![Rational::new(); terms + 1];
    acc[0] = Rational::from(1);
    for _ in 0..p {
        let mut next = vec![Rational::new(); terms + 1];
        for (i, a) in acc.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for j in 1..=terms - i {
                next[i + j] += Rational::from(a * &base[j]);
            }
        }
        acc = next;
    }
    let f = factorial(p);
    acc.into_iter().map(|c| c / &f).collect()
}

/// `[x^n] (-log(1-x))^p/p! = S_{p-1,1,n-1}/n` for `n = 1..=terms`.
pub fn log_power_identity(p: u32, terms: usize) -> Result<Vec<IdentityCheck>> {
    if p < 1 {
        return domain("log_power_identity requires p >= 1");
    }
    let series = log_power_series(p, terms);
    Ok((1..=terms)
        .map(|n| {
            let rhs = srst(p as i64 - 1, 1, n as i64 - 1) / Integer::from(n);
            IdentityCheck::new("log_power", vec![("p", p as i64), ("n", n as i64)], series[n].clone(), rhs)
        })
        .collect())
}

/// Coefficients `[x^0..x^terms]` of `S_{k,p}(x)`: `S_{p-1,1,n-1}/n^{k+1}`.
pub fn nielsen_coefficients(k: u32, p: u32, terms: usize) -> Vec<Rational> {
    (0..=terms)
        .map(|n| {
            if n == 0 || p == 0 {
                Rational::new()
            } else {
                srst(p as i64 - 1, 1, n as i64 - 1) / ipow(n as u64, k + 1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_number_values() {
        assert_eq!(t_numbers(3, 4).unwrap(), q(49, 36));
        assert_eq!(t_numbers(4, 1).unwrap(), Rational::new());
        assert_eq!(t_numbers(4, 3).unwrap(), q(3, 4));
        for j in 3..7 {
            for n in 1..9 {
                assert_eq!(t_numbers(j, n).unwrap(), t_numbers_by_definition(j, n).unwrap());
            }
        }
    }

    #[test]
    fn small_instances() {
        let c = bernoulli_identity_one(2).unwrap();
        assert_eq!(c.lhs, q(-1, 4));
        assert!(c.holds);
        assert_eq!(bernoulli_identity_one(3).unwrap().rhs, q(-1, 9));
        let c = bernoulli_conjecture(2).unwrap();
        assert_eq!((c.lhs.clone(), c.holds), (q(3, 2), true));
        let c = bernoulli_conjecture(1).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (Rational::new(), Rational::new()));
        assert!(harmonic_power_identity(1, 3).unwrap().holds);
        let [a, b] = binomial_harmonic_identity(4).unwrap();
        assert_eq!(a.lhs, q(25, 12));
        assert!(a.holds && b.holds);
    }

    #[test]
    fn series_coefficients() {
        let c = log_power_series(2, 6);
        assert_eq!(c[2], q(1, 2));
        assert_eq!(c[3], q(1, 2));
        assert_eq!(c[4], q(11, 24));
        let s = nielsen_coefficients(1, 2, 4);
        assert_eq!(s[3], q(1, 6));
    }
}
