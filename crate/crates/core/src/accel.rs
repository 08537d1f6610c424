//! The `asymp_k` acceleration: `(1/k!) Δ^k (n^k s_n)` removes the first `k`
//! inverse-power corrections from a sequence converging like
//! `c_0 + c_1/n + c_2/n^2 + …`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial};
use crate::real::{exponent, format_real, parse_real, Real};

/// Values `s_a, s_{a+1}, …` on contiguous integer indices.
#[derive(Debug, Clone)]
pub struct Sequence {
    pub first_index: i64,
    pub values: Vec<Real>,
}

impl Sequence {
    pub fn new(first_index: i64, values: Vec<Real>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("a sequence needs at least two values".into()));
        }
        let prec = values.iter().map(|v| v.prec()).min().unwrap_or(64);
        let values = values.into_iter().map(|v| Float::with_val(prec, v)).collect();
        Ok(Sequence {
            first_index,
            values,
        })
    }

    /// Builds `s_n = f(n)` for `n` in `a..=b`.
    pub fn from_fn(a: i64, b: i64, f: impl Fn(i64) -> Real) -> Result<Self> {
        Self::new(a, (a..=b).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.values.len() as i64 - 1
    }

    pub fn prec(&self) -> u32 {
        self.values[0].prec()
    }

    pub fn last(&self) -> &Real {
        self.values.last().expect("nonempty")
    }

    pub fn get(&self, n: i64) -> Option<&Real> {
        let i = n - self.first_index;
        if i < 0 {
            return None;
        }
        self.values.get(i as usize)
    }
}

fn max_index_bits(s: &Sequence) -> u32 {
    let m = s.last_index().unsigned_abs().max(s.first_index.unsigned_abs()).max(2);
    64 - m.leading_zeros()
}

/// `t_n = (1/k!) Δ^k (n^k s_n)` using the absolute index `n`.
///
/// The result has `k` fewer entries and the same precision as the input.
pub fn asympk_transform(s: &Sequence, k: u32) -> Result<Sequence> {
    if k == 0 {
        return Ok(s.clone());
    }
    if k as usize >= s.len() {
        return Err(Error::Domain(format!(
            "asymp_k with k = {k} needs more than {k} terms, got {}",
            s.len()
        )));
    }
    let prec = s.prec();
    let wp = prec + k * max_index_bits(s) + 32;
    let kf = Float::with_val(wp, factorial(k));
    let signed: Vec<Float> = (0..=k)
        .map(|i| {
            let c = binomial(k as i64, i as i64);
            let c = if (k - i) % 2 == 1 { -c } else { c };
            Float::with_val(wp, c)
        })
        .collect();
    let scaled: Vec<Float> = s
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let n = Float::with_val(wp, s.first_index + i as i64);
            let nk = n.pow(k);
            nk * v
        })
        .collect();
    let out = (0..s.len() - k as usize)
        .map(|start| {
            let mut acc = Float::with_val(wp, 0);
            for (i, c) in signed.iter().enumerate() {
                acc += Float::with_val(wp, c * &scaled[start + i]);
            }
            Float::with_val(prec, acc / &kf)
        })
        .collect();
    Ok(Sequence {
        first_index: s.first_index,
        values: out,
    })
}

/// Relative noise amplification of the transform at its final entry, as a
/// base-10 logarithm.
fn amplification_log10(first: i64, len: usize, k: u32) -> f64 {
    let start = first + len as i64 - 1 - k as i64;
    let mut total = 0.0f64;
    let kf: f64 = (1..=k).map(|i| i as f64).product();
    for i in 0..=k {
        let c = binomial(k as i64, i as i64).to_f64();
        total += c * ((start + i as i64) as f64).abs().powi(k as i32) / kf;
    }
    total.max(1.0).log10()
}

/// A coefficient recovered from a sequence together with an estimate of its
/// reliable decimal digits.
#[derive(Debug, Clone)]
pub struct Extracted {
    pub value: Real,
    pub estimated_digits: f64,
}

/// Recovers `c_j` of the ansatz `s_n = Σ c_i / n^i`.
///
/// At each level the current constant is estimated from the last transformed
/// entry, subtracted, and the remainder multiplied by `n`.
pub fn extract_coefficient(s: &Sequence, j: u32, k: u32) -> Result<Extracted> {
    if s.len() <= (k + j) as usize {
        return Err(Error::Domain(format!(
            "need more than k + j = {} terms, got {}",
            k + j,
            s.len()
        )));
    }
    let prec = s.prec();
    let digits0 = prec as f64 / std::f64::consts::LOG2_10;
    let mut cur = s.clone();
    let n_max = s.last_index().max(2) as f64;
    for level in 0..=j {
        let t = asympk_transform(&cur, k)?;
        let c = t.last().clone();
        let amp = amplification_log10(cur.first_index, cur.len(), k);
        // an error in c_i reappears multiplied by n in c_{i+1}
        let lost = amp + level as f64 * n_max.log10() + ((level + 1) as f64).log10();
        // truncation proxy: spread across the back half of the transform
        let mid = &t.values[t.len() / 2];
        let spread = Float::with_val(prec, mid - &c);
        let scale = if c.is_zero() { 1.0 } else { crate::real::log10_abs(&c) };
        let trunc_digits = if spread.is_zero() {
            digits0
        } else {
            scale - crate::real::log10_abs(&spread)
        };
        let noise_digits = digits0 - lost;
        let est = trunc_digits.min(noise_digits);
        if level == j {
            if est < 1.0 {
                return Err(Error::Precision {
                    context: format!("extract_coefficient j = {j}, k = {k}"),
                    estimated_digits: est.floor() as i64,
                });
            }
            return Ok(Extracted {
                value: c,
                estimated_digits: est,
            });
        }
        let values = cur
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let n = cur.first_index + i as i64;
                Float::with_val(prec, v - &c) * n
            })
            .collect();
        cur = Sequence {
            first_index: cur.first_index,
            values,
        };
    }
    unreachable!()
}

/// Leading decimal digits shared by the last two entries of the subsequence
/// taken every `stride` terms.
pub fn digit_agreement(s: &Sequence, stride: usize) -> Result<u32> {
    let stride = stride.max(1);
    if s.len() < 2 * stride {
        return Err(Error::Domain(format!(
            "digit agreement with stride {stride} needs {} terms, got {}",
            2 * stride,
            s.len()
        )));
    }
    let full = (s.prec() as f64 / std::f64::consts::LOG2_10).floor() as u32;
    let a = s.last();
    let b = &s.values[s.len() - 1 - stride];
    if a == b {
        return Ok(full);
    }
    if exponent(a) != exponent(b) || a.is_sign_negative() != b.is_sign_negative() {
        return Ok(0);
    }
    let fa = format_real(a, full);
    let fb = format_real(b, full);
    let count = fa
        .chars()
        .zip(fb.chars())
        .take_while(|(x, y)| x == y)
        .filter(|(x, _)| x.is_ascii_digit())
        .count();
    Ok(count as u32)
}

/// Reads a sequence from CSV text: one value per line or `index,value`.
///
/// Blank lines and lines starting with `#` are skipped. Indices, when given,
/// must be contiguous.
pub fn parse_csv(text: &str, prec: u32) -> Result<Sequence> {
    let mut first = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx, val) = match line.split_once(',') {
            Some((i, v)) => {
                let i: i64 = i.trim().parse().map_err(|_| {
                    Error::Domain(format!("line {}: bad index `{}`", lineno + 1, i.trim()))
                })?;
                (Some(i), v)
            }
            None => (None, line),
        };
        let v = parse_real(val, prec)?;
        match (idx, first) {
            (Some(i), None) => first = Some(i),
            (Some(i), Some(f)) => {
                if i != f + values.len() as i64 {
                    return Err(Error::Domain(format!(
                        "line {}: index {i} breaks contiguity",
                        lineno + 1
                    )));
                }
            }
            (None, None) => first = Some(1),
            (None, Some(_)) => {}
        }
        values.push(v);
    }
    Sequence::new(first.unwrap_or(1), values)
}

/// Least-squares solution of `A c = y` by modified Gram-Schmidt at the
/// precision of the entries, with the RMS residual.
pub fn least_squares(rows: &[Vec<Real>], y: &[Real]) -> Result<(Vec<Real>, Real)> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if m < n || n == 0 || y.len() != m {
        return Err(Error::Domain(format!("least squares needs at least {n} rows, got {m}")));
    }
    let wp = y[0].prec();
    let mut q: Vec<Vec<Real>> = (0..n).map(|j| rows.iter().map(|r| Float::with_val(wp, &r[j])).collect()).collect();
    let mut r = vec![vec![Float::with_val(wp, 0); n]; n];
    for j in 0..n {
        for i in 0..j {
            let dot = q[i].iter().zip(&q[j]).fold(Float::with_val(wp, 0), |acc, (a, b)| acc + Float::with_val(wp, a * b));
            let qi = q[i].clone();
            for (qj, qi) in q[j].iter_mut().zip(&qi) {
                *qj -= Float::with_val(wp, &dot * qi);
            }
            r[i][j] += dot;
        }
        let norm = q[j].iter().fold(Float::with_val(wp, 0), |acc, a| acc + Float::with_val(wp, a.square_ref())).sqrt();
        if norm.is_zero() {
            return Err(Error::Domain("least squares basis is rank deficient".into()));
        }
        for v in q[j].iter_mut() {
            *v /= &norm;
        }
        r[j][j] = norm;
    }
    let qty: Vec<Real> = q
        .iter()
        .map(|col| col.iter().zip(y).fold(Float::with_val(wp, 0), |acc, (a, b)| acc + Float::with_val(wp, a * b)))
        .collect();
    let mut c = vec![Float::with_val(wp, 0); n];
    for i in (0..n).rev() {
        let mut acc = qty[i].clone();
        for k in i + 1..n {
            acc -= Float::with_val(wp, &r[i][k] * &c[k]);
        }
        c[i] = acc / &r[i][i];
    }
    let mut ss = Float::with_val(wp, 0);
    for (row, yi) in rows.iter().zip(y) {
        let fit = row.iter().zip(&c).fold(Float::with_val(wp, 0), |acc, (a, b)| acc + Float::with_val(wp, a * b));
        ss += Float::with_val(wp, yi - fit).square();
    }
    Ok((c, (ss / m as u32).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_one_over_n() {
        let p = 128;
        let s = Sequence::from_fn(1, 20, |_| Float::with_val(p, 1)).unwrap();
        let t = asympk_transform(&s, 3).unwrap();
        for v in &t.values {
            assert_eq!(*v, 1);
        }
        let s = Sequence::from_fn(1, 20, |n| Float::with_val(p, 1) + Float::with_val(p, n).recip())
            .unwrap();
        let t = asympk_transform(&s, 1).unwrap();
        for v in &t.values {
            assert!(Float::with_val(p, v - 1u32).abs() < 1e-35);
        }
    }

    #[test]
    fn too_short() {
        let s = Sequence::from_fn(1, 3, |n| Float::with_val(64, n)).unwrap();
        assert!(asympk_transform(&s, 3).is_err());
    }

    #[test]
    fn csv() {
        let s = parse_csv("5,1.5\n6,2.5\n", 64).unwrap();
        assert_eq!(s.first_index, 5);
        assert!(parse_csv("1,1\n3,2\n", 64).is_err());
        let s = parse_csv("# c\n1\n2\n3\n", 64).unwrap();
        assert_eq!(s.first_index, 1);
        assert_eq!(s.len(), 3);
    }
}
