use rayon::prelude::*;

use super::cpq;
use crate::error::{domain, Error, Result};
use crate::real::Real;

/// One cell of the `p = 1..6, q = 0..4` grid: `C_{p,q}` next to the `k = 2` term `2^{-q} (log 2)^{-p}`.
#[derive(Debug, Clone)]
pub struct Table1Cell {
    pub p: u32,
    pub q: u32,
    pub cpq: Real,
    pub leading: f64,
}

fn k_term(k: f64, p: u32, q: u32) -> f64 {
    k.powi(-(q as i32)) * k.ln().powi(-(p as i32))
}

/// `C_{p,q}` for `p = 1..=6`, `q = 0..=4`, row-major in `(p, q)`.
pub fn table1(digits: u32) -> Result<Vec<Table1Cell>> {
    let cells: Vec<(u32, u32)> = (1..=6).flat_map(|p| (0..=4).map(move |q| (p, q))).collect();
    cells
        .par_iter()
        .map(|&(p, q)| {
            let r = cpq(p, q, digits.max(6) + 4)?;
            Ok(Table1Cell { p, q, cpq: r.value, leading: k_term(2.0, p, q) })
        })
        .collect()
}

/// Least-squares fit of `C_{p,q} - 2^{-q}(log 2)^{-p}` to
/// `e^{-ap-bq} + e^{-cp-dq}`.
#[derive(Debug, Clone)]
pub struct DecayFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Relative RMS residual of the fit.
    pub rms: f64,
    /// RMS of `C_{p,q} - 2^{-q}(log 2)^{-p}` over the fitted cells.
    pub rms_leading_only: f64,
    /// RMS of `C_{p,q} - sum_{k=2}^{4} k^{-q}(log k)^{-p}`.
    pub rms_with_corrections: f64,
    pub points: usize,
}

impl DecayFit {
    pub fn shrinkage(&self) -> f64 {
        self.rms_leading_only / self.rms_with_corrections
    }
}

fn model(t: &[f64; 4], p: f64, q: f64) -> (f64, [f64; 4]) {
    let e1 = (-t[0] * p - t[1] * q).exp();
    let e2 = (-t[2] * p - t[3] * q).exp();
    (e1 + e2, [-p * e1, -q * e1, -p * e2, -q * e2])
}

fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for i in 0..4 {
        let piv = (i..4).max_by(|&x, &y| a[x][i].abs().total_cmp(&a[y][i].abs()))?;
        if a[piv][i].abs() < 1e-300 {
            return None;
        }
        a.swap(i, piv);
        b.swap(i, piv);
        for r in i + 1..4 {
            let f = a[r][i] / a[i][i];
            for c in i..4 {
                a[r][c] -= f * a[i][c];
            }
            b[r] -= f * b[i];
        }
    }
    let mut x = [0.0; 4];
    for i in (0..4).rev() {
        let s: f64 = (i + 1..4).map(|c| a[i][c] * x[c]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

fn sse(t: &[f64; 4], data: &[(f64, f64, f64)]) -> f64 {
    data.iter().map(|&(p, q, y)| ((y - model(t, p, q).0) / y).powi(2)).sum()
}

fn levenberg_marquardt(mut t: [f64; 4], data: &[(f64, f64, f64)]) -> ([f64; 4], f64) {
    let mut lambda = 1e-3;
    let mut cur = sse(&t, data);
    for _ in 0..500 {
        let mut jtj = [[0.0; 4]; 4];
        let mut jtr = [0.0; 4];
        for &(p, q, y) in data {
            let (f, g) = model(&t, p, q);
            let r = (y - f) / y;
            let g = g.map(|v| v / y);
            for i in 0..4 {
                jtr[i] += g[i] * r;
                for j in 0..4 {
                    jtj[i][j] += g[i] * g[j];
                }
            }
        }
        let mut improved = false;
        while lambda < 1e12 {
            let mut m = jtj;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += lambda * jtj[i][i].max(1e-12);
            }
            if let Some(dx) = solve4(m, jtr) {
                let cand = [t[0] + dx[0], t[1] + dx[1], t[2] + dx[2], t[3] + dx[3]];
                let s = sse(&cand, data);
                if s < cur {
                    let rel = (cur - s) / cur.max(1e-300);
                    t = cand;
                    cur = s;
                    lambda = (lambda / 3.0).max(1e-12);
                    improved = rel > 1e-15;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (t, cur)
}

fn rms(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x * x, n + 1));
    (s / n.max(1) as f64).sqrt()
}

/// Fit the decay of `C_{p,q}` towards its `k = 2` term over the grid
/// `p_range x q_range` (inclusive), in relative least squares.
pub fn cpq_decay_fit(p_range: (u32, u32), q_range: (u32, u32)) -> Result<DecayFit> {
    let np = (p_range.1 + 1).saturating_sub(p_range.0);
    let nq = (q_range.1 + 1).saturating_sub(q_range.0);
    if p_range.0 < 1 || np < 2 || nq < 2 || np * nq < 5 {
        return domain("decay fit needs p >= 1, two values of p and of q, and five cells");
    }
    let grid: Vec<(u32, u32)> =
        (p_range.0..=p_range.1).flat_map(|p| (q_range.0..=q_range.1).map(move |q| (p, q))).collect();
    let computed: Vec<Table1Cell> = grid
        .par_iter()
        .map(|&(p, q)| {
            let r = cpq(p, q, 16)?;
            Ok(Table1Cell { p, q, cpq: r.value, leading: k_term(2.0, p, q) })
        })
        .collect::<Result<_>>()?;
    let cells: Vec<&Table1Cell> = computed.iter().collect();
    if cells.iter().any(|c| c.cpq.to_f64() - c.leading <= 0.0) {
        return domain("decay fit needs C_{p,q} above its k = 2 term on the whole grid");
    }
    let data: Vec<(f64, f64, f64)> = cells
        .iter()
        .map(|c| (c.p as f64, c.q as f64, c.cpq.to_f64() - c.leading))
        .collect();
    let mut best: Option<([f64; 4], f64)> = None;
    for &(a0, b0) in &[(0.0, 1.0), (0.1, 1.2), (0.2, 0.8)] {
        for &(c0, d0) in &[(0.3, 1.5), (0.5, 2.0), (0.4, 1.3)] {
            let (t, s) = levenberg_marquardt([a0, b0, c0, d0], &data);
            if s.is_finite() && best.as_ref().is_none_or(|b| s < b.1) {
                best = Some((t, s));
            }
        }
    }
    let (mut t, s) = best.ok_or_else(|| Error::Convergence("decay fit did not converge".into()))?;
    // order the two exponentials by their q-rate
    if t[1] > t[3] {
        t = [t[2], t[3], t[0], t[1]];
    }
    Ok(DecayFit {
        a: t[0],
        b: t[1],
        c: t[2],
        d: t[3],
        rms: (s / data.len() as f64).sqrt(),
        rms_leading_only: rms(data.iter().map(|d| d.2)),
        rms_with_corrections: rms(cells.iter().map(|c| {
            c.cpq.to_f64() - c.leading - k_term(3.0, c.p, c.q) - k_term(4.0, c.p, c.q)
        })),
        points: data.len(),
    })
}
