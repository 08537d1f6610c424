//! The constants `c_i` of the incomplete gamma expansion, `Gamma(-s, as)` for
//! small `s`, the meta-zeta function `sum_{n>=2} (n log n)^{-s}` and the
//! limit identities linking it to `C_{1,1}`.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::accel::least_squares;
use crate::constants::{cpq, euler_gamma};
use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_number, factorial};
use crate::real::{bits_for, from_rational, tanh_sinh, upper_incomplete_gamma, zeta_real, Real};

/// `int_{as}^inf t^{-s-1} e^{-t} (log t)^i dt`.
pub fn log_moment_integral(i: u32, s: &Real, a: &Real, digits: u32) -> Result<Real> {
    if !(*s > 0 && *s < 0.5) {
        return domain("log_moment_integral requires 0 < s < 1/2");
    }
    if *a <= 0 {
        return domain("log_moment_integral requires a > 0");
    }
    let prec = bits_for(digits);
    let wp = prec + 32;
    let s = Float::with_val(wp, s);
    let x0 = Float::with_val(wp, &s * a);
    let zero = Float::with_val(wp, 0);
    let mut total = Float::with_val(wp, 0);
    if x0 < 1 {
        // t = e^{-u}: int_0^L e^{su} e^{-e^{-u}} (-u)^i du
        let l = Float::with_val(wp, -Float::with_val(wp, x0.ln_ref()));
        let v = tanh_sinh(&zero, &l, wp, |node| {
            let u = node.x;
            let e = Float::with_val(wp, -Float::with_val(wp, -u).exp()).exp();
            let g = Float::with_val(wp, Float::with_val(wp, u * &s).exp()) * e;
            let p = Float::with_val(wp, u).pow(i);
            if i.is_multiple_of(2) {
                g * p
            } else {
                -(g * p)
            }
        })?;
        total += v;
    }
    // t = e^v over [max(0, log x0), v_max]
    let v0 = if x0 < 1 { zero.clone() } else { Float::with_val(wp, x0.ln_ref()) };
    let v_max = Float::with_val(wp, (wp as f64 * std::f64::consts::LN_2 + 60.0).ln());
    if v0 < v_max {
        let v = tanh_sinh(&v0, &v_max, wp, |node| {
            let v = node.x;
            let e = Float::with_val(wp, -Float::with_val(wp, v.exp_ref())).exp();
            let g = Float::with_val(wp, -Float::with_val(wp, v * &s)).exp() * e;
            g * Float::with_val(wp, v).pow(i)
        })?;
        total += v;
    }
    Ok(Float::with_val(prec, total))
}

/// Fit of one `c_i`.
#[derive(Debug, Clone)]
pub struct FitDiagnostic {
    pub s_grid: Vec<f64>,
    pub residual: Real,
    /// The fitted coefficient of `s`, an estimate of `-c_{i+1}`.
    pub next_estimate: Real,
}

#[derive(Debug, Clone)]
pub struct BootstrapTable {
    pub c: Vec<Real>,
    pub diagnostics: Vec<FitDiagnostic>,
}

const GRID: usize = 24;

// each decade the grid moves toward 0 buys about 3.6 digits in c_i
fn s_grid(digits: u32) -> Vec<f64> {
    let top = ((digits as f64 - 6.0) / 3.5).ceil().max(3.0);
    (0..GRID).map(|j| 10f64.powf(-top - 0.3 * j as f64)).collect()
}

/// `c_0..c_M` of `int_s^inf t^{-s-1} e^{-t} (log t)^i dt = -(log s)^{i+1}/(i+1) + c_i + O(s)`.
///
/// For each `i` the known singular part and the known `O(s)` logarithmic
/// block are removed and the remainder is fitted on a geometric `s`-grid
/// to `1, s, s^2 (log s)^r, s^3 (log s)^r`.
pub fn bootstrap_ci(max_i: u32, digits: u32) -> Result<BootstrapTable> {
    crate::budget::check_digits(digits)?;
    if max_i > 12 {
        return Err(Error::Budget(format!("bootstrap beyond c_12 (asked c_{max_i})")));
    }
    let grid = s_grid(digits);
    let work = digits + 12 + 2 * max_i;
    let prec = bits_for(work) + 64;
    let jobs: Vec<(u32, usize)> = (0..=max_i).flat_map(|i| (0..GRID).map(move |j| (i, j))).collect();
    let one = Float::with_val(prec, 1);
    let values: Vec<Real> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let s = Float::with_val(prec, Float::parse(format!("{:e}", grid[j])).expect("grid value"));
            log_moment_integral(i, &s, &one, work).map(|v| Float::with_val(prec, v))
        })
        .collect::<Result<_>>()?;
    let mut c = Vec::new();
    let mut diagnostics = Vec::new();
    for i in 0..=max_i {
        let mut rows = Vec::with_capacity(GRID);
        let mut y = Vec::with_capacity(GRID);
        for (j, g) in grid.iter().enumerate() {
            let s = Float::with_val(prec, Float::parse(format!("{g:e}")).expect("grid value"));
            let l = Float::with_val(prec, s.ln_ref());
            let lp = |k: u32| Float::with_val(prec, l.clone().pow(k));
            let mut v = values[i as usize * GRID + j].clone();
            v += lp(i + 1) / (i + 1);
            let mut block = lp(i + 2) / (i + 2);
            for r in 0..=i {
                let t = Float::with_val(prec, factorial(i) / factorial(r)) * lp(r);
                if (r + i) % 2 == 0 {
                    block += t;
                } else {
                    block -= t;
                }
            }
            v -= block * &s;
            let s2 = Float::with_val(prec, s.square_ref());
            let s3 = Float::with_val(prec, &s2 * &s);
            let mut row = vec![Float::with_val(prec, 1), s.clone()];
            row.extend((0..=i + 3).map(|r| Float::with_val(prec, &s2 * lp(r))));
            row.extend((0..=i + 5).map(|r| Float::with_val(prec, &s3 * lp(r))));
            rows.push(row);
            y.push(v);
        }
        let (coef, residual) = least_squares(&rows, &y)?;
        c.push(Float::with_val(bits_for(digits), &coef[0]));
        diagnostics.push(FitDiagnostic {
            s_grid: grid.clone(),
            residual: Float::with_val(53, residual),
            next_estimate: Float::with_val(53, &coef[1]),
        });
    }
    Ok(BootstrapTable { c, diagnostics })
}

/// The small-`s` expansion of `Gamma(-s, as)` truncated after `order`
/// (0, 1 or 2), using `c_1, c_2` from `table`.
pub fn gamma_small_s(a: &Real, s: &Real, order: u32, table: &BootstrapTable) -> Result<Real> {
    if order > 2 {
        return domain("gamma_small_s supports orders 0, 1, 2");
    }
    if *a <= 0 || *s < 0 {
        return domain("gamma_small_s requires a > 0 and s >= 0");
    }
    if (order as usize) > table.c.len() || (order == 2 && table.c.len() < 3) {
        return domain("bootstrap table too short for this order");
    }
    let prec = a.prec().max(s.prec());
    let gamma = euler_gamma(prec);
    if s.is_zero() {
        return domain("gamma_small_s needs s > 0 for the logarithm");
    }
    let l = Float::with_val(prec, Float::with_val(prec, a * s).ln());
    let mut v = Float::with_val(prec, -&l) - &gamma;
    if order >= 1 {
        let b = Float::with_val(prec, l.square_ref()) / 2u32 + a - &table.c[1];
        v += b * s;
    }
    if order >= 2 {
        let l3 = Float::with_val(prec, l.clone().pow(3u32));
        let b = -l3 / 6u32 - Float::with_val(prec, a * &l) + Float::with_val(prec, &table.c[2] / 2u32)
            - Float::with_val(prec, a.square_ref()) / 4u32
            + a;
        v += b * Float::with_val(prec, s.square_ref());
    }
    Ok(v)
}

/// `Gamma(-s, as)` itself, for comparison with [`gamma_small_s`].
pub fn gamma_minus_s(a: &Real, s: &Real) -> Result<Real> {
    let prec = a.prec().max(s.prec());
    upper_incomplete_gamma(&Float::with_val(prec, -s), &Float::with_val(prec, a * s))
}

// power series helpers, coefficients in h

// log(1 + w) for w_0 = 0, from L' = w'/(1+w)
fn series_log1p(w: &[Real], wp: u32) -> Vec<Real> {
    let n = w.len();
    let mut one_w = w.to_vec();
    one_w[0] += 1u32;
    let dw: Vec<Real> = (0..n).map(|k| if k + 1 < n { Float::with_val(wp, &w[k + 1] * (k as u32 + 1)) } else { Float::with_val(wp, 0) }).collect();
    // q = dw / (1+w)
    let mut q = vec![Float::with_val(wp, 0); n];
    for k in 0..n {
        let mut acc = dw[k].clone();
        for i in 1..=k {
            acc -= Float::with_val(wp, &one_w[i] * &q[k - i]);
        }
        q[k] = acc;
    }
    let mut out = vec![Float::with_val(wp, 0); n];
    for k in 1..n {
        out[k] = Float::with_val(wp, &q[k - 1] / k as u32);
    }
    out
}

fn series_exp(g: &[Real], wp: u32) -> Vec<Real> {
    let n = g.len();
    let mut e = vec![Float::with_val(wp, 0); n];
    e[0] = Float::with_val(wp, g[0].exp_ref());
    for k in 1..n {
        let mut acc = Float::with_val(wp, 0);
        for m in 1..=k {
            acc += Float::with_val(wp, &g[m] * &e[k - m]) * m as u32;
        }
        e[k] = acc / k as u32;
    }
    e
}

/// Number of terms summed directly before the tail expansion takes over.
pub fn meta_zeta_cut(digits: u32) -> u64 {
    10_000u64.max(digits as u64 * digits as u64)
}

/// `int_N^inf (x log x)^{-s} dx = (s-1)^{s-1} Gamma(1-s, (s-1) log N)`.
pub fn meta_zeta_integral(s: &Real, big_n: &Real) -> Result<Real> {
    let wp = s.prec();
    let sm1 = Float::with_val(wp, s - 1u32);
    let x = Float::with_val(wp, &sm1 * Float::with_val(wp, big_n.ln_ref()));
    let g = upper_incomplete_gamma(&Float::with_val(wp, 1 - s), &x)?;
    let pre = Float::with_val(wp, Float::with_val(wp, sm1.ln_ref()) * &sm1).exp();
    Ok(pre * g)
}

/// `sum_{n>=2} (n log n)^{-s}` for `s > 1`: a direct sum below `N` and the
/// Euler-Maclaurin tail (integral, half term, derivative corrections) above.
pub fn meta_zeta(s: &Real, digits: u32) -> Result<Real> {
    meta_zeta_with_cut(s, digits, meta_zeta_cut(digits))
}

/// [`meta_zeta`] with the direct sum stopped at `big_n`.
pub fn meta_zeta_with_cut(s: &Real, digits: u32, big_n: u64) -> Result<Real> {
    if big_n < 100 {
        return domain("meta_zeta cut must be at least 100");
    }
    if !(*s > 1) {
        return domain("meta_zeta requires s > 1");
    }
    crate::budget::check_digits(digits)?;
    let prec = bits_for(digits);
    let wp = prec + 48;
    let s = Float::with_val(wp, s);
    let phi = |n: u64| {
        let ln = Float::with_val(wp, n).ln();
        let t = Float::with_val(wp, (Float::with_val(wp, &ln + Float::with_val(wp, ln.ln_ref()))) * &s);
        Float::with_val(wp, -t).exp()
    };
    let direct: Vec<Real> = (2..big_n).into_par_iter().map(phi).collect();
    let mut sum = direct.iter().fold(Float::with_val(wp, 0), |acc, t| acc + t);
    let nf = Float::with_val(wp, big_n);
    sum += meta_zeta_integral(&s, &nf)?;
    let phi_n = phi(big_n);
    sum += Float::with_val(wp, &phi_n / 2u32);
    // pick the order from |B_{2j}|/(2j)! phi^{(2j-1)}(N) ~ 2 phi(N) / (2 pi N)^{2j-1}/(2pi)
    let log10_phi = -s.to_f64() * ((big_n as f64).ln() + (big_n as f64).ln().ln()) / std::f64::consts::LN_10;
    let per = (2.0 * std::f64::consts::PI * big_n as f64).log10();
    let mut m = 1usize;
    while log10_phi - (2 * m + 1) as f64 * per > -(digits as f64) - 6.0 {
        m += 1;
    }
    let len = 2 * m + 1;
    // phi(N + h) = exp(-s (log(N+h) + log log(N+h)))
    let ln_n = Float::with_val(wp, nf.ln_ref());
    let mut delta = vec![Float::with_val(wp, 0); len];
    for (r, d) in delta.iter_mut().enumerate().skip(1) {
        let v = Float::with_val(wp, nf.clone().pow(-(r as i32))) / r as u32;
        *d = if r % 2 == 1 { v } else { -v };
    }
    let w: Vec<Real> = delta.iter().map(|d| Float::with_val(wp, d / &ln_n)).collect();
    let ll = series_log1p(&w, wp);
    let mut g: Vec<Real> = (0..len).map(|r| Float::with_val(wp, &delta[r] + &ll[r])).collect();
    g[0] = Float::with_val(wp, &ln_n + Float::with_val(wp, ln_n.ln_ref()));
    for v in g.iter_mut() {
        *v *= &s;
        *v = -v.clone();
    }
    let taylor = series_exp(&g, wp);
    for j in 1..=m {
        let r = 2 * j - 1;
        let deriv = Float::with_val(wp, &taylor[r] * Float::with_val(wp, factorial(r as u32)));
        let c = from_rational(wp, &(bernoulli_number(2 * j) / factorial(2 * j as u32)));
        sum -= c * deriv;
    }
    Ok(Float::with_val(prec, sum))
}

/// `sum_{n>=2} (n log n)^{-s} - int_2^inf (x log x)^{-s} dx`, regular at `s = 1`.
pub fn meta_zeta_regular_part(s: &Real, digits: u32) -> Result<Real> {
    let prec = bits_for(digits) + 16;
    let sf = Float::with_val(prec, s);
    let m = meta_zeta(&sf, digits + 4)?;
    let i = meta_zeta_integral(&sf, &Float::with_val(prec, 2))?;
    Ok(Float::with_val(bits_for(digits), m - i))
}

/// Value at `x = 0` of the interpolating polynomial through `(x_j, y_j)`.
pub fn extrapolate_to_zero(x: &[Real], y: &[Real]) -> Real {
    let wp = y[0].prec();
    let mut acc = Float::with_val(wp, 0);
    for (j, yj) in y.iter().enumerate() {
        let mut w = Float::with_val(wp, 1);
        for (k, xk) in x.iter().enumerate() {
            if k != j {
                w *= Float::with_val(wp, xk / Float::with_val(wp, xk - &x[j]));
            }
        }
        acc += w * yj;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbelLimit {
    ZetaGamma,
    MetazetaC11,
}

impl std::str::FromStr for AbelLimit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta_gamma" => Ok(AbelLimit::ZetaGamma),
            "metazeta_C11" | "metazeta_c11" => Ok(AbelLimit::MetazetaC11),
            _ => domain(format!("unknown limit '{s}' (zeta_gamma, metazeta_C11)")),
        }
    }
}

/// The `s -> 1` side and the discrete side of a limit identity.
#[derive(Debug, Clone)]
pub struct AbelPair {
    pub s_limit: Real,
    pub discrete_limit: Real,
    /// The `s`-grid (as `s - 1`) used for the polynomial extrapolation.
    pub grid: Vec<f64>,
}

/// `zeta_gamma`: `lim (zeta(s) - 1/(s-1))` against `lim (H_b - log b) = gamma`;
/// `metazeta_C11`: `lim (meta_zeta(s) - int_2^inf (x log x)^{-s} dx)` against
/// `C_{1,1} + log log 2`.
pub fn abel_limit_check(which: AbelLimit, digits: u32) -> Result<AbelPair> {
    abel_limit_on_grid(which, digits, &default_grid(which, digits))
}

fn default_grid(which: AbelLimit, digits: u32) -> Vec<f64> {
    let k = (digits as usize / 3).clamp(4, 14);
    match which {
        AbelLimit::ZetaGamma => (1..=k).map(|j| 0.02 * j as f64).collect(),
        AbelLimit::MetazetaC11 => (1..=k).map(|j| 0.05 * j as f64).collect(),
    }
}

pub fn abel_limit_on_grid(which: AbelLimit, digits: u32, grid: &[f64]) -> Result<AbelPair> {
    if grid.len() < 2 {
        return domain("need at least two grid points");
    }
    let prec = bits_for(digits) + 32;
    let xs: Vec<Real> = grid.iter().map(|&e| Float::with_val(prec, Float::parse(format!("{e:e}")).expect("grid"))).collect();
    let ys: Vec<Real> = xs
        .par_iter()
        .map(|e| {
            let s = Float::with_val(prec, e + 1u32);
            match which {
                AbelLimit::ZetaGamma => {
                    let z = zeta_real(&Float::with_val(prec + 64, &s))?;
                    Ok(Float::with_val(prec, z - Float::with_val(prec + 64, e.recip_ref())))
                }
                AbelLimit::MetazetaC11 => {
                    meta_zeta_regular_part(&s, digits + 8).map(|v| Float::with_val(prec, v))
                }
            }
        })
        .collect::<Result<_>>()?;
    let s_limit = Float::with_val(bits_for(digits), extrapolate_to_zero(&xs, &ys));
    let discrete_limit = match which {
        AbelLimit::ZetaGamma => euler_gamma(bits_for(digits)),
        AbelLimit::MetazetaC11 => {
            let c = cpq(1, 1, digits)?.value;
            let l2 = Float::with_val(prec, 2).ln();
            Float::with_val(bits_for(digits), c + Float::with_val(prec, l2.ln_ref()))
        }
    };
    Ok(AbelPair { s_limit, discrete_limit, grid: grid.to_vec() })
}

/// Estimate of `lim_{s->1} (meta_zeta(s) + log(s-1))` from `s`-values: the
/// regular part `meta_zeta - int_2^inf` is extrapolated polynomially and the
/// integral's own limit `-gamma - log log 2` is added back.
pub fn meta_zeta_log_limit(s_values: &[f64], digits: u32) -> Result<Real> {
    let prec = bits_for(digits) + 32;
    let xs: Vec<Real> = s_values
        .iter()
        .map(|&s| Float::with_val(prec, Float::with_val(prec, Float::parse(format!("{s}")).expect("s")) - 1u32))
        .collect();
    let ys: Vec<Real> = xs
        .par_iter()
        .map(|e| meta_zeta_regular_part(&Float::with_val(prec, e + 1u32), digits + 8).map(|v| Float::with_val(prec, v)))
        .collect::<Result<_>>()?;
    let reg = extrapolate_to_zero(&xs, &ys);
    let l2 = Float::with_val(prec, 2).ln();
    let lim = reg - euler_gamma(prec) - Float::with_val(prec, l2.ln_ref());
    Ok(Float::with_val(bits_for(digits), lim))
}
