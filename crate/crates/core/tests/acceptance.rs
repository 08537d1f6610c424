//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use asymlog::accel::{asympk_transform, extract_coefficient, Sequence};
use asymlog::constants::{cpq, table1, zeta_derivative};
use asymlog::exact::harmonic_number;
use asymlog::metazeta::{bootstrap_ci, meta_zeta_log_limit};
use asymlog::norlund::{asymp_taylor, taylor_coeffs_at};
use asymlog::polylog::li_reflection;
use asymlog::real::{agreeing_digits, bits_for, euler_gamma, log2pi_half, log_integral, parse_real, Real};
use asymlog::suites::{run_suite, Suite, SuiteParams};
use rug::ops::Pow;
use rug::{Float, Rational};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(t: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    if e > budget {
        Err(format!("{what} took {:.1}s, budget {}s", e.as_secs_f64(), budget.as_secs()))
    } else {
        Ok(())
    }
}

fn abs_diff(a: &Real, b: &Real) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

fn c1_table() -> Outcome {
    let t = Instant::now();
    let cells = table1(6).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for c in &cells {
        let printed = common::TABLE1[c.p as usize - 1][c.q as usize];
        if !common::matches_printed(&c.cpq, printed) {
            bad.push(format!("C_{{{},{}}}={} vs {printed}", c.p, c.q, c.cpq.to_f64()));
        }
    }
    within(t, Duration::from_secs(300), "table")?;
    check(
        cells.len() == 30 && bad.is_empty(),
        format!("{} cells, {} mismatches {bad:?}, {:.1}s", cells.len(), bad.len(), t.elapsed().as_secs_f64()),
    )
}

fn c2_named_limits() -> Outcome {
    let prec = bits_for(30);
    let c10 = cpq(1, 0, 20).map_err(|e| e.to_string())?.value;
    let li2 = log_integral(&Float::with_val(prec, 2)).map_err(|e| e.to_string())?;
    let a = Float::with_val(prec, &c10 + &li2).to_f64();
    let c11 = cpq(1, 1, 20).map_err(|e| e.to_string())?.value;
    let ll2 = Float::with_val(prec, Float::with_val(prec, 2).ln()).ln();
    let b = Float::with_val(prec, &c11 + &ll2).to_f64();
    check(
        (a - 0.80192543).abs() < 1e-8 && (b - 0.4281657).abs() < 1e-7,
        format!("C10+li(2) = {a:.10}, C11+loglog2 = {b:.9}"),
    )
}

/// `zeta'(s)` by a Richardson-extrapolated central difference of MPFR's zeta.
fn zeta_prime_fd(s: u32, bits: u32) -> Real {
    let wp = bits * 3;
    let h = Float::with_val(wp, Float::with_val(wp, 10).pow(-(bits as i32) / 12));
    let d = |h: &Real| {
        let a = Float::with_val(wp, Float::with_val(wp, s) + h).zeta();
        let b = Float::with_val(wp, Float::with_val(wp, s) - h).zeta();
        (a - b) / (Float::with_val(wp, h) * 2u32)
    };
    let d1 = d(&h);
    let d2 = d(&Float::with_val(wp, &h / 2u32));
    Float::with_val(bits, (d2 * 4u32 - d1) / 3u32)
}

fn c3_zeta_derivatives() -> Outcome {
    let minute = Duration::from_secs(60);
    let t = Instant::now();
    let z0 = zeta_derivative(1, 0, 40).map_err(|e| e.to_string())?;
    let d0 = agreeing_digits(&-log2pi_half(bits_for(40) + 32), &z0.value);
    within(t, minute, "zeta'(0)")?;
    let t = Instant::now();
    let zm1 = zeta_derivative(0, -1, 30).map_err(|e| e.to_string())?;
    within(t, minute, "zeta(-1)")?;
    let t = Instant::now();
    let z2 = zeta_derivative(1, 2, 30).map_err(|e| e.to_string())?;
    within(t, minute, "zeta'(2)")?;
    let d2 = agreeing_digits(&zeta_prime_fd(2, 400), &z2.value);
    let exact = zm1.exact == Some(Rational::from((-1, 12)));
    check(
        d0 >= 40.0 && exact && d2 >= 25.0,
        format!("zeta'(0) {d0:.1} digits, zeta(-1) exact -1/12: {exact}, zeta'(2) {d2:.1} digits vs finite difference"),
    )
}

fn c4_sweep() -> Outcome {
    let n = common::expansion_sweep()?;
    check(n == 42, format!("{n} (family, p, q) cells at n = {:?}", common::SWEEP_NS))
}

fn c5_suites() -> Outcome {
    let t = Instant::now();
    let suites = [
        Suite::StirlingHarmonic,
        Suite::BernoulliOne,
        Suite::BernoulliConjecture,
        Suite::HarmonicPower,
        Suite::NorlundProduct,
        Suite::BernoulliPolyLink,
        Suite::LogPowerSeries,
    ];
    let mut summary = Vec::new();
    let mut failed = 0;
    for s in suites {
        let params = SuiteParams { max_p: None, max_n: None, k: Some(1) };
        let checks = run_suite(s, params).map_err(|e| format!("{s}: {e}"))?;
        let bad = checks.iter().filter(|c| !c.holds).count();
        failed += bad;
        summary.push(format!("{s} {}/{}", checks.len() - bad, checks.len()));
    }
    within(t, Duration::from_secs(120), "suites")?;
    check(failed == 0, format!("{}, {:.1}s", summary.join(", "), t.elapsed().as_secs_f64()))
}

fn c6_asympk() -> Outcome {
    let prec = bits_for(30);
    let s = Sequence::from_fn(1, 400, |n| {
        let h = Float::with_val(prec, &harmonic_number(n as u64, 1));
        h - Float::with_val(prec, n).ln()
    })
    .map_err(|e| e.to_string())?;
    let t = asympk_transform(&s, 8).map_err(|e| e.to_string())?;
    let dg = agreeing_digits(&euler_gamma(bits_for(40)), t.last());
    let c1 = extract_coefficient(&s, 1, 8).map_err(|e| e.to_string())?.value.to_f64();
    let c2 = extract_coefficient(&s, 2, 8).map_err(|e| e.to_string())?.value.to_f64();
    let e1 = (c1 - 0.5).abs() / 0.5;
    let e2 = (c2 + 1.0 / 12.0).abs() * 12.0;
    check(
        dg >= 12.0 && e1 < 1e-8 && e2 < 1e-8,
        format!("gamma to {dg:.1} digits, c1 rel err {e1:.1e}, c2 rel err {e2:.1e}"),
    )
}

// sum_{k>=1} y^k / k^j until the terms fall below 10^-(digits+10)
fn plain_polylog(j: u32, y: &Real, digits: u32) -> Real {
    let wp = bits_for(digits + 10);
    let eps = Float::with_val(wp, Float::with_val(wp, 10).pow(-(digits as i32 + 10)));
    let mut pow = Float::with_val(wp, y);
    let mut sum = Float::with_val(wp, 0);
    let mut k = 1u32;
    loop {
        let term = Float::with_val(wp, &pow / Float::with_val(wp, k).pow(j));
        sum += &term;
        if term.abs() < eps {
            return sum;
        }
        pow *= y;
        k += 1;
    }
}

fn c7_reflection() -> Outcome {
    let digits = 30;
    let mut worst = 0f64;
    for j in 2..=6 {
        for x in ["0.1", "0.3", "0.5"] {
            let xr = parse_real(x, bits_for(digits + 10)).map_err(|e| e.to_string())?;
            let a = li_reflection(j, &xr, digits).map_err(|e| e.to_string())?;
            let y = Float::with_val(xr.prec(), 1 - &xr);
            worst = worst.max(abs_diff(&a, &plain_polylog(j, &y, digits)));
        }
    }
    check(worst < 1e-27, format!("max |reflection - series| = {worst:.2e} over j=2..6"))
}

fn c8_bootstrap() -> Outcome {
    let t = Instant::now();
    let tab = bootstrap_ci(2, 16).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(180), "bootstrap")?;
    let d0 = agreeing_digits(&-euler_gamma(bits_for(30)), &tab.c[0]);
    let c1 = tab.c[1].to_f64();
    let c2 = tab.c[2].to_f64();
    check(
        d0 >= 10.0 && (c1 - 0.98905).abs() < 1e-4 && (c2 + 1.81497).abs() < 1e-3,
        format!("c0 = -gamma to {d0:.1} digits, c1 = {c1:.8}, c2 = {c2:.8}, {:.1}s", t.elapsed().as_secs_f64()),
    )
}

fn c9_meta_zeta() -> Outcome {
    let lim = meta_zeta_log_limit(&[1.1, 1.05, 1.02, 1.01], 20).map_err(|e| e.to_string())?.to_f64();
    let c11 = cpq(1, 1, 20).map_err(|e| e.to_string())?.value.to_f64();
    let target = c11 - euler_gamma(128).to_f64();
    check(
        (lim - target).abs() < 1e-3 && (lim - 0.217463).abs() < 1e-3,
        format!("extrapolated {lim:.8}, C11 - gamma = {target:.8}"),
    )
}

fn c10_taylor() -> Outcome {
    let ns = [500u64, 1000, 2000, 4000];
    let exact1 = taylor_coeffs_at(1, &ns).map_err(|e| e.to_string())?;
    let mut errs = Vec::new();
    for (&n, a) in ns.iter().zip(&exact1) {
        let v = asymp_taylor(n, 1, 4, 30).map_err(|e| e.to_string())?;
        errs.push((Float::with_val(128, a) / v - 1u32).abs().to_f64());
    }
    let k1 = errs.windows(2).all(|w| w[1] < w[0]) && errs[3] < 0.2;

    let exact2 = taylor_coeffs_at(2, &ns).map_err(|e| e.to_string())?;
    let ratio = |n: u64, a: &Rational, log_pow: i32| {
        let nf = n as f64;
        Float::with_val(128, a).to_f64() / (-2.0 / (nf * nf.ln().powi(log_pow)))
    };
    let sq: Vec<f64> = ns.iter().zip(&exact2).map(|(&n, a)| ratio(n, a, 2)).collect();
    let cube: Vec<f64> = ns.iter().zip(&exact2).map(|(&n, a)| ratio(n, a, 3)).collect();
    let k2 = (sq[3] - 1.0).abs() < 0.2;
    let detail = format!(
        "k=1 rel err {errs:.3?} (decreasing, < 0.2: {k1}); \
         k=2 a_n / (-2/(n log^2 n)) = {sq:.3?} (matches: {k2}); \
         a_n / (-2/(n log^3 n)) = {cube:.3?}"
    );
    check(k1 && k2, detail)
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, c1_table),
        (2, c2_named_limits),
        (3, c3_zeta_derivatives),
        (4, c4_sweep),
        (5, c5_suites),
        (6, c6_asympk),
        (7, c7_reflection),
        (8, c8_bootstrap),
        (9, c9_meta_zeta),
        (10, c10_taylor),
    ];
    let mut failures = 0;
    for (n, f) in criteria {
        match f() {
            Ok(d) => println!("criterion {n}: PASS - {d}"),
            Err(d) => {
                failures += 1;
                println!("criterion {n}: FAIL - {d}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
