#![allow(dead_code)]

use asymlog::expansions::{direct_sum, evaluate, evaluate_list, expand, omitted_block, ConstantValues, Family};
use asymlog::real::{format_real, Real};
use asymlog::Error;
use rug::Float;

/// Published `C_{p,q}`, rows `p = 1..6`, columns `q = 0..4`.
pub const TABLE1: [[&str; 5]; 6] = [
    ["-0.24324", "0.794679", "0.605522", "0.237996", "0.106201"],
    ["3.10329", "2.10974", "0.692606", "0.305808", "0.143463"],
    ["4.96079", "2.06589", "0.882388", "0.412914", "0.199091"],
    ["6.00344", "2.55912", "1.18928", "0.573295", "0.28066"],
    ["7.46574", "3.42982", "1.65131", "0.808652", "0.399314"],
    ["9.92015", "4.75831", "2.33023", "1.15106", "0.571244"],
];

/// Published `2^{-q} (log 2)^{-p}` beside it.
pub const TABLE1_LEADING: [[&str; 5]; 6] = [
    ["1.4427", "0.721348", "0.360674", "0.180337", "0.0901684"],
    ["2.08137", "1.04068", "0.520342", "0.260171", "0.130086"],
    ["3.00278", "1.50139", "0.750695", "0.375348", "0.187674"],
    ["4.3321", "2.16605", "1.08302", "0.541512", "0.270756"],
    ["6.24989", "3.12495", "1.56247", "0.781237", "0.390618"],
    ["9.01669", "4.50835", "2.25417", "1.12709", "0.563543"],
];

pub fn significant_digits(printed: &str) -> u32 {
    let digits: String = printed.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len() as u32
}

/// Whether `value` rounds to `printed` at the number of significant digits
/// `printed` shows.
pub fn matches_printed(value: &Real, printed: &str) -> bool {
    let sf = significant_digits(printed);
    let ours: f64 = format_real(value, sf).parse().unwrap();
    let theirs: f64 = printed.parse().unwrap();
    (ours - theirs).abs() <= 1e-12 * theirs.abs()
}

pub fn matches_printed_f64(value: f64, printed: &str) -> bool {
    matches_printed(&rug::Float::with_val(64, value), printed)
}

const SWEEP_DIGITS: u32 = 40;
pub const SWEEP_NS: [u64; 3] = [100, 400, 1600];

fn grid() -> Vec<(Family, u32, u32)> {
    let mut g = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 {
            g.push((Family::S1, p, q));
            g.push((Family::S2, p, q));
            g.push((Family::S4, p, q));
        }
    }
    for p in 1..=2 {
        for q in 1..=3 {
            g.push((Family::S3, p, q));
        }
    }
    g
}

fn shape(np: i64, lp: i64, n: u64) -> f64 {
    let nf = n as f64;
    nf.powi(np as i32) * nf.ln().powi(lp as i32)
}

// |evaluate - direct| against the first omitted Euler-Maclaurin block and
// the declared error order, with the shrink factor on quadrupling n.
// Returns the number of grid cells checked.
pub fn expansion_sweep() -> Result<usize, String> {
    let values = ConstantValues::computing();
    let mut checked = 0;
    for (fam, p, q) in grid() {
        let e = match expand(fam, p, q, 3) {
            Ok(e) => e,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(format!("{fam} p={p} q={q}: {e}")),
        };
        let tag = format!("{fam} p={p} q={q}");
        let block = omitted_block(fam, p, q, 3).map_err(|e| format!("{tag}: {e}"))?;
        let mut errs = Vec::new();
        let mut preds = Vec::new();
        for &n in &SWEEP_NS {
            let v = evaluate(&e, n, &values, SWEEP_DIGITS).map_err(|e| format!("{tag}: {e}"))?;
            let d = direct_sum(fam, p, q, n, SWEEP_DIGITS).map_err(|e| format!("{tag}: {e}"))?;
            let err = Float::with_val(v.prec(), &v - &d).abs().to_f64();
            let pred = evaluate_list(&block, n, &values, SWEEP_DIGITS)
                .map_err(|e| format!("{tag}: {e}"))?
                .abs()
                .to_f64();
            if err > 50.0 * pred {
                return Err(format!("{tag} n={n}: |err| {err:e} vs block {pred:e}"));
            }
            let order = shape(e.error_n_power, e.error_log_power, n);
            if err > 50.0 * order {
                return Err(format!("{tag} n={n}: |err| {err:e} vs order {order:e}"));
            }
            errs.push(err);
            preds.push(pred);
        }
        for w in 0..2 {
            let want = preds[w] / preds[w + 1];
            let got = errs[w] / errs[w + 1];
            if !(got > want / 2.0 && got < want * 2.0) {
                return Err(format!(
                    "{tag}: shrink {got:.4e} from n={} to {}, predicted {want:.4e}",
                    SWEEP_NS[w],
                    SWEEP_NS[w + 1]
                ));
            }
            if want <= 4.0 {
                return Err(format!("{tag}: block does not decay"));
            }
        }
        checked += 1;
    }
    Ok(checked)
}
