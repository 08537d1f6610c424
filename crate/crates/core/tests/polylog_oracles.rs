use asymlog::exact::stirling_s;
use asymlog::polylog::*;
use asymlog::real::{bits_for, parse_real, Real};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

const DIGITS: u32 = 40;

fn lit(s: &str) -> Real {
    parse_real(s, bits_for(DIGITS) + 32).unwrap()
}

fn diff(a: &Real, b: &Real) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

#[test]
fn reflection_closure() {
    for j in 2..=6 {
        for x in ["0.1", "0.3", "0.5", "0.7"] {
            let xr = lit(x);
            let a = li_reflection(j, &xr, DIGITS).unwrap();
            let one_minus = Float::with_val(xr.prec(), 1 - &xr);
            let b = polylog(j, &one_minus, DIGITS).unwrap();
            assert!(diff(&a, &b) < 10f64.powi(-(DIGITS as i32 - 3)), "j={j} x={x}");
        }
    }
}

// reference values from an independent multiprecision library
#[test]
fn polylog_reference_values() {
    let cases = [
        (2, "-0.9", "-0.752163179217261620372692713426814468960512822"),
        (3, "0.97", "1.15427127062936345031048961823040841459359979"),
        (5, "-1", "-0.972119770446909305935655143553469532553513362"),
        (4, "0.5", "0.517479061673899386330758161898862945622377475"),
    ];
    for (j, x, want) in cases {
        let v = polylog(j, &lit(x), DIGITS).unwrap();
        assert!(diff(&v, &lit(want)) < 1e-38, "Li_{j}({x})");
    }
}

// S_{n,p}(z) by direct quadrature of its integral representation
#[test]
fn nielsen_reference_values() {
    let cases = [
        (1, 2, "0.3", "0.0281913410841070266329069165560622841235902374"),
        (2, 2, "-0.7", "0.0471199362431786252726617447598709052352301357"),
        (1, 3, "0.8", "0.120936290994630203535450270227867946888551064"),
        (2, 1, "0.6", "0.656002513632980683234661192811332229180275598"),
    ];
    for (k, p, x, want) in cases {
        let v = nielsen(k, p, &lit(x), DIGITS).unwrap();
        assert!(diff(&v, &lit(want)) < 1e-38, "S_{k},{p}({x})");
    }
    let one = lit("1");
    let z3 = Float::with_val(one.prec(), 3u32).zeta();
    assert!(diff(&nielsen(1, 2, &one, DIGITS).unwrap(), &z3) < 1e-38);
}

#[test]
fn nielsen_specializes_to_polylog() {
    for k in 1..=4 {
        for x in ["0.2", "-0.6", "0.9"] {
            let a = nielsen(k, 1, &lit(x), DIGITS).unwrap();
            let b = polylog(k + 1, &lit(x), DIGITS).unwrap();
            assert!(diff(&a, &b) < 1e-38, "k={k} x={x}");
        }
    }
}

#[test]
fn generating_function_coefficients() {
    for p in 1..=4u32 {
        let c = log_power_series(p, 30);
        for (n, cn) in c.iter().enumerate().skip(1) {
            let want = stirling_s(p as i64 - 1, 1, n as i64 - 1).unwrap() / rug::Integer::from(n);
            assert_eq!(cn, &want, "p={p} n={n}");
        }
        assert!(log_power_identity(p, 30).unwrap().iter().all(|c| c.holds));
    }
}

// x d/dx S_{1,p}(x) = (-log(1-x))^p / p!
#[test]
fn nielsen_derivative_coefficients() {
    for p in 1..=4u32 {
        let s = nielsen_coefficients(1, p, 30);
        let l = log_power_series(p, 30);
        for n in 0..=30usize {
            assert_eq!(Rational::from(&s[n] * n as u32), l[n], "p={p} n={n}");
        }
    }
}

#[test]
fn coefficient_identities_to_200() {
    for n in 1..=200u64 {
        assert!(s11_coefficient_identity(n).unwrap().holds, "S11 n={n}");
        assert!(s12_coefficient_identity(n).unwrap().holds, "S12 n={n}");
    }
    for p in 1..=200u64 {
        assert!(s12_reduced_identity(p).unwrap().holds, "reduced p={p}");
    }
}

#[test]
fn bernoulli_identities() {
    for n in 2..=200 {
        assert!(bernoulli_identity_one(n).unwrap().holds, "n={n}");
    }
    for p in 1..=150 {
        let c = bernoulli_conjecture(p).unwrap();
        assert!(c.holds, "p={p}: {} vs {}", c.lhs, c.rhs);
    }
    for p in 1..=4 {
        for n in 2..=50 {
            assert!(harmonic_power_identity(p, n).unwrap().holds, "p={p} n={n}");
        }
    }
    for p in 1..=40 {
        assert!(binomial_harmonic_identity(p).unwrap().iter().all(|c| c.holds), "p={p}");
    }
}

#[test]
fn conjecture_json_line() {
    let c = bernoulli_conjecture(3).unwrap();
    assert_eq!(c.to_json().to_string(), r#"{"identity":"conjecture","p":3,"holds":true,"lhs":"7/4","rhs":"7/4"}"#);
}

#[test]
fn t_numbers_match_definition() {
    assert_eq!(t_numbers(4, 3).unwrap(), Rational::from((3, 4)));
    for j in 3..=6 {
        for n in 1..=8 {
            assert_eq!(t_numbers(j, n).unwrap(), t_numbers_by_definition(j, n).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reflection_random(j in 2u32..7, x in 0.05f64..0.95) {
        let digits = 30;
        let xr = Float::with_val(bits_for(digits) + 32, x);
        let a = li_reflection(j, &xr, digits).unwrap();
        let b = polylog(j, &Float::with_val(xr.prec(), 1 - &xr), digits).unwrap();
        prop_assert!(diff(&a, &b) < 1e-27);
    }

    #[test]
    fn inversion_free_duplication(j in 2u32..6, x in 0.05f64..0.9) {
        // Li_j(x) + Li_j(-x) = 2^{1-j} Li_j(x^2)
        let digits = 30;
        let p = bits_for(digits) + 32;
        let xr = Float::with_val(p, x);
        let a = polylog(j, &xr, digits).unwrap() + polylog(j, &Float::with_val(p, -&xr), digits).unwrap();
        let b = polylog(j, &Float::with_val(p, xr.square_ref()), digits).unwrap()
            / Float::with_val(p, 2u32).pow(j as i32 - 1);
        prop_assert!(diff(&a, &b) < 1e-28);
    }
}
