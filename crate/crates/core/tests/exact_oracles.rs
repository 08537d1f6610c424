use asymlog::exact::*;
use proptest::prelude::*;

#[test]
fn partition_route_matches_recursion() {
    for r in 0..=12u32 {
        for n in 0..=60u64 {
            assert_eq!(stirling_from_partitions(r, n), stirling_s(r as i64, 1, n as i64).unwrap(), "r={r} n={n}");
        }
    }
}

#[test]
fn harmonic_route_matches_direct() {
    for r in 1..=8u32 {
        for n in 0..=40u64 {
            assert_eq!(harmonic_from_stirlings(r, n).unwrap(), harmonic_number(n, r), "r={r} n={n}");
        }
    }
}

#[test]
fn s_matches_first_kind() {
    for t in 1..=40i64 {
        for r in 0..=t {
            let lhs = stirling_s(r, 1, t).unwrap() * factorial(t as u32);
            let rhs = stirling_first_kind(t as u64 + 1, r as u64 + 1).unwrap();
            assert_eq!(lhs, Rational::from(rhs), "t={t} r={r}");
        }
    }
}

#[test]
fn bernoulli_recurrence() {
    let b = bernoulli_numbers(100);
    for n in 2..=100usize {
        let mut acc = Rational::new();
        for (r, br) in b.iter().enumerate().take(n + 1) {
            acc += Rational::from(br * binomial(n as i64, r as i64));
        }
        assert_eq!(acc, b[n], "n={n}");
    }
    assert_eq!(b[1], Rational::from((-1, 2)));
    assert_eq!(b[12], Rational::from((-691, 2730)));
}

#[test]
fn c_table_consistency() {
    for j in -10..=20i64 {
        for i in 3..=12i64 {
            let lhs = c_table(j, i).unwrap();
            let rhs = c_table(j - 1, i).unwrap() - c_table(j - 1, i - 1).unwrap();
            assert_eq!(lhs, rhs, "j={j} i={i}");
        }
    }
    assert!(c_table(0, 1).is_err());
}

#[test]
fn elementary_symmetric_regime() {
    for n in 3..=30i64 {
        let lhs = stirling_s(n - 2, 1, n).unwrap() * factorial(n as u32);
        let rhs = Rational::from(n * (n + 1) * (3 * n * n - n - 2)) / 24u32;
        assert_eq!(lhs, rhs, "n={n}");
    }
}

// three leading terms of S_{r,1,n} at n = 10^6 with harmonic numbers in f64
#[test]
fn leading_stirling_asymptotics() {
    let n = 1_000_000u64;
    let mut h = [0f64; 4];
    for k in (1..=n).rev() {
        let kf = k as f64;
        for (i, hi) in h.iter_mut().enumerate().skip(1) {
            *hi += kf.powi(-(i as i32));
        }
    }
    let s = |r: u32| match r {
        1 => h[1],
        2 => (h[1] * h[1] - h[2]) / 2.0,
        _ => h[3] / 3.0 - h[2] * h[1] / 2.0 + h[1].powi(3) / 6.0,
    };
    let l = (n as f64).ln();
    let g = 0.577_215_664_901_532_9_f64;
    let z2 = std::f64::consts::PI.powi(2) / 6.0;
    let fact = |k: i32| (1..=k.max(0)).product::<i32>() as f64;
    for r in 1..=3u32 {
        let ri = r as i32;
        let mut approx = l.powi(ri) / fact(ri) + g * l.powi(ri - 1) / fact(ri - 1);
        if r >= 2 {
            approx += (g * g - z2) / (2.0 * fact(ri - 2)) * l.powi(ri - 2);
        }
        let bound = l.powi(ri - 3) * 10.0;
        assert!((s(r) - approx).abs() < bound, "r={r}: {} vs {approx}", s(r));
    }
}

#[test]
fn rational_text_round_trip() {
    let q = Rational::from((-691, 2730));
    assert_eq!(rational_to_string(&q), "-691/2730");
    assert_eq!(rational_from_str("-691/2730"), Some(q));
    assert_eq!(rational_from_str("7"), Some(Rational::from(7)));
    assert_eq!(rational_from_str("1/0"), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_recursion_in_t(r in 1i64..8, s in 1u32..5, t in 1i64..40) {
        // S_{r,s,t} = S_{r,s,t-1} + S_{r-1,s,t-1}/t
        let lhs = stirling_s(r, s, t).unwrap();
        let rhs = stirling_s(r, s, t - 1).unwrap() + stirling_s(r - 1, s, t - 1).unwrap() / Integer::from(t);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn first_kind_row_sums_to_factorial(n in 0usize..60) {
        let row = stirling_first_kind_row(n);
        let total: Integer = row.iter().sum();
        prop_assert_eq!(total, factorial(n as u32));
    }

    #[test]
    fn harmonic_prefix_consistent(n in 0u64..80, i in 1u32..6) {
        prop_assert_eq!(&harmonic_prefix(n, i)[n as usize], &harmonic_number(n, i));
    }

    #[test]
    fn closed_form_when_defined(j in 1i64..10, i in 3i64..14) {
        if let Some(c) = c_table_closed_form(j, i) {
            prop_assert_eq!(c, c_table(j, i).unwrap());
        }
    }

    #[test]
    fn partitions_cover(r in 0u32..14) {
        for p in partitions(r) {
            prop_assert_eq!(p.total(), r);
        }
    }
}
