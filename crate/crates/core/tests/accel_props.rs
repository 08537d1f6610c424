use asymlog::accel::*;
use asymlog::exact::harmonic_number;
use asymlog::real::{agreeing_digits, bits_for, euler_gamma, Real};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

fn harmonic_minus_log(n_max: i64, digits: u32) -> Sequence {
    let prec = bits_for(digits);
    Sequence::from_fn(1, n_max, |n| {
        let h = Float::with_val(prec, &harmonic_number(n as u64, 1));
        h - Float::with_val(prec, n).ln()
    })
    .unwrap()
}

#[test]
fn harmonic_recovers_gamma_and_coefficients() {
    let s = harmonic_minus_log(400, 30);
    let t = asympk_transform(&s, 8).unwrap();
    let g = euler_gamma(bits_for(40));
    assert!(agreeing_digits(&g, t.last()) >= 12.0);
    let c1 = extract_coefficient(&s, 1, 8).unwrap();
    assert!((c1.value.to_f64() - 0.5).abs() < 1e-8);
    let c2 = extract_coefficient(&s, 2, 8).unwrap();
    assert!((c2.value.to_f64() + 1.0 / 12.0).abs() < 1e-8);
}

// s_n = gamma + sum_{j>=1} (-1)^j / (j n^j) rounded to 30 digits; the
// reported digits should track the true ones
#[test]
fn estimated_digits_track_truth() {
    let digits = 30;
    let prec = bits_for(digits);
    let g = euler_gamma(prec + 64);
    for k in [4u32, 6, 8, 10] {
        let s = Sequence::from_fn(50, 120, |n| {
            let x = Float::with_val(prec + 64, n).recip();
            let l = Float::with_val(prec + 64, Float::with_val(prec + 64, &x + 1u32).ln());
            Float::with_val(prec - 40, &g + l)
        })
        .unwrap();
        let e = extract_coefficient(&s, 0, k).unwrap();
        let truth = agreeing_digits(&g, &e.value);
        assert!(
            (e.estimated_digits - truth).abs() <= 2.0,
            "k={k}: reported {} true {truth}",
            e.estimated_digits
        );
    }
}

fn poly_sequence(c: &[Rational], a: i64, b: i64, prec: u32) -> Sequence {
    Sequence::from_fn(a, b, |n| {
        let mut acc = Rational::new();
        for (j, cj) in c.iter().enumerate() {
            acc += Rational::from(cj / rug::Integer::from(n).pow(j as u32));
        }
        Float::with_val(prec, &acc)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_on_polynomials_in_one_over_n(
        k in 1u32..7,
        nums in proptest::collection::vec(-50i64..50, 7),
        den in 1i64..20,
    ) {
        let prec = 256;
        let c: Vec<Rational> = nums.iter().take(k as usize + 1).map(|&x| Rational::from((x, den))).collect();
        let s = poly_sequence(&c, 10, 40, prec);
        let t = asympk_transform(&s, k).unwrap();
        let c0 = Float::with_val(prec, &c[0]);
        for v in &t.values {
            let d: Real = Float::with_val(prec, v - &c0).abs();
            prop_assert!(d.to_f64() < 1e-60);
        }
    }

    #[test]
    fn error_order_law(k in 1u32..6, c in 1i64..9) {
        let prec = 256;
        let coeffs: Vec<Rational> = (0..=k + 1)
            .map(|j| if j == 0 { Rational::from(3) } else if j == k + 1 { Rational::from(c) } else { Rational::new() })
            .collect();
        let s = poly_sequence(&coeffs, 200, 200 + k as i64 + 1, prec);
        let t = asympk_transform(&s, k).unwrap();
        let n = t.first_index as f64;
        let dev = t.values[0].to_f64() - 3.0;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * c as f64 / n.powi(k as i32 + 1);
        prop_assert!((dev / want - 1.0).abs() < 0.1, "ratio {}", dev / want);
    }
}

#[test]
fn csv_ingestion() {
    let s = parse_csv("# values\n1,0.5\n2,0.25\n3,0.125\n", 128).unwrap();
    assert_eq!(s.first_index, 1);
    assert_eq!(s.len(), 3);
    assert!(parse_csv("1,0.5\n3,0.25\n", 64).is_err());
    assert!(asympk_transform(&s, 3).is_err());
}

#[test]
fn least_squares_recovers_exact_fit() {
    let prec = 200;
    let rows: Vec<Vec<Real>> =
        (1..=8).map(|i| (0..3).map(|j| Float::with_val(prec, i).pow(j as u32)).collect()).collect();
    let y: Vec<Real> = (1..=8).map(|i| Float::with_val(prec, 2 - 3 * i + 5 * i * i)).collect();
    let (c, res) = least_squares(&rows, &y).unwrap();
    assert!((c[0].to_f64() - 2.0).abs() < 1e-40 && (c[1].to_f64() + 3.0).abs() < 1e-40);
    assert!((c[2].to_f64() - 5.0).abs() < 1e-40 && res.to_f64() < 1e-40);
}
