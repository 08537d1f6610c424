use super::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn first_coefficients() {
    let a = taylor_coeffs(1, 6).unwrap();
    assert_eq!(a[..3], [q(1, 1), q(-1, 2), q(-1, 12)]);
    assert_eq!(taylor_coeffs(2, 3).unwrap()[2], q(1, 12) * 1);
}

#[test]
fn stirling_route_matches_series() {
    for k in 1..=3 {
        let series = taylor_coeffs(k, 25).unwrap();
        let ns: Vec<u64> = (0..=25).collect();
        assert_eq!(taylor_coeffs_at(k, &ns).unwrap(), series);
    }
}

#[test]
fn small_g() {
    let g = recip_gamma_coeffs(3, 30).unwrap();
    let gamma = crate::constants::euler_gamma(128).to_f64();
    assert!(g[0].to_f64().abs() < 1e-30);
    assert!((g[1].to_f64() + 1.0).abs() < 1e-25);
    assert!((g[2].to_f64() - 2.0 * gamma).abs() < 1e-15);
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((g[3].to_f64() - (-3.0 * gamma * gamma + pi2 / 2.0)).abs() < 1e-14);
}
