use rug::ops::Pow;
use rug::{Integer, Rational};

/// Generalized harmonic number `H_n^(i) = sum_{k=1}^n k^(-i)`.
///
/// Panics if `i == 0`.
pub fn harmonic_number(n: u64, i: u32) -> Rational {
    assert!(i >= 1, "harmonic order must be positive");
    let mut acc = Rational::new();
    for k in 1..=n {
        acc += Rational::from((1, Integer::from(k).pow(i)));
    }
    acc
}

/// `[H_0^(i), H_1^(i), ..., H_n^(i)]`.
pub fn harmonic_prefix(n: u64, i: u32) -> Vec<Rational> {
    assert!(i >= 1, "harmonic order must be positive");
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::new();
    out.push(acc.clone());
    for k in 1..=n {
        acc += Rational::from((1, Integer::from(k).pow(i)));
        out.push(acc.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(harmonic_number(3, 1), Rational::from((11, 6)));
        assert_eq!(harmonic_number(0, 5), 0);
        assert_eq!(harmonic_number(4, 2), Rational::from((205, 144)));
        assert_eq!(harmonic_prefix(4, 2)[4], harmonic_number(4, 2));
    }
}
