//! Exact rational combinatorics: Bernoulli numbers, harmonic numbers, the
//! `S_{r,s,t}` array, Stirling numbers of the first kind, partitions and the
//! `c_{j,i}` table.

mod bernoulli;
mod ctable;
mod harmonic;
mod partition;
mod stirling;

pub use bernoulli::{bernoulli_number, bernoulli_numbers};
pub use ctable::{c_table, c_table_closed_form};
pub use harmonic::{harmonic_number, harmonic_prefix};
pub use partition::{partitions, Partition};
pub use stirling::{
    harmonic_from_stirlings, stirling_first_kind, stirling_first_kind_row, stirling_from_partitions,
    stirling_s,
};

pub(crate) use stirling::srst;

pub use rug::{Integer, Rational};

/// Serializes a rational as `"numerator/denominator"`, always with a slash.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"a/b"` or a plain integer into a rational in lowest terms.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::from((n, d)))
        }
        None => s.parse::<Integer>().ok().map(Rational::from),
    }
}

/// Binomial coefficient `C(n, k)` for signed `n` (generalized binomial).
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::new();
    }
    if n >= 0 {
        if k > n {
            return Integer::new();
        }
        return Integer::from(n).binomial(k as u32);
    }
    let v = Integer::from(-n + k - 1).binomial(k as u32);
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `n!` as an integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `n!/(n-r)!` (falling factorial), zero when `r > n`.
pub fn falling(n: u32, r: u32) -> Integer {
    if r > n {
        return Integer::new();
    }
    let mut acc = Integer::from(1);
    for i in 0..r {
        acc *= n - i;
    }
    acc
}
