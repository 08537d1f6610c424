use std::sync::RwLock;

use rug::{Integer, Rational};

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> Rational {
    {
        let cache = CACHE.read().unwrap();
        if let Some(b) = cache.get(n) {
            return b.clone();
        }
    }
    let mut cache = CACHE.write().unwrap();
    extend(&mut cache, n);
    cache[n].clone()
}

/// `B_0, ..., B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    {
        let cache = CACHE.read().unwrap();
        if cache.len() > n {
            return cache[..=n].to_vec();
        }
    }
    let mut cache = CACHE.write().unwrap();
    extend(&mut cache, n);
    cache[..=n].to_vec()
}

// sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1
fn extend(cache: &mut Vec<Rational>, n: usize) {
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n {
        let m = cache.len();
        if m >= 3 && m % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in cache.iter().enumerate() {
            if *b != 0 {
                acc += Rational::from(&binom * b.numer()) / b.denom();
            }
            binom *= (m + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        cache.push(-acc / (m as u64 + 1));
    }
}
