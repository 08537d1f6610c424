use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::harmonic::harmonic_number;
use super::partition::partitions;
use crate::error::{domain, Result};

struct Table {
    t_max: i64,
    r_max: i64,
    // cols[t - (s - 1)][r] for r <= min(r_max, t - s + 1)
    cols: Vec<Vec<Rational>>,
}

impl Table {
    fn build(s: u32, r_max: i64, t_max: i64) -> Table {
        let t0 = s as i64 - 1;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity((t_max - t0 + 1).max(1) as usize);
        cols.push(vec![Rational::from(1)]);
        for t in (t0 + 1)..=t_max {
            let prev = cols.last().unwrap();
            let len = ((t - s as i64 + 1).min(r_max) + 1) as usize;
            let mut col = Vec::with_capacity(len);
            for r in 0..len {
                let mut v = prev.get(r).cloned().unwrap_or_default();
                if r > 0 {
                    if let Some(p) = prev.get(r - 1) {
                        v += Rational::from(p / t);
                    }
                }
                col.push(v);
            }
            cols.push(col);
        }
        Table { t_max, r_max, cols }
    }

    fn get(&self, s: u32, r: i64, t: i64) -> Rational {
        let c = &self.cols[(t - (s as i64 - 1)) as usize];
        c.get(r as usize).cloned().unwrap_or_default()
    }
}

static TABLES: RwLock<Option<HashMap<u32, Arc<Table>>>> = RwLock::new(None);

fn table_for(s: u32, r: i64, t: i64) -> Arc<Table> {
    {
        let guard = TABLES.read().unwrap();
        if let Some(tab) = guard.as_ref().and_then(|m| m.get(&s)) {
            if tab.t_max >= t && tab.r_max >= r {
                return tab.clone();
            }
        }
    }
    let mut guard = TABLES.write().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    let (old_t, old_r) = map.get(&s).map(|tab| (tab.t_max, tab.r_max)).unwrap_or((0, 0));
    if old_t >= t && old_r >= r {
        return map[&s].clone();
    }
    let t_new = if t > old_t { t.max(old_t * 2).max(16) } else { old_t };
    let r_new = if r > old_r { r.max(old_r * 2).max(4) } else { old_r };
    let tab = Arc::new(Table::build(s, r_new, t_new));
    map.insert(s, tab.clone());
    tab
}

/// `S_{r,s,t}`: the sum of `1/(i_1 ... i_r)` over `s <= i_1 < ... < i_r <= t`.
///
/// `S_{0,s,t} = 1` for `t >= s - 1`; zero for `r < 0` or `t < r + s - 1`.
pub fn stirling_s(r: i64, s: u32, t: i64) -> Result<Rational> {
    if s < 1 {
        return domain("stirling_S requires s >= 1");
    }
    Ok(srst(r, s, t))
}

pub(crate) fn srst(r: i64, s: u32, t: i64) -> Rational {
    debug_assert!(s >= 1);
    if r < 0 || t < r + s as i64 - 1 {
        return Rational::new();
    }
    if r == 0 {
        return Rational::from(1);
    }
    table_for(s, r, t).get(s, r, t)
}

const ROW_CACHE_LIMIT: usize = 400;
static ROWS: RwLock<Vec<Vec<Integer>>> = RwLock::new(Vec::new());

/// Coefficients `[n,0], ..., [n,n]` of `x(x+1)...(x+n-1)`.
pub fn stirling_first_kind_row(n: usize) -> Vec<Integer> {
    if n <= ROW_CACHE_LIMIT {
        {
            let rows = ROWS.read().unwrap();
            if let Some(row) = rows.get(n) {
                return row.clone();
            }
        }
        let mut rows = ROWS.write().unwrap();
        if rows.is_empty() {
            rows.push(vec![Integer::from(1)]);
        }
        while rows.len() <= n {
            let next = next_row(rows.last().unwrap());
            rows.push(next);
        }
        return rows[n].clone();
    }
    let mut row = stirling_first_kind_row(ROW_CACHE_LIMIT);
    for _ in ROW_CACHE_LIMIT..n {
        row = next_row(&row);
    }
    row
}

// row_{m+1}[k] = row_m[k-1] + m row_m[k]
fn next_row(row: &[Integer]) -> Vec<Integer> {
    let m = row.len() - 1;
    let mut out = vec![Integer::new(); m + 2];
    for (k, c) in row.iter().enumerate() {
        out[k] += Integer::from(c * m as u64);
        out[k + 1] += c;
    }
    out
}

/// Unsigned Stirling number of the first kind `[n, k]`.
pub fn stirling_first_kind(n: u64, k: u64) -> Result<Integer> {
    if k > n {
        return domain(format!("stirling_first_kind requires k <= n (got n={n}, k={k})"));
    }
    Ok(stirling_first_kind_row(n as usize)[k as usize].clone())
}

/// `S_{r,1,n}` evaluated through the partition sum over harmonic numbers.
pub fn stirling_from_partitions(r: u32, n: u64) -> Rational {
    let h: Vec<Rational> = (1..=r.max(1)).map(|j| harmonic_number(n, j)).collect();
    let mut total = Rational::new();
    for part in partitions(r) {
        let mut prod = Rational::from(1);
        for &(rj, ij) in &part.parts {
            let base = Rational::from(&h[rj as usize - 1] / rj);
            let mut term = base.pow(ij as i32);
            term /= Integer::from(Integer::factorial(ij));
            if ij % 2 == 1 {
                term = -term;
            }
            prod *= term;
        }
        total += prod;
    }
    if r % 2 == 1 {
        -total
    } else {
        total
    }
}

/// `H_n^(r)` evaluated through the inverted partition sum over `S_{r_j,1,n}`.
pub fn harmonic_from_stirlings(r: u32, n: u64) -> Result<Rational> {
    if r < 1 {
        return domain("harmonic_from_stirlings requires r >= 1");
    }
    let s: Vec<Rational> = (0..=r).map(|j| srst(j as i64, 1, n as i64)).collect();
    let mut total = Rational::new();
    for part in partitions(r) {
        let len = part.length();
        let mut term = Rational::from(Integer::from(Integer::factorial(len - 1)));
        for &(rj, ij) in &part.parts {
            term /= Integer::from(Integer::factorial(ij));
            term *= s[rj as usize].clone().pow(ij as i32);
        }
        if len % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total *= r;
    Ok(if r % 2 == 1 { -total } else { total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_values() {
        assert_eq!(srst(1, 1, 3), Rational::from((11, 6)));
        assert_eq!(srst(3, 1, 2), 0);
        assert_eq!(srst(2, 1, 3), 1);
        assert_eq!(srst(0, 3, 2), 1);
        assert_eq!(srst(0, 3, 1), 0);
        assert_eq!(srst(-1, 1, 5), 0);
        assert!(stirling_s(1, 0, 3).is_err());
        // 1/(2*3) + 1/(2*4) + 1/(3*4)
        assert_eq!(srst(2, 2, 4), Rational::from((3, 8)));
    }

    #[test]
    fn first_kind() {
        assert_eq!(stirling_first_kind(4, 2).unwrap(), 11);
        assert_eq!(stirling_first_kind(5, 5).unwrap(), 1);
        assert!(stirling_first_kind(3, 4).is_err());
        let rel = Rational::from((stirling_first_kind(4, 2).unwrap(), 6));
        assert_eq!(rel, srst(1, 1, 3));
    }

    #[test]
    fn partition_routes() {
        assert_eq!(stirling_from_partitions(2, 3), 1);
        assert_eq!(stirling_from_partitions(0, 7), 1);
        assert_eq!(stirling_from_partitions(4, 6), srst(4, 1, 6));
        assert_eq!(harmonic_from_stirlings(1, 5).unwrap(), Rational::from((137, 60)));
        assert_eq!(harmonic_from_stirlings(2, 3).unwrap(), Rational::from((49, 36)));
        assert_eq!(harmonic_from_stirlings(3, 4).unwrap(), harmonic_number(4, 3));
    }
}
