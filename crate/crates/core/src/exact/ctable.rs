use std::collections::HashMap;
use std::sync::RwLock;

use rug::{Integer, Rational};

use crate::error::{domain, Result};

static MEMO: RwLock<Option<HashMap<(i64, i64), Rational>>> = RwLock::new(None);

/// The rational constant `c_{j,i}` (`i >= 2`, any integer `j`).
///
/// Column `i = 2` is `(j-3)/2`; for `i >= 3` the value at `j = 1` is
/// `1/((i-1)(i-2))` and other rows follow from
/// `c_{j+1,i} = c_{j,i} - c_{j,i-1}`.
pub fn c_table(j: i64, i: i64) -> Result<Rational> {
    if i < 2 {
        return domain("c_table requires i >= 2");
    }
    Ok(c_value(j, i))
}

/// `(-1)^(j+1) j! / ((i-1)(i-2)...(i-j-1))`, valid for `1 <= j <= i-2`.
pub fn c_table_closed_form(j: i64, i: i64) -> Option<Rational> {
    if j < 1 || j > i - 2 {
        return None;
    }
    let mut den = Integer::from(1);
    for m in (i - j - 1)..=(i - 1) {
        den *= m;
    }
    let num = Integer::from(Integer::factorial(j as u32));
    let q = Rational::from((num, den));
    Some(if (j + 1) % 2 == 0 { q } else { -q })
}

fn c_value(j: i64, i: i64) -> Rational {
    if i == 2 {
        return Rational::from((j - 3, 2));
    }
    if let Some(v) = MEMO.read().unwrap().as_ref().and_then(|m| m.get(&(j, i))) {
        return v.clone();
    }
    let v = if j == 1 {
        Rational::from((1, (i - 1) * (i - 2)))
    } else if j > 1 {
        c_value(j - 1, i) - c_value(j - 1, i - 1)
    } else {
        c_value(j + 1, i) + c_value(j, i - 1)
    };
    MEMO.write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert((j, i), v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::harmonic_number;

    #[test]
    fn documented_values() {
        assert_eq!(c_table(0, 2).unwrap(), Rational::from((-3, 2)));
        assert_eq!(c_table(1, 3).unwrap(), Rational::from((1, 2)));
        assert_eq!(c_table(2, 3).unwrap(), Rational::from((3, 2)));
        assert!(c_table(0, 1).is_err());
    }

    #[test]
    fn diagonals() {
        for i in 3..15i64 {
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(c_table(i - 2, i).unwrap(), Rational::from((sign, i - 1)));
        }
        for i in 2..15i64 {
            let h = harmonic_number((i - 1) as u64, 1);
            let expect = if (i - 1) % 2 == 0 { h } else { -h };
            assert_eq!(c_table(i - 1, i).unwrap(), expect);
        }
    }

    #[test]
    fn closed_form_agrees_with_recursion() {
        for i in 3..16i64 {
            for j in 1..=(i - 2) {
                assert_eq!(c_table(j, i).unwrap(), c_table_closed_form(j, i).unwrap(), "j={j} i={i}");
            }
        }
    }
}
