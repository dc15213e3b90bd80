use std::sync::RwLock;

use dashu_int::IBig;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

static FACTORIALS: RwLock<Vec<IBig>> = RwLock::new(Vec::new());

/// `n!`, memoized for the lifetime of the process.
pub fn factorial(n: usize) -> IBig {
    if let Some(v) = FACTORIALS.read().expect("factorial cache poisoned").get(n) {
        return v.clone();
    }
    let mut table = FACTORIALS.write().expect("factorial cache poisoned");
    if table.is_empty() {
        table.push(IBig::one());
    }
    while table.len() <= n {
        let next = table.last().unwrap() * IBig::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// Binomial coefficient for `r >= 0`, zero when `s < 0` or `s > r`.
pub fn binom_int(r: usize, s: i64) -> IBig {
    if s < 0 || s as u64 > r as u64 {
        return IBig::zero();
    }
    let s = s as usize;
    factorial(r) / (factorial(s) * factorial(r - s))
}

/// `C(r, s)` as a rational, with `C(r, s) = 0` whenever `s < 0` or `r < s`.
///
/// Negative `r` is rejected.
pub fn binom(r: i64, s: i64) -> Result<Rational> {
    if r < 0 {
        return Err(Error::Domain(format!("binomial with negative top argument {r}")));
    }
    Ok(Rational::from(binom_int(r as usize, s)))
}

/// Binomial that treats any negative top argument as zero. Used in sums
/// whose index ranges run past the support.
pub fn binom_or_zero(r: i64, s: i64) -> IBig {
    if r < 0 {
        IBig::zero()
    } else {
        binom_int(r as usize, s)
    }
}

/// `(-1)^e` as an integer.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2).unwrap(), Rational::from(10));
        assert_eq!(binom(2, 5).unwrap(), Rational::zero());
        assert_eq!(binom(7, 0).unwrap(), Rational::one());
        assert_eq!(binom(7, -1).unwrap(), Rational::zero());
        assert_eq!(binom(0, 0).unwrap(), Rational::one());
        assert!(matches!(binom(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorial_table_grows() {
        assert_eq!(factorial(0), IBig::one());
        assert_eq!(factorial(10), IBig::from(3_628_800));
        assert_eq!(factorial(5), IBig::from(120));
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn pascal_rule() {
        for r in 1..40usize {
            for s in -1..=(r as i64 + 1) {
                assert_eq!(
                    binom_int(r, s),
                    binom_int(r - 1, s) + binom_int(r - 1, s - 1),
                    "r={r} s={s}"
                );
            }
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sign(0), 1);
        assert_eq!(sign(3), -1);
        assert_eq!(sign(-3), -1);
        assert_eq!(sign(-2), 1);
    }
}
