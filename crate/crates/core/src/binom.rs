//! Exact binomial coefficients.
//!
//! `binom(a, b)` is zero whenever `b > a`; every argument used by this crate
//! is non-negative, so there is no signed variant.

use num_bigint::BigUint;
use num_traits::One;

/// Binomial coefficient as an arbitrary-precision integer.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::default();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) is always divisible by (i + 1) at this point
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient in `u128`, `None` on overflow.
pub fn binomial_u128(a: u64, b: u64) -> Option<u128> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc.checked_mul(u128::from(a - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Row `a` of Pascal's triangle: `binom(a, 0), ..., binom(a, a)`.
pub(crate) fn pascal_row(a: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(a as usize + 1);
    let mut cur = BigUint::one();
    row.push(cur.clone());
    for i in 0..a {
        cur = cur * (a - i) / (i + 1);
        row.push(cur.clone());
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(6, 4), BigUint::from(15u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::default());
        assert_eq!(binomial_u128(10, 5), Some(252));
        assert_eq!(binomial_u128(2, 3), Some(0));
    }

    #[test]
    fn agrees_with_num_integer() {
        for a in 0..60u64 {
            for b in 0..=a {
                let reference = num_integer::binomial(BigUint::from(a), BigUint::from(b));
                assert_eq!(binomial(a, b), reference, "binom({a},{b})");
            }
        }
    }

    #[test]
    fn pascal_row_matches_binomial() {
        let row = pascal_row(30);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(*v, binomial(30, k as u64));
        }
    }

    #[test]
    fn u128_overflow_is_reported() {
        assert!(binomial_u128(200, 100).is_none());
        assert!(binomial_u128(120, 60).is_some());
    }
}
