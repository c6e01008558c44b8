//! Extended binomial coefficients: the coefficients of
//! `(1 + x + ... + x^(p-1))^a`, exact over arbitrary-precision integers.
//!
//! `coeff(a, k)` counts the `a`-tuples with entries in `0..p` summing to `k`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default guard on the row length `a(p-1)`.
pub const DEFAULT_ROW_CAP: u64 = 100_000;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut i = 5u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) || n.is_multiple_of(i + 2) {
            return false;
        }
        i += 6;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The full coefficient row of `(1 + x + ... + x^(p-1))^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    a: u64,
    p: u64,
    coeffs: Vec<BigUint>,
}

impl CoefficientRow {
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Polynomial degree `a(p-1)`.
    pub fn degree(&self) -> u64 {
        self.a * (self.p - 1)
    }

    /// Coefficient of `x^k`; zero outside `0..=a(p-1)`.
    pub fn coeff(&self, k: i64) -> BigUint {
        if k < 0 || k as u64 > self.degree() {
            BigUint::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// `sum_{k=0}^{b} coeff(k)`.
    pub fn partial_sum(&self, b: u64) -> BigUint {
        let end = (b.min(self.degree()) + 1) as usize;
        self.coeffs[..end].iter().sum()
    }

    /// Tail sums indexed by filtration level: entry `d` is
    /// `sum_{k <= a(p-1) - d} coeff(k)`, for `d = 0..=a(p-1)+1`.
    pub fn tail_dimensions(&self) -> Vec<BigUint> {
        let top = self.degree() as usize;
        let mut prefix = Vec::with_capacity(top + 1);
        let mut acc = BigUint::zero();
        for c in &self.coeffs {
            acc += c;
            prefix.push(acc.clone());
        }
        let mut dims: Vec<BigUint> = (0..=top).map(|d| prefix[top - d].clone()).collect();
        dims.push(BigUint::zero());
        dims
    }
}

/// Row of `(1 + x + ... + x^(p-1))^a` with the default size cap.
pub fn multinomial_row(a: u64, p: u64) -> Result<CoefficientRow> {
    multinomial_row_capped(a, p, DEFAULT_ROW_CAP)
}

/// Row computed by `a` successive multiplications with the fixed factor.
pub fn multinomial_row_capped(a: u64, p: u64, cap: u64) -> Result<CoefficientRow> {
    require_prime(p)?;
    let len = a
        .checked_mul(p - 1)
        .filter(|&deg| deg <= cap)
        .ok_or(Error::CapExceeded {
            what: "row length a(p-1)",
            value: a as u128 * (p as u128 - 1),
            cap: cap as u128,
        })?;

    let width = p as usize;
    let mut row = vec![BigUint::one()];
    for _ in 0..a {
        // next[k] = sum_{j<p} row[k-j], as a sliding window over row
        let next_len = row.len() + width - 1;
        let mut next = Vec::with_capacity(next_len);
        let mut window = BigUint::zero();
        for k in 0..next_len {
            if k < row.len() {
                window += &row[k];
            }
            if k >= width {
                window -= &row[k - width];
            }
            next.push(window.clone());
        }
        row = next;
    }
    debug_assert_eq!(row.len() as u64, len + 1);
    Ok(CoefficientRow { a, p, coeffs: row })
}

/// Coefficient of `x^k` in `(1 + ... + x^(p-1))^a`; zero when `k` is out of range.
pub fn multinomial_coeff(a: u64, k: i64, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    if k < 0 || k as u64 > a.saturating_mul(p - 1) {
        return Ok(BigUint::zero());
    }
    Ok(multinomial_row(a, p)?.coeff(k))
}

/// `sum_{k=0}^{b} coeff(a, k, p)`; requires `0 <= b <= a(p-1)`.
pub fn multinomial_partial_sum(a: u64, b: i64, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    let top = a.saturating_mul(p - 1);
    if b < 0 || b as u64 > top {
        return Err(Error::OutOfRange {
            what: "b",
            value: b,
            min: 0,
            max: top.min(i64::MAX as u64) as i64,
        });
    }
    Ok(multinomial_row(a, p)?.partial_sum(b as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Direct count of exponent tuples in `0..p` of length `a` with sum `k`.
    fn tuple_count(a: u32, k: u64, p: u64) -> u64 {
        let total = p.pow(a);
        (0..total)
            .filter(|&idx| {
                let mut rest = idx;
                let mut s = 0;
                for _ in 0..a {
                    s += rest % p;
                    rest /= p;
                }
                s == k
            })
            .count() as u64
    }

    fn factorial_binomial(n: u64, k: u64) -> BigUint {
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn worked_row() {
        let row = multinomial_row(4, 3).unwrap();
        let expect: Vec<BigUint> = [1, 4, 10, 16, 19, 16, 10, 4, 1]
            .iter()
            .map(|&v| big(v))
            .collect();
        assert_eq!(row.coeffs(), expect.as_slice());
        assert_eq!(multinomial_coeff(4, 6, 3).unwrap(), big(10));
        assert_eq!(multinomial_coeff(4, 4, 3).unwrap(), big(19));
    }

    #[test]
    fn small_rows() {
        let ones: Vec<BigUint> = vec![big(1); 5];
        assert_eq!(multinomial_row(1, 5).unwrap().coeffs(), ones.as_slice());
        assert_eq!(
            multinomial_row(2, 2).unwrap().coeffs(),
            &[big(1), big(2), big(1)]
        );
        assert_eq!(multinomial_row(0, 7).unwrap().coeffs(), &[big(1)]);
    }

    #[test]
    fn out_of_range_coefficients_vanish() {
        assert_eq!(multinomial_coeff(4, -1, 3).unwrap(), big(0));
        assert_eq!(multinomial_coeff(4, 9, 3).unwrap(), big(0));
        for (a, p) in [(0, 2), (3, 5), (7, 3)] {
            assert_eq!(multinomial_coeff(a, 0, p).unwrap(), big(1));
        }
    }

    #[test]
    fn partial_sums() {
        assert_eq!(multinomial_partial_sum(3, 2, 2).unwrap(), big(7));
        assert_eq!(multinomial_partial_sum(4, 8, 3).unwrap(), big(81));
        assert_eq!(multinomial_partial_sum(4, 3, 3).unwrap(), big(31));
        assert!(matches!(
            multinomial_partial_sum(4, 9, 3),
            Err(Error::OutOfRange { .. })
        ));
        assert!(multinomial_partial_sum(4, -1, 3).is_err());
    }

    #[test]
    fn rejects_composite_and_huge() {
        assert_eq!(multinomial_row(3, 4), Err(Error::NotPrime(4)));
        assert_eq!(multinomial_coeff(3, 1, 1), Err(Error::NotPrime(1)));
        assert!(matches!(
            multinomial_row(200_000, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rows_agree_with_tuple_enumeration() {
        for p in [2u64, 3, 5] {
            let max_a = match p {
                2 => 12,
                3 => 9,
                _ => 6,
            };
            for a in 0..=max_a {
                let row = multinomial_row(a as u64, p).unwrap();
                let n = row.coeffs().len();
                for k in 0..n {
                    assert_eq!(row.coeffs()[k], row.coeffs()[n - 1 - k]);
                    assert_eq!(row.coeffs()[k], big(tuple_count(a, k as u64, p)));
                }
                let sum: BigUint = row.coeffs().iter().sum();
                assert_eq!(sum, big(p).pow(a));
                assert_eq!(row.coeffs()[0], big(1));
                assert_eq!(row.coeffs()[n - 1], big(1));
            }
        }
    }

    #[test]
    fn rows_for_larger_a_keep_symmetry_and_sum() {
        for (a, p) in [(12u32, 3u64), (12, 5), (40, 5)] {
            let row = multinomial_row(a as u64, p).unwrap();
            let n = row.coeffs().len();
            assert!((0..n).all(|k| row.coeffs()[k] == row.coeffs()[n - 1 - k]));
            let sum: BigUint = row.coeffs().iter().sum();
            assert_eq!(sum, big(p).pow(a));
        }
    }

    #[test]
    fn binary_case_is_ordinary_binomial() {
        for a in 0..=30u64 {
            for k in 0..=a {
                assert_eq!(
                    multinomial_coeff(a, k as i64, 2).unwrap(),
                    factorial_binomial(a, k)
                );
            }
        }
    }

    #[test]
    fn tail_dimensions_match_filtration_levels() {
        let dims: Vec<BigUint> = multinomial_row(2, 3).unwrap().tail_dimensions();
        let expect: Vec<BigUint> = [9, 8, 6, 3, 1, 0].iter().map(|&v| big(v)).collect();
        assert_eq!(dims, expect);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime(10007));
        assert!(!is_prime(10007 * 3));
    }
}
