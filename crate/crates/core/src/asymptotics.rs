//! Numeric evaluation of the asymptotic exponent formulas.
//!
//! For `p = 2` the exponent of `mu(G_r) b(G_r)` tends to
//! `1 - l - l log2 l - (1 - l) log2 (1 - l)` with `l = r / a`. For `p > 3`
//! the multinomial asymptotic with saddle parameter
//! `x = 1/d + p(d-1)^2 / d^(p+2) + theta p^3 / d^(2p)`, `d = 1 + 1/floor(sqrt p)`,
//! `|theta| <= 1`, gives a lower bound for the exponent along `b = c a`.
//! Everything is evaluated in log space.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::binomials::{multinomial_partial_sum, require_prime};
use crate::error::{Error, Result};
use crate::output::{ln_biguint, serialize_rounded, serialize_rounded_opt};

/// The theta values at which intervals are reported.
pub const THETAS: [f64; 3] = [-1.0, 0.0, 1.0];

/// `1 - l - l log2 l - (1 - l) log2 (1 - l)`, extended continuously to `[0, 1]`.
pub fn entropy_exponent(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfRange {
            what: "lambda",
            value: lambda.floor() as i64,
            min: 0,
            max: 1,
        });
    }
    let xlog2x = |t: f64| if t == 0.0 { 0.0 } else { t * t.log2() };
    Ok(1.0 - lambda - xlog2x(lambda) - xlog2x(1.0 - lambda))
}

/// Golden-section maximization of [`entropy_exponent`] on `(0, 1)`.
pub fn argmax_entropy() -> (f64, f64) {
    let f = |t: f64| entropy_exponent(t).expect("interior point");
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    let best = (lo + hi) / 2.0;
    (best, f(best))
}

/// `log(2^(a-r+1) sum_{k<=r} C(a,k)) / log(2^(a+1))` from exact integers.
pub fn p2_exponent_exact(a: u64, r: u64) -> Result<f64> {
    if a == 0 {
        return Err(Error::InvalidParams("a must be positive".into()));
    }
    if r > a {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            min: 0,
            max: a as i64,
        });
    }
    let sum = multinomial_partial_sum(a, r as i64, 2)?;
    let ln_product = (a - r + 1) as f64 * LN_2 + ln_biguint(&sum);
    Ok(ln_product / ((a + 1) as f64 * LN_2))
}

/// Ingredients of the multinomial asymptotic for a prime `p > 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiParams {
    pub p: u64,
    /// `floor(sqrt(p))`.
    pub c: u64,
    /// `1 + 1/c`.
    pub d: f64,
    pub theta: f64,
    pub x: f64,
    pub phi: f64,
}

fn isqrt(p: u64) -> u64 {
    let mut c = (p as f64).sqrt() as u64;
    while c * c > p {
        c -= 1;
    }
    while (c + 1) * (c + 1) <= p {
        c += 1;
    }
    c
}

fn require_li_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p <= 3 {
        return Err(Error::InvalidParams(format!("need a prime p > 3, got {p}")));
    }
    Ok(())
}

/// The two correction terms of `x`: `p(d-1)^2 / d^(p+2)` and `p^3 / d^(2p)`.
pub fn li_correction_terms(p: u64) -> Result<(f64, f64)> {
    require_li_prime(p)?;
    let c = isqrt(p);
    let ln_d = (1.0 / c as f64).ln_1p();
    let pf = p as f64;
    let first = (pf.ln() - 2.0 * (c as f64).ln() - (pf + 2.0) * ln_d).exp();
    let second = (3.0 * pf.ln() - 2.0 * pf * ln_d).exp();
    Ok((first, second))
}

/// `ln(x^p)` and `ln(1 - x^p)` without cancellation near `x = 1`.
fn ln_power_terms(x: f64, p: u64) -> (f64, f64) {
    let ln_xp = p as f64 * x.ln();
    (ln_xp, (-ln_xp.exp_m1()).ln())
}

/// Populates [`LiParams`]. Fails when `x` leaves `(0, 1)` or `phi` is not a
/// finite positive real.
pub fn li_x(p: u64, theta: f64) -> Result<LiParams> {
    require_li_prime(p)?;
    if !(-1.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParams(format!(
            "theta = {theta} outside [-1, 1]"
        )));
    }
    let c = isqrt(p);
    let d = 1.0 + 1.0 / c as f64;
    let (first, second) = li_correction_terms(p)?;
    let x = 1.0 / d + first + theta * second;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Numeric(format!(
            "x = {x} is outside (0, 1) for p = {p}, theta = {theta}"
        )));
    }
    let (ln_xp, ln_one_minus_xp) = ln_power_terms(x, p);
    let one_minus_x = 1.0 - x;
    let pf = p as f64;
    let inner =
        x / (one_minus_x * one_minus_x) - (2.0 * pf.ln() + ln_xp - 2.0 * ln_one_minus_xp).exp();
    let phi = inner.powf(-0.5);
    if inner.is_nan() || inner <= 0.0 || !phi.is_finite() {
        return Err(Error::Numeric(format!(
            "phi(x) is not a positive real for p = {p}, theta = {theta}"
        )));
    }
    Ok(LiParams {
        p,
        c,
        d,
        theta,
        x,
        phi,
    })
}

/// `ln((1 - x^p) / (x - x^2))`.
fn ln_growth(params: &LiParams) -> f64 {
    let (_, ln_one_minus_xp) = ln_power_terms(params.x, params.p);
    ln_one_minus_xp - params.x.ln() - (-params.x).ln_1p()
}

/// Natural log of `phi(x) / sqrt(2 pi a) * ((1 - x^p) / (x - x^2))^a`.
pub fn li_log_estimate(a: u64, p: u64, theta: f64) -> Result<f64> {
    if a == 0 {
        return Err(Error::InvalidParams("a must be positive".into()));
    }
    let params = li_x(p, theta)?;
    Ok(params.phi.ln() - 0.5 * (2.0 * PI * a as f64).ln() + a as f64 * ln_growth(&params))
}

/// The asymptotic estimate itself; fails if it overflows `f64`.
pub fn li_estimate(a: u64, p: u64, theta: f64) -> Result<f64> {
    let value = li_log_estimate(a, p, theta)?.exp();
    if !value.is_finite() {
        return Err(Error::Numeric(format!(
            "estimate overflows for a = {a}, p = {p}"
        )));
    }
    Ok(value)
}

/// `1 - floor(sqrt p)/(p - 1) + log_p((1 - x^p) / (x - x^2))`.
pub fn exponent_lower_bound(p: u64, theta: f64) -> Result<f64> {
    let params = li_x(p, theta)?;
    let value = 1.0 - params.c as f64 / (p - 1) as f64 + ln_growth(&params) / (p as f64).ln();
    if !value.is_finite() {
        return Err(Error::Numeric(format!(
            "bound is not finite for p = {p}, theta = {theta}"
        )));
    }
    Ok(value)
}

/// One row of the exponent table. A missing cell means the formula broke
/// down at that theta (see [`li_x`]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentRow {
    pub p: u64,
    #[serde(serialize_with = "serialize_rounded_opt")]
    pub theta_minus: Option<f64>,
    #[serde(serialize_with = "serialize_rounded_opt")]
    pub theta_zero: Option<f64>,
    #[serde(serialize_with = "serialize_rounded_opt")]
    pub theta_plus: Option<f64>,
}

impl ExponentRow {
    pub fn cells(&self) -> [Option<f64>; 3] {
        [self.theta_minus, self.theta_zero, self.theta_plus]
    }
}

/// Rows sorted by `p`. `p = 2` is routed to the entropy limit `log2 3`
/// (theta does not enter); every other `p` must be a prime above 3.
pub fn exponent_table(p_list: &[u64]) -> Result<Vec<ExponentRow>> {
    let mut primes = p_list.to_vec();
    primes.sort_unstable();
    primes.dedup();
    primes
        .into_iter()
        .map(|p| {
            if p == 2 {
                let (_, value) = argmax_entropy();
                return Ok(ExponentRow {
                    p,
                    theta_minus: Some(value),
                    theta_zero: Some(value),
                    theta_plus: Some(value),
                });
            }
            require_li_prime(p)?;
            let [m, z, q] = THETAS.map(|t| exponent_lower_bound(p, t).ok());
            Ok(ExponentRow {
                p,
                theta_minus: m,
                theta_zero: z,
                theta_plus: q,
            })
        })
        .collect()
}

/// Value of the entropy exponent at a single `lambda`, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyPoint {
    #[serde(serialize_with = "serialize_rounded")]
    pub lambda: f64,
    #[serde(serialize_with = "serialize_rounded")]
    pub value: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomials::multinomial_coeff;

    const LOG2_3: f64 = 1.5849625007211562;

    #[test]
    fn entropy_values() {
        assert!((entropy_exponent(1.0 / 3.0).unwrap() - LOG2_3).abs() < 1e-12);
        assert!((entropy_exponent(0.5).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(entropy_exponent(0.0).unwrap(), 1.0);
        assert!((entropy_exponent(1e-12).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(entropy_exponent(1.0).unwrap(), 0.0);
        assert!(entropy_exponent(-0.1).is_err());
        assert!(entropy_exponent(1.1).is_err());
        assert!(entropy_exponent(f64::NAN).is_err());
    }

    #[test]
    fn entropy_maximum() {
        let (lambda, value) = argmax_entropy();
        assert!((lambda - 1.0 / 3.0).abs() < 1e-6);
        assert!((value - LOG2_3).abs() < 1e-9);
        assert_eq!(value, entropy_exponent(lambda).unwrap());
        let peak = entropy_exponent(1.0 / 3.0).unwrap();
        assert!(entropy_exponent(1.0 / 3.0 + 1e-4).unwrap() < peak);
        assert!(entropy_exponent(1.0 / 3.0 - 1e-4).unwrap() < peak);
    }

    #[test]
    fn p2_exponents() {
        assert_eq!(p2_exponent_exact(3, 0).unwrap(), 1.0);
        assert!((p2_exponent_exact(3, 2).unwrap() - 28f64.ln() / 16f64.ln()).abs() < 1e-12);
        let expect = (512.0f64 * 794.0).ln() / 8192f64.ln();
        assert!((p2_exponent_exact(12, 4).unwrap() - expect).abs() < 1e-12);
        assert!(p2_exponent_exact(3, 4).is_err());
    }

    #[test]
    fn p2_exponent_approaches_entropy_limit() {
        let gaps: Vec<f64> = [6u64, 12, 24, 48, 96]
            .iter()
            .map(|&a| (p2_exponent_exact(a, a / 3).unwrap() - LOG2_3).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }

    #[test]
    fn li_parameters_at_p5() {
        let li = li_x(5, 0.0).unwrap();
        assert_eq!((li.c, li.d), (2, 1.5));
        // 1/1.5 + 5 * 0.25 / 1.5^7
        let expect = 2.0 / 3.0 + 1.25 / 1.5f64.powi(7);
        assert!((li.x - expect).abs() < 1e-15);
        assert!(li.phi.is_finite() && li.phi > 0.0);
    }

    #[test]
    fn li_breaks_down_for_small_p_at_extreme_theta() {
        // p^3 / d^(2p) exceeds 1 here, so x leaves (0, 1)
        for p in [5u64, 7, 11, 13] {
            assert!(li_correction_terms(p).unwrap().1 > 1.0);
            assert!(matches!(li_x(p, 1.0), Err(Error::Numeric(_))));
            assert!(matches!(li_x(p, -1.0), Err(Error::Numeric(_))));
        }
    }

    #[test]
    fn li_x_approaches_one() {
        let xs: Vec<f64> = [101u64, 1009, 10007, 100003]
            .iter()
            .map(|&p| li_x(p, 0.0).unwrap().x)
            .collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(1.0 - xs[3] < 0.01);
        let (first, second) = li_correction_terms(10007).unwrap();
        assert!(first < 1e-3 && second < 1e-3);
    }

    #[test]
    fn li_rejects_bad_inputs() {
        assert!(li_x(3, 0.0).is_err());
        assert_eq!(li_x(9, 0.0).unwrap_err(), Error::NotPrime(9));
        assert!(li_x(101, 1.5).is_err());
    }

    #[test]
    fn li_estimate_is_log_affine_in_a() {
        let l = |a: u64| li_log_estimate(a, 101, 0.0).unwrap() + 0.5 * (a as f64).ln();
        let step1 = l(20) - l(10);
        let step2 = l(30) - l(20);
        assert!((step1 - step2).abs() < 1e-9);
        assert!(li_estimate(40, 5, 0.0).unwrap() > 0.0);
    }

    #[test]
    fn li_ratio_against_exact_coefficient() {
        // exact C(a, 2a)^(4) over the estimate at p = 5
        let ratio = |a: u64| {
            let exact = multinomial_coeff(a, 2 * a as i64, 5).unwrap();
            (ln_biguint(&exact) - li_log_estimate(a, 5, 0.0).unwrap()).exp()
        };
        assert!(ratio(20).is_finite());
    }

    #[test]
    fn lower_bound_values_stay_below_two() {
        for p in [101u64, 1009, 10007, 100003] {
            for theta in THETAS {
                let v = exponent_lower_bound(p, theta).unwrap();
                assert!(v > 0.0 && v <= 2.0, "p={p} theta={theta} -> {v}");
            }
        }
    }

    #[test]
    fn table_rows() {
        let rows = exponent_table(&[101, 2, 5, 101]).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.p).collect::<Vec<_>>(),
            vec![2, 5, 101]
        );
        assert!(rows[0]
            .cells()
            .iter()
            .all(|c| (c.unwrap() - LOG2_3).abs() < 1e-9));
        assert!(rows[1].theta_zero.is_some());
        assert!(rows[1].theta_plus.is_none());
        assert!(rows[2].cells().iter().all(Option::is_some));
        assert!(exponent_table(&[4]).is_err());
        assert!(exponent_table(&[3]).is_err());
    }
}
