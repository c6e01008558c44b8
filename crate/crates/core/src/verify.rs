//! Batch verification: closed forms against brute-force oracles for every
//! small `G_b`, the filtration equality, and the `n log n` bounds for the
//! comparison families.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::binomials::is_prime;
use crate::constructions::{
    base_formula, build_gb, check_nlogn, gb_order, maximal_intransitive, mu_formula, named_group,
    sylow_sym, wreath_product, GroupDescriptor, WreathSpec,
};
use crate::error::Result;
use crate::filtration::{filtration_equal, FiltrationReport, GroupParams};
use crate::group::{
    base_size_oracle, invariant_report, minimal_degree_oracle, Caps, InvariantReport,
};
use crate::ring::{min_nonzeros_bruteforce, DEFAULT_SEARCH_CAP};

/// Largest degree used for the maximal intransitive checks.
pub const INTRANSITIVE_MAX_DEGREE: u64 = 12;

/// Factors combined into the wreath products `H wr T` that are checked.
pub const WREATH_FACTORS: &[&str] = &["S2", "S3", "S4", "S5", "C2", "C3", "C5", "C7"];

fn factor_order(name: &str) -> Result<u128> {
    let group = named_group(name)?;
    let order = group.exact_order()?;
    Ok(order.to_u128().unwrap_or(u128::MAX))
}

/// Pairs from [`WREATH_FACTORS`] of degree at most `max_degree` whose
/// order `|H|^m |T|` is within `element_cap`.
pub fn wreath_matrix(
    max_degree: u64,
    element_cap: usize,
) -> Result<Vec<(&'static str, &'static str)>> {
    let mut out = Vec::new();
    for &inner in WREATH_FACTORS {
        for &outer in WREATH_FACTORS {
            let k = named_group(inner)?.degree() as u64;
            let m = named_group(outer)?.degree() as u32;
            if k * m as u64 > max_degree {
                continue;
            }
            let order = factor_order(inner)?
                .checked_pow(m)
                .and_then(|x| x.checked_mul(factor_order(outer).ok()?));
            if order.is_some_and(|o| o <= element_cap as u128) {
                out.push((inner, outer));
            }
        }
    }
    Ok(out)
}

/// Formula values `(mu, base size)` to compare with the oracles.
pub type FormulaFn<'a> = &'a dyn Fn(&GroupParams) -> (u64, u64);

pub fn closed_forms(params: &GroupParams) -> (u64, u64) {
    (mu_formula(params), base_formula(params))
}

/// Oracle-versus-formula comparison for one `G_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceCheck {
    pub p: u32,
    pub a: u32,
    pub b: u64,
    pub n: u64,
    pub order: u64,
    pub mu_oracle: u64,
    pub mu_formula: u64,
    pub base_oracle: u64,
    pub base_formula: u64,
    pub min_nonzeros_oracle: u64,
    pub min_nonzeros_formula: u64,
    pub ok: bool,
}

impl InstanceCheck {
    pub fn label(&self) -> String {
        format!("G_b(p={}, a={}, b={})", self.p, self.a, self.b)
    }
}

/// `(p - s) p^(a - r - 1)`, the least number of nonzeros of a nonzero
/// polynomial function of degree at most `b`.
pub fn min_nonzeros_formula(params: &GroupParams) -> u64 {
    mu_formula(params) / params.p as u64
}

pub fn check_instance(
    params: &GroupParams,
    caps: &Caps,
    formulas: FormulaFn,
) -> Result<InstanceCheck> {
    let group = build_gb(params, caps)?;
    let order = group.order(caps.elements)? as u64;
    let mu = minimal_degree_oracle(&group, caps.elements)? as u64;
    let base = base_size_oracle(&group, caps)? as u64;
    let zeros = min_nonzeros_bruteforce(params.a, params.p, params.b, DEFAULT_SEARCH_CAP)? as u64;
    let (mu_f, base_f) = formulas(params);
    let zeros_f = min_nonzeros_formula(params);
    let expected_order = gb_order(params);
    Ok(InstanceCheck {
        p: params.p,
        a: params.a,
        b: params.b,
        n: params.n,
        order,
        mu_oracle: mu,
        mu_formula: mu_f,
        base_oracle: base,
        base_formula: base_f,
        min_nonzeros_oracle: zeros,
        min_nonzeros_formula: zeros_f,
        ok: mu == mu_f
            && base == base_f
            && zeros == zeros_f
            && BigUint::from(order) == expected_order,
    })
}

/// Every `(p, a, b)` with `p^(a+1) <= max_degree` and `|G_b|` within the element cap.
pub fn gb_instances(max_degree: u64, element_cap: usize) -> Vec<GroupParams> {
    let mut out = Vec::new();
    for p in (2..=max_degree).filter(|&p| is_prime(p) && p * p <= max_degree) {
        let mut a = 1u32;
        while (p as u128).pow(a + 1) <= max_degree as u128 {
            for b in 0..=a as u64 * (p - 1) {
                let params = GroupParams::new(p as u32, a, b).expect("valid by construction");
                if gb_order(&params) <= BigUint::from(element_cap) {
                    out.push(params);
                }
            }
            a += 1;
        }
    }
    out
}

/// One bound check on a comparison-family group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub group: GroupDescriptor,
    pub report: InvariantReport,
    pub nlogn_ok: bool,
    pub lower_bound_ok: bool,
    /// `2(n-2)` for maximal intransitive groups.
    pub expected_product: Option<u128>,
    pub ok: bool,
}

fn bound_check(
    group: GroupDescriptor,
    report: InvariantReport,
    expected_product: Option<u128>,
) -> Result<BoundCheck> {
    let nlogn_ok = check_nlogn(&report)?;
    let lower_bound_ok = report.satisfies_lower_bound();
    let product_ok = expected_product.is_none_or(|e| e == report.product);
    Ok(BoundCheck {
        group,
        report,
        nlogn_ok,
        lower_bound_ok,
        expected_product,
        ok: nlogn_ok && lower_bound_ok && product_ok,
    })
}

/// `v_p(n!)` by Legendre's formula.
fn sylow_exponent(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += n / q;
        q = match q.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    total
}

/// Whether the Sylow `p`-subgroup of `Sym(n)` has at most `cap` elements.
pub fn sylow_within_cap(n: u64, p: u64, cap: usize) -> bool {
    (p as u128)
        .checked_pow(sylow_exponent(n, p) as u32)
        .is_some_and(|order| order <= cap as u128)
}

/// Whether `|Sym(k) x Sym(n-k)| = k! (n-k)!` is at most `cap`.
pub fn intransitive_within_cap(n: u64, k: u64, cap: usize) -> bool {
    let fact = |m: u64| (1..=m as u128).try_fold(1u128, |acc, x| acc.checked_mul(x));
    fact(k)
        .zip(fact(n - k))
        .and_then(|(x, y)| x.checked_mul(y))
        .is_some_and(|order| order <= cap as u128)
}

pub fn check_wreath(inner: &str, outer: &str, caps: &Caps) -> Result<BoundCheck> {
    let spec = WreathSpec {
        inner: named_group(inner)?,
        outer: named_group(outer)?,
    };
    let group = wreath_product(&spec, caps)?;
    let report = invariant_report(&group, caps)?;
    bound_check(
        GroupDescriptor::Wreath {
            inner: inner.to_string(),
            outer: outer.to_string(),
        },
        report,
        None,
    )
}

pub fn check_sylow(n: u64, p: u64, caps: &Caps) -> Result<BoundCheck> {
    let group = sylow_sym(n, p, caps)?;
    let report = invariant_report(&group, caps)?;
    bound_check(GroupDescriptor::Sylow { n, p }, report, None)
}

pub fn check_maximal_intransitive(n: u64, k: u64, caps: &Caps) -> Result<BoundCheck> {
    let group = maximal_intransitive(n, k, caps)?;
    let report = invariant_report(&group, caps)?;
    bound_check(
        GroupDescriptor::MaxIntransitive { n, k },
        report,
        Some(2 * (n as u128 - 2)),
    )
}

/// Everything `verify` ran, with an overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub max_degree: u64,
    pub passed: bool,
    pub instances: Vec<InstanceCheck>,
    pub filtrations: Vec<FiltrationReport>,
    pub bounds: Vec<BoundCheck>,
    pub failures: Vec<String>,
}

pub fn run_verify(max_degree: u64, caps: &Caps) -> Result<VerifySummary> {
    run_verify_with(max_degree, caps, &closed_forms)
}

/// [`run_verify`] with the closed forms supplied by the caller.
pub fn run_verify_with(max_degree: u64, caps: &Caps, formulas: FormulaFn) -> Result<VerifySummary> {
    let mut failures = Vec::new();

    let mut instances = Vec::new();
    for params in gb_instances(max_degree, caps.elements) {
        let check = check_instance(&params, caps, formulas)?;
        if !check.ok {
            failures.push(format!(
                "{}: mu oracle {} vs formula {}, base oracle {} vs formula {}, min nonzeros {} vs {}",
                check.label(),
                check.mu_oracle,
                check.mu_formula,
                check.base_oracle,
                check.base_formula,
                check.min_nonzeros_oracle,
                check.min_nonzeros_formula
            ));
        }
        instances.push(check);
    }

    let mut filtrations = Vec::new();
    let mut seen = Vec::new();
    for params in gb_instances(max_degree, usize::MAX) {
        if seen.contains(&(params.p, params.a)) {
            continue;
        }
        seen.push((params.p, params.a));
        let report = filtration_equal(params.p, params.a)?;
        if !report.equal {
            failures.push(format!(
                "filtration(p={}, a={}) differs",
                params.p, params.a
            ));
        }
        filtrations.push(report);
    }

    let mut bounds = Vec::new();
    for (inner, outer) in wreath_matrix(max_degree, caps.elements)? {
        bounds.push(check_wreath(inner, outer, caps)?);
    }
    for n in 2..=max_degree {
        for p in (2..=n).filter(|&p| is_prime(p)) {
            if sylow_within_cap(n, p, caps.elements) {
                bounds.push(check_sylow(n, p, caps)?);
            }
        }
    }
    for n in 4..=max_degree.min(INTRANSITIVE_MAX_DEGREE) {
        for k in 2..=n - 2 {
            if !intransitive_within_cap(n, k, caps.elements) {
                continue;
            }
            bounds.push(check_maximal_intransitive(n, k, caps)?);
        }
    }
    for check in bounds.iter().filter(|c| !c.ok) {
        failures.push(format!("bound check failed for {:?}", check.group));
    }

    Ok(VerifySummary {
        max_degree,
        passed: failures.is_empty(),
        instances,
        filtrations,
        bounds,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_enumeration_respects_caps() {
        let small: Vec<(u32, u32, u64)> = gb_instances(8, 2_000_000)
            .iter()
            .map(|g| (g.p, g.a, g.b))
            .collect();
        assert_eq!(
            small,
            vec![(2, 1, 0), (2, 1, 1), (2, 2, 0), (2, 2, 1), (2, 2, 2)]
        );
        let all = gb_instances(32, 2_000_000);
        assert_eq!(all.len(), 27);
        assert_eq!(gb_instances(32, 1 << 16).len(), 24);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow_exponent(4, 2), 3);
        assert_eq!(sylow_exponent(27, 3), 13);
        assert!(sylow_within_cap(23, 2, 2_000_000));
        assert!(!sylow_within_cap(24, 2, 2_000_000));
        assert!(intransitive_within_cap(12, 4, 2_000_000));
        assert!(!intransitive_within_cap(12, 2, 2_000_000));
    }

    #[test]
    fn wreath_matrix_filters() {
        let small = wreath_matrix(6, 2_000_000).unwrap();
        assert!(small.contains(&("S2", "S3")));
        assert!(small.contains(&("C3", "C2")));
        assert!(!small.iter().any(|(i, o)| *i == "S4" || *o == "S4"));
        // S5 wr S5 has order 120^6
        assert!(!wreath_matrix(30, 2_000_000)
            .unwrap()
            .contains(&("S5", "S5")));
    }

    #[test]
    fn small_verify_passes() {
        let summary = run_verify(8, &Caps::default()).unwrap();
        assert!(summary.passed, "{:?}", summary.failures);
        assert_eq!(summary.instances.len(), 5);
        assert_eq!(summary.filtrations.len(), 2);
    }

    #[test]
    fn injected_fault_is_named() {
        let perturbed = |g: &GroupParams| (mu_formula(g) + 1, base_formula(g));
        let summary = run_verify_with(8, &Caps::default(), &perturbed).unwrap();
        assert!(!summary.passed);
        assert!(summary.failures[0].contains("G_b(p=2, a=1, b=0)"));
    }
}
