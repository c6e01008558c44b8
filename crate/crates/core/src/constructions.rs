//! The groups `G_b = B_{a(p-1)-b} x| V` on `F_p x V`, their closed-form
//! invariants, and the comparison families: imprimitive wreath products,
//! Sylow subgroups of symmetric groups and maximal intransitive subgroups.

use num_bigint::BigUint;
use serde::Serialize;

use crate::binomials::require_prime;
use crate::error::{Error, Result};
use crate::filtration::GroupParams;
use crate::group::{Caps, GeneratedGroup, InvariantReport, Permutation};
use crate::linalg::EchelonBasis;
use crate::output::ln_biguint;
use crate::ring::{monomials_up_to_degree, ring_size, RingElement, Vector, DEFAULT_RING_CAP};

/// What was built, embedded in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Gb { p: u32, a: u32, b: u64 },
    Wreath { inner: String, outer: String },
    Sylow { n: u64, p: u64 },
    MaxIntransitive { n: u64, k: u64 },
    Named { name: String },
}

/// Point `(x, w)` of `F_p x V` as `x + p * index(w)`.
pub fn gb_point(p: u32, x: u32, w: &Vector) -> u32 {
    x + p * w.index() as u32
}

fn point_count(params: &GroupParams, caps: &Caps) -> Result<usize> {
    caps.check_degree(params.n)?;
    Ok(params.n as usize)
}

/// Permutation of the element `(f, v)`: `(x, w) -> (x + f(w), w + v)`.
pub fn gb_element(params: &GroupParams, f: &RingElement, v: &Vector) -> Result<Permutation> {
    let (p, a) = (params.p, params.a);
    if f.p() != p || f.a() != a || v.p() != p || v.dim() != a {
        return Err(Error::Mismatch(
            "element does not belong to this G_b".into(),
        ));
    }
    let values = f.to_function();
    let fibers = (p as usize).pow(a);
    let mut images = vec![0u32; params.n as usize];
    for w in 0..fibers {
        let target = v.add(&Vector::from_index(p, a, w)).index() as u32;
        for x in 0..p {
            images[(x + p * w as u32) as usize] = (x + values[w]) % p + p * target;
        }
    }
    Permutation::new(images)
}

/// `G_b`, generated by the monomials of degree at most `b` and the translations `e_i`.
pub fn build_gb(params: &GroupParams, caps: &Caps) -> Result<GeneratedGroup> {
    let n = point_count(params, caps)?;
    let (p, a) = (params.p, params.a);
    let zero = Vector::zero(p, a);
    let mut gens = Vec::new();
    for idx in monomials_up_to_degree(p, a, params.b) {
        let mut coeffs = vec![0u32; (p as usize).pow(a)];
        coeffs[idx] = 1;
        let f = RingElement::from_coeffs(p, a, coeffs)?;
        gens.push(gb_element(params, &f, &zero)?);
    }
    let none = RingElement::zero(p, a)?;
    for i in 0..a as usize {
        gens.push(gb_element(params, &none, &Vector::basis(p, a, i))?);
    }
    GeneratedGroup::new(n, gens)
}

/// `|G_b| = p^(D + a)`.
pub fn gb_order(params: &GroupParams) -> BigUint {
    BigUint::from(params.p).pow((params.dim + params.a as u64) as u32)
}

/// `mu(G_b) = (p - s) p^(a - r)`.
pub fn mu_formula(params: &GroupParams) -> u64 {
    (params.p as u64 - params.s) * (params.p as u64).pow(params.a - params.r as u32)
}

/// `b(G_b) = sum_{k <= b} C(a, k)^(p-1)`.
pub fn base_formula(params: &GroupParams) -> u64 {
    params.dim
}

/// Exact `mu * b` and `ln(mu * b) / ln(n)`.
pub fn product_formula(params: &GroupParams) -> (BigUint, f64) {
    let product = BigUint::from(mu_formula(params)) * BigUint::from(base_formula(params));
    let exponent = ln_biguint(&product) / (params.n as f64).ln();
    (product, exponent)
}

/// Invariant report assembled from the closed forms alone.
pub fn formula_report(params: &GroupParams) -> InvariantReport {
    InvariantReport::from_parts(
        params.n,
        gb_order(params),
        mu_formula(params),
        base_formula(params),
        true,
    )
}

/// A base of size `D` for `G_b`: points `(0, w)` whose evaluation
/// functionals on the degree-`<= b` space raise the rank.
pub fn structured_base(params: &GroupParams) -> Result<Vec<u32>> {
    let (p, a) = (params.p, params.a);
    let fibers = ring_size(p, a, DEFAULT_RING_CAP)?;
    let basis = monomials_up_to_degree(p, a, params.b);
    let tables: Vec<Vec<u32>> = basis
        .iter()
        .map(|&idx| {
            let mut coeffs = vec![0u32; fibers];
            coeffs[idx] = 1;
            RingElement::from_coeffs(p, a, coeffs).map(|f| f.to_function())
        })
        .collect::<Result<_>>()?;
    let mut rank = EchelonBasis::new(p, basis.len());
    let mut points = Vec::with_capacity(basis.len());
    for w in 0..fibers {
        if rank.rank() == basis.len() {
            break;
        }
        let functional: Vec<u32> = tables.iter().map(|t| t[w]).collect();
        if rank.insert(functional)? {
            points.push(p * w as u32);
        }
    }
    debug_assert_eq!(points.len() as u64, params.dim);
    Ok(points)
}

/// Generators for a named group: `S<k>`, `C<k>` or `1` (trivial, one point).
pub fn named_group(name: &str) -> Result<GeneratedGroup> {
    let bad = || Error::InvalidParams(format!("unknown group '{name}', expected S<k>, C<k> or 1"));
    if name == "1" {
        return GeneratedGroup::new(1, vec![]);
    }
    let mut chars = name.chars();
    let kind = chars.next();
    let k: usize = chars.as_str().parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    match kind {
        Some('S' | 's') => symmetric_group(k),
        Some('C' | 'c') => cyclic_group(k),
        _ => Err(bad()),
    }
}

pub fn symmetric_group(k: usize) -> Result<GeneratedGroup> {
    let gens = (0..k.saturating_sub(1))
        .map(|i| Permutation::from_cycles(k, &[&[i as u32, i as u32 + 1]]))
        .collect::<Result<_>>()?;
    GeneratedGroup::new(k, gens)
}

pub fn cyclic_group(k: usize) -> Result<GeneratedGroup> {
    let cycle: Vec<u32> = (0..k as u32).collect();
    GeneratedGroup::new(k, vec![Permutation::from_cycles(k, &[&cycle])?])
}

/// Inner group `H` of degree `k` and top group `T` of degree `m`.
#[derive(Debug, Clone)]
pub struct WreathSpec {
    pub inner: GeneratedGroup,
    pub outer: GeneratedGroup,
}

impl WreathSpec {
    pub fn degree(&self) -> usize {
        self.inner.degree() * self.outer.degree()
    }
}

/// `H wr T` on `k * m` points; point `i` of block `j` is `j * k + i`.
pub fn wreath_product(spec: &WreathSpec, caps: &Caps) -> Result<GeneratedGroup> {
    let (k, m) = (spec.inner.degree(), spec.outer.degree());
    let n = k * m;
    caps.check_degree(n as u64)?;
    let mut gens = Vec::new();
    for block in 0..m {
        for h in spec.inner.generators() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 0..k {
                images[block * k + i] = (block * k) as u32 + h.apply(i as u32);
            }
            gens.push(Permutation::new(images)?);
        }
    }
    for t in spec.outer.generators() {
        let images = (0..n)
            .map(|pt| t.apply((pt / k) as u32) * k as u32 + (pt % k) as u32)
            .collect();
        gens.push(Permutation::new(images)?);
    }
    GeneratedGroup::new(n, gens)
}

/// `C_p wr C_p wr ... wr C_p` (`levels` factors) on `p^levels` points.
fn iterated_cyclic_wreath(p: usize, levels: u32) -> Result<GeneratedGroup> {
    let mut group = GeneratedGroup::new(1, vec![])?;
    for _ in 0..levels {
        let spec = WreathSpec {
            inner: group,
            outer: cyclic_group(p)?,
        };
        group = wreath_product(
            &spec,
            &Caps {
                degree: u64::MAX,
                ..Caps::default()
            },
        )?;
    }
    Ok(group)
}

/// A Sylow `p`-subgroup of `Sym(n)`: for each base-`p` digit `c_i` of `n`,
/// `c_i` disjoint copies of the iterated wreath product on `p^i` points.
pub fn sylow_sym(n: u64, p: u64, caps: &Caps) -> Result<GeneratedGroup> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidParams("degree must be positive".into()));
    }
    caps.check_degree(n)?;
    let mut gens = Vec::new();
    let mut offset = 0u32;
    let mut rest = n;
    let mut level = 0u32;
    while rest > 0 {
        let digit = rest % p;
        let block = iterated_cyclic_wreath(p as usize, level)?;
        let size = block.degree() as u32;
        for _ in 0..digit {
            for g in block.generators() {
                let mut images: Vec<u32> = (0..n as u32).collect();
                for i in 0..size {
                    images[(offset + i) as usize] = offset + g.apply(i);
                }
                gens.push(Permutation::new(images)?);
            }
            offset += size;
        }
        rest /= p;
        level += 1;
    }
    GeneratedGroup::new(n as usize, gens)
}

/// `Sym(k) x Sym(n - k)` on `{0..k-1}` and `{k..n-1}`.
pub fn maximal_intransitive(n: u64, k: u64, caps: &Caps) -> Result<GeneratedGroup> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    caps.check_degree(n)?;
    let gens = (0..n - 1)
        .filter(|&i| i + 1 != k)
        .map(|i| Permutation::from_cycles(n as usize, &[&[i as u32, i as u32 + 1]]))
        .collect::<Result<_>>()?;
    GeneratedGroup::new(n as usize, gens)
}

/// `mu * b <= n log n` with the logarithm in the given base.
pub fn check_nlogn_base(report: &InvariantReport, log_base: f64) -> Result<bool> {
    if report.n < 2 {
        return Err(Error::InvalidParams("n log n bound needs n >= 2".into()));
    }
    if log_base.is_nan() || log_base <= 1.0 {
        return Err(Error::InvalidParams(format!(
            "log base {log_base} must exceed 1"
        )));
    }
    let n = report.n as f64;
    Ok(report.product as f64 <= n * n.ln() / log_base.ln())
}

/// `mu * b <= n log2 n`.
pub fn check_nlogn(report: &InvariantReport) -> Result<bool> {
    check_nlogn_base(report, 2.0)
}
