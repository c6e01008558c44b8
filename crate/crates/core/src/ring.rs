//! The coordinate ring `F_p[x_1..x_a] / (x_i^p - x_i)`, identified with the
//! functions `F_p^a -> F_p`.
//!
//! Elements are dense coefficient vectors of length `p^a`. Monomial
//! `x_1^l_1 ... x_a^l_a` lives at index `l_1 + l_2 p + ... + l_a p^(a-1)`,
//! and the same little-endian order indexes points of `V = F_p^a` in value
//! tables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::binomials::require_prime;
use crate::error::{Error, Result};
use crate::linalg::{add_mod, invert_matrix, mul_mod, pow_mod, sub_mod};

/// Default limit on `p^a` for dense ring computations.
pub const DEFAULT_RING_CAP: usize = 1 << 20;

/// Default limit on the `p^D` search space of [`min_nonzeros_bruteforce`].
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 24;

/// `p^a`, checked against `cap`.
pub fn ring_size(p: u32, a: u32, cap: usize) -> Result<usize> {
    require_prime(p as u64)?;
    let size = (p as u128).checked_pow(a).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "ring size p^a",
            value: size,
            cap: cap as u128,
        });
    }
    Ok(size as usize)
}

/// Exponent tuple (or point coordinates) for a canonical index.
pub fn index_to_tuple(p: u32, a: u32, mut index: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(a as usize);
    for _ in 0..a {
        out.push((index % p as usize) as u32);
        index /= p as usize;
    }
    out
}

/// Canonical index of an exponent tuple or point.
pub fn tuple_to_index(p: u32, tuple: &[u32]) -> usize {
    tuple
        .iter()
        .rev()
        .fold(0usize, |acc, &t| acc * p as usize + t as usize)
}

/// Indices of the monomials of total degree at most `bound`, in canonical order.
pub fn monomials_up_to_degree(p: u32, a: u32, bound: u64) -> Vec<usize> {
    let size = (p as usize).pow(a);
    (0..size)
        .filter(|&i| {
            index_to_tuple(p, a, i)
                .iter()
                .map(|&e| e as u64)
                .sum::<u64>()
                <= bound
        })
        .collect()
}

/// Degree of a ring element. The zero element has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    /// `deg <= bound`; always true for the zero element.
    pub fn at_most(self, bound: u64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => d <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A point of `V = F_p^a`, also used as a translation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    p: u32,
    entries: Vec<u32>,
}

impl Vector {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        require_prime(p as u64)?;
        if let Some(&bad) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::InvalidParams(format!(
                "vector entry {bad} not in [0, {p})"
            )));
        }
        Ok(Vector { p, entries })
    }

    pub fn zero(p: u32, a: u32) -> Self {
        Vector {
            p,
            entries: vec![0; a as usize],
        }
    }

    /// Canonical basis vector `e_i` (zero-based `i`).
    pub fn basis(p: u32, a: u32, i: usize) -> Self {
        let mut v = Vector::zero(p, a);
        v.entries[i] = 1;
        v
    }

    pub fn from_index(p: u32, a: u32, index: usize) -> Self {
        Vector {
            p,
            entries: index_to_tuple(p, a, index),
        }
    }

    pub fn index(&self) -> usize {
        tuple_to_index(self.p, &self.entries)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.p, other.p);
        assert_eq!(self.entries.len(), other.entries.len());
        Vector {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| add_mod(x, y, self.p))
                .collect(),
        }
    }
}

/// An element of the coordinate ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    p: u32,
    a: u32,
    coeffs: Vec<u32>,
}

/// Applies a `p x p` matrix along one tensor axis of a length-`p^a` array.
fn apply_axis(data: &[u32], p: u32, axis: u32, matrix: &[Vec<u32>]) -> Vec<u32> {
    let p_us = p as usize;
    let stride = p_us.pow(axis);
    let block = stride * p_us;
    let mut out = vec![0u32; data.len()];
    let mut fiber = vec![0u32; p_us];
    for base in (0..data.len()).step_by(block) {
        for offset in 0..stride {
            let start = base + offset;
            for (l, slot) in fiber.iter_mut().enumerate() {
                *slot = data[start + l * stride];
            }
            for (i, row) in matrix.iter().enumerate() {
                let mut acc = 0u64;
                for (m, &x) in row.iter().zip(&fiber) {
                    acc += *m as u64 * x as u64;
                }
                out[start + i * stride] = (acc % p as u64) as u32;
            }
        }
    }
    out
}

/// `E[v][l] = v^l` with `0^0 = 1`: one-variable evaluation matrix.
fn evaluation_matrix(p: u32) -> Vec<Vec<u32>> {
    (0..p)
        .map(|v| (0..p).map(|l| pow_mod(v, l as u64, p)).collect())
        .collect()
}

/// Binomial coefficients `C(n, k) mod p` for `n, k < p`.
fn pascal_mod(p: u32) -> Vec<Vec<u32>> {
    let mut rows = vec![vec![0u32; p as usize]; p as usize];
    for n in 0..p as usize {
        rows[n][0] = 1 % p;
        for k in 1..=n {
            rows[n][k] = add_mod(rows[n - 1][k - 1], rows[n - 1][k], p);
        }
    }
    rows
}

impl RingElement {
    pub fn zero(p: u32, a: u32) -> Result<Self> {
        let size = ring_size(p, a, DEFAULT_RING_CAP)?;
        Ok(RingElement {
            p,
            a,
            coeffs: vec![0; size],
        })
    }

    pub fn constant(p: u32, a: u32, c: u32) -> Result<Self> {
        let mut f = RingElement::zero(p, a)?;
        f.coeffs[0] = c % p;
        Ok(f)
    }

    /// The monomial `x^exponents` with each exponent in `0..p`.
    pub fn monomial(p: u32, a: u32, exponents: &[u32]) -> Result<Self> {
        if exponents.len() != a as usize || exponents.iter().any(|&e| e >= p) {
            return Err(Error::InvalidParams(format!(
                "exponent tuple {exponents:?} not in [0, {p})^{a}"
            )));
        }
        let mut f = RingElement::zero(p, a)?;
        f.coeffs[tuple_to_index(p, exponents)] = 1;
        Ok(f)
    }

    /// The coordinate function `x_i` (zero-based `i`).
    pub fn variable(p: u32, a: u32, i: usize) -> Result<Self> {
        let mut exps = vec![0; a as usize];
        if i >= exps.len() {
            return Err(Error::InvalidParams(format!(
                "no variable x{} in {a} variables",
                i + 1
            )));
        }
        exps[i] = 1.min(p - 1);
        RingElement::monomial(p, a, &exps)
    }

    pub fn from_coeffs(p: u32, a: u32, coeffs: Vec<u32>) -> Result<Self> {
        let size = ring_size(p, a, DEFAULT_RING_CAP)?;
        if coeffs.len() != size {
            return Err(Error::Mismatch(format!(
                "{} coefficients for a ring of dimension {size}",
                coeffs.len()
            )));
        }
        Ok(RingElement {
            p,
            a,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms as `(exponent tuple, coefficient)`, in canonical order.
    pub fn terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (index_to_tuple(self.p, self.a, i), c))
            .collect()
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<()> {
        if self.p != other.p || self.a != other.a {
            return Err(Error::Mismatch(format!(
                "F_{}[{} vars] vs F_{}[{} vars]",
                self.p, self.a, other.p, other.a
            )));
        }
        Ok(())
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if self.p != v.p || self.a != v.dim() {
            return Err(Error::Mismatch(format!(
                "element of F_{}[{} vars] at a point of F_{}^{}",
                self.p,
                self.a,
                v.p,
                v.dim()
            )));
        }
        Ok(())
    }

    /// `f(v)` by direct substitution.
    pub fn evaluate(&self, v: &Vector) -> Result<u32> {
        self.check_vector(v)?;
        let p = self.p;
        let mut total = 0u32;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = index_to_tuple(p, self.a, i)
                .iter()
                .zip(v.entries())
                .fold(c, |acc, (&e, &x)| mul_mod(acc, pow_mod(x, e as u64, p), p));
            total = add_mod(total, term, p);
        }
        Ok(total)
    }

    /// Value table over all of `V`, indexed canonically.
    pub fn to_function(&self) -> Vec<u32> {
        let eval = evaluation_matrix(self.p);
        (0..self.a).fold(self.coeffs.clone(), |data, axis| {
            apply_axis(&data, self.p, axis, &eval)
        })
    }

    /// The unique reduced polynomial with the given value table.
    pub fn interpolate(p: u32, a: u32, table: &[u32]) -> Result<Self> {
        let size = ring_size(p, a, DEFAULT_RING_CAP)?;
        if table.len() != size {
            return Err(Error::Mismatch(format!(
                "value table of length {} for p^a = {size}",
                table.len()
            )));
        }
        let inverse = invert_matrix(p, &evaluation_matrix(p))
            .expect("the one-variable evaluation matrix over F_p is invertible");
        let start: Vec<u32> = table.iter().map(|&x| x % p).collect();
        let coeffs = (0..a).fold(start, |data, axis| apply_axis(&data, p, axis, &inverse));
        Ok(RingElement { p, a, coeffs })
    }

    pub fn degree(&self) -> Degree {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| {
                index_to_tuple(self.p, self.a, i)
                    .iter()
                    .map(|&e| e as u64)
                    .sum::<u64>()
            })
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// `f^v`, the function `w -> f(v + w)`, by expanding `(x_i + v_i)^l_i`.
    pub fn translate(&self, v: &Vector) -> Result<Self> {
        self.check_vector(v)?;
        let p = self.p;
        let binom = pascal_mod(p);
        let mut data = self.coeffs.clone();
        for (axis, &shift) in v.entries().iter().enumerate() {
            if shift == 0 {
                continue;
            }
            // coefficient of x^j in (x + shift)^l
            let matrix: Vec<Vec<u32>> = (0..p as usize)
                .map(|j| {
                    (0..p as usize)
                        .map(|l| {
                            if j <= l {
                                mul_mod(binom[l][j], pow_mod(shift, (l - j) as u64, p), p)
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            data = apply_axis(&data, p, axis as u32, &matrix);
        }
        Ok(RingElement {
            p,
            a: self.a,
            coeffs: data,
        })
    }

    /// `[f, v] = f^v - f`.
    pub fn commutator_translation(&self, v: &Vector) -> Result<Self> {
        Ok(&self.translate(v)? - self)
    }

    /// Number of points of `V` where `f` does not vanish.
    pub fn count_nonzeros(&self) -> usize {
        self.to_function().iter().filter(|&&x| x != 0).count()
    }

    pub fn scale(&self, c: u32) -> Self {
        RingElement {
            p: self.p,
            a: self.a,
            coeffs: self
                .coeffs
                .iter()
                .map(|&x| mul_mod(x, c % self.p, self.p))
                .collect(),
        }
    }

    /// Product in the quotient ring, reducing `x^e` to `x^(e-(p-1))` for `e >= p`.
    pub fn try_mul(&self, other: &RingElement) -> Result<Self> {
        self.check_same_ring(other)?;
        let p = self.p;
        let mut out = vec![0u32; self.coeffs.len()];
        let lhs = self.terms();
        let rhs = other.terms();
        for (e1, c1) in &lhs {
            for (e2, c2) in &rhs {
                let exps: Vec<u32> = e1
                    .iter()
                    .zip(e2)
                    .map(|(&x, &y)| {
                        let s = x + y;
                        if s >= p {
                            s - (p - 1)
                        } else {
                            s
                        }
                    })
                    .collect();
                let idx = tuple_to_index(p, &exps);
                out[idx] = add_mod(out[idx], mul_mod(*c1, *c2, p), p);
            }
        }
        Ok(RingElement {
            p,
            a: self.a,
            coeffs: out,
        })
    }

    fn zip_with(&self, other: &RingElement, op: impl Fn(u32, u32, u32) -> u32) -> Self {
        self.check_same_ring(other)
            .expect("ring elements from different rings");
        RingElement {
            p: self.p,
            a: self.a,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&x, &y)| op(x, y, self.p))
                .collect(),
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.zip_with(rhs, add_mod)
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.zip_with(rhs, sub_mod)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(self.p - 1)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs)
            .expect("ring elements from different rings")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (exps, c)) in terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            match (vars.is_empty(), *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, c) => write!(f, "{c}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of `[exponent tuple, coefficient]` pairs for the
/// nonzero terms, in canonical order.
impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for term in &terms {
            seq.serialize_element(term)?;
        }
        seq.end()
    }
}

/// Minimum of `count_nonzeros(f)` over nonzero `f` of degree at most `b`,
/// by enumerating every coefficient vector on the degree-`<= b` monomials.
pub fn min_nonzeros_bruteforce(a: u32, p: u32, b: u64, search_cap: u64) -> Result<usize> {
    let size = ring_size(p, a, DEFAULT_RING_CAP)?;
    let top = a as u64 * (p as u64 - 1);
    if b > top {
        return Err(Error::OutOfRange {
            what: "b",
            value: b as i64,
            min: 0,
            max: top as i64,
        });
    }
    let basis = monomials_up_to_degree(p, a, b);
    let space = (p as u128)
        .checked_pow(basis.len() as u32)
        .unwrap_or(u128::MAX);
    if space > search_cap as u128 {
        return Err(Error::CapExceeded {
            what: "search space p^D",
            value: space,
            cap: search_cap as u128,
        });
    }
    let tables: Vec<Vec<u32>> = basis
        .iter()
        .map(|&idx| {
            let mut coeffs = vec![0u32; size];
            coeffs[idx] = 1;
            RingElement { p, a, coeffs }.to_function()
        })
        .collect();

    // Odometer over coefficient digits. Rolling a digit over from p-1 to 0
    // adds its table once more, since -(p-1) = 1 mod p.
    let mut digits = vec![0u32; basis.len()];
    let mut values = vec![0u32; size];
    let mut best = usize::MAX;
    while let Some(pos) = digits.iter().position(|&d| d + 1 < p) {
        for j in 0..=pos {
            digits[j] = if j == pos { digits[j] + 1 } else { 0 };
            for (v, &t) in values.iter_mut().zip(&tables[j]) {
                *v = add_mod(*v, t, p);
            }
        }
        let nonzero = values.iter().filter(|&&x| x != 0).count();
        best = best.min(nonzero);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_element(rng: &mut impl Rng, p: u32, a: u32) -> RingElement {
        let size = (p as usize).pow(a);
        RingElement::from_coeffs(p, a, (0..size).map(|_| rng.gen_range(0..p)).collect()).unwrap()
    }

    fn random_vector(rng: &mut impl Rng, p: u32, a: u32) -> Vector {
        Vector::new(p, (0..a).map(|_| rng.gen_range(0..p)).collect()).unwrap()
    }

    fn x1x2(p: u32) -> RingElement {
        RingElement::monomial(p, 2, &[1, 1]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = x1x2(2);
        assert_eq!(f.evaluate(&Vector::new(2, vec![1, 1]).unwrap()).unwrap(), 1);
        assert_eq!(f.evaluate(&Vector::new(2, vec![1, 0]).unwrap()).unwrap(), 0);
        let zero = RingElement::zero(3, 2).unwrap();
        for i in 0..9 {
            assert_eq!(zero.evaluate(&Vector::from_index(3, 2, i)).unwrap(), 0);
        }
        assert!(matches!(
            f.evaluate(&Vector::new(3, vec![1, 1]).unwrap()),
            Err(Error::Mismatch(_))
        ));
        assert!(f.evaluate(&Vector::new(2, vec![1]).unwrap()).is_err());
    }

    #[test]
    fn to_function_examples() {
        assert_eq!(
            RingElement::constant(2, 3, 1).unwrap().to_function(),
            vec![1; 8]
        );
        assert_eq!(
            RingElement::variable(3, 1, 0).unwrap().to_function(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn to_function_matches_pointwise_evaluation() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for (p, a) in [(2, 4), (3, 3), (5, 2), (7, 1)] {
            let f = random_element(&mut rng, p, a);
            let table = f.to_function();
            for (i, &val) in table.iter().enumerate() {
                assert_eq!(f.evaluate(&Vector::from_index(p, a, i)).unwrap(), val);
            }
        }
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(
            RingElement::interpolate(2, 3, &[1; 8]).unwrap(),
            RingElement::constant(2, 3, 1).unwrap()
        );
        // delta at the origin over F_2^2 is (1 + x1)(1 + x2)
        let delta = RingElement::interpolate(2, 2, &[1, 0, 0, 0]).unwrap();
        assert_eq!(delta.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(delta.to_function(), vec![1, 0, 0, 0]);
        assert!(RingElement::interpolate(2, 2, &[1, 0, 0]).is_err());
    }

    #[test]
    fn interpolation_inverts_evaluation() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for n in 0..100 {
            let (p, a) = [(2, 5), (3, 3), (5, 2), (7, 2)][n % 4];
            let f = random_element(&mut rng, p, a);
            assert_eq!(RingElement::interpolate(p, a, &f.to_function()).unwrap(), f);
        }
    }

    #[test]
    fn degree_examples() {
        let f = RingElement::monomial(3, 2, &[2, 1]).unwrap();
        assert_eq!(f.degree(), Degree::Finite(3));
        assert_eq!(
            RingElement::constant(3, 2, 2).unwrap().degree(),
            Degree::Finite(0)
        );
        let zero = RingElement::zero(3, 2).unwrap();
        assert_eq!(zero.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert!(zero.degree().at_most(0));
    }

    #[test]
    fn translate_examples() {
        let x1 = RingElement::variable(3, 2, 0).unwrap();
        let e1 = Vector::basis(3, 2, 0);
        let expect = &x1 + &RingElement::constant(3, 2, 1).unwrap();
        assert_eq!(x1.translate(&e1).unwrap(), expect);
        let c = RingElement::constant(3, 2, 2).unwrap();
        assert_eq!(
            c.translate(&Vector::new(3, vec![2, 1]).unwrap()).unwrap(),
            c
        );
    }

    #[test]
    fn translate_agrees_with_shifted_table() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for (p, a) in [(2, 4), (3, 3), (5, 2)] {
            for _ in 0..20 {
                let f = random_element(&mut rng, p, a);
                let v = random_vector(&mut rng, p, a);
                let table = f.to_function();
                let moved = f.translate(&v).unwrap().to_function();
                for (w, &val) in moved.iter().enumerate() {
                    let shifted = v.add(&Vector::from_index(p, a, w)).index();
                    assert_eq!(val, table[shifted]);
                }
            }
        }
    }

    #[test]
    fn translation_is_an_action() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for (p, a) in [(2, 3), (3, 2), (5, 2)] {
            for _ in 0..20 {
                let f = random_element(&mut rng, p, a);
                let u = random_vector(&mut rng, p, a);
                let v = random_vector(&mut rng, p, a);
                let twice = f.translate(&u).unwrap().translate(&v).unwrap();
                assert_eq!(twice, f.translate(&u.add(&v)).unwrap());
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let x1 = RingElement::variable(3, 2, 0).unwrap();
        let e1 = Vector::basis(3, 2, 0);
        let comm = x1.commutator_translation(&e1).unwrap();
        assert_eq!(comm, RingElement::constant(3, 2, 1).unwrap());
        assert_eq!(comm.to_function(), vec![1; 9]);

        let c = RingElement::constant(5, 2, 3).unwrap();
        assert!(c
            .commutator_translation(&Vector::new(5, vec![4, 2]).unwrap())
            .unwrap()
            .is_zero());

        let comm = x1x2(2)
            .commutator_translation(&Vector::basis(2, 2, 0))
            .unwrap();
        let x2 = RingElement::variable(2, 2, 1).unwrap();
        assert_eq!(comm, x2);
        assert_eq!(comm.to_function(), x2.to_function());
    }

    #[test]
    fn commutators_lower_degree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for (p, a) in [(2, 4), (3, 3), (5, 2)] {
            for _ in 0..50 {
                let f = random_element(&mut rng, p, a);
                let v = random_vector(&mut rng, p, a);
                let Degree::Finite(d) = f.degree() else {
                    continue;
                };
                if d == 0 || v.is_zero() {
                    continue;
                }
                let c = f.commutator_translation(&v).unwrap();
                assert!(c.degree().at_most(d - 1), "deg {} from deg {d}", c.degree());
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for (p, a) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            for _ in 0..25 {
                let f = random_element(&mut rng, p, a);
                let g = random_element(&mut rng, p, a);
                let v = random_vector(&mut rng, p, a);
                let fv = f.evaluate(&v).unwrap();
                let gv = g.evaluate(&v).unwrap();
                assert_eq!((&f * &g).evaluate(&v).unwrap(), mul_mod(fv, gv, p));
                assert_eq!((&f + &g).evaluate(&v).unwrap(), add_mod(fv, gv, p));
                assert_eq!((-&f).evaluate(&v).unwrap(), sub_mod(0, fv, p));
            }
        }
    }

    #[test]
    fn quotient_relation_holds() {
        // x^p = x in the quotient
        for p in [2u32, 3, 5] {
            let x = RingElement::variable(p, 1, 0).unwrap();
            let power = (1..p).fold(x.clone(), |acc, _| &acc * &x);
            assert_eq!(power, x);
        }
    }

    #[test]
    fn nonzero_counts() {
        assert_eq!(x1x2(2).count_nonzeros(), 1);
        assert_eq!(RingElement::constant(3, 3, 2).unwrap().count_nonzeros(), 27);
        assert_eq!(RingElement::zero(3, 3).unwrap().count_nonzeros(), 0);
    }

    #[test]
    fn min_nonzeros_examples() {
        assert_eq!(
            min_nonzeros_bruteforce(3, 2, 2, DEFAULT_SEARCH_CAP).unwrap(),
            2
        );
        assert_eq!(
            min_nonzeros_bruteforce(2, 3, 3, DEFAULT_SEARCH_CAP).unwrap(),
            2
        );
        for (a, p) in [(1, 2), (3, 2), (2, 3), (2, 5)] {
            let expect = (p as usize).pow(a);
            assert_eq!(
                min_nonzeros_bruteforce(a, p, 0, DEFAULT_SEARCH_CAP).unwrap(),
                expect
            );
        }
        // the witnesses named for the examples above
        assert_eq!(
            RingElement::monomial(2, 3, &[1, 1, 0])
                .unwrap()
                .count_nonzeros(),
            2
        );
        let one = RingElement::constant(3, 2, 1).unwrap();
        let w = &(&one - &RingElement::monomial(3, 2, &[2, 0]).unwrap())
            * &(&one + &RingElement::variable(3, 2, 1).unwrap());
        assert_eq!(w.degree(), Degree::Finite(3));
        assert_eq!(w.count_nonzeros(), 2);
    }

    #[test]
    fn min_nonzeros_errors() {
        assert!(matches!(
            min_nonzeros_bruteforce(3, 2, 4, DEFAULT_SEARCH_CAP),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            min_nonzeros_bruteforce(5, 2, 5, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn serializes_nonzero_terms() {
        let f = &x1x2(3) + &RingElement::constant(3, 2, 2).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), "[[[0,0],2],[[1,1],1]]");
        assert_eq!(f.to_string(), "2 + x1*x2");
    }
}
