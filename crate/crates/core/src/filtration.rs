//! The descending series `B_0 > B_1 > ... > B_{a(p-1)+1} = 0` of the base
//! group `B = F_p^V`, computed once from the degree criterion and once from
//! iterated commutators with the translations `e_i`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::binomials::{multinomial_partial_sum, require_prime};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::ring::{monomials_up_to_degree, ring_size, RingElement, Vector};

/// Default limit on `p^a` for the commutator iteration.
pub const DEFAULT_FILTRATION_CAP: usize = 512;

/// Validated `(p, a, b)` with `b = r(p-1) + s`, `0 <= s < p-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    pub p: u32,
    pub a: u32,
    pub b: u64,
    pub r: u64,
    pub s: u64,
    /// Degree `p^(a+1)` of the permutation action.
    pub n: u64,
    /// `dim B_{a(p-1)-b}`, the partial sum of the extended binomial row.
    pub dim: u64,
}

impl GroupParams {
    pub fn new(p: u32, a: u32, b: u64) -> Result<Self> {
        require_prime(p as u64)?;
        if a == 0 {
            return Err(Error::InvalidParams("a must be positive".into()));
        }
        let top = a as u64 * (p as u64 - 1);
        if b > top {
            return Err(Error::OutOfRange {
                what: "b",
                value: b.min(i64::MAX as u64) as i64,
                min: 0,
                max: top as i64,
            });
        }
        let n = (p as u64).checked_pow(a + 1).ok_or_else(|| {
            Error::InvalidParams(format!("degree {p}^{} does not fit in 64 bits", a + 1))
        })?;
        let dim = multinomial_partial_sum(a as u64, b as i64, p as u64)?
            .to_u64()
            .expect("partial sum is at most p^a");
        let step = p as u64 - 1;
        Ok(GroupParams {
            p,
            a,
            b,
            r: b / step,
            s: b % step,
            n,
            dim,
        })
    }

    /// Largest admissible `b`, namely `a(p-1)`.
    pub fn max_b(&self) -> u64 {
        self.a as u64 * (self.p as u64 - 1)
    }

    /// Filtration level `d = a(p-1) - b` with `G_b = B_d x| V`.
    pub fn level(&self) -> u64 {
        self.max_b() - self.b
    }
}

/// A subspace of the coordinate ring with a canonical echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    p: u32,
    a: u32,
    echelon: EchelonBasis,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn elements(&self) -> Vec<RingElement> {
        self.echelon
            .rows()
            .iter()
            .map(|row| {
                RingElement::from_coeffs(self.p, self.a, row.clone())
                    .expect("rows have ring length")
            })
            .collect()
    }

    pub fn contains(&self, f: &RingElement) -> bool {
        f.p() == self.p && f.a() == self.a && self.echelon.contains(f.coeffs())
    }
}

fn check_level(p: u32, a: u32, d: u64) -> Result<()> {
    let top = a as u64 * (p as u64 - 1) + 1;
    if d > top {
        return Err(Error::OutOfRange {
            what: "d",
            value: d as i64,
            min: 0,
            max: top as i64,
        });
    }
    Ok(())
}

/// `B_d` as the span of monomials of degree at most `a(p-1) - d`.
pub fn degree_filtration_basis(p: u32, a: u32, d: u64) -> Result<SubspaceBasis> {
    let size = ring_size(p, a, DEFAULT_FILTRATION_CAP)?;
    check_level(p, a, d)?;
    let top = a as u64 * (p as u64 - 1);
    let mut echelon = EchelonBasis::new(p, size);
    if d <= top {
        for idx in monomials_up_to_degree(p, a, top - d) {
            let mut v = vec![0u32; size];
            v[idx] = 1;
            echelon.insert(v)?;
        }
    }
    Ok(SubspaceBasis { p, a, echelon })
}

/// `B_0, ..., B_upto` with `B_i` spanned by `[f, e_j]` for `f` in a basis of `B_{i-1}`.
pub fn commutator_filtration_chain(p: u32, a: u32, upto: u64) -> Result<Vec<SubspaceBasis>> {
    let size = ring_size(p, a, DEFAULT_FILTRATION_CAP)?;
    check_level(p, a, upto)?;
    let full = EchelonBasis::from_vectors(
        p,
        size,
        (0..size).map(|i| {
            let mut v = vec![0u32; size];
            v[i] = 1;
            v
        }),
    )?;
    let mut chain = vec![SubspaceBasis {
        p,
        a,
        echelon: full,
    }];
    let translations: Vec<Vector> = (0..a as usize).map(|i| Vector::basis(p, a, i)).collect();
    for _ in 0..upto {
        let prev = chain.last().expect("chain starts with B_0");
        let mut next = EchelonBasis::new(p, size);
        for f in prev.elements() {
            for e in &translations {
                next.insert(f.commutator_translation(e)?.into_coeffs())?;
            }
        }
        chain.push(SubspaceBasis {
            p,
            a,
            echelon: next,
        });
    }
    Ok(chain)
}

pub fn commutator_filtration_basis(p: u32, a: u32, d: u64) -> Result<SubspaceBasis> {
    Ok(commutator_filtration_chain(p, a, d)?
        .pop()
        .expect("chain is nonempty"))
}

/// Outcome of comparing the two constructions level by level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub p: u32,
    pub a: u32,
    pub equal: bool,
    /// `dim B_d` from the degree criterion, `d = 0..=a(p-1)+1`.
    pub dims: Vec<usize>,
    /// `dim B_d` from the commutator iteration.
    pub commutator_dims: Vec<usize>,
}

pub fn filtration_equal(p: u32, a: u32) -> Result<FiltrationReport> {
    let top = a as u64 * (p as u64 - 1) + 1;
    let chain = commutator_filtration_chain(p, a, top)?;
    let mut equal = true;
    let mut dims = Vec::with_capacity(chain.len());
    for (d, comm) in chain.iter().enumerate() {
        let by_degree = degree_filtration_basis(p, a, d as u64)?;
        equal &= by_degree == *comm;
        dims.push(by_degree.dim());
    }
    Ok(FiltrationReport {
        p,
        a,
        equal,
        dims,
        commutator_dims: chain.iter().map(SubspaceBasis::dim).collect(),
    })
}
