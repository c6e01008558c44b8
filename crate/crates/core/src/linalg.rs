//! Dense linear algebra over a prime field `F_p`.
//!
//! Vectors are `Vec<u32>` of residues in `0..p`. Subspaces are kept in
//! reduced row echelon form with pivots at the first nonzero column, so two
//! subspaces are equal exactly when their echelon rows are equal.

use crate::error::{Error, Result};

pub(crate) fn mul_mod(x: u32, y: u32, p: u32) -> u32 {
    ((x as u64 * y as u64) % p as u64) as u32
}

pub(crate) fn add_mod(x: u32, y: u32, p: u32) -> u32 {
    ((x as u64 + y as u64) % p as u64) as u32
}

pub(crate) fn sub_mod(x: u32, y: u32, p: u32) -> u32 {
    add_mod(x, p - y % p, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let mut result = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, p);
        }
        b = mul_mod(b, b, p);
        exp >>= 1;
    }
    result
}

/// Multiplicative inverse by Fermat; `x` must be nonzero mod `p`.
pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    pow_mod(x, p as u64 - 2, p)
}

/// `target -= factor * source`, entrywise mod `p`.
fn axpy_neg(target: &mut [u32], factor: u32, source: &[u32], p: u32) {
    if factor == 0 {
        return;
    }
    for (t, &s) in target.iter_mut().zip(source) {
        if s != 0 {
            *t = sub_mod(*t, mul_mod(factor, s, p), p);
        }
    }
}

/// A subspace of `F_p^len` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonBasis {
    p: u32,
    len: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(p: u32, len: usize) -> Self {
        EchelonBasis {
            p,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I>(p: u32, len: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut basis = EchelonBasis::new(p, len);
        for v in vectors {
            basis.insert(v)?;
        }
        Ok(basis)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the current rows.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            axpy_neg(&mut v, f, row, self.p);
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u32>) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::Mismatch(format!(
                "vector of length {} in F_{}^{}",
                v.len(),
                self.p,
                self.len
            )));
        }
        let p = self.p;
        let v: Vec<u32> = v.into_iter().map(|x| x % p).collect();
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let scale = inv_mod(v[pivot], p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, scale, p);
        }
        for row in self.rows.iter_mut() {
            let f = row[pivot];
            axpy_neg(row, f, &v, p);
        }
        let at = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        Ok(true)
    }
}

/// Inverse of a square matrix over `F_p`, or `None` when singular.
pub fn invert_matrix(p: u32, matrix: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<u32>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r: Vec<u32> = row.iter().map(|&x| x % p).collect();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot_row);
        let scale = inv_mod(aug[col][col], p);
        for x in aug[col].iter_mut() {
            *x = mul_mod(*x, scale, p);
        }
        let pivot = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != col {
                let f = row[col];
                axpy_neg(row, f, &pivot, p);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
