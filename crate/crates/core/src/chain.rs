//! Stabilizer chains by the incremental Schreier-Sims algorithm, with base
//! points `n-1, n-2, ..., 0` in that order.
//!
//! Permutations here are packed image arrays and compose as functions:
//! `compose(a, b)[x] = a[b[x]]`.

use num_bigint::BigUint;

type Packed = Vec<u8>;

fn compose(a: &[u8], b: &[u8]) -> Packed {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn inverse(a: &[u8]) -> Packed {
    let mut inv = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

#[derive(Debug, Clone)]
struct Level {
    /// Generators of the group fixing every point above this level.
    gens: Vec<Packed>,
    /// `trans[i]` maps the level's base point to `i`.
    trans: Vec<Option<Packed>>,
}

enum Task {
    Add(usize, Packed),
    Close(usize, Packed),
}

/// `G = G_{n-1} >= ... >= G_0 >= 1`, `G_{k-1}` the stabilizer of `k` in `G_k`.
#[derive(Debug, Clone)]
pub(crate) struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub(crate) fn new(n: usize, generators: &[Packed]) -> Self {
        let identity: Packed = (0..n).map(|i| i as u8).collect();
        let levels = (0..n)
            .map(|k| {
                let mut trans = vec![None; n];
                trans[k] = Some(identity.clone());
                Level {
                    gens: Vec::new(),
                    trans,
                }
            })
            .collect();
        let mut chain = StabilizerChain { n, levels };
        let mut tasks: Vec<Task> = generators
            .iter()
            .map(|g| Task::Add(n - 1, g.clone()))
            .collect();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Add(k, pi) => {
                    if chain.sift(k, &pi) {
                        continue;
                    }
                    for sigma in chain.levels[k].trans.iter().flatten() {
                        tasks.push(Task::Close(k, compose(&pi, sigma)));
                    }
                    chain.levels[k].gens.push(pi);
                }
                Task::Close(k, tau) => {
                    let i = tau[k] as usize;
                    match &chain.levels[k].trans[i] {
                        Some(sigma) => {
                            if k > 0 {
                                tasks.push(Task::Add(k - 1, compose(&inverse(sigma), &tau)));
                            }
                        }
                        None => {
                            for t in &chain.levels[k].gens {
                                tasks.push(Task::Close(k, compose(t, &tau)));
                            }
                            chain.levels[k].trans[i] = Some(tau);
                        }
                    }
                }
            }
        }
        chain
    }

    /// Whether `pi`, which fixes every point above `k`, lies in `G_k`.
    fn sift(&self, k: usize, pi: &[u8]) -> bool {
        let mut h = pi.to_vec();
        for j in (0..=k).rev() {
            match &self.levels[j].trans[h[j] as usize] {
                Some(sigma) => h = compose(&inverse(sigma), &h),
                None => return false,
            }
        }
        true
    }

    pub(crate) fn contains(&self, pi: &[u8]) -> bool {
        pi.len() == self.n && self.sift(self.n - 1, pi)
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.trans.iter().flatten().count()))
            .product()
    }

    /// Every element exactly once, as `sigma_{n-1} o ... o sigma_0`,
    /// appended to `out` as packed image arrays.
    pub(crate) fn write_elements(&self, out: &mut Vec<u8>) {
        let identity: Packed = (0..self.n).map(|i| i as u8).collect();
        let reps: Vec<Vec<&Packed>> = self
            .levels
            .iter()
            .map(|l| l.trans.iter().flatten().collect())
            .collect();
        // skip levels whose transversal is trivial
        let active: Vec<&Vec<&Packed>> = reps.iter().rev().filter(|r| r.len() > 1).collect();
        fn walk(active: &[&Vec<&Packed>], acc: &[u8], out: &mut Vec<u8>) {
            match active.split_first() {
                None => out.extend_from_slice(acc),
                Some((level, rest)) => {
                    for sigma in level.iter() {
                        walk(rest, &compose(acc, sigma), out);
                    }
                }
            }
        }
        walk(&active, &identity, out);
    }
}
