//! Small permutation groups given by generators, with exhaustive oracles
//! for the minimal degree and the base size.
//!
//! Permutations act on the right: `g.compose(h)` applies `g` first, then `h`.
//! Orders come from a stabilizer chain; element sets are listed from the
//! chain and stored as one sorted, flat array of packed image arrays.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::output::{serialize_biguint, serialize_rounded};

/// Default limit on enumerated group orders.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;
/// Default limit on the permutation degree of constructed groups.
pub const DEFAULT_DEGREE_CAP: u64 = 256;
/// Default limit on nodes visited by the exhaustive base search.
pub const DEFAULT_NODE_CAP: u64 = 1_000_000;

/// Points are packed as bytes in enumerated element sets.
const MAX_PACKED_DEGREE: usize = 256;

/// Resource limits shared by the oracles and constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub degree: u64,
    pub search_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            elements: DEFAULT_ELEMENT_CAP,
            degree: DEFAULT_DEGREE_CAP,
            search_nodes: DEFAULT_NODE_CAP,
        }
    }
}

impl Caps {
    pub(crate) fn check_degree(&self, n: u64) -> Result<()> {
        if n > self.degree {
            return Err(Error::CapExceeded {
                what: "degree",
                value: n as u128,
                cap: self.degree as u128,
            });
        }
        Ok(())
    }
}

/// A bijection of `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let slot = seen.get_mut(x as usize).ok_or_else(|| {
                Error::InvalidPermutation(format!("image {x} out of range for degree {n}"))
            })?;
            if *slot {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x as usize >= n || next as usize >= n {
                    return Err(Error::InvalidPermutation(format!("point {x} out of range")));
                }
                images[x as usize] = next;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Number of moved points.
    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .count()
    }

    /// `conj^-1 * self * conj`: the same permutation with points relabeled by `conj`.
    pub fn conjugate(&self, conj: &Permutation) -> Permutation {
        conj.inverse().compose(self).compose(conj)
    }
}

/// Every element of a group, packed and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    degree: usize,
    data: Vec<u8>,
}

impl ElementSet {
    pub fn len(&self) -> usize {
        self.data.len() / self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.degree)
    }

    pub fn contains(&self, images: &[u8]) -> bool {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn contains_permutation(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.contains(&pack(g))
    }

    pub fn permutation(&self, i: usize) -> Permutation {
        Permutation {
            images: self.get(i).iter().map(|&x| x as u32).collect(),
        }
    }
}

fn pack(g: &Permutation) -> Vec<u8> {
    g.images.iter().map(|&x| x as u8).collect()
}

/// A permutation group given by generators. The element set is computed on
/// first request and cached.
#[derive(Debug, Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
    elements: OnceLock<ElementSet>,
}

impl GeneratedGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(GeneratedGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The cached element set, if it has been enumerated.
    pub fn cached_elements(&self) -> Option<&ElementSet> {
        self.elements.get()
    }

    fn check_packable(&self) -> Result<()> {
        if self.degree > MAX_PACKED_DEGREE {
            return Err(Error::CapExceeded {
                what: "degree for enumeration",
                value: self.degree as u128,
                cap: MAX_PACKED_DEGREE as u128,
            });
        }
        Ok(())
    }

    fn chain(&self) -> Result<&StabilizerChain> {
        self.check_packable()?;
        let gens: Vec<Vec<u8>> = self.generators.iter().map(pack).collect();
        Ok(self
            .chain
            .get_or_init(|| StabilizerChain::new(self.degree, &gens)))
    }

    /// Exact group order, without listing elements.
    pub fn exact_order(&self) -> Result<BigUint> {
        Ok(self.chain()?.order())
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        Ok(g.degree() == self.degree && self.chain()?.contains(&pack(g)))
    }

    /// The full element set, sorted. Fails if the order exceeds `cap`.
    pub fn enumerate_elements(&self, cap: usize) -> Result<&ElementSet> {
        if let Some(set) = self.elements.get() {
            return Ok(set);
        }
        self.order(cap)?;
        let n = self.degree;
        let mut raw = Vec::new();
        self.chain()?.write_elements(&mut raw);
        let count = raw.len() / n;
        let mut index: Vec<u32> = (0..count as u32).collect();
        let key = |i: u32| &raw[i as usize * n..(i as usize + 1) * n];
        index.sort_unstable_by(|&x, &y| key(x).cmp(key(y)));
        let mut data = Vec::with_capacity(raw.len());
        for i in index {
            data.extend_from_slice(key(i));
        }
        let _ = self.elements.set(ElementSet { degree: n, data });
        Ok(self.elements.get().expect("just populated"))
    }

    /// Group order, failing if it exceeds `cap`.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let order = self.exact_order()?;
        match order.to_usize() {
            Some(k) if k <= cap => Ok(k),
            _ => Err(Error::ElementCap { cap, order }),
        }
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for (i, &x) in g.images().iter().enumerate() {
                uf.union(i, x as usize);
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The same group with points relabeled by `relabel`.
    pub fn conjugate(&self, relabel: &Permutation) -> Result<GeneratedGroup> {
        GeneratedGroup::new(
            self.degree,
            self.generators
                .iter()
                .map(|g| g.conjugate(relabel))
                .collect(),
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // keep the smaller index as root
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }

    fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x as u32);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Minimal number of points moved by a non-identity element.
pub fn minimal_degree_oracle(group: &GeneratedGroup, cap: usize) -> Result<usize> {
    let elements = group.enumerate_elements(cap)?;
    elements
        .iter()
        .map(|g| {
            g.iter()
                .enumerate()
                .filter(|&(i, &x)| i != x as usize)
                .count()
        })
        .filter(|&moved| moved > 0)
        .min()
        .ok_or(Error::TrivialGroup)
}

/// Result of the exhaustive base search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseSearch {
    /// Minimal base size.
    pub size: usize,
    /// A base of that size.
    pub base: Vec<u32>,
    /// Size of the greedy base that seeded the search.
    pub greedy: usize,
    /// Search nodes visited while proving minimality.
    pub nodes: u64,
}

/// Indices of the elements of `subset` fixing `point`.
fn fixing(elements: &ElementSet, subset: &[u32], point: u32) -> Vec<u32> {
    subset
        .iter()
        .copied()
        .filter(|&i| elements.get(i as usize)[point as usize] as u32 == point)
        .collect()
}

/// Orbit sizes of the subgroup `subset` on every point.
fn orbit_classes(elements: &ElementSet, subset: &[u32]) -> Vec<Vec<u32>> {
    let n = elements.degree();
    let mut uf = UnionFind::new(n);
    for &i in subset {
        for (x, &y) in elements.get(i as usize).iter().enumerate() {
            uf.union(x, y as usize);
        }
    }
    uf.classes()
}

struct BaseSearcher<'a> {
    elements: &'a ElementSet,
    nodes: u64,
    node_cap: u64,
}

impl BaseSearcher<'_> {
    /// Looks for a base of at most `budget` further points for the subgroup
    /// `stab`, avoiding points marked in `excluded`.
    ///
    /// Only the least point of each nontrivial orbit of `stab` is tried: any
    /// other point of that orbit is its image under some element of `stab`,
    /// which carries a whole base onto another base. Once an orbit fails it
    /// is excluded from the remaining siblings and their subtrees. The
    /// excluded set is a union of orbits of an ancestor stabilizer, hence
    /// invariant under `stab`, so the representative argument still holds.
    fn search(
        &mut self,
        stab: &[u32],
        budget: usize,
        prefix: &mut Vec<u32>,
        excluded: &mut [bool],
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::SearchCap { cap: self.node_cap });
        }
        if stab.len() == 1 {
            return Ok(true);
        }
        if budget == 0 {
            return Ok(false);
        }
        let orbits = orbit_classes(self.elements, stab);
        let largest = orbits.iter().map(Vec::len).max().unwrap_or(1) as u128;
        // each fixed point divides the order by its orbit length, at most `largest`
        let mut needed = 0usize;
        let mut reach = 1u128;
        while reach < stab.len() as u128 {
            reach = reach.saturating_mul(largest);
            needed += 1;
        }
        if needed > budget {
            return Ok(false);
        }
        // a nonidentity element moving only excluded points can never be killed
        let stuck = stab.iter().any(|&i| {
            let g = self.elements.get(i as usize);
            let mut moves = false;
            for (x, &y) in g.iter().enumerate() {
                if x != y as usize {
                    if !excluded[x] {
                        return false;
                    }
                    moves = true;
                }
            }
            moves
        });
        if stuck {
            return Ok(false);
        }
        let mut undo = Vec::new();
        let mut found = false;
        let candidates: Vec<&Vec<u32>> = orbits
            .iter()
            .filter(|o| o.len() > 1 && !excluded[o[0] as usize])
            .collect();
        for orbit in candidates {
            let point = orbit[0];
            let next = fixing(self.elements, stab, point);
            prefix.push(point);
            if self.search(&next, budget - 1, prefix, excluded)? {
                found = true;
                break;
            }
            prefix.pop();
            for &x in orbit {
                excluded[x as usize] = true;
                undo.push(x);
            }
        }
        for x in undo {
            excluded[x as usize] = false;
        }
        Ok(found)
    }
}

/// Greedy base: repeatedly fix the point moved by the most elements of the
/// current stabilizer, lowest index on ties.
pub fn greedy_base(group: &GeneratedGroup, cap: usize) -> Result<Vec<u32>> {
    let elements = group.enumerate_elements(cap)?;
    let n = elements.degree();
    let mut stab: Vec<u32> = (0..elements.len() as u32).collect();
    let mut base = Vec::new();
    while stab.len() > 1 {
        let mut moved = vec![0usize; n];
        for &i in &stab {
            for (x, &y) in elements.get(i as usize).iter().enumerate() {
                if x != y as usize {
                    moved[x] += 1;
                }
            }
        }
        let point = (0..n)
            .max_by(|&x, &y| moved[x].cmp(&moved[y]).then(y.cmp(&x)))
            .expect("degree is positive") as u32;
        stab = fixing(elements, &stab, point);
        base.push(point);
    }
    Ok(base)
}

/// Smallest base size, proven by exhaustive search below the greedy value.
pub fn base_size_search(group: &GeneratedGroup, caps: &Caps) -> Result<BaseSearch> {
    let elements = group.enumerate_elements(caps.elements)?;
    let greedy = greedy_base(group, caps.elements)?;
    let mut best = greedy.clone();
    let mut searcher = BaseSearcher {
        elements,
        nodes: 0,
        node_cap: caps.search_nodes,
    };
    let all: Vec<u32> = (0..elements.len() as u32).collect();
    // a base of size m extends to one of size m + 1, so stop at the first failure
    while !best.is_empty() {
        let mut prefix = Vec::new();
        let mut excluded = vec![false; elements.degree()];
        if searcher.search(&all, best.len() - 1, &mut prefix, &mut excluded)? {
            best = prefix;
        } else {
            break;
        }
    }
    Ok(BaseSearch {
        size: best.len(),
        base: best,
        greedy: greedy.len(),
        nodes: searcher.nodes,
    })
}

pub fn base_size_oracle(group: &GeneratedGroup, caps: &Caps) -> Result<usize> {
    Ok(base_size_search(group, caps)?.size)
}

/// Whether the pointwise stabilizer of `points` is trivial.
pub fn is_base(group: &GeneratedGroup, points: &[u32], cap: usize) -> Result<bool> {
    let elements = group.enumerate_elements(cap)?;
    let mut stab: Vec<u32> = (0..elements.len() as u32).collect();
    for &pt in points {
        stab = fixing(elements, &stab, pt);
    }
    Ok(stab.len() == 1)
}

/// Degree, order, minimal degree and base size of a group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub n: u64,
    #[serde(serialize_with = "serialize_biguint")]
    pub order: BigUint,
    pub mu: u64,
    pub base_size: u64,
    pub product: u128,
    /// `ln(mu * base_size) / ln(n)`.
    #[serde(serialize_with = "serialize_rounded")]
    pub exponent: f64,
    pub transitive: bool,
}

impl InvariantReport {
    pub fn from_parts(n: u64, order: BigUint, mu: u64, base_size: u64, transitive: bool) -> Self {
        let product = mu as u128 * base_size as u128;
        InvariantReport {
            n,
            order,
            mu,
            base_size,
            product,
            exponent: (product as f64).ln() / (n as f64).ln(),
            transitive,
        }
    }

    /// `mu * b >= n`, required of every transitive group.
    pub fn satisfies_lower_bound(&self) -> bool {
        !self.transitive || self.product >= self.n as u128
    }
}

/// Runs both oracles and assembles the report.
pub fn invariant_report(group: &GeneratedGroup, caps: &Caps) -> Result<InvariantReport> {
    let order = group.order(caps.elements)?;
    let mu = minimal_degree_oracle(group, caps.elements)?;
    let base = base_size_oracle(group, caps)?;
    Ok(InvariantReport::from_parts(
        group.degree() as u64,
        BigUint::from(order),
        mu as u64,
        base as u64,
        group.is_transitive(),
    ))
}
