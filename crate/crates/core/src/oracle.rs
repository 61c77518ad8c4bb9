//! Brute-force ground truth for small `n`.
//!
//! A transitive digraph is a set of cliques (its strongly connected
//! components) together with a partial order of reachability between them,
//! so weights can be enumerated over clique posets instead of raw edge sets.
//! Posets are generated in a natural labeling: blocks are added one at a time
//! and each new block is reached exactly by a down-closed set of the blocks
//! before it. Every poset has such a labeling, so this covers all of them
//! (isomorphic copies are visited more than once, which only costs time).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Digraph, Error, Result, Tables, WeightSet};

/// Largest `n` for full weight-set enumeration.
pub const MAX_ENUMERATION_N: u64 = 8;
/// Largest `n` for targeted witness search.
pub const MAX_SEARCH_N: u64 = 11;

/// Clique sizes plus a reflexive, transitive, antisymmetric reachability
/// relation between the cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePoset {
    block_sizes: Vec<usize>,
    /// `reach[i]` has bit `j` set when block `i` reaches block `j`.
    reach: Vec<u32>,
}

impl CliquePoset {
    pub fn new(block_sizes: Vec<usize>, reach: Vec<u32>) -> Result<Self> {
        let p = Self { block_sizes, reach };
        if p.block_sizes.is_empty()
            || p.block_sizes.len() > 32
            || p.reach.len() != p.block_sizes.len()
        {
            return Err(Error::domain(
                p.block_sizes.len(),
                "need 1..=32 blocks with one reach row each",
            ));
        }
        if p.block_sizes.contains(&0) {
            return Err(Error::domain(0, "block sizes must be positive"));
        }
        if !p.is_partial_order() {
            return Err(Error::PreconditionViolated(
                "reachability is not a partial order".into(),
            ));
        }
        Ok(p)
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.reach[i] >> j & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    fn is_partial_order(&self) -> bool {
        let t = self.block_sizes.len();
        (0..t).all(|i| self.reaches(i, i))
            && (0..t).all(|i| (0..t).all(|j| i == j || !(self.reaches(i, j) && self.reaches(j, i))))
            && (0..t).all(|i| {
                (0..t)
                    .filter(|&j| self.reaches(i, j))
                    .all(|j| self.reach[j] & !self.reach[i] == 0)
            })
    }

    /// `Σ n_i·n_j` over ordered block pairs with `i` reaching `j`.
    pub fn weight(&self) -> u64 {
        let t = self.block_sizes.len();
        let mut w = 0;
        for i in 0..t {
            for j in 0..t {
                if self.reaches(i, j) {
                    w += (self.block_sizes[i] * self.block_sizes[j]) as u64;
                }
            }
        }
        w
    }

    /// The transitive digraph with these blocks, numbered consecutively.
    pub fn expand(&self) -> Digraph {
        let mut start = Vec::with_capacity(self.block_sizes.len());
        let mut next = 0;
        for &s in &self.block_sizes {
            start.push(next);
            next += s;
        }
        let mut g = Digraph::new(next).expect("blocks are nonempty");
        for (i, &si) in self.block_sizes.iter().enumerate() {
            for (j, &sj) in self.block_sizes.iter().enumerate() {
                if !self.reaches(i, j) {
                    continue;
                }
                for u in start[i]..start[i] + si {
                    for v in start[j]..start[j] + sj {
                        if u != v {
                            g.add_edge(u, v).expect("in range");
                        }
                    }
                }
            }
        }
        g
    }
}

/// Partial clique poset built in natural order.
struct Builder {
    sizes: Vec<usize>,
    /// `reached_by[j]`: blocks that reach block `j`, itself included.
    reached_by: Vec<u32>,
}

impl Builder {
    fn new() -> Self {
        Self {
            sizes: Vec::new(),
            reached_by: Vec::new(),
        }
    }

    /// Down-closed subsets of the current blocks, largest mask first.
    fn down_sets(&self) -> impl Iterator<Item = u32> + '_ {
        let t = self.sizes.len() as u32;
        (0..1u32 << t).rev().filter(move |&mask| {
            (0..t).all(|i| mask >> i & 1 == 0 || self.reached_by[i as usize] & !mask == 0)
        })
    }

    fn mass(&self, mask: u32) -> usize {
        self.sizes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s)
            .sum()
    }

    fn push(&mut self, size: usize, below: u32) {
        let j = self.sizes.len();
        self.sizes.push(size);
        self.reached_by.push(below | 1 << j);
    }

    fn pop(&mut self) {
        self.sizes.pop();
        self.reached_by.pop();
    }

    fn to_poset(&self) -> CliquePoset {
        let t = self.sizes.len();
        let mut reach = vec![0u32; t];
        for (j, &by) in self.reached_by.iter().enumerate() {
            for (i, row) in reach.iter_mut().enumerate() {
                if by >> i & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        CliquePoset {
            block_sizes: self.sizes.clone(),
            reach,
        }
    }
}

fn enumerate(builder: &mut Builder, remaining: usize, weight: u64, seen: &mut [bool]) {
    if remaining == 0 {
        seen[weight as usize] = true;
        return;
    }
    let downs: Vec<u32> = builder.down_sets().collect();
    for size in 1..=remaining {
        for &below in &downs {
            let added = (size * size + size * builder.mass(below)) as u64;
            builder.push(size, below);
            enumerate(builder, remaining - size, weight + added, seen);
            builder.pop();
        }
    }
}

/// `W(n)` by exhaustive enumeration of clique posets, `1 <= n <= 8`.
pub fn oracle_weight_set(n: u64) -> Result<WeightSet> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::domain(n, "oracle enumeration supports 1 <= n <= 8"));
    }
    let n = n as usize;
    // One task per size of the first block.
    let seen = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut seen = vec![false; n * n + 1];
            let mut builder = Builder::new();
            builder.push(first, 0);
            enumerate(&mut builder, n - first, (first * first) as u64, &mut seen);
            seen
        })
        .reduce(
            || vec![false; n * n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    Ok(WeightSet::from_intervals(
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(k, _)| (k as u64, k as u64)),
    ))
}

fn search(
    builder: &mut Builder,
    remaining: usize,
    placed: usize,
    weight: u64,
    target: u64,
) -> bool {
    if remaining == 0 {
        return weight == target;
    }
    let r = remaining as u64;
    let left = target.checked_sub(weight);
    match left {
        Some(left) if left >= r && left <= r * r + r * placed as u64 => {}
        _ => return false,
    }
    let downs: Vec<u32> = builder.down_sets().collect();
    for size in (1..=remaining).rev() {
        for &below in &downs {
            let added = (size * size + size * builder.mass(below)) as u64;
            if weight + added > target {
                continue;
            }
            builder.push(size, below);
            if search(
                builder,
                remaining - size,
                placed + size,
                weight + added,
                target,
            ) {
                return true;
            }
            builder.pop();
        }
    }
    false
}

/// A clique poset on `n <= 11` vertices of weight `k`, found by depth-first
/// search with weight-window pruning. Membership of `k` in `W(n)` is checked
/// first, so unachievable targets fail fast.
pub fn oracle_poset(tables: &Tables, n: u64, k: u64) -> Result<CliquePoset> {
    if !(1..=MAX_SEARCH_N).contains(&n) {
        return Err(Error::domain(
            n,
            "oracle witness search supports 1 <= n <= 11",
        ));
    }
    let w = tables.weight_set(n)?;
    if !w.contains(k) {
        let (below, above) = w.neighbors(k);
        return Err(Error::NotAchievable { n, k, below, above });
    }
    let mut builder = Builder::new();
    if search(&mut builder, n as usize, 0, 0, k) {
        Ok(builder.to_poset())
    } else {
        Err(Error::Internal(format!(
            "no clique poset of weight {k} on {n} vertices"
        )))
    }
}

/// Concrete transitive digraph on `n <= 11` vertices with weight `k`.
pub fn oracle_witness(tables: &Tables, n: u64, k: u64) -> Result<Digraph> {
    Ok(oracle_poset(tables, n, k)?.expand())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_set_examples() {
        assert_eq!(oracle_weight_set(3).unwrap().intervals(), &[(3, 7), (9, 9)]);
        assert_eq!(
            oracle_weight_set(5).unwrap().intervals(),
            &[(5, 19), (21, 21), (25, 25)]
        );
        assert_eq!(oracle_weight_set(1).unwrap().intervals(), &[(1, 1)]);
        assert!(oracle_weight_set(0).is_err());
        assert!(oracle_weight_set(9).is_err());
    }

    #[test]
    fn witness_examples() {
        let t = Tables::prepared(11).unwrap();
        assert_eq!(
            oracle_witness(&t, 4, 16).unwrap(),
            Digraph::complete(4).unwrap()
        );
        let g = oracle_witness(&t, 3, 6).unwrap();
        assert!(g.is_transitive());
        assert_eq!(g.weight(), 6);
        assert!(matches!(
            oracle_witness(&t, 4, 14),
            Err(Error::NotAchievable {
                below: Some(13),
                above: Some(16),
                ..
            })
        ));
        assert!(oracle_witness(&t, 12, 20).is_err());
    }

    #[test]
    fn poset_validation() {
        assert!(CliquePoset::new(vec![1, 2], vec![0b01, 0b10]).is_ok());
        // not reflexive
        assert!(CliquePoset::new(vec![1, 2], vec![0b00, 0b10]).is_err());
        // symmetric pair
        assert!(CliquePoset::new(vec![1, 2], vec![0b11, 0b11]).is_err());
        // 0 -> 1 -> 2 without 0 -> 2
        assert!(CliquePoset::new(vec![1, 1, 1], vec![0b011, 0b110, 0b100]).is_err());
        let chain = CliquePoset::new(vec![1, 1, 1], vec![0b111, 0b110, 0b100]).unwrap();
        assert_eq!(chain.weight(), 6);
        assert_eq!(chain.expand().weight(), 6);
    }
}
