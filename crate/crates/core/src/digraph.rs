//! Loop-free digraphs on vertices `0..n`, stored as bitset adjacency rows.
//!
//! Reachable pairs `(v, v)` are implicit: they are never stored as edges but
//! always counted by [`Digraph::weight`].

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    rows: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Every ordered pair of distinct vertices joined by an edge.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (u, row) in g.rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(u, false);
        }
        Ok(g)
    }

    /// Vertex 0 with edges to vertices `1..=leaves`; everything else isolated.
    pub fn star(n: usize, leaves: usize) -> Result<Self> {
        if leaves >= n.max(1) {
            return Err(Error::domain(
                leaves,
                "a star on n vertices has at most n - 1 leaves",
            ));
        }
        Self::from_edges(n, (1..=leaves).map(|v| (0, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds `u -> v`. Re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.rows[u].insert(v);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }

    pub fn out_neighbors(&self, u: usize) -> &FixedBitSet {
        &self.rows[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.rows[u].count_ones(..)
    }

    /// The subgraph induced on `vertices`, relabeled `0..vertices.len()` in
    /// the order given.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut g = Self::new(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.rows[i].insert(j);
                }
            }
        }
        Ok(g)
    }

    /// Prepends `count` mother vertices: the result has `count + n` vertices,
    /// the new vertices `0..count` have edges to every other vertex, and the
    /// old vertex `v` becomes `v + count`.
    pub fn with_mother_vertices(&self, count: usize) -> Self {
        let n = self.n + count;
        let mut rows = Vec::with_capacity(n);
        for a in 0..count {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            row.set(a, false);
            rows.push(row);
        }
        for row in &self.rows {
            let mut shifted = FixedBitSet::with_capacity(n);
            shifted.extend(row.ones().map(|v| v + count));
            rows.push(shifted);
        }
        Self { n, rows }
    }

    /// Strongly connected components in Tarjan order: every component is
    /// listed after all components reachable from it.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0usize; n];
        let mut on_stack = FixedBitSet::with_capacity(n);
        let mut stack = Vec::new();
        let mut components = Vec::new();
        let mut next_index = 0;
        // (vertex, next candidate successor)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack.insert(root);
            call.push((root, 0));

            while let Some((v, pos)) = call.last_mut() {
                let v = *v;
                let row = &self.rows[v];
                while *pos < n && !row.contains(*pos) {
                    *pos += 1;
                }
                if *pos < n {
                    let w = *pos;
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack.insert(w);
                        call.push((w, 0));
                    } else if on_stack.contains(w) {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some((parent, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack.set(w, false);
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    component.sort_unstable();
                    components.push(component);
                }
            }
        }
        components
    }

    /// For every vertex, the set of vertices reachable from it (itself
    /// included). Computed on the condensation: components are processed
    /// sinks-first and each row is the union of its successors' rows.
    fn reach_rows(&self) -> Vec<FixedBitSet> {
        let components = self.strongly_connected_components();
        let mut comp_of = vec![0usize; self.n];
        for (c, members) in components.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let mut reach: Vec<FixedBitSet> = Vec::with_capacity(components.len());
        for (c, members) in components.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(self.n);
            row.extend(members.iter().copied());
            let mut seen = FixedBitSet::with_capacity(components.len());
            for &v in members {
                for w in self.rows[v].ones() {
                    let d = comp_of[w];
                    if d != c && !seen.put(d) {
                        row.union_with(&reach[d]);
                    }
                }
            }
            reach.push(row);
        }
        (0..self.n).map(|v| reach[comp_of[v]].clone()).collect()
    }

    pub fn transitive_closure(&self) -> Self {
        let mut rows = self.reach_rows();
        for (v, row) in rows.iter_mut().enumerate() {
            row.set(v, false);
        }
        Self { n: self.n, rows }
    }

    /// Floyd–Warshall style closure, cubic in `n`. Kept as an independent
    /// cross-check for [`Digraph::transitive_closure`] on small graphs.
    pub fn transitive_closure_naive(&self) -> Self {
        let n = self.n;
        let mut reach: Vec<Vec<bool>> = (0..n)
            .map(|u| (0..n).map(|v| self.rows[u].contains(v)).collect())
            .collect();
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut() {
                if row[k] {
                    for (cell, &through) in row.iter_mut().zip(&via) {
                        *cell |= through;
                    }
                }
            }
        }
        let mut g = Self::new(n).expect("n is positive");
        for (i, row) in reach.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r && i != j {
                    g.rows[i].insert(j);
                }
            }
        }
        g
    }

    /// Number of reachable pairs, diagonal included.
    pub fn weight(&self) -> u64 {
        self.reach_rows()
            .iter()
            .map(|r| r.count_ones(..) as u64)
            .sum()
    }

    /// Every path `u -> v -> w` with `w != u` has the shortcut `u -> w`.
    pub fn is_transitive(&self) -> bool {
        let mut allowed = FixedBitSet::with_capacity(self.n);
        self.rows.iter().enumerate().all(|(u, row)| {
            allowed.clone_from(row);
            allowed.insert(u);
            row.ones().all(|v| self.rows[v].is_subset(&allowed))
        })
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::NotTransitive)
        }
    }

    /// Partitions a transitive digraph into cliques `V_1, ..., V_t` with no
    /// edge from a later block to an earlier one and all-or-nothing edges from
    /// an earlier block to a later one.
    ///
    /// Each step takes the remaining vertex of largest out-degree (within the
    /// remaining subgraph, lowest index on ties) together with every remaining
    /// vertex that has an edge into it.
    pub fn clique_chain_partition(&self) -> Result<CliqueChain> {
        self.require_transitive()?;
        let n = self.n;
        let mut incoming = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in self.edges() {
            incoming[v].insert(u);
        }
        let mut remaining = FixedBitSet::with_capacity(n);
        remaining.insert_range(..);
        let mut degree: Vec<usize> = (0..n).map(|u| self.out_degree(u)).collect();
        let mut blocks: Vec<Vec<usize>> = Vec::new();

        while remaining.count_ones(..) > 0 {
            let alpha = remaining
                .ones()
                .fold(None, |best: Option<usize>, v| match best {
                    Some(b) if degree[b] >= degree[v] => Some(b),
                    _ => Some(v),
                })
                .expect("remaining is nonempty");
            let mut block: Vec<usize> = incoming[alpha]
                .ones()
                .filter(|&b| remaining.contains(b))
                .collect();
            block.push(alpha);
            block.sort_unstable();
            for &x in &block {
                remaining.set(x, false);
            }
            for &x in &block {
                for y in incoming[x].ones() {
                    if remaining.contains(y) {
                        degree[y] -= 1;
                    }
                }
            }
            blocks.push(block);
        }

        let t = blocks.len();
        let mut full = vec![FixedBitSet::with_capacity(t); t];
        for i in 0..t {
            for j in i + 1..t {
                if self.has_edge(blocks[i][0], blocks[j][0]) {
                    full[i].insert(j);
                }
            }
        }
        Ok(CliqueChain { blocks, full })
    }

    /// A maximum clique of a transitive digraph: the largest block of the
    /// clique chain, earliest block on ties.
    pub fn largest_clique(&self) -> Result<Vec<usize>> {
        let mut chain = self.clique_chain_partition()?;
        let mut best = 0;
        for (i, block) in chain.blocks.iter().enumerate() {
            if block.len() > chain.blocks[best].len() {
                best = i;
            }
        }
        Ok(chain.blocks.swap_remove(best))
    }

    /// Vertices with a path to every other vertex.
    pub fn mother_vertices(&self) -> Vec<usize> {
        self.reach_rows()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.count_ones(..) == self.n)
            .map(|(v, _)| v)
            .collect()
    }

    /// Rebuilds a transitive digraph as mother vertices over a smaller
    /// transitive digraph of the same weight.
    ///
    /// With `V_k` the largest clique, `d = n - |V_k|` and `c` the number of
    /// outside vertices weakly adjacent to `V_k`, all but `d - c` vertices of
    /// `V_k` (the lowest-indexed are kept) become mother vertices and the rest
    /// keeps its induced edges. Vertex labels are preserved. The weight of the
    /// result is recomputed and compared with the input.
    pub fn rearrange_to_mother_form(&self) -> Result<(Self, RearrangeReport)> {
        self.require_transitive()?;
        let n = self.n;
        let weight = self.weight();
        let n64 = n as u64;
        if weight == n64 * n64 {
            let report = RearrangeReport {
                weight,
                d: 0,
                c: 0,
                s: 0,
                mothers: (0..n).collect(),
            };
            return Ok((self.clone(), report));
        }

        let clique = self.largest_clique()?;
        let d = n - clique.len();
        let mut in_clique = FixedBitSet::with_capacity(n);
        in_clique.extend(clique.iter().copied());
        let rep = clique[0];
        let c = (0..n)
            .filter(|&x| !in_clique.contains(x) && (self.has_edge(x, rep) || self.has_edge(rep, x)))
            .count();
        let s = 2 * d - c;
        if s >= n {
            return Err(Error::PreconditionViolated(format!(
                "weight {weight} with largest clique {} of {n} leaves no room for a mother vertex \
                 (weight must exceed 3n^2/4 = {})",
                clique.len(),
                3.0 * (n * n) as f64 / 4.0
            )));
        }

        let keep = d - c;
        let mothers: Vec<usize> = clique[keep..].to_vec();
        let mut is_mother = FixedBitSet::with_capacity(n);
        is_mother.extend(mothers.iter().copied());

        let mut out = Self::new(n)?;
        for u in 0..n {
            if is_mother.contains(u) {
                out.rows[u].insert_range(..);
                out.rows[u].set(u, false);
            } else {
                for v in self.rows[u].ones() {
                    if !is_mother.contains(v) {
                        out.rows[u].insert(v);
                    }
                }
            }
        }

        let rebuilt = out.weight();
        if rebuilt != weight {
            return Err(Error::Internal(format!(
                "rearrangement changed the weight from {weight} to {rebuilt}"
            )));
        }
        if out.mother_vertices().is_empty() {
            return Err(Error::Internal(
                "rearranged graph has no mother vertex".into(),
            ));
        }
        Ok((
            out,
            RearrangeReport {
                weight,
                d,
                c,
                s,
                mothers,
            },
        ))
    }

    /// The reachability preorder as a sorted list of pairs, diagonal included.
    pub fn to_preorder(&self) -> Vec<(usize, usize)> {
        self.reach_rows()
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.ones().map(move |v| (u, v)).collect::<Vec<_>>())
            .collect()
    }

    /// Transitive digraph whose reachable pairs are exactly `pairs`, which must
    /// be reflexive and transitive on `0..n`.
    pub fn from_preorder(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let g = Self::from_edges(n, pairs.iter().copied().filter(|(u, v)| u != v))?;
        let mut diag = FixedBitSet::with_capacity(n);
        for &(u, v) in pairs {
            if u == v && u < n {
                diag.insert(u);
            }
        }
        if diag.count_ones(..) != n {
            return Err(Error::PreconditionViolated(
                "relation is not reflexive".into(),
            ));
        }
        g.require_transitive()?;
        Ok(g)
    }

    /// Minimal open set `U_i` of the finite topology given by the preorder:
    /// all vertices reachable from `i`, including `i`.
    pub fn minimal_open_sets(&self) -> Vec<Vec<usize>> {
        self.reach_rows()
            .iter()
            .map(|r| r.ones().collect())
            .collect()
    }
}

/// Ordered clique partition of a transitive digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueChain {
    blocks: Vec<Vec<usize>>,
    full: Vec<FixedBitSet>,
}

impl CliqueChain {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Whether every vertex of block `i` has an edge to every vertex of block
    /// `j`. Only defined for `i < j`.
    pub fn is_full(&self, i: usize, j: usize) -> bool {
        i < j && self.full[i].contains(j)
    }

    /// Checks the partition, clique, no-backward-edge and all-or-nothing
    /// conditions against `g` directly.
    pub fn satisfies_conditions(&self, g: &Digraph) -> bool {
        let n = g.vertex_count();
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return false;
            }
            for &v in block {
                if v >= n || block_of[v] != usize::MAX {
                    return false;
                }
                block_of[v] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return false;
        }
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let (i, j) = (block_of[u], block_of[v]);
                let edge = g.has_edge(u, v);
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => edge,
                    std::cmp::Ordering::Greater => !edge,
                    std::cmp::Ordering::Less => edge == self.is_full(i, j),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Bookkeeping from [`Digraph::rearrange_to_mother_form`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RearrangeReport {
    pub weight: u64,
    /// Number of vertices outside the largest clique.
    pub d: usize,
    /// Outside vertices weakly adjacent to the largest clique.
    pub c: usize,
    /// Non-mother vertices left in the result, `2d - c`.
    pub s: usize,
    pub mothers: Vec<usize>,
}
