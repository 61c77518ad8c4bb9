//! Random digraphs for tests and sweeps.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::{Digraph, Result};

/// Arbitrary digraph with each ordered pair `u != v` present with
/// probability `p`.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Result<Digraph> {
    let mut g = Digraph::new(n)?;
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Random transitive digraph on `n` vertices.
///
/// Vertices are split into cliques (a cut between consecutive vertices with
/// probability `split`), cliques get a random DAG with forward arcs present
/// with probability `p`, the DAG is closed transitively and the labels are
/// shuffled.
pub fn random_transitive<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    split: f64,
    p: f64,
) -> Result<Digraph> {
    let mut g = Digraph::new(n)?;
    let mut block_of = Vec::with_capacity(n);
    let mut blocks = 0;
    for v in 0..n {
        if v > 0 && rng.gen_bool(split.clamp(0.0, 1.0)) {
            blocks += 1;
        }
        block_of.push(blocks);
    }
    let t = blocks + 1;

    // Closed block reachability, filled from the last block backwards.
    let mut reach = vec![FixedBitSet::with_capacity(t); t];
    for i in (0..t).rev() {
        reach[i].insert(i);
        for j in i + 1..t {
            if !reach[i].contains(j) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                let row = reach[j].clone();
                reach[i].union_with(&row);
            }
        }
    }

    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    for u in 0..n {
        for v in 0..n {
            if u != v && reach[block_of[u]].contains(block_of[v]) {
                g.add_edge(label[u], label[v])?;
            }
        }
    }
    Ok(g)
}
