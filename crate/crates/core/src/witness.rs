//! Transitive digraphs realizing a prescribed weight.
//!
//! Every construction step places `a` mother vertices (a clique with arcs to
//! everything else) over a smaller witness. On `n` vertices this contributes
//! `n·a` reachable pairs, so the remaining target is `k - n·a` on `n - a`
//! vertices. The recursion bottoms out at a star, a complete digraph, or an
//! exhaustively searched graph for `n <= 11`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::oracle::{self, MAX_SEARCH_N};
use crate::{Digraph, Error, Result, Tables};

/// Largest vertex count for which a witness graph is materialized.
pub const MAX_WITNESS_N: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub vertices: u64,
    pub mothers: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Base {
    /// One centre with arcs to `leaves` other vertices.
    Star {
        vertices: u64,
        leaves: u64,
    },
    Complete {
        vertices: u64,
    },
    /// A searched graph, stored verbatim.
    TableLookup {
        vertices: u64,
        edges: Vec<(usize, usize)>,
    },
}

impl Base {
    pub fn vertices(&self) -> u64 {
        match *self {
            Base::Star { vertices, .. }
            | Base::Complete { vertices }
            | Base::TableLookup { vertices, .. } => vertices,
        }
    }

    fn build(&self) -> Result<Digraph> {
        match self {
            Base::Star { vertices, leaves } => Digraph::star(*vertices as usize, *leaves as usize),
            Base::Complete { vertices } => Digraph::complete(*vertices as usize),
            Base::TableLookup { vertices, edges } => {
                Digraph::from_edges(*vertices as usize, edges.iter().copied())
            }
        }
    }
}

/// How a witness was built, outermost level first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTrace {
    pub target: u64,
    pub levels: Vec<Level>,
    pub base: Base,
}

impl WitnessTrace {
    /// Rebuilds the graph described by the trace.
    pub fn replay(&self) -> Result<Digraph> {
        let mut expected = self.base.vertices();
        for level in self.levels.iter().rev() {
            if level.mothers == 0 || level.vertices != expected + level.mothers {
                return Err(Error::PreconditionViolated(format!(
                    "trace level {level:?} does not sit over {expected} vertices"
                )));
            }
            expected = level.vertices;
        }
        // Mothers of one level reach each other, every deeper level and the
        // base, but nothing above them.
        let base = self.base.build()?;
        let n = expected as usize;
        let mut edges = Vec::new();
        let mut start = 0;
        for level in &self.levels {
            let end = start + level.mothers as usize;
            for u in start..end {
                edges.extend((start..n).filter(|&v| v != u).map(|v| (u, v)));
            }
            start = end;
        }
        edges.extend(base.edges().map(|(u, v)| (u + start, v + start)));
        Digraph::from_edges(n, edges)
    }

    /// Targets `k_0 = k, k_1, ...` at each level followed by the base.
    pub fn level_targets(&self) -> Vec<u64> {
        let mut k = self.target;
        let mut out = vec![k];
        for level in &self.levels {
            k -= level.vertices * level.mothers;
            out.push(k);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub graph: Digraph,
    pub trace: WitnessTrace,
}

/// Edge lists of searched witnesses for every `k ∈ W(n)`, `n <= 11`,
/// built on first use.
type EdgeList = Vec<(usize, usize)>;

fn small_witnesses() -> &'static [BTreeMap<u64, EdgeList>] {
    static TABLE: OnceLock<Vec<BTreeMap<u64, EdgeList>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let tables = Tables::prepared(MAX_SEARCH_N).expect("small tables");
        (1..=MAX_SEARCH_N)
            .map(|n| {
                let w = tables.weight_set(n).expect("prepared");
                w.iter()
                    .map(|k| {
                        let g = oracle::oracle_witness(&tables, n, k).expect("k is achievable");
                        (k, g.edges().collect())
                    })
                    .collect()
            })
            .collect()
    })
}

/// Largest `m` in `[ζ(n), n-1]` with `k ∈ [n(n-m)+m, n(n-m)+b(m)]`.
fn interval_step(tables: &Tables, n: u64, k: u64) -> Result<u64> {
    let z = tables.zeta(n)?;
    for m in (z..n).rev() {
        let offset = n * (n - m);
        if k >= offset + m && k <= offset + tables.b(m)? {
            return Ok(m);
        }
    }
    Err(Error::Internal(format!(
        "no interval covers {k} for n = {n}"
    )))
}

/// Largest `m <= ζ(n)` with `k - n(n-m) ∈ W(m)`.
fn gap_region_step(tables: &Tables, n: u64, k: u64) -> Result<u64> {
    let z = tables.zeta(n)?;
    for m in (1..=z).rev() {
        if let Some(rest) = k.checked_sub(n * (n - m)) {
            if tables.contains(m, rest)? {
                return Ok(m);
            }
        }
    }
    Err(Error::Internal(format!(
        "{k} is in W({n}) but no shifted copy contains it"
    )))
}

/// A transitive digraph on `n` vertices with exactly `k` reachable pairs.
///
/// `tables` must be prepared up to `n`. Weights outside `W(n)` fail with
/// [`Error::NotAchievable`] naming the nearest achievable weights.
pub fn witness(tables: &Tables, n: u64, k: u64) -> Result<Witness> {
    if n > MAX_WITNESS_N {
        return Err(Error::domain(
            n,
            "witness graphs are limited to 10000 vertices",
        ));
    }
    if !tables.contains(n, k)? {
        let (below, above) = tables.weight_set(n)?.neighbors(k);
        return Err(Error::NotAchievable { n, k, below, above });
    }

    let mut levels = Vec::new();
    let (mut n_cur, mut k_cur) = (n, k);
    let base = loop {
        if k_cur == n_cur * n_cur {
            break Base::Complete { vertices: n_cur };
        }
        if k_cur < 2 * n_cur {
            break Base::Star {
                vertices: n_cur,
                leaves: k_cur - n_cur,
            };
        }
        if n_cur <= MAX_SEARCH_N {
            let edges = small_witnesses()[n_cur as usize - 1]
                .get(&k_cur)
                .cloned()
                .ok_or_else(|| {
                    Error::Internal(format!("no stored witness for ({n_cur}, {k_cur})"))
                })?;
            break Base::TableLookup {
                vertices: n_cur,
                edges,
            };
        }
        let m = if k_cur <= tables.b(n_cur)? {
            interval_step(tables, n_cur, k_cur)?
        } else {
            gap_region_step(tables, n_cur, k_cur)?
        };
        levels.push(Level {
            vertices: n_cur,
            mothers: n_cur - m,
        });
        k_cur -= n_cur * (n_cur - m);
        n_cur = m;
    };

    let trace = WitnessTrace {
        target: k,
        levels,
        base,
    };
    let graph = trace.replay()?;
    if !verify_witness(n, k, &graph) {
        return Err(Error::Internal(format!(
            "constructed graph for ({n}, {k}) failed verification"
        )));
    }
    Ok(Witness { graph, trace })
}

/// `g` has `n` vertices, is transitive and has weight `k`.
pub fn verify_witness(n: u64, k: u64, g: &Digraph) -> bool {
    g.vertex_count() as u64 == n && g.is_transitive() && g.weight() == k
}
