//! Exact weight sets `W(n)` and the thresholds `b(n)`, `ℓ(z)`, `ζ(n)`.
//!
//! For `n >= 8` the weight set is assembled as
//!
//! ```text
//! W(n) = [n, b(n)] ∪ { n(n-k) + c : c ∈ W(k), 1 <= k <= ζ(n) } ∪ { n² }
//! ```
//!
//! from shifted copies of smaller weight sets; `n <= 7` comes from embedded
//! base data. Only interval lists are ever shifted and merged, so `|W(n)|`
//! is available without enumerating its members.

mod bl;
mod intervals;

pub use bl::{BLTable, MAX_N};
pub use intervals::WeightSet;

use crate::{Error, Result};

/// `W(1)` through `W(7)`.
const BASE_SETS: [&[(u64, u64)]; 7] = [
    &[(1, 1)],
    &[(2, 4)],
    &[(3, 7), (9, 9)],
    &[(4, 13), (16, 16)],
    &[(5, 19), (21, 21), (25, 25)],
    &[(6, 28), (31, 31), (36, 36)],
    &[(7, 35), (37, 39), (43, 43), (49, 49)],
];

pub fn base_weight_set(n: u64) -> Option<WeightSet> {
    let idx = usize::try_from(n).ok()?.checked_sub(1)?;
    BASE_SETS
        .get(idx)
        .map(|iv| WeightSet::try_from(iv.to_vec()).expect("base data is canonical"))
}

/// The `b`/`ℓ` table together with memoized weight sets.
///
/// Call [`Tables::prepare`] with the largest `n` you intend to query; every
/// query method then works through `&self` and fails with
/// [`Error::NotPrepared`] above that bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    bl: BLTable,
    /// `W(k)` for `k = 1..=memo.len()`.
    memo: Vec<WeightSet>,
    prepared: u64,
}

impl Default for Tables {
    fn default() -> Self {
        Self::new()
    }
}

impl Tables {
    pub fn new() -> Self {
        Self {
            bl: BLTable::new(),
            memo: (1..=BASE_SETS.len() as u64)
                .map(|n| base_weight_set(n).expect("in range"))
                .collect(),
            prepared: 0,
        }
    }

    pub fn prepared(max_n: u64) -> Result<Self> {
        let mut t = Self::new();
        t.prepare(max_n)?;
        Ok(t)
    }

    /// Rebuilds tables from cached values, rejecting anything that disagrees
    /// with the recursions.
    pub fn from_parts(b_values: &[u64], memo: Vec<WeightSet>, prepared: u64) -> Result<Self> {
        let bl = BLTable::from_b_values(b_values)?;
        let mut fresh = Self { bl, ..Self::new() };
        for (i, set) in memo.into_iter().enumerate() {
            let k = i as u64 + 1;
            let expected = if k <= BASE_SETS.len() as u64 {
                base_weight_set(k).expect("in range")
            } else {
                fresh.bl.prepare(k)?;
                fresh.assemble(k)?
            };
            if set != expected {
                return Err(Error::Cache(format!(
                    "stored W({k}) disagrees with the recursion"
                )));
            }
            if k > BASE_SETS.len() as u64 {
                fresh.memo.push(set);
            }
        }
        fresh.prepare(prepared)?;
        Ok(fresh)
    }

    pub fn bl(&self) -> &BLTable {
        &self.bl
    }

    /// Memoized `W(1), W(2), ...`.
    pub fn memoized_sets(&self) -> &[WeightSet] {
        &self.memo
    }

    /// Largest `n` accepted by the weight-set queries.
    pub fn prepared_up_to(&self) -> u64 {
        self.prepared
    }

    /// Grows the tables so that every query with `n <= max_n` succeeds.
    pub fn prepare(&mut self, max_n: u64) -> Result<()> {
        if max_n <= self.prepared {
            return Ok(());
        }
        self.bl.prepare(max_n)?;
        let needed = if max_n >= 3 { self.bl.zeta(max_n)? } else { 0 };
        while (self.memo.len() as u64) < needed {
            let k = self.memo.len() as u64 + 1;
            let set = self.assemble(k)?;
            self.memo.push(set);
        }
        self.prepared = max_n;
        Ok(())
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::domain(n, "n must be positive"));
        }
        if n > MAX_N {
            return Err(Error::TooLarge(n));
        }
        if n > self.prepared {
            return Err(Error::NotPrepared {
                n,
                prepared: self.prepared,
            });
        }
        Ok(())
    }

    pub fn b(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        self.bl.b(n)
    }

    pub fn ell(&self, z: u64) -> Result<u64> {
        self.check(z)?;
        self.bl.ell(z)
    }

    pub fn zeta(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        self.bl.zeta(n)
    }

    /// Builds `W(n)` from the memo; requires `W(k)` for `k <= ζ(n)`.
    fn assemble(&self, n: u64) -> Result<WeightSet> {
        if let Some(set) = base_weight_set(n) {
            return Ok(set);
        }
        let b = self.bl.b(n)?;
        let z = self.bl.zeta(n)?;
        let mut pieces = vec![(n, b), (n * n, n * n)];
        for k in 1..=z {
            let offset = n * (n - k);
            let sub = self.memo.get(k as usize - 1).ok_or(Error::NotPrepared {
                n,
                prepared: self.prepared,
            })?;
            pieces.extend(
                sub.intervals()
                    .iter()
                    .map(|&(lo, hi)| (lo + offset, hi + offset)),
            );
        }
        Ok(WeightSet::from_intervals(pieces))
    }

    /// The exact weight set `W(n)`.
    pub fn weight_set(&self, n: u64) -> Result<WeightSet> {
        self.check(n)?;
        match self.memo.get(n as usize - 1) {
            Some(set) => Ok(set.clone()),
            None => self.assemble(n),
        }
    }

    /// `[n, n²] \ W(n)`.
    pub fn gaps(&self, n: u64) -> Result<WeightSet> {
        Ok(self.weight_set(n)?.complement_within(n, n * n))
    }

    /// `|W(n)|`.
    pub fn wsize(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        match self.memo.get(n as usize - 1) {
            Some(set) => Ok(set.len()),
            None => Ok(self.assemble(n)?.len()),
        }
    }

    pub fn contains(&self, n: u64, k: u64) -> Result<bool> {
        if k < n || k > n.saturating_mul(n) {
            self.check(n)?;
            return Ok(false);
        }
        if k == n * n || k <= self.b(n)? {
            return Ok(true);
        }
        match self.memo.get(n as usize - 1) {
            Some(set) => Ok(set.contains(k)),
            None => Ok(self.assemble(n)?.contains(k)),
        }
    }

    /// Weights with the diagonal pairs discarded, `S(n) = W(n) - n`, and
    /// `f(n) = b(n) - n`.
    pub fn rao_translate(&self, n: u64) -> Result<(WeightSet, u64)> {
        let shifted = self
            .weight_set(n)?
            .shifted_down(n)
            .ok_or_else(|| Error::Internal(format!("W({n}) has a member below {n}")))?;
        Ok((shifted, self.b(n)? - n))
    }
}

/// `W(1), ..., W(max_n)` through the slower recursion over every mother-vertex
/// count:
///
/// ```text
/// W(n) = [n, ⌈3n²/4⌉] ∪ { n(n-k) + c : c ∈ W(k), 1 <= k <= n-1 } ∪ { n² }
/// ```
///
/// It does not use `b`, `ℓ` or `ζ`, so it serves as an independent check on
/// [`Tables::weight_set`] for `n >= 8`.
pub fn weight_sets_by_first_recursion(max_n: u64) -> Vec<WeightSet> {
    let mut sets: Vec<WeightSet> = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let set = match base_weight_set(n) {
            Some(set) => set,
            None => {
                let mut pieces = vec![(n, (3 * n * n).div_ceil(4)), (n * n, n * n)];
                for k in 1..n {
                    let offset = n * (n - k);
                    pieces.extend(
                        sets[k as usize - 1]
                            .intervals()
                            .iter()
                            .map(|&(lo, hi)| (lo + offset, hi + offset)),
                    );
                }
                WeightSet::from_intervals(pieces)
            }
        };
        sets.push(set);
    }
    sets
}
