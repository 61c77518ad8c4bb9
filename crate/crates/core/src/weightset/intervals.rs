use serde::{Deserialize, Serialize};

/// A finite set of nonnegative integers stored as sorted, disjoint,
/// non-adjacent inclusive intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct WeightSet {
    intervals: Vec<(u64, u64)>,
}

impl WeightSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn interval(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self {
            intervals: vec![(lo, hi)],
        }
    }

    pub fn singleton(k: u64) -> Self {
        Self::interval(k, k)
    }

    /// Builds the union of arbitrary (possibly overlapping, unsorted)
    /// intervals. Pairs with `lo > hi` are ignored.
    pub fn from_intervals<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut raw: Vec<(u64, u64)> = iter.into_iter().filter(|(lo, hi)| lo <= hi).collect();
        raw.sort_unstable();
        let mut intervals: Vec<(u64, u64)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match intervals.last_mut() {
                Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
                _ => intervals.push((lo, hi)),
            }
        }
        Self { intervals }
    }

    pub fn intervals(&self) -> &[(u64, u64)] {
        &self.intervals
    }

    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of integers in the set.
    pub fn len(&self) -> u64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo + 1).sum()
    }

    pub fn min(&self) -> Option<u64> {
        self.intervals.first().map(|i| i.0)
    }

    pub fn max(&self) -> Option<u64> {
        self.intervals.last().map(|i| i.1)
    }

    pub fn contains(&self, k: u64) -> bool {
        let idx = self.intervals.partition_point(|&(_, hi)| hi < k);
        self.intervals.get(idx).is_some_and(|&(lo, _)| lo <= k)
    }

    /// Largest member below `k` and smallest member above `k`.
    pub fn neighbors(&self, k: u64) -> (Option<u64>, Option<u64>) {
        let idx = self.intervals.partition_point(|&(_, hi)| hi < k);
        let below = if k == 0 {
            None
        } else if self.intervals.get(idx).is_some_and(|&(lo, _)| lo < k) {
            Some(k - 1)
        } else {
            idx.checked_sub(1).map(|i| self.intervals[i].1)
        };
        let above = match self.intervals.get(idx) {
            Some(&(lo, hi)) if lo <= k && k < hi => Some(k + 1),
            Some(&(lo, _)) if lo > k => Some(lo),
            Some(_) => self.intervals.get(idx + 1).map(|i| i.0),
            None => None,
        };
        (below, above)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).copied())
    }

    /// Integers of `[lo, hi]` not in the set.
    pub fn complement_within(&self, lo: u64, hi: u64) -> Self {
        let mut out = Vec::new();
        let mut next = lo;
        for &(a, b) in &self.intervals {
            if b < next {
                continue;
            }
            if a > hi {
                break;
            }
            if a > next {
                out.push((next, a - 1));
            }
            next = b.saturating_add(1);
            if next > hi {
                break;
            }
        }
        if next <= hi && next >= lo {
            out.push((next, hi));
        }
        Self { intervals: out }
    }

    pub fn shifted_up(&self, delta: u64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .map(|&(a, b)| (a + delta, b + delta))
                .collect(),
        }
    }

    /// `None` if some member is smaller than `delta`.
    pub fn shifted_down(&self, delta: u64) -> Option<Self> {
        if self.min().is_some_and(|m| m < delta) {
            return None;
        }
        Some(Self {
            intervals: self
                .intervals
                .iter()
                .map(|&(a, b)| (a - delta, b - delta))
                .collect(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.intervals.iter().flat_map(|&(a, b)| a..=b)
    }
}

impl TryFrom<Vec<(u64, u64)>> for WeightSet {
    type Error = String;

    fn try_from(intervals: Vec<(u64, u64)>) -> Result<Self, Self::Error> {
        for (i, &(lo, hi)) in intervals.iter().enumerate() {
            if lo > hi {
                return Err(format!("interval [{lo}, {hi}] is empty"));
            }
            if i > 0 && lo <= intervals[i - 1].1.saturating_add(1) {
                return Err(format!(
                    "interval [{lo}, {hi}] overlaps or touches its predecessor"
                ));
            }
        }
        Ok(Self { intervals })
    }
}

impl From<WeightSet> for Vec<(u64, u64)> {
    fn from(set: WeightSet) -> Self {
        set.intervals
    }
}

impl std::fmt::Display for WeightSet {
    /// Table-style listing: `[3, 7], 9`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (i, &(lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if lo == hi {
                write!(f, "{lo}")?;
            } else {
                write!(f, "[{lo}, {hi}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn expand(set: &WeightSet) -> BTreeSet<u64> {
        set.iter().collect()
    }

    fn canonical(set: &WeightSet) -> bool {
        set.intervals().windows(2).all(|w| w[1].0 > w[0].1 + 1)
            && set.intervals().iter().all(|(a, b)| a <= b)
    }

    #[test]
    fn merges_adjacent_and_overlapping() {
        let s = WeightSet::from_intervals([(5, 7), (1, 2), (3, 3), (6, 9), (12, 12)]);
        assert_eq!(s.intervals(), &[(1, 3), (5, 9), (12, 12)]);
        assert_eq!(s.len(), 9);
        assert_eq!(s.to_string(), "[1, 3], [5, 9], 12");
    }

    #[test]
    fn complement_edges() {
        let s = WeightSet::from_intervals([(3, 7), (9, 9)]);
        assert_eq!(s.complement_within(3, 9).intervals(), &[(8, 8)]);
        assert_eq!(
            s.complement_within(0, 12).intervals(),
            &[(0, 2), (8, 8), (10, 12)]
        );
        assert!(WeightSet::interval(2, 4).complement_within(2, 4).is_empty());
        assert_eq!(
            WeightSet::new().complement_within(4, 5).intervals(),
            &[(4, 5)]
        );
    }

    #[test]
    fn neighbors_of_gap() {
        let s = WeightSet::from_intervals([(3, 7), (9, 9)]);
        assert_eq!(s.neighbors(8), (Some(7), Some(9)));
        assert_eq!(s.neighbors(5), (Some(4), Some(6)));
        assert_eq!(s.neighbors(3), (None, Some(4)));
        assert_eq!(s.neighbors(9), (Some(7), None));
        assert_eq!(s.neighbors(100), (Some(9), None));
        assert_eq!(s.neighbors(0), (None, Some(3)));
    }

    #[test]
    fn serde_rejects_non_canonical() {
        let ok: WeightSet = serde_json::from_str("[[3,7],[9,9]]").unwrap();
        assert_eq!(ok.len(), 6);
        assert_eq!(serde_json::to_string(&ok).unwrap(), "[[3,7],[9,9]]");
        assert!(serde_json::from_str::<WeightSet>("[[3,7],[8,9]]").is_err());
        assert!(serde_json::from_str::<WeightSet>("[[7,3]]").is_err());
    }

    fn arb_intervals() -> impl Strategy<Value = Vec<(u64, u64)>> {
        prop::collection::vec((0u64..200, 0u64..20).prop_map(|(a, w)| (a, a + w)), 0..12)
    }

    proptest! {
        #[test]
        fn set_ops_match_btreeset(a in arb_intervals(), b in arb_intervals(), k in 0u64..240) {
            let sa = WeightSet::from_intervals(a.clone());
            let sb = WeightSet::from_intervals(b.clone());
            let ea: BTreeSet<u64> = a.iter().flat_map(|&(x, y)| x..=y).collect();
            let eb: BTreeSet<u64> = b.iter().flat_map(|&(x, y)| x..=y).collect();
            prop_assert!(canonical(&sa));
            prop_assert_eq!(expand(&sa), ea.clone());
            prop_assert_eq!(sa.len(), ea.len() as u64);
            prop_assert_eq!(sa.contains(k), ea.contains(&k));

            let u = sa.union(&sb);
            prop_assert!(canonical(&u));
            prop_assert_eq!(expand(&u), ea.union(&eb).copied().collect::<BTreeSet<_>>());

            let c = sa.complement_within(10, 150);
            prop_assert!(canonical(&c));
            let expected: BTreeSet<u64> = (10..=150).filter(|x| !ea.contains(x)).collect();
            prop_assert_eq!(expand(&c), expected);

            let below = ea.range(..k).next_back().copied();
            let above = ea.range(k + 1..).next().copied();
            prop_assert_eq!(sa.neighbors(k), (below, above));
        }
    }
}
