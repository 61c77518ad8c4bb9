use crate::{Error, Result};

/// Largest supported `n`; keeps `n^2` well inside `u64`.
pub const MAX_N: u64 = 1 << 31;

/// The one value the recursion gets wrong: it yields 47 at `n = 8`.
const EXCEPTION: (u64, u64) = (8, 52);

/// Memoized `b(z)` and `ℓ(z) = b(z) - z + 3`.
///
/// Values are stored densely for `z = 1..=len()`. Since `ℓ` is strictly
/// increasing and `ζ(n)` is found by binary search over it, the dense part
/// only has to reach the first `z` with `ℓ(z) > n`, which is about `√(2n)`.
/// Larger arguments go through the recursion
/// `b(n) = n² - ζ(n)·n + b(ζ(n))` on the fly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BLTable {
    b: Vec<u64>,
    ell: Vec<u64>,
}

impl Default for BLTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BLTable {
    pub fn new() -> Self {
        let b = vec![1, 4];
        let ell = vec![3, 5];
        Self { b, ell }
    }

    /// Rebuilds a table from stored `b` values, checking each one against
    /// the recursion.
    pub fn from_b_values(values: &[u64]) -> Result<Self> {
        let mut table = Self::new();
        if values.len() < 2 || values[..2] != [1, 4] {
            return Err(Error::Cache("stored b table must start with 1, 4".into()));
        }
        for (i, &v) in values.iter().enumerate().skip(2) {
            let z = i as u64 + 1;
            let expected = table.next_value();
            if v != expected {
                return Err(Error::Cache(format!(
                    "stored b({z}) = {v}, recursion gives {expected}"
                )));
            }
            table.push(v);
        }
        Ok(table)
    }

    pub fn b_values(&self) -> &[u64] {
        &self.b
    }

    /// Number of densely stored entries.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest `n` for which `b`, `ℓ` and `ζ` can be answered.
    pub fn capacity(&self) -> u64 {
        *self.ell.last().expect("table is never empty") - 1
    }

    fn push(&mut self, b: u64) {
        let z = self.b.len() as u64 + 1;
        self.b.push(b);
        self.ell.push(b + 3 - z);
    }

    fn next_value(&self) -> u64 {
        let z = self.b.len() as u64 + 1;
        if z == EXCEPTION.0 {
            EXCEPTION.1
        } else {
            self.recursion_unchecked(z)
        }
    }

    /// Grows the dense table until every `n <= max_n` can be answered.
    pub fn prepare(&mut self, max_n: u64) -> Result<()> {
        if max_n > MAX_N {
            return Err(Error::TooLarge(max_n));
        }
        while self.capacity() < max_n {
            let next = self.next_value();
            self.push(next);
        }
        Ok(())
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::domain(n, "argument must be positive"));
        }
        if n > MAX_N {
            return Err(Error::TooLarge(n));
        }
        if n > self.capacity() {
            return Err(Error::NotPrepared {
                n,
                prepared: self.capacity(),
            });
        }
        Ok(())
    }

    fn zeta_unchecked(&self, n: u64) -> u64 {
        self.ell.partition_point(|&l| l <= n) as u64
    }

    fn b_unchecked(&self, n: u64) -> u64 {
        match self.b.get(n as usize - 1) {
            Some(&v) => v,
            None if n == EXCEPTION.0 => EXCEPTION.1,
            None => self.recursion_unchecked(n),
        }
    }

    fn recursion_unchecked(&self, n: u64) -> u64 {
        let z = self.zeta_unchecked(n);
        n * n - z * n + self.b_unchecked(z)
    }

    pub fn b(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.b_unchecked(n))
    }

    pub fn ell(&self, z: u64) -> Result<u64> {
        Ok(self.b(z)? + 3 - z)
    }

    /// The unique `z` with `ℓ(z) <= n < ℓ(z + 1)`.
    pub fn zeta(&self, n: u64) -> Result<u64> {
        if n < 3 {
            return Err(Error::domain(n, "zeta is defined for n >= 3"));
        }
        self.check(n)?;
        Ok(self.zeta_unchecked(n))
    }

    /// `n² - ζ(n)·n + b(ζ(n))` with no exception applied. Differs from
    /// [`BLTable::b`] only at `n = 8`.
    pub fn recursion_value(&self, n: u64) -> Result<u64> {
        if n < 3 {
            return Err(Error::domain(n, "the recursion starts at n = 3"));
        }
        self.check(n)?;
        Ok(self.recursion_unchecked(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u64) -> BLTable {
        let mut t = BLTable::new();
        t.prepare(n).unwrap();
        t
    }

    #[test]
    fn exception_holds_at_every_preparation_size() {
        for max_n in 8..=40 {
            let t = table(max_n);
            assert_eq!(t.b(8).unwrap(), 52, "prepared to {max_n}");
            assert_eq!(t.recursion_value(8).unwrap(), 47);
        }
    }

    #[test]
    fn b_examples() {
        let t = table(100);
        assert_eq!(t.b(7).unwrap(), 35);
        assert_eq!(t.b(8).unwrap(), 52);
        assert_eq!(t.b(12).unwrap(), 109);
        assert_eq!(t.b(25).unwrap(), 503);
        assert_eq!(t.recursion_value(8).unwrap(), 47);
    }

    #[test]
    fn ell_examples() {
        let t = table(100);
        assert_eq!(t.ell(4).unwrap(), 12);
        assert_eq!(t.ell(6).unwrap(), 25);
        assert_eq!(t.ell(7).unwrap(), 31);
        assert_eq!(t.ell(1).unwrap(), 3);
    }

    #[test]
    fn zeta_examples() {
        let t = table(100);
        assert_eq!(t.zeta(12).unwrap(), 4);
        assert_eq!(t.zeta(16).unwrap(), 4);
        assert_eq!(t.zeta(25).unwrap(), 6);
        assert!(t.zeta(2).is_err());
    }

    #[test]
    fn domain_errors() {
        let t = table(10);
        assert!(matches!(t.b(0), Err(Error::Domain { .. })));
        assert!(matches!(t.b(MAX_N + 1), Err(Error::TooLarge(_))));
        assert!(matches!(t.b(10_000), Err(Error::NotPrepared { .. })));
        assert!(BLTable::new().prepare(MAX_N + 1).is_err());
    }

    #[test]
    fn dense_part_stays_small() {
        let t = table(MAX_N);
        assert!(t.len() < 70_000, "dense length {}", t.len());
        let n = MAX_N;
        let b = t.b(n).unwrap();
        assert!(b <= n * n && b >= 3 * n * n / 4);
    }

    #[test]
    fn reloading_checks_values() {
        let t = table(500);
        assert_eq!(BLTable::from_b_values(t.b_values()).unwrap(), t);
        let mut bad = t.b_values().to_vec();
        bad[9] += 1;
        assert!(BLTable::from_b_values(&bad).is_err());
    }
}
