//! Verification sweeps over the exact tables, the estimators, the witness
//! generator, the oracle and random digraphs.
//!
//! Every check returns an [`Outcome`] instead of panicking so that callers can
//! report all failures at once. Sweeps over `n` run in parallel against a
//! table prepared beforehand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::approx::{
    self, B_BOUND_FACTOR, H_BOUND_FACTOR, H_BOUND_MIN_N, W_BOUND_FACTOR, ZETA_BOUND,
};
use crate::oracle::{self, CliquePoset, MAX_ENUMERATION_N};
use crate::random::random_transitive;
use crate::weightset::{weight_sets_by_first_recursion, BLTable};
use crate::witness::{verify_witness, witness, MAX_WITNESS_N};
use crate::{Digraph, Error, Result, Tables};

/// Largest `n` for exhaustive witness round-trips; above it `k` is sampled.
pub const EXHAUSTIVE_WITNESS_N: u64 = 60;
const SAMPLED_WITNESS_K: usize = 24;
const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Collapses a fallible sweep: errors become failures.
    fn from_result(name: &str, result: Result<Outcome>) -> Self {
        result.unwrap_or_else(|e| Outcome::new(name, false, format!("error: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Table,
    Witness,
    Oracle,
    Graphs,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// Runs `suite` with sweeps up to `max_n`. The tables are prepared here.
pub fn run_suite(tables: &mut Tables, suite: Suite, max_n: u64) -> Result<Vec<Outcome>> {
    tables.prepare(max_n.max(1))?;
    let t: &Tables = tables;
    let mut out = Vec::new();
    if suite.includes(Suite::Bounds) {
        out.extend(bounds_suite(t, max_n));
    }
    if suite.includes(Suite::Table) {
        out.extend(table_suite(t, max_n));
    }
    if suite.includes(Suite::Witness) {
        out.extend(witness_suite(t, max_n));
    }
    if suite.includes(Suite::Oracle) {
        out.extend(oracle_suite(t, max_n));
    }
    if suite.includes(Suite::Graphs) {
        out.extend(graph_suite(1000));
    }
    Ok(out)
}

/// Parallel sweep of `check` over `range`; returns the first failing `n`
/// (by position) with its message, and the largest observed statistic.
fn sweep<F>(range: std::ops::RangeInclusive<u64>, check: F) -> Result<(Option<(u64, String)>, f64)>
where
    F: Fn(u64) -> Result<(bool, f64, String)> + Sync,
{
    let results: Vec<(u64, bool, f64, String)> = range
        .into_par_iter()
        .map(|n| check(n).map(|(ok, stat, msg)| (n, ok, stat, msg)))
        .collect::<Result<_>>()?;
    let max = results
        .iter()
        .map(|r| r.2)
        .fold(f64::NEG_INFINITY, f64::max);
    let first = results.into_iter().find(|r| !r.1).map(|r| (r.0, r.3));
    Ok((first, max))
}

fn format_stat(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{x}")
    } else if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:.3e}")
    } else {
        format!("{x:.6}")
    }
}

/// `stat_label` names the statistic reported on success, if any.
fn sweep_outcome<F>(
    name: &str,
    range: std::ops::RangeInclusive<u64>,
    stat_label: Option<&str>,
    check: F,
) -> Outcome
where
    F: Fn(u64) -> Result<(bool, f64, String)> + Sync,
{
    if range.is_empty() {
        return Outcome::new(name, true, "empty range");
    }
    let (lo, hi) = (*range.start(), *range.end());
    Outcome::from_result(
        name,
        sweep(range, check).map(|(first, max)| match first {
            None => Outcome::new(
                name,
                true,
                match stat_label {
                    Some(label) => format!("n in [{lo}, {hi}], {label} = {}", format_stat(max)),
                    None => format!("n in [{lo}, {hi}]"),
                },
            ),
            Some((n, msg)) => Outcome::new(name, false, format!("n = {n}: {msg}")),
        }),
    )
}

// ---------------------------------------------------------------- bounds

/// `|ζ(n) - r(n)| < 1.985` on `[3, max_n]`; the detail reports the maximum.
pub fn zeta_r_bound(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("zeta-r bound", 3..=max_n, Some("max |zeta - r|"), |n| {
        let d = (t.zeta(n)? as f64 - approx::r(n as f64)?).abs();
        Ok((d < ZETA_BOUND, d, format!("|zeta - r| = {d}")))
    })
}

/// Largest `|ζ(n) - r(n)|` on `[3, max_n]` and where it occurs.
pub fn max_zeta_r(t: &Tables, max_n: u64) -> Result<(u64, f64)> {
    (3..=max_n)
        .into_par_iter()
        .map(|n| Ok((n, (t.zeta(n)? as f64 - approx::r(n as f64)?).abs())))
        .collect::<Result<Vec<_>>>()
        .map(|v| {
            v.into_iter()
                .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
        })
}

/// Largest `|ζ(n) - r(n)|` on `[3, max_n]`, found without visiting every `n`.
///
/// `ζ` is constant on `[ℓ(z), ℓ(z+1) - 1]` and `r` increases between the
/// points `5^(2^d)` where its truncation level changes, so the extremes lie
/// at plateau endpoints or next to those points.
pub fn max_zeta_r_extremes(bl: &BLTable, max_n: u64) -> Result<(u64, f64)> {
    let mut candidates = vec![3];
    for z in 1..=bl.len() as u64 {
        let l = bl.ell(z)?;
        candidates.extend([l.saturating_sub(1), l]);
    }
    let mut t: u64 = 5;
    while let Some(next) = t.checked_mul(t) {
        candidates.extend([next - 1, next]);
        t = next;
    }
    let mut best = (0, f64::NEG_INFINITY);
    for n in candidates.into_iter().filter(|n| (3..=max_n).contains(n)) {
        let d = (bl.zeta(n)? as f64 - approx::r(n as f64)?).abs();
        if d > best.1 {
            best = (n, d);
        }
    }
    Ok(best)
}

/// `|b(n) - g(n)| < 2n` on `[3, max_n]`.
pub fn b_g_bound(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("b-g bound", 3..=max_n, Some("max |b - g|/n"), |n| {
        let d = (t.b(n)? as f64 - approx::g(n)?).abs();
        let x = n as f64;
        Ok((d < B_BOUND_FACTOR * x, d / x, format!("|b - g| = {d}")))
    })
}

/// `||W(n)| - ω̄(n)| < 30n` on `[3, max_n]`.
pub fn wsize_omega_bar_bound(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome(
        "wsize-omega_bar bound",
        3..=max_n,
        Some("max |wsize - omega_bar|/n"),
        |n| {
            let x = n as f64;
            let d = (t.wsize(n)? as f64 - approx::omega_bar(x)?).abs();
            Ok((
                d < W_BOUND_FACTOR * x,
                d / x,
                format!("|wsize - omega_bar| = {d}"),
            ))
        },
    )
}

/// `||W(n)| - h(n)| < 3n` on `[25, max_n]`.
pub fn wsize_h_bound(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome(
        "wsize-h bound",
        H_BOUND_MIN_N..=max_n,
        Some("max |wsize - h|/n"),
        |n| {
            let d = t.wsize(n)?.abs_diff(approx::h(t, n)?) as f64;
            let x = n as f64;
            Ok((d < H_BOUND_FACTOR * x, d / x, format!("|wsize - h| = {d}")))
        },
    )
}

/// `|ω̄(x) - ω(x)| < x/3` for `x` in `[25, max_x]`.
pub fn omega_truncation_bound(max_x: u64) -> Outcome {
    sweep_outcome(
        "omega truncation",
        25..=max_x,
        Some("max |omega_bar - omega|/x"),
        |n| {
            let x = n as f64;
            let d = (approx::omega_bar(x)? - approx::omega(x)?).abs();
            Ok((d < x / 3.0, d / x, format!("|omega_bar - omega| = {d}")))
        },
    )
}

/// `r(n) = √n + (r(√n) - 1)/2` for integers `n` in `[9, max_n]`, relative
/// tolerance `1e-9`.
pub fn r_functional_equation(max_n: u64) -> Outcome {
    sweep_outcome(
        "r functional equation",
        9..=max_n,
        Some("max relative error"),
        |n| {
            let x = n as f64;
            let lhs = approx::r(x)?;
            let rhs = x.sqrt() + (approx::r(x.sqrt())? - 1.0) / 2.0;
            let rel = (lhs - rhs).abs() / lhs.abs();
            Ok((rel < 1e-9, rel, format!("r = {lhs}, rhs = {rhs}")))
        },
    )
}

/// `Σ_{k<=m} c_k = 1 - 1/∏(2^i + 1)` exactly for `m <= 20`.
pub fn coefficient_identity() -> Outcome {
    let bad: Vec<u32> = (1..=20)
        .filter(|&m| !approx::coefficient_identity_holds(m))
        .collect();
    Outcome::new(
        "coefficient identity",
        bad.is_empty(),
        if bad.is_empty() {
            "m in [1, 20], exact".into()
        } else {
            format!("fails at m = {bad:?}")
        },
    )
}

/// `ω < 0` on `(0, 1)`, `ω(1) = 0`, and `ω` increasing on a grid in `(1, 10^4]`.
pub fn omega_shape() -> Outcome {
    let check = || -> Result<Option<String>> {
        for i in 1..1000 {
            let x = i as f64 / 1000.0;
            if approx::omega(x)? >= 0.0 {
                return Ok(Some(format!("omega({x}) >= 0")));
            }
        }
        let at_one = approx::omega(1.0)?;
        if at_one.abs() > 1e-9 {
            return Ok(Some(format!("omega(1) = {at_one}")));
        }
        let mut prev = at_one;
        for i in 1..=100_000 {
            let x = 1.0 + i as f64 / 10.0;
            let y = approx::omega(x)?;
            if y <= prev {
                return Ok(Some(format!("omega not increasing at {x}")));
            }
            prev = y;
        }
        Ok(None)
    };
    match check() {
        Ok(None) => Outcome::new(
            "omega shape",
            true,
            "negative on (0,1), zero at 1, increasing to 10001",
        ),
        Ok(Some(msg)) => Outcome::new("omega shape", false, msg),
        Err(e) => Outcome::new("omega shape", false, format!("error: {e}")),
    }
}

/// `ω(x) = x² - x^(3/2) + ∫_0^√x ω` at `samples` random points of
/// `[9, 10^6]`, relative tolerance `1e-6`.
pub fn omega_integral_identity(samples: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: (f64, f64) = (0.0, 0.0);
    let mut failures = 0;
    for _ in 0..samples {
        let x = rng.gen_range(9.0..=1e6);
        let rel = match (approx::omega_functional_residual(x), approx::omega(x)) {
            (Ok(res), Ok(w)) => (res / w).abs(),
            _ => f64::INFINITY,
        };
        if rel >= 1e-6 {
            failures += 1;
        }
        if rel > worst.1 {
            worst = (x, rel);
        }
    }
    Outcome::new(
        "omega integral identity",
        failures == 0,
        format!(
            "{failures}/{samples} points exceed 1e-6 relative; worst {:.3e} at x = {:.1}",
            worst.1, worst.0
        ),
    )
}

pub fn bounds_suite(t: &Tables, max_n: u64) -> Vec<Outcome> {
    vec![
        zeta_r_bound(t, max_n),
        b_g_bound(t, max_n),
        wsize_omega_bar_bound(t, max_n),
        wsize_h_bound(t, max_n),
        omega_truncation_bound(max_n),
        r_functional_equation(max_n),
        coefficient_identity(),
        omega_shape(),
        omega_integral_identity(100),
    ]
}

// ----------------------------------------------------------------- table

/// Canonical form, extremes, initial interval and `b(n)+1 ∉ W(n)`.
pub fn weight_set_shape(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome(
        "weight set shape",
        1..=max_n,
        Some("max interval count"),
        |n| {
            let w = t.weight_set(n)?;
            let b = t.b(n)?;
            let iv = w.intervals();
            let canonical =
                iv.iter().all(|&(lo, hi)| lo <= hi) && iv.windows(2).all(|p| p[0].1 + 1 < p[1].0);
            let ok = canonical
                && w.min() == Some(n)
                && w.max() == Some(n * n)
                && iv[0] == (n, b)
                && (b == n * n || !w.contains(b + 1));
            Ok((ok, iv.len() as f64, format!("W = {w}, b = {b}")))
        },
    )
}

/// No weights in `[n²-n+2, n²-1]` (n >= 3) or in `[n²-2n+5, n²-n]` (n >= 5).
pub fn gap_laws(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("gap laws", 3..=max_n, None, |n| {
        let w = t.weight_set(n)?;
        let empty = |lo: u64, hi: u64| w.intervals().iter().all(|&(a, b)| b < lo || a > hi);
        let ok = empty(n * n - n + 2, n * n - 1) && (n < 5 || empty(n * n - 2 * n + 5, n * n - n));
        Ok((ok, n as f64, format!("W = {w}")))
    })
}

/// `b(n) >= ⌈3n²/4⌉` except `b(7) = 35`.
pub fn b_three_quarters(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("b >= 3n^2/4", 1..=max_n, None, |n| {
        let b = t.b(n)?;
        let ok = if n == 7 {
            b == 35
        } else {
            b >= (3 * n * n).div_ceil(4)
        };
        Ok((ok, n as f64, format!("b = {b}")))
    })
}

/// `b(n) + m <= b(n+m)`, equivalently `b` strictly increasing.
pub fn b_superadditive_shift(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("b(n)+m <= b(n+m)", 1..=max_n.saturating_sub(1), None, |n| {
        let (b0, b1) = (t.b(n)?, t.b(n + 1)?);
        Ok((
            b0 < b1,
            n as f64,
            format!("b({n}) = {b0}, b({}) = {b1}", n + 1),
        ))
    })
}

/// `n+1 <= b(n+1) - b(n) <= 2n+1` for `n >= 8`.
pub fn b_increments(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("b increments", 8..=max_n.saturating_sub(1), None, |n| {
        let d = t.b(n + 1)? - t.b(n)?;
        Ok((
            n < d && d <= 2 * n + 1,
            n as f64,
            format!("b(n+1) - b(n) = {d}"),
        ))
    })
}

/// `ℓ(n) < b(n) < ℓ(n+1)` for `n >= 4`.
pub fn b_between_ell(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome(
        "ell(n) < b(n) < ell(n+1)",
        4..=max_n.saturating_sub(1),
        None,
        |n| {
            let (l0, b, l1) = (t.ell(n)?, t.b(n)?, t.ell(n + 1)?);
            Ok((
                l0 < b && b < l1,
                n as f64,
                format!("ell = {l0}, b = {b}, ell(n+1) = {l1}"),
            ))
        },
    )
}

/// `√n <= ζ(n) < √(2n)` for `n >= 12`, with `√n < ζ(n)` except at 16.
pub fn zeta_sqrt_bounds(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("sqrt(n) <= zeta < sqrt(2n)", 12..=max_n, None, |n| {
        let z = t.zeta(n)?;
        let ok = z * z >= n && z * z < 2 * n && (z * z > n || n == 16);
        Ok((ok, n as f64, format!("zeta = {z}")))
    })
}

/// `ζ(n) - ⌊√n⌋ < n^(1/4)` for `n >= 3` and
/// `n² - b(n) < (1 + n^(-1/4))·n^(3/2)` for `n >= 9`.
pub fn zeta_b_growth(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("zeta and b growth", 3..=max_n, None, |n| {
        let x = n as f64;
        let z = t.zeta(n)?;
        let first = (z as f64 - n.isqrt() as f64) < x.powf(0.25);
        let second = n < 9 || ((n * n - t.b(n)?) as f64) < (1.0 + x.powf(-0.25)) * x.powf(1.5);
        Ok((first && second, x, format!("zeta = {z}")))
    })
}

/// `|n - b(ζ(n))| <= ζ(n) - 3` for `n >= 192`.
pub fn b_of_zeta_near_n(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("|n - b(zeta)| <= zeta - 3", 192..=max_n, None, |n| {
        let z = t.zeta(n)?;
        let d = n.abs_diff(t.b(z)?);
        Ok((
            d + 3 <= z,
            n as f64,
            format!("zeta = {z}, |n - b(zeta)| = {d}"),
        ))
    })
}

/// The plain recursion gives 47 at `n = 8`; the table holds 52.
pub fn exception_at_eight(t: &Tables) -> Outcome {
    let got = (t.bl().recursion_value(8), t.bl().b(8));
    let ok = matches!(got, (Ok(47), Ok(52)));
    Outcome::new(
        "b(8) exception",
        ok,
        format!("recursion {:?}, table {:?}", got.0, got.1),
    )
}

/// The slower first recursion over every mother count gives the same `W(n)`.
pub fn recursions_agree(t: &Tables, max_n: u64) -> Outcome {
    let hi = max_n.min(200);
    let slow = weight_sets_by_first_recursion(hi);
    let bad = (8..=hi).find(|&n| t.weight_set(n).ok().as_ref() != Some(&slow[n as usize - 1]));
    match bad {
        None => Outcome::new("first recursion agrees", true, format!("n in [8, {hi}]")),
        Some(n) => Outcome::new(
            "first recursion agrees",
            false,
            format!("differs at n = {n}"),
        ),
    }
}

/// `S(n) = W(n) - n` with `f(n) = b(n) - n`.
pub fn rao_translation(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome("translated sets", 1..=max_n, None, |n| {
        let (s, f) = t.rao_translate(n)?;
        let ok = s.min() == Some(0) && s.intervals()[0] == (0, f) && s.len() == t.wsize(n)?;
        Ok((ok, n as f64, format!("S = {s}, f = {f}")))
    })
}

pub fn table_suite(t: &Tables, max_n: u64) -> Vec<Outcome> {
    vec![
        weight_set_shape(t, max_n),
        gap_laws(t, max_n),
        b_three_quarters(t, max_n),
        b_superadditive_shift(t, max_n),
        b_increments(t, max_n),
        b_between_ell(t, max_n),
        zeta_sqrt_bounds(t, max_n),
        zeta_b_growth(t, max_n),
        b_of_zeta_near_n(t, max_n),
        exception_at_eight(t),
        recursions_agree(t, max_n),
        rao_translation(t, max_n),
    ]
}

// --------------------------------------------------------------- witness

fn witness_round_trip_at(t: &Tables, n: u64, ks: &[u64]) -> Result<(bool, f64, String)> {
    let w = t.weight_set(n)?;
    for &k in ks {
        let result = witness(t, n, k);
        match (w.contains(k), result) {
            (true, Ok(wit)) => {
                if !verify_witness(n, k, &wit.graph) || wit.trace.replay()? != wit.graph {
                    return Ok((false, 0.0, format!("k = {k}: bad witness")));
                }
            }
            (false, Err(Error::NotAchievable { .. })) => {}
            (true, Err(e)) => return Ok((false, 0.0, format!("k = {k}: {e}"))),
            (false, other) => {
                return Ok((false, 0.0, format!("gap k = {k} not rejected: {other:?}")))
            }
        }
    }
    Ok((true, ks.len() as f64, String::new()))
}

/// Every `k` in `[n, n²]` for `n <= max_n`: members get a verified witness,
/// gaps are rejected.
pub fn witness_round_trip(t: &Tables, max_n: u64) -> Outcome {
    sweep_outcome(
        "witness round trip",
        1..=max_n,
        Some("max weights per n"),
        |n| {
            let ks: Vec<u64> = (n..=n * n).collect();
            witness_round_trip_at(t, n, &ks)
        },
    )
}

/// Sampled targets (always including `b(n)`, `b(n)+1` and `n²-1`).
pub fn witness_sampled(t: &Tables, lo: u64, hi: u64) -> Outcome {
    let hi = hi.min(MAX_WITNESS_N);
    sweep_outcome("witness sampled", lo..=hi, Some("weights per n"), |n| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n);
        let b = t.b(n)?;
        let mut ks = vec![n, b, b + 1, n * n - 1, n * n];
        ks.extend((0..SAMPLED_WITNESS_K).map(|_| rng.gen_range(n..=n * n)));
        witness_round_trip_at(t, n, &ks)
    })
}

/// `a` mother vertices over a base of weight `w` on `m` vertices weigh
/// `(a+m)·a + w`.
pub fn mother_accounting(cases: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let m = rng.gen_range(1..=12);
        let a = rng.gen_range(1..=6);
        let (split, p) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0));
        let base = random_transitive(&mut rng, m, split, p).expect("m >= 1");
        let expected = ((a + m) * a) as u64 + base.weight();
        let got = base.with_mother_vertices(a).weight();
        if got != expected {
            return Outcome::new(
                "mother accounting",
                false,
                format!("{base:?} + {a}: {got} != {expected}"),
            );
        }
    }
    Outcome::new("mother accounting", true, format!("{cases} random bases"))
}

pub fn witness_suite(t: &Tables, max_n: u64) -> Vec<Outcome> {
    let exhaustive = max_n.min(EXHAUSTIVE_WITNESS_N);
    let mut out = vec![witness_round_trip(t, exhaustive), mother_accounting(1000)];
    if max_n > exhaustive {
        out.push(witness_sampled(t, exhaustive + 1, max_n));
    }
    out
}

// ---------------------------------------------------------------- oracle

/// Exhaustive enumeration equals the recursion for `n <= min(max_n, 8)`.
pub fn oracle_agrees(t: &Tables, max_n: u64) -> Outcome {
    let hi = max_n.min(MAX_ENUMERATION_N);
    let bad: Vec<String> = (1..=hi)
        .into_par_iter()
        .filter_map(|n| match (oracle::oracle_weight_set(n), t.weight_set(n)) {
            (Ok(a), Ok(b)) if a == b => None,
            (a, b) => Some(format!("n = {n}: oracle {a:?}, recursion {b:?}")),
        })
        .collect();
    Outcome::new(
        "oracle agrees",
        bad.is_empty(),
        if bad.is_empty() {
            format!("n in [1, {hi}]")
        } else {
            bad.join("; ")
        },
    )
}

/// Random clique posets on at most 8 vertices: formula weight equals the
/// closure weight of the expansion, which is transitive.
pub fn poset_weights(cases: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..cases {
        let p = random_poset(&mut rng, 8);
        let g = p.expand();
        if !g.is_transitive() || g.weight() != p.weight() {
            return Outcome::new("poset weights", false, format!("{p:?}"));
        }
    }
    Outcome::new("poset weights", true, format!("{cases} random posets"))
}

fn random_poset<R: Rng>(rng: &mut R, max_vertices: usize) -> CliquePoset {
    let mut sizes = Vec::new();
    let mut left = rng.gen_range(1..=max_vertices);
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let t = sizes.len();
    let mut reach = vec![0u32; t];
    for i in (0..t).rev() {
        reach[i] |= 1 << i;
        for j in i + 1..t {
            if rng.gen_bool(0.4) {
                reach[i] |= reach[j];
            }
        }
    }
    CliquePoset::new(sizes, reach).expect("forward closure is a partial order")
}

pub fn oracle_suite(t: &Tables, max_n: u64) -> Vec<Outcome> {
    vec![oracle_agrees(t, max_n), poset_weights(500)]
}

// ---------------------------------------------------------------- graphs

fn random_transitive_case<R: Rng>(rng: &mut R, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let split = rng.gen_range(0.0..=1.0);
    let p = rng.gen_range(0.0..=1.0);
    random_transitive(rng, n, split, p).expect("n >= 1")
}

/// Checks one transitive digraph; `None` means every property holds.
fn graph_properties(g: &Digraph) -> Option<&'static str> {
    let n = g.vertex_count() as u64;
    let w = g.weight();
    if g.transitive_closure() != *g {
        return Some("closure of a transitive digraph changed it");
    }
    if !(n <= w && w <= n * n) {
        return Some("weight outside [n, n^2]");
    }
    let Ok(chain) = g.clique_chain_partition() else {
        return Some("partition failed");
    };
    if !chain.satisfies_conditions(g) {
        return Some("partition conditions violated");
    }
    let m = g.largest_clique().map(|c| c.len() as u64).unwrap_or(0);
    if 2 * w > n * (n + m) {
        return Some("weight exceeds n(n+m)/2");
    }
    let sccs = g.strongly_connected_components();
    for a in &sccs {
        for b in &sccs {
            if a == b {
                continue;
            }
            let count = a
                .iter()
                .flat_map(|&u| b.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| g.has_edge(u, v))
                .count();
            if count != 0 && count != a.len() * b.len() {
                return Some("cross edges between cliques are partial");
            }
        }
    }
    if 4 * w > 3 * n * n {
        match g.rearrange_to_mother_form() {
            Ok((h, _)) if h.weight() == w && !h.mother_vertices().is_empty() => {}
            _ => return Some("rearrangement lost weight or mother vertex"),
        }
    }
    let open: usize = g.minimal_open_sets().iter().map(Vec::len).sum();
    if open as u64 != w || g.to_preorder().len() as u64 != w {
        return Some("open sets or preorder size differs from weight");
    }
    None
}

/// Mother-vertex rearrangement on `cases` random transitive digraphs with
/// weight above `3n²/4`: weight is preserved and a mother vertex appears.
pub fn rearrangement(cases: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x2);
    let mut done = 0;
    while done < cases {
        let n = rng.gen_range(1..=24);
        let (split, p) = (rng.gen_range(0.0..=0.5), rng.gen_range(0.5..=1.0));
        let g = random_transitive(&mut rng, n, split, p).expect("n >= 1");
        let (n, w) = (n as u64, g.weight());
        if 4 * w <= 3 * n * n {
            continue;
        }
        done += 1;
        match g.rearrange_to_mother_form() {
            Ok((h, _))
                if h.weight() == w && h.is_transitive() && !h.mother_vertices().is_empty() => {}
            other => return Outcome::new("rearrangement", false, format!("{g:?}: {other:?}")),
        }
    }
    Outcome::new(
        "rearrangement",
        true,
        format!("{cases} digraphs above 3n^2/4"),
    )
}

/// Structural properties of random transitive digraphs, plus closure
/// idempotence and agreement with Warshall on arbitrary digraphs.
pub fn graph_suite(cases: usize) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut structural = Outcome::new(
        "transitive digraph properties",
        true,
        format!("{cases} random digraphs"),
    );
    let mut dense = 0;
    for _ in 0..cases {
        let g = random_transitive_case(&mut rng, 24);
        let n = g.vertex_count() as u64;
        if 4 * g.weight() > 3 * n * n {
            dense += 1;
        }
        if let Some(why) = graph_properties(&g) {
            structural = Outcome::new(
                "transitive digraph properties",
                false,
                format!("{why}: {g:?}"),
            );
            break;
        }
    }
    if structural.passed {
        structural
            .detail
            .push_str(&format!(", {dense} above 3n^2/4"));
    }

    let mut closure = Outcome::new("closure", true, format!("{cases} arbitrary digraphs"));
    for _ in 0..cases {
        let n = rng.gen_range(1..=20);
        let p = rng.gen_range(0.0..=0.3);
        let g = crate::random::random_digraph(&mut rng, n, p).expect("n >= 1");
        let c = g.transitive_closure();
        if c.transitive_closure() != c
            || c != g.transitive_closure_naive()
            || c.weight() != g.weight()
        {
            closure = Outcome::new("closure", false, format!("{g:?}"));
            break;
        }
    }
    vec![structural, closure, rearrangement(cases)]
}
