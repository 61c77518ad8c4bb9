//! Closed-form estimators for `ζ(n)`, `b(n)` and `|W(n)|`, and the bounds
//! that tie them to the exact values.
//!
//! All real arithmetic is `f64`. The truncation level `N` is found by
//! comparing against the exact thresholds `5^(2^d)`, so it never flips
//! because of a rounded logarithm.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Tables};

/// `|ζ(n) - r(n)|` stays below this for every `n >= 3`.
pub const ZETA_BOUND: f64 = 1.985;
/// `|b(n) - g(n)| < B_BOUND_FACTOR * n` for `n >= 3`.
pub const B_BOUND_FACTOR: f64 = 2.0;
/// `||W(n)| - h(n)| < H_BOUND_FACTOR * n` for `n >= H_BOUND_MIN_N`.
pub const H_BOUND_FACTOR: f64 = 3.0;
pub const H_BOUND_MIN_N: u64 = 25;
/// `||W(n)| - ω̄(n)| < W_BOUND_FACTOR * n` for `n >= 3`.
pub const W_BOUND_FACTOR: f64 = 30.0;

const SERIES_TOLERANCE: f64 = 1e-12;
const SERIES_MAX_TERMS: i32 = 64;

/// `N = ⌊log₂ log₅ x⌋ + 1`, i.e. the number of thresholds
/// `5, 25, 625, 390625, ...` that are `<= x`. Zero for `3 <= x < 5`.
pub fn truncation_level(x: f64) -> Result<u32> {
    if x.is_nan() || x < 3.0 {
        return Err(Error::domain(x, "requires x >= 3"));
    }
    let mut level = 0;
    let mut threshold = 5.0f64;
    while threshold <= x {
        level += 1;
        threshold *= threshold;
    }
    Ok(level)
}

/// Estimator for `ζ(x)`:
/// `Σ_{j=1..N} x^(1/2^j) / 2^(j-1) - (2^(N-1) - 1) / 2^(N-1)`.
///
/// With `N = 0` the sum is empty and the value is 1.
pub fn r(x: f64) -> Result<f64> {
    let levels = truncation_level(x)? as i32;
    let sum: f64 = (1..=levels)
        .map(|j| x.powf(0.5f64.powi(j)) / 2f64.powi(j - 1))
        .sum();
    let half = 2f64.powi(levels - 1);
    Ok(sum - (half - 1.0) / half)
}

/// Estimator for `b(n)`: `n² - r(n)·n + n`.
pub fn g(n: u64) -> Result<f64> {
    let x = n as f64;
    Ok(x * x - r(x)? * x + x)
}

/// `g` written as `n² - Σ_{j=1..N} n^(1+1/2^j)/2^(j-1) + (2 - 1/2^(N-1))·n`.
pub fn g_summation(n: u64) -> Result<f64> {
    let x = n as f64;
    let levels = truncation_level(x)? as i32;
    let sum: f64 = (1..=levels)
        .map(|j| x.powf(1.0 + 0.5f64.powi(j)) / 2f64.powi(j - 1))
        .sum();
    Ok(x * x - sum + (2.0 - 1.0 / 2f64.powi(levels - 1)) * x)
}

/// `c_k = 2^k / Π_{i=1..k} (2^i + 1)`, for `k >= 1`.
pub fn coefficient(k: u32) -> f64 {
    (1..=k as i32).fold(1.0, |c, i| c * 2.0 / (2f64.powi(i) + 1.0))
}

pub fn coefficient_exact(k: u32) -> BigRational {
    let two = BigInt::from(2);
    (1..=k).fold(BigRational::one(), |c, i| {
        let denom = two.pow(i) + BigInt::one();
        c * BigRational::new(two.clone(), denom)
    })
}

/// Checks `Σ_{k=1..m} c_k = 1 - 1/Π_{i=1..m}(2^i + 1)` in exact arithmetic.
pub fn coefficient_identity_holds(m: u32) -> bool {
    let sum = (1..=m).fold(BigRational::zero(), |acc, k| acc + coefficient_exact(k));
    let product = (1..=m).fold(BigInt::one(), |p, i| {
        p * (BigInt::from(2).pow(i) + BigInt::one())
    });
    sum == BigRational::one() - BigRational::new(BigInt::one(), product)
}

/// `Σ_{k>=1} c_k f(k)`, stopping once a term drops below `scale·1e-12` or
/// after 64 terms.
fn series(scale: f64, term: impl Fn(i32) -> f64) -> f64 {
    let mut total = 0.0;
    let mut c = 1.0;
    for k in 1..=SERIES_MAX_TERMS {
        c *= 2.0 / (2f64.powi(k) + 1.0);
        let t = c * term(k);
        if t.abs() < SERIES_TOLERANCE * scale {
            break;
        }
        total += t;
    }
    total
}

/// `ω(x) = x² - Σ_{k>=1} c_k x^(1+1/2^k)`.
pub fn omega(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(x, "requires x >= 0"));
    }
    let correction = series((x * x).max(1.0), |k| x.powf(1.0 + 0.5f64.powi(k)));
    Ok(x * x - correction)
}

/// `ω` truncated after `N = truncation_level(x)` correction terms.
pub fn omega_bar(x: f64) -> Result<f64> {
    let levels = truncation_level(x)?;
    let correction: f64 = (1..=levels)
        .map(|k| coefficient(k) * x.powf(1.0 + 0.5f64.powi(k as i32)))
        .sum();
    Ok(x * x - correction)
}

/// `∫_a^b ω(x) dx` from the antiderivative
/// `x³/3 - Σ c_k x^(2+1/2^k) / (2 + 1/2^k)`, differenced term by term.
pub fn omega_integral(a: f64, b: f64) -> Result<f64> {
    if a.is_nan() || b.is_nan() || a < 0.0 || a > b {
        return Err(Error::domain(format!("[{a}, {b}]"), "requires 0 <= a <= b"));
    }
    let cube = (b * b * b - a * a * a) / 3.0;
    let correction = series((b * b * b / 3.0).max(1.0), |k| {
        let p = 2.0 + 0.5f64.powi(k);
        (b.powf(p) - a.powf(p)) / p
    });
    Ok(cube - correction)
}

/// `ω(x) - (x² - x^(3/2) + ∫_0^√x ω)`.
///
/// The series coefficients `c_k` make `ω(1) = 0` and `Σ c_k = 1`, but they
/// do not solve this functional equation exactly: the residual is about
/// `1.5e-3·ω(x)` at `x = 100` and shrinks roughly like `x^(-7/8)`.
pub fn omega_functional_residual(x: f64) -> Result<f64> {
    let lhs = omega(x)?;
    let rhs = x * x - x.powf(1.5) + omega_integral(0.0, x.sqrt())?;
    Ok(lhs - rhs)
}

/// `h(n) = b(n) - (n - 1) + Σ_{k=1..ζ(n)} |W(k)|`.
pub fn h(tables: &Tables, n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain(n, "h is defined for n >= 3"));
    }
    let z = tables.zeta(n)?;
    let mut total = tables.b(n)? + 1 - n;
    for k in 1..=z {
        total += tables.wsize(k)?;
    }
    Ok(total)
}

/// Estimators, exact values and bound residuals for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub n: u64,
    pub zeta: u64,
    pub r: f64,
    pub b: u64,
    pub g: f64,
    pub wsize: Option<u64>,
    pub h: Option<u64>,
    pub omega_bar: f64,
    pub residual_zeta_r: f64,
    pub residual_b_g: f64,
    pub residual_wsize_h: Option<f64>,
    pub residual_wsize_omega_bar: Option<f64>,
    pub pass_zeta_r: bool,
    pub pass_b_g: bool,
    /// `None` when the bound does not apply (`n < 25` or `|W(n)|` not computed).
    pub pass_wsize_h: Option<bool>,
    pub pass_wsize_omega_bar: Option<bool>,
}

impl ApproxReport {
    /// Every applicable bound holds.
    pub fn all_pass(&self) -> bool {
        self.pass_zeta_r
            && self.pass_b_g
            && self.pass_wsize_h.unwrap_or(true)
            && self.pass_wsize_omega_bar.unwrap_or(true)
    }
}

/// Builds an [`ApproxReport`]. `|W(n)|` and `h(n)` are filled in only when
/// `with_wsize` is set.
pub fn bound_report(tables: &Tables, n: u64, with_wsize: bool) -> Result<ApproxReport> {
    if n < 3 {
        return Err(Error::domain(n, "bounds are stated for n >= 3"));
    }
    let x = n as f64;
    let zeta = tables.zeta(n)?;
    let r_n = r(x)?;
    let b = tables.b(n)?;
    let g_n = g(n)?;
    let omega_bar_n = omega_bar(x)?;
    let residual_zeta_r = (zeta as f64 - r_n).abs();
    let residual_b_g = (b as f64 - g_n).abs();

    let (wsize, h_n) = if with_wsize {
        (Some(tables.wsize(n)?), Some(h(tables, n)?))
    } else {
        (None, None)
    };
    let residual_wsize_h = wsize.zip(h_n).map(|(w, h)| w.abs_diff(h) as f64);
    let residual_wsize_omega_bar = wsize.map(|w| (w as f64 - omega_bar_n).abs());

    Ok(ApproxReport {
        n,
        zeta,
        r: r_n,
        b,
        g: g_n,
        wsize,
        h: h_n,
        omega_bar: omega_bar_n,
        residual_zeta_r,
        residual_b_g,
        residual_wsize_h,
        residual_wsize_omega_bar,
        pass_zeta_r: residual_zeta_r < ZETA_BOUND,
        pass_b_g: residual_b_g < B_BOUND_FACTOR * x,
        pass_wsize_h: residual_wsize_h
            .filter(|_| n >= H_BOUND_MIN_N)
            .map(|d| d < H_BOUND_FACTOR * x),
        pass_wsize_omega_bar: residual_wsize_omega_bar.map(|d| d < W_BOUND_FACTOR * x),
    })
}
