//! Benchmark harness: a grid of random instances, each solved under all
//! three constructions, written as CSV. Row order is fixed by grid position
//! and instance index; only the two *_ms columns vary between runs.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use mpgkit_core::{gen_random_game, solve, Method};

pub const CSV_HEADER: &str = "method,n,m,N,k,universal_size,build_ms,solve_ms,answer";

/// Parses a grid token like `n=2..6` into its name and inclusive range.
pub fn parse_grid_token(tok: &str) -> Result<(String, RangeInclusive<u64>), String> {
    let (name, range) = tok
        .split_once('=')
        .ok_or_else(|| format!("expected `name=lo..hi`, got `{tok}`"))?;
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| format!("expected `lo..hi` in `{tok}`"))?;
    let lo: u64 = lo.parse().map_err(|_| format!("bad bound in `{tok}`"))?;
    let hi: u64 = hi.parse().map_err(|_| format!("bad bound in `{tok}`"))?;
    if lo > hi || lo == 0 {
        return Err(format!("empty or zero-based range in `{tok}`"));
    }
    Ok((name.to_string(), lo..=hi))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Deterministic per-instance seed from the base seed and grid position.
fn instance_seed(base: u64, n: u64, bound: u64, index: u64) -> u64 {
    splitmix(base ^ splitmix(n) ^ splitmix(bound.rotate_left(16)) ^ splitmix(index.rotate_left(32)))
}

/// Runs the grid and returns the CSV, including the header line.
pub fn run_bench(
    n_range: RangeInclusive<u64>,
    bound_range: RangeInclusive<u64>,
    seed: u64,
    count: u64,
    density: f64,
    eve_fraction: f64,
) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for n in n_range {
        for bound in bound_range.clone() {
            let w_set: BTreeSet<i64> = (-(bound as i64) + 1..bound as i64).collect();
            for i in 0..count {
                let game = gen_random_game(
                    n as usize,
                    &w_set,
                    density,
                    eve_fraction,
                    instance_seed(seed, n, bound, i),
                );
                let m = game.graph().edges().len();
                let k = game.graph().present_weights().len();
                for method in [Method::Naive, Method::Digit, Method::Sum] {
                    let outcome = solve(&game, method);
                    let r = &outcome.report;
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{:.3},{:.3},{}",
                        r.method,
                        game.graph().vertex_count(),
                        m,
                        bound,
                        k,
                        r.universal_size,
                        r.build_time.as_secs_f64() * 1e3,
                        r.solve_time.as_secs_f64() * 1e3,
                        if r.eve_wins { "YES" } else { "NO" },
                    );
                }
            }
        }
    }
    out
}
