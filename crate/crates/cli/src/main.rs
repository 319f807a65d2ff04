use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mpgkit::bench::{parse_grid_token, run_bench};
use mpgkit::format::{parse_game, print_automaton, print_game, print_linear};
use mpgkit_core::{
    check_universal, digit_universal, gen_random_game, minimal_universal_search_capped,
    naive_universal, oracle_solve_mp_capped, solve, sum_universal, EnumMode, Error as CoreError,
    LinearGraph, MeanPayoffGame, Method, SafetyAutomaton, UniversalityVerdict, DEFAULT_ENUM_CAP,
    DEFAULT_ORACLE_CAP, DEFAULT_RANGE_CAP,
};

/// Mean payoff game toolkit: solve games through universal graphs and
/// separating automata, build and check the constructions, and benchmark.
#[derive(Parser)]
#[command(name = "mpgkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Naive,
    Digit,
    Sum,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Naive => Method::Naive,
            MethodArg::Digit => Method::Digit,
            MethodArg::Sum => Method::Sum,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Naive,
    Digit,
    Sum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game: YES if Eve ensures mean payoff, NO otherwise (exit 1).
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Decide a game by brute-force strategy enumeration.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Cap on the number of positional strategies enumerated.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        max_oracle: u128,
    },
    /// Print a universal graph (or its automaton) for given parameters.
    BuildUniversal {
        #[arg(long, value_enum)]
        method: ConstructionArg,
        #[arg(long)]
        n: usize,
        /// Weight bound N; weights range over the open interval (-N, N).
        #[arg(long)]
        max_weight: Option<i64>,
        /// Explicit weight set (for the sum construction).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        /// Dump the induced separating automaton instead of the value list.
        #[arg(long)]
        automaton: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a value set for (n, W)-universality.
    CheckUniversal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<i64>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Sample size in sampled mode.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Cap on candidate edges for exhaustive enumeration.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        max_enum: usize,
    },
    /// Find the smallest universal value set by exhaustive subset search.
    SearchMinimal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = DEFAULT_RANGE_CAP)]
        range_cap: usize,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        max_enum: usize,
    },
    /// Generate a random well-formed game.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0.5)]
        eve: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a grid of random instances under all three methods, as CSV.
    Bench {
        /// Grid ranges, e.g. `--grid n=2..6 N=1..3`.
        #[arg(long, num_args = 1.., default_values = ["n=2..6", "N=1..3"])]
        grid: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Instances per grid point.
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0.5)]
        eve: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an ultimately periodic word through a construction's automaton.
    LassoCheck {
        #[arg(long, value_enum, default_value = "naive")]
        method: ConstructionArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        max_weight: Option<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        /// Explicit universal value set; overrides --method.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        prefix: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cycle: Vec<i64>,
    },
}

enum CliError {
    Usage(String),
    Cap(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Cap(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Cap(m) => m,
        }
    }
}

fn core_error(e: CoreError) -> CliError {
    match e {
        CoreError::CapExceeded { .. } => CliError::Cap(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("MPGKIT_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn load_game(path: &PathBuf) -> Result<MeanPayoffGame, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let (game, warnings) =
        parse_game(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(game)
}

fn weight_set(weights: &[i64]) -> Result<BTreeSet<i64>, CliError> {
    let set: BTreeSet<i64> = weights.iter().copied().collect();
    if set.is_empty() {
        return Err(CliError::Usage("weight set must be nonempty".into()));
    }
    Ok(set)
}

fn probability(name: &str, p: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("--{name} must be in [0, 1], got {p}")))
    }
}

fn build_construction(
    method: ConstructionArg,
    n: usize,
    max_weight: Option<i64>,
    weights: Option<&Vec<i64>>,
) -> Result<LinearGraph, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    match method {
        ConstructionArg::Naive | ConstructionArg::Digit => {
            let bound = max_weight
                .ok_or_else(|| CliError::Usage("this construction needs --max-weight".into()))?;
            if bound < 1 {
                return Err(CliError::Usage("--max-weight must be at least 1".into()));
            }
            Ok(if method == ConstructionArg::Naive {
                naive_universal(n, bound)
            } else {
                digit_universal(n, bound)
            })
        }
        ConstructionArg::Sum => {
            let w = weights
                .ok_or_else(|| CliError::Usage("the sum construction needs --weights".into()))?;
            Ok(sum_universal(n, &weight_set(w)?))
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Solve { input, method } => {
            let game = load_game(&input)?;
            let outcome = solve(&game, method.into());
            let r = &outcome.report;
            println!("{}", if r.eve_wins { "YES" } else { "NO" });
            println!("method={}", r.method);
            println!("universal_size={}", r.universal_size);
            println!("product_vertices={}", r.product_vertices);
            println!("product_edges={}", r.product_edges);
            eprintln!(
                "build_ms={:.3} solve_ms={:.3}",
                r.build_time.as_secs_f64() * 1e3,
                r.solve_time.as_secs_f64() * 1e3
            );
            Ok(if r.eve_wins {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { input, max_oracle } => {
            let game = load_game(&input)?;
            let eve_wins = oracle_solve_mp_capped(&game, max_oracle).map_err(core_error)?;
            println!("{}", if eve_wins { "YES" } else { "NO" });
            Ok(if eve_wins {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::BuildUniversal {
            method,
            n,
            max_weight,
            weights,
            automaton,
            out,
        } => {
            let a = build_construction(method, n, max_weight, weights.as_ref())?;
            let text = if automaton {
                print_automaton(&SafetyAutomaton::from_linear_universal(&a))
            } else {
                print_linear(&a)
            };
            emit(out.as_ref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckUniversal {
            n,
            weights,
            values,
            mode,
            seed,
            count,
            max_enum,
        } => {
            let w = weight_set(&weights)?;
            if values.is_empty() {
                return Err(CliError::Usage("--values must be nonempty".into()));
            }
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let a = LinearGraph::new(values, w.iter().copied());
            let mode = match mode {
                ModeArg::Exhaustive => EnumMode::Exhaustive,
                ModeArg::Sampled => EnumMode::Sampled {
                    seed: resolve_seed(seed),
                    count,
                },
            };
            match check_universal(&a, n, &w, mode, max_enum).map_err(core_error)? {
                UniversalityVerdict::Universal => println!("universal"),
                UniversalityVerdict::NoCounterexampleFound => {
                    println!("no counterexample found")
                }
                UniversalityVerdict::Counterexample(g) => {
                    println!("counterexample");
                    println!("init {}", g.init());
                    let mut edges = g.edges().to_vec();
                    edges.sort_unstable();
                    for (u, wt, v) in edges {
                        println!("edge {u} {wt} {v}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SearchMinimal {
            n,
            weights,
            max_size,
            range_cap,
            max_enum,
        } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let w = weight_set(&weights)?;
            let found = minimal_universal_search_capped(n, &w, max_size, range_cap, max_enum)
                .map_err(core_error)?;
            match found {
                Some((size, witness)) => {
                    println!("size {size}");
                    print!("{}", print_linear(&witness));
                }
                None => println!("none"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            n,
            weights,
            density,
            eve,
            seed,
            out,
        } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let w = weight_set(&weights)?;
            let density = probability("density", density)?;
            let eve = probability("eve", eve)?;
            let game = gen_random_game(n, &w, density, eve, resolve_seed(seed));
            emit(out.as_ref(), &print_game(&game))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            grid,
            seed,
            count,
            density,
            eve,
            out,
        } => {
            let mut n_range = 2..=6u64;
            let mut bound_range = 1..=3u64;
            for tok in &grid {
                let (name, range) = parse_grid_token(tok).map_err(CliError::Usage)?;
                match name.as_str() {
                    "n" => n_range = range,
                    "N" => bound_range = range,
                    other => {
                        return Err(CliError::Usage(format!(
                            "unknown grid dimension `{other}` (expected n or N)"
                        )))
                    }
                }
            }
            let density = probability("density", density)?;
            let eve = probability("eve", eve)?;
            let csv = run_bench(
                n_range,
                bound_range,
                resolve_seed(seed),
                count,
                density,
                eve,
            );
            emit(out.as_ref(), &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::LassoCheck {
            method,
            n,
            max_weight,
            weights,
            values,
            prefix,
            cycle,
        } => {
            if cycle.is_empty() {
                return Err(CliError::Usage("--cycle must be nonempty".into()));
            }
            let a = match values {
                Some(vals) => {
                    if vals.is_empty() {
                        return Err(CliError::Usage("--values must be nonempty".into()));
                    }
                    let w = weights
                        .as_ref()
                        .ok_or_else(|| CliError::Usage("--values needs --weights".into()))?;
                    LinearGraph::new(vals, weight_set(w)?)
                }
                None => build_construction(method, n, max_weight, weights.as_ref())?,
            };
            let aut = SafetyAutomaton::from_linear_universal(&a);
            let prefix = prefix.unwrap_or_default();
            let accepted = aut.run_lasso(&prefix, &cycle).map_err(core_error)?;
            println!("{}", if accepted { "accepted" } else { "rejected" });
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
