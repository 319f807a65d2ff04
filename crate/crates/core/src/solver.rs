//! End-to-end pipeline: pick a universal-graph construction, build the
//! induced automaton, take the product with the game, and solve the
//! resulting safety game.

use std::fmt;
use std::time::{Duration, Instant};

use crate::automata::{product, SafetyAutomaton};
use crate::games::{solve_safety, MeanPayoffGame, Owner, SafetySolution};
use crate::graph::LinearGraph;
use crate::universal::{digit_universal, naive_universal, sum_universal};

/// Universal-graph construction backing a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// The interval `(-nN, nN)`, size `2nN - 1`.
    Naive,
    /// The zero-digit construction, size about `2n(nN)^(1-1/n)`.
    Digit,
    /// All sums of at most `n - 1` weights, size at most `n^|W|`.
    Sum,
    /// Whichever of the three is smallest for this game.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Naive => "naive",
            Method::Digit => "digit",
            Method::Sum => "sum",
            Method::Auto => "auto",
        };
        write!(f, "{s}")
    }
}

/// Summary of one solve run. The method is the construction actually used
/// (auto resolves before solving), and `universal_size` is its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub eve_wins: bool,
    pub method: Method,
    pub universal_size: usize,
    pub product_vertices: usize,
    pub product_edges: usize,
    pub build_time: Duration,
    pub solve_time: Duration,
}

/// Full result of a solve: the report plus the automaton and the safety
/// solution on the product, which together certify the answer. Eve's safety
/// strategy on the product is a finite-memory winning strategy for the
/// original game, with the automaton as memory.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub report: SolveReport,
    pub automaton: SafetyAutomaton,
    pub solution: SafetySolution,
}

/// Parameters read off a game: `n` is the vertex count and `N` the smallest
/// bound with all present weights inside the open interval `(-N, N)`.
fn game_params(game: &MeanPayoffGame) -> (usize, i64) {
    let n = game.graph().vertex_count();
    let max_abs = game.graph().max_abs_weight();
    (n, max_abs + 1)
}

fn construction(game: &MeanPayoffGame, method: Method) -> (Method, LinearGraph) {
    let (n, bound) = game_params(game);
    match method {
        Method::Naive => (Method::Naive, naive_universal(n, bound)),
        Method::Digit => (Method::Digit, digit_universal(n, bound)),
        Method::Sum => (Method::Sum, sum_universal(n, &game.graph().present_weights())),
        Method::Auto => {
            let candidates = [
                construction(game, Method::Naive),
                construction(game, Method::Digit),
                construction(game, Method::Sum),
            ];
            // min_by_key is stable on ties, keeping the naive < digit < sum
            // preference order
            candidates
                .into_iter()
                .min_by_key(|(_, a)| a.size())
                .unwrap()
        }
    }
}

/// Method whose constructed universal graph is smallest for this game;
/// ties break as naive < digit < sum.
pub fn auto_select(game: &MeanPayoffGame) -> Method {
    construction(game, Method::Auto).0
}

/// Decides whether Eve has a strategy ensuring mean payoff from the initial
/// vertex, by reduction to a safety game of size `|game| x |automaton|`.
pub fn solve(game: &MeanPayoffGame, method: Method) -> SolveOutcome {
    let build_start = Instant::now();
    let (used, universal) = construction(game, method);
    let automaton = SafetyAutomaton::from_linear_universal(&universal);
    let prod = product(game, &automaton).expect("construction covers the game weights");
    let build_time = build_start.elapsed();

    let solve_start = Instant::now();
    let solution = solve_safety(&prod.safety);
    let solve_time = solve_start.elapsed();

    SolveOutcome {
        report: SolveReport {
            eve_wins: solution.eve_wins,
            method: used,
            universal_size: universal.size(),
            product_vertices: prod.safety.vertex_count(),
            product_edges: prod.safety.edges().len(),
            build_time,
            solve_time,
        },
        automaton,
        solution,
    }
}

/// Independently validates a safety solution against the product it came
/// from (rebuilt deterministically from the game and automaton).
///
/// When the solution claims an Eve win, replays every play that follows
/// Eve's strategy and checks it never enters the losing set or Adam's
/// claimed region. When it claims an Adam win, recomputes the attractor by
/// a naive fixpoint iteration and checks the initial vertex is inside.
pub fn certify(
    game: &MeanPayoffGame,
    aut: &SafetyAutomaton,
    solution: &SafetySolution,
) -> bool {
    let prod = match product(game, aut) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let sg = &prod.safety;
    let n = sg.vertex_count();
    if solution.adam_region.len() != n || solution.eve_choice.len() != n {
        return false;
    }
    if solution.eve_wins != !solution.adam_region[sg.init()] {
        return false;
    }

    if solution.eve_wins {
        // closure of the claimed winning region under Eve's strategy
        let mut visited = vec![false; n];
        let mut stack = vec![sg.init()];
        visited[sg.init()] = true;
        while let Some(v) = stack.pop() {
            if sg.is_losing(v) || solution.adam_region[v] {
                return false;
            }
            let nexts: Vec<usize> = match sg.owner(v) {
                Owner::Eve => match solution.eve_choice[v] {
                    Some(e) if sg.edges()[e].0 == v => vec![sg.edges()[e].1],
                    _ => return false,
                },
                Owner::Adam => sg.out_edges(v).iter().map(|&e| sg.edges()[e].1).collect(),
            };
            for next in nexts {
                if !visited[next] {
                    visited[next] = true;
                    stack.push(next);
                }
            }
        }
        true
    } else {
        // naive attractor fixpoint, independent of the counter-based solver
        let mut region: Vec<bool> = (0..n).map(|v| sg.is_losing(v)).collect();
        loop {
            let mut changed = false;
            for v in 0..n {
                if region[v] {
                    continue;
                }
                let succs = sg.out_edges(v).iter().map(|&e| sg.edges()[e].1);
                let joins = match sg.owner(v) {
                    Owner::Adam => succs.into_iter().any(|s| region[s]),
                    Owner::Eve => succs.into_iter().all(|s| region[s]),
                };
                if joins {
                    region[v] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        region[sg.init()]
    }
}
