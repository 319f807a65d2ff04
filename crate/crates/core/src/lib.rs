//! Solving mean payoff games by reduction to safety games.
//!
//! The pipeline: a universal graph (a linear graph every small mean-payoff
//! graph maps into homomorphically) induces a deterministic safety
//! automaton; the product of a game with that automaton is a safety game,
//! solvable in linear time by attractor computation. Eve wins the mean
//! payoff game iff she wins the product.
//!
//! Three universal-graph constructions are provided, parameterised by the
//! number of vertices `n`, the largest weight `N`, and the weight set `W`:
//! the full interval `(-nN, nN)`, a digit-based subset of size about
//! `2n(nN)^(1-1/n)`, and the set of short sums of weights, of size at most
//! `n^|W|`. Lower-bound witness families and brute-force oracles
//! (exhaustive graph enumeration, strategy enumeration, minimal-size
//! search) support checking all of this at small scale.

#![forbid(unsafe_code)]

pub mod automata;
pub mod error;
pub mod games;
pub mod graph;
pub mod solver;
pub mod universal;

pub use automata::{product, GameAutomatonProduct, SafetyAutomaton};
pub use error::Error;
pub use games::{
    gen_random_game, oracle_solve_mp, oracle_solve_mp_capped, solve_safety, MeanPayoffGame,
    Owner, PositionalStrategy, SafetyGame, SafetySolution, DEFAULT_ORACLE_CAP,
};
pub use graph::{
    check_homomorphism, enumerate_mp_graphs, enumerate_mp_graphs_capped,
    find_homomorphism_into_linear, verify_zero_cycle_rigidity, EnumMode, Homomorphism,
    LinearGraph, Vertex, Weight, WeightedGraph, DEFAULT_ENUM_CAP,
};
pub use solver::{auto_select, certify, solve, Method, SolveOutcome, SolveReport};
pub use universal::{
    check_universal, digit_universal, lb_family_largest_weight, minimal_universal_search,
    minimal_universal_search_capped, naive_universal, sum_universal, verify_lb_injectivity,
    LowerBoundFamilyK, UniversalityVerdict, DEFAULT_RANGE_CAP,
};
