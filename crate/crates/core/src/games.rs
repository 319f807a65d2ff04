//! Mean payoff and safety games: strategy restriction, the linear-time
//! attractor solver for safety, and the brute-force strategy-enumeration
//! oracle for mean payoff.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Vertex, Weight, WeightedGraph};

/// Default cap on the number of positional Eve strategies the oracle will
/// enumerate.
pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Eve,
    Adam,
}

/// Two-player mean payoff game: a weighted graph plus an owner per vertex.
/// Every vertex has at least one outgoing edge, so plays are infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanPayoffGame {
    graph: WeightedGraph,
    owner: Vec<Owner>,
}

impl MeanPayoffGame {
    pub fn new(graph: WeightedGraph, owner: Vec<Owner>) -> Result<Self, Error> {
        if owner.len() != graph.vertex_count() {
            return Err(Error::OwnerLengthMismatch {
                expected: graph.vertex_count(),
                got: owner.len(),
            });
        }
        for v in 0..graph.vertex_count() {
            if graph.out_degree(v) == 0 {
                return Err(Error::DeadEndVertex { vertex: v });
            }
        }
        Ok(MeanPayoffGame { graph, owner })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owner[v]
    }

    pub fn owners(&self) -> &[Owner] {
        &self.owner
    }

    pub fn eve_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.graph.vertex_count()).filter(|&v| self.owner[v] == Owner::Eve)
    }

    /// Keeps Eve's chosen edge at her vertices and every edge at Adam's,
    /// then restricts to what stays reachable from the initial vertex.
    pub fn restrict(&self, sigma: &PositionalStrategy) -> WeightedGraph {
        let kept = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, &(u, _, _))| match self.owner[u] {
                Owner::Adam => true,
                Owner::Eve => sigma.choice(u) == Some(i),
            })
            .map(|(_, &e)| e);
        WeightedGraph::new(
            self.graph.vertex_count(),
            kept,
            self.graph.init(),
            self.graph.weight_alphabet().iter().copied(),
        )
        .expect("restriction of a well-formed game")
    }

    /// Fact: a positional strategy ensures mean payoff iff the restricted
    /// graph has no negative cycle.
    pub fn strategy_ensures_mp(&self, sigma: &PositionalStrategy) -> bool {
        !self.restrict(sigma).has_negative_cycle()
    }

    /// Number of positional Eve strategies.
    pub fn strategy_count(&self) -> u128 {
        self.eve_vertices()
            .map(|v| self.graph.out_degree(v) as u128)
            .product()
    }

    /// All positional Eve strategies, lexicographic over the per-vertex
    /// edge indices (vertices ascending, the last vertex varying fastest).
    pub fn strategies(&self) -> StrategyIter<'_> {
        let eve: Vec<Vertex> = self.eve_vertices().collect();
        StrategyIter {
            game: self,
            eve,
            counters: None,
        }
    }
}

/// Map from Eve's vertices to a chosen outgoing edge (an index into the
/// game's edge list). Adam's vertices carry no choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalStrategy {
    choice: Vec<Option<usize>>,
}

impl PositionalStrategy {
    pub fn new(game: &MeanPayoffGame, choice: Vec<Option<usize>>) -> Result<Self, Error> {
        if choice.len() != game.graph().vertex_count() {
            return Err(Error::OwnerLengthMismatch {
                expected: game.graph().vertex_count(),
                got: choice.len(),
            });
        }
        for (v, &c) in choice.iter().enumerate() {
            match (game.owner(v), c) {
                (Owner::Eve, Some(e)) => {
                    let valid = e < game.graph().edges().len() && game.graph().edges()[e].0 == v;
                    if !valid {
                        return Err(Error::InvalidStrategy { vertex: v });
                    }
                }
                (Owner::Adam, None) => {}
                _ => return Err(Error::InvalidStrategy { vertex: v }),
            }
        }
        Ok(PositionalStrategy { choice })
    }

    pub fn choice(&self, v: Vertex) -> Option<usize> {
        self.choice[v]
    }

    pub fn choices(&self) -> &[Option<usize>] {
        &self.choice
    }
}

pub struct StrategyIter<'a> {
    game: &'a MeanPayoffGame,
    eve: Vec<Vertex>,
    /// Per-Eve-vertex position in its out-edge list; None before the first
    /// strategy, empty-vec iteration exhausted is signalled by overflow.
    counters: Option<Vec<usize>>,
}

impl Iterator for StrategyIter<'_> {
    type Item = PositionalStrategy;

    fn next(&mut self) -> Option<PositionalStrategy> {
        let counters = match &mut self.counters {
            None => {
                self.counters = Some(vec![0; self.eve.len()]);
                self.counters.as_mut().unwrap()
            }
            Some(counters) => {
                // odometer increment, last vertex fastest
                let mut i = self.eve.len();
                loop {
                    if i == 0 {
                        return None;
                    }
                    i -= 1;
                    counters[i] += 1;
                    if counters[i] < self.game.graph().out_degree(self.eve[i]) {
                        break;
                    }
                    counters[i] = 0;
                }
                counters
            }
        };
        let mut choice = vec![None; self.game.graph().vertex_count()];
        for (i, &v) in self.eve.iter().enumerate() {
            choice[v] = Some(self.game.graph().out_edges(v)[counters[i]]);
        }
        Some(PositionalStrategy { choice })
    }
}

/// Decides mean payoff by enumerating every positional Eve strategy and
/// testing the restricted graph. Positional determinacy makes this a
/// complete decision procedure. Errors out if the strategy space exceeds
/// `cap`.
pub fn oracle_solve_mp_capped(game: &MeanPayoffGame, cap: u128) -> Result<bool, Error> {
    let count = game.strategy_count();
    if count > cap {
        return Err(Error::CapExceeded {
            what: "strategy enumeration",
            needed: count,
            cap,
        });
    }
    Ok(game.strategies().any(|s| game.strategy_ensures_mp(&s)))
}

pub fn oracle_solve_mp(game: &MeanPayoffGame) -> Result<bool, Error> {
    oracle_solve_mp_capped(game, DEFAULT_ORACLE_CAP)
}

/// Safety game over an unlabelled graph: Eve wins by avoiding the losing
/// set forever. Vertices in the losing set are absorbing losers and need no
/// outgoing edge; every other vertex has at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyGame {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    owner: Vec<Owner>,
    losing: Vec<bool>,
    init: Vertex,
    succ: Vec<Vec<usize>>,
}

impl SafetyGame {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(Vertex, Vertex)>,
        owner: Vec<Owner>,
        losing: Vec<bool>,
        init: Vertex,
    ) -> Result<Self, Error> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        if owner.len() != vertex_count || losing.len() != vertex_count {
            return Err(Error::OwnerLengthMismatch {
                expected: vertex_count,
                got: owner.len().min(losing.len()),
            });
        }
        if init >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: init,
                vertex_count,
            });
        }
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            succ[u].push(i);
        }
        for v in 0..vertex_count {
            if !losing[v] && succ[v].is_empty() {
                return Err(Error::DeadEndVertex { vertex: v });
            }
        }
        Ok(SafetyGame {
            vertex_count,
            edges,
            owner,
            losing,
            init,
            succ,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn owner(&self, v: Vertex) -> Owner {
        self.owner[v]
    }

    pub fn is_losing(&self, v: Vertex) -> bool {
        self.losing[v]
    }

    pub fn init(&self) -> Vertex {
        self.init
    }

    pub fn out_edges(&self, v: Vertex) -> &[usize] {
        &self.succ[v]
    }
}

/// Result of [`solve_safety`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetySolution {
    pub eve_wins: bool,
    /// Adam's attractor to the losing set.
    pub adam_region: Vec<bool>,
    /// For each winning Eve vertex, the first outgoing edge (by edge index)
    /// that stays in the winning region; None elsewhere.
    pub eve_choice: Vec<Option<usize>>,
    /// Number of edge examinations performed; stays within a small constant
    /// multiple of the edge count.
    pub edge_visits: usize,
}

/// Backward attractor computation with per-vertex successor counters, linear
/// in the number of edges.
pub fn solve_safety(sg: &SafetyGame) -> SafetySolution {
    let n = sg.vertex_count();
    let m = sg.edges().len();
    let mut visits = 0usize;

    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut remaining: Vec<usize> = vec![0; n];
    for (i, &(u, v)) in sg.edges().iter().enumerate() {
        visits += 1;
        pred[v].push(i);
        remaining[u] += 1;
    }

    let mut region: Vec<bool> = (0..n).map(|v| sg.is_losing(v)).collect();
    let mut queue: Vec<Vertex> = (0..n).filter(|&v| region[v]).collect();
    while let Some(v) = queue.pop() {
        for &e in &pred[v] {
            visits += 1;
            let u = sg.edges()[e].0;
            if region[u] {
                continue;
            }
            let joins = match sg.owner(u) {
                Owner::Adam => true,
                Owner::Eve => {
                    remaining[u] -= 1;
                    remaining[u] == 0
                }
            };
            if joins {
                region[u] = true;
                queue.push(u);
            }
        }
    }

    let mut eve_choice = vec![None; n];
    for u in 0..n {
        if region[u] || sg.owner(u) != Owner::Eve {
            continue;
        }
        for &e in sg.out_edges(u) {
            visits += 1;
            if !region[sg.edges()[e].1] {
                eve_choice[u] = Some(e);
                break;
            }
        }
        debug_assert!(eve_choice[u].is_some(), "winning Eve vertex has a safe move");
    }

    debug_assert!(visits <= 3 * m + 1);
    SafetySolution {
        eve_wins: !region[sg.init()],
        adam_region: region,
        eve_choice,
        edge_visits: visits,
    }
}

/// Random well-formed game, deterministic in the seed: a reachability spine
/// plus one guaranteed outgoing edge per vertex plus density-controlled
/// extras.
pub fn gen_random_game(
    n: usize,
    w_set: &BTreeSet<Weight>,
    edge_density: f64,
    eve_fraction: f64,
    seed: u64,
) -> MeanPayoffGame {
    assert!(n >= 1, "games need at least one vertex");
    assert!(!w_set.is_empty(), "weight set must be nonempty");
    let weights: Vec<Weight> = w_set.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| weights[rng.random_range(0..weights.len())];

    let mut edges: Vec<(Vertex, Weight, Vertex)> = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        let w = pick(&mut rng);
        edges.push((u, w, v));
    }
    for v in 0..n {
        let t = rng.random_range(0..n);
        let w = pick(&mut rng);
        edges.push((v, w, t));
    }
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(edge_density.clamp(0.0, 1.0)) {
                let w = pick(&mut rng);
                edges.push((u, w, v));
            }
        }
    }
    let owner: Vec<Owner> = (0..n)
        .map(|_| {
            if rng.random_bool(eve_fraction.clamp(0.0, 1.0)) {
                Owner::Eve
            } else {
                Owner::Adam
            }
        })
        .collect();

    let graph = WeightedGraph::new(n, edges, 0, w_set.iter().copied())
        .expect("generated edges are well-formed");
    debug_assert_eq!(graph.vertex_count(), n, "spine keeps every vertex reachable");
    MeanPayoffGame::new(graph, owner).expect("every vertex has an outgoing edge")
}
