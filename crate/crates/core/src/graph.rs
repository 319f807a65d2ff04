//! Weighted graphs, linear graphs, and homomorphisms between them.
//!
//! A [`WeightedGraph`] is a finite directed graph with integer edge labels
//! and a distinguished initial vertex; every vertex is reachable from the
//! initial vertex (unreachable vertices are dropped on construction). A
//! [`LinearGraph`] is a finite set of integers with the implicit edge
//! relation `(v, w, v')` whenever `v' - v <= w` and `w` is in the weight
//! alphabet.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;

pub type Vertex = usize;
pub type Weight = i64;

/// Default cap on the number of candidate edges in exhaustive enumeration
/// (the enumeration walks `2^candidates` subsets).
pub const DEFAULT_ENUM_CAP: usize = 16;

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("weight sum overflowed i64")
}

/// Bellman-Ford over the whole vertex set: starts every vertex at distance 0
/// (a virtual source with a 0-edge to each vertex), so a negative cycle is
/// detected anywhere in the graph, reachable or not.
pub(crate) fn edges_have_negative_cycle(
    vertex_count: usize,
    edges: &[(Vertex, Weight, Vertex)],
) -> bool {
    let mut dist = vec![0i64; vertex_count];
    for _ in 0..vertex_count {
        let mut changed = false;
        for &(u, w, v) in edges {
            let cand = checked_add(dist[u], w);
            if cand < dist[v] {
                dist[v] = cand;
                changed = true;
            }
        }
        if !changed {
            return false;
        }
    }
    edges
        .iter()
        .any(|&(u, w, v)| checked_add(dist[u], w) < dist[v])
}

/// Finite directed graph with integer edge weights and an initial vertex.
///
/// Vertices are dense ids `0..vertex_count`. Construction normalizes the
/// graph: duplicate `(source, weight, target)` triples are removed and
/// vertices unreachable from the initial vertex are dropped (the remaining
/// ids are compacted, preserving order); `dropped_vertices` records how many
/// were removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(Vertex, Weight, Vertex)>,
    init: Vertex,
    weights: BTreeSet<Weight>,
    succ: Vec<Vec<usize>>,
    dropped_vertices: usize,
}

impl WeightedGraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (Vertex, Weight, Vertex)>,
        init: Vertex,
        weights: impl IntoIterator<Item = Weight>,
    ) -> Result<Self, Error> {
        let weights: BTreeSet<Weight> = weights.into_iter().collect();
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        if init >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: init,
                vertex_count,
            });
        }

        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (u, w, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    vertex_count,
                });
            }
            if !weights.contains(&w) {
                return Err(Error::UndeclaredWeight { weight: w });
            }
            if seen.insert((u, w, v)) {
                kept.push((u, w, v));
            }
        }

        // Reachability from init; unreachable vertices are dropped and ids
        // compacted. Edges out of unreachable vertices go with them (an edge
        // from a reachable vertex only ever targets a reachable vertex).
        let mut reachable = vec![false; vertex_count];
        reachable[init] = true;
        let mut stack = vec![init];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (i, &(u, _, _)) in kept.iter().enumerate() {
            out[u].push(i);
        }
        while let Some(u) = stack.pop() {
            for &i in &out[u] {
                let v = kept[i].2;
                if !reachable[v] {
                    reachable[v] = true;
                    stack.push(v);
                }
            }
        }

        let mut remap = vec![usize::MAX; vertex_count];
        let mut next = 0;
        for v in 0..vertex_count {
            if reachable[v] {
                remap[v] = next;
                next += 1;
            }
        }
        let dropped_vertices = vertex_count - next;
        let edges: Vec<(Vertex, Weight, Vertex)> = kept
            .into_iter()
            .filter(|&(u, _, _)| reachable[u])
            .map(|(u, w, v)| (remap[u], w, remap[v]))
            .collect();

        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); next];
        for (i, &(u, _, _)) in edges.iter().enumerate() {
            succ[u].push(i);
        }

        Ok(WeightedGraph {
            vertex_count: next,
            edges,
            init: remap[init],
            weights,
            succ,
            dropped_vertices,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(Vertex, Weight, Vertex)] {
        &self.edges
    }

    pub fn init(&self) -> Vertex {
        self.init
    }

    /// The declared weight alphabet W.
    pub fn weight_alphabet(&self) -> &BTreeSet<Weight> {
        &self.weights
    }

    /// Weights actually occurring on edges (a subset of the alphabet).
    pub fn present_weights(&self) -> BTreeSet<Weight> {
        self.edges.iter().map(|&(_, w, _)| w).collect()
    }

    /// Largest absolute weight on any edge; 0 for an edgeless graph.
    pub fn max_abs_weight(&self) -> Weight {
        self.edges.iter().map(|&(_, w, _)| w.abs()).max().unwrap_or(0)
    }

    /// Indices into `edges()` of the edges leaving `v`.
    pub fn out_edges(&self, v: Vertex) -> &[usize] {
        &self.succ[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.succ[v].len()
    }

    /// Vertices unreachable from the initial vertex that were dropped when
    /// the graph was normalized.
    pub fn dropped_vertices(&self) -> usize {
        self.dropped_vertices
    }

    /// True iff some cycle has negative total weight.
    pub fn has_negative_cycle(&self) -> bool {
        edges_have_negative_cycle(self.vertex_count, &self.edges)
    }

    /// True iff every infinite path has nonnegative mean payoff, which for a
    /// finite graph is the absence of negative cycles.
    pub fn satisfies_mean_payoff(&self) -> bool {
        !self.has_negative_cycle()
    }

    /// Smallest path weight from the initial vertex to every vertex (the
    /// empty path gives `dist(init) <= 0`, and without negative cycles it is
    /// exactly 0).
    pub fn distances_from_init(&self) -> Result<Vec<Weight>, Error> {
        const UNSET: i64 = i64::MAX;
        let mut dist = vec![UNSET; self.vertex_count];
        dist[self.init] = 0;
        let mut stable = false;
        for _ in 0..self.vertex_count.saturating_sub(1) {
            let mut changed = false;
            for &(u, w, v) in &self.edges {
                if dist[u] == UNSET {
                    continue;
                }
                let cand = checked_add(dist[u], w);
                if cand < dist[v] {
                    dist[v] = cand;
                    changed = true;
                }
            }
            if !changed {
                stable = true;
                break;
            }
        }
        if !stable {
            for &(u, w, v) in &self.edges {
                if dist[u] != UNSET && checked_add(dist[u], w) < dist[v] {
                    return Err(Error::NegativeCycle);
                }
            }
        }
        debug_assert!(dist.iter().all(|&d| d != UNSET), "unreachable vertex");
        Ok(dist)
    }

    /// Collapses the graph onto the linear graph of its distance values and
    /// returns the distance map, which is a homomorphism into it.
    pub fn linearise(&self) -> Result<(LinearGraph, Homomorphism), Error> {
        let dist = self.distances_from_init()?;
        let a = LinearGraph::new(dist.iter().copied(), self.weights.iter().copied());
        Ok((a, Homomorphism::new(dist)))
    }
}

/// Finite set of integers `A` seen as a graph: `(v, w, v')` is an edge iff
/// `w` is in the alphabet and `v' - v <= w`. Linear graphs never contain a
/// negative cycle (edge inequalities telescope around a cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGraph {
    values: Vec<i64>,
    alphabet: BTreeSet<Weight>,
}

impl LinearGraph {
    pub fn new(
        values: impl IntoIterator<Item = i64>,
        alphabet: impl IntoIterator<Item = Weight>,
    ) -> Self {
        let set: BTreeSet<i64> = values.into_iter().collect();
        assert!(!set.is_empty(), "linear graph needs at least one value");
        LinearGraph {
            values: set.into_iter().collect(),
            alphabet: alphabet.into_iter().collect(),
        }
    }

    /// Values in strictly increasing order.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn alphabet(&self) -> &BTreeSet<Weight> {
        &self.alphabet
    }

    /// Number of vertices, the size `|A|`.
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn max_value(&self) -> i64 {
        *self.values.last().unwrap()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, v: i64, w: Weight, v2: i64) -> bool {
        self.alphabet.contains(&w)
            && self.contains(v)
            && self.contains(v2)
            && v2 - v <= w
    }

    /// Largest value `<= bound`, if any.
    pub fn floor_value(&self, bound: i64) -> Option<i64> {
        match self.values.binary_search(&bound) {
            Ok(_) => Some(bound),
            Err(0) => None,
            Err(i) => Some(self.values[i - 1]),
        }
    }

    /// The implicit edge relation as an explicit list over value indices.
    pub fn materialized_edges(&self) -> Vec<(Vertex, Weight, Vertex)> {
        let mut edges = Vec::new();
        for (i, &a) in self.values.iter().enumerate() {
            for &w in &self.alphabet {
                for (j, &b) in self.values.iter().enumerate() {
                    if b - a <= w {
                        edges.push((i, w, j));
                    }
                }
            }
        }
        edges
    }

    /// Explicit [`WeightedGraph`] over the value set, rooted at the largest
    /// value. Values unreachable from it are dropped by normalization.
    pub fn to_weighted_graph(&self) -> Result<WeightedGraph, Error> {
        WeightedGraph::new(
            self.size(),
            self.materialized_edges(),
            self.size() - 1,
            self.alphabet.iter().copied(),
        )
    }
}

/// Vertex-indexed map into the values of a linear graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<i64>,
}

impl Homomorphism {
    pub fn new(map: Vec<i64>) -> Self {
        Homomorphism { map }
    }

    pub fn of(&self, v: Vertex) -> i64 {
        self.map[v]
    }

    pub fn values(&self) -> &[i64] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// True iff `phi` maps every edge of `g` onto an edge of `a`: the image
/// values are members of `a`, the weight is in `a`'s alphabet, and
/// `phi(v') - phi(v) <= w` for every edge `(v, w, v')`.
pub fn check_homomorphism(g: &WeightedGraph, a: &LinearGraph, phi: &Homomorphism) -> bool {
    if phi.len() != g.vertex_count() {
        return false;
    }
    if phi.values().iter().any(|&x| !a.contains(x)) {
        return false;
    }
    g.edges()
        .iter()
        .all(|&(u, w, v)| a.has_edge(phi.of(u), w, phi.of(v)))
}

/// Pointwise-greatest homomorphism from `g` into the linear graph `a`, if
/// one exists.
///
/// Greatest-fixpoint computation: every vertex starts at `max(a)` and edge
/// constraints repeatedly lower targets to the largest admissible value,
/// until stable or some vertex runs out of values (then no homomorphism
/// exists at all).
pub fn find_homomorphism_into_linear(g: &WeightedGraph, a: &LinearGraph) -> Option<Homomorphism> {
    if g.edges().iter().any(|&(_, w, _)| !a.alphabet().contains(&w)) {
        return None;
    }
    let mut phi = vec![a.max_value(); g.vertex_count()];
    loop {
        let mut changed = false;
        for &(u, w, v) in g.edges() {
            let bound = checked_add(phi[u], w);
            if phi[v] > bound {
                phi[v] = a.floor_value(bound)?;
                changed = true;
            }
        }
        if !changed {
            let phi = Homomorphism::new(phi);
            debug_assert!(check_homomorphism(g, a, &phi));
            return Some(phi);
        }
    }
}

/// Checks the tightness forced on zero-weight cycles: any homomorphism into
/// a linear graph satisfies `phi(v_{i+1}) - phi(v_i) = w_i` along a cycle of
/// total weight 0. Returns false if `phi` is not a homomorphism.
pub fn verify_zero_cycle_rigidity(
    cycle: &WeightedGraph,
    a: &LinearGraph,
    phi: &Homomorphism,
) -> Result<bool, Error> {
    let n = cycle.vertex_count();
    for v in 0..n {
        if cycle.out_degree(v) != 1 {
            return Err(Error::NotAZeroCycle {
                reason: "every vertex must have exactly one outgoing edge",
            });
        }
    }
    let mut total = 0i64;
    let mut v = cycle.init();
    let mut visited = 0usize;
    loop {
        let e = cycle.out_edges(v)[0];
        let (_, w, next) = cycle.edges()[e];
        total = checked_add(total, w);
        visited += 1;
        v = next;
        if v == cycle.init() {
            break;
        }
        if visited > n {
            return Err(Error::NotAZeroCycle {
                reason: "walk does not return to the initial vertex",
            });
        }
    }
    if visited != n {
        return Err(Error::NotAZeroCycle {
            reason: "walk does not cover every vertex",
        });
    }
    if total != 0 {
        return Err(Error::NotAZeroCycle {
            reason: "total weight is nonzero",
        });
    }
    if !check_homomorphism(cycle, a, phi) {
        return Ok(false);
    }
    Ok(cycle
        .edges()
        .iter()
        .all(|&(u, w, v)| phi.of(v) - phi.of(u) == w))
}

/// Enumeration mode for the mean-payoff graph corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    /// All subsets of the candidate edge set over exactly `n` vertices;
    /// unreachable vertices are dropped, so the corpus covers every graph
    /// with at most `n` vertices up to renaming.
    Exhaustive,
    /// `count` pseudo-random graphs, deterministic in `seed`.
    Sampled { seed: u64, count: usize },
}

/// Streams `(n, W)`-graphs satisfying mean payoff: at most `n` vertices, all
/// reachable from the initial vertex, weights in `w_set`, no negative cycle.
pub fn enumerate_mp_graphs(
    n: usize,
    w_set: &BTreeSet<Weight>,
    mode: EnumMode,
) -> Result<MpGraphs, Error> {
    enumerate_mp_graphs_capped(n, w_set, mode, DEFAULT_ENUM_CAP)
}

/// [`enumerate_mp_graphs`] with an explicit cap on the candidate edge count
/// in exhaustive mode.
pub fn enumerate_mp_graphs_capped(
    n: usize,
    w_set: &BTreeSet<Weight>,
    mode: EnumMode,
    cap: usize,
) -> Result<MpGraphs, Error> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    assert!(!w_set.is_empty(), "weight set must be nonempty");
    let weights: Vec<Weight> = w_set.iter().copied().collect();
    let state = match mode {
        EnumMode::Exhaustive => {
            let candidates: Vec<(Vertex, Weight, Vertex)> = (0..n)
                .flat_map(|u| {
                    weights
                        .iter()
                        .flat_map(move |&w| (0..n).map(move |v| (u, w, v)))
                        .collect::<Vec<_>>()
                })
                .collect();
            // masks are u64; 63 is the hard ceiling however the cap is set
            if candidates.len() > cap.min(63) {
                return Err(Error::CapExceeded {
                    what: "exhaustive graph enumeration",
                    needed: candidates.len() as u128,
                    cap: cap.min(63) as u128,
                });
            }
            MpState::Exhaustive {
                candidates,
                next_mask: 0,
            }
        }
        EnumMode::Sampled { seed, count } => MpState::Sampled {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            remaining: count,
        },
    };
    Ok(MpGraphs {
        n,
        weights,
        w_set: w_set.clone(),
        state,
    })
}

enum MpState {
    Exhaustive {
        candidates: Vec<(Vertex, Weight, Vertex)>,
        next_mask: u64,
    },
    Sampled {
        rng: Box<ChaCha8Rng>,
        remaining: usize,
    },
}

/// Iterator returned by [`enumerate_mp_graphs`].
pub struct MpGraphs {
    n: usize,
    weights: Vec<Weight>,
    w_set: BTreeSet<Weight>,
    state: MpState,
}

fn build_mp_graph(
    n: usize,
    w_set: &BTreeSet<Weight>,
    edges: Vec<(Vertex, Weight, Vertex)>,
) -> Option<WeightedGraph> {
    let g = WeightedGraph::new(n, edges, 0, w_set.iter().copied())
        .expect("enumerated edges are well-formed");
    if g.has_negative_cycle() {
        None
    } else {
        Some(g)
    }
}

impl Iterator for MpGraphs {
    type Item = WeightedGraph;

    fn next(&mut self) -> Option<WeightedGraph> {
        let MpGraphs {
            n,
            weights,
            w_set,
            state,
        } = self;
        let n = *n;
        match state {
            MpState::Exhaustive {
                candidates,
                next_mask,
            } => {
                let total: u64 = 1u64 << candidates.len();
                while *next_mask < total {
                    let mask = *next_mask;
                    *next_mask += 1;
                    let edges: Vec<_> = candidates
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    if let Some(g) = build_mp_graph(n, w_set, edges) {
                        return Some(g);
                    }
                }
                None
            }
            MpState::Sampled { rng, remaining } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                let k = weights.len();
                // Sparse rejection sampling: aim for ~2 outgoing edges per
                // vertex so that graphs with negative weight sets still have
                // a fair chance of avoiding negative cycles.
                let p = (2.0 / (n * k) as f64).min(1.0);
                for _attempt in 0..100_000 {
                    let mut edges = Vec::new();
                    for u in 0..n {
                        for &w in weights.iter() {
                            for v in 0..n {
                                if rng.random_bool(p) {
                                    edges.push((u, w, v));
                                }
                            }
                        }
                    }
                    if let Some(g) = build_mp_graph(n, w_set, edges) {
                        return Some(g);
                    }
                }
                panic!("sampling failed to find a mean-payoff graph");
            }
        }
    }
}
