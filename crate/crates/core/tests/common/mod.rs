//! Brute-force oracles shared by the integration suites. These stay
//! deliberately independent of the library's algorithms: plain backtracking
//! over assignments and memoized game-tree search.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use mpgkit_core::{LinearGraph, Owner, SafetyGame, Vertex, WeightedGraph};
use rand::Rng;

/// Backtracking search for any homomorphism of `g` into the linear graph
/// `a`: tries every assignment of values to vertices, pruning on violated
/// edges. Exponential; small instances only.
pub fn backtracking_hom_into_linear(g: &WeightedGraph, a: &LinearGraph) -> Option<Vec<i64>> {
    fn consistent(g: &WeightedGraph, a: &LinearGraph, phi: &[i64]) -> bool {
        let assigned = phi.len();
        g.edges().iter().all(|&(u, w, v)| {
            if u < assigned && v < assigned {
                a.has_edge(phi[u], w, phi[v])
            } else {
                true
            }
        })
    }
    fn rec(g: &WeightedGraph, a: &LinearGraph, phi: &mut Vec<i64>) -> bool {
        if phi.len() == g.vertex_count() {
            return true;
        }
        for &x in a.values() {
            phi.push(x);
            if consistent(g, a, phi) && rec(g, a, phi) {
                return true;
            }
            phi.pop();
        }
        false
    }
    let mut phi = Vec::new();
    if rec(g, a, &mut phi) {
        Some(phi)
    } else {
        None
    }
}

/// Every homomorphism of `g` into `a`, by plain enumeration of all
/// `|a|^n` assignments. Tiny instances only.
pub fn all_homs_into_linear(g: &WeightedGraph, a: &LinearGraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let vals = a.values();
    let mut out = Vec::new();
    let mut phi = vec![0usize; n];
    loop {
        let assignment: Vec<i64> = phi.iter().map(|&i| vals[i]).collect();
        let ok = g
            .edges()
            .iter()
            .all(|&(u, w, v)| a.has_edge(assignment[u], w, assignment[v]));
        if ok {
            out.push(assignment);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            phi[i] += 1;
            if phi[i] < vals.len() {
                break;
            }
            phi[i] = 0;
        }
    }
}

/// Backtracking search for a homomorphism of `g` into an arbitrary weighted
/// graph, using explicit edge membership of the target.
pub fn backtracking_hom_into_graph(g: &WeightedGraph, target: &WeightedGraph) -> bool {
    let target_edges: BTreeSet<(Vertex, i64, Vertex)> = target.edges().iter().copied().collect();
    fn rec(
        g: &WeightedGraph,
        target_n: usize,
        target_edges: &BTreeSet<(Vertex, i64, Vertex)>,
        phi: &mut Vec<Vertex>,
    ) -> bool {
        let assigned = phi.len();
        let ok = g.edges().iter().all(|&(u, w, v)| {
            if u < assigned && v < assigned {
                target_edges.contains(&(phi[u], w, phi[v]))
            } else {
                true
            }
        });
        if !ok {
            return false;
        }
        if assigned == g.vertex_count() {
            return true;
        }
        for x in 0..target_n {
            phi.push(x);
            if rec(g, target_n, target_edges, phi) {
                return true;
            }
            phi.pop();
        }
        false
    }
    rec(g, target.vertex_count(), &target_edges, &mut Vec::new())
}

/// Memoized alternating reachability: can Adam force a visit to the losing
/// set from `v` within `depth` moves? With `depth >= vertex count` this
/// decides the attractor.
pub fn adam_can_force_losing(sg: &SafetyGame, v: Vertex, depth: usize) -> bool {
    fn go(
        sg: &SafetyGame,
        v: Vertex,
        depth: usize,
        memo: &mut HashMap<(Vertex, usize), bool>,
    ) -> bool {
        if sg.is_losing(v) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        if let Some(&r) = memo.get(&(v, depth)) {
            return r;
        }
        let succs = sg.out_edges(v).iter().map(|&e| sg.edges()[e].1);
        let r = match sg.owner(v) {
            Owner::Adam => succs.into_iter().any(|s| go(sg, s, depth - 1, memo)),
            Owner::Eve => succs.into_iter().all(|s| go(sg, s, depth - 1, memo)),
        };
        memo.insert((v, depth), r);
        r
    }
    go(sg, v, depth, &mut HashMap::new())
}

/// Random small safety game: random owners, random losing set, random edges
/// with every non-losing vertex guaranteed an outgoing edge.
pub fn random_safety_game(rng: &mut impl Rng, max_vertices: usize) -> SafetyGame {
    let n = rng.random_range(1..=max_vertices);
    let owner: Vec<Owner> = (0..n)
        .map(|_| if rng.random_bool(0.5) { Owner::Eve } else { Owner::Adam })
        .collect();
    let losing: Vec<bool> = (0..n).map(|_| rng.random_bool(0.25)).collect();
    let p = (2.5 / n as f64).min(1.0);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    for (u, &lose) in losing.iter().enumerate() {
        if !lose && !edges.iter().any(|&(s, _)| s == u) {
            edges.push((u, rng.random_range(0..n)));
        }
    }
    let init = rng.random_range(0..n);
    SafetyGame::new(n, edges, owner, losing, init).expect("generated game is well-formed")
}

/// Reads a lasso off a random walk in `g`: weights up to the first repeated
/// vertex split into prefix and cycle. `None` if the walk dies in a dead
/// end first.
pub fn lasso_from_walk(
    g: &WeightedGraph,
    rng: &mut impl Rng,
) -> Option<(Vec<i64>, Vec<i64>)> {
    let mut seen_at: HashMap<Vertex, usize> = HashMap::new();
    let mut word: Vec<i64> = Vec::new();
    let mut v = g.init();
    loop {
        if let Some(&i) = seen_at.get(&v) {
            let cycle = word.split_off(i);
            return Some((word, cycle));
        }
        seen_at.insert(v, word.len());
        let out = g.out_edges(v);
        if out.is_empty() {
            return None;
        }
        let e = out[rng.random_range(0..out.len())];
        let (_, w, next) = g.edges()[e];
        word.push(w);
        v = next;
    }
}
