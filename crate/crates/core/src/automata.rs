//! Deterministic safety automata over weight alphabets, the translation
//! from and to universal graphs, and the game-automaton product.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::Error;
use crate::games::{MeanPayoffGame, Owner, SafetyGame};
use crate::graph::{edges_have_negative_cycle, LinearGraph, Vertex, Weight, WeightedGraph};

/// Deterministic safety automaton: a run is accepting iff it never reaches
/// the rejecting sink, which is represented as `None` in the transition
/// table and absorbs. The size excludes the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyAutomaton {
    alphabet: Vec<Weight>,
    /// delta[state][letter index]; None is the rejecting sink.
    delta: Vec<Vec<Option<usize>>>,
    init: usize,
}

impl SafetyAutomaton {
    /// Automaton induced by a linear universal graph: states are the
    /// values, the initial state is the largest value, and reading `w` in
    /// state `s` moves to the largest value `<= s + w`.
    ///
    /// State `i` corresponds to `a.values()[i]`.
    pub fn from_linear_universal(a: &LinearGraph) -> SafetyAutomaton {
        let alphabet: Vec<Weight> = a.alphabet().iter().copied().collect();
        let delta = a
            .values()
            .iter()
            .map(|&s| {
                alphabet
                    .iter()
                    .map(|&w| {
                        let bound = s.checked_add(w).expect("weight sum overflowed i64");
                        a.floor_value(bound)
                            .map(|x| a.values().binary_search(&x).unwrap())
                    })
                    .collect()
            })
            .collect();
        SafetyAutomaton {
            alphabet,
            delta,
            init: a.size() - 1,
        }
    }

    /// Number of states, not counting the rejecting sink.
    pub fn size(&self) -> usize {
        self.delta.len()
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn alphabet(&self) -> &[Weight] {
        &self.alphabet
    }

    fn letter_index(&self, w: Weight) -> Result<usize, Error> {
        self.alphabet
            .binary_search(&w)
            .map_err(|_| Error::AlphabetMismatch { letter: w })
    }

    /// One transition; `None` is the sink.
    pub fn step(&self, state: usize, w: Weight) -> Result<Option<usize>, Error> {
        Ok(self.delta[state][self.letter_index(w)?])
    }

    /// Extended transition function from the initial state; `None` once the
    /// sink is reached.
    pub fn run_word(&self, word: &[Weight]) -> Result<Option<usize>, Error> {
        let mut state = Some(self.init);
        for &w in word {
            state = match state {
                Some(q) => self.step(q, w)?,
                None => None,
            };
        }
        Ok(state)
    }

    /// Decides acceptance of the ultimately periodic word
    /// `prefix . cycle^omega`: rejects as soon as the sink is reached,
    /// accepts when a (state, cycle position) pair repeats.
    pub fn run_lasso(&self, prefix: &[Weight], cycle: &[Weight]) -> Result<bool, Error> {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        for &w in prefix.iter().chain(cycle) {
            self.letter_index(w)?;
        }
        let mut state = match self.run_word(prefix)? {
            Some(q) => q,
            None => return Ok(false),
        };
        let mut seen = HashSet::new();
        let mut pos = 0;
        loop {
            if !seen.insert((state, pos)) {
                return Ok(true);
            }
            state = match self.step(state, cycle[pos])? {
                Some(q) => q,
                None => return Ok(false),
            };
            pos = (pos + 1) % cycle.len();
        }
    }

    /// Universal graph induced by a separating automaton: the transition
    /// graph over the alphabet extended with 0, saturated by greedily adding
    /// every edge that creates no negative cycle. Candidates are tried in a
    /// fixed order (source, then weight, then target, ascending) and sweeps
    /// repeat until one adds nothing, so the output is reproducible.
    ///
    /// `n` is the bound for which the caller trusts the automaton to be
    /// separating; the construction itself does not depend on it.
    pub fn to_universal_graph(&self, n: usize) -> WeightedGraph {
        debug_assert!(n >= 1);
        let nv = self.size();
        let mut alphabet: BTreeSet<Weight> = self.alphabet.iter().copied().collect();
        alphabet.insert(0);

        let mut edges: Vec<(Vertex, Weight, Vertex)> = Vec::new();
        let mut present: HashSet<(Vertex, Weight, Vertex)> = HashSet::new();
        for (q, row) in self.delta.iter().enumerate() {
            for (ai, &target) in row.iter().enumerate() {
                if let Some(q2) = target {
                    let e = (q, self.alphabet[ai], q2);
                    if present.insert(e) {
                        edges.push(e);
                    }
                }
            }
        }
        assert!(
            !edges_have_negative_cycle(nv, &edges),
            "transition graph of a separating automaton has no negative cycle"
        );

        loop {
            let mut added = false;
            for q in 0..nv {
                for &w in &alphabet {
                    for q2 in 0..nv {
                        let e = (q, w, q2);
                        if present.contains(&e) {
                            continue;
                        }
                        edges.push(e);
                        if edges_have_negative_cycle(nv, &edges) {
                            edges.pop();
                        } else {
                            present.insert(e);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }

        // Maximality makes the 0-edge relation a total preorder, so some
        // state has a 0-edge to every state; root the graph there so that
        // normalization keeps all of them.
        let root = (0..nv)
            .find(|&q| (0..nv).all(|q2| present.contains(&(q, 0, q2))))
            .expect("saturated 0-relation has a minimum");
        WeightedGraph::new(nv, edges, root, alphabet).expect("saturated graph is well-formed")
    }
}

/// Safety game obtained by running an automaton alongside a game, keeping
/// only the part reachable from the combined initial vertex. All rejecting
/// pairs collapse into one absorbing sink vertex, which forms the losing set.
#[derive(Debug, Clone)]
pub struct GameAutomatonProduct {
    pub safety: SafetyGame,
    /// For each product vertex, the (game vertex, automaton state) pair it
    /// stands for; `None` for the sink.
    pub labels: Vec<Option<(Vertex, usize)>>,
}

/// Builds the product of a game and an automaton whose alphabet covers the
/// game's edge weights.
pub fn product(
    game: &MeanPayoffGame,
    aut: &SafetyAutomaton,
) -> Result<GameAutomatonProduct, Error> {
    for &(_, w, _) in game.graph().edges() {
        aut.letter_index(w)?;
    }

    let mut ids: HashMap<(Vertex, usize), usize> = HashMap::new();
    let mut labels: Vec<Option<(Vertex, usize)>> = Vec::new();
    let mut sink: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut queue: Vec<(Vertex, usize)> = Vec::new();

    let start = (game.graph().init(), aut.init());
    ids.insert(start, 0);
    labels.push(Some(start));
    queue.push(start);

    let mut head = 0;
    while head < queue.len() {
        let (v, q) = queue[head];
        head += 1;
        let pu = ids[&(v, q)];
        for &e in game.graph().out_edges(v) {
            let (_, w, v2) = game.graph().edges()[e];
            match aut.step(q, w)? {
                Some(q2) => {
                    let key = (v2, q2);
                    let pv = *ids.entry(key).or_insert_with(|| {
                        labels.push(Some(key));
                        queue.push(key);
                        labels.len() - 1
                    });
                    edges.push((pu, pv));
                }
                None => {
                    let pv = *sink.get_or_insert_with(|| {
                        labels.push(None);
                        labels.len() - 1
                    });
                    edges.push((pu, pv));
                }
            }
        }
    }
    if let Some(s) = sink {
        edges.push((s, s));
    }

    let owner: Vec<Owner> = labels
        .iter()
        .map(|l| match l {
            Some((v, _)) => game.owner(*v),
            None => Owner::Adam,
        })
        .collect();
    let losing: Vec<bool> = labels.iter().map(Option::is_none).collect();
    let safety = SafetyGame::new(labels.len(), edges, owner, losing, 0)?;
    Ok(GameAutomatonProduct { safety, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve_safety;
    use crate::universal::naive_universal;

    fn naive22() -> SafetyAutomaton {
        SafetyAutomaton::from_linear_universal(&naive_universal(2, 2))
    }

    /// State index of a value in the {-3..3} automaton.
    fn st(v: i64) -> usize {
        (v + 3) as usize
    }

    #[test]
    fn transitions_follow_floor_rule() {
        let aut = naive22();
        assert_eq!(aut.size(), 7);
        assert_eq!(aut.init(), st(3));
        assert_eq!(aut.step(st(3), -1), Ok(Some(st(2))));
        assert_eq!(aut.step(st(-3), -1), Ok(None));
        // the floor rule itself, on letters beyond the alphabet: from 3
        // reading -2 lands on 1, reading 5 caps at the maximum
        let a = naive_universal(2, 2);
        assert_eq!(a.floor_value(3 + -2), Some(1));
        assert_eq!(a.floor_value(1 + 5), Some(3));
        assert_eq!(a.floor_value(-3 + -1), None);
    }

    #[test]
    fn step_rejects_foreign_letters() {
        let aut = naive22();
        assert_eq!(aut.step(st(3), 1), Ok(Some(st(3))));
        assert!(matches!(
            aut.step(st(1), 5),
            Err(Error::AlphabetMismatch { letter: 5 })
        ));
    }

    #[test]
    fn lasso_negative_loop_rejected() {
        // 3, 2, 1, 0, -1, -2, -3, sink
        let aut = naive22();
        assert_eq!(aut.run_lasso(&[], &[-1]), Ok(false));
    }

    #[test]
    fn lasso_zero_loop_accepted() {
        let aut = naive22();
        assert_eq!(aut.run_lasso(&[], &[0]), Ok(true));
    }

    #[test]
    fn lasso_alternating_accepted() {
        let aut = naive22();
        assert_eq!(aut.run_lasso(&[], &[1, -1]), Ok(true));
    }

    #[test]
    fn lasso_alphabet_mismatch() {
        let aut = naive22();
        assert!(matches!(
            aut.run_lasso(&[7], &[0]),
            Err(Error::AlphabetMismatch { letter: 7 })
        ));
    }

    fn loop_game(w: Weight) -> MeanPayoffGame {
        let g = WeightedGraph::new(1, [(0, w, 0)], 0, [w]).unwrap();
        MeanPayoffGame::new(g, vec![Owner::Eve]).unwrap()
    }

    #[test]
    fn product_zero_loop_single_vertex() {
        let prod = product(&loop_game(0), &naive22()).unwrap();
        assert_eq!(prod.safety.vertex_count(), 1);
        assert_eq!(prod.safety.edges(), &[(0, 0)]);
        assert!(solve_safety(&prod.safety).eve_wins);
    }

    #[test]
    fn product_negative_loop_descends_to_sink() {
        let prod = product(&loop_game(-1), &naive22()).unwrap();
        // chain 3,2,1,0,-1,-2,-3 plus the sink
        assert_eq!(prod.safety.vertex_count(), 8);
        assert!(!solve_safety(&prod.safety).eve_wins);
    }

    #[test]
    fn product_alphabet_mismatch() {
        let g = WeightedGraph::new(1, [(0, 9, 0)], 0, [9]).unwrap();
        let game = MeanPayoffGame::new(g, vec![Owner::Eve]).unwrap();
        assert!(matches!(
            product(&game, &naive22()),
            Err(Error::AlphabetMismatch { letter: 9 })
        ));
    }

    #[test]
    fn saturation_of_singleton() {
        let a = LinearGraph::new([0], [0]);
        let aut = SafetyAutomaton::from_linear_universal(&a);
        let u = aut.to_universal_graph(1);
        assert_eq!(u.vertex_count(), 1);
        assert_eq!(u.edges(), &[(0, 0, 0)]);
    }

    #[test]
    fn saturation_zero_relation_is_total_preorder() {
        let aut = naive22();
        let u = aut.to_universal_graph(2);
        assert_eq!(u.vertex_count(), 7);
        assert!(!u.has_negative_cycle());
        let has = |a: usize, w: i64, b: usize| u.edges().contains(&(a, w, b));
        for q in 0..7 {
            for q2 in 0..7 {
                assert!(has(q, 0, q2) || has(q2, 0, q), "0-relation must be total");
            }
        }
    }

    #[test]
    fn saturation_is_idempotent() {
        let aut = naive22();
        let u = aut.to_universal_graph(2);
        // running the greedy pass over the saturated edge set adds nothing
        let mut edges = u.edges().to_vec();
        let present: HashSet<_> = edges.iter().copied().collect();
        let nv = u.vertex_count();
        let mut added = false;
        for q in 0..nv {
            for &w in u.weight_alphabet() {
                for q2 in 0..nv {
                    if present.contains(&(q, w, q2)) {
                        continue;
                    }
                    edges.push((q, w, q2));
                    if edges_have_negative_cycle(nv, &edges) {
                        edges.pop();
                    } else {
                        added = true;
                    }
                }
            }
        }
        assert!(!added);
    }
}
