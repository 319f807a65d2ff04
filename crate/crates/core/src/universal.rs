//! Universal graph constructions, the universality checker, the
//! minimal-size search oracle, and the two lower-bound witness families.
//!
//! All constructions are parameterised by the vertex bound `n` and either
//! the largest-weight bound `N` (weights range over the open interval
//! `(-N, N)`) or an explicit weight set `W`.

use std::collections::{BTreeSet, HashSet};

use crate::error::Error;
use crate::graph::{
    enumerate_mp_graphs_capped, find_homomorphism_into_linear, EnumMode, LinearGraph, Vertex,
    Weight, WeightedGraph, DEFAULT_ENUM_CAP,
};

/// Default cap on the size of the value range searched by
/// [`minimal_universal_search`].
pub const DEFAULT_RANGE_CAP: usize = 13;

/// Smallest `b` with `b^n >= x` (integer n-th root, rounded up).
pub fn ceil_nth_root(x: u64, n: u32) -> u64 {
    assert!(x >= 1 && n >= 1);
    let mut lo = 1u64;
    let mut hi = x;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let pow = (mid as u128).checked_pow(n).unwrap_or(u128::MAX);
        if pow >= x as u128 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn open_interval(bound: i64) -> impl Iterator<Item = i64> {
    (-bound + 1)..bound
}

/// The `(n, (-N, N))`-universal linear graph `(-nN, nN)`, size `2nN - 1`.
pub fn naive_universal(n: usize, max_weight: i64) -> LinearGraph {
    assert!(n >= 1 && max_weight >= 1);
    let bound = (n as i64) * max_weight;
    LinearGraph::new(open_interval(bound), open_interval(max_weight))
}

/// The digit-based `(n, (-N, N))`-universal graph: integers in `[0, 2nN)`
/// with at least one zero digit among their first `n` digits in base
/// `ceil((nN)^(1/n))`. When `nN` is an exact `n`-th power the size is
/// `2(nN - (b-1)^n)`.
pub fn digit_universal(n: usize, max_weight: i64) -> LinearGraph {
    assert!(n >= 1 && max_weight >= 1);
    let nn = (n as u64) * (max_weight as u64);
    let b = ceil_nth_root(nn, n as u32);
    let values = (0..2 * nn).filter(|&a| {
        let mut x = a;
        for _ in 0..n {
            if x % b == 0 {
                return true;
            }
            x /= b;
        }
        false
    });
    LinearGraph::new(values.map(|a| a as i64), open_interval(max_weight))
}

/// The `(n, W)`-universal graph of all sums of at most `n - 1` terms of `W`
/// (distances in an `n`-vertex graph use at most `n - 1` edges).
pub fn sum_universal(n: usize, w_set: &BTreeSet<Weight>) -> LinearGraph {
    assert!(n >= 1 && !w_set.is_empty());
    let mut sums: BTreeSet<i64> = [0].into();
    for _ in 1..n {
        let next: BTreeSet<i64> = sums
            .iter()
            .flat_map(|&s| {
                w_set
                    .iter()
                    .map(move |&w| s.checked_add(w).expect("weight sum overflowed i64"))
            })
            .collect();
        sums.extend(next);
    }
    LinearGraph::new(sums, w_set.iter().copied())
}

/// Outcome of a universality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalityVerdict {
    /// Every enumerated graph mapped in (exhaustive mode only).
    Universal,
    /// No counterexample in the sample (sampled mode only).
    NoCounterexampleFound,
    /// A mean-payoff `(n, W)`-graph with no homomorphism into the candidate.
    Counterexample(WeightedGraph),
}

impl UniversalityVerdict {
    pub fn is_negative(&self) -> bool {
        matches!(self, UniversalityVerdict::Counterexample(_))
    }
}

/// Tests whether every `(n, w_set)`-graph satisfying mean payoff maps
/// homomorphically into `a`, quantifying over [`enumerate_mp_graphs_capped`].
pub fn check_universal(
    a: &LinearGraph,
    n: usize,
    w_set: &BTreeSet<Weight>,
    mode: EnumMode,
    enum_cap: usize,
) -> Result<UniversalityVerdict, Error> {
    for g in enumerate_mp_graphs_capped(n, w_set, mode, enum_cap)? {
        if find_homomorphism_into_linear(&g, a).is_none() {
            return Ok(UniversalityVerdict::Counterexample(g));
        }
    }
    Ok(match mode {
        EnumMode::Exhaustive => UniversalityVerdict::Universal,
        EnumMode::Sampled { .. } => UniversalityVerdict::NoCounterexampleFound,
    })
}

/// Smallest size of a linear `(n, w_set)`-universal graph, found by
/// exhaustive search over value sets anchored at 0 (homomorphism constraints
/// only see differences, so translation loses nothing) within the canonical
/// range `[0, 2(n-1)·max|W|]`. Returns the first witness in lexicographic
/// order. `None` if no set of size up to `max_size` is universal.
pub fn minimal_universal_search(
    n: usize,
    w_set: &BTreeSet<Weight>,
    max_size: usize,
) -> Result<Option<(usize, LinearGraph)>, Error> {
    minimal_universal_search_capped(n, w_set, max_size, DEFAULT_RANGE_CAP, DEFAULT_ENUM_CAP)
}

pub fn minimal_universal_search_capped(
    n: usize,
    w_set: &BTreeSet<Weight>,
    max_size: usize,
    range_cap: usize,
    enum_cap: usize,
) -> Result<Option<(usize, LinearGraph)>, Error> {
    assert!(n >= 1 && !w_set.is_empty());
    let max_abs = w_set.iter().map(|w| w.abs()).max().unwrap();
    let span = 2 * (n as i64 - 1) * max_abs;
    let range_len = (span + 1) as usize;
    if range_len > range_cap {
        return Err(Error::CapExceeded {
            what: "minimal-universal value range",
            needed: range_len as u128,
            cap: range_cap as u128,
        });
    }
    for size in 1..=max_size {
        let mut found: Option<LinearGraph> = None;
        for_each_combination(range_len - 1, size - 1, &mut |rest| {
            if found.is_some() {
                return Ok(());
            }
            let values = std::iter::once(0i64).chain(rest.iter().map(|&i| i as i64 + 1));
            let a = LinearGraph::new(values, w_set.iter().copied());
            if check_universal(&a, n, w_set, EnumMode::Exhaustive, enum_cap)?
                == UniversalityVerdict::Universal
            {
                found = Some(a);
            }
            Ok(())
        })?;
        if let Some(a) = found {
            return Ok(Some((size, a)));
        }
    }
    Ok(None)
}

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order.
fn for_each_combination(
    n: usize,
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<(), Error>,
) -> Result<(), Error> {
    fn rec(
        start: usize,
        n: usize,
        left: usize,
        current: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<(), Error>,
    ) -> Result<(), Error> {
        if left == 0 {
            return f(current);
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            current.push(i);
            rec(i + 1, n, left - 1, current, f)?;
            current.pop();
        }
        Ok(())
    }
    if k > n {
        return Ok(());
    }
    rec(0, n, k, &mut Vec::new(), f)
}

/// Prefix-sum linear graph of a weight tuple: `{0, w_1, w_1 + w_2, ...}`
/// over the alphabet `(-N, N)`; duplicates collapse.
pub fn lb_family_largest_weight(n: usize, max_weight: i64, weights: &[i64]) -> LinearGraph {
    assert!(n >= 1 && max_weight >= 1);
    assert_eq!(weights.len(), n - 1, "expected an (n-1)-tuple");
    assert!(
        weights.iter().all(|&w| (0..max_weight).contains(&w)),
        "tuple entries must lie in [0, N)"
    );
    let mut values = vec![0i64];
    let mut acc = 0i64;
    for &w in weights {
        acc += w;
        values.push(acc);
    }
    LinearGraph::new(values, open_interval(max_weight))
}

/// The weight family behind the `Omega(n^{k-2})` lower bound:
/// `W = {1, n, ..., n^{k-2}, -q*T}` with `T = 1 + n + ... + n^{k-2}` and
/// `q = (n-1)/(k-1)`, together with the set `S` of `k`-tuples over `[0, n)`
/// summing to `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundFamilyK {
    n: usize,
    k: usize,
    t: i64,
    quota: usize,
    w_set: BTreeSet<Weight>,
    sequences: Vec<Vec<usize>>,
}

impl LowerBoundFamilyK {
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        if n < 2 || k < 2 {
            return Err(Error::InvalidSequence(format!(
                "family needs n >= 2 and k >= 2, got n={n}, k={k}"
            )));
        }
        if !(n - 1).is_multiple_of(k - 1) {
            return Err(Error::InvalidSequence(format!(
                "(n-1) = {} must be divisible by (k-1) = {}",
                n - 1,
                k - 1
            )));
        }
        let quota = (n - 1) / (k - 1);
        let mut t = 0i64;
        let mut powers = Vec::new();
        for j in 0..=(k - 2) {
            let p = (n as i64)
                .checked_pow(j as u32)
                .expect("n^j overflowed i64");
            powers.push(p);
            t = t.checked_add(p).expect("T overflowed i64");
        }
        let back = (quota as i64).checked_mul(t).expect("back weight overflow");
        let mut w_set: BTreeSet<Weight> = powers.into_iter().collect();
        w_set.insert(-back);
        debug_assert_eq!(w_set.len(), k);

        let mut sequences = Vec::new();
        let mut current = vec![0usize; k];
        fill_sequences(&mut current, 0, quota, &mut sequences);
        Ok(LowerBoundFamilyK {
            n,
            k,
            t,
            quota,
            w_set,
            sequences,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `T = 1 + n + ... + n^{k-2}`.
    pub fn t(&self) -> i64 {
        self.t
    }

    /// `(n-1)/(k-1)`: how many times each power of `n` appears in a cycle.
    pub fn quota(&self) -> usize {
        self.quota
    }

    pub fn w_set(&self) -> &BTreeSet<Weight> {
        &self.w_set
    }

    /// The set `S`, lexicographically ordered.
    pub fn sequences(&self) -> &[Vec<usize>] {
        &self.sequences
    }

    fn validate_seq(&self, seq: &[usize]) -> Result<(), Error> {
        let ok = seq.len() == self.k
            && seq.iter().all(|&s| s < self.n)
            && seq.iter().sum::<usize>() == self.quota;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSequence(format!(
                "sequence {seq:?} is not a {}-tuple over [0, {}) summing to {}",
                self.k, self.n, self.quota
            )))
        }
    }

    /// Weights along the forward part of the cycle induced by a
    /// `(k-1)`-tuple of sequences: block `i` uses `n^j` exactly
    /// `seqs[j][i]` times, powers ascending within a block.
    fn forward_weights(&self, seqs: &[&[usize]]) -> Vec<i64> {
        let mut ws = Vec::with_capacity(self.n - 1);
        for block in 0..self.k {
            for (j, seq) in seqs.iter().enumerate() {
                let p = (self.n as i64).pow(j as u32);
                ws.extend(std::iter::repeat_n(p, seq[block]));
            }
        }
        ws
    }

    /// Vertex ids at the block boundaries `u_0, ..., u_{k-1}` of the cycle
    /// induced by `seqs` (`u_0` is the initial vertex).
    pub fn block_boundaries(&self, seqs: &[&[usize]]) -> Result<Vec<Vertex>, Error> {
        self.check_tuple(seqs)?;
        let mut out = vec![0usize];
        let mut pos = 0;
        for block in 0..self.k - 1 {
            pos += seqs.iter().map(|seq| seq[block]).sum::<usize>();
            out.push(pos);
        }
        Ok(out)
    }

    fn check_tuple(&self, seqs: &[&[usize]]) -> Result<(), Error> {
        if seqs.len() != self.k - 1 {
            return Err(Error::InvalidSequence(format!(
                "expected {} sequences, got {}",
                self.k - 1,
                seqs.len()
            )));
        }
        for seq in seqs {
            self.validate_seq(seq)?;
        }
        Ok(())
    }

    /// The zero-weight cycle on `n` vertices induced by a `(k-1)`-tuple of
    /// sequences from `S`: forward edges carry powers of `n` per block, and
    /// the closing edge carries `-quota * T`.
    pub fn cycle_graph(&self, seqs: &[&[usize]]) -> Result<WeightedGraph, Error> {
        self.check_tuple(seqs)?;
        let ws = self.forward_weights(seqs);
        debug_assert_eq!(ws.len(), self.n - 1);
        let mut edges: Vec<(Vertex, Weight, Vertex)> = ws
            .iter()
            .enumerate()
            .map(|(i, &w)| (i, w, i + 1))
            .collect();
        edges.push((self.n - 1, -(self.quota as i64) * self.t, 0));
        debug_assert_eq!(edges.iter().map(|&(_, w, _)| w).sum::<i64>(), 0);
        WeightedGraph::new(self.n, edges, 0, self.w_set.iter().copied())
    }
}

fn fill_sequences(
    current: &mut Vec<usize>,
    index: usize,
    remaining: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if index + 1 == current.len() {
        current[index] = remaining;
        out.push(current.clone());
        return;
    }
    for v in 0..=remaining {
        current[index] = v;
        fill_sequences(current, index + 1, remaining - v, out);
    }
}

/// Checks that the map sending each `(k-1)`-tuple of sequences to the tuple
/// of homomorphic images of its cycle's block boundaries is injective over
/// all of `S^{k-1}`. Injectivity forces `|a|^k >= |S|^{k-1}`.
pub fn verify_lb_injectivity(fam: &LowerBoundFamilyK, a: &LinearGraph) -> Result<bool, Error> {
    let s = fam.sequences();
    let arity = fam.k() - 1;
    let mut images: HashSet<Vec<i64>> = HashSet::new();
    let mut tuples = 0usize;

    let mut indices = vec![0usize; arity];
    loop {
        let seqs: Vec<&[usize]> = indices.iter().map(|&i| s[i].as_slice()).collect();
        let g = fam.cycle_graph(&seqs)?;
        let phi = find_homomorphism_into_linear(&g, a).ok_or(Error::HomomorphismNotFound)?;
        let image: Vec<i64> = fam
            .block_boundaries(&seqs)?
            .iter()
            .map(|&v| phi.of(v))
            .collect();
        images.insert(image);
        tuples += 1;

        // odometer over S^{k-1}
        let mut i = arity;
        loop {
            if i == 0 {
                let injective = images.len() == tuples;
                return Ok(injective);
            }
            i -= 1;
            indices[i] += 1;
            if indices[i] < s.len() {
                break;
            }
            indices[i] = 0;
        }
    }
}
