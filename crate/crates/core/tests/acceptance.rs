//! Acceptance suite: one test per criterion, each printing a single
//! PASS line with its headline numbers (run with `--nocapture` to see
//! them). Every tolerance is asserted in code.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mpgkit_core::{
    check_universal, digit_universal, enumerate_mp_graphs, find_homomorphism_into_linear,
    gen_random_game, minimal_universal_search, naive_universal, oracle_solve_mp, solve,
    solve_safety, sum_universal, universal::ceil_nth_root, verify_lb_injectivity, EnumMode,
    LowerBoundFamilyK, Method, SafetyAutomaton, UniversalityVerdict, DEFAULT_ENUM_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn open_alphabet(bound: i64) -> BTreeSet<i64> {
    (-bound + 1..bound).collect()
}

#[test]
fn c01_solver_agrees_with_oracle_on_500_games() {
    let start = Instant::now();
    let w = open_alphabet(3);
    let densities = [0.2, 0.45, 0.7];
    let eves = [0.25, 0.5, 0.75];
    let mut mismatches = 0usize;
    for i in 0..500u64 {
        let n = 2 + (i as usize % 5);
        let game = gen_random_game(
            n,
            &w,
            densities[i as usize % 3],
            eves[(i as usize / 3) % 3],
            40_000 + i,
        );
        let expected = oracle_solve_mp(&game).expect("oracle within cap");
        for method in [Method::Naive, Method::Digit, Method::Sum] {
            if solve(&game, method).report.eve_wins != expected {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(mismatches, 0, "criterion 1: solver/oracle mismatches");
    assert!(elapsed < Duration::from_secs(120), "criterion 1: {elapsed:?}");
    println!(
        "acceptance criterion 1 (solver vs oracle, 500 games x 3 methods): PASS, 0 mismatches in {elapsed:?}"
    );
}

#[test]
fn c02_exhaustive_universality_n2() {
    let start = Instant::now();
    let w = open_alphabet(2);
    let constructions = [
        ("naive", naive_universal(2, 2)),
        ("digit", digit_universal(2, 2)),
        ("sum", sum_universal(2, &w)),
    ];
    let mut graphs = 0usize;
    for g in enumerate_mp_graphs(2, &w, EnumMode::Exhaustive).unwrap() {
        graphs += 1;
        for (name, a) in &constructions {
            assert!(
                find_homomorphism_into_linear(&g, a).is_some(),
                "criterion 2: no homomorphism into {name} for {g:?}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert_eq!(graphs, 640, "criterion 2: corpus size regression");
    assert!(elapsed < Duration::from_secs(30), "criterion 2: {elapsed:?}");
    println!(
        "acceptance criterion 2 (exhaustive n=2 universality): PASS, {graphs} graphs x 3 constructions in {elapsed:?}"
    );
}

#[test]
fn c03_sampled_universality_n3() {
    let w = open_alphabet(2);
    let constructions = [
        naive_universal(3, 2),
        digit_universal(3, 2),
        sum_universal(3, &w),
    ];
    let mode = EnumMode::Sampled { seed: 77, count: 10_000 };
    let mut graphs = 0usize;
    for g in enumerate_mp_graphs(3, &w, mode).unwrap() {
        graphs += 1;
        for a in &constructions {
            assert!(
                find_homomorphism_into_linear(&g, a).is_some(),
                "criterion 3: no homomorphism for {g:?}"
            );
        }
    }
    assert_eq!(graphs, 10_000);
    println!("acceptance criterion 3 (sampled n=3 universality): PASS, {graphs} graphs x 3 constructions");
}

#[test]
fn c04_digit_size_identities() {
    let mut exact = 0usize;
    let mut grid = 0usize;
    for n in 2..=5usize {
        let mut bound = 1i64;
        while (n as i64) * bound <= 4096 {
            let nn = (n as i64) * bound;
            let size = digit_universal(n, bound).size() as i64;
            let b = ceil_nth_root(nn as u64, n as u32) as i64;
            if b.pow(n as u32) == nn {
                assert_eq!(
                    size,
                    2 * (nn - (b - 1).pow(n as u32)),
                    "criterion 4: exact identity at n={n}, N={bound}"
                );
                exact += 1;
            }
            let cap = 4.0 * n as f64 * (nn as f64).powf(1.0 - 1.0 / n as f64);
            assert!(
                size as f64 <= cap,
                "criterion 4: slack bound at n={n}, N={bound}: {size} > {cap}"
            );
            grid += 1;
            bound += 1;
        }
    }
    assert!(exact > 0);
    println!(
        "acceptance criterion 4 (digit size identities): PASS, {exact} exact n-th-power points, {grid} grid points bounded"
    );
}

#[test]
fn c05_sum_construction_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut checked = 0usize;
    for k in 1..=4usize {
        for _ in 0..20 {
            let mut w: BTreeSet<i64> = BTreeSet::new();
            while w.len() < k {
                w.insert(rng.random_range(-20..=20));
            }
            for n in 2..=8usize {
                let size = sum_universal(n, &w).size();
                let cap = (n as u64).pow(k as u32) as usize;
                assert!(
                    size <= cap,
                    "criterion 5: |sum({n}, {w:?})| = {size} > n^k = {cap}"
                );
                checked += 1;
            }
        }
    }
    println!("acceptance criterion 5 (sum-construction bound): PASS, {checked} (W, n) points");
}

#[test]
fn c06_minimal_search_lower_bound_largest_weight() {
    let w = open_alphabet(2);
    let digit_size = digit_universal(2, 2).size();
    assert_eq!(digit_size, 6);
    let (size, witness) = minimal_universal_search(2, &w, digit_size)
        .unwrap()
        .expect("a universal set exists within the digit bound");
    let lower = (2f64).powf(0.5).ceil() as usize;
    assert!(size >= lower, "criterion 6: {size} < ceil(2^(1/2))");
    assert!(size <= digit_size, "criterion 6: {size} > digit bound");
    // regression value derived by the subset-enumeration oracle
    assert_eq!(size, 2, "criterion 6: exact minimum regression");
    assert_eq!(witness.values(), &[0, 1]);
    println!(
        "acceptance criterion 6 (minimal universal, n=2 W=(-2,2)): PASS, minimum {size} in [{lower}, {digit_size}], witness {:?}",
        witness.values()
    );
}

#[test]
fn c07_lower_bound_k_weights() {
    let start = Instant::now();
    let fam = LowerBoundFamilyK::new(5, 3).unwrap();
    assert_eq!(fam.t(), 6);
    let expect_w: BTreeSet<i64> = [1, 5, -12].into_iter().collect();
    assert_eq!(fam.w_set(), &expect_w);
    assert_eq!(fam.sequences().len(), 6);
    let a = sum_universal(5, fam.w_set());
    assert_eq!(verify_lb_injectivity(&fam, &a), Ok(true), "criterion 7: injectivity");
    let tuples = fam.sequences().len().pow(2);
    assert_eq!(tuples, 36);
    // |S|^(k-1) <= |U|^k forces |U| >= ceil(36^(1/3)) = 4
    let implied = (36f64).powf(1.0 / 3.0).ceil() as usize;
    assert_eq!(implied, 4);
    assert!(a.size() >= implied, "criterion 7: |sum| = {} < {implied}", a.size());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "criterion 7: {elapsed:?}");
    println!(
        "acceptance criterion 7 (k-weights lower bound, n=5 k=3): PASS, injective over {tuples} tuples, |sum| = {} >= {implied}, in {elapsed:?}",
        a.size()
    );
}

#[test]
fn c08_separation_on_lassos() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let grid: Vec<(usize, i64)> = (2..=4usize)
        .flat_map(|n| (2..=3i64).map(move |b| (n, b)))
        .collect();
    let automata: Vec<[SafetyAutomaton; 3]> = grid
        .iter()
        .map(|&(n, b)| {
            let w = open_alphabet(b);
            [
                SafetyAutomaton::from_linear_universal(&naive_universal(n, b)),
                SafetyAutomaton::from_linear_universal(&digit_universal(n, b)),
                SafetyAutomaton::from_linear_universal(&sum_universal(n, &w)),
            ]
        })
        .collect();

    // rejection side: lassos with negative cycle mean
    let mut rejected = 0usize;
    let mut produced = 0usize;
    while produced < 10_000 {
        let gi = produced % grid.len();
        let (_, b) = grid[gi];
        let alphabet: Vec<i64> = (-b + 1..b).collect();
        let prefix: Vec<i64> = (0..rng.random_range(0..6))
            .map(|_| alphabet[rng.random_range(0..alphabet.len())])
            .collect();
        let cycle: Vec<i64> = (0..rng.random_range(1..6))
            .map(|_| alphabet[rng.random_range(0..alphabet.len())])
            .collect();
        if cycle.iter().sum::<i64>() >= 0 {
            continue;
        }
        produced += 1;
        for aut in &automata[gi] {
            assert_eq!(
                aut.run_lasso(&prefix, &cycle),
                Ok(false),
                "criterion 8: accepted a negative-mean lasso"
            );
        }
        rejected += 1;
    }

    // acceptance side: lassos read off sampled mean-payoff graphs
    let mut accepted = 0usize;
    let mut sampled_streams: Vec<_> = grid
        .iter()
        .enumerate()
        .map(|(gi, &(n, b))| {
            let w = open_alphabet(b);
            enumerate_mp_graphs(n, &w, EnumMode::Sampled { seed: 880 + gi as u64, count: 10_000 })
                .unwrap()
        })
        .collect();
    let mut taken = 0usize;
    while taken < 10_000 {
        let gi = taken % grid.len();
        let g = sampled_streams[gi].next().expect("stream is long enough");
        let Some((prefix, cycle)) = common::lasso_from_walk(&g, &mut rng) else {
            continue;
        };
        taken += 1;
        for aut in &automata[gi] {
            assert_eq!(
                aut.run_lasso(&prefix, &cycle),
                Ok(true),
                "criterion 8: rejected a lasso of a mean-payoff graph"
            );
        }
        accepted += 1;
    }

    assert_eq!((rejected, accepted), (10_000, 10_000));
    println!(
        "acceptance criterion 8 (lasso separation): PASS, {rejected}/10000 negative lassos rejected, {accepted}/10000 graph lassos accepted"
    );
}

#[test]
fn c09_safety_solver_vs_alternating_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut max_ratio = 0.0f64;
    for _ in 0..200 {
        let sg = common::random_safety_game(&mut rng, 8);
        let sol = solve_safety(&sg);
        let n = sg.vertex_count();
        for v in 0..n {
            assert_eq!(
                sol.adam_region[v],
                common::adam_can_force_losing(&sg, v, n),
                "criterion 9: attractor disagreement"
            );
        }
        let m = sg.edges().len();
        assert!(
            sol.edge_visits <= 4 * m,
            "criterion 9: {} visits on {m} edges",
            sol.edge_visits
        );
        if m > 0 {
            max_ratio = max_ratio.max(sol.edge_visits as f64 / m as f64);
        }
    }
    println!(
        "acceptance criterion 9 (safety solver, 200 games): PASS, max visits/m = {max_ratio:.2} <= 4"
    );
}

#[test]
fn c10_saturation_round_trip() {
    let w = open_alphabet(2);
    let aut = SafetyAutomaton::from_linear_universal(&naive_universal(2, 2));
    let u = aut.to_universal_graph(2);
    assert!(!u.has_negative_cycle(), "criterion 10: negative cycle");
    for q in 0..u.vertex_count() {
        for q2 in 0..u.vertex_count() {
            assert!(
                u.edges().contains(&(q, 0, q2)) || u.edges().contains(&(q2, 0, q)),
                "criterion 10: 0-relation not total at ({q}, {q2})"
            );
        }
    }
    let mut graphs = 0usize;
    for g in enumerate_mp_graphs(2, &w, EnumMode::Exhaustive).unwrap() {
        assert!(
            common::backtracking_hom_into_graph(&g, &u),
            "criterion 10: saturated graph misses {g:?}"
        );
        graphs += 1;
    }
    // cross-check the saturated graph against the linear route as well
    let lin = check_universal(
        &naive_universal(2, 2),
        2,
        &w,
        EnumMode::Exhaustive,
        DEFAULT_ENUM_CAP,
    )
    .unwrap();
    assert_eq!(lin, UniversalityVerdict::Universal);
    println!(
        "acceptance criterion 10 (saturation): PASS, no negative cycle, total 0-preorder, universal over {graphs} graphs"
    );
}
