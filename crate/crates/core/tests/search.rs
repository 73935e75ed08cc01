mod common;

use common::*;
use reachnet_core::search::{exists_network, min_length, Pruning, SearchSpec, StartLevel};
use reachnet_core::verify::verify_reachability;
use reachnet_core::{Error, Network, Transposition};

fn spec(n: u32, t: u32, star: bool, pruning: Pruning) -> SearchSpec {
    let mut s = SearchSpec::new(n, t, star);
    s.pruning = pruning;
    s
}

/// Brute force over every sequence of the given length.
fn brute_exists(n: u32, t: u32, star: bool, length: usize) -> bool {
    let alphabet: Vec<(u32, u32)> = if star {
        (2..=n).map(|j| (1, j)).collect()
    } else {
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
    };
    let target = all_tuples(n, t);
    let mut idx = vec![0usize; length];
    loop {
        let pairs: Vec<(u32, u32)> = idx.iter().map(|&i| alphabet[i]).collect();
        if naive_reach(&Network::from_pairs(n, &pairs).unwrap(), t) == target {
            return true;
        }
        let mut k = 0;
        while k < length && idx[k] + 1 == alphabet.len() {
            idx[k] = 0;
            k += 1;
        }
        if k == length {
            return false;
        }
        idx[k] += 1;
    }
}

#[test]
fn search_agrees_with_brute_force() {
    for (n, t, star) in [(3, 2, false), (3, 2, true), (4, 2, true), (4, 1, false), (3, 3, false)] {
        for length in n as usize - 1..=5 {
            let fast = exists_network(&spec(n, t, star, Pruning::ALL), length).unwrap().is_some();
            assert_eq!(fast, brute_exists(n, t, star, length), "n={n} t={t} star={star} len={length}");
        }
    }
}

#[test]
fn pruning_never_changes_feasibility() {
    let variants = [
        Pruning::NONE,
        Pruning { skip_inactive_pairs: true, ..Pruning::NONE },
        Pruning { skip_inactive_pairs: true, canonical_activation: true, ..Pruning::NONE },
        Pruning { skip_stalled: true, ..Pruning::NONE },
        Pruning { counting_bounds: true, ..Pruning::NONE },
        Pruning::ALL,
    ];
    for n in 2..=4 {
        for star in [false, true] {
            if star && n < 3 {
                continue;
            }
            for length in n as usize - 1..=6 {
                let answers: Vec<bool> =
                    variants.iter().map(|&p| exists_network(&spec(n, 2, star, p), length).unwrap().is_some()).collect();
                assert!(answers.iter().all(|&a| a == answers[0]), "n={n} star={star} len={length}: {answers:?}");
            }
        }
    }
}

#[test]
fn pruned_search_explores_fewer_nodes() {
    let full = min_length(&spec(5, 2, true, Pruning::NONE)).unwrap();
    let pruned = min_length(&spec(5, 2, true, Pruning::ALL)).unwrap();
    assert_eq!(full.min_length, pruned.min_length);
    assert!(pruned.nodes_explored < full.nodes_explored);
}

#[test]
fn witnesses_are_sound_and_exact_length() {
    for n in 2..=5 {
        for t in 1..=2.min(n) {
            let r = min_length(&SearchSpec::new(n, t, false)).unwrap();
            assert_eq!(r.witness.len(), r.min_length);
            assert!(verify_reachability(&r.witness, t).unwrap().ok);
            let longer = exists_network(&SearchSpec::new(n, t, false), r.min_length + 2).unwrap().unwrap();
            assert_eq!(longer.len(), r.min_length + 2);
            assert!(verify_reachability(&longer, t).unwrap().ok);
        }
    }
}

#[test]
fn thread_count_does_not_change_the_result() {
    for (n, star) in [(4, false), (5, false), (5, true), (6, true)] {
        let base = min_length(&SearchSpec::new(n, 2, star)).unwrap();
        for threads in [2, 4, 8] {
            let mut s = SearchSpec::new(n, 2, star);
            s.threads = threads;
            let r = min_length(&s).unwrap();
            assert_eq!(r.min_length, base.min_length);
            assert_eq!(r.witness, base.witness, "n={n} star={star} threads={threads}");
        }
    }
}

#[test]
fn search_is_deterministic() {
    let a = min_length(&SearchSpec::new(5, 2, true)).unwrap();
    let b = min_length(&SearchSpec::new(5, 2, true)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn three_reach_minimum_for_four_points() {
    let r = min_length(&SearchSpec::new(4, 3, false)).unwrap();
    assert!(verify_reachability(&r.witness, 3).unwrap().ok);
    assert!(!brute_exists(4, 3, false, r.min_length - 1));
}

#[test]
fn known_bound_start_lands_on_the_minimum() {
    let mut s = SearchSpec::new(6, 2, true);
    s.start = StartLevel::KnownBound;
    let r = min_length(&s).unwrap();
    assert_eq!(r.min_length, 8);
    assert!(r.exhausted_levels.is_empty());
}

#[test]
fn exhausted_budget_is_reported_separately() {
    let mut s = SearchSpec::new(6, 2, false);
    s.budget = 50;
    assert!(matches!(min_length(&s), Err(Error::SearchBudgetExceeded { .. })));
}

#[test]
fn length_cap_below_minimum_finds_nothing() {
    let mut s = SearchSpec::new(5, 2, false);
    s.max_len = Some(5);
    assert!(matches!(min_length(&s), Err(Error::NoNetworkWithin(5))));
}

#[test]
fn star_witnesses_only_use_star_pairs() {
    let r = min_length(&SearchSpec::new(5, 2, true)).unwrap();
    assert!(r.witness.transpositions().iter().all(|x: &Transposition| x.is_star()));
}

#[test]
fn permutation_network_minimums_stay_within_waksman() {
    for n in 2..=4u32 {
        let r = min_length(&SearchSpec::new(n, n, false)).unwrap();
        let w = reachnet_core::constructors::waksman_length(n) as usize;
        assert!(r.min_length <= w, "n={n}: search {} vs waksman {w}", r.min_length);
        assert!(reachnet_core::verify::verify_permutation_network(&r.witness).unwrap().ok);
        eprintln!("permutation networks n={n}: min={} waksman={w} nodes={}", r.min_length, r.nodes_explored);
    }
}
