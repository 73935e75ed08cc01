//! Independent oracles and generators shared by the integration suites.
//! Nothing here goes through the frontier, codec or push-forward code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reachnet_core::{LazyNetwork, LazyTransposition, Network, Transposition};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Final counter positions after applying the chosen transpositions in
/// order to the start tuple `(1, ..., t)`.
fn run(steps: &[(u32, u32)], chosen: impl Iterator<Item = usize>, t: u32) -> Vec<u32> {
    let mut pos: Vec<u32> = (1..=t).collect();
    for i in chosen {
        let (a, b) = steps[i];
        for p in &mut pos {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }
    pos
}

/// Every tuple realised by one of the `2^ℓ` subsequences.
pub fn naive_reach(net: &Network, t: u32) -> BTreeSet<Vec<u32>> {
    let steps = net.pairs();
    let l = steps.len();
    assert!(l <= 24, "naive oracle limited to short networks");
    (0u32..1 << l).map(|mask| run(&steps, (0..l).filter(|i| mask & (1 << i) != 0), t)).collect()
}

/// All ordered `t`-tuples of distinct positions, by brute force over `[n]^t`.
pub fn all_tuples(n: u32, t: u32) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let total = (n as u64).pow(t);
    for mut code in 0..total {
        let mut tuple = Vec::with_capacity(t as usize);
        for _ in 0..t {
            tuple.push((code % n as u64) as u32 + 1);
            code /= n as u64;
        }
        tuple.reverse();
        let distinct: BTreeSet<u32> = tuple.iter().copied().collect();
        if distinct.len() == t as usize {
            out.insert(tuple);
        }
    }
    out
}

/// Exact distribution by summing over all `2^ℓ` firing patterns.
pub fn naive_distribution(net: &LazyNetwork, t: u32) -> BTreeMap<Vec<u32>, BigRational> {
    let steps: Vec<(u32, u32)> = net.steps().iter().map(|s| (s.pair().a(), s.pair().b())).collect();
    let probs: Vec<BigRational> = net.steps().iter().map(|s| s.probability().clone()).collect();
    let l = steps.len();
    let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for mask in 0u32..1 << l {
        let mut weight = BigRational::one();
        for (i, p) in probs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                weight *= p;
            } else {
                weight *= BigRational::one() - p;
            }
        }
        if weight.is_zero() {
            continue;
        }
        let end = run(&steps, (0..l).filter(|i| mask & (1 << i) != 0), t);
        *out.entry(end).or_insert_with(BigRational::zero) += weight;
    }
    out
}

pub fn random_network<R: Rng>(rng: &mut R, n: u32, len: usize, star: bool) -> Network {
    let seq = (0..len)
        .map(|_| {
            if star {
                Transposition::star(rng.random_range(2..=n)).unwrap()
            } else {
                let a = rng.random_range(1..=n);
                let mut b = rng.random_range(1..n);
                if b >= a {
                    b += 1;
                }
                Transposition::new(a, b).unwrap()
            }
        })
        .collect();
    Network::new(n, seq).unwrap()
}

/// Probabilities drawn from a small grid including 0 and 1.
pub fn random_lazy<R: Rng>(rng: &mut R, n: u32, len: usize) -> LazyNetwork {
    let grid: [(i64, i64); 7] = [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3), (1, 5), (3, 7)];
    let seq = (0..len)
        .map(|_| {
            let a = rng.random_range(1..=n);
            let mut b = rng.random_range(1..n);
            if b >= a {
                b += 1;
            }
            let (num, den) = grid[rng.random_range(0..grid.len())];
            LazyTransposition::with_ratio(a, b, num, den).unwrap()
        })
        .collect();
    LazyNetwork::new(n, seq).unwrap()
}

pub fn two_reach_bound(n: u32) -> usize {
    (3 * n as usize).div_ceil(2) - 2
}

pub fn two_reach_star_bound(n: u32) -> usize {
    (3 * (n as usize - 1)).div_ceil(2)
}
