//! Exhaustive minimal-length search by iterative deepening.
//!
//! A node is a prefix of transpositions together with its reachable-tuple
//! frontier. Every pruning rule preserves feasibility of a length bound:
//!
//! * a transposition joining two positions that no counter can occupy yet
//!   leaves the frontier unchanged, so it is never tried;
//! * positions outside the roots `1..=t` that no counter has touched are
//!   interchangeable, so the k-th newly reached position is always `t + k`;
//! * a transposition that leaves the frontier unchanged is never tried;
//! * a frontier can at most double per step and at most one new position
//!   becomes reachable per step, which bounds what the remaining steps can
//!   still achieve.
//!
//! A frontier that becomes complete before the target length is padded with
//! the first alphabet transposition, since extra steps never shrink it.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{Network, Transposition};
use crate::tuple::{falling_factorial, DistinctTuples, TupleCodec};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Largest number of tuples the search will index.
const MAX_STATES: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pruning {
    pub skip_inactive_pairs: bool,
    /// Only effective together with `skip_inactive_pairs`.
    pub canonical_activation: bool,
    pub skip_stalled: bool,
    pub counting_bounds: bool,
}

impl Pruning {
    pub const ALL: Pruning =
        Pruning { skip_inactive_pairs: true, canonical_activation: true, skip_stalled: true, counting_bounds: true };
    pub const NONE: Pruning = Pruning {
        skip_inactive_pairs: false,
        canonical_activation: false,
        skip_stalled: false,
        counting_bounds: false,
    };
}

impl Default for Pruning {
    fn default() -> Self {
        Self::ALL
    }
}

/// Where iterative deepening starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartLevel {
    /// From `n - 1`, proving every shorter level infeasible on the way.
    #[default]
    Proven,
    /// From the known closed-form minimum for `t ≤ 2`; nothing below it is
    /// checked.
    KnownBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: u32,
    pub t: u32,
    pub star_only: bool,
    pub max_len: Option<usize>,
    /// Cap on explored nodes across all levels and threads.
    pub budget: u64,
    pub pruning: Pruning,
    pub start: StartLevel,
    pub threads: usize,
}

impl SearchSpec {
    pub fn new(n: u32, t: u32, star_only: bool) -> Self {
        Self {
            n,
            t,
            star_only,
            max_len: None,
            budget: DEFAULT_NODE_BUDGET,
            pruning: Pruning::ALL,
            start: StartLevel::Proven,
            threads: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 || self.t > self.n {
            return Err(Error::InvalidParameter(format!("need 1 <= t <= n, got t={} n={}", self.t, self.n)));
        }
        if self.n > 64 {
            return Err(Error::InvalidParameter("search supports n <= 64".into()));
        }
        let states = falling_factorial(self.n, self.t);
        if states > MAX_STATES {
            return Err(Error::BudgetExceeded { needed: states, budget: MAX_STATES as u64 });
        }
        if let Some(cap) = self.max_len {
            if cap < trivial_lower_bound(self.n) {
                return Err(Error::InvalidParameter(format!(
                    "max_len {cap} is below the lower bound n - 1 = {}",
                    trivial_lower_bound(self.n)
                )));
            }
        }
        Ok(())
    }
}

/// Every position must be able to receive counter 1, and each step makes at
/// most one new position reachable.
pub fn trivial_lower_bound(n: u32) -> usize {
    n.saturating_sub(1) as usize
}

/// Closed-form minimum for `t = 1` and `t = 2` (general and star); `n - 1`
/// otherwise.
pub fn known_bound(n: u32, t: u32, star_only: bool) -> usize {
    let n64 = n as usize;
    match (t, star_only) {
        (2, false) if n >= 2 => (3 * n64).div_ceil(2) - 2,
        (2, true) if n >= 3 => (3 * (n64 - 1)).div_ceil(2),
        _ => trivial_lower_bound(n),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: u32,
    pub t: u32,
    pub star_only: bool,
    pub min_length: usize,
    pub witness: Network,
    pub nodes_explored: u64,
    /// Lengths proven infeasible by exhaustion, increasing.
    pub exhausted_levels: Vec<usize>,
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MIN n={} t={} star={} len={} nodes={}",
            self.n, self.t, self.star_only, self.min_length, self.nodes_explored
        )
    }
}

enum Walk {
    Found,
    Exhausted,
    Cancelled,
    OutOfBudget,
}

struct Engine {
    n: u32,
    t: u32,
    required: u32,
    words: usize,
    alphabet: Vec<Transposition>,
    // images[k][i] = index of alphabet[k] applied to tuple i
    images: Vec<Vec<u32>>,
    start: Vec<u64>,
    pruning: Pruning,
    budget: u64,
    nodes: AtomicU64,
}

struct Cursor<'a> {
    length: usize,
    frontiers: Vec<Vec<u64>>,
    seq: Vec<usize>,
    cancel: &'a dyn Fn() -> bool,
}

impl Engine {
    fn new(spec: &SearchSpec) -> Result<Self> {
        spec.validate()?;
        let (n, t) = (spec.n, spec.t);
        let alphabet: Vec<Transposition> = if spec.star_only {
            (2..=n).map(|x| Transposition::star(x).expect("x >= 2")).collect()
        } else {
            (1..=n).flat_map(|a| (a + 1..=n).map(move |b| Transposition::new(a, b).expect("a < b"))).collect()
        };

        let codec = TupleCodec::new(n, t)?;
        let tuples: Vec<u64> = DistinctTuples::new(n, t).map(|x| codec.encode(&x)).collect();
        let index = |code: u64| tuples.binary_search(&code).expect("distinct tuple") as u32;
        let images = alphabet.iter().map(|&tau| tuples.iter().map(|&c| index(codec.apply(tau, c))).collect()).collect();

        let required = tuples.len() as u32;
        let words = tuples.len().div_ceil(64);
        let mut start = vec![0u64; words];
        // (1, ..., t) is the lexicographically first tuple.
        start[0] = 1;
        Ok(Self {
            n,
            t,
            required,
            words,
            alphabet,
            images,
            start,
            pruning: spec.pruning,
            budget: spec.budget,
            nodes: AtomicU64::new(0),
        })
    }

    fn roots_mask(&self) -> u64 {
        if self.t >= 64 {
            u64::MAX
        } else {
            (1u64 << self.t) - 1
        }
    }

    fn count(bits: &[u64]) -> u32 {
        bits.iter().map(|w| w.count_ones()).sum()
    }

    fn step(&self, k: usize, from: &[u64], to: &mut [u64]) {
        to.copy_from_slice(from);
        let img = &self.images[k];
        for (w, &word) in from.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let i = (w << 6) | word.trailing_zeros() as usize;
                word &= word - 1;
                let j = img[i] as usize;
                to[j >> 6] |= 1 << (j & 63);
            }
        }
    }

    /// Branches at a node in search order: steps that activate nothing
    /// first, then activating steps, each in lexicographic order.
    fn branches(&self, active: u64) -> Vec<(usize, u64)> {
        let canonical = self.pruning.canonical_activation && self.pruning.skip_inactive_pairs;
        let next_label = active.trailing_ones() + 1;
        let mut quiet = Vec::new();
        let mut waking = Vec::new();
        for (k, tau) in self.alphabet.iter().enumerate() {
            let (a, b) = (tau.a(), tau.b());
            let a_on = active & (1 << (a - 1)) != 0;
            let b_on = active & (1 << (b - 1)) != 0;
            match (a_on, b_on) {
                (true, true) => quiet.push((k, active)),
                (false, false) => {
                    if !self.pruning.skip_inactive_pairs {
                        quiet.push((k, active));
                    }
                }
                _ => {
                    let fresh = if a_on { b } else { a };
                    if canonical && fresh != next_label {
                        continue;
                    }
                    waking.push((k, active | (1 << (fresh - 1))));
                }
            }
        }
        quiet.extend(waking);
        quiet
    }

    fn walk(&self, cur: &mut Cursor<'_>, depth: usize, active: u64) -> Walk {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Walk::OutOfBudget;
        }
        if (cur.cancel)() {
            return Walk::Cancelled;
        }
        let count = Self::count(&cur.frontiers[depth]);
        if count == self.required {
            return Walk::Found;
        }
        let remaining = cur.length - depth;
        if remaining == 0 {
            return Walk::Exhausted;
        }
        if self.pruning.counting_bounds {
            let reach = u128::from(count) << remaining.min(100);
            let dormant = (self.n - active.count_ones()) as usize;
            if reach < u128::from(self.required) || dormant > remaining {
                return Walk::Exhausted;
            }
        }
        for (k, next_active) in self.branches(active) {
            let (head, tail) = cur.frontiers.split_at_mut(depth + 1);
            self.step(k, &head[depth], &mut tail[0]);
            if self.pruning.skip_stalled && Self::count(&tail[0]) == count {
                continue;
            }
            cur.seq.push(k);
            match self.walk(cur, depth + 1, next_active) {
                Walk::Exhausted => {
                    cur.seq.pop();
                }
                other => return other,
            }
        }
        Walk::Exhausted
    }

    fn cursor<'a>(&self, length: usize, cancel: &'a dyn Fn() -> bool) -> Cursor<'a> {
        let mut frontiers = vec![vec![0u64; self.words]; length + 1];
        frontiers[0].copy_from_slice(&self.start);
        Cursor { length, frontiers, seq: Vec::with_capacity(length), cancel }
    }

    fn witness(&self, seq: &[usize], length: usize) -> Network {
        let mut pairs: Vec<Transposition> = seq.iter().map(|&k| self.alphabet[k]).collect();
        if let Some(&pad) = self.alphabet.first() {
            pairs.resize(length, pad);
        }
        Network::new(self.n, pairs).expect("alphabet lies in [n]")
    }

    fn level(&self, length: usize, threads: usize) -> Result<Option<Network>> {
        if self.alphabet.is_empty() || length == 0 || threads <= 1 {
            let never = || false;
            let mut cur = self.cursor(length, &never);
            return match self.walk(&mut cur, 0, self.roots_mask()) {
                Walk::Found if cur.seq.len() == length || !self.alphabet.is_empty() => {
                    Ok(Some(self.witness(&cur.seq, length)))
                }
                Walk::Found | Walk::Exhausted | Walk::Cancelled => Ok(None),
                Walk::OutOfBudget => Err(self.out_of_budget(length)),
            };
        }

        // Root node handled here; its branches are searched in parallel.
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(self.out_of_budget(length));
        }
        if Self::count(&self.start) == self.required {
            return Ok(Some(self.witness(&[], length)));
        }
        let roots = self.branches(self.roots_mask());
        let best = AtomicUsize::new(usize::MAX);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let outcomes: Vec<(Walk, Vec<usize>)> = pool.install(|| {
            roots
                .par_iter()
                .enumerate()
                .map(|(idx, &(k, next_active))| {
                    let cancel = || best.load(Ordering::Relaxed) < idx;
                    let mut cur = self.cursor(length, &cancel);
                    let (head, tail) = cur.frontiers.split_at_mut(1);
                    self.step(k, &head[0], &mut tail[0]);
                    if self.pruning.skip_stalled && Self::count(&tail[0]) == Self::count(&self.start) {
                        return (Walk::Exhausted, Vec::new());
                    }
                    cur.seq.push(k);
                    let walk = self.walk(&mut cur, 1, next_active);
                    if matches!(walk, Walk::Found) {
                        best.fetch_min(idx, Ordering::Relaxed);
                    }
                    (walk, cur.seq)
                })
                .collect()
        });
        // Sequential order decides: the first branch that did not exhaust.
        for (walk, seq) in outcomes {
            match walk {
                Walk::Found => return Ok(Some(self.witness(&seq, length))),
                Walk::OutOfBudget => return Err(self.out_of_budget(length)),
                Walk::Exhausted | Walk::Cancelled => {}
            }
        }
        Ok(None)
    }

    fn out_of_budget(&self, length: usize) -> Error {
        Error::SearchBudgetExceeded { nodes: self.nodes.load(Ordering::Relaxed), length }
    }
}

/// A `t`-reachability network of exactly `length` transpositions, or `None`
/// when exhaustive search shows there is none. Running out of budget is an
/// error, never `None`.
pub fn exists_network(spec: &SearchSpec, length: usize) -> Result<Option<Network>> {
    Engine::new(spec)?.level(length, spec.threads)
}

/// Iterative deepening for the shortest network.
pub fn min_length(spec: &SearchSpec) -> Result<SearchResult> {
    let engine = Engine::new(spec)?;
    let first = match spec.start {
        StartLevel::Proven => trivial_lower_bound(spec.n),
        StartLevel::KnownBound => known_bound(spec.n, spec.t, spec.star_only),
    };
    let mut exhausted_levels = Vec::new();
    let mut length = first;
    loop {
        if spec.max_len.is_some_and(|cap| length > cap) {
            return Err(Error::NoNetworkWithin(spec.max_len.unwrap_or(length)));
        }
        match engine.level(length, spec.threads)? {
            Some(witness) => {
                return Ok(SearchResult {
                    n: spec.n,
                    t: spec.t,
                    star_only: spec.star_only,
                    min_length: length,
                    witness,
                    nodes_explored: engine.nodes.load(Ordering::Relaxed),
                    exhausted_levels,
                });
            }
            None => exhausted_levels.push(length),
        }
        length += 1;
    }
}
