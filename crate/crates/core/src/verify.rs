//! Exact decision procedures.
//!
//! Reachability is decided by frontier closure: starting from `{(1,...,t)}`,
//! each transposition `τ` maps the frontier `S` to `S ∪ τ(S)`. After the
//! last step `S` is exactly the set of tuples realised by some subsequence.
//! Uniformity pushes exact rational mass forward the same way.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::network::{LazyNetwork, Network};
use crate::tuple::{falling_factorial, CounterTuple, DistinctTuples, Distribution, TupleCodec, TupleSet};

/// Default cap on the number of tuples a verifier may track.
pub const DEFAULT_BUDGET: u64 = 1 << 27;

/// How many unreached tuples a failing verdict lists.
pub const MISSING_SAMPLE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Maximum number of distinct tuples (`n (n-1) ... (n-t+1)`).
    pub budget: u64,
    /// Stop once every tuple is reached.
    pub early_exit: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, early_exit: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachVerdict {
    pub ok: bool,
    pub reached: u64,
    pub required: u64,
    /// Lexicographically smallest unreached tuples, at most
    /// [`MISSING_SAMPLE`]. Empty when `ok`.
    pub missing_sample: Vec<CounterTuple>,
    /// Number of transpositions consumed when the frontier became complete,
    /// if it did before the end and early exit was on.
    pub completed_after: Option<usize>,
}

impl fmt::Display for ReachVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok { "OK" } else { "FAIL" };
        write!(f, "{status} reached={} required={}", self.reached, self.required)?;
        if let Some(k) = self.completed_after {
            write!(f, "\ncomplete after {k} transpositions")?;
        }
        for x in &self.missing_sample {
            write!(f, "\nmissing {x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformityVerdict {
    pub ok: bool,
    /// `(n-t)!/n!`.
    pub expected_mass: BigRational,
    pub required: u64,
    /// Every tuple whose mass differs from `expected_mass`, in lexicographic
    /// order, including tuples with zero mass.
    pub deviations: Vec<(CounterTuple, BigRational)>,
}

impl fmt::Display for UniformityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            write!(f, "OK uniform tuples={} mass={}", self.required, self.expected_mass)
        } else {
            write!(
                f,
                "FAIL deviations={} tuples={} expected={}",
                self.deviations.len(),
                self.required,
                self.expected_mass
            )?;
            for (x, m) in &self.deviations {
                write!(f, "\ndeviation {x} {m}")?;
            }
            Ok(())
        }
    }
}

fn checked_codec(n: u32, t: u32, budget: u64) -> Result<(TupleCodec, u64)> {
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!("arity {t} must lie in 1..={n}")));
    }
    let required = falling_factorial(n, t);
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { needed: required, budget });
    }
    let codec = TupleCodec::new(n, t)?;
    Ok((codec, required as u64))
}

fn start_set(codec: TupleCodec) -> TupleSet {
    let t = codec.arity();
    let mut set = TupleSet::new(codec);
    set.insert(&CounterTuple::start(t));
    set
}

/// All tuples reachable by some subsequence, from the start `(1, ..., t)`.
pub fn reach_set(net: &Network, t: u32) -> Result<TupleSet> {
    reach_set_with(net, t, VerifyOptions { early_exit: false, ..Default::default() })
}

pub fn reach_set_with(net: &Network, t: u32, opts: VerifyOptions) -> Result<TupleSet> {
    Ok(run_frontier(net, t, opts)?.0)
}

fn run_frontier(net: &Network, t: u32, opts: VerifyOptions) -> Result<(TupleSet, u64, Option<usize>)> {
    let (codec, required) = checked_codec(net.n(), t, opts.budget)?;
    let mut set = start_set(codec);
    let steps = net.transpositions();
    for (i, &tau) in steps.iter().enumerate() {
        if opts.early_exit && set.len() == required {
            return Ok((set, required, Some(i)));
        }
        set.close_under(tau);
    }
    Ok((set, required, None))
}

/// Decides `t`-reachability.
pub fn verify_reachability(net: &Network, t: u32) -> Result<ReachVerdict> {
    verify_reachability_with(net, t, VerifyOptions::default())
}

pub fn verify_reachability_with(net: &Network, t: u32, opts: VerifyOptions) -> Result<ReachVerdict> {
    let (set, required, completed_after) = run_frontier(net, t, opts)?;
    let ok = set.len() == required;
    let missing_sample = if ok { Vec::new() } else { smallest_missing(&set, MISSING_SAMPLE) };
    Ok(ReachVerdict { ok, reached: set.len(), required, missing_sample, completed_after })
}

fn smallest_missing(set: &TupleSet, limit: usize) -> Vec<CounterTuple> {
    let codec = set.codec();
    DistinctTuples::new(codec.n(), codec.arity()).filter(|x| !set.contains_code(codec.encode(x))).take(limit).collect()
}

/// Decides whether every permutation of `[n]` is realised (`t = n`).
pub fn verify_permutation_network(net: &Network) -> Result<ReachVerdict> {
    verify_reachability(net, net.n())
}

pub fn verify_permutation_network_with(net: &Network, opts: VerifyOptions) -> Result<ReachVerdict> {
    verify_reachability_with(net, net.n(), opts)
}

/// Exact distribution of the counters' final positions.
pub fn tuple_distribution(net: &LazyNetwork, t: u32) -> Result<Distribution> {
    tuple_distribution_with(net, t, DEFAULT_BUDGET)
}

pub fn tuple_distribution_with(net: &LazyNetwork, t: u32, budget: u64) -> Result<Distribution> {
    let (codec, _) = checked_codec(net.n(), t, budget)?;
    let mut dist = Distribution::point_at_start(codec);
    for step in net.steps() {
        dist.apply(step);
    }
    Ok(dist)
}

/// Decides `t`-uniformity exactly.
pub fn verify_uniformity(net: &LazyNetwork, t: u32) -> Result<UniformityVerdict> {
    verify_uniformity_with(net, t, DEFAULT_BUDGET)
}

pub fn verify_uniformity_with(net: &LazyNetwork, t: u32, budget: u64) -> Result<UniformityVerdict> {
    let dist = tuple_distribution_with(net, t, budget)?;
    let required = falling_factorial(net.n(), t) as u64;
    let expected_mass = BigRational::new(BigInt::from(1), BigInt::from(required));
    let codec = dist.codec();
    let masses = dist.mass_by_code();
    let zero = BigRational::from_integer(BigInt::from(0));
    let deviations: Vec<_> = DistinctTuples::new(codec.n(), codec.arity())
        .filter_map(|x| {
            let m = masses.get(&codec.encode(&x)).unwrap_or(&zero);
            (*m != expected_mass).then(|| (x, m.clone()))
        })
        .collect();
    Ok(UniformityVerdict { ok: deviations.is_empty(), expected_mass, required, deviations })
}
