//! Transposition networks: sequences of transpositions on `[n]` in which
//! some subsequence moves counters from positions `1..=t` to any ordered
//! tuple of distinct targets.
//!
//! * [`network`] and [`tuple`]: domain types and the counter-tuple algebra.
//! * [`format`]: the `reachnet 1` text format.
//! * [`constructors`]: explicit and randomized network families.
//! * [`verify`]: exact reachability, permutation and uniformity checks.
//! * [`search`]: exhaustive shortest-network search.
//! * [`analyze`]: edge colorings, deficits and occurrence classes.

pub mod analyze;
pub mod constructors;
pub mod error;
pub mod format;
pub mod network;
pub mod search;
pub mod tuple;
pub mod verify;

pub use error::{Error, Result};
pub use network::{LazyNetwork, LazyTransposition, Network, Permutation, Transposition};
pub use tuple::{apply_transposition, CounterTuple, Distribution, TupleSet};
pub use verify::{ReachVerdict, UniformityVerdict};

/// Exact rational type used for lazy probabilities and masses.
pub use num_rational::BigRational;
