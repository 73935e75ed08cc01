//! Randomized star construction for `t ≥ 3`.
//!
//! Every position `j > t` gets two uniformly random "phase" neighbours out of
//! `L = ⌊n^(1-ε)⌋`. Phase `i` is `(1,2), ..., (1,t)` followed by `(1,j)` for
//! every `j` adjacent to phase `i`. A permutation network on `[t]`, rewritten
//! with star transpositions, closes the sequence.
//!
//! If every set of at most `t` outside positions has a matching into the
//! phases, each outside target can be loaded during its own phase from a
//! counter still parked in `[t]`, and the tail arranges the rest.

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{network_to_star, star, waksman::waksman_on};
use crate::error::{Error, Result};
use crate::network::Network;

pub const DEFAULT_MAX_RETRIES: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomConstructionParams {
    pub t: u32,
    pub n: u32,
    /// Must lie strictly between 0 and `1/(t+1)`.
    pub epsilon: Ratio<u64>,
    pub seed: u64,
    pub max_retries: u32,
}

impl RandomConstructionParams {
    /// Defaults: `ε = 1/(t+2)` and [`DEFAULT_MAX_RETRIES`].
    pub fn new(t: u32, n: u32, seed: u64) -> Self {
        Self { t, n, epsilon: Ratio::new(1, u64::from(t) + 2), seed, max_retries: DEFAULT_MAX_RETRIES }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t < 3 {
            return Err(Error::InvalidParameter(format!("t must be at least 3, got {}", self.t)));
        }
        if self.n <= self.t {
            return Err(Error::InvalidParameter(format!("n = {} must exceed t = {}", self.n, self.t)));
        }
        let upper = Ratio::new(1, u64::from(self.t) + 1);
        if *self.epsilon.numer() == 0 || self.epsilon >= upper {
            return Err(Error::InvalidParameter(format!("epsilon {} must lie in (0, {upper})", self.epsilon)));
        }
        if self.max_retries == 0 {
            return Err(Error::InvalidParameter("max_retries must be positive".into()));
        }
        Ok(())
    }

    /// `L = ⌊n^(1-ε)⌋`.
    pub fn phase_count(&self) -> u32 {
        integer_phase_count(self.n, self.epsilon)
    }
}

/// `⌊n^(1-ε)⌋` in exact integer arithmetic: with `1 - ε = q/r`, the largest
/// `L` with `L^r ≤ n^q`.
pub fn integer_phase_count(n: u32, epsilon: Ratio<u64>) -> u32 {
    let exponent = Ratio::from_integer(1) - epsilon;
    let (q, r) = (*exponent.numer(), *exponent.denom());
    let power = BigUint::from(n).pow(q as u32);
    let root = power.nth_root(r as u32);
    u32::try_from(root).expect("root is at most n")
}

/// Bipartite graph between outside positions `t+1..=n` and phases `0..L`,
/// every outside position having exactly two (possibly equal) phase edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSupport {
    t: u32,
    n: u32,
    phases: u32,
    edges: Vec<[u32; 2]>,
}

impl BipartiteSupport {
    /// `edges[k]` holds the two phases of position `t + 1 + k`.
    pub fn new(t: u32, n: u32, phases: u32, edges: Vec<[u32; 2]>) -> Result<Self> {
        if n < t || edges.len() != (n - t) as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} left vertices, got {}",
                n.saturating_sub(t),
                edges.len()
            )));
        }
        if let Some(bad) = edges.iter().flatten().find(|&&b| b >= phases) {
            return Err(Error::InvalidParameter(format!("phase {bad} out of range 0..{phases}")));
        }
        Ok(Self { t, n, phases, edges })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn phases(&self) -> u32 {
        self.phases
    }

    pub fn left_len(&self) -> usize {
        self.edges.len()
    }

    /// The two phase neighbours of outside position `j`.
    pub fn neighbors(&self, j: u32) -> [u32; 2] {
        self.edges[(j - self.t - 1) as usize]
    }

    /// Outside positions loaded during `phase`, with multiplicity.
    pub fn loaded_in(&self, phase: u32) -> impl Iterator<Item = u32> + '_ {
        self.edges.iter().enumerate().flat_map(move |(k, e)| {
            let j = self.t + 1 + k as u32;
            e.iter().filter(move |&&b| b == phase).map(move |_| j)
        })
    }
}

/// Draws two uniform phase neighbours for every outside position.
pub fn sample_support<R: Rng>(rng: &mut R, t: u32, n: u32, phases: u32) -> BipartiteSupport {
    let edges = (t + 1..=n).map(|_| [rng.random_range(0..phases), rng.random_range(0..phases)]).collect();
    BipartiteSupport { t, n, phases, edges }
}

/// Looks for a set of at most `t` outside positions whose phase
/// neighbourhood is smaller than the set. Returns the lexicographically
/// first such set, or `None` when every such set is matchable.
pub fn check_expansion(g: &BipartiteSupport, t: u32) -> Option<Vec<u32>> {
    fn grow(
        g: &BipartiteSupport,
        t: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        union: &mut Vec<u32>,
    ) -> Option<Vec<usize>> {
        for k in from..g.edges.len() {
            let mark = union.len();
            for b in g.edges[k] {
                if !union.contains(&b) {
                    union.push(b);
                }
            }
            chosen.push(k);
            let found = if union.len() < chosen.len() {
                Some(chosen.clone())
            } else if chosen.len() < t && union.len() < t {
                grow(g, t, k + 1, chosen, union)
            } else {
                None
            };
            chosen.pop();
            union.truncate(mark);
            if found.is_some() {
                return found;
            }
        }
        None
    }

    let mut chosen = Vec::with_capacity(t as usize);
    let mut union = Vec::with_capacity(2 * t as usize);
    grow(g, t as usize, 0, &mut chosen, &mut union).map(|ks| ks.into_iter().map(|k| g.t + 1 + k as u32).collect())
}

/// Output of [`t_reach_random`] with the bookkeeping needed to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomConstruction {
    pub network: Network,
    pub support: BipartiteSupport,
    /// Rejected support graphs before the accepted one.
    pub retries: u32,
    pub phases: u32,
    pub tail_len: usize,
}

impl RandomConstruction {
    /// `(t-1)L + 2(n-t) + tail`.
    pub fn predicted_len(&self) -> usize {
        let (t, n) = (self.support.t as usize, self.support.n as usize);
        (t - 1) * self.phases as usize + 2 * (n - t) + self.tail_len
    }
}

/// Builds a random star `t`-reachability network. Deterministic in
/// `params.seed`.
pub fn t_reach_random(params: &RandomConstructionParams) -> Result<RandomConstruction> {
    params.validate()?;
    let (t, n) = (params.t, params.n);
    let phases = params.phase_count();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut accepted = None;
    for attempt in 0..=params.max_retries {
        let g = sample_support(&mut rng, t, n, phases);
        if check_expansion(&g, t).is_none() {
            accepted = Some((g, attempt));
            break;
        }
    }
    let (support, retries) = accepted.ok_or(Error::RetriesExhausted(params.max_retries))?;

    let mut net = Network::new(n, Vec::new())?;
    for phase in 0..phases {
        for j in 2..=t {
            net.push(star(j));
        }
        for j in support.loaded_in(phase) {
            net.push(star(j));
        }
    }

    let mut inner = Vec::new();
    waksman_on(&(1..=t).collect::<Vec<_>>(), &mut inner);
    let tail = network_to_star(&Network::new(n, inner)?);
    let tail_len = tail.len();
    let network = net.concat(&tail)?;

    Ok(RandomConstruction { network, support, retries, phases, tail_len })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_count_is_exact() {
        let eps = Ratio::new(1, 5);
        // Largest L with L^5 <= n^4.
        assert_eq!(integer_phase_count(20, eps), 10);
        assert_eq!(integer_phase_count(30, eps), 15);
        assert_eq!(integer_phase_count(50, eps), 22);
        assert_eq!(integer_phase_count(32, eps), 16);
        assert_eq!(integer_phase_count(4, Ratio::new(1, 2)), 2);
    }

    #[test]
    fn params_validation() {
        assert!(RandomConstructionParams::new(3, 30, 1).validate().is_ok());
        assert!(RandomConstructionParams::new(2, 30, 1).validate().is_err());
        assert!(RandomConstructionParams::new(3, 3, 1).validate().is_err());
        let mut p = RandomConstructionParams::new(3, 30, 1);
        p.epsilon = Ratio::new(1, 4);
        assert!(p.validate().is_err());
        p.epsilon = Ratio::new(0, 1);
        assert!(p.validate().is_err());
        p.epsilon = Ratio::new(1, 5);
        p.max_retries = 0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn collapsed_support_is_rejected() {
        let g = BipartiteSupport::new(3, 8, 4, vec![[0, 0]; 5]).unwrap();
        assert_eq!(check_expansion(&g, 3), Some(vec![4, 5]));
    }

    #[test]
    fn disjoint_pairs_are_accepted() {
        let edges = (0..5).map(|k| [2 * k, 2 * k + 1]).collect();
        let g = BipartiteSupport::new(3, 8, 10, edges).unwrap();
        assert_eq!(check_expansion(&g, 3), None);
    }

    #[test]
    fn triple_on_two_phases_is_rejected() {
        let g = BipartiteSupport::new(3, 7, 6, vec![[0, 1], [1, 0], [2, 3], [0, 1]]).unwrap();
        assert_eq!(check_expansion(&g, 3), Some(vec![4, 5, 7]));
        // At scale 2 the same graph is fine.
        assert_eq!(check_expansion(&g, 2), None);
    }

    #[test]
    fn support_shape_and_loading() {
        let g = BipartiteSupport::new(3, 6, 3, vec![[0, 2], [1, 1], [2, 0]]).unwrap();
        assert_eq!(g.loaded_in(0).collect::<Vec<_>>(), vec![4, 6]);
        assert_eq!(g.loaded_in(1).collect::<Vec<_>>(), vec![5, 5]);
        assert_eq!(g.neighbors(6), [2, 0]);
        assert!(BipartiteSupport::new(3, 6, 3, vec![[0, 3], [1, 1], [2, 0]]).is_err());
        assert!(BipartiteSupport::new(3, 6, 3, vec![[0, 1]]).is_err());
    }

    #[test]
    fn construction_is_reproducible_and_counts_add_up() {
        let params = RandomConstructionParams::new(3, 30, 7);
        let a = t_reach_random(&params).unwrap();
        let b = t_reach_random(&params).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.phases, 15);
        assert_eq!(a.network.len(), a.predicted_len());
        assert!(a.network.is_star());
        for j in 4..=30 {
            let uses =
                a.network.transpositions()[..a.network.len() - a.tail_len].iter().filter(|tau| tau.b() == j).count();
            assert_eq!(uses, 2, "position {j}");
        }
    }
}
