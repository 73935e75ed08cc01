//! Builders for the explicit network families.

mod random;
mod waksman;

pub use random::{
    check_expansion, integer_phase_count, sample_support, t_reach_random, BipartiteSupport, RandomConstruction,
    RandomConstructionParams, DEFAULT_MAX_RETRIES,
};
pub use waksman::{waksman_length, waksman_permutation_network};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::network::{LazyNetwork, LazyTransposition, Network, Transposition};

fn star(x: u32) -> Transposition {
    Transposition::star(x).expect("star endpoint is at least 2")
}

fn pair(x: u32, y: u32) -> Transposition {
    Transposition::new(x, y).expect("distinct endpoints")
}

fn require(n: u32, min: u32, what: &str) -> Result<()> {
    if n < min {
        Err(Error::InvalidParameter(format!("{what} needs n >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// The star chain `(1,2), (1,3), ..., (1,n)`: a shortest 1-reachability
/// network.
pub fn one_reach(n: u32) -> Result<Network> {
    require(n, 2, "one_reach")?;
    Network::new(n, (2..=n).map(star).collect())
}

/// Shortest 2-reachability network, of length `ceil(3n/2) - 2`.
pub fn two_reach(n: u32) -> Result<Network> {
    require(n, 2, "two_reach")?;
    let mut seq = vec![pair(1, 2)];
    seq.extend((3..=n).step_by(2).map(|x| pair(1, x)));
    seq.extend((4..=n).step_by(2).map(|y| pair(2, y)));
    seq.extend((3..n).step_by(2).map(|x| pair(x, x + 1)));
    if n % 2 == 1 {
        seq.push(pair(1, 2));
    }
    Network::new(n, seq)
}

/// Shortest 2-reachability network using only star transpositions, of
/// length `ceil(3(n-1)/2)`. Odd `n` uses the twisted closing sweep.
pub fn two_reach_star(n: u32) -> Result<Network> {
    require(n, 3, "two_reach_star")?;
    let mut seq = vec![star(2)];
    if n.is_multiple_of(2) {
        seq.extend((4..=n).step_by(2).map(star));
        seq.extend((2..=n).map(star));
    } else {
        let m = (n - 1) / 2;
        seq.extend((4..=2 * m).step_by(2).map(star));
        for k in 1..=m {
            seq.push(star(2 * k + 1));
            seq.push(star(2 * k));
        }
    }
    Network::new(n, seq)
}

/// Star 2-uniformity network of length `2n - 3`:
/// `(1,2,1/2)` followed by `(1,k,2/(n+3-k)), (1,2,1/2)` for `k = 3..=n`.
pub fn two_unif_star(n: u32) -> Result<LazyNetwork> {
    require(n, 2, "two_unif_star")?;
    let half = LazyTransposition::new(star(2), BigRational::new(1.into(), 2.into()))?;
    let mut seq = vec![half.clone()];
    for k in 3..=n {
        let p = BigRational::new(2.into(), (n + 3 - k).into());
        seq.push(LazyTransposition::new(star(k), p)?);
        seq.push(half.clone());
    }
    LazyNetwork::new(n, seq)
}

/// Replaces every lazy `(i, j, p)` with `1 ∉ {i, j}` by the star triple
/// `(1,i,1), (1,j,p), (1,i,1)`, which has the same action.
pub fn lazy_to_star(net: &LazyNetwork) -> LazyNetwork {
    let mut seq = Vec::with_capacity(net.len());
    for lt in net.steps() {
        let tau = lt.pair();
        if tau.is_star() {
            seq.push(lt.clone());
            continue;
        }
        let conj = LazyTransposition::new(star(tau.a()), BigRational::one()).expect("p = 1");
        let mid = LazyTransposition::new(star(tau.b()), lt.probability().clone()).expect("valid p");
        seq.extend([conj.clone(), mid, conj]);
    }
    LazyNetwork::new(net.n(), seq).expect("positions unchanged")
}

/// Star version of a plain network: every `(i, j)` with `1 ∉ {i, j}` becomes
/// `(1,i), (1,j), (1,i)`. Reachable tuples can only grow.
pub fn network_to_star(net: &Network) -> Network {
    let mut seq = Vec::with_capacity(net.len());
    for &tau in net.transpositions() {
        if tau.is_star() {
            seq.push(tau);
        } else {
            seq.extend([star(tau.a()), star(tau.b()), star(tau.a())]);
        }
    }
    Network::new(net.n(), seq).expect("positions unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_reach_examples() {
        assert_eq!(one_reach(2).unwrap().pairs(), vec![(1, 2)]);
        assert_eq!(one_reach(4).unwrap().pairs(), vec![(1, 2), (1, 3), (1, 4)]);
        assert_eq!(one_reach(10).unwrap().len(), 9);
        assert!(one_reach(1).is_err());
    }

    #[test]
    fn two_reach_examples() {
        assert_eq!(
            two_reach(9).unwrap().pairs(),
            vec![(1, 2), (1, 3), (1, 5), (1, 7), (1, 9), (2, 4), (2, 6), (2, 8), (3, 4), (5, 6), (7, 8), (1, 2)]
        );
        assert_eq!(two_reach(2).unwrap().pairs(), vec![(1, 2)]);
        assert_eq!(two_reach(4).unwrap().pairs(), vec![(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert!(two_reach(1).is_err());
    }

    #[test]
    fn two_reach_star_examples() {
        assert_eq!(two_reach_star(4).unwrap().pairs(), vec![(1, 2), (1, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(two_reach_star(5).unwrap().pairs(), vec![(1, 2), (1, 4), (1, 3), (1, 2), (1, 5), (1, 4)]);
        assert_eq!(two_reach_star(3).unwrap().pairs(), vec![(1, 2), (1, 3), (1, 2)]);
        assert!(two_reach_star(2).is_err());
    }

    #[test]
    fn lengths_match_closed_forms() {
        for n in 2..=200u32 {
            assert_eq!(two_reach(n).unwrap().len() as u32, (3 * n).div_ceil(2) - 2, "n={n}");
        }
        for n in 3..=200u32 {
            let net = two_reach_star(n).unwrap();
            assert_eq!(net.len() as u32, (3 * (n - 1)).div_ceil(2), "n={n}");
            assert!(net.is_star());
        }
    }

    #[test]
    fn two_unif_star_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let shape = |n| {
            two_unif_star(n)
                .unwrap()
                .steps()
                .iter()
                .map(|s| (s.pair().a(), s.pair().b(), s.probability().clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(shape(2), vec![(1, 2, r(1, 2))]);
        assert_eq!(shape(3), vec![(1, 2, r(1, 2)), (1, 3, r(2, 3)), (1, 2, r(1, 2))]);
        assert_eq!(shape(4), vec![(1, 2, r(1, 2)), (1, 3, r(1, 2)), (1, 2, r(1, 2)), (1, 4, r(2, 3)), (1, 2, r(1, 2))]);
        for n in 2..=30 {
            assert_eq!(two_unif_star(n).unwrap().len() as u32, 2 * n - 3);
        }
    }

    #[test]
    fn star_simulation_examples() {
        let lazy = LazyNetwork::new(4, vec![LazyTransposition::with_ratio(2, 3, 1, 2).unwrap()]).unwrap();
        let out = lazy_to_star(&lazy);
        let expect = LazyNetwork::new(
            4,
            vec![
                LazyTransposition::with_ratio(1, 2, 1, 1).unwrap(),
                LazyTransposition::with_ratio(1, 3, 1, 2).unwrap(),
                LazyTransposition::with_ratio(1, 2, 1, 1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(out, expect);

        let already = LazyNetwork::new(5, vec![LazyTransposition::with_ratio(1, 5, 1, 3).unwrap()]).unwrap();
        assert_eq!(lazy_to_star(&already), already);

        let plain = Network::from_pairs(3, &[(2, 3)]).unwrap();
        assert_eq!(network_to_star(&plain).pairs(), vec![(1, 2), (1, 3), (1, 2)]);
        let s = Network::from_pairs(4, &[(1, 4)]).unwrap();
        assert_eq!(network_to_star(&s), s);
    }
}
