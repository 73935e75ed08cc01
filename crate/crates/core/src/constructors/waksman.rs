//! Recursive permutation network of length `Σ_{i=1}^{n} ⌈log₂ i⌉`.
//!
//! Positions are split into interleaved halves. An entry column swaps the
//! pairs `(p[2i], p[2i+1])`, the even-index half and the odd-index half are
//! routed recursively, and an exit column swaps the same pairs again. For
//! even sizes the first exit switch is dropped: the looping router can
//! always leave it straight. For odd sizes the last position bypasses both
//! columns and joins the larger half.

use crate::error::{Error, Result};
use crate::network::{Network, Transposition};

/// `Σ_{i=1}^{n} ⌈log₂ i⌉`.
pub fn waksman_length(n: u32) -> u64 {
    (1..=u64::from(n)).map(|i| u64::from(64 - (i - 1).leading_zeros())).sum()
}

fn build(positions: &[u32], out: &mut Vec<Transposition>) {
    let size = positions.len();
    if size < 2 {
        return;
    }
    let pairs = size / 2;
    let switch = |i: usize| Transposition::new(positions[2 * i], positions[2 * i + 1]).expect("distinct positions");
    out.extend((0..pairs).map(switch));

    let upper: Vec<u32> = positions.iter().step_by(2).copied().collect();
    let lower: Vec<u32> = positions.iter().skip(1).step_by(2).copied().collect();
    build(&upper, out);
    build(&lower, out);

    let first_exit = usize::from(size.is_multiple_of(2));
    out.extend((first_exit..pairs).map(switch));
}

/// Permutation network on `[n]`: every permutation is the composite of some
/// subsequence.
pub fn waksman_permutation_network(n: u32) -> Result<Network> {
    if n < 1 {
        return Err(Error::InvalidParameter("waksman_permutation_network needs n >= 1".into()));
    }
    let positions: Vec<u32> = (1..=n).collect();
    let mut seq = Vec::with_capacity(waksman_length(n) as usize);
    build(&positions, &mut seq);
    Network::new(n, seq)
}

/// Same network on an explicit list of positions.
pub(crate) fn waksman_on(positions: &[u32], out: &mut Vec<Transposition>) {
    build(positions, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let expect = [0u64, 0, 1, 3, 5, 8, 11, 14, 17];
        for (n, &len) in expect.iter().enumerate().skip(1) {
            assert_eq!(waksman_length(n as u32), len, "n={n}");
        }
    }

    #[test]
    fn small_networks() {
        assert_eq!(waksman_permutation_network(1).unwrap().len(), 0);
        assert_eq!(waksman_permutation_network(2).unwrap().pairs(), vec![(1, 2)]);
        assert_eq!(waksman_permutation_network(4).unwrap().len(), 5);
        assert_eq!(waksman_permutation_network(8).unwrap().len(), 17);
        assert!(waksman_permutation_network(0).is_err());
    }

    #[test]
    fn length_matches_formula_up_to_64() {
        for n in 1..=64 {
            assert_eq!(waksman_permutation_network(n).unwrap().len() as u64, waksman_length(n));
        }
    }
}
