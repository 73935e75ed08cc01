//! Transpositions and the sequences built from them.
//!
//! Positions are 1-based throughout. A subsequence acts on counter
//! positions and is applied in sequence order: the first selected
//! transposition moves counters first.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An unordered pair of distinct positions, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transposition {
    a: u32,
    b: u32,
}

impl Transposition {
    /// Builds the transposition swapping `x` and `y`. Order does not matter.
    pub fn new(x: u32, y: u32) -> Result<Self> {
        if x == y || x == 0 || y == 0 {
            return Err(Error::InvalidTransposition { a: x, b: y, n: 0 });
        }
        Ok(Self { a: x.min(y), b: x.max(y) })
    }

    /// Star transposition `(1, x)`.
    pub fn star(x: u32) -> Result<Self> {
        Self::new(1, x)
    }

    pub fn a(self) -> u32 {
        self.a
    }

    pub fn b(self) -> u32 {
        self.b
    }

    pub fn is_star(self) -> bool {
        self.a == 1
    }

    pub fn touches(self, x: u32) -> bool {
        self.a == x || self.b == x
    }

    /// Image of a single position.
    #[inline]
    pub fn map(self, x: u32) -> u32 {
        if x == self.a {
            self.b
        } else if x == self.b {
            self.a
        } else {
            x
        }
    }

    pub(crate) fn check_within(self, n: u32) -> Result<()> {
        if self.b > n {
            Err(Error::InvalidTransposition { a: self.a, b: self.b, n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A permutation of `[n]` given by its position map: entry `j - 1` is the
/// image of `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Self((1..=n).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let i = x as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(Self(images))
    }

    pub fn n(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn image(&self, x: u32) -> u32 {
        self.0[x as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Post-composes with a transposition: counters first move by `self`,
    /// then by `tau`.
    pub fn then(&mut self, tau: Transposition) {
        for x in &mut self.0 {
            *x = tau.map(*x);
        }
    }
}

/// A ground-set size together with an ordered sequence of transpositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    n: u32,
    seq: Vec<Transposition>,
}

impl Network {
    pub fn new(n: u32, seq: Vec<Transposition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("ground set size must be at least 1".into()));
        }
        for tau in &seq {
            tau.check_within(n)?;
        }
        Ok(Self { n, seq })
    }

    /// Builds from raw pairs, e.g. `Network::from_pairs(3, &[(1, 2), (1, 3)])`.
    pub fn from_pairs(n: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        let seq = pairs
            .iter()
            .map(|&(x, y)| Transposition::new(x, y).map_err(|_| Error::InvalidTransposition { a: x, b: y, n }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, seq)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn transpositions(&self) -> &[Transposition] {
        &self.seq
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.seq.iter().map(|t| (t.a, t.b)).collect()
    }

    /// Every transposition has endpoint 1.
    pub fn is_star(&self) -> bool {
        self.seq.iter().all(|t| t.is_star())
    }

    /// The same transpositions in reverse order.
    pub fn reversed(&self) -> Self {
        Self { n: self.n, seq: self.seq.iter().rev().copied().collect() }
    }

    /// Sequence with the transposition at `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        if index >= self.seq.len() {
            return Err(Error::IndexOutOfRange { index, len: self.seq.len() });
        }
        let mut seq = self.seq.clone();
        seq.remove(index);
        Ok(Self { n: self.n, seq })
    }

    pub fn concat(&self, other: &Network) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!(
                "cannot concatenate networks on {} and {} elements",
                self.n, other.n
            )));
        }
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq);
        Ok(Self { n: self.n, seq })
    }

    /// Composite of the transpositions at the (0-based, strictly increasing)
    /// indices in `mask`, applied in sequence order.
    pub fn compose_subsequence(&self, mask: &[usize]) -> Result<Permutation> {
        let mut perm = Permutation::identity(self.n);
        let mut prev: Option<usize> = None;
        for &i in mask {
            if i >= self.seq.len() {
                return Err(Error::IndexOutOfRange { index: i, len: self.seq.len() });
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(Error::UnorderedMask);
            }
            prev = Some(i);
            perm.then(self.seq[i]);
        }
        Ok(perm)
    }

    pub(crate) fn push(&mut self, tau: Transposition) {
        debug_assert!(tau.b <= self.n);
        self.seq.push(tau);
    }
}

/// A transposition that fires with an exact rational probability.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LazyTransposition {
    pair: Transposition,
    p: BigRational,
}

impl LazyTransposition {
    pub fn new(pair: Transposition, p: BigRational) -> Result<Self> {
        if p < BigRational::zero() || p > BigRational::one() {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        Ok(Self { pair, p })
    }

    /// Convenience constructor from small integers: `(x, y)` fires with
    /// probability `num/den`.
    pub fn with_ratio(x: u32, y: u32, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidProbability(format!("{num}/{den}")));
        }
        Self::new(Transposition::new(x, y)?, BigRational::new(num.into(), den.into()))
    }

    pub fn pair(&self) -> Transposition {
        self.pair
    }

    pub fn probability(&self) -> &BigRational {
        &self.p
    }
}

/// A sequence of independent lazy transpositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LazyNetwork {
    n: u32,
    seq: Vec<LazyTransposition>,
}

impl LazyNetwork {
    pub fn new(n: u32, seq: Vec<LazyTransposition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("ground set size must be at least 1".into()));
        }
        for lt in &seq {
            lt.pair.check_within(n)?;
        }
        Ok(Self { n, seq })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn steps(&self) -> &[LazyTransposition] {
        &self.seq
    }

    pub fn is_star(&self) -> bool {
        self.seq.iter().all(|lt| lt.pair.is_star())
    }

    /// Drops the probabilities.
    pub fn strip(&self) -> Network {
        Network { n: self.n, seq: self.seq.iter().map(|lt| lt.pair).collect() }
    }
}
