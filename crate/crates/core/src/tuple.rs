//! Counter tuples, their mixed-radix encoding, and the two containers the
//! verifiers work with: [`TupleSet`] (reachable tuples) and
//! [`Distribution`] (exact probability mass over tuples).

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::network::{LazyTransposition, Transposition};

/// Dense bit-vector frontiers are used while `n^t` stays at or below this.
pub const DENSE_LIMIT: u64 = 1 << 27;

/// Positions of counters `1..=t`: entry `j - 1` holds the position of
/// counter `j`. Entries are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CounterTuple(Vec<u32>);

impl CounterTuple {
    pub fn new(entries: Vec<u32>, n: u32) -> Result<Self> {
        if entries.len() > n as usize {
            return Err(Error::InvalidTuple(format!("{} counters on {n} positions", entries.len())));
        }
        let mut seen = vec![false; n as usize + 1];
        for &x in &entries {
            if x == 0 || x > n {
                return Err(Error::InvalidTuple(format!("position {x} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidTuple(format!("position {x} repeated")));
            }
        }
        Ok(Self(entries))
    }

    /// The starting tuple `(1, ..., t)`.
    pub fn start(t: u32) -> Self {
        Self((1..=t).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for CounterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Moves whichever counter sits on either endpoint of `tau` to the other
/// endpoint.
pub fn apply_transposition(tau: Transposition, x: &CounterTuple) -> CounterTuple {
    CounterTuple(x.0.iter().map(|&p| tau.map(p)).collect())
}

/// `n (n-1) ... (n-t+1)`, the number of ordered `t`-tuples of distinct
/// positions. Saturates at `u128::MAX`.
pub fn falling_factorial(n: u32, t: u32) -> u128 {
    if t > n {
        return 0;
    }
    (0..t).fold(1u128, |acc, i| acc.saturating_mul(u128::from(n - i)))
}

/// Mixed-radix (base `n`) encoding of `t`-tuples, most significant entry
/// first, so code order is lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCodec {
    n: u32,
    t: u32,
    // weight of entry j is pows[j] = n^(t-1-j)
    pows: Vec<u64>,
    space: u64,
}

impl TupleCodec {
    pub fn new(n: u32, t: u32) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::InvalidParameter(format!("arity {t} must lie in 1..={n}")));
        }
        let space = u64::from(n)
            .checked_pow(t)
            .ok_or_else(|| Error::BudgetExceeded { needed: falling_factorial(n, t), budget: u64::MAX })?;
        let pows = (0..t).map(|j| u64::from(n).pow(t - 1 - j)).collect();
        Ok(Self { n, t, pows, space })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arity(&self) -> u32 {
        self.t
    }

    /// `n^t`, one past the largest code.
    pub fn space(&self) -> u64 {
        self.space
    }

    pub fn encode(&self, x: &CounterTuple) -> u64 {
        debug_assert_eq!(x.arity(), self.t as usize);
        x.0.iter().zip(&self.pows).map(|(&p, &w)| u64::from(p - 1) * w).sum()
    }

    pub fn decode(&self, code: u64) -> CounterTuple {
        let n = u64::from(self.n);
        CounterTuple(self.pows.iter().map(|&w| ((code / w) % n) as u32 + 1).collect())
    }

    /// Whether a code's entries are pairwise distinct.
    pub fn is_valid(&self, code: u64) -> bool {
        let n = u64::from(self.n);
        let mut seen = 0u128;
        let mut wide: Option<HashSet<u64>> = (self.n > 128).then(HashSet::new);
        for &w in &self.pows {
            let d = (code / w) % n;
            match wide.as_mut() {
                Some(set) => {
                    if !set.insert(d) {
                        return false;
                    }
                }
                None => {
                    if seen & (1 << d) != 0 {
                        return false;
                    }
                    seen |= 1 << d;
                }
            }
        }
        true
    }

    /// Code of `tau` applied to the tuple with code `code`.
    #[inline]
    pub fn apply(&self, tau: Transposition, code: u64) -> u64 {
        let n = u64::from(self.n);
        let (a, b) = (u64::from(tau.a() - 1), u64::from(tau.b() - 1));
        let mut out = code;
        for &w in &self.pows {
            let d = (code / w) % n;
            if d == a {
                out = out - a * w + b * w;
            } else if d == b {
                out = out - b * w + a * w;
            }
        }
        out
    }
}

/// All `t`-tuples of distinct positions in `[n]`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct DistinctTuples {
    n: u32,
    next: Option<Vec<u32>>,
}

impl DistinctTuples {
    pub fn new(n: u32, t: u32) -> Self {
        Self { n, next: (t <= n).then(|| (1..=t).collect()) }
    }

    fn advance(&self, cur: &[u32]) -> Option<Vec<u32>> {
        let t = cur.len();
        for i in (0..t).rev() {
            let prefix = &cur[..i];
            let Some(v) = (cur[i] + 1..=self.n).find(|v| !prefix.contains(v)) else {
                continue;
            };
            let mut out = prefix.to_vec();
            out.push(v);
            let mut fill = 1..=self.n;
            while out.len() < t {
                let w = fill.next()?;
                if !out.contains(&w) {
                    out.push(w);
                }
            }
            return Some(out);
        }
        None
    }
}

impl Iterator for DistinctTuples {
    type Item = CounterTuple;

    fn next(&mut self) -> Option<CounterTuple> {
        let cur = self.next.take()?;
        self.next = self.advance(&cur);
        Some(CounterTuple(cur))
    }
}

#[derive(Debug, Clone)]
enum Members {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

/// A deduplicated set of `t`-tuples over `[n]`.
#[derive(Debug, Clone)]
pub struct TupleSet {
    codec: TupleCodec,
    members: Members,
    len: u64,
}

impl TupleSet {
    /// Empty set; dense storage when `n^t` is at most [`DENSE_LIMIT`].
    pub fn new(codec: TupleCodec) -> Self {
        let members = if codec.space() <= DENSE_LIMIT {
            Members::Dense(vec![0; codec.space().div_ceil(64) as usize])
        } else {
            Members::Sparse(HashSet::new())
        };
        Self { codec, members, len: 0 }
    }

    pub fn codec(&self) -> &TupleCodec {
        &self.codec
    }

    pub fn arity(&self) -> u32 {
        self.codec.arity()
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.members, Members::Dense(_))
    }

    pub fn contains_code(&self, code: u64) -> bool {
        match &self.members {
            Members::Dense(bits) => bits[(code >> 6) as usize] & (1 << (code & 63)) != 0,
            Members::Sparse(set) => set.contains(&code),
        }
    }

    pub fn insert_code(&mut self, code: u64) -> bool {
        let fresh = match &mut self.members {
            Members::Dense(bits) => {
                let word = &mut bits[(code >> 6) as usize];
                let mask = 1 << (code & 63);
                let fresh = *word & mask == 0;
                *word |= mask;
                fresh
            }
            Members::Sparse(set) => set.insert(code),
        };
        self.len += u64::from(fresh);
        fresh
    }

    pub fn contains(&self, x: &CounterTuple) -> bool {
        x.arity() == self.codec.arity() as usize && self.contains_code(self.codec.encode(x))
    }

    /// Inserts a tuple; panics on an arity mismatch.
    pub fn insert(&mut self, x: &CounterTuple) -> bool {
        assert_eq!(x.arity(), self.codec.arity() as usize, "tuple arity mismatch");
        let code = self.codec.encode(x);
        self.insert_code(code)
    }

    /// Replaces the set `S` by `S ∪ tau(S)` and returns how many tuples were
    /// added.
    pub fn close_under(&mut self, tau: Transposition) -> u64 {
        let before = self.len;
        match &mut self.members {
            Members::Dense(bits) => {
                // In-place is exact: an added tuple maps back onto a member.
                let mut added = 0;
                for w in 0..bits.len() {
                    let mut word = bits[w];
                    while word != 0 {
                        let bit = word.trailing_zeros() as u64;
                        word &= word - 1;
                        let img = self.codec.apply(tau, ((w as u64) << 6) | bit);
                        let slot = &mut bits[(img >> 6) as usize];
                        let mask = 1 << (img & 63);
                        if *slot & mask == 0 {
                            *slot |= mask;
                            added += 1;
                        }
                    }
                }
                self.len += added;
            }
            Members::Sparse(set) => {
                let new: Vec<u64> =
                    set.iter().map(|&c| self.codec.apply(tau, c)).filter(|c| !set.contains(c)).collect();
                for c in new {
                    if set.insert(c) {
                        self.len += 1;
                    }
                }
            }
        }
        self.len - before
    }

    /// Member codes in increasing (lexicographic tuple) order.
    pub fn codes(&self) -> Vec<u64> {
        match &self.members {
            Members::Dense(bits) => {
                let mut out = Vec::with_capacity(self.len as usize);
                for (w, &word) in bits.iter().enumerate() {
                    let mut word = word;
                    while word != 0 {
                        out.push(((w as u64) << 6) | u64::from(word.trailing_zeros()));
                        word &= word - 1;
                    }
                }
                out
            }
            Members::Sparse(set) => {
                let mut out: Vec<u64> = set.iter().copied().collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Members in lexicographic order.
    pub fn tuples(&self) -> Vec<CounterTuple> {
        self.codes().into_iter().map(|c| self.codec.decode(c)).collect()
    }
}

impl PartialEq for TupleSet {
    fn eq(&self, other: &Self) -> bool {
        self.codec == other.codec && self.len == other.len && self.codes() == other.codes()
    }
}

impl Eq for TupleSet {}

/// Exact probability mass over `t`-tuples. Only tuples with nonzero mass are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    codec: TupleCodec,
    mass: BTreeMap<u64, BigRational>,
}

impl Distribution {
    /// All mass on the starting tuple `(1, ..., t)`.
    pub fn point_at_start(codec: TupleCodec) -> Self {
        let start = codec.encode(&CounterTuple::start(codec.arity()));
        let mut mass = BTreeMap::new();
        mass.insert(start, BigRational::one());
        Self { codec, mass }
    }

    pub fn codec(&self) -> &TupleCodec {
        &self.codec
    }

    pub fn arity(&self) -> u32 {
        self.codec.arity()
    }

    pub fn get(&self, x: &CounterTuple) -> BigRational {
        self.mass.get(&self.codec.encode(x)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.mass.values().fold(BigRational::zero(), |acc, m| acc + m)
    }

    /// Number of tuples with nonzero mass.
    pub fn support_len(&self) -> usize {
        self.mass.len()
    }

    /// Nonzero entries in lexicographic tuple order.
    pub fn iter(&self) -> impl Iterator<Item = (CounterTuple, &BigRational)> + '_ {
        self.mass.iter().map(|(&c, m)| (self.codec.decode(c), m))
    }

    pub(crate) fn mass_by_code(&self) -> &BTreeMap<u64, BigRational> {
        &self.mass
    }

    /// Pushes the mass forward through one lazy transposition.
    pub fn apply(&mut self, step: &LazyTransposition) {
        let p = step.probability();
        if p.is_zero() {
            return;
        }
        let stay = BigRational::one() - p;
        let tau = step.pair();
        let mut next: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (&code, m) in &self.mass {
            let img = self.codec.apply(tau, code);
            if img == code {
                *next.entry(code).or_insert_with(BigRational::zero) += m;
                continue;
            }
            *next.entry(img).or_insert_with(BigRational::zero) += m * p;
            if !stay.is_zero() {
                *next.entry(code).or_insert_with(BigRational::zero) += m * &stay;
            }
        }
        next.retain(|_, m| !m.is_zero());
        self.mass = next;
    }
}
