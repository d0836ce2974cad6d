//! Linear orders over alternatives and their canonical indexing.

use crate::{Error, Result};

/// A strict linear order over the alternatives `1..=m`, top to bottom.
///
/// The canonical index of a ranking is the lexicographic rank of its
/// permutation word, so for `m = 3` the order runs
/// `[1,2,3], [1,3,2], [2,1,3], [2,3,1], [3,1,2], [3,2,1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking {
    order: Vec<u8>,
}

/// Largest `m` for which `m!` fits comfortably in `u64` index arithmetic.
pub const MAX_INDEXED_M: usize = 20;

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

impl Ranking {
    /// Builds a ranking from a top-to-bottom sequence of alternative ids.
    pub fn new(order: Vec<u8>) -> Result<Self> {
        let m = order.len();
        if m == 0 {
            return Err(Error::InvalidRanking("empty order".into()));
        }
        let mut seen = vec![false; m + 1];
        for &a in &order {
            if a == 0 || a as usize > m || seen[a as usize] {
                return Err(Error::InvalidRanking(format!(
                    "{order:?} is not a permutation of 1..={m}"
                )));
            }
            seen[a as usize] = true;
        }
        Ok(Ranking { order })
    }

    /// The identity ranking `1 > 2 > ... > m`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (1..=m as u8).collect(),
        }
    }

    /// Reconstructs the ranking with canonical index `index` for `m` alternatives.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        if m == 0 || m > MAX_INDEXED_M {
            return Err(Error::InvalidRanking(format!("unsupported m = {m}")));
        }
        if index >= factorial(m) {
            return Err(Error::InvalidRanking(format!(
                "index {index} out of range for m = {m}"
            )));
        }
        let mut pool: Vec<u8> = (1..=m as u8).collect();
        let mut order = Vec::with_capacity(m);
        let mut rem = index;
        for pos in 0..m {
            let block = factorial(m - pos - 1);
            let pick = (rem / block) as usize;
            rem %= block;
            order.push(pool.remove(pick));
        }
        Ok(Ranking { order })
    }

    /// Lexicographic rank of the permutation word.
    pub fn index(&self) -> u64 {
        let m = self.order.len();
        let mut idx = 0u64;
        for (pos, &a) in self.order.iter().enumerate() {
            let smaller_remaining = self.order[pos + 1..].iter().filter(|&&b| b < a).count() as u64;
            idx += smaller_remaining * factorial(m - pos - 1);
        }
        idx
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    /// Alternative ids from most to least preferred.
    pub fn order(&self) -> &[u8] {
        &self.order
    }

    /// The alternative in position `pos` (0-based, 0 = top).
    pub fn at(&self, pos: usize) -> u8 {
        self.order[pos]
    }

    pub fn top(&self) -> u8 {
        self.order[0]
    }

    pub fn bottom(&self) -> u8 {
        *self.order.last().unwrap()
    }

    /// 0-based position of alternative `a`.
    pub fn position(&self, a: u8) -> usize {
        self.order.iter().position(|&x| x == a).unwrap()
    }

    pub fn prefers(&self, a: u8, b: u8) -> bool {
        self.position(a) < self.position(b)
    }

    /// Full reversal of the order.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Ranking { order }
    }

    /// Projects onto `alive`, keeping both relative order and original ids.
    pub fn restrict(&self, alive: &[u8]) -> Vec<u8> {
        self.order
            .iter()
            .copied()
            .filter(|a| alive.contains(a))
            .collect()
    }

    /// Applies an alternative relabeling `a -> sigma[a-1]`.
    pub fn relabel(&self, sigma: &[u8]) -> Self {
        Ranking {
            order: self.order.iter().map(|&a| sigma[a as usize - 1]).collect(),
        }
    }

    /// All `m!` rankings in canonical index order.
    pub fn all(m: usize) -> Vec<Ranking> {
        let n = factorial(m);
        (0..n).map(|i| Ranking::from_index(m, i).unwrap()).collect()
    }

    /// Parses `a1>a2>...>am`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('>').map(str::trim).collect();
        let mut order = Vec::with_capacity(parts.len());
        for p in parts {
            let a: u8 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad alternative id {p:?}")))?;
            order.push(a);
        }
        Ranking::new(order)
    }
}

impl std::fmt::Display for Ranking {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.order.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(">"))
    }
}
