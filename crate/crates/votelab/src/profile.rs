//! Weighted preference profiles and their histograms.

use std::collections::BTreeMap;

use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ranking::factorial;
use crate::{Error, Rat, Ranking, Result};

/// A weighted multiset of rankings over `1..=m` with exact nonnegative
/// rational weights. Voter identity is never tracked; every rule evaluated
/// here is anonymous.
///
/// Integer profiles (all weights integral) are the sampling/axiom domain;
/// fractional weights arise when a distribution is viewed as a profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    weights: BTreeMap<Ranking, Rat>,
}

impl Profile {
    pub fn new(m: usize) -> Self {
        Profile {
            m,
            weights: BTreeMap::new(),
        }
    }

    pub fn from_votes(m: usize, votes: &[(Ranking, Rat)]) -> Result<Self> {
        let mut p = Profile::new(m);
        for (r, w) in votes {
            p.add(r.clone(), w.clone())?;
        }
        Ok(p)
    }

    /// Adds `weight` votes of ranking `r`, merging with any existing weight.
    pub fn add(&mut self, r: Ranking, weight: Rat) -> Result<()> {
        if r.m() != self.m {
            return Err(Error::InvalidProfile(format!(
                "ranking over {} alternatives added to profile over {}",
                r.m(),
                self.m
            )));
        }
        if weight.is_negative() {
            return Err(Error::InvalidProfile("negative weight".into()));
        }
        if weight.is_zero() {
            return Ok(());
        }
        *self.weights.entry(r).or_insert_with(Rat::zero) += weight;
        Ok(())
    }

    /// Adds `count` integer votes of ranking `r`.
    pub fn add_int(&mut self, r: Ranking, count: u64) -> Result<()> {
        self.add(r, Rat::from_integer(count.into()))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> Rat {
        self.weights.values().fold(Rat::zero(), |acc, w| acc + w)
    }

    pub fn weight(&self, r: &Ranking) -> Rat {
        self.weights.get(r).cloned().unwrap_or_else(Rat::zero)
    }

    /// Distinct rankings with strictly positive weight, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (&Ranking, &Rat)> {
        self.weights.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_integer(&self) -> bool {
        self.weights.values().all(|w| w.is_integer())
    }

    /// Removes one unit of ranking `r`. Errors if less than one unit present.
    pub fn remove_one(&self, r: &Ranking) -> Result<Profile> {
        let w = self.weight(r);
        if w < crate::rat(1) {
            return Err(Error::InvalidProfile(format!(
                "cannot remove a {r} vote: weight is {w}"
            )));
        }
        let mut out = self.clone();
        let left = w - crate::rat(1);
        if left.is_zero() {
            out.weights.remove(r);
        } else {
            out.weights.insert(r.clone(), left);
        }
        Ok(out)
    }

    /// Pointwise sum of two profiles over the same alternatives.
    pub fn merge(&self, other: &Profile) -> Result<Profile> {
        if self.m != other.m {
            return Err(Error::InvalidProfile("mismatched m".into()));
        }
        let mut out = self.clone();
        for (r, w) in other.support() {
            out.add(r.clone(), w.clone())?;
        }
        Ok(out)
    }

    /// Scales all weights by a nonnegative integer factor.
    pub fn scaled(&self, k: u64) -> Profile {
        let f = Rat::from_integer(BigInt::from(k));
        let mut out = Profile::new(self.m);
        if k == 0 {
            return out;
        }
        for (r, w) in self.support() {
            out.weights.insert(r.clone(), w.clone() * &f);
        }
        out
    }

    /// Total weight of votes preferring `a` to `b`.
    pub fn weight_preferring(&self, a: u8, b: u8) -> Rat {
        self.weights
            .iter()
            .filter(|(r, _)| r.prefers(a, b))
            .fold(Rat::zero(), |acc, (_, w)| acc + w)
    }

    /// Projects every ranking onto `alive` and merges weights.
    ///
    /// Alternative ids are preserved, so the result is a profile over a
    /// relabeled view: rankings are over the ids in `alive` but `m` becomes
    /// `alive.len()` with ids compacted in ascending-id order.
    pub fn restrict(&self, alive: &[u8]) -> Result<Profile> {
        if alive.is_empty() {
            return Err(Error::InvalidProfile("empty restriction set".into()));
        }
        let mut sorted = alive.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != alive.len() {
            return Err(Error::InvalidProfile("duplicate ids in restriction".into()));
        }
        for &a in &sorted {
            if a == 0 || a as usize > self.m {
                return Err(Error::InvalidProfile(format!("id {a} out of range")));
            }
        }
        // id -> compacted id 1..=k
        let relabel = |a: u8| (sorted.iter().position(|&x| x == a).unwrap() + 1) as u8;
        let mut out = Profile::new(sorted.len());
        for (r, w) in self.support() {
            let proj: Vec<u8> = r.restrict(&sorted).iter().map(|&a| relabel(a)).collect();
            out.add(Ranking::new(proj)?, w.clone())?;
        }
        Ok(out)
    }

    /// Applies an alternative relabeling `a -> sigma[a-1]`.
    pub fn relabel(&self, sigma: &[u8]) -> Result<Profile> {
        let mut out = Profile::new(self.m);
        for (r, w) in self.support() {
            out.add(r.relabel(sigma), w.clone())?;
        }
        Ok(out)
    }

    pub fn histogram(&self) -> Histogram {
        let mut entries = vec![Rat::zero(); factorial(self.m) as usize];
        for (r, w) in self.support() {
            entries[r.index() as usize] += w;
        }
        Histogram {
            m: self.m,
            entries,
        }
    }

    pub fn from_histogram(h: &Histogram) -> Result<Profile> {
        let mut p = Profile::new(h.m);
        for (i, w) in h.entries.iter().enumerate() {
            if !w.is_zero() {
                p.add(Ranking::from_index(h.m, i as u64)?, w.clone())?;
            }
        }
        Ok(p)
    }

    /// Serializes in the line format `<weight>: a1>a2>...>am`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (r, w) in self.support() {
            out.push_str(&format!("{}: {}\n", fmt_rat(w), r));
        }
        out
    }

    /// Parses the line format. `#`-prefixed lines and blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Profile> {
        let mut votes: Vec<(Ranking, Rat)> = Vec::new();
        let mut m = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (w_str, r_str) = line.split_once(':').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `<weight>: ranking`", lineno + 1))
            })?;
            let w = parse_rat(w_str.trim())
                .ok_or_else(|| Error::Parse(format!("line {}: bad weight", lineno + 1)))?;
            if w.is_negative() {
                return Err(Error::Parse(format!("line {}: negative weight", lineno + 1)));
            }
            let r = Ranking::parse(r_str.trim())?;
            if m == 0 {
                m = r.m();
            } else if r.m() != m {
                return Err(Error::Parse(format!(
                    "line {}: ranking length {} differs from {}",
                    lineno + 1,
                    r.m(),
                    m
                )));
            }
            votes.push((r, w));
        }
        if m == 0 {
            return Err(Error::Parse("no rankings found".into()));
        }
        Profile::from_votes(m, &votes)
    }
}

/// A length-`m!` exact rational vector in canonical ranking-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub m: usize,
    pub entries: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct HistogramJson {
    m: usize,
    entries: Vec<String>,
}

impl Histogram {
    pub fn zero(m: usize) -> Self {
        Histogram {
            m,
            entries: vec![Rat::zero(); factorial(m) as usize],
        }
    }

    pub fn l1(&self) -> Rat {
        self.entries.iter().fold(Rat::zero(), |acc, e| acc + e)
    }

    /// Projects onto `alive`: the histogram of the restricted profile.
    pub fn restrict(&self, alive: &[u8]) -> Result<Histogram> {
        Ok(Profile::from_histogram(self)?.restrict(alive)?.histogram())
    }

    pub fn to_json(&self) -> String {
        let j = HistogramJson {
            m: self.m,
            entries: self.entries.iter().map(fmt_rat).collect(),
        };
        serde_json::to_string(&j).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Histogram> {
        let j: HistogramJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.entries.len() != factorial(j.m) as usize {
            return Err(Error::Parse(format!(
                "histogram for m={} must have {} entries",
                j.m,
                factorial(j.m)
            )));
        }
        let entries = j
            .entries
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| Error::Parse(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Histogram { m: j.m, entries })
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(p))
    }
}
