//! Integer-arithmetic rule evaluation on count histograms.
//!
//! The Monte Carlo estimator evaluates millions of small integer profiles;
//! routing those through `BigRational` would dominate the runtime. Counts,
//! margins, and scores of integer profiles are integers, so `i64` arithmetic
//! is exact here — ties are still decided by exact comparison, never by
//! tolerance. Equivalence with the rational reference implementation is
//! enforced by tests.

use crate::rules::{RuleSpec, TieBreakOrder};
use crate::{Error, Profile, Ranking, Result};

/// Precomputed ranking tables for a fixed `m`.
pub struct RankTables {
    pub m: usize,
    /// `orders[r]` is the ranking with canonical index `r`.
    pub orders: Vec<Vec<u8>>,
    /// `pos[r * m + (a-1)]` is the 0-based position of `a` in ranking `r`.
    pub pos: Vec<u8>,
}

impl RankTables {
    pub fn new(m: usize) -> Self {
        assert!(m >= 2 && m <= 8, "fast path supports 2 <= m <= 8");
        let all = Ranking::all(m);
        let mut pos = vec![0u8; all.len() * m];
        let orders: Vec<Vec<u8>> = all
            .iter()
            .map(|r| {
                let o = r.order().to_vec();
                for (p, &a) in o.iter().enumerate() {
                    pos[r.index() as usize * m + (a as usize - 1)] = p as u8;
                }
                o
            })
            .collect();
        RankTables { m, orders, pos }
    }

    #[inline]
    pub fn position(&self, ranking: usize, a: u8) -> usize {
        self.pos[ranking * self.m + (a as usize - 1)] as usize
    }

    pub fn count(&self) -> usize {
        self.orders.len()
    }
}

/// Compiled rule for count-histogram evaluation.
#[derive(Debug, Clone)]
pub enum FastRule {
    Scoring(Vec<i64>),
    Mrse(Vec<Vec<i64>>),
    Maximin,
    /// Copeland score compared as `wins * den + ties * num` (alpha = num/den).
    Copeland { num: i64, den: i64 },
    RankedPairs,
    Schulze,
    Condorcetified(Vec<i64>),
}

impl FastRule {
    pub fn compile(spec: &RuleSpec, m: usize) -> Result<FastRule> {
        Ok(match spec {
            RuleSpec::Plurality | RuleSpec::Borda | RuleSpec::Veto | RuleSpec::Scoring(_) => {
                FastRule::Scoring(spec.scoring_vector(m)?)
            }
            RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_) => {
                FastRule::Mrse(spec.mrse_vectors(m)?)
            }
            RuleSpec::Maximin => FastRule::Maximin,
            RuleSpec::Copeland(alpha) => {
                let num = i64::try_from(alpha.numer().clone())
                    .map_err(|_| Error::InvalidRule("copeland alpha too large".into()))?;
                let den = i64::try_from(alpha.denom().clone())
                    .map_err(|_| Error::InvalidRule("copeland alpha too large".into()))?;
                FastRule::Copeland { num, den }
            }
            RuleSpec::RankedPairs => FastRule::RankedPairs,
            RuleSpec::Schulze => FastRule::Schulze,
            RuleSpec::Black => FastRule::Condorcetified(RuleSpec::Borda.scoring_vector(m)?),
            RuleSpec::Condorcetified(s) => {
                crate::rules::validate_scoring(s)?;
                FastRule::Condorcetified(s.clone())
            }
        })
    }
}

/// Pairwise margin matrix (`m x m`, row-major, 0-based) of a count histogram.
pub fn margins(tables: &RankTables, counts: &[u32]) -> Vec<i64> {
    let m = tables.m;
    let mut w = vec![0i64; m * m];
    for (r, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c as i64;
        let order = &tables.orders[r];
        for i in 0..m {
            for j in i + 1..m {
                let a = order[i] as usize - 1;
                let b = order[j] as usize - 1;
                w[a * m + b] += c;
                w[b * m + a] -= c;
            }
        }
    }
    w
}

/// The Condorcet winner (1-based) of a margin matrix, if any.
pub fn condorcet_winner(m: usize, w: &[i64]) -> Option<u8> {
    (0..m)
        .find(|&a| (0..m).all(|b| b == a || w[a * m + b] > 0))
        .map(|a| a as u8 + 1)
}

pub fn condorcet_loser(m: usize, w: &[i64]) -> Option<u8> {
    (0..m)
        .find(|&a| (0..m).all(|b| b == a || w[a * m + b] < 0))
        .map(|a| a as u8 + 1)
}

fn scoring_tallies(tables: &RankTables, counts: &[u32], alive: &[u8], s: &[i64]) -> Vec<i64> {
    let mut t = vec![0i64; alive.len()];
    for (r, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c as i64;
        // Rank among alive = number of alive alternatives placed earlier.
        for (slot, &a) in alive.iter().enumerate() {
            let pa = tables.position(r, a);
            let rank = alive
                .iter()
                .filter(|&&b| tables.position(r, b) < pa)
                .count();
            t[slot] += c * s[rank];
        }
    }
    t
}

pub fn scoring_cowinners(tables: &RankTables, counts: &[u32], s: &[i64]) -> Vec<u8> {
    let alive: Vec<u8> = (1..=tables.m as u8).collect();
    let t = scoring_tallies(tables, counts, &alive, s);
    let best = *t.iter().max().unwrap();
    alive
        .iter()
        .zip(&t)
        .filter(|(_, &v)| v == best)
        .map(|(&a, _)| a)
        .collect()
}

/// MRSE co-winners by parallel-universe search, memoized on the alive set.
pub fn mrse_cowinners(tables: &RankTables, counts: &[u32], vectors: &[Vec<i64>]) -> Vec<u8> {
    let m = tables.m;
    let mut memo: Vec<Option<u16>> = vec![None; 1 << m];
    let full: u16 = ((1u32 << m) - 1) as u16;
    let set = winners_mask(tables, counts, vectors, full, &mut memo);
    (1..=m as u8).filter(|&a| set & (1 << (a - 1)) != 0).collect()
}

fn winners_mask(
    tables: &RankTables,
    counts: &[u32],
    vectors: &[Vec<i64>],
    alive_mask: u16,
    memo: &mut Vec<Option<u16>>,
) -> u16 {
    if let Some(hit) = memo[alive_mask as usize] {
        return hit;
    }
    let alive: Vec<u8> = (1..=tables.m as u8)
        .filter(|&a| alive_mask & (1 << (a - 1)) != 0)
        .collect();
    if alive.len() == 1 {
        memo[alive_mask as usize] = Some(alive_mask);
        return alive_mask;
    }
    let s = &vectors[alive.len() - 2];
    let t = scoring_tallies(tables, counts, &alive, s);
    let worst = *t.iter().min().unwrap();
    let mut out: u16 = 0;
    for (slot, &a) in alive.iter().enumerate() {
        if t[slot] == worst {
            let rest = alive_mask & !(1 << (a - 1));
            out |= winners_mask(tables, counts, vectors, rest, memo);
        }
    }
    memo[alive_mask as usize] = Some(out);
    out
}

/// Resolute MRSE: eliminates the tiebreak-last tied loser each round.
pub fn resolute_mrse(
    tables: &RankTables,
    counts: &[u32],
    vectors: &[Vec<i64>],
    tiebreak: &TieBreakOrder,
) -> u8 {
    let mut alive: Vec<u8> = (1..=tables.m as u8).collect();
    while alive.len() > 1 {
        let s = &vectors[alive.len() - 2];
        let t = scoring_tallies(tables, counts, &alive, s);
        let worst = *t.iter().min().unwrap();
        let losers: Vec<u8> = alive
            .iter()
            .zip(&t)
            .filter(|(_, &v)| v == worst)
            .map(|(&a, _)| a)
            .collect();
        let out = tiebreak.last(&losers);
        alive.retain(|&a| a != out);
    }
    alive[0]
}

pub fn maximin_cowinners(m: usize, w: &[i64]) -> Vec<u8> {
    let score = |a: usize| (0..m).filter(|&b| b != a).map(|b| w[a * m + b]).min().unwrap();
    let scores: Vec<i64> = (0..m).map(score).collect();
    let best = *scores.iter().max().unwrap();
    (0..m)
        .filter(|&a| scores[a] == best)
        .map(|a| a as u8 + 1)
        .collect()
}

pub fn copeland_cowinners(m: usize, w: &[i64], num: i64, den: i64) -> Vec<u8> {
    let score = |a: usize| -> i64 {
        let mut s = 0i64;
        for b in 0..m {
            if b == a {
                continue;
            }
            if w[a * m + b] > 0 {
                s += den;
            } else if w[a * m + b] == 0 {
                s += num;
            }
        }
        s
    };
    let scores: Vec<i64> = (0..m).map(score).collect();
    let best = *scores.iter().max().unwrap();
    (0..m)
        .filter(|&a| scores[a] == best)
        .map(|a| a as u8 + 1)
        .collect()
}

pub fn schulze_cowinners(m: usize, w: &[i64]) -> Vec<u8> {
    let mut s: Vec<i64> = w.to_vec();
    for k in 0..m {
        for a in 0..m {
            if a == k {
                continue;
            }
            for b in 0..m {
                if b == a || b == k {
                    continue;
                }
                let through = s[a * m + k].min(s[k * m + b]);
                if through > s[a * m + b] {
                    s[a * m + b] = through;
                }
            }
        }
    }
    (0..m)
        .filter(|&a| (0..m).all(|b| b == a || s[a * m + b] >= s[b * m + a]))
        .map(|a| a as u8 + 1)
        .collect()
}

/// Deterministic ranked pairs on integer margins.
pub fn resolute_ranked_pairs(m: usize, w: &[i64], tiebreak: &TieBreakOrder) -> u8 {
    let mut edges: Vec<(u8, u8, i64)> = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let weight = w[a * m + b];
            if weight > 0 || (weight == 0 && a < b) {
                edges.push((a as u8 + 1, b as u8 + 1, weight));
                if weight == 0 {
                    edges.push((b as u8 + 1, a as u8 + 1, 0));
                }
            }
        }
    }
    edges.sort_by(|(a1, b1, w1), (a2, b2, w2)| {
        w2.cmp(w1)
            .then_with(|| tiebreak.rank(*a1).cmp(&tiebreak.rank(*a2)))
            .then_with(|| tiebreak.rank(*b1).cmp(&tiebreak.rank(*b2)))
    });
    // reach[a] = bitmask of nodes reachable from a along locked edges
    let mut reach: Vec<u16> = (0..m).map(|a| 1u16 << a).collect();
    let mut incoming: u16 = 0;
    for (a, b, _) in edges {
        let (ai, bi) = (a as usize - 1, b as usize - 1);
        if reach[bi] & (1 << ai) != 0 {
            continue; // would close a cycle
        }
        incoming |= 1 << bi;
        let target = reach[bi];
        for r in reach.iter_mut() {
            if *r & (1 << ai) != 0 {
                *r |= target;
            }
        }
    }
    let sources: Vec<u8> = (0..m)
        .filter(|&i| incoming & (1 << i) == 0)
        .map(|i| i as u8 + 1)
        .collect();
    tiebreak.first(&sources)
}

/// Resolute winner under a compiled rule.
pub fn resolve(
    tables: &RankTables,
    counts: &[u32],
    rule: &FastRule,
    tiebreak: &TieBreakOrder,
) -> u8 {
    let m = tables.m;
    if counts.iter().all(|&c| c == 0) {
        return tiebreak.first(&(1..=m as u8).collect::<Vec<_>>());
    }
    match rule {
        FastRule::Scoring(s) => tiebreak.first(&scoring_cowinners(tables, counts, s)),
        FastRule::Mrse(vectors) => resolute_mrse(tables, counts, vectors, tiebreak),
        FastRule::Maximin => tiebreak.first(&maximin_cowinners(m, &margins(tables, counts))),
        FastRule::Copeland { num, den } => {
            tiebreak.first(&copeland_cowinners(m, &margins(tables, counts), *num, *den))
        }
        FastRule::RankedPairs => resolute_ranked_pairs(m, &margins(tables, counts), tiebreak),
        FastRule::Schulze => tiebreak.first(&schulze_cowinners(m, &margins(tables, counts))),
        FastRule::Condorcetified(s) => {
            let w = margins(tables, counts);
            match condorcet_winner(m, &w) {
                Some(c) => c,
                None => tiebreak.first(&scoring_cowinners(tables, counts, s)),
            }
        }
    }
}

/// Irresolute co-winners under a compiled rule (ranked pairs uses the
/// deterministic resolute path here; the estimator never needs PUT ranked
/// pairs because the rule is Condorcet-consistent).
pub fn cowinners(tables: &RankTables, counts: &[u32], rule: &FastRule) -> Vec<u8> {
    let m = tables.m;
    match rule {
        FastRule::Scoring(s) => scoring_cowinners(tables, counts, s),
        FastRule::Mrse(vectors) => mrse_cowinners(tables, counts, vectors),
        FastRule::Maximin => maximin_cowinners(m, &margins(tables, counts)),
        FastRule::Copeland { num, den } => {
            copeland_cowinners(m, &margins(tables, counts), *num, *den)
        }
        FastRule::RankedPairs | FastRule::Schulze => schulze_like(tables, counts, rule),
        FastRule::Condorcetified(s) => {
            let w = margins(tables, counts);
            match condorcet_winner(m, &w) {
                Some(c) => vec![c],
                None => scoring_cowinners(tables, counts, s),
            }
        }
    }
}

fn schulze_like(tables: &RankTables, counts: &[u32], rule: &FastRule) -> Vec<u8> {
    let m = tables.m;
    let w = margins(tables, counts);
    match rule {
        FastRule::Schulze => schulze_cowinners(m, &w),
        // Condorcet-consistent; when no Condorcet winner exists callers that
        // need the full PUT set must use the rational path.
        FastRule::RankedPairs => match condorcet_winner(m, &w) {
            Some(c) => vec![c],
            None => panic!("PUT ranked-pairs co-winners are not on the fast path"),
        },
        _ => unreachable!(),
    }
}

/// Condorcet criterion on counts (irresolute path).
pub fn sat_cc(tables: &RankTables, counts: &[u32], rule: &FastRule) -> bool {
    let m = tables.m;
    let w = margins(tables, counts);
    let Some(cw) = condorcet_winner(m, &w) else {
        return true;
    };
    match rule {
        // Condorcet-consistent rules never fail.
        FastRule::Maximin
        | FastRule::Copeland { .. }
        | FastRule::RankedPairs
        | FastRule::Schulze
        | FastRule::Condorcetified(_) => true,
        _ => cowinners(tables, counts, rule).contains(&cw),
    }
}

/// Participation on counts (resolute path). Removal is evaluated in place by
/// decrementing each present ranking once.
pub fn sat_par(
    tables: &RankTables,
    counts: &mut [u32],
    rule: &FastRule,
    tiebreak: &TieBreakOrder,
) -> bool {
    let with_vote = resolve(tables, counts, rule, tiebreak);
    for r in 0..counts.len() {
        if counts[r] == 0 {
            continue;
        }
        counts[r] -= 1;
        let without_vote = resolve(tables, counts, rule, tiebreak);
        counts[r] += 1;
        if without_vote != with_vote
            && tables.position(r, without_vote) < tables.position(r, with_vote)
        {
            return false;
        }
    }
    true
}

/// Converts counts to the rational [`Profile`] representation.
pub fn to_profile(tables: &RankTables, counts: &[u32]) -> Profile {
    let m = tables.m;
    let mut p = Profile::new(m);
    for (r, &c) in counts.iter().enumerate() {
        if c > 0 {
            p.add_int(Ranking::from_index(m, r as u64).unwrap(), c as u64)
                .unwrap();
        }
    }
    p
}
