//! Rules computed from the weighted majority graph: maximin, Copeland,
//! ranked pairs (with parallel-universe tie-breaking), and Schulze.

use std::collections::HashSet;

use num::{Signed, Zero};

use crate::majority::{Edge, WeightedMajorityGraph};
use crate::rules::TieBreakOrder;
use crate::{Error, Profile, Rat, Result};

/// Maximin: argmax over alternatives of the worst pairwise margin.
pub fn maximin_cowinners(profile: &Profile) -> Vec<u8> {
    let g = WeightedMajorityGraph::of(profile);
    maximin_on_graph(&g)
}

pub fn maximin_on_graph(g: &WeightedMajorityGraph) -> Vec<u8> {
    let m = g.m() as u8;
    let min_score = |a: u8| -> Rat {
        (1..=m)
            .filter(|&b| b != a)
            .map(|b| g.margin(a, b).clone())
            .min()
            .unwrap()
    };
    let scores: Vec<(u8, Rat)> = (1..=m).map(|a| (a, min_score(a))).collect();
    let best = scores.iter().map(|(_, v)| v).max().unwrap().clone();
    scores
        .into_iter()
        .filter(|(_, v)| *v == best)
        .map(|(a, _)| a)
        .collect()
}

/// Copeland with `alpha` points per pairwise tie.
pub fn copeland_cowinners(profile: &Profile, alpha: &Rat) -> Vec<u8> {
    let g = WeightedMajorityGraph::of(profile);
    copeland_on_graph(&g, alpha)
}

pub fn copeland_on_graph(g: &WeightedMajorityGraph, alpha: &Rat) -> Vec<u8> {
    let m = g.m() as u8;
    let score = |a: u8| -> Rat {
        let mut s = Rat::zero();
        for b in 1..=m {
            if b == a {
                continue;
            }
            match g.edge(a, b) {
                Edge::Beats => s += Rat::from_integer(1.into()),
                Edge::Tied => s += alpha,
                Edge::Loses => {}
            }
        }
        s
    };
    let scores: Vec<(u8, Rat)> = (1..=m).map(|a| (a, score(a))).collect();
    let best = scores.iter().map(|(_, v)| v).max().unwrap().clone();
    scores
        .into_iter()
        .filter(|(_, v)| *v == best)
        .map(|(a, _)| a)
        .collect()
}

// Directed edges considered by ranked pairs: every strictly positive margin,
// plus both orientations of exactly tied pairs (weight zero).
fn rp_edges(g: &WeightedMajorityGraph) -> Vec<(u8, u8, Rat)> {
    let m = g.m() as u8;
    let mut edges = Vec::new();
    for a in 1..=m {
        for b in 1..=m {
            if a == b {
                continue;
            }
            let w = g.margin(a, b);
            if w.is_positive() || (w.is_zero() && a < b) {
                edges.push((a, b, w.clone()));
                if w.is_zero() {
                    edges.push((b, a, Rat::zero()));
                }
            }
        }
    }
    edges
}

// Groups of edge indices sharing a weight, heaviest group first.
fn weight_groups(edges: &[(u8, u8, Rat)]) -> Vec<Vec<usize>> {
    let mut weights: Vec<Rat> = edges.iter().map(|(_, _, w)| w.clone()).collect();
    weights.sort();
    weights.dedup();
    weights.reverse();
    weights
        .into_iter()
        .map(|w| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, (_, _, ew))| *ew == w)
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

#[derive(Clone)]
struct Locked {
    m: usize,
    reach: Vec<bool>, // reach[a*m + b]: locked path a -> b (0-based)
}

impl Locked {
    fn new(m: usize) -> Self {
        Locked {
            m,
            reach: vec![false; m * m],
        }
    }

    fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a * self.m + b]
    }

    fn lock(&mut self, a: usize, b: usize) {
        let m = self.m;
        // New paths go x -> a -> b -> y.
        let mut srcs = vec![a];
        let mut dsts = vec![b];
        for x in 0..m {
            if self.reaches(x, a) {
                srcs.push(x);
            }
            if self.reaches(b, x) {
                dsts.push(x);
            }
        }
        for &x in &srcs {
            for &y in &dsts {
                self.reach[x * m + y] = true;
            }
        }
    }

    fn key(&self) -> Vec<u64> {
        let mut out = vec![0u64; (self.reach.len() + 63) / 64];
        for (i, &b) in self.reach.iter().enumerate() {
            if b {
                out[i / 64] |= (b as u64) << (i % 64);
            }
        }
        out
    }
}

/// Ranked pairs with parallel-universe tie-breaking: an alternative wins iff
/// some ordering of the tied edge groups leaves it with no incoming locked
/// edge. PUT state space is capped by `put_bound` on `m`.
pub fn ranked_pairs_cowinners(profile: &Profile, put_bound: usize) -> Result<Vec<u8>> {
    let m = profile.m();
    if m > put_bound {
        return Err(Error::BoundExceeded(format!(
            "ranked-pairs PUT search capped at m <= {put_bound} (got m = {m}); \
             use the resolute mode instead"
        )));
    }
    let g = WeightedMajorityGraph::of(profile);
    let edges = rp_edges(&g);
    let groups = weight_groups(&edges);

    let mut winners: HashSet<u8> = HashSet::new();
    let mut seen: HashSet<(usize, u64, Vec<u64>)> = HashSet::new();
    // in-degree bitmask of locked edges per alternative accumulates in `incoming`.
    fn dfs(
        m: usize,
        edges: &[(u8, u8, Rat)],
        groups: &[Vec<usize>],
        gi: usize,
        remaining: u64,
        locked: &Locked,
        incoming: u32,
        winners: &mut HashSet<u8>,
        seen: &mut HashSet<(usize, u64, Vec<u64>)>,
    ) {
        if remaining == 0 {
            if gi + 1 >= groups.len() {
                for a in 0..m {
                    if incoming & (1 << a) == 0 {
                        winners.insert(a as u8 + 1);
                    }
                }
                return;
            }
            let next_remaining = groups[gi + 1].iter().fold(0u64, |acc, &e| acc | (1 << e));
            dfs(
                m, edges, groups, gi + 1, next_remaining, locked, incoming, winners, seen,
            );
            return;
        }
        if !seen.insert((gi, remaining, locked.key())) {
            return;
        }
        let mut es = remaining;
        while es != 0 {
            let e = es.trailing_zeros() as usize;
            es &= es - 1;
            let (a, b, _) = &edges[e];
            let (ai, bi) = (*a as usize - 1, *b as usize - 1);
            let rem = remaining & !(1u64 << e);
            if locked.reaches(bi, ai) {
                // Fixing this edge would close a cycle; it is skipped in
                // every universe that considers it now.
                dfs(m, edges, groups, gi, rem, locked, incoming, winners, seen);
            } else {
                let mut next = locked.clone();
                next.lock(ai, bi);
                dfs(
                    m,
                    edges,
                    groups,
                    gi,
                    rem,
                    &next,
                    incoming | (1 << bi),
                    winners,
                    seen,
                );
            }
        }
    }

    if groups.is_empty() {
        return Ok((1..=m as u8).collect());
    }
    let first_remaining = groups[0].iter().fold(0u64, |acc, &e| acc | (1 << e));
    dfs(
        m,
        &edges,
        &groups,
        0,
        first_remaining,
        &Locked::new(m),
        0,
        &mut winners,
        &mut seen,
    );
    let mut out: Vec<u8> = winners.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Deterministic ranked pairs: edges sorted by weight, ties within a group
/// broken by the tie-break positions of (source, target). One universe.
pub fn resolute_ranked_pairs(profile: &Profile, tiebreak: &TieBreakOrder) -> u8 {
    let m = profile.m();
    let g = WeightedMajorityGraph::of(profile);
    let mut edges = rp_edges(&g);
    edges.sort_by(|(a1, b1, w1), (a2, b2, w2)| {
        w2.cmp(w1)
            .then_with(|| tiebreak.rank(*a1).cmp(&tiebreak.rank(*a2)))
            .then_with(|| tiebreak.rank(*b1).cmp(&tiebreak.rank(*b2)))
    });
    let mut locked = Locked::new(m);
    let mut incoming = vec![false; m];
    for (a, b, _) in edges {
        let (ai, bi) = (a as usize - 1, b as usize - 1);
        if !locked.reaches(bi, ai) {
            locked.lock(ai, bi);
            incoming[bi] = true;
        }
    }
    let sources: Vec<u8> = (0..m)
        .filter(|&i| !incoming[i])
        .map(|i| i as u8 + 1)
        .collect();
    // A source always exists because locked edges form a DAG.
    tiebreak.first(&sources)
}

/// Schulze: beats-or-ties by strongest path strength.
pub fn schulze_cowinners(profile: &Profile) -> Vec<u8> {
    let g = WeightedMajorityGraph::of(profile);
    schulze_on_graph(&g)
}

pub fn schulze_on_graph(g: &WeightedMajorityGraph) -> Vec<u8> {
    let m = g.m();
    let mut s: Vec<Vec<Rat>> = (1..=m as u8)
        .map(|a| (1..=m as u8).map(|b| g.margin(a, b).clone()).collect())
        .collect();
    for k in 0..m {
        for a in 0..m {
            if a == k {
                continue;
            }
            for b in 0..m {
                if b == a || b == k {
                    continue;
                }
                let through = s[a][k].clone().min(s[k][b].clone());
                if through > s[a][b] {
                    s[a][b] = through;
                }
            }
        }
    }
    (0..m)
        .filter(|&a| (0..m).all(|b| b == a || s[a][b] >= s[b][a]))
        .map(|a| a as u8 + 1)
        .collect()
}
