//! Deterministic generators for witness profiles: majority-graph
//! realizations, participation violations for six rule families, and
//! profiles separating the Condorcet winner from the scoring winner.
//!
//! Nothing here is trusted blindly: every generator re-verifies its output
//! with the independent rule/axiom machinery before returning it.

use num::Signed;

use crate::majority::WeightedMajorityGraph;
use crate::rules::{validate_scoring, RuleSpec, TieBreakOrder};
use crate::{rat, Error, Profile, Rat, Ranking, Result};

/// Desired integer margin table; antisymmetry is validated on construction.
#[derive(Debug, Clone)]
pub struct TargetWmg {
    m: usize,
    margins: Vec<Vec<i64>>,
}

impl TargetWmg {
    pub fn new(m: usize, margins: Vec<Vec<i64>>) -> Result<Self> {
        if margins.len() != m || margins.iter().any(|r| r.len() != m) {
            return Err(Error::Infeasible("margin table must be m x m".into()));
        }
        for a in 0..m {
            if margins[a][a] != 0 {
                return Err(Error::Infeasible("diagonal must be zero".into()));
            }
            for b in 0..m {
                if margins[a][b] != -margins[b][a] {
                    return Err(Error::Infeasible("margins must be antisymmetric".into()));
                }
            }
        }
        Ok(TargetWmg { m, margins })
    }

    /// Builds from a list of positive edges `(a, b, w)` meaning `w(a,b) = w`.
    pub fn from_edges(m: usize, edges: &[(u8, u8, i64)]) -> Result<Self> {
        let mut margins = vec![vec![0i64; m]; m];
        for &(a, b, w) in edges {
            let (ai, bi) = (a as usize - 1, b as usize - 1);
            margins[ai][bi] = w;
            margins[bi][ai] = -w;
        }
        TargetWmg::new(m, margins)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn margin(&self, a: u8, b: u8) -> i64 {
        self.margins[a as usize - 1][b as usize - 1]
    }

    /// Smallest total vote count that can realize the target with the
    /// matching parity.
    pub fn minimal_n(&self) -> u64 {
        let parity = self.margins[0][1].rem_euclid(2) as u64;
        let mut n = parity; // one base vote when margins are odd
        for a in 0..self.m {
            for b in a + 1..self.m {
                let base = if parity == 1 { 1 } else { 0 };
                n += (self.margins[a][b] - base).unsigned_abs();
            }
        }
        n
    }

    fn all_same_parity(&self) -> Option<i64> {
        let p = self.margins[0][1].rem_euclid(2);
        for a in 0..self.m {
            for b in 0..self.m {
                if a != b && self.margins[a][b].rem_euclid(2) != p {
                    return None;
                }
            }
        }
        Some(p)
    }
}

// The vote pair {a > b > rest ascending, reverse(rest) > a > b} shifts
// w(a,b) by +2 and leaves every other margin unchanged.
fn edge_pair(m: usize, a: u8, b: u8) -> (Ranking, Ranking) {
    let rest: Vec<u8> = (1..=m as u8).filter(|&x| x != a && x != b).collect();
    let mut head = vec![a, b];
    head.extend(&rest);
    let mut tail: Vec<u8> = rest.iter().rev().copied().collect();
    tail.push(a);
    tail.push(b);
    (Ranking::new(head).unwrap(), Ranking::new(tail).unwrap())
}

/// Realizes `target` exactly as the weighted majority graph of an
/// `n`-profile. All margins must share the parity of `n` and `n` must be at
/// least [`TargetWmg::minimal_n`]; excess votes are reversal pairs.
pub fn mcgarvey_profile(target: &TargetWmg, n: u64) -> Result<Profile> {
    let m = target.m;
    if m < 2 {
        return Err(Error::Infeasible("need m >= 2".into()));
    }
    let Some(margin_parity) = target.all_same_parity() else {
        return Err(Error::Infeasible(
            "all pairwise margins must share one parity".into(),
        ));
    };
    if n % 2 != margin_parity as u64 {
        return Err(Error::Infeasible(format!(
            "margins have parity {margin_parity}, so n must too (got n = {n})"
        )));
    }
    let min_n = target.minimal_n();
    if n < min_n {
        return Err(Error::Infeasible(format!(
            "target needs at least n = {min_n} votes (got n = {n})"
        )));
    }

    let mut profile = Profile::new(m);
    let base = if margin_parity == 1 {
        profile.add_int(Ranking::identity(m), 1)?;
        1i64
    } else {
        0i64
    };
    let mut used = margin_parity as u64;
    for a in 1..=m as u8 {
        for b in a + 1..=m as u8 {
            // The identity base vote contributes +1 to w(a,b) for a < b.
            let delta = target.margin(a, b) - base;
            let pairs = delta.unsigned_abs() / 2;
            if pairs == 0 {
                continue;
            }
            let (v1, v2) = if delta > 0 {
                edge_pair(m, a, b)
            } else {
                edge_pair(m, b, a)
            };
            profile.add_int(v1, pairs)?;
            profile.add_int(v2, pairs)?;
            used += 2 * pairs;
        }
    }
    // Padding: reversal pairs are margin-neutral.
    let pad = n - used;
    debug_assert_eq!(pad % 2, 0);
    if pad > 0 {
        profile.add_int(Ranking::identity(m), pad / 2)?;
        profile.add_int(Ranking::identity(m).reversed(), pad / 2)?;
    }

    let realized = WeightedMajorityGraph::of(&profile);
    for a in 1..=m as u8 {
        for b in 1..=m as u8 {
            if a != b && *realized.margin(a, b) != rat(target.margin(a, b)) {
                return Err(Error::Infeasible(format!(
                    "internal: realized margin w({a},{b}) = {} differs from target {}",
                    realized.margin(a, b),
                    target.margin(a, b)
                )));
            }
        }
    }
    debug_assert_eq!(profile.total(), rat(n as i64));
    Ok(profile)
}

fn ranking(head: &[u8], m: usize) -> Ranking {
    let mut order = head.to_vec();
    for x in 1..=m as u8 {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    Ranking::new(order).unwrap()
}

// Weighted graphs of the pairwise-rule constructions. `bump` is 1 for even
// n (all positive weights shifted up by one to fix parity).
fn pairwise_graph(family: &RuleSpec, m: usize, bump: i64) -> Result<TargetWmg> {
    let base: Vec<(u8, u8, i64)> = match family {
        RuleSpec::Maximin => vec![
            (4, 1, 5),
            (3, 2, 5),
            (1, 2, 1),
            (1, 3, 9),
            (2, 4, 13),
            (3, 4, 17),
        ],
        RuleSpec::RankedPairs => vec![
            (4, 1, 9),
            (3, 4, 9),
            (1, 2, 5),
            (1, 3, 13),
            (2, 4, 17),
            (2, 3, 21),
        ],
        RuleSpec::Schulze => vec![
            (4, 1, 9),
            (2, 3, 9),
            (1, 2, 13),
            (1, 3, 5),
            (2, 4, 1),
            (3, 4, 17),
        ],
        _ => unreachable!(),
    };
    let start = match family {
        RuleSpec::RankedPairs => 25,
        _ => 21,
    };
    let mut edges: Vec<(u8, u8, i64)> = base;
    let mut next = start;
    // The four named alternatives beat everyone else; remaining pairs are
    // oriented low -> high. Weights stay odd with gaps of four.
    for i in 5..=m as u8 {
        for a in 1..=4u8 {
            edges.push((a, i, next));
            next += 4;
        }
    }
    for i in 5..=m as u8 {
        for j in i + 1..=m as u8 {
            edges.push((i, j, next));
            next += 4;
        }
    }
    let edges: Vec<(u8, u8, i64)> =
        edges.into_iter().map(|(a, b, w)| (a, b, w + bump)).collect();
    TargetWmg::from_edges(m, &edges)
}

fn pairwise_witness_base(family: &RuleSpec, m: usize) -> Ranking {
    match family {
        RuleSpec::Maximin => ranking(&[3, 2, 1, 4], m),
        RuleSpec::RankedPairs | RuleSpec::Schulze => ranking(&[2, 3, 1, 4], m),
        _ => unreachable!(),
    }
}

/// Smallest supported `n` for [`par_violation_profile`] at the given parity.
pub fn par_violation_min_n(family: &RuleSpec, m: usize, even: bool) -> Result<u64> {
    if m < 4 {
        return Err(Error::Infeasible(
            "participation violations need m >= 4".into(),
        ));
    }
    match family {
        RuleSpec::Maximin | RuleSpec::RankedPairs | RuleSpec::Schulze => {
            let g = pairwise_graph(family, m, if even { 1 } else { 0 })?;
            Ok(g.minimal_n() + 2)
        }
        RuleSpec::Copeland(_) => {
            let g = copeland_graph_with_roles(family, m, 1, 2, 3)?;
            Ok(g.minimal_n() + if even { 1 } else { 2 })
        }
        RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_) => {
            let vectors = family.mrse_vectors(m)?;
            let star = mrse_star_profile(m, &vectors)?;
            let s3 = &vectors[1];
            let mult = crate::ranking::factorial(m) * (s3[0] - s3[2]).unsigned_abs();
            let copies = if even { mult } else { mult + 1 };
            Ok(copies * to_u64(&star.total()))
        }
        RuleSpec::Black | RuleSpec::Condorcetified(_) => {
            let s = condorcetified_vector(family, m)?;
            if s[1] == s[m - 1] {
                Ok(if even { 16 } else { 17 })
            } else {
                let star = condorcetified_star_profile(m, &s)?;
                let copies = (s[0] - s[m - 1] + 3).unsigned_abs();
                Ok(copies * to_u64(&star.total()) + if even { 0 } else { 1 })
            }
        }
        other => Err(Error::InvalidRule(format!(
            "no participation-violation construction for {other}"
        ))),
    }
}

fn to_u64(r: &Rat) -> u64 {
    debug_assert!(r.is_integer());
    r.numer().to_string().parse().unwrap()
}

/// Builds an `n`-profile where participation fails for the resolute
/// refinement of `family` under `tiebreak`, returning the profile and a
/// witness vote whose removal strictly improves the outcome for that voter.
/// The witness is re-verified by replay before returning.
pub fn par_violation_profile(
    family: &RuleSpec,
    m: usize,
    n: u64,
    tiebreak: &TieBreakOrder,
) -> Result<(Profile, Ranking)> {
    if m < 4 {
        return Err(Error::Infeasible(
            "participation violations need m >= 4".into(),
        ));
    }
    if tiebreak.m() != m {
        return Err(Error::InvalidRule("tie-break order has wrong length".into()));
    }
    let even = n % 2 == 0;
    let min_n = par_violation_min_n(family, m, even)?;
    if n < min_n {
        return Err(Error::Infeasible(format!(
            "family {family} at m = {m} needs n >= {min_n} with this parity (got {n})"
        )));
    }
    let (profile, witness) = match family {
        RuleSpec::Maximin | RuleSpec::RankedPairs | RuleSpec::Schulze => {
            let g = pairwise_graph(family, m, if even { 1 } else { 0 })?;
            let base = mcgarvey_profile(&g, n - 2)?;
            let b = pairwise_witness_base(family, m);
            let mut p = base;
            p.add_int(b.clone(), 1)?;
            p.add_int(b.reversed(), 1)?;
            let w0 = family.resolve(&p, tiebreak)?;
            // The pre-removal co-winners straddle the tied edge; the base
            // vote flips the tie against the lower-indexed one, its reverse
            // against the other.
            let witness = if w0 == 1 { b } else { b.reversed() };
            (p, witness)
        }
        RuleSpec::Copeland(_) => copeland_violation(family, m, n, tiebreak)?,
        RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_) => {
            mrse_violation(family, m, n, tiebreak)?
        }
        RuleSpec::Black | RuleSpec::Condorcetified(_) => {
            condorcetified_violation(family, m, n)?
        }
        other => {
            return Err(Error::InvalidRule(format!(
                "no participation-violation construction for {other}"
            )))
        }
    };

    // Independent replay: the stated witness must reproduce a strict
    // improvement for the abstainer.
    let w0 = family.resolve(&profile, tiebreak)?;
    let removed = profile.remove_one(&witness)?;
    let w1 = family.resolve(&removed, tiebreak)?;
    if w1 == w0 || !witness.prefers(w1, w0) {
        return Err(Error::Infeasible(format!(
            "internal: witness replay failed for {family} (m={m}, n={n}): \
             winner {w0} -> {w1} under {witness}"
        )));
    }
    debug_assert_eq!(profile.total(), rat(n as i64));
    Ok((profile, witness))
}

// Copeland: a three-cycle among {1,2,3} dominating everyone else. For
// alpha > 0 the cycle edge s -> p carries weight one and its loss ties the
// pair, raising p past the old winner c; for alpha = 0 the weak edge is
// c -> 4 and its loss costs c a full point. Roles are rotated so that c is
// the tiebreak-first of {1,2,3}.
fn copeland_cycle_roles(tiebreak: &TieBreakOrder) -> (u8, u8, u8) {
    let c = tiebreak.first(&[1, 2, 3]);
    let succ = |x: u8| -> u8 { [2, 3, 1][x as usize - 1] };
    let s = succ(c);
    let p = succ(s);
    (c, s, p)
}

fn copeland_graph_with_roles(
    family: &RuleSpec,
    m: usize,
    c: u8,
    s: u8,
    p: u8,
) -> Result<TargetWmg> {
    let RuleSpec::Copeland(alpha) = family else {
        unreachable!()
    };
    let mut edges: Vec<(u8, u8, i64)> = Vec::new();
    if alpha.is_positive() {
        edges.push((c, s, 3));
        edges.push((s, p, 1));
        edges.push((p, c, 3));
        for x in [c, s, p] {
            for i in 4..=m as u8 {
                edges.push((x, i, 3));
            }
        }
    } else {
        edges.push((c, s, 3));
        edges.push((s, p, 3));
        edges.push((p, c, 3));
        edges.push((c, 4, 1));
        for x in [c, s, p] {
            for i in 4..=m as u8 {
                if !(x == c && i == 4) {
                    edges.push((x, i, 3));
                }
            }
        }
    }
    for i in 4..=m as u8 {
        for j in i + 1..=m as u8 {
            edges.push((i, j, 3));
        }
    }
    TargetWmg::from_edges(m, &edges)
}

fn copeland_violation(
    family: &RuleSpec,
    m: usize,
    n: u64,
    tiebreak: &TieBreakOrder,
) -> Result<(Profile, Ranking)> {
    let RuleSpec::Copeland(alpha) = family else {
        unreachable!()
    };
    let (c, s, p) = copeland_cycle_roles(tiebreak);
    let g = copeland_graph_with_roles(family, m, c, s, p)?;
    let b = if alpha.is_positive() {
        ranking(&[4, s, p, c], m)
    } else {
        ranking(&[p, s, c, 4], m)
    };
    if n % 2 == 1 {
        // Odd n: the graph itself plus the witness reversal pair.
        let mut profile = mcgarvey_profile(&g, n - 2)?;
        profile.add_int(b.clone(), 1)?;
        profile.add_int(b.reversed(), 1)?;
        Ok((profile, b))
    } else {
        // Even n: realize the graph on n-1 votes and add the reverse of the
        // witness; removing it restores the three-way tie and hands the win
        // back to c.
        let mut profile = mcgarvey_profile(&g, n - 1)?;
        let witness = b.reversed();
        profile.add_int(witness.clone(), 1)?;
        Ok((profile, witness))
    }
}

// ---- MRSE participation construction --------------------------------------

// The 8-vote block fixing the four-way standing 1 > 2 > {3,4}; alternatives
// outside {1,2,3,4} sit between the top choice and the tail.
fn mrse_p21(m: usize) -> Vec<(Ranking, u64)> {
    let mid: Vec<u8> = (5..=m as u8).collect();
    let with_mid = |top: u8, tail: &[u8]| -> Ranking {
        let mut o = vec![top];
        o.extend(&mid);
        o.extend(tail);
        Ranking::new(o).unwrap()
    };
    vec![
        (with_mid(1, &[3, 4, 2]), 1),
        (with_mid(1, &[4, 3, 2]), 1),
        (with_mid(1, &[2, 4, 3]), 3),
        (with_mid(2, &[1, 3, 4]), 3),
    ]
}

// An odd-size block keeping 3 and 4 exactly tied in the four-way round.
fn mrse_p22(m: usize, s4: &[i64]) -> Vec<(Ranking, u64)> {
    let d1 = s4[0] - s4[1];
    let d2 = s4[1] - s4[2];
    if d1 == 0 {
        vec![(ranking(&[3, 4, 1, 2], m), 1)]
    } else if d2 == 0 {
        vec![(ranking(&[1, 3, 4, 2], m), 1)]
    } else {
        let g = num::integer::gcd(d1, d2);
        let (d1p, d2p) = ((d1 / g).unsigned_abs(), (d2 / g).unsigned_abs());
        if d1p % 2 == 1 {
            vec![
                (ranking(&[1, 3, 4, 2], m), d1p + d2p),
                (ranking(&[4, 1, 3, 2], m), d2p),
            ]
        } else {
            vec![
                (ranking(&[3, 4, 1, 2], m), d1p + d2p),
                (ranking(&[4, 1, 3, 2], m), d1p),
            ]
        }
    }
}

// The 36-vote block deciding the last two rounds: if 3 leaves, 2 drops next
// and 1 beats 4; if 4 leaves, 1 drops next and 2 beats 3.
fn mrse_p3_star(m: usize) -> Vec<(Ranking, u64)> {
    let mut votes: Vec<(Ranking, u64)> = Vec::new();
    let heads = [
        [1, 2, 3, 4],
        [1, 3, 4, 2],
        [1, 4, 2, 3],
        [2, 1, 4, 3],
        [2, 4, 3, 1],
        [2, 3, 1, 4],
        [3, 1, 4, 2],
        [3, 4, 2, 1],
        [3, 2, 1, 4],
        [4, 1, 2, 3],
        [4, 2, 3, 1],
        [4, 3, 1, 2],
    ];
    for h in heads {
        votes.push((ranking(&h, m), 1));
    }
    // All 24 orders of {1,2,3,4}, with two of them swapped on the {1,2}
    // positions so 1 leads after 3 leaves and 2 leads after 4 leaves.
    for r in Ranking::all(4) {
        let o: Vec<u8> = r.order().to_vec();
        if o == [3, 2, 4, 1] || o == [4, 1, 3, 2] {
            continue;
        }
        votes.push((ranking(&o, m), 1));
    }
    votes.push((ranking(&[3, 1, 4, 2], m), 1));
    votes.push((ranking(&[4, 2, 3, 1], m), 1));
    votes
}

fn add_votes(profile: &mut Profile, votes: &[(Ranking, u64)], copies: u64) -> Result<()> {
    for (r, w) in votes {
        profile.add_int(r.clone(), w * copies)?;
    }
    Ok(())
}

fn votes_total(votes: &[(Ranking, u64)]) -> u64 {
    votes.iter().map(|(_, w)| w).sum()
}

// The constant-size core profile with the two-branch execution tree.
fn mrse_star_profile(m: usize, vectors: &[Vec<i64>]) -> Result<Profile> {
    let s4 = &vectors[2];
    let s3 = &vectors[1];
    let p21 = mrse_p21(m);
    let p22 = mrse_p22(m, s4);
    let p2_size = 8 * (votes_total(&p22) + 1) + votes_total(&p22);
    let p3_copies = (s3[0] - s3[2]).unsigned_abs() * p2_size + 1;

    let mut star = Profile::new(m);
    // For every extra alternative i >= 5, a block placing i last with the
    // rest uniform on top; decreasing weights make 5 the first loser, 6 the
    // second, and so on, under any round scoring vector. Sized to dominate
    // the interference of the four-way blocks and fillers.
    if m > 4 {
        let smax = vectors
            .iter()
            .map(|s| s[0] - s[s.len() - 1])
            .max()
            .unwrap()
            .unsigned_abs();
        let p3_size = 36 * p3_copies;
        let interference = (p2_size + p3_size + crate::ranking::factorial(m)) * (smax + 1);
        let fact_m2: u64 = crate::ranking::factorial(m - 2);
        let c_unit = interference / fact_m2 + 1;
        for i in 5..=m as u8 {
            let weight = (m as u64 - i as u64 + 1) * c_unit;
            let others: Vec<u8> = (1..=m as u8).filter(|&x| x != i).collect();
            for r in Ranking::all(m - 1) {
                let mut order: Vec<u8> =
                    r.order().iter().map(|&x| others[x as usize - 1]).collect();
                order.push(i);
                star.add_int(Ranking::new(order)?, weight)?;
            }
        }
    }
    add_votes(&mut star, &p21, votes_total(&p22) + 1)?;
    add_votes(&mut star, &p22, 1)?;
    add_votes(&mut star, &mrse_p3_star(m), p3_copies)?;
    Ok(star)
}

fn mrse_violation(
    family: &RuleSpec,
    m: usize,
    n: u64,
    tiebreak: &TieBreakOrder,
) -> Result<(Profile, Ranking)> {
    let vectors = family.mrse_vectors(m)?;
    let star = mrse_star_profile(m, &vectors)?;
    let star_size = to_u64(&star.total());
    let s3 = &vectors[1];
    let mult = crate::ranking::factorial(m) * (s3[0] - s3[2]).unsigned_abs();
    let copies = if n % 2 == 0 { mult } else { mult + 1 };
    let n1 = copies * star_size;
    if n < n1 {
        return Err(Error::Infeasible(format!(
            "MRSE construction needs n >= {n1} at this parity"
        )));
    }

    let mut profile = Profile::new(m);
    for (r, w) in star.support() {
        profile.add(r.clone(), w * rat(copies as i64))?;
    }
    let fact = crate::ranking::factorial(m);
    let uniform_copies = (n - n1) / fact;
    if uniform_copies > 0 {
        for r in Ranking::all(m) {
            profile.add_int(r, uniform_copies)?;
        }
    }
    let rem = n - n1 - uniform_copies * fact;
    debug_assert_eq!(rem % 2, 0);
    if rem > 0 {
        profile.add_int(ranking(&[1, 2, 3, 4], m), rem / 2)?;
        profile.add_int(ranking(&[2, 1, 4, 3], m), rem / 2)?;
    }

    // Structural check: the parallel universes split exactly on the 3/4 tie.
    let cowinners = family.cowinners_bounded(&profile, m.max(8))?;
    if cowinners != vec![1, 2] {
        return Err(Error::Infeasible(format!(
            "internal: MRSE core elects {cowinners:?} instead of {{1, 2}}"
        )));
    }
    let w0 = family.resolve(&profile, tiebreak)?;
    let witness = if w0 == 1 {
        ranking(&[4, 2, 1, 3], m)
    } else {
        ranking(&[3, 1, 2, 4], m)
    };
    Ok((profile, witness))
}

// ---- Condorcetified scoring participation construction --------------------

fn condorcetified_vector(family: &RuleSpec, m: usize) -> Result<Vec<i64>> {
    match family {
        RuleSpec::Black => RuleSpec::Borda.scoring_vector(m),
        RuleSpec::Condorcetified(s) => {
            validate_scoring(s)?;
            if s.len() != m {
                return Err(Error::InvalidRule(format!(
                    "scoring vector length {} does not match m = {m}",
                    s.len()
                )));
            }
            Ok(s.clone())
        }
        _ => unreachable!(),
    }
}

// Ten named votes plus a symmetric block: 1 is a weak Condorcet winner tied
// with 3, while 2 leads on score. A1 = [4..k+1] fills the equal-score
// prefix of the scoring vector.
fn condorcetified_star_profile(m: usize, s: &[i64]) -> Result<Profile> {
    let k = (1..m - 1)
        .find(|&i| s[i] > s[i + 1])
        .map(|i| i + 1)
        .unwrap_or(m - 1);
    let a1: Vec<u8> = (4..=(k + 1) as u8).collect();
    let mid = |top: &[u8], low: &[u8]| -> Ranking {
        let mut o = top.to_vec();
        o.extend(&a1);
        o.extend(low);
        ranking(&o, m)
    };
    let mut star = Profile::new(m);
    star.add_int(mid(&[1, 2], &[3]), 4)?;
    star.add_int(mid(&[2, 3], &[1]), 3)?;
    star.add_int(mid(&[3, 1], &[2]), 2)?;
    star.add_int(mid(&[2, 1], &[3]), 1)?;
    for r1 in Ranking::all(3) {
        star.add_int(ranking(r1.order(), m), 6)?;
    }
    Ok(star)
}

fn condorcetified_violation(
    family: &RuleSpec,
    m: usize,
    n: u64,
) -> Result<(Profile, Ranking)> {
    let s = condorcetified_vector(family, m)?;
    let odd = n % 2 == 1;
    let even_n = if odd { n - 1 } else { n };

    let mut profile = Profile::new(m);
    if s[1] == s[m - 1] {
        // Plurality-like: four blocks with w(1,2) = 2, w(1,3) = 0, and 2 the
        // strict plurality leader.
        let (x1, x2, x3, x4) = if even_n % 4 == 2 {
            let k = (even_n - 2) / 4;
            (k, k, k + 1, k + 1)
        } else {
            let k = even_n / 4;
            (k - 1, k, k, k + 1)
        };
        profile.add_int(ranking(&[2, 1, 3], m), x1)?;
        profile.add_int(ranking(&[2, 3, 1], m), x2)?;
        profile.add_int(ranking(&[3, 1, 2], m), x3)?;
        profile.add_int(ranking(&[1, 2, 3], m), x4)?;
    } else {
        let star = condorcetified_star_profile(m, &s)?;
        let star_size = to_u64(&star.total());
        let copies_min = (s[0] - s[m - 1] + 3).unsigned_abs();
        let copies = even_n / star_size;
        if copies < copies_min {
            return Err(Error::Infeasible(format!(
                "condorcetified construction needs n >= {}",
                copies_min * star_size
            )));
        }
        for (r, w) in star.support() {
            profile.add(r.clone(), w * rat(copies as i64))?;
        }
        // Fillers: score-2-leading quadruples plus at most one pair, both
        // neutral on the 1-3 tie; the pair costs w(1,2) two points, which
        // the copies comfortably cover.
        let rem = even_n - copies * star_size;
        debug_assert_eq!(rem % 2, 0);
        let quads = rem / 4;
        let pair = (rem % 4) / 2;
        if quads > 0 {
            profile.add_int(ranking(&[2, 1, 3], m), quads)?;
            profile.add_int(ranking(&[2, 3, 1], m), quads)?;
            profile.add_int(ranking(&[1, 2, 3], m), quads)?;
            profile.add_int(ranking(&[3, 1, 2], m), quads)?;
        }
        if pair > 0 {
            profile.add_int(ranking(&[2, 1, 3], m), pair)?;
            profile.add_int(ranking(&[2, 3, 1], m), pair)?;
        }
    }

    if odd {
        // The extra vote makes 1 the Condorcet winner by one margin point;
        // its removal hands the election back to the score leader 2.
        let witness = ranking(&[2, 1, 3], m);
        profile.add_int(witness.clone(), 1)?;
        let structure = crate::majority::majority_structure(&profile);
        if structure.cw != Some(1) {
            return Err(Error::Infeasible(
                "internal: odd-n condorcetified profile lost its Condorcet winner".into(),
            ));
        }
        Ok((profile, witness))
    } else {
        // Removing a 3 > 1 > 2 vote turns the 1~3 tie into a win for 1.
        let witness = ranking(&[3, 1, 2], m);
        Ok((profile, witness))
    }
}

/// Builds an `n`-profile whose Condorcet winner is `{a}` while the unique
/// scoring winner under `s` is `{b}`. Requires `n >= 8m + 49`.
pub fn cw_scoring_gap_profile(s: &[i64], m: usize, n: u64, a: u8, b: u8) -> Result<Profile> {
    validate_scoring(s)?;
    if s.len() != m {
        return Err(Error::InvalidRule(format!(
            "scoring vector length {} does not match m = {m}",
            s.len()
        )));
    }
    if a == b || a == 0 || b == 0 || a as usize > m || b as usize > m {
        return Err(Error::InvalidRule(
            "need distinct alternatives a != b".into(),
        ));
    }
    if n < (8 * m + 49) as u64 {
        return Err(Error::Infeasible(format!(
            "construction requires n >= {}",
            8 * m + 49
        )));
    }

    let (raw, winner) = if s[1] == s[m - 1] {
        // Plurality-like: 1 is the Condorcet winner, 2 the plurality winner.
        let mut p = Profile::new(m);
        let c1 = (n - 1) / 2;
        let c2 = (n - 3) / 2;
        let c3 = n + 1 - 2 * c1;
        p.add_int(ranking(&[2, 1, 3], m), c1)?;
        p.add_int(ranking(&[3, 1, 2], m), c2)?;
        p.add_int(ranking(&[1, 2, 3], m), c3)?;
        (p, 2u8)
    } else {
        let k = (1..m - 1)
            .find(|&i| s[i] > s[i + 1])
            .map(|i| i + 1)
            .unwrap_or(m - 1);
        let a1: Vec<u8> = (4..=(k + 1) as u8).collect();
        let shape = |top: &[u8], low: u8| -> Ranking {
            let mut o = top.to_vec();
            o.extend(&a1);
            o.push(low);
            ranking(&o, m)
        };
        let mut core = Profile::new(m);
        core.add_int(shape(&[1, 2], 3), 3)?;
        core.add_int(shape(&[2, 3], 1), 2)?;
        core.add_int(shape(&[3, 1], 2), 1)?;
        core.add_int(shape(&[2, 1], 3), 1)?;
        // 2 leads unless the equal-score prefix block outscores it.
        let score2 = 3 * s[0] + 3 * s[1] + s[k];
        let winner = if a1.is_empty() || score2 >= 7 * s[k - 1] {
            2u8
        } else {
            4u8
        };
        let mut p = Profile::new(m);
        let core_copies = (n - (m as u64 - 1)) / 7;
        for (r, w) in core.support() {
            p.add(r.clone(), w * rat(core_copies as i64))?;
        }
        // Cyclic tie-breaker block for the winner.
        let others: Vec<u8> = (1..=m as u8).filter(|&x| x != winner).collect();
        for shift in 0..others.len() {
            let mut order = vec![winner];
            for i in 0..others.len() {
                order.push(others[(i + shift) % others.len()]);
            }
            p.add_int(Ranking::new(order)?, 1)?;
        }
        let rem = n - (m as u64 - 1) - 7 * core_copies;
        if rem > 0 {
            p.add_int(ranking(&[winner], m), rem)?;
        }
        (p, winner)
    };

    // Relabel 1 -> a and the constructed winner -> b.
    let mut sigma: Vec<u8> = (1..=m as u8).collect();
    let assign = |from: u8, to: u8, sigma: &mut Vec<u8>| {
        let cur = sigma[from as usize - 1];
        if cur != to {
            let swap_at = sigma.iter().position(|&x| x == to).unwrap();
            sigma[from as usize - 1] = to;
            sigma[swap_at] = cur;
        }
    };
    assign(1, a, &mut sigma);
    let winner_target = sigma[winner as usize - 1];
    if winner_target != b {
        assign(winner, b, &mut sigma);
    }
    let relabeled = raw.relabel(&sigma)?;

    // Oracle verification: Condorcet winner and unique scoring winner.
    let structure = crate::majority::majority_structure(&relabeled);
    if structure.cw != Some(a) {
        return Err(Error::Infeasible(format!(
            "internal: constructed profile has CW {:?}, expected {a}",
            structure.cw
        )));
    }
    let winners = crate::rules::scoring::scoring_cowinners(s, &relabeled);
    if winners != vec![b] {
        return Err(Error::Infeasible(format!(
            "internal: constructed profile has scoring winners {winners:?}, expected {{{b}}}"
        )));
    }
    debug_assert_eq!(relabeled.total(), rat(n as i64));
    Ok(relabeled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::sat_par;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn mcgarvey_zero_target_even_n() {
        let target = TargetWmg::from_edges(3, &[]).unwrap();
        let p = mcgarvey_profile(&target, 10).unwrap();
        let g = WeightedMajorityGraph::of(&p);
        assert_eq!(g.ties(), 3);
        assert_eq!(p.total(), rat(10));
        assert!(mcgarvey_profile(&target, 9).is_err());
    }

    #[test]
    fn mcgarvey_round_trip_random_targets() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..100 {
            let parity = rng.gen_range(0..2i64);
            let mut edges = Vec::new();
            for a in 1..=4u8 {
                for b in a + 1..=4u8 {
                    let w = 2 * rng.gen_range(-3..=3i64) + parity;
                    edges.push((a, b, w));
                }
            }
            let target = TargetWmg::from_edges(4, &edges).unwrap();
            let n = target.minimal_n() + 2 * rng.gen_range(0..4u64);
            let p = mcgarvey_profile(&target, n).unwrap();
            assert_eq!(p.total(), rat(n as i64));
        }
    }

    #[test]
    fn mcgarvey_exhaustive_m3_small_weights() {
        // Every parity-consistent target with |w| <= 5 on three alternatives.
        for w12 in (-5i64..=5).step_by(2) {
            for w13 in (-5i64..=5).step_by(2) {
                for w23 in (-5i64..=5).step_by(2) {
                    let target =
                        TargetWmg::from_edges(3, &[(1, 2, w12), (1, 3, w13), (2, 3, w23)])
                            .unwrap();
                    let n = target.minimal_n();
                    mcgarvey_profile(&target, n).unwrap();
                }
            }
        }
        for w12 in (-4i64..=4).step_by(2) {
            for w13 in (-4i64..=4).step_by(2) {
                for w23 in (-4i64..=4).step_by(2) {
                    let target =
                        TargetWmg::from_edges(3, &[(1, 2, w12), (1, 3, w13), (2, 3, w23)])
                            .unwrap();
                    let n = target.minimal_n().max(2);
                    mcgarvey_profile(&target, n).unwrap();
                }
            }
        }
    }

    #[test]
    fn maximin_violation_small() {
        let t = TieBreakOrder::identity(5);
        let n = par_violation_min_n(&RuleSpec::Maximin, 5, false).unwrap();
        assert_eq!(n % 2, 1);
        let (p, _) = par_violation_profile(&RuleSpec::Maximin, 5, n, &t).unwrap();
        let verdict = sat_par(&RuleSpec::Maximin, &p, &t).unwrap();
        assert!(!verdict.satisfied);
        // Winners straddle {1,2} before removal.
        let winners = RuleSpec::Maximin.cowinners(&p).unwrap();
        assert_eq!(winners, vec![1, 2]);
    }

    #[test]
    fn all_families_violate_at_m4() {
        let t = TieBreakOrder::identity(4);
        let families = [
            RuleSpec::Maximin,
            RuleSpec::RankedPairs,
            RuleSpec::Schulze,
            RuleSpec::Copeland(rat(0)),
            RuleSpec::Copeland(crate::ratio(1, 2)),
            RuleSpec::Stv,
            RuleSpec::Black,
        ];
        for family in &families {
            for even in [false, true] {
                let n = par_violation_min_n(family, 4, even).unwrap();
                let (p, _) = par_violation_profile(family, 4, n, &t)
                    .unwrap_or_else(|e| panic!("{family} even={even}: {e}"));
                assert_eq!(p.total(), rat(n as i64), "{family}");
                let verdict = sat_par(family, &p, &t).unwrap();
                assert!(!verdict.satisfied, "{family} even={even}");
            }
        }
    }

    #[test]
    fn violations_scale_with_n() {
        let t = TieBreakOrder::identity(4);
        for family in [RuleSpec::Schulze, RuleSpec::Black] {
            let n0 = par_violation_min_n(&family, 4, true).unwrap();
            for n in [n0, n0 + 2, n0 + 100] {
                let (p, _) = par_violation_profile(&family, 4, n, &t).unwrap();
                assert!(!sat_par(&family, &p, &t).unwrap().satisfied);
            }
        }
    }

    #[test]
    fn cw_gap_plurality() {
        let p = cw_scoring_gap_profile(&[1, 0, 0], 3, 80, 1, 2).unwrap();
        let s = crate::majority::majority_structure(&p);
        assert_eq!(s.cw, Some(1));
        assert_eq!(
            crate::rules::scoring::scoring_cowinners(&[1, 0, 0], &p),
            vec![2]
        );
    }

    #[test]
    fn cw_gap_borda() {
        let p = cw_scoring_gap_profile(&[3, 2, 1, 0], 4, 90, 3, 1).unwrap();
        let s = crate::majority::majority_structure(&p);
        assert_eq!(s.cw, Some(3));
        assert_eq!(
            crate::rules::scoring::scoring_cowinners(&[3, 2, 1, 0], &p),
            vec![1]
        );
    }

    #[test]
    fn cw_gap_rejects_small_n() {
        assert!(cw_scoring_gap_profile(&[1, 0, 0], 3, 10, 1, 2).is_err());
    }
}
