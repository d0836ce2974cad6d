//! Multi-round score-based elimination with parallel-universes tie-breaking.

use std::collections::HashMap;

use crate::rules::scoring::round_scores;
use crate::rules::TieBreakOrder;
use crate::{Error, Profile, Ranking, Result};

fn check_put_bound(m: usize, put_bound: usize) -> Result<()> {
    if m > put_bound {
        return Err(Error::BoundExceeded(format!(
            "parallel-universe search capped at m <= {put_bound} (got m = {m}); \
             use the resolute mode instead"
        )));
    }
    Ok(())
}

/// Alternatives in `alive` with weakly lowest round score.
fn round_losers(profile: &Profile, alive: &[u8], s: &[i64]) -> Vec<u8> {
    let scores = round_scores(profile, alive, s);
    let worst = scores.iter().map(|(_, v)| v).min().unwrap().clone();
    scores
        .into_iter()
        .filter(|(_, v)| *v == worst)
        .map(|(a, _)| a)
        .collect()
}

/// All elimination orders reachable under parallel-universes tie-breaking.
///
/// `vectors[k]` is the scoring vector used when `k + 2` alternatives remain.
pub fn parallel_universes(
    vectors: &[Vec<i64>],
    profile: &Profile,
    put_bound: usize,
) -> Result<Vec<Ranking>> {
    let m = profile.m();
    check_put_bound(m, put_bound)?;
    let mut suffixes: HashMap<u32, Vec<Vec<u8>>> = HashMap::new();
    let alive: Vec<u8> = (1..=m as u8).collect();
    let orders = suffix_orders(vectors, profile, &alive, &mut suffixes);
    let mut out: Vec<Ranking> = orders
        .into_iter()
        .map(|o| Ranking::new(o).unwrap())
        .collect();
    out.sort();
    Ok(out)
}

fn mask_of(alive: &[u8]) -> u32 {
    alive.iter().fold(0u32, |acc, &a| acc | (1 << a))
}

// Elimination sequences for the given alive set, memoized on the set.
fn suffix_orders(
    vectors: &[Vec<i64>],
    profile: &Profile,
    alive: &[u8],
    memo: &mut HashMap<u32, Vec<Vec<u8>>>,
) -> Vec<Vec<u8>> {
    if alive.len() == 1 {
        return vec![vec![alive[0]]];
    }
    let key = mask_of(alive);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let s = &vectors[alive.len() - 2];
    let losers = round_losers(profile, alive, s);
    let mut out = Vec::new();
    for l in losers {
        let rest: Vec<u8> = alive.iter().copied().filter(|&a| a != l).collect();
        for suffix in suffix_orders(vectors, profile, &rest, memo) {
            let mut order = Vec::with_capacity(alive.len());
            order.push(l);
            order.extend(suffix);
            out.push(order);
        }
    }
    memo.insert(key, out.clone());
    out
}

/// Parallel-universe co-winners: last entries of the elimination orders.
pub fn mrse_cowinners(
    vectors: &[Vec<i64>],
    profile: &Profile,
    put_bound: usize,
) -> Result<Vec<u8>> {
    let orders = parallel_universes(vectors, profile, put_bound)?;
    let mut winners: Vec<u8> = orders.iter().map(|o| o.bottom()).collect();
    winners.sort_unstable();
    winners.dedup();
    Ok(winners)
}

/// Rounds (1-based) in which alternative `a` is eliminated across all
/// parallel universes. Empty when `a` always survives to the end.
pub fn possible_losing_rounds(
    vectors: &[Vec<i64>],
    profile: &Profile,
    a: u8,
    put_bound: usize,
) -> Result<Vec<usize>> {
    let m = profile.m();
    if a == 0 || a as usize > m {
        return Err(Error::InvalidRule(format!("alternative {a} not in 1..={m}")));
    }
    let orders = parallel_universes(vectors, profile, put_bound)?;
    let mut rounds: Vec<usize> = orders
        .iter()
        .filter(|o| o.bottom() != a)
        .map(|o| o.position(a) + 1)
        .collect();
    rounds.sort_unstable();
    rounds.dedup();
    Ok(rounds)
}

/// Single-path resolute elimination: each round removes the tied loser with
/// the lowest tie-break priority, mirroring lexicographic tie-breaking on
/// winners. A refinement of the irresolute rule.
pub fn resolute_mrse(vectors: &[Vec<i64>], profile: &Profile, tiebreak: &TieBreakOrder) -> u8 {
    let m = profile.m();
    let mut alive: Vec<u8> = (1..=m as u8).collect();
    while alive.len() > 1 {
        let s = &vectors[alive.len() - 2];
        let losers = round_losers(profile, &alive, s);
        let out = tiebreak.last(&losers);
        alive.retain(|&a| a != out);
    }
    alive[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, RuleSpec};

    fn stv(m: usize) -> Vec<Vec<i64>> {
        RuleSpec::Stv.mrse_vectors(m).unwrap()
    }

    fn pi_uni(m: usize) -> Profile {
        let mut p = Profile::new(m);
        let n = Ranking::all(m).len() as i64;
        for r in Ranking::all(m) {
            p.add(r, ratio(1, n)).unwrap();
        }
        p
    }

    fn pi_hat() -> Profile {
        let mut p = Profile::new(3);
        for r in Ranking::all(3) {
            let w = if r.order() == [1, 2, 3] || r.order() == [2, 1, 3] {
                ratio(1, 4)
            } else {
                ratio(1, 8)
            };
            p.add(r, w).unwrap();
        }
        p
    }

    #[test]
    fn stv_on_uniform_all_universes() {
        let pu = parallel_universes(&stv(3), &pi_uni(3), 8).unwrap();
        assert_eq!(pu.len(), 6);
        assert_eq!(mrse_cowinners(&stv(3), &pi_uni(3), 8).unwrap(), vec![1, 2, 3]);
        for a in 1..=3 {
            assert_eq!(
                possible_losing_rounds(&stv(3), &pi_uni(3), a, 8).unwrap(),
                vec![1, 2]
            );
        }
    }

    #[test]
    fn stv_on_pi_hat() {
        let pu = parallel_universes(&stv(3), &pi_hat(), 8).unwrap();
        let orders: Vec<&[u8]> = pu.iter().map(|o| o.order()).collect();
        assert_eq!(orders, vec![&[3u8, 1, 2][..], &[3u8, 2, 1][..]]);
        assert_eq!(mrse_cowinners(&stv(3), &pi_hat(), 8).unwrap(), vec![1, 2]);
        assert_eq!(
            possible_losing_rounds(&stv(3), &pi_hat(), 3, 8).unwrap(),
            vec![1]
        );
        assert_eq!(
            possible_losing_rounds(&stv(3), &pi_hat(), 1, 8).unwrap(),
            vec![2]
        );
        assert_eq!(
            possible_losing_rounds(&stv(3), &pi_hat(), 2, 8).unwrap(),
            vec![2]
        );
    }

    #[test]
    fn unique_losers_give_single_universe() {
        let mut p = Profile::new(3);
        p.add_int(Ranking::new(vec![1, 2, 3]).unwrap(), 4).unwrap();
        p.add_int(Ranking::new(vec![2, 1, 3]).unwrap(), 2).unwrap();
        p.add_int(Ranking::new(vec![3, 2, 1]).unwrap(), 1).unwrap();
        let pu = parallel_universes(&stv(3), &p, 8).unwrap();
        assert_eq!(pu.len(), 1);
        assert_eq!(pu[0].order(), &[3, 2, 1]);
    }

    #[test]
    fn put_bound_enforced() {
        let p = pi_uni(3);
        assert!(matches!(
            parallel_universes(&stv(3), &p, 2),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn resolute_stv_on_pi_hat() {
        // Round 1 eliminates 3 (unique loser); round 2 ties {1,2} and the
        // identity priority eliminates 2, leaving winner 1.
        let t = TieBreakOrder::identity(3);
        assert_eq!(resolute_mrse(&stv(3), &pi_hat(), &t), 1);
    }

    #[test]
    fn resolute_is_member_of_cowinners() {
        let t = TieBreakOrder::identity(3);
        let w = resolute_mrse(&stv(3), &pi_uni(3), &t);
        let cw = mrse_cowinners(&stv(3), &pi_uni(3), 8).unwrap();
        assert!(cw.contains(&w));
    }

    #[test]
    fn weighted_profile_scores_are_exact() {
        let mut p = Profile::new(3);
        p.add(Ranking::new(vec![1, 2, 3]).unwrap(), rat(2)).unwrap();
        p.add(Ranking::new(vec![2, 3, 1]).unwrap(), rat(2)).unwrap();
        p.add(Ranking::new(vec![3, 1, 2]).unwrap(), rat(1)).unwrap();
        // plurality tallies 2,2,1 -> 3 out; then 1 beats 2 head-to-head 3:2.
        let pu = parallel_universes(&stv(3), &p, 8).unwrap();
        assert_eq!(pu.len(), 1);
        assert_eq!(pu[0].bottom(), 1);
    }
}
