//! Positional scoring rules and their Condorcetified variants.

use num::Zero;

use crate::majority::majority_structure;
use crate::{Profile, Rat};

/// Total score of every alternative in `alive` under the round scoring
/// vector `s` (`s.len() == alive.len()`), evaluated on the profile
/// restricted to `alive` without materializing the restriction.
pub fn round_scores(profile: &Profile, alive: &[u8], s: &[i64]) -> Vec<(u8, Rat)> {
    debug_assert_eq!(alive.len(), s.len());
    let mut scores: Vec<(u8, Rat)> = alive.iter().map(|&a| (a, Rat::zero())).collect();
    for (r, w) in profile.support() {
        let mut pos = 0usize;
        for &a in r.order() {
            if let Some(slot) = scores.iter_mut().find(|(x, _)| *x == a) {
                slot.1 += w * Rat::from_integer(s[pos].into());
                pos += 1;
            }
        }
    }
    scores
}

/// All alternatives with maximum total score, ascending.
pub fn scoring_cowinners(s: &[i64], profile: &Profile) -> Vec<u8> {
    let alive: Vec<u8> = (1..=profile.m() as u8).collect();
    let scores = round_scores(profile, &alive, s);
    let best = scores.iter().map(|(_, v)| v).max().unwrap().clone();
    scores
        .into_iter()
        .filter(|(_, v)| *v == best)
        .map(|(a, _)| a)
        .collect()
}

/// The Condorcet winner when one exists, otherwise the scoring co-winners.
pub fn condorcetified_cowinners(s: &[i64], profile: &Profile) -> Vec<u8> {
    match majority_structure(profile).cw {
        Some(c) => vec![c],
        None => scoring_cowinners(s, profile),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, Ranking};

    fn dist(m: usize, table: &[(&[u8], (i64, i64))]) -> Profile {
        let mut p = Profile::new(m);
        for (o, (num, den)) in table {
            p.add(Ranking::new(o.to_vec()).unwrap(), ratio(*num, *den))
                .unwrap();
        }
        p
    }

    fn pi2() -> Profile {
        dist(
            3,
            &[
                (&[1, 2, 3], (1, 8)),
                (&[1, 3, 2], (1, 8)),
                (&[2, 3, 1], (3, 8)),
                (&[3, 2, 1], (1, 8)),
                (&[2, 1, 3], (1, 8)),
                (&[3, 1, 2], (1, 8)),
            ],
        )
    }

    #[test]
    fn plurality_on_pi2() {
        assert_eq!(scoring_cowinners(&[1, 0, 0], &pi2()), vec![2]);
    }

    #[test]
    fn plurality_on_pi_hat() {
        let p = dist(
            3,
            &[
                (&[1, 2, 3], (1, 4)),
                (&[2, 1, 3], (1, 4)),
                (&[1, 3, 2], (1, 8)),
                (&[2, 3, 1], (1, 8)),
                (&[3, 1, 2], (1, 8)),
                (&[3, 2, 1], (1, 8)),
            ],
        );
        assert_eq!(scoring_cowinners(&[1, 0, 0], &p), vec![1, 2]);
    }

    #[test]
    fn borda_on_uniform_is_everyone() {
        let mut p = Profile::new(4);
        for r in Ranking::all(4) {
            p.add(r, ratio(1, 24)).unwrap();
        }
        assert_eq!(scoring_cowinners(&[3, 2, 1, 0], &p), vec![1, 2, 3, 4]);
    }

    #[test]
    fn black_elects_condorcet_winner() {
        assert_eq!(condorcetified_cowinners(&[2, 1, 0], &pi2()), vec![2]);
    }
}
