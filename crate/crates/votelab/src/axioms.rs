//! Per-profile axiom evaluators and the rule-level Condorcet-loser decision
//! for scoring vectors.

use num::{One, Signed, Zero};
use serde_json::json;

use crate::geometry::forms::{pair_vector, score_diff_vector};
use crate::lp::{Lp, LpOutcome, Rel};
use crate::majority::majority_structure;
use crate::ranking::factorial;
use crate::rules::{validate_scoring, RuleSpec, TieBreakOrder};
use crate::{Error, Profile, Rat, Ranking, Result};

/// Outcome of a per-profile axiom check; the witness explains a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub satisfied: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The Condorcet winner and the co-winner set that excludes it (or, for
    /// the starred variant, fails to pin it uniquely).
    CondorcetFailure { cw: u8, winners: Vec<u8> },
    /// A voter whose abstention strictly improves the outcome for them.
    Abstention {
        ranking: Ranking,
        with_vote: u8,
        without_vote: u8,
    },
    /// The Condorcet loser and the co-winner set that includes it.
    CondorcetLoserFailure { cl: u8, winners: Vec<u8> },
}

impl AxiomVerdict {
    fn ok() -> Self {
        AxiomVerdict {
            satisfied: true,
            witness: None,
        }
    }

    fn violated(witness: Witness) -> Self {
        AxiomVerdict {
            satisfied: false,
            witness: Some(witness),
        }
    }

    pub fn to_json(&self, axiom: &str, rule: &str) -> String {
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::CondorcetFailure { cw, winners } => json!({
                "kind": "condorcet", "cw": cw, "winners": winners,
            }),
            Witness::Abstention {
                ranking,
                with_vote,
                without_vote,
            } => json!({
                "kind": "abstention",
                "ranking": ranking.to_string(),
                "with_vote": with_vote,
                "without_vote": without_vote,
            }),
            Witness::CondorcetLoserFailure { cl, winners } => json!({
                "kind": "condorcet_loser", "cl": cl, "winners": winners,
            }),
        });
        json!({
            "axiom": axiom,
            "rule": rule,
            "satisfied": self.satisfied,
            "witness": witness,
        })
        .to_string()
    }
}

/// Condorcet criterion for the irresolute rule: satisfied iff no Condorcet
/// winner exists or the Condorcet winner is a co-winner.
pub fn sat_cc(rule: &RuleSpec, profile: &Profile) -> Result<AxiomVerdict> {
    let Some(cw) = majority_structure(profile).cw else {
        return Ok(AxiomVerdict::ok());
    };
    let winners = rule.cowinners(profile)?;
    if winners.contains(&cw) {
        Ok(AxiomVerdict::ok())
    } else {
        Ok(AxiomVerdict::violated(Witness::CondorcetFailure {
            cw,
            winners,
        }))
    }
}

/// Condorcet criterion for a resolute refinement.
pub fn sat_cc_resolute(
    rule: &RuleSpec,
    profile: &Profile,
    tiebreak: &TieBreakOrder,
) -> Result<AxiomVerdict> {
    let Some(cw) = majority_structure(profile).cw else {
        return Ok(AxiomVerdict::ok());
    };
    let w = rule.resolve(profile, tiebreak)?;
    if w == cw {
        Ok(AxiomVerdict::ok())
    } else {
        Ok(AxiomVerdict::violated(Witness::CondorcetFailure {
            cw,
            winners: vec![w],
        }))
    }
}

/// Strengthened variant: the Condorcet winner, when it exists, must be the
/// unique co-winner.
pub fn sat_cc_star(rule: &RuleSpec, profile: &Profile) -> Result<AxiomVerdict> {
    let Some(cw) = majority_structure(profile).cw else {
        return Ok(AxiomVerdict::ok());
    };
    let winners = rule.cowinners(profile)?;
    if winners == [cw] {
        Ok(AxiomVerdict::ok())
    } else {
        Ok(AxiomVerdict::violated(Witness::CondorcetFailure {
            cw,
            winners,
        }))
    }
}

/// Participation for a resolute rule: no voter benefits by abstaining.
/// Grouping identical votes is sound because removing any one of them
/// produces the same residual profile.
pub fn sat_par(
    rule: &RuleSpec,
    profile: &Profile,
    tiebreak: &TieBreakOrder,
) -> Result<AxiomVerdict> {
    if profile.is_empty() {
        return Err(Error::InvalidProfile(
            "participation needs at least one vote".into(),
        ));
    }
    if !profile.is_integer() {
        return Err(Error::InvalidProfile(
            "participation is evaluated on integer profiles".into(),
        ));
    }
    let with_vote = rule.resolve(profile, tiebreak)?;
    let support: Vec<Ranking> = profile.support().map(|(r, _)| r.clone()).collect();
    for r in support {
        let removed = profile.remove_one(&r)?;
        let without_vote = rule.resolve(&removed, tiebreak)?;
        if without_vote != with_vote && r.prefers(without_vote, with_vote) {
            return Ok(AxiomVerdict::violated(Witness::Abstention {
                ranking: r,
                with_vote,
                without_vote,
            }));
        }
    }
    Ok(AxiomVerdict::ok())
}

/// Per-profile Condorcet loser: the Condorcet loser, when it exists, is not
/// a co-winner.
pub fn sat_cl_profile(rule: &RuleSpec, profile: &Profile) -> Result<AxiomVerdict> {
    let Some(cl) = majority_structure(profile).condorcet_loser else {
        return Ok(AxiomVerdict::ok());
    };
    let winners = rule.cowinners(profile)?;
    if winners.contains(&cl) {
        Ok(AxiomVerdict::violated(Witness::CondorcetLoserFailure {
            cl,
            winners,
        }))
    } else {
        Ok(AxiomVerdict::ok())
    }
}

/// Default cap on the number of alternatives for the LP-backed rule-level
/// Condorcet-loser decision (`k!` LP variables).
pub const DEFAULT_CL_BOUND: usize = 6;

/// Decides whether the positional scoring rule `s` over `k = s.len()`
/// alternatives satisfies Condorcet loser, i.e. whether any profile can make
/// the Condorcet loser a co-winner.
///
/// The search is an exact LP over the `k!`-simplex: alternative 1 must lose
/// every pairwise comparison strictly (handled by maximizing a shared slack)
/// while scoring at least every rival (weak, since co-winnership suffices).
/// By neutrality, checking alternative 1 covers all alternatives. A feasible
/// point is cleared to an integer counterexample profile and re-verified.
pub fn rule_satisfies_cl(s: &[i64]) -> Result<(bool, Option<Profile>)> {
    rule_satisfies_cl_bounded(s, DEFAULT_CL_BOUND)
}

pub fn rule_satisfies_cl_bounded(s: &[i64], bound: usize) -> Result<(bool, Option<Profile>)> {
    let k = s.len();
    if k < 2 {
        return Err(Error::InvalidRule("scoring vector needs length >= 2".into()));
    }
    validate_scoring(s)?;
    if k > bound {
        return Err(Error::BoundExceeded(format!(
            "Condorcet-loser decision capped at k <= {bound} alternatives (got {k})"
        )));
    }
    if k == 2 {
        // The pairwise loser has the strictly lower score.
        return Ok((true, None));
    }

    let q = factorial(k) as usize;
    // Variables: x over the simplex plus the slack t.
    let mut lp = Lp::new(q + 1);
    let mut simplex = vec![Rat::zero(); q + 1];
    for c in simplex.iter_mut().take(q) {
        *c = Rat::one();
    }
    lp.constrain(simplex, Rel::Eq, Rat::one());
    for b in 2..=k as u8 {
        // b beats 1 strictly: Pair_{b,1} . x >= t
        let mut row: Vec<Rat> = pair_vector(k, b, 1).into_iter().map(crate::rat).collect();
        row.push(-Rat::one());
        lp.constrain(row, Rel::Ge, Rat::zero());
        // score(1) >= score(b)
        let mut row: Vec<Rat> = score_diff_vector(k, s, 1, b)
            .into_iter()
            .map(crate::rat)
            .collect();
        row.push(Rat::zero());
        lp.constrain(row, Rel::Ge, Rat::zero());
    }
    let mut cap = vec![Rat::zero(); q + 1];
    cap[q] = Rat::one();
    lp.constrain(cap, Rel::Le, Rat::one());
    lp.objective = vec![Rat::zero(); q + 1];
    lp.objective[q] = Rat::one();

    match lp.solve() {
        LpOutcome::Optimal(v, x) if v.is_positive() => {
            let counterexample = clear_denominators(k, &x[..q])?;
            // The construction must not be trusted blindly.
            let verdict = sat_cl_profile(&RuleSpec::Scoring(s.to_vec()), &counterexample)?;
            assert!(
                !verdict.satisfied,
                "recovered counterexample failed re-verification"
            );
            Ok((false, Some(counterexample)))
        }
        LpOutcome::Optimal(..) | LpOutcome::Infeasible => Ok((true, None)),
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}

// Scales a rational simplex point to an integer profile.
fn clear_denominators(m: usize, x: &[Rat]) -> Result<Profile> {
    let mut lcm = num::BigInt::one();
    for v in x {
        lcm = num::integer::lcm(lcm, v.denom().clone());
    }
    let mut p = Profile::new(m);
    for (i, v) in x.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let count = v * Rat::from_integer(lcm.clone());
        p.add(Ranking::from_index(m, i as u64)?, count)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn r(o: &[u8]) -> Ranking {
        Ranking::new(o.to_vec()).unwrap()
    }

    fn p14_corrected() -> Profile {
        let mut p = Profile::new(3);
        p.add_int(r(&[1, 2, 3]), 6).unwrap();
        p.add_int(r(&[2, 3, 1]), 4).unwrap();
        p.add_int(r(&[3, 2, 1]), 4).unwrap();
        p
    }

    #[test]
    fn cc_satisfied_when_no_cw() {
        let mut p = Profile::new(3);
        // Perfect cycle: 1>2>3, 2>3>1, 3>1>2.
        p.add_int(r(&[1, 2, 3]), 1).unwrap();
        p.add_int(r(&[2, 3, 1]), 1).unwrap();
        p.add_int(r(&[3, 1, 2]), 1).unwrap();
        assert!(sat_cc(&RuleSpec::Plurality, &p).unwrap().satisfied);
    }

    #[test]
    fn plurality_cc_violation_with_witness() {
        let v = sat_cc(&RuleSpec::Plurality, &p14_corrected()).unwrap();
        assert!(!v.satisfied);
        assert_eq!(
            v.witness,
            Some(Witness::CondorcetFailure {
                cw: 2,
                winners: vec![1]
            })
        );
    }

    #[test]
    fn black_always_satisfies_cc() {
        assert!(sat_cc(&RuleSpec::Black, &p14_corrected()).unwrap().satisfied);
    }

    #[test]
    fn cc_star_needs_unique_winner() {
        // CW = 1 but plurality ties {1, 2}.
        let mut p = Profile::new(3);
        p.add_int(r(&[1, 3, 2]), 2).unwrap();
        p.add_int(r(&[2, 1, 3]), 2).unwrap();
        p.add_int(r(&[3, 1, 2]), 1).unwrap();
        assert_eq!(majority_structure(&p).cw, Some(1));
        assert!(sat_cc(&RuleSpec::Plurality, &p).unwrap().satisfied);
        let starred = sat_cc_star(&RuleSpec::Plurality, &p).unwrap();
        assert!(!starred.satisfied);
    }

    #[test]
    fn single_vote_participation_is_satisfied() {
        let mut p = Profile::new(3);
        p.add_int(r(&[2, 1, 3]), 1).unwrap();
        let t = TieBreakOrder::identity(3);
        assert!(sat_par(&RuleSpec::Plurality, &p, &t).unwrap().satisfied);
    }

    #[test]
    fn unanimous_profile_satisfies_participation() {
        let mut p = Profile::new(4);
        p.add_int(r(&[3, 1, 4, 2]), 5).unwrap();
        let t = TieBreakOrder::identity(4);
        for rule in [RuleSpec::Plurality, RuleSpec::Stv, RuleSpec::Maximin] {
            assert!(sat_par(&rule, &p, &t).unwrap().satisfied, "{rule}");
        }
    }

    #[test]
    fn participation_rejects_empty_or_fractional() {
        let t = TieBreakOrder::identity(3);
        assert!(sat_par(&RuleSpec::Plurality, &Profile::new(3), &t).is_err());
        let mut p = Profile::new(3);
        p.add(r(&[1, 2, 3]), ratio(1, 2)).unwrap();
        assert!(sat_par(&RuleSpec::Plurality, &p, &t).is_err());
    }

    #[test]
    fn condorcet_loser_profile_check() {
        // 1 is the Condorcet loser yet wins plurality.
        let mut p = Profile::new(3);
        p.add_int(r(&[1, 2, 3]), 3).unwrap();
        p.add_int(r(&[2, 3, 1]), 2).unwrap();
        p.add_int(r(&[3, 2, 1]), 2).unwrap();
        let v = sat_cl_profile(&RuleSpec::Plurality, &p).unwrap();
        assert!(!v.satisfied);
        assert_eq!(
            v.witness,
            Some(Witness::CondorcetLoserFailure {
                cl: 1,
                winners: vec![1]
            })
        );
        assert!(sat_cl_profile(&RuleSpec::Borda, &p).unwrap().satisfied);
    }

    #[test]
    fn plurality_fails_condorcet_loser() {
        let (ok, counterexample) = rule_satisfies_cl(&[1, 0, 0]).unwrap();
        assert!(!ok);
        let p = counterexample.unwrap();
        assert!(!sat_cl_profile(&RuleSpec::Plurality, &p).unwrap().satisfied);
    }

    #[test]
    fn borda_satisfies_condorcet_loser() {
        for k in 3..=5usize {
            let s: Vec<i64> = (0..k as i64).rev().collect();
            let (ok, _) = rule_satisfies_cl(&s).unwrap();
            assert!(ok, "borda k={k}");
        }
    }

    #[test]
    fn two_alternative_rules_satisfy_cl() {
        assert!(rule_satisfies_cl(&[1, 0]).unwrap().0);
        assert!(rule_satisfies_cl(&[7, 2]).unwrap().0);
    }

    #[test]
    fn cl_bound_is_enforced() {
        let s: Vec<i64> = (0..7).rev().collect();
        assert!(matches!(rule_satisfies_cl(&s), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn borda_cl_exhaustive_cross_check_k3() {
        // Independent oracle: every integer 3-alternative profile with
        // n <= 9 either has no Condorcet loser or keeps it off the Borda
        // co-winner set.
        let rule = RuleSpec::Borda;
        fn rec(idx: usize, left: u64, counts: &mut [u64; 6], rule: &RuleSpec) {
            if idx == 5 {
                counts[5] = left;
                let mut p = Profile::new(3);
                for (i, &c) in counts.iter().enumerate() {
                    if c > 0 {
                        p.add_int(Ranking::from_index(3, i as u64).unwrap(), c)
                            .unwrap();
                    }
                }
                if !p.is_empty() {
                    assert!(sat_cl_profile(rule, &p).unwrap().satisfied);
                }
                return;
            }
            for c in 0..=left {
                counts[idx] = c;
                rec(idx + 1, left - c, counts, rule);
            }
        }
        let mut counts = [0u64; 6];
        for n in 1..=9u64 {
            rec(0, n, &mut counts, &rule);
        }
    }

    #[test]
    fn grouped_removals_equal_naive_per_voter_iteration() {
        // Removing one vote of a ranking yields the same residual profile no
        // matter which of the identical voters abstains, so iterating over
        // distinct rankings must agree with iterating over every voter.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(55);
        let t = TieBreakOrder::identity(4);
        for _ in 0..200 {
            let mut votes: Vec<Ranking> = Vec::new();
            let n = rng.gen_range(1..=10u32);
            for _ in 0..n {
                let idx = rng.gen_range(0..24u64);
                votes.push(Ranking::from_index(4, idx).unwrap());
            }
            let mut p = Profile::new(4);
            for v in &votes {
                p.add_int(v.clone(), 1).unwrap();
            }
            for rule in [RuleSpec::Maximin, RuleSpec::Stv, RuleSpec::Black] {
                let grouped = sat_par(&rule, &p, &t).unwrap().satisfied;
                let with_vote = rule.resolve(&p, &t).unwrap();
                let naive = votes.iter().all(|v| {
                    let removed = p.remove_one(v).unwrap();
                    let without = rule.resolve(&removed, &t).unwrap();
                    without == with_vote || !v.prefers(without, with_vote)
                });
                assert_eq!(grouped, naive, "{rule}");
            }
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = sat_cc(&RuleSpec::Plurality, &p14_corrected()).unwrap();
        let s = v.to_json("cc", "plurality");
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["axiom"], "cc");
        assert_eq!(parsed["satisfied"], false);
        assert_eq!(parsed["witness"]["cw"], 2);
    }
}
