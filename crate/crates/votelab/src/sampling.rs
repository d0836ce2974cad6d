//! Reproducible random profile generation and Monte Carlo estimation of
//! axiom satisfaction.

use std::collections::BTreeMap;
use std::time::Instant;

use num::{One, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::fastpath::{self, FastRule, RankTables};
use crate::model::{uniform_distribution, PreferenceModel};
use crate::ranking::factorial;
use crate::rules::{RuleSpec, TieBreakOrder};
use crate::{Error, Profile, Rat, Result};

/// Which axiom a Monte Carlo run estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatedAxiom {
    /// Condorcet criterion, irresolute path.
    CondorcetCriterion,
    /// Participation, resolute path with the supplied tie-break order.
    Participation,
}

impl EstimatedAxiom {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cc" | "condorcet" => Ok(EstimatedAxiom::CondorcetCriterion),
            "par" | "participation" => Ok(EstimatedAxiom::Participation),
            other => Err(Error::Parse(format!("unknown axiom {other:?}"))),
        }
    }
}

impl std::fmt::Display for EstimatedAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EstimatedAxiom::CondorcetCriterion => write!(f, "cc"),
            EstimatedAxiom::Participation => write!(f, "par"),
        }
    }
}

/// Per-agent draw assignment: one shared distribution or an explicit list.
#[derive(Debug, Clone)]
pub enum AgentAssignment {
    Shared(Vec<Rat>),
    PerAgent(Vec<Vec<Rat>>),
}

/// Everything needed to regenerate a batch of random profiles bit-for-bit.
#[derive(Debug, Clone)]
pub struct SamplerPlan {
    pub m: usize,
    pub n: u64,
    pub assignment: AgentAssignment,
    pub seed: u64,
    pub trials: u64,
}

impl SamplerPlan {
    pub fn iid(m: usize, n: u64, distribution: Vec<Rat>, seed: u64, trials: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("need n >= 1".into()));
        }
        Ok(SamplerPlan {
            m,
            n,
            assignment: AgentAssignment::Shared(distribution),
            seed,
            trials,
        })
    }

    pub fn impartial_culture(m: usize, n: u64, seed: u64, trials: u64) -> Self {
        SamplerPlan {
            m,
            n,
            assignment: AgentAssignment::Shared(uniform_distribution(m)),
            seed,
            trials,
        }
    }
}

// Exact sampling table: the unit interval scaled to 2^64 with cumulative
// rational thresholds rounded once; vote k is drawn iff the uniform 64-bit
// value falls in [B_{k-1}, B_k). Thresholds are exact rational comparisons
// folded into integer boundaries, so no floating point is involved.
struct CumTable {
    bounds: Vec<u128>,
    uniform: bool,
    m: usize,
}

impl CumTable {
    fn new(m: usize, distribution: &[Rat]) -> Self {
        let uniform = distribution == uniform_distribution(m).as_slice();
        let two64: num::BigInt = num::BigInt::one() << 64;
        let mut acc = Rat::zero();
        let mut bounds = Vec::with_capacity(distribution.len());
        for w in distribution {
            acc += w;
            // ceil(acc * 2^64)
            let scaled = &acc * Rat::from_integer(two64.clone());
            let mut b = scaled.numer() / scaled.denom();
            if &(&b * scaled.denom()) != scaled.numer() {
                b += 1;
            }
            let digits = b.to_u64_digits().1;
            let mut v: u128 = 0;
            for (i, d) in digits.iter().enumerate().take(2) {
                v |= (*d as u128) << (64 * i);
            }
            if digits.len() > 2 {
                v = 1u128 << 64;
            }
            bounds.push(v);
        }
        if let Some(last) = bounds.last_mut() {
            *last = 1u128 << 64;
        }
        CumTable { bounds, uniform, m }
    }

    #[inline]
    fn draw(&self, rng: &mut ChaCha12Rng) -> usize {
        if self.uniform {
            // Unbiased uniform ranking index via Fisher-Yates.
            let m = self.m;
            let mut perm: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];
            for i in (1..m).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let mut idx = 0u64;
            for i in 0..m {
                let a = perm[i];
                let smaller = perm[i + 1..m].iter().filter(|&&b| b < a).count() as u64;
                idx += smaller * factorial(m - i - 1);
            }
            return idx as usize;
        }
        let u = rng.next_u64() as u128;
        // First k with u < bounds[k].
        match self.bounds.binary_search_by(|b| {
            if *b <= u {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        }) {
            Ok(k) | Err(k) => k,
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_add(1));
    rng
}

fn sample_counts(plan: &SamplerPlan, tables: &[CumTable], trial: u64) -> Vec<u32> {
    let len = factorial(plan.m) as usize;
    let mut counts = vec![0u32; len];
    let mut rng = trial_rng(plan.seed, trial);
    match &plan.assignment {
        AgentAssignment::Shared(_) => {
            let t = &tables[0];
            for _ in 0..plan.n {
                counts[t.draw(&mut rng)] += 1;
            }
        }
        AgentAssignment::PerAgent(_) => {
            for t in tables {
                counts[t.draw(&mut rng)] += 1;
            }
        }
    }
    counts
}

fn plan_tables(plan: &SamplerPlan) -> Result<Vec<CumTable>> {
    match &plan.assignment {
        AgentAssignment::Shared(d) => Ok(vec![CumTable::new(plan.m, d)]),
        AgentAssignment::PerAgent(list) => {
            if list.len() != plan.n as usize {
                return Err(Error::InvalidModel(format!(
                    "plan assigns {} distributions for n = {}",
                    list.len(),
                    plan.n
                )));
            }
            Ok(list.iter().map(|d| CumTable::new(plan.m, d)).collect())
        }
    }
}

/// Draws trial `trial` of the plan as an integer profile of total `n`.
/// Deterministic in `(seed, trial)`.
pub fn sample_profile(plan: &SamplerPlan, trial: u64) -> Result<Profile> {
    let tables = plan_tables(plan)?;
    let counts = sample_counts(plan, &tables, trial);
    let rank_tables = RankTables::new(plan.m);
    Ok(fastpath::to_profile(&rank_tables, &counts))
}

/// Exact distribution of the sampled histogram by sequential convolution.
/// Bounded to `n <= 8` and `m <= 4`.
pub fn exact_small_probability(plan: &SamplerPlan) -> Result<BTreeMap<Vec<u32>, Rat>> {
    if plan.n > 8 || plan.m > 4 {
        return Err(Error::BoundExceeded(
            "exact convolution is bounded to n <= 8 and m <= 4".into(),
        ));
    }
    let len = factorial(plan.m) as usize;
    let per_agent: Vec<&[Rat]> = match &plan.assignment {
        AgentAssignment::Shared(d) => vec![d.as_slice(); plan.n as usize],
        AgentAssignment::PerAgent(list) => {
            if list.len() != plan.n as usize {
                return Err(Error::InvalidModel(format!(
                    "plan assigns {} distributions for n = {}",
                    list.len(),
                    plan.n
                )));
            }
            list.iter().map(|d| d.as_slice()).collect()
        }
    };
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    acc.insert(vec![0u32; len], Rat::one());
    for d in per_agent {
        let mut next: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (hist, p) in &acc {
            for (k, w) in d.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let mut h = hist.clone();
                h[k] += 1;
                let entry = next.entry(h).or_insert_with(Rat::zero);
                *entry += p * w;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Monte Carlo estimate with a 95% Wilson interval.
#[derive(Debug, Clone)]
pub struct SatisfactionEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub wall_ms: u128,
}

pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp against float roundoff so the interval always contains p.
    (
        (center - half).max(0.0).min(p),
        (center + half).min(1.0).max(p),
    )
}

/// Estimates the probability that `rule` satisfies `axiom` on a profile
/// drawn per the plan. Trials run in parallel; per-trial seeds derive from
/// the trial counter, so the result is independent of scheduling.
pub fn estimate_satisfaction(
    rule: &RuleSpec,
    axiom: EstimatedAxiom,
    plan: &SamplerPlan,
    tiebreak: &TieBreakOrder,
) -> Result<SatisfactionEstimate> {
    if plan.trials == 0 {
        return Err(Error::InvalidModel("need trials >= 1".into()));
    }
    let start = Instant::now();
    let tables = plan_tables(plan)?;
    let rank_tables = RankTables::new(plan.m);
    let fast = FastRule::compile(rule, plan.m)?;
    let successes = (0..plan.trials)
        .into_par_iter()
        .map(|trial| {
            let mut counts = sample_counts(plan, &tables, trial);
            let ok = match axiom {
                EstimatedAxiom::CondorcetCriterion => {
                    fastpath::sat_cc(&rank_tables, &counts, &fast)
                }
                EstimatedAxiom::Participation => {
                    fastpath::sat_par(&rank_tables, &mut counts, &fast, tiebreak)
                }
            };
            ok as u64
        })
        .sum();
    let (ci_lo, ci_hi) = wilson_interval(successes, plan.trials);
    Ok(SatisfactionEstimate {
        successes,
        trials: plan.trials,
        estimate: successes as f64 / plan.trials as f64,
        ci_lo,
        ci_hi,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// One candidate of the heuristic adversary search.
#[derive(Debug, Clone)]
pub struct AdversaryCandidate {
    pub name: String,
    pub estimate: SatisfactionEstimate,
}

/// Result of the adversary search over i.i.d. hull-point candidates.
///
/// This is a lower-bound heuristic on the smoothed satisfaction over a
/// restricted adversary class: only i.i.d. plans at the model vertices and
/// the supplied mixtures are tried, justified by the asymptotic theory
/// depending on the hull alone. Finite-n correlated adversaries may do
/// better.
#[derive(Debug, Clone)]
pub struct AdversarialEstimate {
    pub candidates: Vec<AdversaryCandidate>,
    pub minimizing: usize,
    pub caveat: &'static str,
}

pub fn adversarial_estimate(
    model: &PreferenceModel,
    rule: &RuleSpec,
    axiom: EstimatedAxiom,
    n: u64,
    trials: u64,
    seed: u64,
    tiebreak: &TieBreakOrder,
    extra_mixtures: &[(String, Vec<Rat>)],
) -> Result<AdversarialEstimate> {
    let mut candidates = Vec::new();
    for (j, d) in model.distributions().iter().enumerate() {
        let plan = SamplerPlan::iid(model.m(), n, d.clone(), seed, trials)?;
        candidates.push(AdversaryCandidate {
            name: format!("vertex{j}"),
            estimate: estimate_satisfaction(rule, axiom, &plan, tiebreak)?,
        });
    }
    for (name, d) in extra_mixtures {
        let plan = SamplerPlan::iid(model.m(), n, d.clone(), seed, trials)?;
        candidates.push(AdversaryCandidate {
            name: name.clone(),
            estimate: estimate_satisfaction(rule, axiom, &plan, tiebreak)?,
        });
    }
    let minimizing = candidates
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            a.estimate
                .estimate
                .partial_cmp(&b.estimate.estimate)
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap();
    Ok(AdversarialEstimate {
        candidates,
        minimizing,
        caveat: "lower-bound heuristic over i.i.d. hull-point adversaries only",
    })
}
