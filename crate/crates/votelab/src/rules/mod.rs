//! Rule specifications, irresolute co-winner computation, and resolute
//! refinements.

pub mod mrse;
pub mod pairwise;
pub mod scoring;

use num::{One, Signed};

use crate::profile::parse_rat;
use crate::{Error, Profile, Rat, Ranking, Result};

/// Default cap on `m` for parallel-universe searches (MRSE and ranked pairs).
pub const DEFAULT_PUT_BOUND: usize = 8;

/// Declarative description of a voting rule.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleSpec {
    Plurality,
    Borda,
    Veto,
    /// Explicit integer positional scoring vector (length fixes `m`).
    Scoring(Vec<i64>),
    Stv,
    Coombs,
    Baldwin,
    /// Explicit multi-round score-based elimination: one scoring vector per
    /// round size, ordered `s^2, ..., s^m`.
    Mrse(Vec<Vec<i64>>),
    Maximin,
    Copeland(Rat),
    RankedPairs,
    Schulze,
    /// Condorcetified Borda.
    Black,
    /// Condorcetified positional scoring rule with an explicit vector.
    Condorcetified(Vec<i64>),
}

/// Deterministic priority order used to refine irresolute outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreakOrder {
    priority: Vec<u8>,
}

impl TieBreakOrder {
    pub fn identity(m: usize) -> Self {
        TieBreakOrder {
            priority: (1..=m as u8).collect(),
        }
    }

    pub fn new(priority: Vec<u8>) -> Result<Self> {
        Ranking::new(priority.clone())?;
        Ok(TieBreakOrder { priority })
    }

    pub fn m(&self) -> usize {
        self.priority.len()
    }

    pub fn rank(&self, a: u8) -> usize {
        self.priority.iter().position(|&x| x == a).unwrap()
    }

    /// The highest-priority member of a nonempty candidate set.
    pub fn first(&self, candidates: &[u8]) -> u8 {
        *candidates.iter().min_by_key(|&&a| self.rank(a)).unwrap()
    }

    /// The lowest-priority member of a nonempty candidate set.
    pub fn last(&self, candidates: &[u8]) -> u8 {
        *candidates.iter().max_by_key(|&&a| self.rank(a)).unwrap()
    }
}

/// An elimination order: `order[0]` is eliminated first, the last entry wins.
pub type EliminationOrder = Ranking;

pub(crate) fn validate_scoring(s: &[i64]) -> Result<()> {
    if s.len() < 2 {
        return Err(Error::InvalidRule("scoring vector needs length >= 2".into()));
    }
    if s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidRule(format!(
            "scoring vector {s:?} must be weakly decreasing"
        )));
    }
    if s[0] == s[s.len() - 1] {
        return Err(Error::InvalidRule(format!(
            "scoring vector {s:?} must have s1 > sm"
        )));
    }
    Ok(())
}

pub(crate) fn preset_vector(kind: &RuleSpec, m: usize) -> Option<Vec<i64>> {
    match kind {
        RuleSpec::Plurality => {
            let mut v = vec![0; m];
            v[0] = 1;
            Some(v)
        }
        RuleSpec::Borda => Some((0..m as i64).rev().collect()),
        RuleSpec::Veto => {
            let mut v = vec![1; m];
            v[m - 1] = 0;
            Some(v)
        }
        RuleSpec::Scoring(s) => Some(s.clone()),
        _ => None,
    }
}

impl RuleSpec {
    /// The scoring vector for `m` alternatives, when this is a positional
    /// scoring rule.
    pub fn scoring_vector(&self, m: usize) -> Result<Vec<i64>> {
        if let Some(v) = preset_vector(self, m) {
            if v.len() != m {
                return Err(Error::InvalidRule(format!(
                    "scoring vector has length {} but profile has m = {m}",
                    v.len()
                )));
            }
            validate_scoring(&v)?;
            Ok(v)
        } else {
            Err(Error::InvalidRule(format!("{self} is not a scoring rule")))
        }
    }

    /// Per-round scoring vectors `s^2..s^m` when this is an MRSE rule.
    pub fn mrse_vectors(&self, m: usize) -> Result<Vec<Vec<i64>>> {
        let rounds = |base: &RuleSpec| -> Result<Vec<Vec<i64>>> {
            (2..=m)
                .map(|k| {
                    let v = preset_vector(base, k).unwrap();
                    validate_scoring(&v)?;
                    Ok(v)
                })
                .collect()
        };
        match self {
            RuleSpec::Stv => rounds(&RuleSpec::Plurality),
            RuleSpec::Coombs => rounds(&RuleSpec::Veto),
            RuleSpec::Baldwin => rounds(&RuleSpec::Borda),
            RuleSpec::Mrse(vs) => {
                if vs.len() != m - 1 {
                    return Err(Error::InvalidRule(format!(
                        "MRSE over {m} alternatives needs {} component vectors, got {}",
                        m - 1,
                        vs.len()
                    )));
                }
                for (i, v) in vs.iter().enumerate() {
                    if v.len() != i + 2 {
                        return Err(Error::InvalidRule(format!(
                            "MRSE component {} must have length {}",
                            i,
                            i + 2
                        )));
                    }
                    validate_scoring(v)?;
                }
                Ok(vs.clone())
            }
            _ => Err(Error::InvalidRule(format!("{self} is not an MRSE rule"))),
        }
    }

    pub fn is_mrse(&self) -> bool {
        matches!(
            self,
            RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_)
        )
    }

    pub fn is_scoring(&self) -> bool {
        matches!(
            self,
            RuleSpec::Plurality | RuleSpec::Borda | RuleSpec::Veto | RuleSpec::Scoring(_)
        )
    }

    /// Rules that elect the Condorcet winner whenever one exists.
    pub fn is_condorcet_consistent(&self) -> bool {
        matches!(
            self,
            RuleSpec::Maximin
                | RuleSpec::Copeland(_)
                | RuleSpec::RankedPairs
                | RuleSpec::Schulze
                | RuleSpec::Black
                | RuleSpec::Condorcetified(_)
        )
    }

    /// Irresolute co-winner set, ascending ids.
    pub fn cowinners(&self, profile: &Profile) -> Result<Vec<u8>> {
        self.cowinners_bounded(profile, DEFAULT_PUT_BOUND)
    }

    /// Co-winners with an explicit cap on `m` for PUT searches.
    pub fn cowinners_bounded(&self, profile: &Profile, put_bound: usize) -> Result<Vec<u8>> {
        let m = profile.m();
        match self {
            RuleSpec::Plurality | RuleSpec::Borda | RuleSpec::Veto | RuleSpec::Scoring(_) => {
                Ok(scoring::scoring_cowinners(
                    &self.scoring_vector(m)?,
                    profile,
                ))
            }
            RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_) => {
                let vectors = self.mrse_vectors(m)?;
                mrse::mrse_cowinners(&vectors, profile, put_bound)
            }
            RuleSpec::Maximin => Ok(pairwise::maximin_cowinners(profile)),
            RuleSpec::Copeland(alpha) => {
                validate_alpha(alpha)?;
                Ok(pairwise::copeland_cowinners(profile, alpha))
            }
            RuleSpec::RankedPairs => pairwise::ranked_pairs_cowinners(profile, put_bound),
            RuleSpec::Schulze => Ok(pairwise::schulze_cowinners(profile)),
            RuleSpec::Black => {
                let s = RuleSpec::Borda.scoring_vector(m)?;
                Ok(scoring::condorcetified_cowinners(&s, profile))
            }
            RuleSpec::Condorcetified(s) => {
                validate_scoring(s)?;
                if s.len() != m {
                    return Err(Error::InvalidRule(format!(
                        "scoring vector has length {} but profile has m = {m}",
                        s.len()
                    )));
                }
                Ok(scoring::condorcetified_cowinners(s, profile))
            }
        }
    }

    /// Deterministic resolute winner under `tiebreak`.
    ///
    /// MRSE rules eliminate a single tied loser per round and ranked pairs
    /// fixes tied edge groups in a deterministic order; both paths are
    /// refinements of the irresolute rule. All other rules return the
    /// tiebreak-first co-winner.
    pub fn resolve(&self, profile: &Profile, tiebreak: &TieBreakOrder) -> Result<u8> {
        let m = profile.m();
        if tiebreak.m() != m {
            return Err(Error::InvalidRule(format!(
                "tie-break order over {} alternatives used with m = {m}",
                tiebreak.m()
            )));
        }
        if profile.is_empty() {
            // Needed to keep participation checks total at n = 1.
            return Ok(tiebreak.first(&(1..=m as u8).collect::<Vec<_>>()));
        }
        match self {
            RuleSpec::Stv | RuleSpec::Coombs | RuleSpec::Baldwin | RuleSpec::Mrse(_) => {
                let vectors = self.mrse_vectors(m)?;
                Ok(mrse::resolute_mrse(&vectors, profile, tiebreak))
            }
            RuleSpec::RankedPairs => Ok(pairwise::resolute_ranked_pairs(profile, tiebreak)),
            _ => Ok(tiebreak.first(&self.cowinners(profile)?)),
        }
    }

    /// Parses the CLI syntax, e.g. `plurality`, `copeland:1/2`,
    /// `scoring:[3,1,0,0]`, `mrse:[[1,0],[1,0,0]]`.
    pub fn parse(s: &str) -> Result<RuleSpec> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "plurality" => return Ok(RuleSpec::Plurality),
            "borda" => return Ok(RuleSpec::Borda),
            "veto" | "antiplurality" => return Ok(RuleSpec::Veto),
            "stv" => return Ok(RuleSpec::Stv),
            "coombs" => return Ok(RuleSpec::Coombs),
            "baldwin" => return Ok(RuleSpec::Baldwin),
            "maximin" => return Ok(RuleSpec::Maximin),
            "rankedpairs" | "ranked-pairs" | "rp" => return Ok(RuleSpec::RankedPairs),
            "schulze" => return Ok(RuleSpec::Schulze),
            "black" => return Ok(RuleSpec::Black),
            _ => {}
        }
        if let Some(arg) = lower.strip_prefix("copeland:") {
            let alpha = parse_rat(arg)
                .ok_or_else(|| Error::Parse(format!("bad copeland parameter {arg:?}")))?;
            validate_alpha(&alpha)?;
            return Ok(RuleSpec::Copeland(alpha));
        }
        if lower == "copeland" {
            return Ok(RuleSpec::Copeland(Rat::new(1.into(), 2.into())));
        }
        if let Some(arg) = lower.strip_prefix("scoring:") {
            let v = parse_int_list(arg)?;
            validate_scoring(&v)?;
            return Ok(RuleSpec::Scoring(v));
        }
        if let Some(arg) = lower.strip_prefix("condorcetified:") {
            let v = parse_int_list(arg)?;
            validate_scoring(&v)?;
            return Ok(RuleSpec::Condorcetified(v));
        }
        if let Some(arg) = lower.strip_prefix("mrse:") {
            let vs = parse_int_list_list(arg)?;
            for v in &vs {
                validate_scoring(v)?;
            }
            return Ok(RuleSpec::Mrse(vs));
        }
        Err(Error::Parse(format!("unknown rule {s:?}")))
    }
}

fn validate_alpha(alpha: &Rat) -> Result<()> {
    if alpha.is_negative() || *alpha > Rat::one() {
        return Err(Error::InvalidRule(format!(
            "copeland alpha must lie in [0,1], got {alpha}"
        )));
    }
    Ok(())
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {p:?}")))
        })
        .collect()
}

fn parse_int_list_list(s: &str) -> Result<Vec<Vec<i64>>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [[..],..], got {s:?}")))?;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => {
                if depth == 0 {
                    start = Some(i);
                }
                depth += 1;
            }
            ']' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    let seg = &inner[start.ok_or_else(|| Error::Parse("bad nesting".into()))?
                        ..=i];
                    out.push(parse_int_list(seg)?);
                    start = None;
                }
            }
            _ => {}
        }
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("no vectors in {s:?}")));
    }
    Ok(out)
}

impl std::fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleSpec::Plurality => write!(f, "plurality"),
            RuleSpec::Borda => write!(f, "borda"),
            RuleSpec::Veto => write!(f, "veto"),
            RuleSpec::Scoring(s) => write!(f, "scoring:{s:?}"),
            RuleSpec::Stv => write!(f, "stv"),
            RuleSpec::Coombs => write!(f, "coombs"),
            RuleSpec::Baldwin => write!(f, "baldwin"),
            RuleSpec::Mrse(vs) => write!(f, "mrse:{vs:?}"),
            RuleSpec::Maximin => write!(f, "maximin"),
            RuleSpec::Copeland(a) => write!(f, "copeland:{a}"),
            RuleSpec::RankedPairs => write!(f, "rankedpairs"),
            RuleSpec::Schulze => write!(f, "schulze"),
            RuleSpec::Black => write!(f, "black"),
            RuleSpec::Condorcetified(s) => write!(f, "condorcetified:{s:?}"),
        }
    }
}
