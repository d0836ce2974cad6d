//! Asymptotic classification of smoothed axiom satisfaction for finite
//! strictly positive preference models.
//!
//! Every decision reduces to sign conditions on finitely many integer linear
//! forms (pairwise margins, score differences, restricted score differences),
//! so universal clauses over the hull are decided by enumerating the feasible
//! sign patterns with exact LP pruning and evaluating the clause on each
//! pattern.

use std::collections::HashMap;

use serde_json::json;

use crate::axioms::rule_satisfies_cl;
use crate::geometry::forms::{pair_vector, Sign, Signature};
use crate::geometry::mixture::{feasible_signatures, mixture_feasibility, FormRel, MixtureWitness};
use crate::geometry::{mrse_forms, scoring_forms};
use crate::majority::{MajorityStructure, WeightedMajorityGraph};
use crate::model::PreferenceModel;
use crate::profile::fmt_rat;
use crate::ranking::factorial;
use crate::{rat, Error, Profile, Rat, Result, RuleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The asymptotic smoothed-satisfaction label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    One,
    /// `1 - exp(-Theta(n))`
    VeryLikely,
    /// `1 - Theta(n^{-ell/2})`
    Likely { ell: u32 },
    /// `Theta(1)` and `1 - Theta(1)`
    Medium,
    /// `Theta(n^{-1/2})`
    Unlikely,
    /// `exp(-Theta(n))`
    VeryUnlikely,
    Zero,
    Indeterminate,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::One => write!(f, "One"),
            Label::VeryLikely => write!(f, "VeryLikely"),
            Label::Likely { ell } => write!(f, "Likely(ell={ell})"),
            Label::Medium => write!(f, "Medium"),
            Label::Unlikely => write!(f, "Unlikely"),
            Label::VeryUnlikely => write!(f, "VeryUnlikely"),
            Label::Zero => write!(f, "Zero"),
            Label::Indeterminate => write!(f, "Indeterminate"),
        }
    }
}

/// Classification result: the label, the clause that fired, and the witness
/// mixture when an existential clause decided the outcome.
#[derive(Debug, Clone)]
pub struct AsymptoticCase {
    pub label: Label,
    pub parity: Parity,
    pub witness: Option<MixtureWitness>,
    pub clause: String,
    pub validity_note: String,
}

impl AsymptoticCase {
    pub fn to_json(&self) -> String {
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "lambda": w.lambda.iter().map(fmt_rat).collect::<Vec<_>>(),
                "distribution": w.distribution.iter().map(fmt_rat).collect::<Vec<_>>(),
            })
        });
        json!({
            "label": self.label.to_string(),
            "parity": self.parity.to_string(),
            "witness": witness,
            "clause": self.clause,
            "validity": self.validity_note,
        })
        .to_string()
    }
}

// One realizable sign pattern of the working form set, with everything the
// clauses need precomputed.
struct Cell {
    structure: MajorityStructure,
    cowinners: Vec<u8>,
    losing_rounds: HashMap<u8, Vec<usize>>,
    witness: MixtureWitness,
}

fn pair_forms_list(m: usize) -> Vec<Vec<i64>> {
    let mut forms = Vec::new();
    for a in 1..=m as u8 {
        for b in a + 1..=m as u8 {
            forms.push(pair_vector(m, a, b));
        }
    }
    forms
}

fn structure_from_signs(m: usize, signs: &[Sign]) -> MajorityStructure {
    let mut margins = vec![vec![rat(0); m]; m];
    let mut k = 0usize;
    for a in 0..m {
        for b in a + 1..m {
            let v = match signs[k] {
                Sign::Plus => rat(1),
                Sign::Minus => rat(-1),
                Sign::Zero => rat(0),
            };
            margins[a][b] = v.clone();
            margins[b][a] = -v;
            k += 1;
        }
    }
    WeightedMajorityGraph::from_margins(margins).majority_structure()
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
        Sign::Zero => Sign::Zero,
    }
}

// Winners of a positional scoring rule read off the pairwise score-diff
// signature (pairs in a < b order).
fn scoring_winners_from_signs(m: usize, signs: &[Sign]) -> Vec<u8> {
    let pair_index = |lo: u8, hi: u8| -> usize {
        let mut k = 0usize;
        for x in 1..=m as u8 {
            for y in x + 1..=m as u8 {
                if x == lo && y == hi {
                    return k;
                }
                k += 1;
            }
        }
        unreachable!()
    };
    (1..=m as u8)
        .filter(|&a| {
            (1..=m as u8).all(|b| {
                if a == b {
                    return true;
                }
                let s = if a < b {
                    signs[pair_index(a, b)]
                } else {
                    flip(signs[pair_index(b, a)])
                };
                s != Sign::Minus
            })
        })
        .collect()
}

fn scoring_cells(model: &PreferenceModel, s: &[i64]) -> Result<Vec<Cell>> {
    let m = model.m();
    let pair_forms = pair_forms_list(m);
    let npairs = pair_forms.len();
    let mut forms = pair_forms;
    forms.extend(scoring_forms(m, s).forms);
    let sigs = feasible_signatures(model, &forms)?;
    Ok(sigs
        .into_iter()
        .map(|(t, witness)| {
            let structure = structure_from_signs(m, &t[..npairs]);
            let cowinners = scoring_winners_from_signs(m, &t[npairs..]);
            Cell {
                structure,
                cowinners,
                losing_rounds: HashMap::new(),
                witness,
            }
        })
        .collect())
}

// Parallel universes derived from restricted score-diff signs.
fn pu_orders_from_signs(
    m: usize,
    lookup: &HashMap<(Vec<u8>, u8, u8), usize>,
    signs: &Signature,
) -> Vec<Vec<u8>> {
    let score_sign = |removed: &[u8], a: u8, b: u8| -> Sign {
        if a < b {
            signs[lookup[&(removed.to_vec(), a, b)]]
        } else {
            flip(signs[lookup[&(removed.to_vec(), b, a)]])
        }
    };
    fn rec(
        alive: &[u8],
        removed: &mut Vec<u8>,
        prefix: &mut Vec<u8>,
        score_sign: &dyn Fn(&[u8], u8, u8) -> Sign,
        orders: &mut Vec<Vec<u8>>,
    ) {
        if alive.len() == 1 {
            let mut order = prefix.clone();
            order.push(alive[0]);
            orders.push(order);
            return;
        }
        let mut sorted_removed = removed.clone();
        sorted_removed.sort_unstable();
        for &l in alive {
            let is_loser = alive
                .iter()
                .all(|&b| b == l || score_sign(&sorted_removed, l, b) != Sign::Plus);
            if is_loser {
                let rest: Vec<u8> = alive.iter().copied().filter(|&a| a != l).collect();
                prefix.push(l);
                removed.push(l);
                rec(&rest, removed, prefix, score_sign, orders);
                removed.pop();
                prefix.pop();
            }
        }
    }
    let alive: Vec<u8> = (1..=m as u8).collect();
    let mut orders = Vec::new();
    rec(
        &alive,
        &mut Vec::new(),
        &mut Vec::new(),
        &score_sign,
        &mut orders,
    );
    orders
}

fn mrse_cells(model: &PreferenceModel, vectors: &[Vec<i64>]) -> Result<Vec<Cell>> {
    let m = model.m();
    let pair_forms = pair_forms_list(m);
    let npairs = pair_forms.len();
    let (mrse_set, mrse_index) = mrse_forms(m, vectors);
    let mut forms = pair_forms;
    forms.extend(mrse_set.forms);
    let lookup: HashMap<(Vec<u8>, u8, u8), usize> = mrse_index
        .into_iter()
        .enumerate()
        .map(|(i, key)| (key, i))
        .collect();
    let sigs = feasible_signatures(model, &forms)?;
    Ok(sigs
        .into_iter()
        .map(|(t, witness)| {
            let structure = structure_from_signs(m, &t[..npairs]);
            let rest: Signature = t[npairs..].to_vec();
            let orders = pu_orders_from_signs(m, &lookup, &rest);
            let mut cowinners: Vec<u8> = orders.iter().map(|o| *o.last().unwrap()).collect();
            cowinners.sort_unstable();
            cowinners.dedup();
            let mut losing_rounds: HashMap<u8, Vec<usize>> = HashMap::new();
            for o in &orders {
                for (round0, &a) in o[..o.len() - 1].iter().enumerate() {
                    let e = losing_rounds.entry(a).or_default();
                    if !e.contains(&(round0 + 1)) {
                        e.push(round0 + 1);
                    }
                }
            }
            Cell {
                structure,
                cowinners,
                losing_rounds,
                witness,
            }
        })
        .collect())
}

fn not_in(set: &[u8], a: u8) -> bool {
    !set.contains(&a)
}

// Existential clauses shared by both Condorcet-criterion theorems.
fn find_rd(cells: &[Cell]) -> Option<&Cell> {
    cells.iter().find(|c| {
        c.structure
            .cw
            .map(|cw| not_in(&c.cowinners, cw))
            .unwrap_or(false)
    })
}

fn find_nrs(cells: &[Cell]) -> Option<&Cell> {
    cells.iter().find(|c| {
        c.structure.acw.len() == 2 && c.structure.acw.iter().all(|&a| not_in(&c.cowinners, a))
    })
}

fn vl_clause_scoring(cells: &[Cell]) -> bool {
    cells.iter().all(|c| {
        let wcw = &c.structure.wcw;
        let mut union = c.cowinners.clone();
        for &a in wcw {
            if !union.contains(&a) {
                union.push(a);
            }
        }
        wcw.len() * union.len() <= 1
    })
}

const NOTE: &str = "label holds for all sufficiently large n of the stated parity";

fn case(
    label: Label,
    parity: Parity,
    witness: Option<MixtureWitness>,
    clause: &str,
    extra_note: Option<String>,
) -> AsymptoticCase {
    let validity_note = match extra_note {
        Some(e) => format!("{NOTE}; {e}"),
        None => NOTE.to_string(),
    };
    AsymptoticCase {
        label,
        parity,
        witness,
        clause: clause.to_string(),
        validity_note,
    }
}

/// Smoothed Condorcet-criterion label for an integer positional scoring
/// rule, for either parity of `n`.
pub fn classify_cc_scoring(
    model: &PreferenceModel,
    s: &[i64],
    parity: Parity,
) -> Result<AsymptoticCase> {
    let m = model.m();
    if m < 3 {
        return Err(Error::InvalidModel("classification needs m >= 3".into()));
    }
    crate::rules::validate_scoring(s)?;
    if s.len() != m {
        return Err(Error::InvalidRule(format!(
            "scoring vector length {} does not match m = {m}",
            s.len()
        )));
    }
    let cells = scoring_cells(model, s)?;
    let note = Some(format!(
        "scoring characterization requires n >= {}",
        8 * m + 49
    ));

    if vl_clause_scoring(&cells) {
        return Ok(case(
            Label::VeryLikely,
            parity,
            None,
            "every hull point has |WCW| * |winners + WCW| <= 1",
            note,
        ));
    }
    if let Some(c) = find_rd(&cells) {
        return Ok(case(
            Label::VeryUnlikely,
            parity,
            Some(c.witness.clone()),
            "some hull point has a Condorcet winner outside the winner set",
            note,
        ));
    }
    if let Some(c) = find_nrs(&cells) {
        return Ok(match parity {
            Parity::Even => case(
                Label::Unlikely,
                parity,
                Some(c.witness.clone()),
                "no robust dissatisfaction, but some hull point has both almost \
                 Condorcet winners outside the winner set",
                note,
            ),
            Parity::Odd => case(
                Label::VeryUnlikely,
                parity,
                Some(c.witness.clone()),
                "odd n: almost Condorcet winners outside the winner set yield a \
                 robust dissatisfaction",
                note,
            ),
        });
    }
    Ok(case(
        Label::Medium,
        parity,
        None,
        "no other clause applies",
        note,
    ))
}

/// Smoothed Condorcet-criterion label for an int-MRSE rule.
pub fn classify_cc_mrse(
    model: &PreferenceModel,
    vectors: &[Vec<i64>],
    parity: Parity,
) -> Result<AsymptoticCase> {
    let m = model.m();
    if m < 3 {
        return Err(Error::InvalidModel("classification needs m >= 3".into()));
    }
    if vectors.len() != m - 1 {
        return Err(Error::InvalidRule(format!(
            "MRSE over {m} alternatives needs {} component vectors",
            m - 1
        )));
    }
    // Component Condorcet-loser verdicts; vectors[k-2] runs the k-way round.
    let cl_ok: Vec<bool> = vectors
        .iter()
        .map(|s| rule_satisfies_cl(s).map(|(ok, _)| ok))
        .collect::<Result<_>>()?;
    if cl_ok.iter().all(|&ok| ok) {
        return Ok(case(
            Label::One,
            parity,
            None,
            "every component rule satisfies Condorcet loser",
            None,
        ));
    }

    let cells = mrse_cells(model, vectors)?;

    // Round i eliminates via the (m+1-i)-alternative component, stored at
    // vectors[m-i-1]; cl_ok is indexed the same way.
    let vl = cells.iter().all(|c| {
        c.structure.wcw.iter().all(|a| {
            c.losing_rounds
                .get(a)
                .map(|rounds| rounds.iter().all(|&i| cl_ok[m - i - 1]))
                .unwrap_or(true)
        })
    });
    if vl {
        return Ok(case(
            Label::VeryLikely,
            parity,
            None,
            "some component fails Condorcet loser, but every possible losing \
             round of every weak Condorcet winner uses a Condorcet-loser-safe \
             component",
            None,
        ));
    }
    if let Some(c) = find_rd(&cells) {
        return Ok(case(
            Label::VeryUnlikely,
            parity,
            Some(c.witness.clone()),
            "some hull point has a Condorcet winner outside the winner set",
            None,
        ));
    }
    if let Some(c) = find_nrs(&cells) {
        return Ok(match parity {
            Parity::Even => case(
                Label::Unlikely,
                parity,
                Some(c.witness.clone()),
                "no robust dissatisfaction, but some hull point has both almost \
                 Condorcet winners outside the winner set",
                None,
            ),
            Parity::Odd => case(
                Label::VeryUnlikely,
                parity,
                Some(c.witness.clone()),
                "odd n: almost Condorcet winners outside the winner set yield a \
                 robust dissatisfaction",
                None,
            ),
        });
    }
    Ok(case(
        Label::Medium,
        parity,
        None,
        "no other clause applies",
        None,
    ))
}

/// Routes a rule to the right Condorcet-criterion classifier.
pub fn classify_cc(
    model: &PreferenceModel,
    rule: &RuleSpec,
    parity: Parity,
) -> Result<AsymptoticCase> {
    let m = model.m();
    if rule.is_scoring() {
        classify_cc_scoring(model, &rule.scoring_vector(m)?, parity)
    } else if rule.is_mrse() {
        classify_cc_mrse(model, &rule.mrse_vectors(m)?, parity)
    } else if rule.is_condorcet_consistent() {
        Ok(case(
            Label::One,
            parity,
            None,
            "the rule elects the Condorcet winner by construction",
            None,
        ))
    } else {
        Err(Error::InvalidRule(format!(
            "no Condorcet-criterion classification for {rule}"
        )))
    }
}

/// Smoothed participation label for the six supported rule families. The
/// decisive test is exact hull membership of the uniform distribution.
pub fn classify_par(model: &PreferenceModel, family: &RuleSpec) -> Result<AsymptoticCase> {
    let m = model.m();
    if m < 4 {
        return Err(Error::BoundExceeded(
            "participation classification requires m >= 4".into(),
        ));
    }
    if !(family.is_mrse() || family.is_condorcet_consistent()) {
        return Err(Error::InvalidRule(format!(
            "no participation classification for {family}"
        )));
    }
    let q = factorial(m) as usize;
    // pi_uni in CH(Pi): every coordinate equals 1/m!, phrased as the integer
    // forms (m! e_i - 1) . pi = 0.
    let constraints: Vec<(Vec<i64>, FormRel)> = (0..q)
        .map(|i| {
            let mut f = vec![-1i64; q];
            f[i] += q as i64;
            (f, FormRel::Eq)
        })
        .collect();
    match mixture_feasibility(model, &constraints)? {
        Some(w) => Ok(AsymptoticCase {
            label: Label::Likely { ell: 1 },
            parity: Parity::Even,
            witness: Some(w),
            clause: "the uniform distribution lies in the hull".into(),
            validity_note: format!("{NOTE}; holds for both parities"),
        }),
        None => Ok(AsymptoticCase {
            label: Label::Indeterminate,
            parity: Parity::Even,
            witness: None,
            clause: "the uniform distribution is outside the hull".into(),
            validity_note: format!(
                "{NOTE}; satisfaction is at least 1 - Theta(n^(-l/2)) for some l >= 1, \
                 and may be VeryLikely or One; the exact case is out of scope"
            ),
        }),
    }
}

/// Closure-free per-point report of the Condorcet-criterion conditions at a
/// single (fractional) profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GisrReport {
    /// Robust satisfaction.
    pub rs: bool,
    /// Robust dissatisfaction.
    pub rd: bool,
    /// Non-robust satisfaction.
    pub nrs: bool,
    /// Rule-level always-satisfaction hint (the One-case test for MRSE;
    /// always false for scoring rules at large n).
    pub as_hint: bool,
}

pub fn gisr_conditions(rule: &RuleSpec, distribution: &[Rat]) -> Result<GisrReport> {
    let m = (2..=crate::ranking::MAX_INDEXED_M)
        .find(|&k| factorial(k) as usize == distribution.len())
        .ok_or_else(|| Error::InvalidModel("distribution length is not an m!".into()))?;
    let hist = crate::Histogram {
        m,
        entries: distribution.to_vec(),
    };
    let profile = Profile::from_histogram(&hist)?;
    let structure = crate::majority::majority_structure(&profile);
    let cowinners = rule.cowinners(&profile)?;

    let rd = structure
        .cw
        .map(|cw| not_in(&cowinners, cw))
        .unwrap_or(false);
    let nrs = structure.acw.len() == 2 && structure.acw.iter().all(|&a| not_in(&cowinners, a));

    let (rs, as_hint) = if rule.is_scoring() {
        let mut union = cowinners.clone();
        for &a in &structure.wcw {
            if !union.contains(&a) {
                union.push(a);
            }
        }
        (structure.wcw.len() * union.len() <= 1, false)
    } else if rule.is_mrse() {
        let vectors = rule.mrse_vectors(m)?;
        let cl_ok: Vec<bool> = vectors
            .iter()
            .map(|s| rule_satisfies_cl(s).map(|(ok, _)| ok))
            .collect::<Result<_>>()?;
        let mut rs = true;
        for &a in &structure.wcw {
            let rounds = crate::rules::mrse::possible_losing_rounds(
                &vectors,
                &profile,
                a,
                crate::rules::DEFAULT_PUT_BOUND,
            )?;
            if rounds.iter().any(|&i| !cl_ok[m - i - 1]) {
                rs = false;
            }
        }
        (rs, cl_ok.iter().all(|&ok| ok))
    } else {
        return Err(Error::InvalidRule(format!(
            "per-point conditions are defined for scoring and MRSE rules, not {rule}"
        )));
    };

    Ok(GisrReport {
        rs,
        rd,
        nrs,
        as_hint,
    })
}
