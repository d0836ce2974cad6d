//! Small-instance activation analysis: exhaustive lattice-point activity
//! plus hull-side cone weights, mapped to the seven asymptotic cases.
//!
//! This is a research oracle for three alternatives; it exists to validate
//! the classifier, not for production use.

use std::collections::HashMap;

use crate::geometry::forms::Sign;
use crate::geometry::mixture::feasible_signatures;
use crate::geometry::polyhedron::Polyhedron;
use crate::model::PreferenceModel;
use crate::{Error, Result};

/// Weight of a hull point against one polyhedron in the activation graph.
/// `Sentinel` stands for the formal `-n/log n` value: negative, but above
/// negative infinity; only its ordering role is preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConeWeight {
    NegInfinity,
    Sentinel,
    Dim(usize),
}

/// The seven asymptotic cases of the categorization machinery, with the
/// polynomial degree recorded where one applies (`rate = n^{-degree/2}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    Zero,
    VeryUnlikely,
    Unlikely { degree: usize },
    Medium,
    Likely { degree: usize },
    VeryLikely,
    One,
}

#[derive(Debug, Clone)]
pub struct ActivationReport {
    pub n: u64,
    pub c_active: Vec<bool>,
    pub cstar_active: Option<Vec<bool>>,
    pub beta: ConeWeight,
    pub alpha: ConeWeight,
    pub beta_star: Option<ConeWeight>,
    pub alpha_star: Option<ConeWeight>,
    /// Label for the adversarial lower bound (the smoothed-satisfaction side).
    pub inf_label: Option<CaseLabel>,
    /// Label for the adversarial upper bound.
    pub sup_label: Option<CaseLabel>,
}

// Canonical key for a row so that f and -f share one signature slot.
fn canonical(row: &[i64]) -> (Vec<i64>, bool) {
    match row.iter().find(|&&c| c != 0) {
        Some(&c) if c < 0 => (row.iter().map(|x| -x).collect(), true),
        _ => (row.to_vec(), false),
    }
}

struct FormIndex {
    forms: Vec<Vec<i64>>,
    map: HashMap<Vec<i64>, usize>,
}

impl FormIndex {
    fn new() -> Self {
        FormIndex {
            forms: Vec::new(),
            map: HashMap::new(),
        }
    }

    fn intern(&mut self, row: &[i64]) -> (usize, bool) {
        let (key, flipped) = canonical(row);
        let idx = *self.map.entry(key.clone()).or_insert_with(|| {
            self.forms.push(key);
            self.forms.len() - 1
        });
        (idx, flipped)
    }
}

fn effective_sign(s: Sign, flipped: bool) -> Sign {
    if !flipped {
        return s;
    }
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
        Sign::Zero => Sign::Zero,
    }
}

struct SetAnalysis {
    active: Vec<bool>,
    // per poly: rows as (form index, flipped) for cone-membership tests
    rows: Vec<Vec<(usize, bool)>>,
    dims: Vec<Option<usize>>,
}

fn analyze_set(polys: &[Polyhedron], n: u64, index: &mut FormIndex) -> SetAnalysis {
    let active: Vec<bool> = polys.iter().map(|p| p.active_at(n)).collect();
    let rows: Vec<Vec<(usize, bool)>> = polys
        .iter()
        .map(|p| p.a.iter().map(|r| index.intern(r)).collect())
        .collect();
    let dims: Vec<Option<usize>> = polys
        .iter()
        .zip(&active)
        .map(|(p, &act)| if act { Some(p.cone_dimension()) } else { None })
        .collect();
    SetAnalysis { active, rows, dims }
}

// max over the set's polyhedra of the activation-graph edge weight at a
// hull point whose full sign pattern is `sig`.
fn max_weight(analysis: &SetAnalysis, sig: &[Sign]) -> ConeWeight {
    let mut best = ConeWeight::NegInfinity;
    for (i, rows) in analysis.rows.iter().enumerate() {
        if !analysis.active[i] {
            continue;
        }
        let in_cone = rows
            .iter()
            .all(|&(fi, fl)| effective_sign(sig[fi], fl) != Sign::Plus);
        let w = if in_cone {
            ConeWeight::Dim(analysis.dims[i].unwrap())
        } else {
            ConeWeight::Sentinel
        };
        if w > best {
            best = w;
        }
    }
    best
}

fn inf_label(beta: ConeWeight, alpha_star: Option<ConeWeight>, q: usize) -> Option<CaseLabel> {
    match beta {
        ConeWeight::NegInfinity => Some(CaseLabel::Zero),
        ConeWeight::Sentinel => Some(CaseLabel::VeryUnlikely),
        ConeWeight::Dim(d) if d < q => Some(CaseLabel::Unlikely { degree: q - d }),
        ConeWeight::Dim(_) => match alpha_star? {
            ConeWeight::Dim(d) if d == q => Some(CaseLabel::Medium),
            ConeWeight::Dim(d) => Some(CaseLabel::Likely { degree: q - d }),
            ConeWeight::Sentinel => Some(CaseLabel::VeryLikely),
            ConeWeight::NegInfinity => Some(CaseLabel::One),
        },
    }
}

/// Evaluates the activation graph for `c` (and, when given, an almost
/// complement `cstar`) over the hull of `model` at population size `n`.
///
/// Restricted to `m = 3` and `n <= 30`: activity is decided by exhaustive
/// enumeration of the lattice slice. Hull-side cone weights are exact: the
/// weight is constant on each feasible sign pattern of the involved rows,
/// and the patterns are enumerated with LP pruning.
pub fn activation_and_case(
    c: &[Polyhedron],
    cstar: Option<&[Polyhedron]>,
    model: &PreferenceModel,
    n: u64,
) -> Result<ActivationReport> {
    if model.m() != 3 {
        return Err(Error::BoundExceeded(
            "activation analysis is restricted to m = 3".into(),
        ));
    }
    if n > 30 {
        return Err(Error::BoundExceeded(format!(
            "activation analysis enumerates the lattice slice; n = {n} exceeds 30"
        )));
    }
    if c.is_empty() {
        return Err(Error::InvalidModel("no polyhedra given".into()));
    }
    let q = 6usize;
    let mut index = FormIndex::new();
    let c_an = analyze_set(c, n, &mut index);
    let cstar_an = cstar.map(|polys| analyze_set(polys, n, &mut index));

    let signatures = feasible_signatures(model, &index.forms)?;
    let mut beta: Option<ConeWeight> = None;
    let mut alpha: Option<ConeWeight> = None;
    let mut beta_star: Option<ConeWeight> = None;
    let mut alpha_star: Option<ConeWeight> = None;
    for (sig, _witness) in &signatures {
        let w = max_weight(&c_an, sig);
        beta = Some(match beta {
            None => w,
            Some(b) => b.min(w),
        });
        alpha = Some(match alpha {
            None => w,
            Some(a) => a.max(w),
        });
        if let Some(an) = &cstar_an {
            let ws = max_weight(an, sig);
            beta_star = Some(match beta_star {
                None => ws,
                Some(b) => b.min(ws),
            });
            alpha_star = Some(match alpha_star {
                None => ws,
                Some(a) => a.max(ws),
            });
        }
    }
    let beta = beta.expect("hull is nonempty");
    let alpha = alpha.expect("hull is nonempty");

    let inf = inf_label(beta, alpha_star, q);
    // The sup side reads the same table with (alpha, beta*): the first three
    // cases bound the max-adversary, the last three flip around the
    // complement, identical structure.
    let sup = inf_label(alpha, beta_star, q);

    Ok(ActivationReport {
        n,
        c_active: c_an.active,
        cstar_active: cstar_an.map(|a| a.active),
        beta,
        alpha,
        beta_star,
        alpha_star,
        inf_label: inf,
        sup_label: sup,
    })
}
