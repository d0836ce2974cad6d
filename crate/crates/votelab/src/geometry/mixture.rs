//! Exact LP feasibility over the convex hull of a finite preference model.

use num::{One, Signed, Zero};

use crate::geometry::forms::{dot, sign_of, Sign, Signature};
use crate::lp::{Lp, LpOutcome, Rel};
use crate::model::PreferenceModel;
use crate::{Error, Rat, Result};

/// Relation a form must satisfy at the sought mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormRel {
    Gt,
    Ge,
    Eq,
    Le,
    Lt,
}

/// Convex weights over the model members together with the mixed
/// distribution they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureWitness {
    pub lambda: Vec<Rat>,
    pub distribution: Vec<Rat>,
}

/// Decides whether some `pi` in `CH(Pi)` satisfies every `(form, rel)`
/// constraint. Strict relations are handled by maximizing a shared slack
/// bounded by one; the system is strictly feasible iff the optimum is
/// positive. A returned witness is re-verified against every constraint
/// before being handed back.
pub fn mixture_feasibility(
    model: &PreferenceModel,
    constraints: &[(Vec<i64>, FormRel)],
) -> Result<Option<MixtureWitness>> {
    if model.is_empty() {
        return Err(Error::InvalidModel("empty model".into()));
    }
    let k = model.len();
    let has_strict = constraints
        .iter()
        .any(|(_, rel)| matches!(rel, FormRel::Gt | FormRel::Lt));
    // Variables: lambda_1..lambda_k (and slack t when strict rows exist).
    let nv = if has_strict { k + 1 } else { k };
    let mut lp = Lp::new(nv);

    let mut simplex_row = vec![Rat::zero(); nv];
    for c in simplex_row.iter_mut().take(k) {
        *c = Rat::one();
    }
    lp.constrain(simplex_row, Rel::Eq, Rat::one());

    for (form, rel) in constraints {
        // Row over lambda: sum_j lambda_j (form . pi_j).
        let vals: Vec<Rat> = model
            .distributions()
            .iter()
            .map(|d| dot(form, d))
            .collect();
        let mut row = vec![Rat::zero(); nv];
        for (slot, v) in row.iter_mut().zip(&vals) {
            *slot = v.clone();
        }
        match rel {
            FormRel::Ge => lp.constrain(row, Rel::Ge, Rat::zero()),
            FormRel::Le => lp.constrain(row, Rel::Le, Rat::zero()),
            FormRel::Eq => lp.constrain(row, Rel::Eq, Rat::zero()),
            FormRel::Gt => {
                row[k] = -Rat::one();
                lp.constrain(row, Rel::Ge, Rat::zero());
            }
            FormRel::Lt => {
                let mut neg: Vec<Rat> = row.iter().map(|v| -v.clone()).collect();
                neg[k] = -Rat::one();
                lp.constrain(neg, Rel::Ge, Rat::zero());
            }
        }
    }

    let lambda = if has_strict {
        let mut cap = vec![Rat::zero(); nv];
        cap[k] = Rat::one();
        lp.constrain(cap, Rel::Le, Rat::one());
        lp.objective = vec![Rat::zero(); nv];
        lp.objective[k] = Rat::one();
        match lp.solve() {
            LpOutcome::Optimal(v, x) if v.is_positive() => x[..k].to_vec(),
            LpOutcome::Optimal(..) | LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => unreachable!("slack is capped"),
        }
    } else {
        match lp.feasible_point() {
            Some(x) => x[..k].to_vec(),
            None => return Ok(None),
        }
    };

    let distribution = model.mix(&lambda);
    // Witness soundness: every constraint must hold exactly on re-evaluation.
    for (form, rel) in constraints {
        let v = dot(form, &distribution);
        let ok = match rel {
            FormRel::Gt => v.is_positive(),
            FormRel::Ge => !v.is_negative(),
            FormRel::Eq => v.is_zero(),
            FormRel::Le => !v.is_positive(),
            FormRel::Lt => v.is_negative(),
        };
        assert!(ok, "LP witness failed re-verification");
    }
    Ok(Some(MixtureWitness {
        lambda,
        distribution,
    }))
}

/// Constraints pinning the signs of `forms` to the signature `t`.
pub fn signature_constraints(forms: &[Vec<i64>], t: &Signature) -> Vec<(Vec<i64>, FormRel)> {
    forms
        .iter()
        .zip(t)
        .map(|(f, s)| {
            let rel = match s {
                Sign::Plus => FormRel::Gt,
                Sign::Minus => FormRel::Lt,
                Sign::Zero => FormRel::Eq,
            };
            (f.clone(), rel)
        })
        .collect()
}

/// Enumerates every signature of `forms` realized somewhere on `CH(Pi)`,
/// together with a witness mixture per signature. Uses depth-first sign
/// assignment with LP pruning; for a singleton model this reduces to a
/// single direct evaluation.
pub fn feasible_signatures(
    model: &PreferenceModel,
    forms: &[Vec<i64>],
) -> Result<Vec<(Signature, MixtureWitness)>> {
    if model.len() == 1 {
        let d = model.distributions()[0].clone();
        let t: Signature = forms.iter().map(|f| sign_of(&dot(f, &d))).collect();
        return Ok(vec![(
            t,
            MixtureWitness {
                lambda: vec![Rat::one()],
                distribution: d,
            },
        )]);
    }
    let mut out = Vec::new();
    let mut prefix: Signature = Vec::new();
    descend(model, forms, &mut prefix, &mut out)?;
    Ok(out)
}

fn descend(
    model: &PreferenceModel,
    forms: &[Vec<i64>],
    prefix: &mut Signature,
    out: &mut Vec<(Signature, MixtureWitness)>,
) -> Result<()> {
    let constraints = signature_constraints(&forms[..prefix.len()], prefix);
    let Some(witness) = mixture_feasibility(model, &constraints)? else {
        return Ok(());
    };
    if prefix.len() == forms.len() {
        out.push((prefix.clone(), witness));
        return Ok(());
    }
    for s in [Sign::Plus, Sign::Minus, Sign::Zero] {
        prefix.push(s);
        descend(model, forms, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}
