//! Finite single-agent preference models: the adversary's set of strictly
//! positive distributions over rankings.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::profile::{fmt_rat, parse_rat};
use crate::ranking::factorial;
use crate::{Error, Profile, Rat, Ranking, Result};

/// A finite set of strictly positive distributions over `L(A)`, with the
/// positivity floor `epsilon` recorded explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceModel {
    m: usize,
    /// Each distribution as a length-`m!` histogram vector summing to one.
    distributions: Vec<Vec<Rat>>,
    epsilon: Rat,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    m: usize,
    epsilon: String,
    distributions: Vec<BTreeMap<String, String>>,
}

impl PreferenceModel {
    pub fn new(m: usize, distributions: Vec<Vec<Rat>>) -> Result<Self> {
        if distributions.is_empty() {
            return Err(Error::InvalidModel("no distributions".into()));
        }
        let len = factorial(m) as usize;
        let mut epsilon: Option<Rat> = None;
        for d in &distributions {
            if d.len() != len {
                return Err(Error::InvalidModel(format!(
                    "distribution has {} entries, expected {len}",
                    d.len()
                )));
            }
            let total: Rat = d.iter().fold(Rat::zero(), |acc, v| acc + v);
            if !total.is_one() {
                return Err(Error::InvalidModel(format!("distribution sums to {total}")));
            }
            for v in d {
                if !v.is_positive() {
                    return Err(Error::InvalidModel(
                        "distributions must be strictly positive".into(),
                    ));
                }
                epsilon = Some(match epsilon {
                    None => v.clone(),
                    Some(e) => e.min(v.clone()),
                });
            }
        }
        Ok(PreferenceModel {
            m,
            distributions,
            epsilon: epsilon.unwrap(),
        })
    }

    /// Impartial culture: the uniform distribution alone.
    pub fn impartial_culture(m: usize) -> Self {
        PreferenceModel::new(m, vec![uniform_distribution(m)]).unwrap()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn epsilon(&self) -> &Rat {
        &self.epsilon
    }

    pub fn distributions(&self) -> &[Vec<Rat>] {
        &self.distributions
    }

    pub fn len(&self) -> usize {
        self.distributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distributions.is_empty()
    }

    /// Views distribution `j` as a fractional profile.
    pub fn distribution_profile(&self, j: usize) -> Profile {
        let mut p = Profile::new(self.m);
        for (i, w) in self.distributions[j].iter().enumerate() {
            if !w.is_zero() {
                p.add(Ranking::from_index(self.m, i as u64).unwrap(), w.clone())
                    .unwrap();
            }
        }
        p
    }

    /// The convex combination `sum lambda_j pi_j` as a histogram vector.
    pub fn mix(&self, lambda: &[Rat]) -> Vec<Rat> {
        let len = factorial(self.m) as usize;
        let mut out = vec![Rat::zero(); len];
        for (d, l) in self.distributions.iter().zip(lambda) {
            if l.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(d) {
                *o += l * v;
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let j = ModelJson {
            m: self.m,
            epsilon: fmt_rat(&self.epsilon),
            distributions: self
                .distributions
                .iter()
                .map(|d| {
                    let mut map = BTreeMap::new();
                    for (i, w) in d.iter().enumerate() {
                        if !w.is_zero() {
                            let r = Ranking::from_index(self.m, i as u64).unwrap();
                            map.insert(r.to_string(), fmt_rat(w));
                        }
                    }
                    map
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ModelJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let len = factorial(j.m) as usize;
        let mut distributions = Vec::new();
        for map in &j.distributions {
            let mut d = vec![Rat::zero(); len];
            for (rs, ws) in map {
                let r = Ranking::parse(rs)?;
                if r.m() != j.m {
                    return Err(Error::Parse(format!("ranking {rs} has wrong length")));
                }
                let w = parse_rat(ws)
                    .ok_or_else(|| Error::Parse(format!("bad rational {ws:?}")))?;
                d[r.index() as usize] = w;
            }
            distributions.push(d);
        }
        PreferenceModel::new(j.m, distributions)
    }
}

/// The uniform distribution over rankings, as a histogram vector.
pub fn uniform_distribution(m: usize) -> Vec<Rat> {
    let n = factorial(m);
    vec![Rat::new(1.into(), n.into()); n as usize]
}

/// Builds a distribution vector from `(ranking order, weight)` pairs.
pub fn distribution_from_pairs(m: usize, pairs: &[(&[u8], Rat)]) -> Result<Vec<Rat>> {
    let mut d = vec![Rat::zero(); factorial(m) as usize];
    for (o, w) in pairs {
        let r = Ranking::new(o.to_vec())?;
        d[r.index() as usize] = w.clone();
    }
    Ok(d)
}
