//! Integer linear forms on histogram space and their sign signatures.

use num::{BigInt, Signed, Zero};

use crate::ranking::factorial;
use crate::{Rat, Ranking};

/// Sign of a single form evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

/// A `{+,-,0}` vector aligned with a [`LinearFormSet`].
pub type Signature = Vec<Sign>;

/// Where a hyperplane family came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    EdgeOrder,
    Copeland,
    Mrse(String),
    Scoring(String),
    Custom(String),
}

/// A finite set of integer forms on `R^{m!}`, each row reduced to coprime
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormSet {
    pub m: usize,
    pub forms: Vec<Vec<i64>>,
    pub provenance: Provenance,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides out the gcd of the entries (leaves the zero vector alone).
pub fn coprime(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

impl LinearFormSet {
    pub fn new(m: usize, forms: Vec<Vec<i64>>, provenance: Provenance) -> Self {
        let forms = forms.into_iter().map(coprime).collect();
        LinearFormSet {
            m,
            forms,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// `Pair_{a,b}`: the +-1 vector whose `R`-component is +1 iff `a` precedes
/// `b` in `R`.
pub fn pair_vector(m: usize, a: u8, b: u8) -> Vec<i64> {
    Ranking::all(m)
        .iter()
        .map(|r| if r.prefers(a, b) { 1 } else { -1 })
        .collect()
}

/// Score-difference vector for a positional scoring vector `s`:
/// the `R`-component is `s(R,a) - s(R,b)`.
pub fn score_diff_vector(m: usize, s: &[i64], a: u8, b: u8) -> Vec<i64> {
    Ranking::all(m)
        .iter()
        .map(|r| s[r.position(a)] - s[r.position(b)])
        .collect()
}

/// Restricted score difference: the `R`-component is the score gap between
/// `a` and `b` in `R` projected onto the alternatives outside `removed`,
/// under the round scoring vector `s` (of length `m - removed.len()`).
pub fn restricted_score_diff_vector(
    m: usize,
    s: &[i64],
    removed: &[u8],
    a: u8,
    b: u8,
) -> Vec<i64> {
    Ranking::all(m)
        .iter()
        .map(|r| {
            let kept: Vec<u8> = r
                .order()
                .iter()
                .copied()
                .filter(|x| !removed.contains(x))
                .collect();
            let pa = kept.iter().position(|&x| x == a).unwrap();
            let pb = kept.iter().position(|&x| x == b).unwrap();
            s[pa] - s[pb]
        })
        .collect()
}

/// 0/1 indicator of a single ranking.
pub fn ranking_indicator(m: usize, r: &Ranking) -> Vec<i64> {
    let mut v = vec![0i64; factorial(m) as usize];
    v[r.index() as usize] = 1;
    v
}

/// Hyperplanes comparing the weights of every two distinct WMG edges.
pub fn edge_order_forms(m: usize) -> LinearFormSet {
    let mut pairs = Vec::new();
    for a in 1..=m as u8 {
        for b in 1..=m as u8 {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    let mut forms = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let (a1, b1) = pairs[i];
            let (a2, b2) = pairs[j];
            let v1 = pair_vector(m, a1, b1);
            let v2 = pair_vector(m, a2, b2);
            forms.push(v1.iter().zip(&v2).map(|(x, y)| x - y).collect());
        }
    }
    LinearFormSet::new(m, forms, Provenance::EdgeOrder)
}

/// One pairwise-margin hyperplane per unordered pair, in `(a, b)` order with
/// `a < b`; the sign of entry `(a,b)` is the sign of `w(a,b)`.
pub fn copeland_forms(m: usize) -> LinearFormSet {
    let mut forms = Vec::new();
    for a in 1..=m as u8 {
        for b in a + 1..=m as u8 {
            forms.push(pair_vector(m, a, b));
        }
    }
    LinearFormSet::new(m, forms, Provenance::Copeland)
}

/// Score-difference hyperplanes of a positional scoring rule, pairs `a < b`.
pub fn scoring_forms(m: usize, s: &[i64]) -> LinearFormSet {
    let mut forms = Vec::new();
    for a in 1..=m as u8 {
        for b in a + 1..=m as u8 {
            forms.push(score_diff_vector(m, s, a, b));
        }
    }
    LinearFormSet::new(m, forms, Provenance::Scoring(format!("{s:?}")))
}

/// MRSE hyperplanes: for every removed set `B` (up to `m - 2` alternatives)
/// and every surviving pair `a < b`, the score gap in the restriction.
/// Returns the form set plus the `(B, a, b)` index of each row.
pub fn mrse_forms(m: usize, vectors: &[Vec<i64>]) -> (LinearFormSet, Vec<(Vec<u8>, u8, u8)>) {
    let mut forms = Vec::new();
    let mut index = Vec::new();
    let all: Vec<u8> = (1..=m as u8).collect();
    for mask in 0u32..(1 << m) {
        let removed: Vec<u8> = all
            .iter()
            .copied()
            .filter(|&a| mask & (1 << (a - 1)) != 0)
            .collect();
        let k = m - removed.len();
        if k < 2 {
            continue;
        }
        let s = &vectors[k - 2];
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let (a, b) = (all[i], all[j]);
                if removed.contains(&a) || removed.contains(&b) {
                    continue;
                }
                forms.push(restricted_score_diff_vector(m, s, &removed, a, b));
                index.push((removed.clone(), a, b));
            }
        }
    }
    (
        LinearFormSet::new(m, forms, Provenance::Mrse(format!("{vectors:?}"))),
        index,
    )
}

/// Exact dot product of an integer form with a rational vector.
pub fn dot(form: &[i64], x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (c, v) in form.iter().zip(x) {
        if *c != 0 {
            acc += Rat::from_integer(BigInt::from(*c)) * v;
        }
    }
    acc
}

pub fn sign_of(r: &Rat) -> Sign {
    if r.is_positive() {
        Sign::Plus
    } else if r.is_negative() {
        Sign::Minus
    } else {
        Sign::Zero
    }
}

/// `Sign_H(x)`: component-wise sign of every form at `x`.
pub fn sign_signature(forms: &LinearFormSet, x: &[Rat]) -> Signature {
    forms.forms.iter().map(|f| sign_of(&dot(f, x))).collect()
}

/// No zero components.
pub fn is_atomic(t: &Signature) -> bool {
    t.iter().all(|&s| s != Sign::Zero)
}

/// `t1` refines `t2`: they agree wherever `t2` is nonzero.
pub fn refines(t1: &Signature, t2: &Signature) -> bool {
    t1.len() == t2.len()
        && t1
            .iter()
            .zip(t2)
            .all(|(&a, &b)| b == Sign::Zero || a == b)
}

/// Keeps agreeing components, zeroes the rest.
pub fn oplus(t1: &Signature, t2: &Signature) -> Signature {
    t1.iter()
        .zip(t2)
        .map(|(&a, &b)| if a == b { a } else { Sign::Zero })
        .collect()
}

/// Compact text form of a signature, e.g. `+-0`.
pub fn signature_to_string(t: &Signature) -> String {
    t.iter()
        .map(|s| match s {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        })
        .collect()
}

pub fn signature_from_string(s: &str) -> crate::Result<Signature> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            '0' => Ok(Sign::Zero),
            other => Err(crate::Error::Parse(format!("bad sign character {other:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, Profile};

    fn pi_uni(m: usize) -> Vec<Rat> {
        let mut p = Profile::new(m);
        let n = factorial(m) as i64;
        for r in Ranking::all(m) {
            p.add(r, ratio(1, n)).unwrap();
        }
        p.histogram().entries
    }

    fn pi_hat() -> Vec<Rat> {
        let mut p = Profile::new(3);
        for r in Ranking::all(3) {
            let w = if r.order() == [1, 2, 3] || r.order() == [2, 1, 3] {
                ratio(1, 4)
            } else {
                ratio(1, 8)
            };
            p.add(r, w).unwrap();
        }
        p.histogram().entries
    }

    #[test]
    fn edge_order_signature_of_uniform_is_zero() {
        let h = edge_order_forms(3);
        let t = sign_signature(&h, &pi_uni(3));
        assert!(t.iter().all(|&s| s == Sign::Zero));
    }

    #[test]
    fn copeland_signature_of_pi_hat() {
        // Pairs in order (1,2), (1,3), (2,3).
        let h = copeland_forms(3);
        let t = sign_signature(&h, &pi_hat());
        assert_eq!(t, vec![Sign::Zero, Sign::Plus, Sign::Plus]);
    }

    #[test]
    fn atomic_iff_no_zero() {
        assert!(is_atomic(&vec![Sign::Plus, Sign::Minus]));
        assert!(!is_atomic(&vec![Sign::Plus, Sign::Zero]));
    }

    #[test]
    fn oplus_example() {
        let t1 = vec![Sign::Plus, Sign::Minus, Sign::Zero];
        let t2 = vec![Sign::Plus, Sign::Zero, Sign::Zero];
        assert_eq!(oplus(&t1, &t2), vec![Sign::Plus, Sign::Zero, Sign::Zero]);
        assert!(refines(&t1, &oplus(&t1, &t2)));
        assert!(refines(&t2, &oplus(&t1, &t2)));
    }

    #[test]
    fn refinement_is_reflexive() {
        let t = vec![Sign::Plus, Sign::Zero, Sign::Minus];
        assert!(refines(&t, &t));
    }

    #[test]
    fn restricted_score_diff_matches_projection() {
        // After removing 3, plurality gap between 1 and 2 per ranking.
        let v = restricted_score_diff_vector(3, &[1, 0], &[3], 1, 2);
        // Canonical order: 123,132,213,231,312,321
        assert_eq!(v, vec![1, 1, -1, -1, 1, -1]);
    }

    #[test]
    fn coprime_reduction() {
        assert_eq!(coprime(vec![2, -4, 6]), vec![1, -2, 3]);
        assert_eq!(coprime(vec![0, 0]), vec![0, 0]);
        assert_eq!(coprime(vec![3, 5]), vec![3, 5]);
    }
}
