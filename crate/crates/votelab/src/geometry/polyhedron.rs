//! Integer polyhedra on histogram space: construction from combinatorial
//! properties, membership, and characteristic-cone dimension.

use num::{BigInt, Signed, Zero};

use crate::geometry::forms::{
    coprime, dot, pair_vector, ranking_indicator, LinearFormSet, Sign, Signature,
};
use crate::lp::{Lp, LpOutcome, Rel};
use crate::majority::{Edge, WeightedMajorityGraph};
use crate::ranking::factorial;
use crate::{Rat, Ranking};

/// `{x : A x <= b}` with coprime integer rows on `R^{m!}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron {
    pub m: usize,
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
}

/// Region constructors mirroring the combinatorial sets the categorization
/// machinery works with. Strict inequalities on integer points follow the
/// `<= -1` convention for coprime integer rows.
pub enum RegionKind<'a> {
    /// Histograms of integer profiles whose UMG equals the sign pattern of
    /// the given graph (only edge directions and ties are read).
    UmgEquals(&'a WeightedMajorityGraph),
    /// Histograms whose sign signature under the form set is exactly `t`.
    Signature(&'a LinearFormSet, &'a Signature),
    /// `a` is the Condorcet winner and the signature is exactly `t`.
    CwAndSignature(u8, &'a LinearFormSet, &'a Signature),
    /// The profile contains an `R`-vote, has signature `t1`, and removing
    /// one `R`-vote leaves signature `t2`.
    ParPair(&'a LinearFormSet, &'a Signature, &'a Ranking, &'a Signature),
}

fn push_signature_rows(
    rows: &mut Vec<Vec<i64>>,
    rhs: &mut Vec<i64>,
    forms: &LinearFormSet,
    t: &Signature,
    shift: Option<&[i64]>, // evaluate at x - shift instead of x
) {
    for (f, &s) in forms.forms.iter().zip(t) {
        let offset = |row: &[i64]| -> i64 {
            match shift {
                None => 0,
                Some(v) => row.iter().zip(v).map(|(a, b)| a * b).sum(),
            }
        };
        match s {
            Sign::Plus => {
                let row: Vec<i64> = f.iter().map(|c| -c).collect();
                let o = offset(&row);
                rows.push(row);
                rhs.push(-1 + o);
            }
            Sign::Minus => {
                let row = f.clone();
                let o = offset(&row);
                rows.push(row);
                rhs.push(-1 + o);
            }
            Sign::Zero => {
                let neg: Vec<i64> = f.iter().map(|c| -c).collect();
                let o_neg = offset(&neg);
                let o_pos = offset(f);
                rows.push(neg);
                rhs.push(o_neg);
                rows.push(f.clone());
                rhs.push(o_pos);
            }
        }
    }
}

pub fn build_region(m: usize, kind: RegionKind<'_>) -> Polyhedron {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    match kind {
        RegionKind::UmgEquals(g) => {
            for a in 1..=m as u8 {
                for b in a + 1..=m as u8 {
                    match g.edge(a, b) {
                        Edge::Beats => {
                            rows.push(pair_vector(m, b, a));
                            rhs.push(-1);
                        }
                        Edge::Loses => {
                            rows.push(pair_vector(m, a, b));
                            rhs.push(-1);
                        }
                        Edge::Tied => {
                            rows.push(pair_vector(m, a, b));
                            rhs.push(0);
                            rows.push(pair_vector(m, b, a));
                            rhs.push(0);
                        }
                    }
                }
            }
        }
        RegionKind::Signature(forms, t) => {
            push_signature_rows(&mut rows, &mut rhs, forms, t, None);
        }
        RegionKind::CwAndSignature(a, forms, t) => {
            for b in 1..=m as u8 {
                if b != a {
                    rows.push(pair_vector(m, b, a));
                    rhs.push(-1);
                }
            }
            push_signature_rows(&mut rows, &mut rhs, forms, t, None);
        }
        RegionKind::ParPair(forms, t1, r, t2) => {
            let ind = ranking_indicator(m, r);
            rows.push(ind.iter().map(|c| -c).collect());
            rhs.push(-1);
            push_signature_rows(&mut rows, &mut rhs, forms, t1, None);
            push_signature_rows(&mut rows, &mut rhs, forms, t2, Some(&ind));
        }
    }
    let rows: Vec<Vec<i64>> = rows.into_iter().map(coprime).collect();
    Polyhedron {
        m,
        a: rows,
        b: rhs,
    }
}

impl Polyhedron {
    pub fn ambient_dim(&self) -> usize {
        factorial(self.m) as usize
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "m": self.m, "a": self.a, "b": self.b }).to_string()
    }

    pub fn from_json(s: &str) -> crate::Result<Polyhedron> {
        #[derive(serde::Deserialize)]
        struct Raw {
            m: usize,
            a: Vec<Vec<i64>>,
            b: Vec<i64>,
        }
        let raw: Raw =
            serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))?;
        let dim = factorial(raw.m) as usize;
        if raw.a.len() != raw.b.len() || raw.a.iter().any(|r| r.len() != dim) {
            return Err(crate::Error::Parse("inconsistent polyhedron shape".into()));
        }
        Ok(Polyhedron {
            m: raw.m,
            a: raw.a,
            b: raw.b,
        })
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.a
            .iter()
            .zip(&self.b)
            .all(|(row, b)| dot(row, x) <= Rat::from_integer(BigInt::from(*b)))
    }

    /// Membership in the characteristic cone `{x : A x <= 0}`.
    pub fn cone_contains(&self, x: &[Rat]) -> bool {
        self.a.iter().all(|row| !dot(row, x).is_positive())
    }

    /// Is there any real point at all?
    pub fn is_empty(&self) -> bool {
        self.feasibility_lp().feasible_point().is_none()
    }

    // x free, so split into positive and negative parts: x = u - v.
    fn feasibility_lp(&self) -> Lp {
        let q = self.ambient_dim();
        let mut lp = Lp::new(2 * q);
        for (row, b) in self.a.iter().zip(&self.b) {
            let mut coeffs = Vec::with_capacity(2 * q);
            for &c in row {
                coeffs.push(crate::rat(c));
            }
            for &c in row {
                coeffs.push(crate::rat(-c));
            }
            lp.constrain(coeffs, Rel::Le, crate::rat(*b));
        }
        lp
    }

    /// Dimension of the characteristic cone, via essential equalities. A row
    /// `a` is essential iff its form vanishes on the whole cone; since the
    /// cone already enforces `a.x <= 0`, this is decided by the exact LP
    /// `max -a.x  s.t.  A x <= 0, -a.x <= 1` (essential iff the optimum is
    /// 0). The dimension is the ambient dimension minus the rational rank of
    /// the essential rows.
    pub fn cone_dimension(&self) -> usize {
        let q = self.ambient_dim();
        let mut essential: Vec<&Vec<i64>> = Vec::new();
        for row in &self.a {
            let mut lp = Lp::new(2 * q);
            let split = |r: &[i64]| -> Vec<Rat> {
                let mut coeffs = Vec::with_capacity(2 * q);
                for &c in r {
                    coeffs.push(crate::rat(c));
                }
                for &c in r {
                    coeffs.push(crate::rat(-c));
                }
                coeffs
            };
            let negated: Vec<i64> = row.iter().map(|c| -c).collect();
            for other in &self.a {
                lp.constrain(split(other), Rel::Le, crate::rat(0));
            }
            lp.constrain(split(&negated), Rel::Le, crate::rat(1));
            lp.objective = split(&negated);
            match lp.solve() {
                LpOutcome::Optimal(v, _) => {
                    if v.is_zero() {
                        essential.push(row);
                    }
                }
                LpOutcome::Unbounded => {}
                LpOutcome::Infeasible => unreachable!("cone contains the origin"),
            }
        }
        q - rational_rank(&essential, q)
    }

    /// Exact membership of a nonnegative integer point (pure `i64` path for
    /// the lattice enumeration; margins of small profiles cannot overflow).
    pub fn contains_int(&self, x: &[u64]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, b)| {
            let dot: i64 = row.iter().zip(x).map(|(c, &v)| c * v as i64).sum();
            dot <= *b
        })
    }

    /// Nonnegative integer points with L1 norm `n` (exhaustive; small
    /// ambient dimensions only — this is the m = 3 research oracle).
    pub fn integer_points_l1(&self, n: u64) -> Vec<Vec<u64>> {
        let q = self.ambient_dim();
        assert!(q <= 24, "lattice enumeration restricted to small ambient");
        let mut out = Vec::new();
        let mut point = vec![0u64; q];
        enumerate_compositions(n, q, 0, &mut point, &mut |p| {
            if self.contains_int(p) {
                out.push(p.to_vec());
            }
        });
        out
    }

    /// Is some nonnegative integer point of L1 norm `n` inside?
    pub fn active_at(&self, n: u64) -> bool {
        let q = self.ambient_dim();
        assert!(q <= 24, "lattice enumeration restricted to small ambient");
        let mut point = vec![0u64; q];
        let mut found = false;
        enumerate_compositions_until(n, q, 0, &mut point, &mut |p| {
            if self.contains_int(p) {
                found = true;
                true
            } else {
                false
            }
        });
        found
    }
}

fn enumerate_compositions(n: u64, q: usize, idx: usize, point: &mut [u64], f: &mut impl FnMut(&[u64])) {
    if idx == q - 1 {
        point[idx] = n;
        f(point);
        return;
    }
    for v in 0..=n {
        point[idx] = v;
        enumerate_compositions(n - v, q, idx + 1, point, f);
    }
}

fn enumerate_compositions_until(
    n: u64,
    q: usize,
    idx: usize,
    point: &mut [u64],
    f: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if idx == q - 1 {
        point[idx] = n;
        return f(point);
    }
    for v in 0..=n {
        point[idx] = v;
        if enumerate_compositions_until(n - v, q, idx + 1, point, f) {
            return true;
        }
    }
    false
}

/// Rank over the rationals by Gaussian elimination.
fn rational_rank(rows: &[&Vec<i64>], q: usize) -> usize {
    let mut mat: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| crate::rat(c)).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..q {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let lead = mat[rank][col].clone();
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let factor = &mat[r][col] / &lead;
                for c in col..q {
                    let delta = &factor * &mat[rank][c];
                    mat[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}
