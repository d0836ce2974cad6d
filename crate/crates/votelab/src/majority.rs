//! Weighted and unweighted majority graphs, Condorcet structure.

use num::{Signed, Zero};

use crate::{Profile, Rat};

/// Pairwise margin table `w(a,b) = P[a>b] - P[b>a]`, antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMajorityGraph {
    m: usize,
    margin: Vec<Vec<Rat>>,
}

/// Ternary head-to-head outcome in the unweighted majority graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Beats,
    Tied,
    Loses,
}

impl WeightedMajorityGraph {
    pub fn of(profile: &Profile) -> Self {
        let m = profile.m();
        let mut margin = vec![vec![Rat::zero(); m]; m];
        for (r, w) in profile.support() {
            let ord = r.order();
            for i in 0..m {
                for j in i + 1..m {
                    let a = ord[i] as usize - 1;
                    let b = ord[j] as usize - 1;
                    margin[a][b] += w;
                    margin[b][a] -= w;
                }
            }
        }
        WeightedMajorityGraph { m, margin }
    }

    /// Builds directly from an antisymmetric margin table.
    pub fn from_margins(margin: Vec<Vec<Rat>>) -> Self {
        let m = margin.len();
        WeightedMajorityGraph { m, margin }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `w(a,b)` for 1-based alternative ids.
    pub fn margin(&self, a: u8, b: u8) -> &Rat {
        &self.margin[a as usize - 1][b as usize - 1]
    }

    pub fn edge(&self, a: u8, b: u8) -> Edge {
        let w = self.margin(a, b);
        if w.is_positive() {
            Edge::Beats
        } else if w.is_negative() {
            Edge::Loses
        } else {
            Edge::Tied
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &WeightedMajorityGraph) -> WeightedMajorityGraph {
        let m = self.m;
        let mut margin = self.margin.clone();
        for a in 0..m {
            for b in 0..m {
                margin[a][b] += &other.margin[a][b];
            }
        }
        WeightedMajorityGraph { m, margin }
    }

    /// Number of tied (unordered) pairs in the UMG.
    pub fn ties(&self) -> usize {
        let mut t = 0;
        for a in 1..=self.m as u8 {
            for b in a + 1..=self.m as u8 {
                if self.edge(a, b) == Edge::Tied {
                    t += 1;
                }
            }
        }
        t
    }

    pub fn majority_structure(&self) -> MajorityStructure {
        let m = self.m;
        let alts: Vec<u8> = (1..=m as u8).collect();
        let umg: Vec<Vec<Edge>> = (1..=m as u8)
            .map(|a| {
                (1..=m as u8)
                    .map(|b| if a == b { Edge::Tied } else { self.edge(a, b) })
                    .collect()
            })
            .collect();
        let beats_all =
            |a: u8| alts.iter().all(|&b| b == a || self.edge(a, b) == Edge::Beats);
        let never_loses =
            |a: u8| alts.iter().all(|&b| b == a || self.edge(a, b) != Edge::Loses);
        let loses_all =
            |a: u8| alts.iter().all(|&b| b == a || self.edge(a, b) == Edge::Loses);

        let cw = alts.iter().copied().find(|&a| beats_all(a));
        let wcw: Vec<u8> = alts.iter().copied().filter(|&a| never_loses(a)).collect();
        let condorcet_loser = alts.iter().copied().find(|&a| loses_all(a));

        // ACWs: a tied pair, each member beating every other alternative.
        let mut acw = Vec::new();
        'outer: for i in 0..alts.len() {
            for j in i + 1..alts.len() {
                let (a, b) = (alts[i], alts[j]);
                if self.edge(a, b) == Edge::Tied
                    && alts.iter().all(|&c| {
                        c == a
                            || c == b
                            || (self.edge(a, c) == Edge::Beats && self.edge(b, c) == Edge::Beats)
                    })
                {
                    acw = vec![a, b];
                    break 'outer;
                }
            }
        }

        MajorityStructure {
            m,
            umg,
            cw,
            wcw,
            acw,
            condorcet_loser,
        }
    }
}

/// CW / WCW / ACW / Condorcet-loser summary of a majority graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityStructure {
    pub m: usize,
    /// Ternary head-to-head relation, 0-based rows/columns (diagonal tied).
    pub umg: Vec<Vec<Edge>>,
    /// The Condorcet winner, if any (at most one exists).
    pub cw: Option<u8>,
    /// Weak Condorcet winners.
    pub wcw: Vec<u8>,
    /// Almost Condorcet winners: either empty or exactly two alternatives
    /// tied with each other, each beating all others.
    pub acw: Vec<u8>,
    pub condorcet_loser: Option<u8>,
}

/// Convenience: majority structure of a profile.
pub fn majority_structure(profile: &Profile) -> MajorityStructure {
    WeightedMajorityGraph::of(profile).majority_structure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Ranking};

    fn pi_hat() -> Profile {
        // 1>2>3 and 2>1>3 each 1/4, every other ranking 1/8.
        let mut p = Profile::new(3);
        for rk in Ranking::all(3) {
            let w = if rk.order() == [1, 2, 3] || rk.order() == [2, 1, 3] {
                ratio(1, 4)
            } else {
                ratio(1, 8)
            };
            p.add(rk, w).unwrap();
        }
        p
    }

    fn pi_uni(m: usize) -> Profile {
        let mut p = Profile::new(m);
        let n = Ranking::all(m).len() as i64;
        for rk in Ranking::all(m) {
            p.add(rk, ratio(1, n)).unwrap();
        }
        p
    }

    #[test]
    fn pi_hat_margins() {
        let g = WeightedMajorityGraph::of(&pi_hat());
        assert_eq!(*g.margin(1, 2), rat(0));
        assert_eq!(*g.margin(1, 3), ratio(1, 4));
        assert_eq!(*g.margin(2, 3), ratio(1, 4));
    }

    #[test]
    fn uniform_is_edgeless() {
        let g = WeightedMajorityGraph::of(&pi_uni(3));
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    assert_eq!(g.edge(a, b), Edge::Tied);
                }
            }
        }
        assert_eq!(g.ties(), 3);
    }

    #[test]
    fn single_vote_margins() {
        let mut p = Profile::new(3);
        p.add_int(Ranking::new(vec![1, 2, 3]).unwrap(), 1).unwrap();
        let g = WeightedMajorityGraph::of(&p);
        assert_eq!(*g.margin(1, 2), rat(1));
        assert_eq!(*g.margin(1, 3), rat(1));
        assert_eq!(*g.margin(2, 3), rat(1));
    }

    #[test]
    fn pi_hat_majority_structure() {
        let s = majority_structure(&pi_hat());
        assert_eq!(s.cw, None);
        assert_eq!(s.wcw, vec![1, 2]);
        assert_eq!(s.acw, vec![1, 2]);
        assert_eq!(s.condorcet_loser, Some(3));
    }

    #[test]
    fn pi2_has_condorcet_winner_two() {
        // (1/8,1/8,3/8,1/8,1/8,1/8) over (123,132,231,321,213,312)
        let mut p = Profile::new(3);
        let table = [
            (vec![1u8, 2, 3], ratio(1, 8)),
            (vec![1, 3, 2], ratio(1, 8)),
            (vec![2, 3, 1], ratio(3, 8)),
            (vec![3, 2, 1], ratio(1, 8)),
            (vec![2, 1, 3], ratio(1, 8)),
            (vec![3, 1, 2], ratio(1, 8)),
        ];
        for (o, w) in table {
            p.add(Ranking::new(o).unwrap(), w).unwrap();
        }
        let s = majority_structure(&p);
        assert_eq!(s.cw, Some(2));
        assert_eq!(s.wcw, vec![2]);
        assert!(s.acw.is_empty());
    }

    #[test]
    fn condorcet_loser_example() {
        let mut p = Profile::new(3);
        p.add_int(Ranking::new(vec![1, 2, 3]).unwrap(), 3).unwrap();
        p.add_int(Ranking::new(vec![2, 3, 1]).unwrap(), 2).unwrap();
        p.add_int(Ranking::new(vec![3, 2, 1]).unwrap(), 2).unwrap();
        let s = majority_structure(&p);
        assert_eq!(s.condorcet_loser, Some(1));
        assert_eq!(s.cw, Some(2));
    }

    #[test]
    fn merge_adds_margins() {
        let mut p1 = Profile::new(3);
        p1.add_int(Ranking::new(vec![1, 2, 3]).unwrap(), 2).unwrap();
        let mut p2 = Profile::new(3);
        p2.add_int(Ranking::new(vec![3, 2, 1]).unwrap(), 1).unwrap();
        let g1 = WeightedMajorityGraph::of(&p1);
        let g2 = WeightedMajorityGraph::of(&p2);
        let g = WeightedMajorityGraph::of(&p1.merge(&p2).unwrap());
        assert_eq!(g, g1.add(&g2));
    }
}
