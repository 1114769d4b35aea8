//! Monomial orders. Every admitted kind compares a positive grading first,
//! which makes it a well-order compatible with composition.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::quiver::{Gen, Monomial, Quiver};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    /// Degree, then left-to-right precedence.
    Deglex,
    /// User weights, then left-to-right precedence.
    WeightedDeglex,
    /// Degree, then the degree vector of blocks (highest block first), then precedence.
    EliminationDeglex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Generators listed from smallest to largest.
    pub precedence: Vec<Gen>,
    /// Per-generator grading used first (degrees, or user weights).
    pub weights: Vec<u64>,
    /// Per-generator block index (larger index = eliminated first).
    pub blocks: Vec<u32>,
    #[serde(skip)]
    rank: Vec<u32>,
}

impl MonomialOrder {
    fn build(kind: OrderKind, precedence: Vec<Gen>, weights: Vec<u64>, blocks: Vec<u32>, n: usize) -> Result<MonomialOrder> {
        let mut rank = vec![u32::MAX; n];
        for (i, &g) in precedence.iter().enumerate() {
            if g as usize >= n || rank[g as usize] != u32::MAX {
                return Err(Error::Invalid("precedence must list each generator exactly once".into()));
            }
            rank[g as usize] = i as u32;
        }
        if rank.contains(&u32::MAX) {
            return Err(Error::Invalid("precedence must list each generator exactly once".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("order weights must be positive".into()));
        }
        Ok(MonomialOrder { kind, precedence, weights, blocks, rank })
    }

    pub fn deglex(q: &Quiver, precedence: Vec<Gen>) -> Result<MonomialOrder> {
        let w = q.generators.iter().map(|g| g.degree as u64).collect();
        Self::build(OrderKind::Deglex, precedence, w, vec![0; q.len()], q.len())
    }

    pub fn weighted(q: &Quiver, precedence: Vec<Gen>, weights: Vec<u64>) -> Result<MonomialOrder> {
        if weights.len() != q.len() {
            return Err(Error::Invalid("one weight per generator required".into()));
        }
        Self::build(OrderKind::WeightedDeglex, precedence, weights, vec![0; q.len()], q.len())
    }

    /// `blocks` lists generator groups from least to most eliminated;
    /// precedence is the concatenation of the groups.
    pub fn elimination(q: &Quiver, groups: Vec<Vec<Gen>>) -> Result<MonomialOrder> {
        let mut blocks = vec![0; q.len()];
        for (b, grp) in groups.iter().enumerate() {
            for &g in grp {
                if g as usize >= q.len() {
                    return Err(Error::Invalid("unknown generator in block".into()));
                }
                blocks[g as usize] = b as u32;
            }
        }
        let w = q.generators.iter().map(|g| g.degree as u64).collect();
        Self::build(OrderKind::EliminationDeglex, groups.concat(), w, blocks, q.len())
    }

    /// Restore the derived rank table after deserialization.
    pub fn rebuild(self) -> Result<MonomialOrder> {
        let n = self.weights.len();
        Self::build(self.kind, self.precedence, self.weights, self.blocks, n)
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        m.word.iter().map(|&g| self.weights[g as usize]).sum()
    }

    fn block_vector(&self, m: &Monomial) -> Vec<u64> {
        let nb = self.blocks.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut v = vec![0; nb];
        for &g in &m.word {
            v[nb - 1 - self.blocks[g as usize] as usize] += self.weights[g as usize];
        }
        v
    }

    /// Strict total comparison of two monomials.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let first = self.weight(a).cmp(&self.weight(b));
        if first != Ordering::Equal {
            return first;
        }
        if self.kind == OrderKind::EliminationDeglex {
            let c = self.block_vector(a).cmp(&self.block_vector(b));
            if c != Ordering::Equal {
                return c;
            }
        }
        for (x, y) in a.word.iter().zip(&b.word) {
            let c = self.rank[*x as usize].cmp(&self.rank[*y as usize]);
            if c != Ordering::Equal {
                return c;
            }
        }
        a.word.len().cmp(&b.word.len()).then_with(|| (a.src, a.tgt).cmp(&(b.src, b.tgt)))
    }

    /// Comparison that refuses non-parallel monomials.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.boundary() != b.boundary() {
            return Err(Error::Boundary("compared monomials are not parallel".into()));
        }
        Ok(self.cmp(a, b))
    }

    pub fn describe(&self, q: &Quiver) -> String {
        let names: Vec<&str> = self.precedence.iter().map(|&g| q.name(g)).collect();
        match self.kind {
            OrderKind::Deglex => format!("deglex {}", names.join(" < ")),
            OrderKind::WeightedDeglex => {
                let ws: Vec<String> = self
                    .precedence
                    .iter()
                    .map(|&g| format!("{}={}", q.name(g), self.weights[g as usize]))
                    .collect();
                format!("weighted-deglex {} weights {}", names.join(" < "), ws.join(" "))
            }
            OrderKind::EliminationDeglex => {
                let nb = self.blocks.iter().copied().max().unwrap_or(0);
                let groups: Vec<String> = (0..=nb)
                    .map(|b| {
                        self.precedence
                            .iter()
                            .filter(|&&g| self.blocks[g as usize] == b)
                            .map(|&g| q.name(g))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("elimination-deglex {}", groups.join(" | "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: &Quiver, w: &[Gen]) -> Monomial {
        q.monomial(w).unwrap()
    }

    #[test]
    fn deglex_examples() {
        let q = Quiver::single(&["x", "y", "z"]);
        let o = MonomialOrder::deglex(&q, vec![0, 1, 2]).unwrap();
        assert_eq!(o.cmp(&m(&q, &[0, 0]), &m(&q, &[0, 1])), Ordering::Less);
        assert_eq!(o.cmp(&m(&q, &[1, 2]), &m(&q, &[0, 0, 0, 0])), Ordering::Less);
        let cands = [vec![0, 1, 2], vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]];
        let max = cands.iter().map(|w| m(&q, w)).max_by(|a, b| o.cmp(a, b)).unwrap();
        assert_eq!(max.word, vec![2, 2, 2]);
    }

    #[test]
    fn weighted_example() {
        let q = Quiver::single(&["x", "y"]);
        let o = MonomialOrder::weighted(&q, vec![0, 1], vec![2, 1]).unwrap();
        assert_eq!(o.cmp(&m(&q, &[1, 1, 1]), &m(&q, &[0, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_prefers_block_degree() {
        let q = Quiver::single(&["x", "y", "t"]);
        let o = MonomialOrder::elimination(&q, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(o.cmp(&m(&q, &[1, 1]), &m(&q, &[0, 2])), Ordering::Less);
        assert_eq!(o.cmp(&m(&q, &[2, 0]), &m(&q, &[0, 2])), Ordering::Greater);
    }

    #[test]
    fn bad_precedence_rejected() {
        let q = Quiver::single(&["x", "y"]);
        assert!(MonomialOrder::deglex(&q, vec![0, 0]).is_err());
        assert!(MonomialOrder::deglex(&q, vec![0]).is_err());
    }
}
