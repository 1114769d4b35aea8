//! Overlap chains: the critical n-fold branchings indexing the cells of the resolution.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::rewrite::Polygraph2;

/// Redex list `(rule, start)` identifying a chain of dimension ≥ 2.
pub type ChainKey = Vec<(usize, usize)>;

/// A k-cell of the resolution.
///
/// For k = 0 the word is an identity, for k = 1 a generator, for k = 2 a rule
/// source (one redex at 0), and for k ≥ 3 an overlap chain with k − 1 redexes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainCell {
    pub dim: usize,
    pub word: Monomial,
    pub redexes: ChainKey,
    pub degree: u32,
}

impl ChainCell {
    /// The chain with its last redex dropped.
    pub fn prefix(&self, p: &Polygraph2) -> Option<ChainCell> {
        if self.dim < 3 {
            return None;
        }
        let redexes = self.redexes[..self.redexes.len() - 1].to_vec();
        let &(r, s) = redexes.last().unwrap();
        let end = s + p.rule(r).src.len();
        let word = p.quiver.slice(&self.word, 0, end);
        Some(ChainCell { dim: self.dim - 1, degree: p.quiver.degree(&word), word, redexes })
    }

    /// Start of the last redex.
    pub fn last_start(&self) -> usize {
        self.redexes.last().map(|r| r.1).unwrap_or(0)
    }

    pub fn label(&self, p: &Polygraph2) -> String {
        match self.dim {
            0 => format!("1_{}", p.quiver.objects[self.word.src as usize]),
            1 => p.quiver.name(self.word.word[0]).to_string(),
            2 => p.rule(self.redexes[0].0).name.clone(),
            _ => {
                let rs: Vec<String> = self.redexes.iter().map(|&(r, s)| format!("{}@{}", p.rule(r).name, s)).collect();
                format!("{}[{}]", p.show_mono(&self.word), rs.join(","))
            }
        }
    }
}

/// Every one-step extension of a chain of dimension ≥ 2 within degree `dmax`.
///
/// With the last redex occupying `[s, |w|)`, a rule ψ extends the chain at
/// `q ∈ (s, |w|)` when `w[q..]` is a proper prefix of `src(ψ)`.
pub fn extensions(p: &Polygraph2, c: &ChainCell, dmax: u32) -> Vec<ChainCell> {
    let q = &p.quiver;
    let w = &c.word.word;
    let mut out = Vec::new();
    for start in c.last_start() + 1..w.len() {
        let tail = &w[start..];
        for (ri, r) in p.rules().iter().enumerate() {
            let src = &r.src.word;
            if src.len() <= tail.len() || &src[..tail.len()] != tail {
                continue;
            }
            let mut word = w.clone();
            word.extend_from_slice(&src[tail.len()..]);
            let Ok(m) = q.monomial(&word) else { continue };
            let degree = q.degree(&m);
            if degree > dmax {
                continue;
            }
            let mut redexes = c.redexes.clone();
            redexes.push((ri, start));
            out.push(ChainCell { dim: c.dim + 1, word: m, redexes, degree });
        }
    }
    out
}

/// All cells of dimension ≤ `kmax` and internal degree ≤ `dmax`, sorted by
/// (dimension, degree, word, redexes).
pub fn enumerate_chains(p: &Polygraph2, kmax: usize, dmax: u32) -> Result<Vec<ChainCell>> {
    if !p.convergent {
        return Err(Error::NotCertified("chain enumeration needs a certified convergent system".into()));
    }
    if !p.is_reduced() {
        return Err(Error::Invalid("chain enumeration needs a reduced system".into()));
    }
    Ok(enumerate_chains_unchecked(p, kmax, dmax))
}

/// Chain enumeration without the convergence and reducedness checks.
pub fn enumerate_chains_unchecked(p: &Polygraph2, kmax: usize, dmax: u32) -> Vec<ChainCell> {
    let q = &p.quiver;
    let mut out = Vec::new();
    for o in 0..q.objects.len() as u32 {
        out.push(ChainCell { dim: 0, word: Monomial::identity(o), redexes: vec![], degree: 0 });
    }
    if kmax >= 1 {
        for g in 0..q.len() as u32 {
            let word = q.monomial(&[g]).expect("generator");
            let degree = q.degree(&word);
            if degree <= dmax {
                out.push(ChainCell { dim: 1, word, redexes: vec![], degree });
            }
        }
    }
    let mut frontier: Vec<ChainCell> = Vec::new();
    if kmax >= 2 {
        for (i, r) in p.rules().iter().enumerate() {
            let degree = q.degree(&r.src);
            if degree <= dmax {
                frontier.push(ChainCell { dim: 2, word: r.src.clone(), redexes: vec![(i, 0)], degree });
            }
        }
    }
    let mut k = 2;
    while k <= kmax && !frontier.is_empty() {
        out.extend(frontier.iter().cloned());
        if k == kmax {
            break;
        }
        frontier = frontier.par_iter().flat_map_iter(|c| extensions(p, c, dmax)).collect();
        k += 1;
    }
    out.sort_by(|a, b| (a.dim, a.degree, &a.word, &a.redexes).cmp(&(b.dim, b.degree, &b.word, &b.redexes)));
    out
}

/// ℓ_N(k): lN for k = 2l and lN + 1 for k = 2l + 1.
pub fn ell(n: u32, k: usize) -> u32 {
    let l = (k / 2) as u32;
    if k.is_multiple_of(2) {
        l * n
    } else {
        l * n + 1
    }
}

/// Cell counts per (dimension, degree), with ℓ_N-concentration per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDegrees {
    pub counts: BTreeMap<usize, BTreeMap<u32, usize>>,
    /// Per dimension: are all cells in degree ℓ_N(k)? `None` when N is undefined.
    pub concentrated: BTreeMap<usize, Option<bool>>,
}

impl CellDegrees {
    pub fn count(&self, k: usize, d: u32) -> usize {
        self.counts.get(&k).and_then(|m| m.get(&d)).copied().unwrap_or(0)
    }

    pub fn total(&self, k: usize) -> usize {
        self.counts.get(&k).map(|m| m.values().sum()).unwrap_or(0)
    }
}

pub fn cell_degrees(cells: &[ChainCell], n: Option<u32>) -> CellDegrees {
    let mut counts: BTreeMap<usize, BTreeMap<u32, usize>> = BTreeMap::new();
    for c in cells {
        *counts.entry(c.dim).or_default().entry(c.degree).or_default() += 1;
    }
    let concentrated = counts
        .iter()
        .map(|(&k, m)| (k, n.map(|n| m.keys().all(|&d| d == ell(n, k)))))
        .collect();
    CellDegrees { counts, concentrated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, Quiver};
    use crate::rewrite::Rule;

    fn completed_xy() -> Polygraph2 {
        let q = Quiver::single(&["x", "y"]);
        let m = |w: &[u32]| q.monomial(w).unwrap();
        let mut p = Polygraph2::new(
            q.clone(),
            vec![
                Rule::new("alpha", m(&[0, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("beta", m(&[1, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("gamma", m(&[1, 0, 0]), Polynomial::monomial(m(&[0, 0, 0]))),
            ],
        )
        .unwrap();
        p.convergent = true;
        p
    }

    #[test]
    fn xy_chain_words() {
        let p = completed_xy();
        let cells = enumerate_chains(&p, 4, 5).unwrap();
        let words = |k: usize| -> Vec<String> {
            let mut v: Vec<String> = cells.iter().filter(|c| c.dim == k).map(|c| p.show_mono(&c.word)).collect();
            v.sort();
            v
        };
        assert_eq!(words(3), vec!["x y x^2", "x y^2", "y x^2 y", "y^2 x^2", "y^3"]);
        assert_eq!(words(4), vec!["x y x^2 y", "x y^2 x^2", "x y^3", "y x^2 y^2", "y^2 x^2 y", "y^3 x^2", "y^4"]);
        let deg = cell_degrees(&cells, Some(2));
        assert_eq!(deg.count(3, 4), 3);
        assert_eq!(deg.count(4, 4), 2);
        assert_eq!(deg.concentrated[&2], Some(false));
    }

    #[test]
    fn prefix_of_every_chain_is_a_chain() {
        let p = completed_xy();
        let cells = enumerate_chains(&p, 5, 7).unwrap();
        for c in cells.iter().filter(|c| c.dim >= 3) {
            let pre = c.prefix(&p).unwrap();
            assert!(cells.contains(&pre), "{}", c.label(&p));
        }
    }

    #[test]
    fn eighth_triple_chain_appears_in_degree_six() {
        let p = completed_xy();
        let cells = enumerate_chains(&p, 4, 6).unwrap();
        assert!(cells.iter().any(|c| c.dim == 4 && p.show_mono(&c.word) == "y x^2 y x^2"));
    }

    #[test]
    fn ell_values() {
        assert_eq!((0..6).map(|k| ell(2, k)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!((0..6).map(|k| ell(3, k)).collect::<Vec<_>>(), vec![0, 1, 3, 4, 6, 7]);
    }
}
