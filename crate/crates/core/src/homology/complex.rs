//! The resolution reduced over the ground field: cells, boundary vectors and ranks.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{FieldSpec, LinComb, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::{enumerate_chains, ChainCell, ChainKey, Homotopy};
use crate::rewrite::{Polygraph2, Trace};

/// Highest cell dimension whose boundary is constructed.
pub const BOUNDARY_DIM: usize = 4;

/// ⊗K-bracket of a trace: whole-word steps only, as a combination of rule ids.
pub fn trace_bracket(t: &Trace) -> LinComb<usize> {
    let mut out = LinComb::new();
    for s in &t.steps {
        if s.left.is_identity() && s.right.is_identity() {
            out.add_term(&s.coef, s.rule);
        }
    }
    out
}

/// Cells of the truncated resolution with their reduced boundaries.
///
/// `src[k][j]` and `tgt[k][j]` are the bracketed source and target of the
/// j-th cell of dimension k, as sparse vectors over the cells of dimension
/// k − 1; the reduced differential is their difference. Cells removed by a
/// collapse keep their index and are flagged dead.
#[derive(Clone, Debug)]
pub struct ReducedComplex {
    pub field: FieldSpec,
    /// Homogeneity degree used for ℓ_N; taken from the system, and set by
    /// callers when the system was completed from an N-homogeneous input.
    pub n: Option<u32>,
    pub dmax: u32,
    pub cells: Vec<Vec<ChainCell>>,
    pub labels: Vec<Vec<String>>,
    pub alive: Vec<Vec<bool>>,
    pub src: Vec<Vec<SparseVec>>,
    pub tgt: Vec<Vec<SparseVec>>,
}

fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    for (k, v) in b {
        let s = out.get(k).cloned().unwrap_or_else(Scalar::zero) - v.clone();
        if s.is_zero() {
            out.remove(k);
        } else {
            out.insert(*k, s);
        }
    }
    out
}

impl ReducedComplex {
    /// Highest dimension with enumerated cells.
    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    /// Alive cells of dimension k and degree d.
    pub fn count(&self, k: usize, d: u32) -> usize {
        if k >= self.cells.len() {
            return 0;
        }
        self.cells[k].iter().zip(&self.alive[k]).filter(|(c, a)| **a && c.degree == d).count()
    }

    pub fn alive_cells(&self, k: usize) -> Vec<usize> {
        if k >= self.cells.len() {
            return Vec::new();
        }
        (0..self.cells[k].len()).filter(|&j| self.alive[k][j]).collect()
    }

    /// Reduced boundary of cell j of dimension k (source minus target).
    pub fn boundary(&self, k: usize, j: usize) -> SparseVec {
        sub(&self.src[k][j], &self.tgt[k][j])
    }

    /// Is the boundary of dimension-k cells constructed?
    pub fn has_boundary(&self, k: usize) -> bool {
        k < self.src.len() && (k == 0 || self.src[k].len() == self.cells[k].len())
    }

    /// Rank of the reduced differential on alive k-cells of degree d.
    pub fn rank(&self, k: usize, d: u32) -> Result<usize> {
        if k == 0 || k >= self.cells.len() {
            return Ok(0);
        }
        if !self.has_boundary(k) {
            return Err(Error::Invalid(format!("boundary of dimension {k} cells is not constructed")));
        }
        let mut e = Echelon::new();
        for j in self.alive_cells(k) {
            if self.cells[k][j].degree == d {
                e.insert(&self.boundary(k, j))?;
            }
        }
        Ok(e.rank())
    }

    /// Does ∂∘∂ vanish from dimension k + 1 to k − 1 on alive cells?
    pub fn square_zero(&self, k: usize) -> bool {
        if k == 0 || !self.has_boundary(k) || !self.has_boundary(k + 1) {
            return true;
        }
        self.alive_cells(k + 1).into_iter().all(|j| {
            let mut acc = SparseVec::new();
            for (i, c) in self.boundary(k + 1, j) {
                for (m, v) in self.boundary(k, i) {
                    let s = acc.get(&m).cloned().unwrap_or_else(Scalar::zero) + &c * &v;
                    if s.is_zero() {
                        acc.remove(&m);
                    } else {
                        acc.insert(m, s);
                    }
                }
            }
            acc.is_empty()
        })
    }

    /// Same complex with every coefficient reduced mod p.
    pub fn to_prime_field(&self, p: u64) -> Result<ReducedComplex> {
        let map = |vs: &Vec<Vec<SparseVec>>| -> Result<Vec<Vec<SparseVec>>> {
            vs.iter()
                .map(|col| {
                    col.iter()
                        .map(|v| {
                            let mut out = SparseVec::new();
                            for (k, c) in v {
                                let m = c.to_mod(p)?;
                                if !m.is_zero() {
                                    out.insert(*k, m);
                                }
                            }
                            Ok(out)
                        })
                        .collect()
                })
                .collect()
        };
        let mut out = self.clone();
        out.src = map(&self.src)?;
        out.tgt = map(&self.tgt)?;
        out.field = FieldSpec::Prime(p);
        Ok(out)
    }

    /// Alive labels per dimension.
    pub fn alive_labels(&self, k: usize) -> Vec<String> {
        self.alive_cells(k).into_iter().map(|j| self.labels[k][j].clone()).collect()
    }
}

/// Enumerate cells up to dimension `kmax` (at least 5, for the Tor₄ lower
/// bound) and degree `dmax`, and build reduced boundaries through dimension 4.
pub fn build_complex(p: &Polygraph2, kmax: usize, dmax: u32) -> Result<ReducedComplex> {
    if !p.is_homogeneous() {
        return Err(Error::Invalid("the reduced complex is graded only for homogeneous systems".into()));
    }
    let top = kmax.max(BOUNDARY_DIM + 1);
    let all = enumerate_chains(p, top, dmax)?;
    let mut cells: Vec<Vec<ChainCell>> = vec![Vec::new(); top + 1];
    for c in all {
        cells[c.dim].push(c);
    }
    let labels: Vec<Vec<String>> = cells.iter().map(|v| v.iter().map(|c| c.label(p)).collect()).collect();
    let alive = cells.iter().map(|v| vec![true; v.len()]).collect();

    let gen_index: HashMap<u32, usize> = cells[1].iter().enumerate().map(|(j, c)| (c.word.word[0], j)).collect();
    let key_index = |k: usize| -> HashMap<ChainKey, usize> {
        cells[k].iter().enumerate().map(|(j, c)| (c.redexes.clone(), j)).collect()
    };
    let rule_index: HashMap<usize, usize> = key_index(2).into_iter().map(|(k, j)| (k[0].0, j)).collect();
    let chain3_index = key_index(3);

    let mut src: Vec<Vec<SparseVec>> = vec![Vec::new(); BOUNDARY_DIM + 1];
    let mut tgt: Vec<Vec<SparseVec>> = vec![Vec::new(); BOUNDARY_DIM + 1];
    src[1] = vec![SparseVec::new(); cells[1].len()];
    tgt[1] = vec![SparseVec::new(); cells[1].len()];

    for c in &cells[2] {
        let r = p.rule(c.redexes[0].0);
        let mut s = SparseVec::new();
        if r.src.len() == 1 {
            s.insert(gen_index[&r.src.word[0]], Scalar::one());
        }
        let mut t = SparseVec::new();
        for (m, v) in r.tgt.terms() {
            if m.len() == 1 {
                t.insert(gen_index[&m.word[0]], v.clone());
            }
        }
        src[2].push(s);
        tgt[2].push(t);
    }

    let mut h = Homotopy::new(p);
    let whole = |lc: &LinComb<(crate::algebra::Monomial, usize, crate::algebra::Monomial)>| -> SparseVec {
        let mut v = SparseVec::new();
        for ((l, r, rr), c) in lc.iter() {
            if l.is_identity() && rr.is_identity() {
                v.insert(rule_index[r], c.clone());
            }
        }
        v
    };
    for c in &cells[3] {
        src[3].push(whole(&*h.src3(&c.redexes)?));
        tgt[3].push(whole(&*h.tgt3(&c.redexes)?));
    }
    for c in &cells[4] {
        let b = h.boundary4(c)?;
        let (s, t) = b.bracket();
        let conv = |lc: LinComb<ChainKey>| -> SparseVec { lc.iter().map(|(k, v)| (chain3_index[k], v.clone())).collect() };
        src[4].push(conv(s));
        tgt[4].push(conv(t));
    }
    Ok(ReducedComplex { field: p.field.clone(), n: p.homogeneous_degree(), dmax, cells, labels, alive, src, tgt })
}

/// Per-degree ranks of the reduced differentials, for reports.
pub fn rank_table(cx: &ReducedComplex) -> Result<BTreeMap<(usize, u32), usize>> {
    let mut out = BTreeMap::new();
    for k in 1..=BOUNDARY_DIM.min(cx.top_dim()) {
        for d in 0..=cx.dmax {
            out.insert((k, d), cx.rank(k, d)?);
        }
    }
    Ok(out)
}
