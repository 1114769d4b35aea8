//! Exact sparse row reduction over any [`Scalar`] field.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::Scalar;
use crate::error::Result;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Incrementally maintained echelon basis of a row space.
///
/// Each stored row has a unit pivot that no other stored row mentions.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

fn axpy(dst: &mut SparseVec, c: &Scalar, src: &SparseVec) {
    for (k, v) in src {
        let add = c * v;
        match dst.get_mut(k) {
            Some(x) => {
                let s = &*x + &add;
                if s.is_zero() {
                    dst.remove(k);
                } else {
                    *x = s;
                }
            }
            None => {
                if !add.is_zero() {
                    dst.insert(*k, add);
                }
            }
        }
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.pivot_of.keys()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let keys: Vec<usize> = v.keys().copied().filter(|k| self.pivot_of.contains_key(k)).collect();
        for k in keys {
            if let Some(c) = v.get(&k).cloned() {
                let row = &self.rows[self.pivot_of[&k]];
                axpy(&mut v, &-&c, row);
            }
        }
        v
    }

    /// Insert a row; returns `true` when it enlarged the row space.
    ///
    /// The pivot is the first entry whose inverse is admissible (parameter
    /// expressions that might vanish are skipped); if none is, the error of
    /// the first attempted inversion is returned.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        let r = self.reduce(v);
        if r.is_empty() {
            return Ok(false);
        }
        let mut chosen = None;
        let mut first_err = None;
        for (k, c) in &r {
            match c.inv() {
                Ok(inv) => {
                    chosen = Some((*k, inv));
                    break;
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        let (piv, inv) = match chosen {
            Some(x) => x,
            None => return Err(first_err.expect("nonzero row").into()),
        };
        let mut row = SparseVec::new();
        axpy(&mut row, &inv, &r);
        for other in self.rows.iter_mut() {
            if let Some(c) = other.get(&piv).cloned() {
                axpy(other, &-&c, &row);
            }
        }
        self.pivot_of.insert(piv, self.rows.len());
        self.rows.push(row);
        Ok(true)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SparseVec]) -> Result<usize> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r)?;
    }
    Ok(e.rank())
}
