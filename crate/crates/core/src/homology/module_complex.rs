//! The free right-module complex A[Λ] in low dimensions, used to check
//! exactness degree by degree.
//!
//! A basis element of the k-th module in internal degree i is `[c]·n` with c a
//! k-cell and n an irreducible monomial, `deg c + deg n = i`. The bracket of
//! a whiskered cell `l·c·r` is `[c]·nf(r)` when l is an identity and 0
//! otherwise, and `[x₁⋯x_r] = [x₁]·x₂⋯x_r` on monomials.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::error::Result;
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::{enumerate_chains, ChainCell, ChainKey, Homotopy};
use crate::rewrite::{irreducible_monomials, Polygraph2};

/// Module complex C₀ ← C₁ ← C₂ ← C₃ ← C₄ in one internal degree.
pub struct ModuleComplex {
    pub degree: u32,
    /// Basis of C_k as (cell index, normal monomial).
    pub bases: Vec<Vec<(usize, Monomial)>>,
    /// `diff[k][j]`: image in C_{k−1} of the j-th basis element of C_k (k ≥ 1).
    pub diff: Vec<Vec<SparseVec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleExactness {
    pub degree: u32,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Exactness at C₀ (against the augmentation), C₁, C₂ and C₃.
    pub exact: Vec<bool>,
    /// ∂∘∂ = 0 on C₂ → C₀, C₃ → C₁ and C₄ → C₂.
    pub square_zero: Vec<bool>,
}

impl ModuleExactness {
    pub fn ok(&self) -> bool {
        self.exact.iter().all(|&b| b) && self.square_zero.iter().all(|&b| b)
    }
}

fn add_into(acc: &mut SparseVec, k: usize, c: &Scalar) {
    let s = acc.get(&k).cloned().unwrap_or_else(Scalar::zero) + c.clone();
    if s.is_zero() {
        acc.remove(&k);
    } else {
        acc.insert(k, s);
    }
}

impl ModuleComplex {
    pub fn build(p: &Polygraph2, degree: u32) -> Result<ModuleComplex> {
        let q = &p.quiver;
        let normals = irreducible_monomials(p, degree).by_degree;
        let all = enumerate_chains(p, 4, degree)?;
        let mut cells: Vec<Vec<ChainCell>> = vec![Vec::new(); 5];
        for c in all {
            cells[c.dim].push(c);
        }
        let mut bases: Vec<Vec<(usize, Monomial)>> = vec![Vec::new(); 5];
        let mut index: Vec<HashMap<(usize, Monomial), usize>> = vec![HashMap::new(); 5];
        for k in 0..5 {
            for (j, c) in cells[k].iter().enumerate() {
                let rest = degree - c.degree;
                for n in &normals[rest as usize] {
                    if n.src == c.word.tgt {
                        index[k].insert((j, n.clone()), bases[k].len());
                        bases[k].push((j, n.clone()));
                    }
                }
            }
        }
        let gen_cell: HashMap<u32, usize> = cells[1].iter().enumerate().map(|(j, c)| (c.word.word[0], j)).collect();
        let obj_cell: HashMap<u32, usize> = cells[0].iter().enumerate().map(|(j, c)| (c.word.src, j)).collect();
        let key_cell = |k: usize| -> HashMap<ChainKey, usize> {
            cells[k].iter().enumerate().map(|(j, c)| (c.redexes.clone(), j)).collect()
        };
        let rule_cell: HashMap<usize, usize> = key_cell(2).into_iter().map(|(k, j)| (k[0].0, j)).collect();
        let chain3 = key_cell(3);

        let mut h = Homotopy::new(p);
        // [m]·n for a monomial m, added with coefficient c.
        let bracket_mono = |h: &mut Homotopy<'_>, m: &Monomial, n: &Monomial, c: &Scalar, acc: &mut SparseVec| -> Result<()> {
            if m.is_identity() {
                return Ok(());
            }
            let rest = q.slice(m, 1, m.len()).mul(n);
            let nf = h.n.nf(&Polynomial::monomial(rest))?;
            for (t, v) in nf.terms() {
                add_into(acc, index[1][&(gen_cell[&m.word[0]], t.clone())], &(c * v));
            }
            Ok(())
        };

        let mut diff: Vec<Vec<SparseVec>> = vec![Vec::new(); 5];
        for (j, n) in &bases[1] {
            let x = &cells[1][*j].word;
            let nf = h.n.nf(&Polynomial::monomial(x.mul(n)))?;
            let mut v = SparseVec::new();
            for (t, c) in nf.terms() {
                add_into(&mut v, index[0][&(obj_cell[&x.src], t.clone())], c);
            }
            diff[1].push(v);
        }
        for (j, n) in &bases[2] {
            let r = p.rule(cells[2][*j].redexes[0].0);
            let mut v = SparseVec::new();
            bracket_mono(&mut h, &r.src, n, &Scalar::one(), &mut v)?;
            for (m, c) in r.tgt.terms() {
                bracket_mono(&mut h, m, n, &-c, &mut v)?;
            }
            diff[2].push(v);
        }
        for (j, n) in &bases[3] {
            let key = &cells[3][*j].redexes;
            let mut v = SparseVec::new();
            for (lc, sign) in [(h.src3(key)?, Scalar::one()), (h.tgt3(key)?, Scalar::from_int(-1))] {
                for ((l, psi, r), c) in lc.iter() {
                    if !l.is_identity() {
                        continue;
                    }
                    let nf = h.n.nf(&Polynomial::monomial(r.mul(n)))?;
                    for (t, u) in nf.terms() {
                        add_into(&mut v, index[2][&(rule_cell[psi], t.clone())], &(&(&sign * c) * u));
                    }
                }
            }
            diff[3].push(v);
        }
        for (j, n) in &bases[4] {
            let b = h.boundary4(&cells[4][*j])?;
            let mut v = SparseVec::new();
            for ((l, key, r), c) in b.net().iter() {
                if !l.is_identity() {
                    continue;
                }
                let nf = h.n.nf(&Polynomial::monomial(r.mul(n)))?;
                for (t, u) in nf.terms() {
                    add_into(&mut v, index[3][&(chain3[key], t.clone())], &(c * u));
                }
            }
            diff[4].push(v);
        }
        Ok(ModuleComplex { degree, bases, diff })
    }

    fn rank(&self, k: usize) -> Result<usize> {
        let mut e = Echelon::new();
        for v in &self.diff[k] {
            e.insert(v)?;
        }
        Ok(e.rank())
    }

    fn composite_zero(&self, k: usize) -> bool {
        self.diff[k].iter().all(|v| {
            let mut acc = SparseVec::new();
            for (i, c) in v {
                for (m, u) in &self.diff[k - 1][*i] {
                    add_into(&mut acc, *m, &(c * u));
                }
            }
            acc.is_empty()
        })
    }

    pub fn exactness(&self) -> Result<ModuleExactness> {
        let dims: Vec<usize> = self.bases.iter().map(|b| b.len()).collect();
        let ranks: Vec<usize> = (1..5).map(|k| self.rank(k)).collect::<Result<_>>()?;
        // ε has rank 1 on C₀ in degree 0 and rank 0 above.
        let eps = usize::from(self.degree == 0) * dims[0].min(1);
        let mut exact = vec![dims[0] - eps == ranks[0]];
        for k in 1..4 {
            exact.push(dims[k] - ranks[k - 1] == ranks[k]);
        }
        let square_zero = (2..5).map(|k| self.composite_zero(k)).collect();
        Ok(ModuleExactness { degree: self.degree, dims, ranks, exact, square_zero })
    }
}

/// Exactness report for every internal degree `0..=dmax`.
pub fn module_exactness(p: &Polygraph2, dmax: u32) -> Result<Vec<ModuleExactness>> {
    (0..=dmax).map(|d| ModuleComplex::build(p, d)?.exactness()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{convergent, PP, XY, XYZ};

    #[test]
    fn exact_over_q() {
        for text in [XYZ, PP, XY] {
            for e in module_exactness(&convergent(text), 5).unwrap() {
                assert!(e.ok(), "{e:?}");
            }
        }
    }

    #[test]
    fn exact_over_gf101() {
        for text in [PP, XY] {
            let p = convergent(text).to_prime_field(101).unwrap();
            let mut q = p.clone();
            q.convergent = true;
            for e in module_exactness(&q, 5).unwrap() {
                assert!(e.ok(), "{e:?}");
            }
        }
    }

    #[test]
    fn dimensions_in_low_degree() {
        let e = ModuleComplex::build(&convergent(XY), 3).unwrap().exactness().unwrap();
        // A₃ has basis x³; C₁ = [x],[y] times A₂ = {x², y x}; C₂ = 3 rules times A.
        assert_eq!(e.dims[..3], [1, 4, 5]);
    }
}
