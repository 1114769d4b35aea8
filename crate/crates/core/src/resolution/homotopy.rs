//! Normalising homotopies in dimensions 2 and 3, and the boundaries of 4-cells.
//!
//! A whiskered cell instance is `(l, cell, r)` with monomial contexts. For a
//! rule φ and an irreducible right context r, `S(φ·r)` is a formal sum of
//! whiskered 3-cells filling the square between `φr ⋆ ρ` and `ρ_{src(φ)r}`;
//! for a 3-chain c, `T(c·r)` does the same one dimension up. Both are
//! extended to arbitrary instances by `S(l·φ·r) = l·S(φ·nf(r))`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{LinComb, Monomial, Scalar};
use crate::error::{Error, Result};
use crate::rewrite::{Normalizer, Polygraph2, StepKey};

use super::chains::{ChainCell, ChainKey};
use super::confluence3::{chain_word, source_steps, target_steps};

/// A whiskered cell of dimension ≥ 3: `(left, chain, right)`.
pub type CellInst = (Monomial, ChainKey, Monomial);

const MAX_DEPTH: usize = 10_000;

/// Memoised homotopies over a reduced convergent system.
pub struct Homotopy<'a> {
    pub n: Normalizer<'a>,
    s_memo: HashMap<(usize, Monomial), Arc<LinComb<CellInst>>>,
    t_memo: HashMap<(ChainKey, Monomial), Arc<LinComb<CellInst>>>,
    src3: HashMap<ChainKey, Arc<LinComb<StepKey>>>,
    tgt3: HashMap<ChainKey, Arc<LinComb<StepKey>>>,
    depth: usize,
}

fn whisker_left(l: &Monomial, lc: &LinComb<CellInst>, c: &Scalar, acc: &mut LinComb<CellInst>) {
    for ((l2, k, r), v) in lc.iter() {
        acc.add_term(&(c * v), (l.mul(l2), k.clone(), r.clone()));
    }
}

impl<'a> Homotopy<'a> {
    pub fn new(p: &'a Polygraph2) -> Homotopy<'a> {
        Homotopy {
            n: Normalizer::new(p),
            s_memo: HashMap::new(),
            t_memo: HashMap::new(),
            src3: HashMap::new(),
            tgt3: HashMap::new(),
            depth: 0,
        }
    }

    pub fn system(&self) -> &'a Polygraph2 {
        self.n.system()
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::BoundExceeded("homotopy recursion too deep".into()));
        }
        Ok(())
    }

    /// Source 2-cell of the 3-chain `key`.
    pub fn src3(&mut self, key: &ChainKey) -> Result<Arc<LinComb<StepKey>>> {
        if let Some(v) = self.src3.get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(source_steps(&mut self.n, key)?);
        self.src3.insert(key.clone(), v.clone());
        Ok(v)
    }

    /// Target 2-cell of the 3-chain `key`.
    pub fn tgt3(&mut self, key: &ChainKey) -> Result<Arc<LinComb<StepKey>>> {
        if let Some(v) = self.tgt3.get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(target_steps(&mut self.n, key)?);
        self.tgt3.insert(key.clone(), v.clone());
        Ok(v)
    }

    /// `S(φ·r)` for an irreducible monomial r.
    pub fn s_unit(&mut self, phi: usize, r: &Monomial) -> Result<Arc<LinComb<CellInst>>> {
        if let Some(v) = self.s_memo.get(&(phi, r.clone())) {
            return Ok(v.clone());
        }
        self.enter()?;
        let p = self.system();
        let q = &p.quiver;
        let src = &p.rule(phi).src;
        let w = src.mul(r);
        let mut acc = LinComb::new();
        let (start, psi) = p.rightmost_redex(&w).expect("source is reducible");
        if start > 0 {
            let e = start + p.rule(psi).src.len();
            let r2 = q.slice(&w, src.len(), e);
            let r3 = q.slice(&w, e, w.len());
            let prefix = q.slice(&w, 0, e);
            acc.add_term(&Scalar::from_int(-1), (Monomial::identity(w.src), vec![(phi, 0), (psi, start)], r3.clone()));
            let rho_src = self.n.rho_monomial(&prefix)?;
            self.s_steps(&rho_src, &r3, &Scalar::one(), &mut acc)?;
            let t = p.rule(phi).tgt.whisker(&Monomial::identity(src.src), &r2);
            let rho_tgt = self.n.rho(&t)?;
            self.s_steps(&rho_tgt, &r3, &Scalar::from_int(-1), &mut acc)?;
        }
        self.depth -= 1;
        let acc = Arc::new(acc);
        self.s_memo.insert((phi, r.clone()), acc.clone());
        Ok(acc)
    }

    /// `c · S(steps · r3)`, added to `acc`.
    pub fn s_steps(&mut self, steps: &LinComb<StepKey>, r3: &Monomial, c: &Scalar, acc: &mut LinComb<CellInst>) -> Result<()> {
        for ((l, psi, r1), lam) in steps.iter() {
            let right = crate::algebra::Polynomial::monomial(r1.mul(r3));
            let nf = self.n.nf(&right)?;
            for (m, mu) in nf.terms() {
                let inner = self.s_unit(*psi, m)?;
                whisker_left(l, &inner, &(&(c * lam) * mu), acc);
            }
        }
        Ok(())
    }

    /// `T(c·r)` for a 3-chain c and an irreducible monomial r.
    pub fn t_unit(&mut self, key: &ChainKey, r: &Monomial) -> Result<Arc<LinComb<CellInst>>> {
        if let Some(v) = self.t_memo.get(&(key.clone(), r.clone())) {
            return Ok(v.clone());
        }
        self.enter()?;
        let p = self.system();
        let q = &p.quiver;
        let u = chain_word(p, key);
        let w = u.mul(r);
        let s_last = key.last().unwrap().1;
        let mut acc = LinComb::new();
        let (start, nu) = p.rightmost_redex(&w).expect("chain word is reducible");
        if start != s_last {
            let e = start + p.rule(nu).src.len();
            let r2 = q.slice(&w, u.len(), e);
            let r3 = q.slice(&w, e, w.len());
            let mut b1 = key.clone();
            b1.push((nu, start));
            acc.add_term(&Scalar::one(), (Monomial::identity(w.src), b1, r3.clone()));
            let mut inner = LinComb::new();
            let s = self.src3(key)?;
            let t = self.tgt3(key)?;
            self.s_steps(&s, &r2, &Scalar::one(), &mut inner)?;
            self.s_steps(&t, &r2, &Scalar::from_int(-1), &mut inner)?;
            self.t_insts(&inner, &r3, &Scalar::one(), &mut acc)?;
        }
        self.depth -= 1;
        let acc = Arc::new(acc);
        self.t_memo.insert((key.clone(), r.clone()), acc.clone());
        Ok(acc)
    }

    /// `c · T(insts · r3)`, added to `acc`.
    pub fn t_insts(&mut self, insts: &LinComb<CellInst>, r3: &Monomial, c: &Scalar, acc: &mut LinComb<CellInst>) -> Result<()> {
        for ((l, key, r1), lam) in insts.iter() {
            let nf = self.n.nf(&crate::algebra::Polynomial::monomial(r1.mul(r3)))?;
            for (m, mu) in nf.terms() {
                let inner = self.t_unit(key, m)?;
                whisker_left(l, &inner, &(&(c * lam) * mu), acc);
            }
        }
        Ok(())
    }

    /// Boundary of the 4-cell `b`, split into source and target composites.
    pub fn boundary4(&mut self, b: &ChainCell) -> Result<Boundary4Data> {
        let p = self.system();
        if b.dim != 4 {
            return Err(Error::Invalid(format!("{} is not a triple branching", b.label(p))));
        }
        let c = b.prefix(p).expect("dimension 4");
        let m_hat = p.quiver.slice(&b.word, c.word.len(), b.word.len());
        let mut source = LinComb::single((Monomial::identity(b.word.src), c.redexes.clone(), m_hat.clone()), Scalar::one());
        let t = self.tgt3(&c.redexes)?;
        self.s_steps(&t, &m_hat, &Scalar::one(), &mut source)?;
        let mut target = LinComb::new();
        let s = self.src3(&c.redexes)?;
        self.s_steps(&s, &m_hat, &Scalar::one(), &mut target)?;
        Ok(Boundary4Data { cell: b.clone(), source, target })
    }
}

/// Whiskered generating-confluence instances in the boundary of a 4-cell.
#[derive(Clone, Debug)]
pub struct Boundary4Data {
    pub cell: ChainCell,
    pub source: LinComb<CellInst>,
    pub target: LinComb<CellInst>,
}

impl Boundary4Data {
    /// `source − target`.
    pub fn net(&self) -> LinComb<CellInst> {
        let mut v = self.source.clone();
        v.add_scaled(&Scalar::from_int(-1), &self.target);
        v
    }

    /// Coefficients of identity-whiskered instances, (source, target).
    pub fn bracket(&self) -> (LinComb<ChainKey>, LinComb<ChainKey>) {
        let pick = |lc: &LinComb<CellInst>| {
            let mut out = LinComb::new();
            for ((l, k, r), v) in lc.iter() {
                if l.is_identity() && r.is_identity() {
                    out.add_term(v, k.clone());
                }
            }
            out
        };
        (pick(&self.source), pick(&self.target))
    }

    pub fn show(&self, p: &Polygraph2) -> String {
        let fmt = |lc: &LinComb<CellInst>| {
            let parts: Vec<String> = lc
                .iter()
                .map(|((l, k, r), v)| {
                    let w = chain_word(p, k);
                    let l = if l.is_identity() { String::new() } else { format!("{} ", p.show_mono(l)) };
                    let r = if r.is_identity() { String::new() } else { format!(" {}", p.show_mono(r)) };
                    format!("{}*{l}[{}]{r}", v, p.show_mono(&w))
                })
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        format!("{} : {} => {}", self.cell.label(p), fmt(&self.source), fmt(&self.target))
    }
}

/// `boundary4` on a fresh homotopy cache.
pub fn boundary4(p: &Polygraph2, b: &ChainCell) -> Result<Boundary4Data> {
    Homotopy::new(p).boundary4(b)
}
