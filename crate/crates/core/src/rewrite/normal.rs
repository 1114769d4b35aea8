//! Normal forms, the rightmost normalisation strategy ρ and ideal membership.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{LinComb, Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};

use super::step::{RewriteStep, Trace};
use super::system::Polygraph2;

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Rightmost,
    Leftmost,
}

/// A whiskered rule `l · φ · r`.
pub type StepKey = (Monomial, usize, Monomial);

/// Normalize `f` step by step, recording the trace.
///
/// At every stage the largest reducible monomial (under the system's order,
/// canonical order otherwise) is rewritten at its rightmost (or leftmost)
/// redex, so each monomial is reduced by iterated ν-steps as in ρ.
pub fn normal_form(f: &Polynomial, p: &Polygraph2, strategy: Strategy, budget: usize) -> Result<(Polynomial, Trace)> {
    let mut trace = Trace::empty(f.clone());
    let certified = p.termination.is_some();
    loop {
        let cur = &trace.end;
        let mut reducible: Vec<&Monomial> = cur.monomials().filter(|m| !p.is_irreducible(m)).collect();
        if reducible.is_empty() {
            return Ok((trace.end.clone(), trace));
        }
        if !certified && trace.steps.len() >= budget {
            return Err(Error::NonterminationSuspected { budget, partial: Box::new(trace) });
        }
        if let Some(o) = &p.order {
            reducible.sort_by(|a, b| o.cmp(a, b));
        }
        let m = reducible.last().unwrap();
        let (start, r) = match strategy {
            Strategy::Rightmost => p.rightmost_redex(m),
            Strategy::Leftmost => p.leftmost_redex(m),
        }
        .expect("reducible monomial has a redex");
        let (left, right) = p.contexts(m, start, r);
        let step = RewriteStep { coef: cur.coeff(m), left, rule: r, right };
        trace.push(p, step)?;
    }
}

/// `true` iff `f` reduces to 0 in a certified convergent system.
pub fn ideal_member(f: &Polynomial, p: &Polygraph2) -> Result<bool> {
    if !p.convergent {
        return Err(Error::NotCertified("ideal membership needs a certified convergent system".into()));
    }
    let mut n = Normalizer::new(p);
    Ok(n.nf(f)?.is_zero())
}

/// Memoized rightmost normalisation of monomials.
///
/// `nf` computes normal forms; `rho` gives ρ_m as a formal combination of
/// whiskered rules, ρ_m = ν_m + Σ λ ρ_n over the terms of t(ν_m).
pub struct Normalizer<'a> {
    p: &'a Polygraph2,
    nf: HashMap<Monomial, Arc<Polynomial>>,
    rho: HashMap<Monomial, Arc<LinComb<StepKey>>>,
    budget: usize,
    steps: usize,
}

impl<'a> Normalizer<'a> {
    pub fn new(p: &'a Polygraph2) -> Normalizer<'a> {
        Normalizer { p, nf: HashMap::new(), rho: HashMap::new(), budget: DEFAULT_STEP_BUDGET, steps: 0 }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn system(&self) -> &'a Polygraph2 {
        self.p
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::NonterminationSuspected {
                budget: self.budget,
                partial: Box::new(Trace::empty(Polynomial::zero(0, 0))),
            });
        }
        Ok(())
    }

    /// ν_m as (left, rule, right), or `None` when m is irreducible.
    pub fn nu(&self, m: &Monomial) -> Option<StepKey> {
        let (start, r) = self.p.rightmost_redex(m)?;
        let (l, rr) = self.p.contexts(m, start, r);
        Some((l, r, rr))
    }

    pub fn nf_monomial(&mut self, m: &Monomial) -> Result<Arc<Polynomial>> {
        if let Some(v) = self.nf.get(m) {
            return Ok(v.clone());
        }
        let res = match self.nu(m) {
            None => Polynomial::monomial(m.clone()),
            Some((l, r, rr)) => {
                self.tick()?;
                let t = self.p.rule(r).tgt.whisker(&l, &rr);
                let mut acc = Polynomial::zero(m.src, m.tgt);
                for (n, c) in t.terms() {
                    let v = self.nf_monomial(n)?;
                    acc.add_scaled(c, &v);
                }
                acc
            }
        };
        let res = Arc::new(res);
        self.nf.insert(m.clone(), res.clone());
        Ok(res)
    }

    pub fn nf(&mut self, f: &Polynomial) -> Result<Polynomial> {
        let (s, t) = f.boundary();
        let mut acc = Polynomial::zero(s, t);
        for (m, c) in f.terms() {
            let v = self.nf_monomial(m)?;
            acc.add_scaled(c, &v);
        }
        Ok(acc)
    }

    pub fn rho_monomial(&mut self, m: &Monomial) -> Result<Arc<LinComb<StepKey>>> {
        if let Some(v) = self.rho.get(m) {
            return Ok(v.clone());
        }
        let mut acc = LinComb::new();
        if let Some((l, r, rr)) = self.nu(m) {
            self.tick()?;
            let t = self.p.rule(r).tgt.whisker(&l, &rr);
            acc.add_term(&Scalar::one(), (l, r, rr));
            for (n, c) in t.terms() {
                let v = self.rho_monomial(n)?;
                acc.add_scaled(c, &v);
            }
        }
        let acc = Arc::new(acc);
        self.rho.insert(m.clone(), acc.clone());
        Ok(acc)
    }

    /// ρ_f = Σ λ ρ_m.
    pub fn rho(&mut self, f: &Polynomial) -> Result<LinComb<StepKey>> {
        let mut acc = LinComb::new();
        for (m, c) in f.terms() {
            let v = self.rho_monomial(m)?;
            acc.add_scaled(c, &v);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::rewrite::Rule;

    fn completed_xy() -> Polygraph2 {
        let q = Quiver::single(&["x", "y"]);
        let m = |w: &[u32]| q.monomial(w).unwrap();
        let rules = vec![
            Rule::new("alpha", m(&[0, 1]), Polynomial::monomial(m(&[0, 0]))),
            Rule::new("beta", m(&[1, 1]), Polynomial::monomial(m(&[0, 0]))),
            Rule::new("gamma", m(&[1, 0, 0]), Polynomial::monomial(m(&[0, 0, 0]))),
        ];
        Polygraph2::new(q, rules).unwrap()
    }

    #[test]
    fn y_cubed_normalizes_to_x_cubed() {
        let p = completed_xy();
        let y3 = Polynomial::monomial(p.quiver.monomial(&[1, 1, 1]).unwrap());
        let x3 = Polynomial::monomial(p.quiver.monomial(&[0, 0, 0]).unwrap());
        let (nf, trace) = normal_form(&y3, &p, Strategy::Rightmost, 100).unwrap();
        assert_eq!(nf, x3);
        assert!(trace.replay(&p).unwrap());
        assert_eq!(trace.steps[0].left.word, vec![1]);
        let (nf2, _) = normal_form(&y3, &p, Strategy::Leftmost, 100).unwrap();
        assert_eq!(nf2, x3);
        let mut n = Normalizer::new(&p);
        assert_eq!(n.nf(&y3).unwrap(), x3);
    }

    #[test]
    fn budget_exhaustion_without_certificate() {
        let q = Quiver::single(&["x"]);
        let x = q.monomial(&[0]).unwrap();
        let p = Polygraph2::new(q, vec![Rule::new("loop", x.clone(), Polynomial::term(Scalar::from_int(2), x.clone()))]).unwrap();
        let r = normal_form(&Polynomial::monomial(x), &p, Strategy::Rightmost, 10);
        match r {
            Err(Error::NonterminationSuspected { partial, .. }) => assert_eq!(partial.steps.len(), 10),
            other => panic!("unexpected {other:?}"),
        }
    }
}
