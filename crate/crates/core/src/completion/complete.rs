//! Orientation, interreduction, Buchberger-style completion and the Gröbner view.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::rewrite::{Normalizer, Polygraph2, Rule};

use super::branching::{enumerate_critical_branchings, s_polynomial};
use super::confluence::check_confluence;
use super::termination::{certify_termination, hint_from, TerminationHint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionBounds {
    pub max_degree: u32,
    pub max_rules: usize,
}

impl Default for CompletionBounds {
    fn default() -> Self {
        CompletionBounds { max_degree: 12, max_rules: 512 }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub system: Polygraph2,
    /// `true` when the output carries termination and convergence certificates.
    pub certified: bool,
    /// Names of rules that were not present (with the same source and target) in the input.
    pub added: Vec<String>,
    pub note: Option<String>,
}

const GREEK: [&str; 24] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu", "xi",
    "omicron", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
];

fn fresh(rules: &[Rule]) -> String {
    let used: HashSet<&str> = rules.iter().map(|r| r.name.as_str()).collect();
    GREEK
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("r{i}")))
        .find(|n| !used.contains(n.as_str()))
        .unwrap()
}

/// `lm(f) ⇒ lm(f) − f / lc(f)`.
pub fn orient(name: impl Into<String>, f: &Polynomial, ord: &MonomialOrder) -> Result<Rule> {
    let name = name.into();
    let (lm, lc, _) = f.leading(ord).ok_or_else(|| Error::Unorientable(name.clone()))?;
    let inv = lc.inv()?;
    let mut tgt = Polynomial::monomial(lm.clone());
    tgt.add_scaled(&-&inv, f);
    Ok(Rule::new(name, lm, tgt))
}

fn needs_order(p: &Polygraph2) -> Result<&MonomialOrder> {
    p.order
        .as_ref()
        .or_else(|| p.termination.as_ref().and_then(|c| c.order()))
        .ok_or_else(|| Error::Invalid("reorienting a rule requires a monomial order".into()))
}

/// Left- and right-reduce a terminating system.
///
/// A rule whose source is reducible by another rule is removed and its
/// relation is normalised by the remaining rules; a nonzero remainder is
/// re-oriented by the order and kept under the same name. Targets are then
/// replaced by their normal forms.
pub fn interreduce(p: &Polygraph2) -> Result<Polygraph2> {
    if p.termination.is_none() && p.order.is_none() {
        return Err(Error::NotCertified("interreduction needs a termination certificate or an order".into()));
    }
    let mut rules: Vec<Rule> = Vec::new();
    for r in p.rules() {
        if !rules.iter().any(|o| o.src == r.src && o.tgt == r.tgt) {
            rules.push(r.clone());
        }
    }
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::BoundExceeded("interreduction did not stabilise".into()));
        }
        let cur = p.with_rules(rules.clone())?;
        let bad = (0..rules.len()).find(|&i| {
            cur.occurrences(&rules[i].src).iter().any(|&(s, j)| j != i || s != 0)
                || rules[..i].iter().any(|o| o.src == rules[i].src)
        });
        let Some(i) = bad else { break };
        let r = rules.remove(i);
        let rest = p.with_rules(rules.clone())?;
        let nf = Normalizer::new(&rest).nf(&r.relation())?;
        if !nf.is_zero() {
            let ord = needs_order(p)?;
            rules.insert(i, orient(r.name, &nf, ord)?);
        }
    }
    let full = p.with_rules(rules.clone())?;
    let mut n = Normalizer::new(&full);
    let mut out = Vec::with_capacity(rules.len());
    for r in &rules {
        out.push(Rule::new(r.name.clone(), r.src.clone(), n.nf(&r.tgt)?));
    }
    let mut res = p.with_rules(out)?;
    if let Some(c) = &p.termination {
        res.termination = certify_termination(&res, hint_from(c)).certificate();
    }
    if res.termination.is_none() {
        if let Some(o) = &res.order {
            res.termination = certify_termination(&res, TerminationHint::Order(o.clone())).certificate();
        }
    }
    Ok(res)
}

/// `p` flagged convergent when it is terminating, reduced and confluent, with
/// a termination certificate searched for when it carries none.
pub fn as_convergent(p: &Polygraph2) -> Result<Option<Polygraph2>> {
    let mut s = p.clone();
    if s.termination.is_none() {
        s.termination = certify_termination(&s, TerminationHint::Auto).certificate();
    }
    if s.termination.is_some() && s.is_reduced() && check_confluence(&s)?.convergent {
        s.convergent = true;
        return Ok(Some(s));
    }
    Ok(None)
}

/// Complete `p` into a reduced convergent system under `ord`.
///
/// A system accepted by [`as_convergent`] is returned in that form. Otherwise every rule is oriented by `ord`,
/// the rules are interreduced, and critical branchings are processed by
/// ascending overlap degree then creation time; nonzero S-polynomial normal
/// forms become new rules. A tripped bound returns the partial system with
/// `certified = false`.
pub fn complete(p: &Polygraph2, ord: &MonomialOrder, bounds: CompletionBounds) -> Result<CompletionResult> {
    if let Some(s) = as_convergent(p)? {
        return Ok(CompletionResult { system: s, certified: true, added: Vec::new(), note: None });
    }
    let mut rules = Vec::new();
    for r in p.rules() {
        let f = r.relation();
        if f.is_zero() {
            return Err(Error::Unorientable(r.name.clone()));
        }
        rules.push(orient(r.name.clone(), &f, ord)?);
    }
    let mut base = p.with_rules(rules)?.with_order(ord.clone());
    base.termination = certify_termination(&base, TerminationHint::Order(ord.clone())).certificate();
    let mut sys = interreduce(&base)?;

    // Pairs are identified by the contents of both rules and the overlap word.
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: Vec<(Monomial, Polynomial, Monomial, Polynomial, Monomial)> = Vec::new();
    let mut note = None;
    loop {
        for b in enumerate_critical_branchings(&sys) {
            let (r1, r2) = (sys.rule(b.first.rule), sys.rule(b.second.rule));
            let key = (r1.src.clone(), r1.tgt.clone(), r2.src.clone(), r2.tgt.clone(), b.word(&sys));
            if !pending.contains(&key) {
                let deg = sys.quiver.degree(&key.4);
                queue.insert((deg, pending.len(), b.second.left.len()));
                pending.push(key);
            }
        }
        let Some((_, idx, second_start)) = queue.pop_first() else { break };
        let (s1, t1, s2, t2, w) = pending[idx].clone();
        let find = |s: &Monomial, t: &Polynomial| sys.rules().iter().position(|r| &r.src == s && &r.tgt == t);
        let (Some(i), Some(j)) = (find(&s1, &t1), find(&s2, &t2)) else { continue };
        let b = enumerate_critical_branchings(&sys)
            .into_iter()
            .find(|b| b.first.rule == i && b.second.rule == j && b.word(&sys) == w && b.second.left.len() == second_start);
        let Some(b) = b else { continue };
        let s = s_polynomial(&sys, &b);
        let nf = Normalizer::new(&sys).nf(&s.poly)?;
        if nf.is_zero() {
            continue;
        }
        let mut rules = sys.rules().to_vec();
        let new_rule = orient(fresh(&rules), &nf, ord)?;
        if sys.quiver.degree(&new_rule.src) > bounds.max_degree {
            note = Some(format!("new rule of degree {} exceeds the maximum degree {}", sys.quiver.degree(&new_rule.src), bounds.max_degree));
            rules.push(new_rule);
            sys = sys.with_rules(rules)?;
            break;
        }
        rules.push(new_rule);
        if rules.len() > bounds.max_rules {
            note = Some(format!("rule count exceeds the maximum of {}", bounds.max_rules));
            sys = sys.with_rules(rules)?;
            break;
        }
        let mut next = sys.with_rules(rules)?;
        next.termination = certify_termination(&next, TerminationHint::Order(ord.clone())).certificate();
        sys = interreduce(&next)?;
    }

    let input: Vec<(&Monomial, &Polynomial)> = p.rules().iter().map(|r| (&r.src, &r.tgt)).collect();
    let added = sys.rules().iter().filter(|r| !input.contains(&(&r.src, &r.tgt))).map(|r| r.name.clone()).collect();
    if note.is_some() {
        sys.termination = None;
        sys.convergent = false;
        return Ok(CompletionResult { system: sys, certified: false, added, note });
    }
    sys.termination = certify_termination(&sys, TerminationHint::Order(ord.clone())).certificate();
    let rep = check_confluence(&sys)?;
    sys.convergent = rep.convergent;
    Ok(CompletionResult { certified: rep.convergent, system: sys, added, note })
}

/// `{src − tgt}` per rule, normalised so the leading coefficient is 1.
pub fn groebner_view(p: &Polygraph2, ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for r in p.rules() {
        if r.tgt.monomials().any(|m| ord.cmp(m, &r.src) != std::cmp::Ordering::Less) {
            return Err(Error::NotCertified(format!("rule {} is not compatible with {}", r.name, ord.describe(&p.quiver))));
        }
        let f = r.relation();
        let (_, lc, _) = f.leading(ord).expect("nonzero relation");
        out.push(f.scale(&lc.inv()?));
    }
    debug_assert!(out.iter().all(|f| f.leading(ord).map(|l| l.1) == Some(Scalar::one())));
    Ok(out)
}
