//! Confluence checks through S-polynomials, and convergence certification.

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::rewrite::{normal_form, Normalizer, Polygraph2, Strategy, DEFAULT_STEP_BUDGET};

use super::branching::{enumerate_critical_branchings, s_polynomial, Branching};

/// One critical branching with its S-polynomial and joining data.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalEntry {
    pub word: String,
    pub first: String,
    pub second: String,
    pub s_polynomial: String,
    pub s_normal_form: String,
    pub joinable: bool,
    /// Rightmost normalisations of the two one-step targets.
    pub first_trace: String,
    pub second_trace: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub termination: String,
    pub critical: Vec<CriticalEntry>,
    pub convergent: bool,
}

impl ConfluenceReport {
    pub fn witness(&self) -> Option<&CriticalEntry> {
        self.critical.iter().find(|c| !c.joinable)
    }
}

/// ρ-normal form of an S-polynomial; zero iff the branching is joinable.
pub(crate) fn s_normal_form(n: &mut Normalizer<'_>, b: &Branching) -> Result<(Polynomial, Polynomial)> {
    let s = s_polynomial(n.system(), b);
    let nf = n.nf(&s.poly)?;
    Ok((s.poly, nf))
}

/// Decide confluence of a terminating system from its critical branchings.
pub fn check_confluence(p: &Polygraph2) -> Result<ConfluenceReport> {
    let cert = p
        .termination
        .as_ref()
        .ok_or_else(|| Error::NotCertified("confluence check needs a termination certificate".into()))?;
    let mut n = Normalizer::new(p);
    let mut critical = Vec::new();
    for b in enumerate_critical_branchings(p) {
        let (s, nf) = s_normal_form(&mut n, &b)?;
        let (_, t1) = normal_form(&b.first.target_of_term(p), p, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?;
        let (_, t2) = normal_form(&b.second.target_of_term(p), p, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?;
        critical.push(CriticalEntry {
            word: p.show_mono(&b.word(p)),
            first: b.first.show(p),
            second: b.second.show(p),
            s_polynomial: p.show_poly(&s),
            s_normal_form: p.show_poly(&nf),
            joinable: nf.is_zero(),
            first_trace: t1.show(p),
            second_trace: t2.show(p),
        });
    }
    let convergent = critical.iter().all(|c| c.joinable);
    Ok(ConfluenceReport { termination: cert.kind_name().into(), critical, convergent })
}

/// Copy of `p` flagged convergent when the check succeeds.
pub fn certify_convergence(p: &Polygraph2) -> Result<(Polygraph2, ConfluenceReport)> {
    let rep = check_confluence(p)?;
    let mut out = p.clone();
    out.convergent = rep.convergent;
    Ok((out, rep))
}

/// Do all local branchings on monomials of length ≤ `max_len` have the same
/// ρ-normal form on both sides? Returns the first failing word otherwise.
pub fn local_joinability(p: &Polygraph2, max_len: usize) -> Result<Option<Monomial>> {
    if p.termination.is_none() {
        return Err(Error::NotCertified("joinability check needs a termination certificate".into()));
    }
    let q = &p.quiver;
    let mut n = Normalizer::new(p);
    let mut frontier: Vec<Monomial> = (0..q.objects.len() as u32).map(Monomial::identity).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..q.len() as u32 {
                if q.generators[g as usize].src != w.tgt {
                    continue;
                }
                let mut word = w.word.clone();
                word.push(g);
                next.push(q.monomial(&word)?);
            }
        }
        for w in &next {
            let occ = p.occurrences(w);
            if occ.len() < 2 {
                continue;
            }
            let targets: Vec<Polynomial> = occ
                .iter()
                .map(|&(s, r)| {
                    let (l, rr) = p.contexts(w, s, r);
                    n.nf(&p.rule(r).tgt.whisker(&l, &rr))
                })
                .collect::<Result<_>>()?;
            if targets.iter().any(|t| t != &targets[0]) {
                return Ok(Some(w.clone()));
            }
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, Quiver};
    use crate::completion::{certify_termination, TerminationHint};
    use crate::rewrite::Rule;

    fn certified(q: &Quiver, rules: Vec<Rule>, prec: Vec<u32>) -> Polygraph2 {
        let ord = MonomialOrder::deglex(q, prec).unwrap();
        let mut p = Polygraph2::new(q.clone(), rules).unwrap().with_order(ord.clone());
        p.termination = certify_termination(&p, TerminationHint::Order(ord)).certificate();
        p
    }

    #[test]
    fn xy_needs_completion() {
        let q = Quiver::single(&["x", "y"]);
        let m = |w: &[u32]| q.monomial(w).unwrap();
        let p = certified(
            &q,
            vec![
                Rule::new("alpha", m(&[0, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("beta", m(&[1, 1]), Polynomial::monomial(m(&[0, 0]))),
            ],
            vec![0, 1],
        );
        let rep = check_confluence(&p).unwrap();
        assert!(!rep.convergent);
        let w = rep.witness().unwrap();
        assert_eq!(w.word, "y^3");
        assert_eq!(w.s_normal_form, "-x^3 + y x^2");
        assert!(local_joinability(&p, 4).unwrap().is_some());
    }

    #[test]
    fn missing_certificate_is_an_error() {
        let q = Quiver::single(&["x", "y"]);
        let p = Polygraph2::new(q, vec![]).unwrap();
        assert!(check_confluence(&p).is_err());
    }
}
