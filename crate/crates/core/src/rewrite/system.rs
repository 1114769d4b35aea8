//! Rules and linear 2-polygraphs.

use std::sync::Arc;

use crate::algebra::{FieldSpec, Monomial, MonomialOrder, ParamCtx, Polynomial, Quiver, Scalar};
use crate::completion::{PatternMeasure, TerminationCertificate};
use crate::error::{Error, Result};

use super::automaton::Matcher;

/// A monic oriented relation `src ⇒ tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub src: Monomial,
    pub tgt: Polynomial,
}

impl Rule {
    pub fn new(name: impl Into<String>, src: Monomial, tgt: Polynomial) -> Rule {
        Rule { name: name.into(), src, tgt }
    }

    /// `src − tgt`.
    pub fn relation(&self) -> Polynomial {
        let mut p = Polynomial::monomial(self.src.clone());
        p.add_scaled(&Scalar::from_int(-1), &self.tgt);
        p
    }

    /// Degree of the source and whether every target term has that degree.
    pub fn homogeneity(&self, q: &Quiver) -> (u32, bool) {
        let d = q.degree(&self.src);
        (d, self.tgt.monomials().all(|m| q.degree(m) == d))
    }
}

/// A linear 2-polygraph with optional order, termination hint and certificates.
///
/// Reducedness and homogeneity are recomputed on demand.
#[derive(Clone, Debug)]
pub struct Polygraph2 {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub param: Option<Arc<ParamCtx>>,
    rules: Vec<Rule>,
    pub order: Option<MonomialOrder>,
    pub measure: Option<PatternMeasure>,
    pub termination: Option<TerminationCertificate>,
    /// Set only by a successful confluence check.
    pub convergent: bool,
    matcher: Matcher,
}

impl PartialEq for Polygraph2 {
    fn eq(&self, o: &Polygraph2) -> bool {
        self.quiver == o.quiver
            && self.field == o.field
            && self.rules == o.rules
            && self.order == o.order
            && self.measure == o.measure
            && self.param.as_ref().map(|p| &p.name) == o.param.as_ref().map(|p| &p.name)
    }
}

impl Polygraph2 {
    pub fn new(quiver: Quiver, rules: Vec<Rule>) -> Result<Polygraph2> {
        for r in &rules {
            if r.src.is_identity() {
                return Err(Error::Invalid(format!("rule {} has an identity source", r.name)));
            }
            if !r.tgt.is_zero() && r.tgt.boundary() != r.src.boundary() {
                return Err(Error::Boundary(format!("rule {}: source and target are not parallel", r.name)));
            }
        }
        let matcher = Matcher::new(rules.iter().map(|r| r.src.word.as_slice()));
        Ok(Polygraph2 {
            quiver,
            field: FieldSpec::Rational,
            param: None,
            rules,
            order: None,
            measure: None,
            termination: None,
            convergent: false,
            matcher,
        })
    }

    pub fn with_order(mut self, ord: MonomialOrder) -> Polygraph2 {
        self.order = Some(ord);
        self
    }

    /// Same metadata, new rule list; certificates are dropped.
    pub fn with_rules(&self, rules: Vec<Rule>) -> Result<Polygraph2> {
        let mut p = Polygraph2::new(self.quiver.clone(), rules)?;
        p.field = self.field.clone();
        p.param = self.param.clone();
        p.order = self.order.clone();
        p.measure = self.measure.clone();
        Ok(p)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn rule_by_name(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name == name)
    }

    pub fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    /// Every `(start, rule)` occurrence of a source in `m`.
    pub fn occurrences(&self, m: &Monomial) -> Vec<(usize, usize)> {
        self.matcher.find_all(&m.word)
    }

    pub fn is_irreducible(&self, m: &Monomial) -> bool {
        self.matcher.is_irreducible(&m.word)
    }

    /// Rightmost redex: maximal start, lowest rule id among ties.
    pub fn rightmost_redex(&self, m: &Monomial) -> Option<(usize, usize)> {
        let occ = self.occurrences(m);
        let last = occ.last()?.0;
        occ.into_iter().find(|&(s, _)| s == last)
    }

    /// Leftmost redex: minimal start, lowest rule id among ties.
    pub fn leftmost_redex(&self, m: &Monomial) -> Option<(usize, usize)> {
        self.occurrences(m).into_iter().next()
    }

    /// Split `m` around an occurrence of rule `r` at `start`.
    pub fn contexts(&self, m: &Monomial, start: usize, r: usize) -> (Monomial, Monomial) {
        let len = self.rules[r].src.len();
        (self.quiver.slice(m, 0, start), self.quiver.slice(m, start + len, m.len()))
    }

    /// Each source is irreducible for the other rules.
    pub fn is_left_reduced(&self) -> bool {
        self.rules.iter().enumerate().all(|(i, r)| {
            self.occurrences(&r.src).iter().all(|&(s, j)| j == i && s == 0)
                && !self.rules[..i].iter().any(|o| o.src == r.src)
        })
    }

    /// Each target is irreducible for all rules.
    pub fn is_right_reduced(&self) -> bool {
        self.rules.iter().all(|r| r.tgt.monomials().all(|m| self.is_irreducible(m)))
    }

    pub fn is_reduced(&self) -> bool {
        self.is_left_reduced() && self.is_right_reduced()
    }

    /// `Some(N)` when every rule is homogeneous of the same degree N.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut n = None;
        for r in &self.rules {
            let (d, h) = r.homogeneity(&self.quiver);
            if !h || n.is_some_and(|m| m != d) {
                return None;
            }
            n = Some(d);
        }
        n
    }

    /// Every rule is homogeneous (degrees may differ between rules).
    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(|r| r.homogeneity(&self.quiver).1)
    }

    pub fn max_rule_degree(&self) -> u32 {
        self.rules.iter().map(|r| self.quiver.degree(&r.src)).max().unwrap_or(0)
    }

    pub fn show_poly(&self, f: &Polynomial) -> String {
        f.show(&self.quiver, self.order.as_ref())
    }

    pub fn show_mono(&self, m: &Monomial) -> String {
        self.quiver.show(m)
    }

    pub fn show_rule(&self, i: usize) -> String {
        let r = &self.rules[i];
        format!("{} : {} -> {}", r.name, self.show_mono(&r.src), self.show_poly(&r.tgt))
    }

    /// The same system with every coefficient reduced mod p.
    pub fn to_prime_field(&self, p: u64) -> Result<Polygraph2> {
        let rules = self
            .rules
            .iter()
            .map(|r| Ok(Rule::new(r.name.clone(), r.src.clone(), r.tgt.map_coeffs(|c| Ok(c.to_mod(p)?))?)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.with_rules(rules)?;
        out.field = FieldSpec::Prime(p);
        Ok(out)
    }

    /// Fresh rule name not used yet, `prefix` followed by a counter.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..).map(|i| format!("{prefix}{i}")).find(|n| self.rule_by_name(n).is_none()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reducedness_flags() {
        let q = Quiver::single(&["x", "y"]);
        let xy = q.monomial(&[0, 1]).unwrap();
        let xx = q.monomial(&[0, 0]).unwrap();
        let yy = q.monomial(&[1, 1]).unwrap();
        let p = Polygraph2::new(
            q.clone(),
            vec![Rule::new("a", xy.clone(), Polynomial::monomial(xx.clone())), Rule::new("b", yy, Polynomial::monomial(xx.clone()))],
        )
        .unwrap();
        assert!(p.is_reduced());
        assert_eq!(p.homogeneous_degree(), Some(2));
        let dup = Polygraph2::new(
            q,
            vec![Rule::new("a", xy.clone(), Polynomial::monomial(xx.clone())), Rule::new("b", xy, Polynomial::monomial(xx))],
        )
        .unwrap();
        assert!(!dup.is_left_reduced());
    }
}
