//! Rewriting steps and traces.

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};

use super::system::Polygraph2;

/// The step `λ m1 φ m2 + g` on a polynomial whose term at `m1·src(φ)·m2`
/// has coefficient λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub coef: Scalar,
    pub left: Monomial,
    pub rule: usize,
    pub right: Monomial,
}

impl RewriteStep {
    /// The rewritten monomial `m1·src(φ)·m2`.
    pub fn redex(&self, p: &Polygraph2) -> Monomial {
        p.rule(self.rule).src.whisker(&self.left, &self.right)
    }

    /// The remainder g of `f = λ m1 src(φ) m2 + g`.
    pub fn remainder(&self, p: &Polygraph2, f: &Polynomial) -> Polynomial {
        let mut g = f.clone();
        g.add_term(&-&self.coef, &self.redex(p));
        g
    }

    /// `λ m1 (src(φ) − tgt(φ)) m2`.
    pub fn delta(&self, p: &Polygraph2) -> Polynomial {
        p.rule(self.rule).relation().whisker(&self.left, &self.right).scale(&self.coef)
    }

    /// Image of `f` under the step, checking the side condition that the
    /// redex monomial carries exactly the coefficient λ in `f`.
    pub fn apply(&self, p: &Polygraph2, f: &Polynomial) -> Result<Polynomial> {
        let m = self.redex(p);
        if self.coef.is_zero() || f.coeff(&m) != self.coef {
            return Err(Error::Invalid(format!(
                "step on {} does not match the polynomial's coefficient",
                p.show_mono(&m)
            )));
        }
        Ok(f - &self.delta(p))
    }

    /// The target of the step applied to the bare term `λ m1 src m2`.
    pub fn target_of_term(&self, p: &Polygraph2) -> Polynomial {
        p.rule(self.rule).tgt.whisker(&self.left, &self.right).scale(&self.coef)
    }

    pub fn show(&self, p: &Polygraph2) -> String {
        format!(
            "({}, {}, {}, {})",
            self.coef,
            p.show_mono(&self.left),
            p.rule(self.rule).name,
            p.show_mono(&self.right)
        )
    }
}

/// A positive rewriting sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub start: Polynomial,
    pub steps: Vec<RewriteStep>,
    pub end: Polynomial,
}

impl Trace {
    pub fn empty(f: Polynomial) -> Trace {
        Trace { start: f.clone(), steps: Vec::new(), end: f }
    }

    pub fn push(&mut self, p: &Polygraph2, s: RewriteStep) -> Result<()> {
        self.end = s.apply(p, &self.end)?;
        self.steps.push(s);
        Ok(())
    }

    /// Re-run every step from `start` and compare with `end`.
    pub fn replay(&self, p: &Polygraph2) -> Result<bool> {
        let mut f = self.start.clone();
        for s in &self.steps {
            f = s.apply(p, &f)?;
        }
        Ok(f == self.end)
    }

    pub fn show(&self, p: &Polygraph2) -> String {
        let steps: Vec<String> = self.steps.iter().map(|s| s.show(p)).collect();
        format!("{} => {} via [{}]", p.show_poly(&self.start), p.show_poly(&self.end), steps.join(", "))
    }
}

/// One step per (term, occurrence, rule), ordered by term, position, rule.
pub fn find_redexes(f: &Polynomial, p: &Polygraph2) -> Vec<RewriteStep> {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        for (start, r) in p.occurrences(m) {
            let (left, right) = p.contexts(m, start, r);
            out.push(RewriteStep { coef: c.clone(), left, rule: r, right });
        }
    }
    out
}

/// The rightmost step on a monomial (coefficient 1).
pub fn rightmost_step(m: &Monomial, p: &Polygraph2) -> Result<RewriteStep> {
    let (start, r) = p.rightmost_redex(m).ok_or_else(|| Error::NoStep(p.show_mono(m)))?;
    let (left, right) = p.contexts(m, start, r);
    Ok(RewriteStep { coef: Scalar::one(), left, rule: r, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::rewrite::Rule;

    fn sys_xy() -> Polygraph2 {
        let q = Quiver::single(&["x", "y"]);
        let xx = Polynomial::monomial(q.monomial(&[0, 0]).unwrap());
        let rules = vec![
            Rule::new("alpha", q.monomial(&[0, 1]).unwrap(), xx.clone()),
            Rule::new("beta", q.monomial(&[1, 1]).unwrap(), xx),
        ];
        Polygraph2::new(q, rules).unwrap()
    }

    #[test]
    fn two_redexes_on_y_cubed() {
        let p = sys_xy();
        let y3 = Polynomial::monomial(p.quiver.monomial(&[1, 1, 1]).unwrap());
        let steps = find_redexes(&y3, &p);
        assert_eq!(steps.len(), 2);
        assert!(steps[0].left.is_identity() && steps[0].right.word == vec![1]);
        assert!(steps[1].left.word == vec![1] && steps[1].right.is_identity());
        let nu = rightmost_step(&p.quiver.monomial(&[1, 1, 1]).unwrap(), &p).unwrap();
        assert_eq!(nu, steps[1]);
    }

    #[test]
    fn side_condition_enforced() {
        let p = sys_xy();
        let xy = p.quiver.monomial(&[0, 1]).unwrap();
        let f = Polynomial::term(Scalar::from_int(2), xy.clone());
        let s = RewriteStep { coef: Scalar::one(), left: Monomial::identity(0), rule: 0, right: Monomial::identity(0) };
        assert!(s.apply(&p, &f).is_err());
        let s2 = RewriteStep { coef: Scalar::from_int(2), ..s };
        let g = s2.apply(&p, &f).unwrap();
        assert_eq!(g, Polynomial::term(Scalar::from_int(2), p.quiver.monomial(&[0, 0]).unwrap()));
    }
}
