//! Local branchings, their classification, critical branchings and S-polynomials.

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::rewrite::{Polygraph2, RewriteStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchingKind {
    /// The same step twice.
    Aspherical,
    /// Two non-overlapping redexes in the same monomial.
    Peiffer,
    /// Redexes in different monomials of the same polynomial.
    AdditivePeiffer,
    /// Overlapping redexes that are not minimal (whiskered, scaled or with a remainder).
    Overlapping,
    /// Minimal overlapping branching on a bare monomial.
    Critical,
}

/// A local branching `(first, second)` on the polynomial `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    pub source: Polynomial,
    pub first: RewriteStep,
    pub second: RewriteStep,
    pub kind: BranchingKind,
}

impl Branching {
    /// The word of a critical branching.
    pub fn word(&self, p: &Polygraph2) -> Monomial {
        self.first.redex(p)
    }

    /// Start positions of the two redexes inside the word.
    pub fn positions(&self) -> (usize, usize) {
        (self.first.left.len(), self.second.left.len())
    }

    pub fn show(&self, p: &Polygraph2) -> String {
        format!("{} on {}: {} / {}", kind_name(self.kind), p.show_poly(&self.source), self.first.show(p), self.second.show(p))
    }
}

pub fn kind_name(k: BranchingKind) -> &'static str {
    match k {
        BranchingKind::Aspherical => "aspherical",
        BranchingKind::Peiffer => "Peiffer",
        BranchingKind::AdditivePeiffer => "additive-Peiffer",
        BranchingKind::Overlapping => "overlapping",
        BranchingKind::Critical => "critical",
    }
}

/// Classify two steps applying to the same polynomial `f`.
pub fn classify(p: &Polygraph2, f: &Polynomial, a: &RewriteStep, b: &RewriteStep) -> BranchingKind {
    if a == b {
        return BranchingKind::Aspherical;
    }
    let (ma, mb) = (a.redex(p), b.redex(p));
    if ma != mb {
        return BranchingKind::AdditivePeiffer;
    }
    let (sa, sb) = (a.left.len(), b.left.len());
    let (ea, eb) = (sa + p.rule(a.rule).src.len(), sb + p.rule(b.rule).src.len());
    if ea <= sb || eb <= sa {
        return BranchingKind::Peiffer;
    }
    let whole = sa.min(sb) == 0 && ea.max(eb) == ma.len();
    let bare = f.len() == 1 && a.coef.is_one();
    if whole && bare {
        BranchingKind::Critical
    } else {
        BranchingKind::Overlapping
    }
}

/// Every pair of distinct steps on `f`, classified.
pub fn local_branchings(p: &Polygraph2, f: &Polynomial) -> Vec<Branching> {
    let steps = crate::rewrite::find_redexes(f, p);
    let mut out = Vec::new();
    for i in 0..steps.len() {
        for j in i + 1..steps.len() {
            let kind = classify(p, f, &steps[i], &steps[j]);
            out.push(Branching { source: f.clone(), first: steps[i].clone(), second: steps[j].clone(), kind });
        }
    }
    out
}

fn bare_step(p: &Polygraph2, w: &Monomial, start: usize, rule: usize) -> RewriteStep {
    let (left, right) = p.contexts(w, start, rule);
    RewriteStep { coef: Scalar::one(), left, rule, right }
}

/// Critical branchings, ordered by (first rule, second rule, overlap length).
///
/// For each pair (φ, ψ) and each nonempty proper suffix of src(φ) that is a
/// prefix of src(ψ) with src(ψ) longer than the overlap, the branching on the
/// amalgamated word. When ψ's source occurs strictly inside φ's source
/// (non-left-reduced input), the inclusion branching on src(φ) is emitted too.
pub fn enumerate_critical_branchings(p: &Polygraph2) -> Vec<Branching> {
    let q = &p.quiver;
    let mut out = Vec::new();
    for (i, phi) in p.rules().iter().enumerate() {
        for (j, psi) in p.rules().iter().enumerate() {
            let (a, b) = (&phi.src.word, &psi.src.word);
            for k in 1..a.len().min(b.len() + 1) {
                if k >= b.len() || a[a.len() - k..] != b[..k] {
                    continue;
                }
                let mut word = a.clone();
                word.extend_from_slice(&b[k..]);
                let w = q.monomial(&word).expect("overlap of composable words");
                let first = bare_step(p, &w, 0, i);
                let second = bare_step(p, &w, a.len() - k, j);
                out.push(Branching { source: Polynomial::monomial(w), first, second, kind: BranchingKind::Critical });
            }
            if i != j && b.len() <= a.len() {
                for s in phi.src.occurrences(b) {
                    if (s, b.len()) == (0, a.len()) && j > i {
                        continue;
                    }
                    let w = phi.src.clone();
                    let first = bare_step(p, &w, 0, i);
                    let second = bare_step(p, &w, s, j);
                    out.push(Branching { source: Polynomial::monomial(w), first, second, kind: BranchingKind::Critical });
                }
            }
        }
    }
    out
}

/// The S-polynomial of a critical branching with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPolynomial {
    pub poly: Polynomial,
    pub word: Monomial,
    pub first_rule: usize,
    pub second_rule: usize,
}

/// `S = t(second) − t(first)`, where `first` is the step at the left edge.
pub fn s_polynomial(p: &Polygraph2, b: &Branching) -> SPolynomial {
    let poly = &b.second.target_of_term(p) - &b.first.target_of_term(p);
    SPolynomial { poly, word: b.word(p), first_rule: b.first.rule, second_rule: b.second.rule }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::rewrite::Rule;

    fn xy() -> Polygraph2 {
        let q = Quiver::single(&["x", "y"]);
        let m = |w: &[u32]| q.monomial(w).unwrap();
        Polygraph2::new(
            q.clone(),
            vec![
                Rule::new("alpha", m(&[0, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("beta", m(&[1, 1]), Polynomial::monomial(m(&[0, 0]))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn xy_has_two_criticals() {
        let p = xy();
        let bs = enumerate_critical_branchings(&p);
        let words: Vec<String> = bs.iter().map(|b| p.show_mono(&b.word(&p))).collect();
        assert_eq!(words, vec!["x y^2", "y^3"]);
        let s = s_polynomial(&p, &bs[1]);
        assert_eq!(p.show_poly(&s.poly), "-x^2 y + y x^2");
    }

    #[test]
    fn classification() {
        let p = xy();
        let q = &p.quiver;
        let yyy = Polynomial::monomial(q.monomial(&[1, 1, 1]).unwrap());
        let bs = local_branchings(&p, &yyy);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].kind, BranchingKind::Critical);
        let w = Polynomial::monomial(q.monomial(&[0, 1, 0, 1]).unwrap());
        assert!(local_branchings(&p, &w).iter().all(|b| b.kind == BranchingKind::Peiffer));
        let f = &Polynomial::monomial(q.monomial(&[0, 1]).unwrap()) + &Polynomial::monomial(q.monomial(&[1, 1]).unwrap());
        assert_eq!(local_branchings(&p, &f)[0].kind, BranchingKind::AdditivePeiffer);
        let s = &crate::rewrite::find_redexes(&f, &p)[0];
        assert_eq!(classify(&p, &f, s, s), BranchingKind::Aspherical);
        let yyyx = Polynomial::monomial(q.monomial(&[1, 1, 1, 0]).unwrap());
        assert!(local_branchings(&p, &yyyx).iter().any(|b| b.kind == BranchingKind::Overlapping));
    }
}
