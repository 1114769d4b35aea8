//! Irreducible monomials, standard bases, monomial algebras, a brute-force
//! model of the quotient algebra, and PBW verification.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};

use super::system::{Polygraph2, Rule};

/// Irreducible monomials grouped by degree `0..=dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBasis {
    pub by_degree: Vec<Vec<Monomial>>,
}

impl StandardBasis {
    pub fn counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }
}

/// Monomials of degree ≤ dmax avoiding every rule source, without any
/// convergence requirement.
pub fn irreducible_monomials(p: &Polygraph2, dmax: u32) -> StandardBasis {
    let q = &p.quiver;
    let mut by_degree = vec![Vec::new(); dmax as usize + 1];
    for o in 0..q.objects.len() as u32 {
        by_degree[0].push(Monomial::identity(o));
    }
    // Depth-first extension with the matcher state carried along.
    let mut stack: Vec<(Vec<u32>, usize, u32)> = vec![(Vec::new(), 0, 0)];
    while let Some((w, state, deg)) = stack.pop() {
        for g in 0..q.len() as u32 {
            let gd = q.degree_of(g);
            if deg + gd > dmax {
                continue;
            }
            if let Some(&last) = w.last() {
                if q.generators[last as usize].tgt != q.generators[g as usize].src {
                    continue;
                }
            }
            let (ns, hit) = p.matcher().advance(state, g);
            if hit {
                continue;
            }
            let mut w2 = w.clone();
            w2.push(g);
            by_degree[(deg + gd) as usize].push(q.monomial(&w2).expect("composable"));
            stack.push((w2, ns, deg + gd));
        }
    }
    for v in by_degree.iter_mut() {
        v.sort();
    }
    StandardBasis { by_degree }
}

/// Standard basis of a certified convergent system.
pub fn standard_basis(p: &Polygraph2, dmax: u32) -> Result<StandardBasis> {
    if !p.convergent {
        return Err(Error::NotCertified("standard basis needs a certified convergent system".into()));
    }
    Ok(irreducible_monomials(p, dmax))
}

/// Same sources, zero targets.
pub fn monomialize(p: &Polygraph2) -> Result<Polygraph2> {
    let rules = p
        .rules()
        .iter()
        .map(|r| Rule::new(r.name.clone(), r.src.clone(), Polynomial::zero(r.src.src, r.src.tgt)))
        .collect();
    let mut m = p.with_rules(rules)?;
    m.termination = p.termination.clone();
    Ok(m)
}

/// Per-degree linear model of F/I for a homogeneous system, built by row
/// reduction of the spanning set {u·(src − tgt)·v}.
pub struct QuotientModel {
    pub dmax: u32,
    words: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    ideal: Vec<Echelon>,
}

impl QuotientModel {
    pub fn build(p: &Polygraph2, dmax: u32) -> Result<QuotientModel> {
        if !p.is_homogeneous() {
            return Err(Error::Invalid("the brute-force quotient model needs homogeneous rules".into()));
        }
        let q = &p.quiver;
        let mut words = Vec::new();
        let mut index = Vec::new();
        let mut ideal = Vec::new();
        for d in 0..=dmax {
            let ws = q.words_of_degree(d);
            let idx: HashMap<Monomial, usize> = ws.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut ech = Echelon::new();
            for r in p.rules() {
                let rd = q.degree(&r.src);
                if rd > d {
                    continue;
                }
                let rel = r.relation();
                for ld in 0..=(d - rd) {
                    for l in q.words_of_degree(ld) {
                        if l.tgt != r.src.src {
                            continue;
                        }
                        for rr in q.words_of_degree(d - rd - ld) {
                            if rr.src != r.src.tgt {
                                continue;
                            }
                            let f = rel.whisker(&l, &rr);
                            ech.insert(&to_vec(&f, &idx))?;
                        }
                    }
                }
            }
            words.push(ws);
            index.push(idx);
            ideal.push(ech);
        }
        Ok(QuotientModel { dmax, words, index, ideal })
    }

    pub fn free_dim(&self, d: u32) -> usize {
        self.words[d as usize].len()
    }

    pub fn ideal_dim(&self, d: u32) -> usize {
        self.ideal[d as usize].rank()
    }

    pub fn quotient_dim(&self, d: u32) -> usize {
        self.free_dim(d) - self.ideal_dim(d)
    }

    pub fn vector(&self, f: &Polynomial, d: u32) -> SparseVec {
        to_vec(f, &self.index[d as usize])
    }

    /// Is the homogeneous polynomial `f` of degree `d` in the ideal?
    pub fn in_ideal(&self, f: &Polynomial, d: u32) -> bool {
        self.ideal[d as usize].contains(&self.vector(f, d))
    }

    /// Are the classes of `ms` (all of degree d) linearly independent in A_d?
    pub fn independent(&self, ms: &[Monomial], d: u32) -> Result<bool> {
        let mut e = self.ideal[d as usize].clone();
        for m in ms {
            if !e.insert(&self.vector(&Polynomial::monomial(m.clone()), d))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Express the class of `f` in A_d on the classes of `basis`, if possible.
    pub fn decompose(&self, f: &Polynomial, d: u32, basis: &[Monomial]) -> Result<Option<Vec<Scalar>>> {
        let ideal = &self.ideal[d as usize];
        let tag0 = self.words[d as usize].len() + 1;
        let mut e = Echelon::new();
        for (i, b) in basis.iter().enumerate() {
            let mut v = ideal.reduce(&self.vector(&Polynomial::monomial(b.clone()), d));
            v.insert(tag0 + i, Scalar::one());
            e.insert(&v)?;
        }
        let r = e.reduce(&ideal.reduce(&self.vector(f, d)));
        if r.keys().any(|&k| k < tag0) {
            return Ok(None);
        }
        Ok(Some((0..basis.len()).map(|i| -&r.get(&(tag0 + i)).cloned().unwrap_or_else(Scalar::zero)).collect()))
    }
}

fn to_vec(f: &Polynomial, idx: &HashMap<Monomial, usize>) -> SparseVec {
    f.terms().map(|(m, c)| (idx[m], c.clone())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub n: u32,
    pub dmax: u32,
    /// Condition (i), checked degree by degree up to `dmax` only.
    pub linear_basis: bool,
    pub basis_failure: Option<String>,
    /// Condition (ii).
    pub closure: bool,
    pub closure_failure: Option<String>,
    /// Condition (iii).
    pub windows: bool,
    pub window_failure: Option<String>,
    /// Rules uv ⇒ [uv] of the polygraph Ξ, when (i) holds in degree N.
    pub xi_rules: Vec<String>,
    pub xi_convergent: Option<bool>,
    pub notes: Vec<String>,
}

impl PbwReport {
    pub fn pass(&self) -> bool {
        self.linear_basis && self.closure && self.windows
    }
}

/// Check the PBW conditions for `candidate` up to degree `dmax`.
pub fn pbw_check(p: &Polygraph2, candidate: &[Monomial], dmax: u32) -> Result<PbwReport> {
    let n = p
        .homogeneous_degree()
        .ok_or_else(|| Error::Invalid("PBW check needs an N-homogeneous presentation".into()))?;
    let q = &p.quiver;
    for m in candidate {
        q.monomial(&m.word)?;
    }
    let model = QuotientModel::build(p, dmax)?;
    let cand: HashSet<&Monomial> = candidate.iter().collect();
    let mut rep = PbwReport {
        n,
        dmax,
        linear_basis: true,
        basis_failure: None,
        closure: true,
        closure_failure: None,
        windows: true,
        window_failure: None,
        xi_rules: Vec::new(),
        xi_convergent: None,
        notes: vec![format!("condition (i) verified only for degrees <= {dmax}")],
    };

    for d in 0..=dmax {
        let cd: Vec<Monomial> = candidate.iter().filter(|m| q.degree(m) == d).cloned().collect();
        let dim = model.quotient_dim(d);
        let indep = model.independent(&cd, d)?;
        if !indep || cd.len() != dim {
            rep.linear_basis = false;
            rep.basis_failure = Some(format!(
                "degree {d}: {} candidates, algebra dimension {dim}, {}",
                cd.len(),
                if indep { "independent" } else { "linearly dependent" }
            ));
            break;
        }
    }

    'outer: for u in candidate {
        for v in candidate {
            if u.tgt != v.src || q.degree(u) + q.degree(v) > dmax {
                continue;
            }
            let uv = u.mul(v);
            if !cand.contains(&uv) && p.is_irreducible(&uv) {
                rep.closure = false;
                rep.closure_failure = Some(format!("{} · {} is neither a candidate nor reducible", q.show(u), q.show(v)));
                break 'outer;
            }
        }
    }

    'win: for d in 0..=dmax {
        for w in q.words_of_degree(d) {
            let all_windows = w.len() < n as usize
                || (0..=w.len() - n as usize).all(|k| cand.contains(&q.slice(&w, k, k + n as usize)));
            if all_windows != cand.contains(&w) {
                rep.windows = false;
                rep.window_failure = Some(format!("word {} violates the {n}-window condition", q.show(&w)));
                break 'win;
            }
        }
    }

    if rep.linear_basis && n <= dmax {
        let basis_n: Vec<Monomial> = candidate.iter().filter(|m| q.degree(m) == n).cloned().collect();
        let mut rules = Vec::new();
        for w in q.words_of_degree(n) {
            if cand.contains(&w) {
                continue;
            }
            if let Some(cs) = model.decompose(&Polynomial::monomial(w.clone()), n, &basis_n)? {
                let tgt = Polynomial::from_terms(w.src, w.tgt, cs.into_iter().zip(basis_n.iter().cloned()));
                rules.push(Rule::new(format!("xi{}", rules.len() + 1), w, tgt));
            }
        }
        let xi = p.with_rules(rules)?;
        rep.xi_rules = (0..xi.rules().len()).map(|i| xi.show_rule(i)).collect();
        if let Some(ord) = &p.order {
            let cert = crate::completion::certify_termination(&xi, crate::completion::TerminationHint::Order(ord.clone()));
            if let crate::completion::TerminationReport::Certified(c) = cert {
                let mut xi = xi;
                xi.termination = Some(c);
                rep.xi_convergent = Some(crate::completion::check_confluence(&xi)?.convergent);
            } else {
                rep.notes.push("no termination certificate for the polygraph built from the candidate".into());
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, Quiver};
    use crate::completion::{certify_convergence, certify_termination, TerminationHint};

    fn single(src: &[u32], tgt: &[u32], prec: Vec<u32>) -> Polygraph2 {
        let q = Quiver::single(&["x", "y"]);
        let r = Rule::new("alpha", q.monomial(src).unwrap(), Polynomial::monomial(q.monomial(tgt).unwrap()));
        let ord = MonomialOrder::deglex(&q, prec).unwrap();
        let mut p = Polygraph2::new(q, vec![r]).unwrap().with_order(ord.clone());
        p.termination = certify_termination(&p, TerminationHint::Order(ord)).certificate();
        p
    }

    #[test]
    fn xy_to_xx_has_d_plus_one_basis_elements() {
        let (p, rep) = certify_convergence(&single(&[0, 1], &[0, 0], vec![0, 1])).unwrap();
        assert!(rep.convergent);
        let b = standard_basis(&p, 8).unwrap();
        for d in 0..=8 {
            assert_eq!(b.by_degree[d].len(), d + 1);
            assert!(b.by_degree[d].iter().all(|m| !m.contains_factor(&[0, 1])));
        }
        let model = QuotientModel::build(&p, 5).unwrap();
        for d in 0..=5 {
            assert_eq!(model.quotient_dim(d), d as usize + 1);
        }
    }

    #[test]
    fn standard_basis_requires_certificate() {
        assert!(standard_basis(&single(&[0, 1], &[0, 0], vec![0, 1]), 3).is_err());
    }

    #[test]
    fn pbw_of_standard_basis_passes() {
        let (p, _) = certify_convergence(&single(&[0, 1], &[0, 0], vec![0, 1])).unwrap();
        let cand: Vec<Monomial> = standard_basis(&p, 4).unwrap().by_degree.concat();
        let rep = pbw_check(&p, &cand, 4).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.xi_convergent, Some(true));
    }

    #[test]
    fn pbw_of_reversed_orientation_fails_in_degree_three() {
        // x² ⇒ xy under deglex with y < x.
        let p = single(&[0, 0], &[0, 1], vec![1, 0]);
        let cand: Vec<Monomial> = irreducible_monomials(&p, 4).by_degree.concat();
        let rep = pbw_check(&p, &cand, 4).unwrap();
        assert!(!rep.linear_basis);
        assert!(rep.basis_failure.as_deref().unwrap().starts_with("degree 3"), "{:?}", rep.basis_failure);
    }

    #[test]
    fn missing_generator_fails_in_degree_one() {
        let (p, _) = certify_convergence(&single(&[0, 1], &[0, 0], vec![0, 1])).unwrap();
        let cand: Vec<Monomial> =
            standard_basis(&p, 3).unwrap().by_degree.concat().into_iter().filter(|m| m.word != vec![1]).collect();
        let rep = pbw_check(&p, &cand, 3).unwrap();
        assert!(rep.basis_failure.as_deref().unwrap().starts_with("degree 1"));
    }

    #[test]
    fn monomialize_keeps_sources() {
        let p = single(&[0, 1], &[0, 0], vec![0, 1]);
        let m = monomialize(&p).unwrap();
        assert!(m.rules()[0].tgt.is_zero());
        assert_eq!(irreducible_monomials(&m, 5), irreducible_monomials(&p, 5));
    }
}
