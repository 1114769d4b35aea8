//! Generating confluences: the 3-cells filling critical branchings.

use crate::algebra::{LinComb, Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::rewrite::{normal_form, Normalizer, Polygraph2, StepKey, Strategy, Trace, DEFAULT_STEP_BUDGET};

use super::chains::{ChainCell, ChainKey};

/// The 3-cell ω of a critical branching with both boundary traces.
///
/// The source is the rightmost normalisation ρ of the overlap word; the
/// target applies the left-edge rule φ first and then normalises
/// `t(φ)·m̂` with ρ.
#[derive(Clone, Debug)]
pub struct Confluence3Cell {
    pub cell: ChainCell,
    pub source: Trace,
    pub target: Trace,
}

/// The word of a chain given by its redex list.
pub fn chain_word(p: &Polygraph2, key: &[(usize, usize)]) -> Monomial {
    let mut word: Vec<u32> = Vec::new();
    for &(r, s) in key {
        word.truncate(s);
        word.extend_from_slice(&p.rule(r).src.word);
    }
    p.quiver.monomial(&word).expect("chain words are composable")
}

fn check_chain3(p: &Polygraph2, c: &ChainCell) -> Result<()> {
    if c.dim != 3 || c.redexes.len() != 2 || c.redexes[0].1 != 0 {
        return Err(Error::Invalid(format!("{} is not a critical branching", c.label(p))));
    }
    Ok(())
}

/// `ρ_u` as a formal sum of whiskered rules (the source of ω).
pub fn source_steps(n: &mut Normalizer<'_>, key: &ChainKey) -> Result<LinComb<StepKey>> {
    let u = chain_word(n.system(), key);
    Ok((*n.rho_monomial(&u)?).clone())
}

/// `φ·m̂ + ρ(t(φ)·m̂)` as a formal sum of whiskered rules (the target of ω).
pub fn target_steps(n: &mut Normalizer<'_>, key: &ChainKey) -> Result<LinComb<StepKey>> {
    let p = n.system();
    let u = chain_word(p, key);
    let phi = key[0].0;
    let src_len = p.rule(phi).src.len();
    let m_hat = p.quiver.slice(&u, src_len, u.len());
    let unit = p.quiver.slice(&u, 0, 0);
    let mut acc = LinComb::single((unit, phi, m_hat.clone()), Scalar::one());
    let t = p.rule(phi).tgt.whisker(&Monomial::identity(u.src), &m_hat);
    acc.add_scaled(&Scalar::one(), &n.rho(&t)?);
    Ok(acc)
}

/// Build ω_b with explicit step-by-step traces.
pub fn generating_confluence(p: &Polygraph2, c: &ChainCell) -> Result<Confluence3Cell> {
    check_chain3(p, c)?;
    let u = Polynomial::monomial(c.word.clone());
    let (_, source) = normal_form(&u, p, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?;
    let phi = c.redexes[0].0;
    let m_hat = p.quiver.slice(&c.word, p.rule(phi).src.len(), c.word.len());
    let first = crate::rewrite::RewriteStep { coef: Scalar::one(), left: Monomial::identity(c.word.src), rule: phi, right: m_hat };
    let mut target = Trace::empty(u);
    target.push(p, first)?;
    let (_, rest) = normal_form(&target.end, p, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?;
    for s in rest.steps {
        target.push(p, s)?;
    }
    Ok(Confluence3Cell { cell: c.clone(), source, target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;
    use crate::rewrite::Rule;

    #[test]
    fn xy_branching_on_x_y_y_ends_at_x_cubed() {
        let q = Quiver::single(&["x", "y"]);
        let m = |w: &[u32]| q.monomial(w).unwrap();
        let p = Polygraph2::new(
            q.clone(),
            vec![
                Rule::new("alpha", m(&[0, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("beta", m(&[1, 1]), Polynomial::monomial(m(&[0, 0]))),
                Rule::new("gamma", m(&[1, 0, 0]), Polynomial::monomial(m(&[0, 0, 0]))),
            ],
        )
        .unwrap();
        let c = ChainCell { dim: 3, word: m(&[0, 1, 1]), redexes: vec![(0, 0), (1, 1)], degree: 3 };
        assert_eq!(chain_word(&p, &c.redexes), c.word);
        let w = generating_confluence(&p, &c).unwrap();
        let x3 = Polynomial::monomial(m(&[0, 0, 0]));
        assert_eq!(w.source.end, x3);
        assert_eq!(w.target.end, x3);
        assert!(w.source.replay(&p).unwrap() && w.target.replay(&p).unwrap());
        assert_eq!(w.source.steps[0].left.word, vec![0]);
    }
}
