//! Elementary collapses of the truncated reduced complex.

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::homology::{ReducedComplex, BOUNDARY_DIM};
use crate::linalg::SparseVec;

fn axpy(dst: &mut SparseVec, c: &Scalar, src: &SparseVec, skip: usize) {
    for (k, v) in src {
        if *k == skip {
            continue;
        }
        let s = dst.get(k).cloned().unwrap_or_else(Scalar::zero) + c * v;
        if s.is_zero() {
            dst.remove(k);
        } else {
            dst.insert(*k, s);
        }
    }
}

/// Remove the k-cell `gamma` together with the (k+1)-cell `a`.
///
/// `gamma` must occur in the source of `a` with an invertible coefficient and
/// not at all in its target. Every other (k+1)-cell has its `gamma`
/// component eliminated against the boundary of `a`, and `a` is dropped from
/// the boundaries of (k+2)-cells; homology per degree is unchanged.
pub fn collapse_pair(cx: &ReducedComplex, k: usize, gamma: usize, a: usize) -> Result<ReducedComplex> {
    if k == 0 || k >= BOUNDARY_DIM {
        return Err(Error::Collapse(format!("no boundary data to collapse a {k}-cell")));
    }
    if !cx.alive[k][gamma] || !cx.alive[k + 1][a] {
        return Err(Error::Collapse("cell already removed".into()));
    }
    let (gl, al) = (&cx.labels[k][gamma], &cx.labels[k + 1][a]);
    if cx.tgt[k + 1][a].contains_key(&gamma) {
        return Err(Error::Collapse(format!("{gl} occurs in the target of {al}")));
    }
    let c = cx.src[k + 1][a].get(&gamma).ok_or_else(|| Error::Collapse(format!("{gl} does not occur in the source of {al}")))?;
    let cinv = c.inv().map_err(|e| Error::Collapse(format!("coefficient of {gl} in {al}: {e}")))?;
    let (sa, ta) = (cx.src[k + 1][a].clone(), cx.tgt[k + 1][a].clone());
    let mut out = cx.clone();
    for j in 0..out.cells[k + 1].len() {
        if j == a || !out.alive[k + 1][j] {
            continue;
        }
        // γ = c⁻¹ (t(A) − (s(A) − cγ)) substituted in source and target.
        for side in [&mut out.src[k + 1][j], &mut out.tgt[k + 1][j]] {
            if let Some(s) = side.remove(&gamma) {
                let f = &s * &cinv;
                axpy(side, &f, &ta, usize::MAX);
                axpy(side, &-&f, &sa, gamma);
            }
        }
    }
    if k + 2 <= BOUNDARY_DIM {
        for j in 0..out.cells[k + 2].len() {
            out.src[k + 2][j].remove(&a);
            out.tgt[k + 2][j].remove(&a);
        }
    }
    out.alive[k][gamma] = false;
    out.alive[k + 1][a] = false;
    Ok(out)
}

/// Collapse greedily from dimension 3 down to 1: for each (k+1)-cell in
/// canonical order, the first source entry satisfying the hypothesis.
pub fn saturate(cx: &ReducedComplex) -> Result<(ReducedComplex, Vec<(String, String)>)> {
    let mut cur = cx.clone();
    let mut log = Vec::new();
    for k in (1..BOUNDARY_DIM).rev() {
        loop {
            let mut found = None;
            'search: for a in cur.alive_cells(k + 1) {
                for (&g, c) in &cur.src[k + 1][a] {
                    if cur.alive[k][g] && !cur.tgt[k + 1][a].contains_key(&g) && c.inv().is_ok() {
                        found = Some((g, a));
                        break 'search;
                    }
                }
            }
            let Some((g, a)) = found else { break };
            log.push((cur.labels[k][g].clone(), cur.labels[k + 1][a].clone()));
            cur = collapse_pair(&cur, k, g, a)?;
        }
    }
    Ok((cur, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{build_complex, tor_table};
    use crate::testkit::{convergent, PP, XY};

    fn idx(cx: &ReducedComplex, k: usize, label: &str) -> usize {
        cx.labels[k].iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn pp_sequence_leaves_alpha_beta() {
        let cx = build_complex(&convergent(PP), 4, 5).unwrap();
        let (out, log) = saturate(&cx).unwrap();
        let pairs: Vec<(&str, &str)> = log.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        assert_eq!(
            pairs,
            vec![
                ("y z x^2[alpha@0,delta@1]", "y z y z[alpha@0,beta@1,alpha@2]"),
                ("z y x^2[beta@0,gamma@1]", "z y z y[beta@0,alpha@1,beta@2]"),
                ("gamma", "y z y[alpha@0,beta@1]"),
                ("delta", "z y z[beta@0,alpha@1]"),
            ]
        );
        assert_eq!(out.alive_labels(2), vec!["alpha", "beta"]);
        assert!(out.alive_labels(3).is_empty());
    }

    #[test]
    fn collapse_preserves_tor() {
        for text in [PP, XY] {
            let cx = build_complex(&convergent(text), 5, 6).unwrap();
            let (out, _) = saturate(&cx).unwrap();
            let (a, b) = (tor_table(&cx, 3).unwrap(), tor_table(&out, 3).unwrap());
            assert_eq!(a.entries, b.entries);
            for k in 1..BOUNDARY_DIM {
                assert!(out.square_zero(k));
            }
        }
    }

    #[test]
    fn hypothesis_is_enforced() {
        let cx = build_complex(&convergent(PP), 4, 5).unwrap();
        let a1 = idx(&cx, 3, "y z y[alpha@0,beta@1]");
        let alpha = idx(&cx, 2, "alpha");
        assert!(matches!(collapse_pair(&cx, 2, alpha, a1), Err(Error::Collapse(_))));
        let gamma = idx(&cx, 2, "gamma");
        let once = collapse_pair(&cx, 2, gamma, a1).unwrap();
        assert!(collapse_pair(&once, 2, gamma, a1).is_err());
        assert!(collapse_pair(&cx, 4, 0, 0).is_err());
    }
}
