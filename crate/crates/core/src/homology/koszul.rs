//! Koszulity verdicts for N-homogeneous presentations.

use std::fmt;

use serde::Serialize;

use crate::completion::{as_convergent, complete, enumerate_critical_branchings, CompletionBounds};
use crate::error::{Error, Result};
use crate::resolution::{ell, saturate};
use crate::rewrite::Polygraph2;

use super::complex::{build_complex, ReducedComplex};
use super::tor::{tor_table, TorEntry, TorTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulReason {
    NoCriticalBranchings,
    QuadraticConvergent,
    ConcentratedAfterCollapse,
}

impl fmt::Display for KoszulReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KoszulReason::NoCriticalBranchings => "no-critical-branchings",
            KoszulReason::QuadraticConvergent => "quadratic-convergent",
            KoszulReason::ConcentratedAfterCollapse => "concentrated-after-collapse",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum KoszulVerdict {
    KoszulCertified { reason: KoszulReason, scope: String },
    NotKoszul { witness: (usize, u32), tor: TorEntry, via: String },
    KoszulUpToBound { kmax: usize, dmax: u32 },
    NotApplicable { reason: String },
}

impl fmt::Display for KoszulVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KoszulVerdict::KoszulCertified { reason, scope } => write!(f, "Koszul-certified ({reason}; {scope})"),
            KoszulVerdict::NotKoszul { witness: (k, i), tor, .. } => {
                if tor.lo == tor.hi {
                    write!(f, "Not-Koszul (witness Tor_{k},({i}) = {})", tor.lo)
                } else {
                    write!(f, "Not-Koszul (witness Tor_{k},({i}) >= {})", tor.lo)
                }
            }
            KoszulVerdict::KoszulUpToBound { kmax, dmax } => write!(f, "Koszul-up-to-bound (kmax {kmax}, dmax {dmax})"),
            KoszulVerdict::NotApplicable { reason } => write!(f, "not applicable: {reason}"),
        }
    }
}

/// Status of the cell-counting non-Koszulity criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingCheck {
    pub k: usize,
    pub degree: u32,
    pub cells_k: usize,
    pub cells_k_plus_1: usize,
    /// Are the cells of dimensions 2..k−1 ℓ_N-concentrated?
    pub hypothesis_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub verdict: KoszulVerdict,
    pub n: Option<u32>,
    #[serde(skip)]
    pub system: Option<Polygraph2>,
    pub collapses: Vec<(String, String)>,
    /// Labels of cells of dimension ≥ 2 surviving the collapse, per dimension.
    pub surviving: Vec<(usize, Vec<String>)>,
    pub counting: Option<CountingCheck>,
    pub tor: Option<TorTable>,
    pub notes: Vec<String>,
}

fn counting_check(cx: &ReducedComplex, n: u32, kmax: usize) -> Option<CountingCheck> {
    let concentrated = |k: usize| (0..=cx.dmax).all(|d| d == ell(n, k) || cx.count(k, d) == 0);
    for k in 3..=kmax.min(cx.top_dim().saturating_sub(1)) {
        for d in ell(n, k) + 1..=cx.dmax {
            let (a, b) = (cx.count(k, d), cx.count(k + 1, d));
            if b < a {
                return Some(CountingCheck {
                    k,
                    degree: d,
                    cells_k: a,
                    cells_k_plus_1: b,
                    hypothesis_holds: (2..k).all(concentrated),
                });
            }
        }
    }
    None
}

/// Decision cascade: no critical branchings; quadratic convergent; ℓ_N
/// concentration after collapse saturation; a nonzero off-diagonal Tor entry;
/// otherwise Koszul up to the bounds.
///
/// N is read from the input rules, which are completed first when the input
/// is not already reduced and certified convergent.
pub fn koszul_verdict(p: &Polygraph2, kmax: usize, dmax: u32) -> Result<VerdictReport> {
    let mut rep = VerdictReport {
        verdict: KoszulVerdict::NotApplicable { reason: String::new() },
        n: p.homogeneous_degree(),
        system: None,
        collapses: Vec::new(),
        surviving: Vec::new(),
        counting: None,
        tor: None,
        notes: Vec::new(),
    };
    let Some(n) = rep.n else {
        rep.verdict = KoszulVerdict::NotApplicable { reason: "the rules are not homogeneous of a common degree".into() };
        return Ok(rep);
    };
    let sys = if p.convergent && p.is_reduced() {
        p.clone()
    } else if let Some(s) = as_convergent(p)? {
        s
    } else {
        let ord = p.order.as_ref().ok_or_else(|| Error::NotCertified("system is not convergent and has no order to complete with".into()))?;
        let res = complete(p, ord, CompletionBounds::default())?;
        if !res.certified {
            return Err(Error::NotCertified(res.note.unwrap_or_else(|| "completion did not converge".into())));
        }
        if !res.added.is_empty() {
            rep.notes.push(format!("completed with added rules {}", res.added.join(", ")));
        }
        res.system
    };
    rep.system = Some(sys.clone());

    if enumerate_critical_branchings(&sys).is_empty() {
        rep.verdict = KoszulVerdict::KoszulCertified { reason: KoszulReason::NoCriticalBranchings, scope: "full".into() };
        return Ok(rep);
    }
    if n == 2 && sys.rules().iter().all(|r| sys.quiver.degree(&r.src) == 2) {
        rep.verdict = KoszulVerdict::KoszulCertified { reason: KoszulReason::QuadraticConvergent, scope: "full".into() };
        return Ok(rep);
    }

    let crit_max = enumerate_critical_branchings(&sys).iter().map(|b| sys.quiver.degree(&b.word(&sys))).max().unwrap_or(0);
    let dint = dmax.max(crit_max);
    let kint = kmax.max(4);
    let mut cx = build_complex(&sys, kint, dint)?;
    cx.n = Some(n);
    let (collapsed, log) = saturate(&cx)?;
    rep.collapses = log;
    rep.surviving = (2..=collapsed.top_dim()).map(|k| (k, collapsed.alive_labels(k))).filter(|(_, v)| !v.is_empty()).collect();
    let low_concentrated = (2..=3).all(|k| {
        collapsed.alive_cells(k).into_iter().all(|j| collapsed.cells[k][j].degree == ell(n, k))
    });
    let table = tor_table(&cx, kmax.min(cx.top_dim()))?;
    let table = restrict(&table, dmax);
    rep.counting = counting_check(&cx, n, kmax);
    if let Some(c) = &rep.counting {
        if !c.hypothesis_holds {
            rep.notes.push(format!(
                "counting criterion: {} cells in dimension {} vs {} in dimension {} at degree {}, but lower dimensions are not concentrated",
                c.cells_k,
                c.k,
                c.cells_k_plus_1,
                c.k + 1,
                c.degree
            ));
        }
    }
    rep.tor = Some(table.clone());

    if low_concentrated {
        let scope = if collapsed.alive_cells(3).is_empty() {
            "full: no generating confluence survives the collapse".to_string()
        } else {
            format!("truncated: cells of dimension <= 3 and degree <= {dint}")
        };
        rep.verdict = KoszulVerdict::KoszulCertified { reason: KoszulReason::ConcentratedAfterCollapse, scope };
        return Ok(rep);
    }
    if let Some((w, e)) = table.entries.iter().find(|((k, i), e)| e.lo > 0 && *i != ell(n, *k)) {
        rep.verdict = KoszulVerdict::NotKoszul { witness: *w, tor: *e, via: "tor".into() };
        return Ok(rep);
    }
    if let Some(c) = rep.counting.as_ref().filter(|c| c.hypothesis_holds) {
        let e = TorEntry { lo: c.cells_k - c.cells_k_plus_1, hi: c.cells_k, provenance: super::tor::Provenance::Interval };
        rep.verdict = KoszulVerdict::NotKoszul { witness: (c.k, c.degree), tor: e, via: "counting".into() };
        return Ok(rep);
    }
    rep.verdict = KoszulVerdict::KoszulUpToBound { kmax, dmax };
    Ok(rep)
}

fn restrict(t: &TorTable, dmax: u32) -> TorTable {
    let mut out = t.clone();
    out.dmax = dmax.min(t.dmax);
    out.entries.retain(|(_, i), _| *i <= dmax);
    out.violations.retain(|(_, i)| *i <= dmax);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{convergent, system, PP, XY, XYZ};

    #[test]
    fn xyz_has_no_criticals() {
        let r = koszul_verdict(&convergent(XYZ), 3, 6).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::KoszulCertified { reason: KoszulReason::NoCriticalBranchings, scope: "full".into() });
    }

    #[test]
    fn pp_concentrates_after_collapse() {
        let r = koszul_verdict(&system(PP), 4, 6).unwrap();
        assert!(matches!(r.verdict, KoszulVerdict::KoszulCertified { reason: KoszulReason::ConcentratedAfterCollapse, .. }));
        let gammas: Vec<&str> = r.collapses.iter().map(|c| c.0.as_str()).collect();
        assert_eq!(gammas, vec!["y z x^2[alpha@0,delta@1]", "z y x^2[beta@0,gamma@1]", "gamma", "delta"]);
        assert_eq!(r.surviving[0], (2, vec!["alpha".to_string(), "beta".to_string()]));
        assert!(r.surviving.iter().all(|(k, _)| *k != 3));
        assert_eq!(r.tor.unwrap().value(2, 2), 2);
    }

    #[test]
    fn xy_is_not_koszul() {
        let r = koszul_verdict(&system(XY), 4, 6).unwrap();
        match &r.verdict {
            KoszulVerdict::NotKoszul { witness, tor, via } => {
                assert_eq!(*witness, (3, 4));
                assert!(tor.lo >= 1);
                assert_eq!(via, "tor");
            }
            v => panic!("unexpected verdict {v}"),
        }
        let c = r.counting.unwrap();
        assert_eq!((c.k, c.degree, c.cells_k, c.cells_k_plus_1, c.hypothesis_holds), (3, 4, 3, 2, false));
    }

    #[test]
    fn quadratic_convergent_shortcut() {
        let text = "field Q\ngenerators x y z\norder deglex x < y < z\nrule a : y x -> x y\nrule b : z x -> x z\nrule c : z y -> y z\n";
        let r = koszul_verdict(&convergent(text), 4, 5).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::KoszulCertified { reason: KoszulReason::QuadraticConvergent, scope: "full".into() });
    }

    #[test]
    fn inhomogeneous_is_not_applicable() {
        let text = "field Q\ngenerators x y\norder deglex x < y\nrule a : y x -> x\n";
        let r = koszul_verdict(&system(text), 3, 4).unwrap();
        assert!(matches!(r.verdict, KoszulVerdict::NotApplicable { .. }));
    }
}
