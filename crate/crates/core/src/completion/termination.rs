//! Termination certificates: order compatibility and bounded pattern measures.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Gen, Monomial, MonomialOrder, Quiver};
use crate::rewrite::Polygraph2;

/// Default context length for the pattern-measure check.
pub const DEFAULT_CONTEXT_BOUND: usize = 3;

/// μ(w) = Σ weight · #occurrences(pattern in w).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMeasure {
    pub patterns: Vec<(Vec<Gen>, u64)>,
}

impl PatternMeasure {
    pub fn eval(&self, m: &Monomial) -> u64 {
        self.patterns.iter().map(|(p, w)| w * m.occurrences(p).len() as u64).sum()
    }

    pub fn max_pattern_len(&self) -> usize {
        self.patterns.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }

    pub fn show(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .patterns
            .iter()
            .map(|(p, w)| {
                let names: Vec<&str> = p.iter().map(|&g| q.name(g)).collect();
                format!("{} ({})", w, names.join(" "))
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateKind {
    OrderCompatible { order: MonomialOrder },
    PatternMeasure { measure: PatternMeasure, context_bound: usize },
    UserAsserted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TerminationCertificate {
    pub kind: CertificateKind,
    pub notes: Vec<String>,
}

impl TerminationCertificate {
    pub fn order(&self) -> Option<&MonomialOrder> {
        match &self.kind {
            CertificateKind::OrderCompatible { order } => Some(order),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CertificateKind::OrderCompatible { .. } => "order-compatible",
            CertificateKind::PatternMeasure { .. } => "pattern-measure",
            CertificateKind::UserAsserted => "user-asserted",
        }
    }
}

/// What to try when certifying termination.
#[derive(Clone, Debug)]
pub enum TerminationHint {
    Order(MonomialOrder),
    Measure(PatternMeasure, usize),
    UserAsserted,
    /// The system's own order, then its measure, then a small search.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TerminationReport {
    Certified(TerminationCertificate),
    Failed { rule: Option<String>, reason: String },
}

impl TerminationReport {
    pub fn certificate(self) -> Option<TerminationCertificate> {
        match self {
            TerminationReport::Certified(c) => Some(c),
            TerminationReport::Failed { .. } => None,
        }
    }
}

impl fmt::Display for TerminationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationReport::Certified(c) => write!(f, "terminating ({})", c.kind_name()),
            TerminationReport::Failed { rule: Some(r), reason } => write!(f, "not certified: rule {r}: {reason}"),
            TerminationReport::Failed { rule: None, reason } => write!(f, "not certified: {reason}"),
        }
    }
}

/// First rule with a target monomial not strictly below its source.
fn order_violation(p: &Polygraph2, ord: &MonomialOrder) -> Option<usize> {
    p.rules()
        .iter()
        .position(|r| r.tgt.monomials().any(|m| ord.cmp(m, &r.src) != std::cmp::Ordering::Less))
}

/// Words of length ≤ `len` ending at object `o` (or starting there when `ending` is false).
fn contexts(q: &Quiver, len: usize, o: u32, ending: bool) -> Vec<Monomial> {
    let mut out = vec![Monomial::identity(o)];
    let mut frontier = vec![Monomial::identity(o)];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..q.len() as Gen {
                let gen = &q.generators[g as usize];
                let grown = if ending {
                    if gen.tgt != w.src {
                        continue;
                    }
                    let mut word = vec![g];
                    word.extend_from_slice(&w.word);
                    Monomial { word, src: gen.src, tgt: w.tgt }
                } else {
                    if gen.src != w.tgt {
                        continue;
                    }
                    let mut word = w.word.clone();
                    word.push(g);
                    Monomial { word, src: w.src, tgt: gen.tgt }
                };
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// First rule failing μ(u·src·v) > μ(u·t·v) for some context and target monomial t.
fn measure_violation(p: &Polygraph2, mu: &PatternMeasure, bound: usize) -> Option<usize> {
    let q = &p.quiver;
    for (i, r) in p.rules().iter().enumerate() {
        let lefts = contexts(q, bound, r.src.src, true);
        let rights = contexts(q, bound, r.src.tgt, false);
        for u in &lefts {
            for v in &rights {
                let big = mu.eval(&r.src.whisker(u, v));
                if r.tgt.monomials().any(|t| mu.eval(&t.whisker(u, v)) >= big) {
                    return Some(i);
                }
            }
        }
    }
    None
}

fn order_cert(p: &Polygraph2, ord: &MonomialOrder) -> TerminationReport {
    match order_violation(p, ord) {
        None => TerminationReport::Certified(TerminationCertificate {
            kind: CertificateKind::OrderCompatible { order: ord.clone() },
            notes: vec![format!("every target monomial is below its source for {}", ord.describe(&p.quiver))],
        }),
        Some(i) => TerminationReport::Failed {
            rule: Some(p.rule(i).name.clone()),
            reason: format!("a target monomial is not below the source for {}", ord.describe(&p.quiver)),
        },
    }
}

fn measure_cert(p: &Polygraph2, mu: &PatternMeasure, bound: usize) -> TerminationReport {
    match measure_violation(p, mu, bound) {
        None => {
            let mut notes = vec![format!("measure {} decreases in every context of length <= {bound}", mu.show(&p.quiver))];
            if bound + 1 >= mu.max_pattern_len() {
                notes.push("context bound covers every pattern crossing the redex boundary, so the check is complete".into());
            } else {
                notes.push("context bound shorter than the longest pattern minus one: the check is bounded only".into());
            }
            TerminationReport::Certified(TerminationCertificate {
                kind: CertificateKind::PatternMeasure { measure: mu.clone(), context_bound: bound },
                notes,
            })
        }
        Some(i) => TerminationReport::Failed {
            rule: Some(p.rule(i).name.clone()),
            reason: format!("measure {} does not decrease in some context", mu.show(&p.quiver)),
        },
    }
}

/// Try deglex under every generator precedence, then small pattern measures
/// built from rule sources and single letters.
fn search(p: &Polygraph2) -> Option<TerminationCertificate> {
    let q = &p.quiver;
    let n = q.len();
    if n <= 6 {
        let mut perm: Vec<Gen> = (0..n as Gen).collect();
        loop {
            if let Ok(ord) = MonomialOrder::deglex(q, perm.clone()) {
                if let Some(c) = order_cert(p, &ord).certificate() {
                    return Some(c);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let mut pats: Vec<Vec<Gen>> = p.rules().iter().map(|r| r.src.word.clone()).filter(|w| w.len() > 1).collect();
    pats.sort();
    pats.dedup();
    pats.extend((0..n as Gen).map(|g| vec![g]));
    const MAXW: u64 = 4;
    if (MAXW + 1).checked_pow(pats.len() as u32).is_none_or(|c| c > 20_000) {
        return None;
    }
    let bound = pats.iter().map(|p| p.len()).max().unwrap_or(1).saturating_sub(1).max(DEFAULT_CONTEXT_BOUND);
    let mut ws = vec![0u64; pats.len()];
    loop {
        let mut i = 0;
        while i < ws.len() && ws[i] == MAXW {
            ws[i] = 0;
            i += 1;
        }
        if i == ws.len() {
            return None;
        }
        ws[i] += 1;
        let mu = PatternMeasure {
            patterns: pats.iter().cloned().zip(ws.iter().copied()).filter(|(_, w)| *w > 0).collect(),
        };
        if let Some(c) = measure_cert(p, &mu, bound).certificate() {
            return Some(c);
        }
    }
}

fn next_permutation(v: &mut [Gen]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Certify termination of `p`; failures are reported, not raised.
pub fn certify_termination(p: &Polygraph2, hint: TerminationHint) -> TerminationReport {
    match hint {
        TerminationHint::Order(ord) => order_cert(p, &ord),
        TerminationHint::Measure(mu, bound) => measure_cert(p, &mu, bound),
        TerminationHint::UserAsserted => TerminationReport::Certified(TerminationCertificate {
            kind: CertificateKind::UserAsserted,
            notes: vec!["termination asserted by the user, not checked".into()],
        }),
        TerminationHint::Auto => {
            let mut last = TerminationReport::Failed { rule: None, reason: "no order or measure certifies termination".into() };
            if let Some(ord) = &p.order {
                let r = order_cert(p, ord);
                if matches!(r, TerminationReport::Certified(_)) {
                    return r;
                }
                last = r;
            }
            if let Some(mu) = &p.measure {
                let bound = DEFAULT_CONTEXT_BOUND.max(mu.max_pattern_len().saturating_sub(1));
                let r = measure_cert(p, mu, bound);
                if matches!(r, TerminationReport::Certified(_)) {
                    return r;
                }
                last = r;
            }
            match search(p) {
                Some(c) => TerminationReport::Certified(c),
                None => last,
            }
        }
    }
}

/// Hint that re-derives an existing certificate of the same kind.
pub fn hint_from(cert: &TerminationCertificate) -> TerminationHint {
    match &cert.kind {
        CertificateKind::OrderCompatible { order } => TerminationHint::Order(order.clone()),
        CertificateKind::PatternMeasure { measure, context_bound } => TerminationHint::Measure(measure.clone(), *context_bound),
        CertificateKind::UserAsserted => TerminationHint::UserAsserted,
    }
}
