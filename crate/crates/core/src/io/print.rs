//! Canonical `.lp` rendering; `parse(print(p))` gives back `p`.

use crate::algebra::FieldSpec;
use crate::completion::CertificateKind;
use crate::rewrite::Polygraph2;

/// Render a system, with its certificates when present.
pub fn print(p: &Polygraph2) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    match &p.field {
        FieldSpec::Rational => out.push_str("field Q\n"),
        FieldSpec::Prime(n) => out.push_str(&format!("field GF({n})\n")),
    }
    if let Some(ctx) = &p.param {
        out.push_str(&format!("param {}", ctx.name));
        if !ctx.nonvanishing.is_empty() {
            let vs: Vec<String> = ctx.nonvanishing.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(" != {}", vs.join(" ")));
        }
        out.push('\n');
    }
    let single = q.objects.len() == 1 && q.objects[0] == "*";
    if !single {
        out.push_str(&format!("objects {}\n", q.objects.join(" ")));
    }
    let gens: Vec<String> = q
        .generators
        .iter()
        .map(|g| {
            let mut s = g.name.clone();
            if !single {
                s.push_str(&format!(":{}->{}", q.objects[g.src as usize], q.objects[g.tgt as usize]));
            }
            if g.degree != 1 {
                s.push_str(&format!("@{}", g.degree));
            }
            s
        })
        .collect();
    out.push_str(&format!("generators {}\n", gens.join(" ")));
    // An order or measure found by the termination search is written out when
    // none was declared, so that the certificate can be checked on load.
    let cert_order = p.termination.as_ref().and_then(|c| c.order());
    let order = p.order.as_ref().or(cert_order);
    if let Some(o) = order {
        out.push_str(&format!("order {}\n", o.describe(q)));
    }
    let cert_measure = p.termination.as_ref().and_then(|c| match &c.kind {
        CertificateKind::PatternMeasure { measure, .. } => Some(measure),
        _ => None,
    });
    let measure = p.measure.as_ref().or(cert_measure);
    if let Some(m) = measure {
        out.push_str(&format!("measure {}\n", m.show(q)));
    }
    let checkable = (cert_order.is_none() || cert_order == order) && (cert_measure.is_none() || cert_measure == measure);
    if let Some(c) = p.termination.as_ref().filter(|_| checkable) {
        match &c.kind {
            CertificateKind::PatternMeasure { context_bound, .. } => {
                out.push_str(&format!("certificate pattern-measure {context_bound}\n"))
            }
            _ => out.push_str(&format!("certificate {}\n", c.kind_name())),
        }
        if p.convergent {
            out.push_str("convergent\n");
        }
    }
    for i in 0..p.rules().len() {
        out.push_str(&format!("rule {}\n", p.show_rule(i)));
    }
    out
}
