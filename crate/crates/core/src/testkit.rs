//! Small systems shared by unit tests.

use crate::completion::{certify_convergence, certify_termination, complete, CompletionBounds, TerminationHint};
use crate::io::parse;
use crate::rewrite::Polygraph2;

pub const XYZ: &str = "field Q\ngenerators x y z\norder deglex x < y < z\nmeasure 3 (x y z) + 1 (y)\nrule gamma : x y z -> x^3 + y^3 + z^3\n";
pub const PP: &str = "field Q\nparam a = 2\ngenerators x y z\norder deglex x < y < z\nrule alpha : y z -> -x^2\nrule beta : z y -> (-1/a) x^2\n";
pub const XY: &str = "field Q\ngenerators x y\norder deglex x < y\nrule alpha : x y -> x^2\nrule beta : y^2 -> x^2\n";

pub fn system(text: &str) -> Polygraph2 {
    parse(text).expect("test system parses").system
}

/// Completed (or certified, when already convergent) version of `text`.
pub fn convergent(text: &str) -> Polygraph2 {
    let mut p = system(text);
    p.termination = certify_termination(&p, TerminationHint::Auto).certificate();
    let (q, rep) = certify_convergence(&p).expect("certificate found");
    if rep.convergent {
        return q;
    }
    let ord = p.order.clone().expect("order declared");
    let res = complete(&p, &ord, CompletionBounds::default()).expect("completion runs");
    assert!(res.certified);
    res.system
}
