//! Termination certificates, branchings, confluence and completion.

mod branching;
mod complete;
mod confluence;
mod termination;

pub use branching::{classify, enumerate_critical_branchings, kind_name, local_branchings, s_polynomial, Branching, BranchingKind, SPolynomial};
pub use complete::{as_convergent, complete, groebner_view, interreduce, orient, CompletionBounds, CompletionResult};
pub use confluence::{certify_convergence, check_confluence, local_joinability, ConfluenceReport, CriticalEntry};
pub use termination::{
    certify_termination, hint_from, CertificateKind, PatternMeasure, TerminationCertificate, TerminationHint, TerminationReport,
    DEFAULT_CONTEXT_BOUND,
};
