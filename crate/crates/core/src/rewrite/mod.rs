//! Rules, linear 2-polygraphs, rewriting steps, normal forms and bases.

mod automaton;
mod basis;
mod normal;
mod step;
mod system;

pub use automaton::Matcher;
pub use basis::{irreducible_monomials, monomialize, pbw_check, standard_basis, PbwReport, QuotientModel, StandardBasis};
pub use normal::{ideal_member, normal_form, Normalizer, StepKey, Strategy, DEFAULT_STEP_BUDGET};
pub use step::{find_redexes, rightmost_step, RewriteStep, Trace};
pub use system::{Polygraph2, Rule};
