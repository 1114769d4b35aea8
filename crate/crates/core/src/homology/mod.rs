//! The reduced complex, Tor tables, Koszul verdicts and module-level exactness checks.

mod complex;
mod koszul;
mod module_complex;
mod tor;

pub use complex::{build_complex, rank_table, trace_bracket, ReducedComplex, BOUNDARY_DIM};
pub use koszul::{koszul_verdict, CountingCheck, KoszulReason, KoszulVerdict, VerdictReport};
pub use module_complex::{module_exactness, ModuleComplex, ModuleExactness};
pub use tor::{tor_table, Provenance, TorEntry, TorTable};
