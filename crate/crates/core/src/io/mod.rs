//! Presentation files and JSON reports.

mod parse;
mod print;
mod report;

pub use parse::{parse, parse_monomial, parse_polynomial, Presentation};
pub use print::print;
pub use report::{Report, SystemSummary, SCHEMA, SCHEMA_VERSION};
