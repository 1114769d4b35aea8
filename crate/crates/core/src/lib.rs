//! Linear rewriting for presentations of associative algebras and algebroids.
//!
//! The crate is organised bottom-up: [`algebra`] holds exact scalars,
//! quivers, monomials, polynomials and monomial orders; [`rewrite`] holds
//! rules, rewriting steps and normal forms; [`completion`] certifies
//! termination and confluence and completes presentations; [`resolution`]
//! enumerates overlap chains and builds low-dimensional boundary data;
//! [`homology`] assembles the reduced complex, Tor tables and Koszul
//! verdicts; [`io`] parses and prints presentation files and reports;
//! [`random`] draws small systems for randomized consistency checks.

pub mod algebra;
pub mod completion;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod random;
pub mod resolution;
pub mod rewrite;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result, ScalarError};
