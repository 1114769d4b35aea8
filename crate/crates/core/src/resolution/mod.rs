//! Overlap chains, generating confluences, 4-cell boundaries and collapses.

mod chains;
mod collapse;
mod confluence3;
mod homotopy;

pub use chains::{cell_degrees, ell, enumerate_chains, enumerate_chains_unchecked, extensions, CellDegrees, ChainCell, ChainKey};
pub use collapse::{collapse_pair, saturate};
pub use confluence3::{chain_word, generating_confluence, source_steps, target_steps, Confluence3Cell};
pub use homotopy::{boundary4, Boundary4Data, CellInst, Homotopy};
