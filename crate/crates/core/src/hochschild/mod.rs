//! Bar words, Hochschild chains and cochains, Connes' operator and truncated homology.

pub mod chain;
pub mod cochain;
pub mod complex;
pub mod sanity;

pub use chain::{chain_differential, connes_b, connes_b_signed, normalize, normalized_differential, BarWord, Chain};
pub use cochain::{cochain_differential, Backend, Cochain};
pub use complex::{truncated_cohomology, truncated_homology, words, FiniteComplexes, Flavor};
