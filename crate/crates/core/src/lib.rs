//! Exact Hochschild (co)homology of group algebras, with the cap/cup/bracket
//! calculus, comparison maps to group (co)homology, small resolutions, and the
//! Batalin–Vilkovisky structure on `HH*(k[ℤᵈ])`.

pub mod algebra;
pub mod bv;
pub mod comparison;
pub mod duality;
pub mod error;
pub mod group;
pub mod hochschild;
pub mod linalg;
pub mod ops;
pub mod report;
pub mod resolution;
pub mod scalar;

pub use error::{Error, ParseError, Result};
pub use scalar::{Ring, Scalar};
