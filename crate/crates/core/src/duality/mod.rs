//! Poincaré duality for `k[ℤᵈ]` and the induced BV operator on `HH*`.

pub mod bv;
pub mod calabi_yau;
pub mod delta;
pub mod fundamental;
pub mod laurent;

pub use fundamental::{fundamental_class, DualityMap, PdGroupData};
pub use bv::{check_bv_on_hh, BvOptions, BvReport};
pub use calabi_yau::{calabi_yau_check, CyReport};
pub use delta::{HhElement, HhModel, Mono};
