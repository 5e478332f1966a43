//! Cap, cup, Gerstenhaber bracket, Lie derivative and the coalgebra cap.

pub mod calculus;
pub mod coalgebra;
pub mod products;

pub use calculus::{check_calculus, ClassData};
pub use coalgebra::{bar_cap, FiniteCoalgebra};
pub use products::{
    cap, circle, cup, element_product, gerstenhaber_bracket, is_cocycle, is_cycle, left_action, lie_derivative,
    lie_derivative_unchecked,
};
