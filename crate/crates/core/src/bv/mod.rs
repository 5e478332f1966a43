//! Finite-dimensional Gerstenhaber and BV algebras: axiom checks, the two characterizations of
//! BV operators, derived brackets, and the spec corpus.

pub mod axioms;
pub mod corpus;
pub mod derived;
pub mod hochschild;
pub mod spec;

pub use axioms::{
    bv_bracket_from_delta, check_bv_equivalences, check_derived_bracket_characterization, check_gerstenhaber,
    check_second_order, Equivalence,
};
pub use spec::{GradedAlgebraSpec, Operator, Table};
