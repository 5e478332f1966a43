//! Eckmann–Shapiro comparison between Hochschild and group (co)homology.

pub mod diagrams;
pub mod maps;

pub use diagrams::{
    check_cap_diagram, check_cup_diagram, check_eckmann_shapiro, check_section_cap, check_section_properties,
    comparison_report, DiagramRow,
};
pub use maps::{
    aw_diagonal, augment_coefficients, bar_counit, conj_left, conj_right, cyclic_b_bar, group_cap, group_chain_differential,
    group_cup, phi, sigma, unit_coefficients, xi, xi_cochain, xi_cochain_inverse, CapTarget, Direction, EckmannShapiro,
};
