//! Exact linear algebra over ℤ, ℚ and F_p.

pub mod echelon;
pub mod homology;
pub mod matrix;
pub mod snf;
pub mod theta;

pub use echelon::{column_echelon, inverse_field, kernel_basis, rank, solve_field, Echelon};
pub use homology::{bigint_json, homology_at, sparse_json, HomologyPresentation, HomologySpace};
pub use matrix::{axpy, scale, sparse_from_entries, Matrix, SparseVec};
pub use snf::{smith_normal_form, solve, solve_integer, SmithForm};
pub use theta::{hom_tensor_comparison, FiniteComplex, GradedFreeComplex, ThetaComparison};
