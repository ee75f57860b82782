//! Upwind discontinuous Galerkin discretisation of single-direction
//! transport, with sweep and dense solvers.

mod field;
mod norms;
mod operator;
mod permute;
mod solve;
mod space;

pub use field::CoefficientField;
pub use norms::{
    cell_means, energy_norm_between, energy_norm_error, energy_norm_with, evaluate, l2_distance,
    l2_norm, project, ERROR_QUADRATURE_ORDER,
};
pub use operator::{
    assemble_direction, assemble_rhs, classify_facets, BlockOperator, FacetRole, FacetRoles,
};
pub use permute::{apply_permutation, TriangularityReport};
pub use solve::{direct_solve, sweep_solve, SolutionField};
pub use space::{basis_size, multi_indices, CellQuadrature, DgSpace};
