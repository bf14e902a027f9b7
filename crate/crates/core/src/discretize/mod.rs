//! Finite-difference and finite-element operators, meshes and right-hand sides.

mod fd;
mod fem;
mod grid;
mod mesh;
mod problem;

pub use fd::{fd_1d_lumped_nonuniform, fd_1d_variable, fd_2d_laplacian, Quadrature, LAMBDA1_TOL};
pub use fem::{fem_1d_consistent, fem_2d, fem_2d_lshaped, FemMatrices};
pub use grid::{rhs_checkerboard, rhs_sine, Domain, Grid2D};
pub use mesh::Mesh1D;
pub use problem::{DiscreteProblem, Geometry, Scheme};
