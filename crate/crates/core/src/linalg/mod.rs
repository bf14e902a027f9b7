//! Symmetric positive definite operators, shifted solves and spectral bounds.

mod dense;
mod dst;
mod mm;
mod operator;
mod solve;
mod spectral;

pub use dense::{apply_power, dense_fractional_apply, generalized_eigen, GeneralizedEigen, DENSE_MAX};
pub use dst::Dst1;
pub use mm::{read_matrix_market, write_matrix_market};
pub use operator::{Mass, SpdOperator, Storage};
pub use solve::{shifted_solve, thomas, SolveOptions};
pub use spectral::{
    estimate_lambda1, estimate_lambda_n, poincare_lower_bound, power_lambda_n, Bound, BoundSource, SpectralBounds,
};
