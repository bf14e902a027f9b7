//! Fractional powers of SPD matrices via best uniform rational approximation.
//!
//! Solves `Ã^α u = f`, `0 < α < 1`, with three methods: P-BURA (rescaling by a
//! lower spectral bound and approximating `t^α`), BURA-orig (rescaling by an
//! upper bound and approximating `t^{1-α}`), and the sinc-quadrature Q-method.

pub mod diagnostics;
pub mod discretize;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod rational;
pub mod reference;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use rational::{compute_bura, FractionForm, RationalMinimax};
pub use scalar::Real;

pub type Operator = linalg::SpdOperator<f64>;
pub type Operator32 = linalg::SpdOperator<f32>;
pub type Problem = discretize::DiscreteProblem<f64>;
pub type Problem32 = discretize::DiscreteProblem<f32>;
pub type Report = solvers::SolveReport<f64>;
pub type Report32 = solvers::SolveReport<f32>;
pub type Form = FractionForm<f64>;
