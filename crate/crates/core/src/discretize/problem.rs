use nalgebra::{DMatrix, DVector};

use super::grid::Grid2D;
use super::mesh::Mesh1D;
use crate::error::{Error, Result};
use crate::linalg::{generalized_eigen, shifted_solve, Mass, SolveOptions, SpdOperator, SpectralBounds};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `Ã ũ = f̃` with `Ã` the finite-difference matrix; the rhs holds nodal values.
    Fd,
    /// `Ã = M⁻¹S` with the consistent mass; the rhs holds the load `F = (f, φ_i)`.
    FemConsistent,
    /// `Ã = M_h⁻¹S` with a diagonal mass; the rhs holds the load `F = M_h f̃`.
    FemLumped,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fd => "fd",
            Self::FemConsistent => "fem-consistent",
            Self::FemLumped => "fem-lumped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Uniform1D { n: usize },
    Mesh(Mesh1D),
    Grid(Grid2D),
}

/// Stiffness, optional mass, right-hand side and spectral bounds of `Ã^α ũ = f̃`.
#[derive(Debug, Clone)]
pub struct DiscreteProblem<T> {
    pub scheme: Scheme,
    pub stiffness: SpdOperator<T>,
    pub mass: Option<Mass<T>>,
    pub rhs: Vec<T>,
    pub geometry: Geometry,
    pub bounds: SpectralBounds,
}

impl<T: Real> DiscreteProblem<T> {
    pub fn dim(&self) -> usize {
        self.stiffness.dim()
    }

    pub fn with_rhs(mut self, rhs: Vec<T>) -> Result<Self> {
        if rhs.len() != self.dim() {
            return Err(Error::LengthMismatch { left: self.dim(), right: rhs.len() });
        }
        self.rhs = rhs;
        Ok(self)
    }

    /// Replaces the rhs by `M f̃` for nodal values `f̃` (identity for FD).
    pub fn with_nodal_rhs(self, nodal: Vec<T>) -> Result<Self> {
        let load = match &self.mass {
            None => nodal,
            Some(m) => {
                if nodal.len() != self.dim() {
                    return Err(Error::LengthMismatch { left: self.dim(), right: nodal.len() });
                }
                m.mul(&nodal)
            }
        };
        self.with_rhs(load)
    }

    /// `f̃ = M⁻¹F`, the right-hand side as nodal values.
    pub fn nodal_rhs(&self) -> Result<Vec<T>> {
        self.mass_solve(&self.rhs)
    }

    /// `M⁻¹ x` (identity for FD).
    pub fn mass_solve(&self, x: &[T]) -> Result<Vec<T>> {
        match &self.mass {
            None => Ok(x.to_vec()),
            Some(Mass::Diagonal(d)) => Ok(x.iter().zip(d).map(|(&a, &b)| a / b).collect()),
            Some(Mass::Matrix(m)) => shifted_solve(m, T::zero(), None, x, &SolveOptions::default()),
        }
    }

    pub fn dense_matrices(&self) -> (DMatrix<f64>, Option<DMatrix<f64>>) {
        let s = self.stiffness.to_dense_f64();
        let m = self.mass.as_ref().map(|m| m.to_operator().to_dense_f64());
        (s, m)
    }

    /// `ũ = Ã^{-α} f̃` from the dense generalized eigen-decomposition.
    pub fn exact_dense(&self, alpha: f64) -> Result<Vec<f64>> {
        let (s, m) = self.dense_matrices();
        let eig = generalized_eigen(&s, m.as_ref())?;
        let load = DVector::from_iterator(self.dim(), self.rhs.iter().map(|v| v.as_f64()));
        let mut coef = eig.vectors.tr_mul(&load);
        for (c, &l) in coef.iter_mut().zip(eig.values.iter()) {
            *c *= l.powf(-alpha);
        }
        Ok((&eig.vectors * coef).iter().copied().collect())
    }

    pub fn cast<U: Real>(&self) -> DiscreteProblem<U> {
        DiscreteProblem {
            scheme: self.scheme,
            stiffness: self.stiffness.cast(),
            mass: self.mass.as_ref().map(|m| m.cast()),
            rhs: self.rhs.iter().map(|v| U::of(v.as_f64())).collect(),
            geometry: self.geometry.clone(),
            bounds: self.bounds,
        }
    }
}
