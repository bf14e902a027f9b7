//! Bounds on the extreme eigenvalues of `A ψ = λ M ψ`.

use std::f64::consts::PI;

use super::operator::{Mass, SpdOperator};
use super::solve::{shifted_solve, SolveOptions};
use crate::error::{Error, Result};
use crate::scalar::{dot, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSource {
    Exact,
    PowerIteration,
    Gershgorin,
    PoincareLowerBound,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::PowerIteration => "power-iteration",
            Self::Gershgorin => "gershgorin",
            Self::PoincareLowerBound => "poincare",
        }
    }
}

/// An eigenvalue estimate together with where it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub source: BoundSource,
    /// Relative accuracy of `value`; zero for exact values and rigorous bounds.
    pub accuracy: f64,
}

impl Bound {
    pub fn exact(value: f64) -> Self {
        Self { value, source: BoundSource::Exact, accuracy: 0.0 }
    }

    /// `value · (1 - 2 accuracy)`, never above the true `λ₁` for a lower estimate.
    pub fn deflated(&self) -> f64 {
        self.value * (1.0 - 2.0 * self.accuracy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBounds {
    pub lambda1: Bound,
    pub lambda_n: Bound,
}

impl SpectralBounds {
    pub fn new(lambda1: Bound, lambda_n: Bound) -> Result<Self> {
        if !(lambda1.value > 0.0 && lambda1.value <= lambda_n.value) {
            return Err(Error::InvalidArgument(format!(
                "spectral bounds must satisfy 0 < λ₁ ≤ λ_N (got {} and {})",
                lambda1.value, lambda_n.value
            )));
        }
        Ok(Self { lambda1, lambda_n })
    }

    /// Largest admissible rescaling value `δ ≤ λ₁`.
    pub fn delta(&self) -> f64 {
        self.lambda1.deflated()
    }
}

/// `π² d / diam(Ω)²`, a lower bound for the smallest Dirichlet eigenvalue of
/// `-Δ` on a convex domain in `d` dimensions.
pub fn poincare_lower_bound(dim: usize, diameter: f64) -> Bound {
    Bound { value: PI * PI * dim as f64 / (diameter * diameter), source: BoundSource::PoincareLowerBound, accuracy: 0.0 }
}

/// Smallest eigenvalue by inverse power iteration.
///
/// Stops once `‖A x - θ M x‖_{M⁻¹} ≤ tol · θ ‖x‖_M`, so `θ - λ₁ ≤ tol · θ`
/// whenever `θ` approximates the bottom of the spectrum.
pub fn estimate_lambda1<T: Real>(a: &SpdOperator<T>, mass: Option<&Mass<T>>, tol: f64) -> Result<Bound> {
    let n = a.dim();
    let opts = SolveOptions::default();
    let mass_apply = |x: &[T]| -> Vec<T> { mass.map_or_else(|| x.to_vec(), |m| m.mul(x)) };
    let mass_solve = |r: &[T]| -> Result<Vec<T>> {
        match mass {
            None => Ok(r.to_vec()),
            Some(Mass::Diagonal(d)) => Ok(r.iter().zip(d).map(|(&a, &b)| a / b).collect()),
            Some(Mass::Matrix(m)) => shifted_solve(m, T::zero(), None, r, &opts),
        }
    };
    // strictly positive start vector: not orthogonal to the positive ground state
    let mut x: Vec<T> = (0..n).map(|i| T::one() + T::of(0.1 * ((i * 37) % 11) as f64 / 11.0)).collect();
    let mut last = f64::INFINITY;
    for it in 0..2000 {
        let mx = mass_apply(&x);
        let mnorm = dot(&x, &mx).sqrt();
        x.iter_mut().for_each(|v| *v = *v / mnorm);
        let mx: Vec<T> = mx.iter().map(|&v| v / mnorm).collect();
        let ax = a.mul(&x);
        let theta = dot(&x, &ax);
        let r: Vec<T> = ax.iter().zip(&mx).map(|(&p, &q)| p - theta * q).collect();
        let res = dot(&r, &mass_solve(&r)?).max(T::zero()).sqrt().as_f64() / theta.as_f64();
        last = res;
        if res <= tol {
            return Ok(Bound { value: theta.as_f64(), source: BoundSource::PowerIteration, accuracy: tol });
        }
        x = shifted_solve(a, T::zero(), None, &mx, &opts).map_err(|e| match e {
            Error::NotConverged { .. } => Error::NotConverged { iterations: it, residual: res },
            other => other,
        })?;
    }
    Err(Error::NotConverged { iterations: 2000, residual: last })
}

/// Upper bound on `λ_N` from Gershgorin discs of `M⁻¹A` when `M` is diagonal.
///
/// A consistent mass has no cheap guaranteed bound; the power-iteration value
/// inflated by 5% is returned instead.
pub fn estimate_lambda_n<T: Real>(a: &SpdOperator<T>, mass: Option<&Mass<T>>) -> Bound {
    match mass {
        None => Bound { value: a.gershgorin_bound().as_f64(), source: BoundSource::Gershgorin, accuracy: 0.0 },
        Some(Mass::Diagonal(d)) => {
            let v = (0..a.dim())
                .map(|i| a.row(i).iter().map(|e| e.1.abs().as_f64()).sum::<f64>() / d[i].as_f64())
                .fold(0.0, f64::max);
            Bound { value: v, source: BoundSource::Gershgorin, accuracy: 0.0 }
        }
        Some(Mass::Matrix(_)) => {
            let p = power_lambda_n(a, mass, 500);
            Bound { value: p * 1.05, source: BoundSource::PowerIteration, accuracy: 0.05 }
        }
    }
}

/// Rayleigh quotient after `iters` steps of power iteration on `M⁻¹A`.
pub fn power_lambda_n<T: Real>(a: &SpdOperator<T>, mass: Option<&Mass<T>>, iters: usize) -> f64 {
    let n = a.dim();
    let opts = SolveOptions::default();
    let mut x: Vec<T> = (0..n).map(|i| if i % 2 == 0 { T::one() } else { -T::one() }).collect();
    let mut theta = 0.0;
    for _ in 0..iters {
        let ax = a.mul(&x);
        let mx = mass.map_or_else(|| x.clone(), |m| m.mul(&x));
        theta = dot(&x, &ax).as_f64() / dot(&x, &mx).as_f64();
        let y = match mass {
            None => ax,
            Some(Mass::Diagonal(d)) => ax.iter().zip(d).map(|(&p, &q)| p / q).collect(),
            Some(Mass::Matrix(m)) => match shifted_solve(m, T::zero(), None, &ax, &opts) {
                Ok(y) => y,
                Err(_) => return theta,
            },
        };
        let norm = dot(&y, &y).sqrt();
        x = y.iter().map(|&v| v / norm).collect();
    }
    theta
}
