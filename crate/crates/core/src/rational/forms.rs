//! Solver-ready decompositions of `r̃(λ) = r(1/λ)`.

use super::{check_interlacing, RationalMinimax};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `r̃(λ) = c_0 + Σ c_i / (λ - d̃_i)` with `d̃_i = 1/d_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Additive<T> {
    pub gamma: f64,
    pub c0: T,
    pub residues: Vec<T>,
    /// `d̃_1 < d̃_2 < … < d̃_k < 0`.
    pub shifted_poles: Vec<T>,
}

/// `r(t) = b Π (t - ζ_i) / (t - d_i)` as an ordered factor list `(ζ_i, d_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplicative<T> {
    pub gamma: f64,
    pub b: T,
    pub factors: Vec<(T, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FractionForm<T> {
    Additive(Additive<T>),
    Multiplicative(Multiplicative<T>),
}

impl<T: Real> FractionForm<T> {
    pub fn gamma(&self) -> f64 {
        match self {
            Self::Additive(a) => a.gamma,
            Self::Multiplicative(m) => m.gamma,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Additive(a) => a.residues.len(),
            Self::Multiplicative(m) => m.factors.len(),
        }
    }

    /// `r̃(λ) = r(1/λ)`.
    pub fn eval_reciprocal(&self, lambda: T) -> T {
        match self {
            Self::Additive(a) => a
                .residues
                .iter()
                .zip(&a.shifted_poles)
                .fold(a.c0, |acc, (&c, &d)| acc + c / (lambda - d)),
            Self::Multiplicative(m) => {
                let one = T::one();
                m.factors.iter().fold(m.b, |acc, &(z, d)| acc * (one - z * lambda) / (one - d * lambda))
            }
        }
    }

    pub fn cast<U: Real>(&self) -> FractionForm<U> {
        let c = |x: T| U::of(x.as_f64());
        match self {
            Self::Additive(a) => FractionForm::Additive(Additive {
                gamma: a.gamma,
                c0: c(a.c0),
                residues: a.residues.iter().map(|&x| c(x)).collect(),
                shifted_poles: a.shifted_poles.iter().map(|&x| c(x)).collect(),
            }),
            Self::Multiplicative(m) => FractionForm::Multiplicative(Multiplicative {
                gamma: m.gamma,
                b: c(m.b),
                factors: m.factors.iter().map(|&(z, d)| (c(z), c(d))).collect(),
            }),
        }
    }
}

impl<T: Real> Multiplicative<T> {
    /// `(λ₁ - ζ_i t) / (λ₁ - d_i t)`, the scalar action of factor `i` at eigenvalue `t`.
    pub fn factor(&self, i: usize, lambda1: T, t: T) -> T {
        let (z, d) = self.factors[i];
        (lambda1 - z * t) / (lambda1 - d * t)
    }
}

/// Partial fractions of `r̃(λ) = r(1/λ)`; all coefficients are positive.
pub fn to_additive_form(r: &RationalMinimax) -> Result<FractionForm<f64>> {
    check_interlacing(r.zeros(), r.poles())?;
    let (zeros, poles, b) = (r.zeros(), r.poles(), r.leading_coefficient());
    let c0 = zeros.iter().zip(poles).fold(b, |acc, (&z, &d)| acc * z / d);
    let residues: Vec<f64> = (0..poles.len())
        .map(|i| {
            let di = poles[i];
            let rest: f64 = (0..poles.len())
                .filter(|&j| j != i)
                .map(|j| (zeros[j] - di) / (poles[j] - di))
                .product();
            b * (zeros[i] - di) / (di * di) * rest
        })
        .collect();
    if !(c0 > 0.0) {
        return Err(Error::InterlacingViolated(format!("c_0 = {c0}")));
    }
    if let Some((i, c)) = residues.iter().enumerate().find(|(_, c)| !(**c > 0.0)) {
        return Err(Error::InterlacingViolated(format!("c_{} = {c}", i + 1)));
    }
    Ok(FractionForm::Additive(Additive {
        gamma: r.gamma(),
        c0,
        residues,
        shifted_poles: poles.iter().map(|d| 1.0 / d).collect(),
    }))
}

pub fn to_multiplicative_form(r: &RationalMinimax) -> Result<FractionForm<f64>> {
    check_interlacing(r.zeros(), r.poles())?;
    Ok(FractionForm::Multiplicative(Multiplicative {
        gamma: r.gamma(),
        b: r.leading_coefficient(),
        factors: r.zeros().iter().copied().zip(r.poles().iter().copied()).collect(),
    }))
}
