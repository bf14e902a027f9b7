//! Ground truth: exact discrete solutions on the unit square and truncated
//! eigen-series solutions of the 1D problem `(-d²/dx²)^α u = f` on `(0, 1)`.

use std::f64::consts::{PI, SQRT_2};

use crate::discretize::{rhs_sine, Domain, Grid2D, Mesh1D};
use crate::error::{Error, Result};
use crate::linalg::Dst1;

fn require_square(grid: &Grid2D) -> Result<()> {
    if grid.domain() != Domain::UnitSquare {
        return Err(Error::InvalidArgument("exact discrete solutions need the unit square".into()));
    }
    Ok(())
}

/// `Ã^{-α}` applied to samples of `sin(2πx) sin(2πy)`, which form an eigenvector
/// of the 5-point matrix with eigenvalue `8 sin²(πh) / h²`.
pub fn exact_discrete_sine(grid: &Grid2D, alpha: f64) -> Result<Vec<f64>> {
    require_square(grid)?;
    let h = grid.h();
    let scale = (8.0 * (PI * h).sin().powi(2) / (h * h)).powf(-alpha);
    Ok(rhs_sine(grid).into_iter().map(|v| scale * v).collect())
}

/// `Ã^{-α} f̃` for the 5-point matrix on the unit square by fast diagonalization:
/// eigenvalues `(4/h²)(sin²(πih/2) + sin²(πjh/2))`, eigenvectors products of sines.
pub fn exact_discrete_square(grid: &Grid2D, alpha: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    require_square(grid)?;
    if rhs.len() != grid.len() {
        return Err(Error::LengthMismatch { left: grid.len(), right: rhs.len() });
    }
    let n = grid.n();
    let h = grid.h();
    let dst = Dst1::new(n);
    let mut x = rhs.to_vec();
    dst.apply_2d(&mut x);
    let mu: Vec<f64> = (1..=n).map(|i| 4.0 / (h * h) * (0.5 * PI * i as f64 * h).sin().powi(2)).collect();
    let norm = (2.0 / (n + 1) as f64).powi(2);
    for (r, row) in x.chunks_mut(n).enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            *v *= norm * (mu[r] + mu[c]).powf(-alpha);
        }
    }
    dst.apply_2d(&mut x);
    Ok(x)
}

/// Right-hand side of the 1D series solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesRhs {
    /// `f ≡ 1`.
    ConstantRhs,
    /// Point source at `x = 1/2`; square integrable only for `α > 1/4`.
    DeltaRhs,
}

pub const DEFAULT_TERMS: usize = 10_000;

/// `u = Σ_{i<T} c_i ψ_{2i+1}`, `ψ_m(x) = √2 sin(πmx)`; even modes vanish for both data.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    alpha: f64,
    rhs: SeriesRhs,
    coefficients: Vec<f64>,
}

impl SeriesSolution {
    pub fn new(alpha: f64, rhs: SeriesRhs, terms: usize) -> Result<Self> {
        let lower = match rhs {
            SeriesRhs::ConstantRhs => 0.0,
            SeriesRhs::DeltaRhs => 0.25,
        };
        if !(alpha > lower && alpha < 1.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        if terms == 0 {
            return Err(Error::InvalidArgument("series needs at least one term".into()));
        }
        let coefficients = (0..terms)
            .map(|i| {
                let m = (2 * i + 1) as f64;
                match rhs {
                    SeriesRhs::ConstantRhs => 2.0 * SQRT_2 / PI.powf(1.0 + 2.0 * alpha) / m.powf(1.0 + 2.0 * alpha),
                    SeriesRhs::DeltaRhs => {
                        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                        sign * SQRT_2 * PI.powf(-2.0 * alpha) / m.powf(2.0 * alpha)
                    }
                }
            })
            .collect();
        Ok(Self { alpha, rhs, coefficients })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rhs(&self) -> SeriesRhs {
        self.rhs
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficient of `ψ_m`; zero for even `m` and for modes beyond the truncation.
    pub fn coefficient(&self, m: usize) -> f64 {
        if m % 2 == 0 {
            return 0.0;
        }
        self.coefficients.get(m / 2).copied().unwrap_or(0.0)
    }

    /// Pointwise values of the truncated series.
    pub fn eval(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter()
            .map(|&x| {
                self.coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * SQRT_2 * (PI * (2 * i + 1) as f64 * x).sin())
                    .sum()
            })
            .collect()
    }

    /// Values at `x_j = j/N`, `j = 0..=N`, by one sine transform; modes above `N - 1` are dropped.
    pub fn sample_uniform(&self, segments: usize) -> Vec<f64> {
        let n = segments - 1;
        let mut x: Vec<f64> = (1..=n).map(|m| SQRT_2 * self.coefficient(m)).collect();
        Dst1::new(n).apply(&mut x);
        let mut out = Vec::with_capacity(segments + 1);
        out.push(0.0);
        out.extend(x);
        out.push(0.0);
        out
    }

    /// `L₂(0,1)` norm of the truncated series.
    pub fn truncated_l2_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// `L₂(0,1)` norm of the part of the full series dropped by the truncation,
    /// from the Euler-Maclaurin estimate of `Σ_{i≥T} (2i+1)^{-s}`.
    pub fn tail_l2_norm(&self) -> f64 {
        let (scale, s) = match self.rhs {
            SeriesRhs::ConstantRhs => (8.0 / PI.powf(2.0 + 4.0 * self.alpha), 2.0 + 4.0 * self.alpha),
            SeriesRhs::DeltaRhs => (2.0 * PI.powf(-4.0 * self.alpha), 4.0 * self.alpha),
        };
        let m = (2 * self.terms() + 1) as f64;
        let tail = m.powf(1.0 - s) / (2.0 * (s - 1.0)) + 0.5 * m.powf(-s) + s / 6.0 * m.powf(-s - 1.0);
        (scale * tail).sqrt()
    }

    /// `L₂(0,1)` norm of the full series.
    pub fn l2_norm(&self) -> f64 {
        self.truncated_l2_norm().hypot(self.tail_l2_norm())
    }
}

/// Piecewise-linear interpolant of interior values `w` (zero at both ends) at sorted `xs`.
pub fn interpolate_linear(mesh: &Mesh1D, w: &[f64], xs: &[f64]) -> Result<Vec<f64>> {
    if w.len() != mesh.interior_count() {
        return Err(Error::LengthMismatch { left: mesh.interior_count(), right: w.len() });
    }
    let nodes = mesh.nodes();
    let value = |i: usize| if i == 0 || i == nodes.len() - 1 { 0.0 } else { w[i - 1] };
    let mut seg = 0;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidArgument(format!("sample point {x} outside [0, 1]")));
        }
        while seg + 2 < nodes.len() && nodes[seg + 1] < x {
            seg += 1;
        }
        if x < nodes[seg] {
            seg = nodes.partition_point(|&y| y < x).saturating_sub(1);
        }
        let (a, b) = (nodes[seg], nodes[seg + 1]);
        let t = (x - a) / (b - a);
        out.push((1.0 - t) * value(seg) + t * value(seg + 1));
    }
    Ok(out)
}

/// `‖w_h − u_h‖ / ‖u‖`: both sides sampled on the uniform grid of width `fine_h`
/// (trapezoid rule), `w_h` the linear interpolant of the mesh solution `w`.
pub fn relative_l2_vs_fine_grid(mesh: &Mesh1D, w: &[f64], s: &SeriesSolution, fine_h: f64) -> Result<f64> {
    let samples = s.sample_uniform(segments_of(fine_h)?);
    relative_l2_vs_samples(mesh, w, &samples, s.l2_norm())
}

/// As [`relative_l2_vs_fine_grid`] with precomputed fine-grid samples `u_j = u(j/N)`.
pub fn relative_l2_vs_samples(mesh: &Mesh1D, w: &[f64], samples: &[f64], norm: f64) -> Result<f64> {
    let segments = samples.len() - 1;
    let h = 1.0 / segments as f64;
    let xs: Vec<f64> = (0..=segments).map(|j| j as f64 * h).collect();
    let wh = interpolate_linear(mesh, w, &xs)?;
    let mut sum = 0.0;
    for (j, (a, b)) in wh.iter().zip(samples).enumerate() {
        let weight = if j == 0 || j == segments { 0.5 * h } else { h };
        sum += weight * (a - b) * (a - b);
    }
    if norm == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(sum.sqrt() / norm)
}

fn segments_of(fine_h: f64) -> Result<usize> {
    let n = (1.0 / fine_h).round();
    if !(n >= 2.0) || ((n * fine_h) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("fine grid width {fine_h} does not divide [0, 1]")));
    }
    Ok(n as usize)
}
