use std::f64::consts::PI;

use super::grid::{Domain, Grid2D};
use super::mesh::Mesh1D;
use super::problem::{DiscreteProblem, Geometry, Scheme};
use crate::error::{Error, Result};
use crate::linalg::{estimate_lambda1, estimate_lambda_n, Bound, Mass, SpdOperator, SpectralBounds};
use crate::scalar::Real;

/// Relative accuracy of inverse-power `λ₁` estimates made during assembly.
pub const LAMBDA1_TOL: f64 = 1e-8;

/// How `a_{i-1/2}` is taken from the coefficient on each segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrature {
    /// `a(x_i - h/2)`.
    Midpoint,
    /// `(1/h) ∫ a` over the segment, by 5-point Gauss-Legendre.
    SegmentAverage,
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664_0, 0.236_926_885_056_189_1),
];

fn segment_coefficient(a: &impl Fn(f64) -> f64, lo: f64, hi: f64, quad: Quadrature) -> Result<f64> {
    let check = |x: f64| {
        let v = a(x);
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::NonpositiveCoefficient { x, value: v })
        }
    };
    match quad {
        Quadrature::Midpoint => check(0.5 * (lo + hi)),
        Quadrature::SegmentAverage => {
            let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            let mut s = 0.0;
            for (t, w) in GL5 {
                s += 0.5 * w * check(c + r * t)?;
            }
            Ok(s)
        }
    }
}

/// Balanced 3-point scheme for `-(a u')' = f` on a uniform mesh with `n`
/// interior nodes: row `i` is `h⁻²(-a_{i-1/2}, a_{i-1/2} + a_{i+1/2}, -a_{i+1/2})`.
pub fn fd_1d_variable<T: Real>(
    a: impl Fn(f64) -> f64,
    n: usize,
    quad: Quadrature,
    f: impl Fn(f64) -> f64,
) -> Result<DiscreteProblem<T>> {
    let h = 1.0 / (n + 1) as f64;
    let half: Vec<f64> = (0..=n)
        .map(|i| segment_coefficient(&a, i as f64 * h, (i + 1) as f64 * h, quad))
        .collect::<Result<_>>()?;
    let s = 1.0 / (h * h);
    let diag: Vec<T> = (0..n).map(|i| T::of(s * (half[i] + half[i + 1]))).collect();
    let off: Vec<T> = (1..n).map(|i| T::of(-s * half[i])).collect();
    let stiffness = SpdOperator::tridiagonal(diag, off);
    let rhs = (1..=n).map(|i| T::of(f(i as f64 * h))).collect();
    let bounds = SpectralBounds::new(estimate_lambda1(&stiffness, None, LAMBDA1_TOL)?, estimate_lambda_n(&stiffness, None))?;
    Ok(DiscreteProblem { scheme: Scheme::Fd, stiffness, mass: None, rhs, geometry: Geometry::Uniform1D { n }, bounds })
}

/// 5-point Laplacian `(n+1)²[4, -1, -1, -1, -1]` with a zero right-hand side.
pub fn fd_2d_laplacian<T: Real>(n: usize, domain: Domain) -> Result<DiscreteProblem<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 interior lines (got {n})")));
    }
    let grid = Grid2D::new(n, domain);
    let s = ((n + 1) * (n + 1)) as f64;
    let (stiffness, bounds) = match domain {
        Domain::UnitSquare => {
            let a = SpdOperator::kronecker_sum(n, T::of(2.0 * s), T::of(-s));
            let l1 = 8.0 * s * (PI / (2.0 * (n + 1) as f64)).sin().powi(2);
            let ln = 8.0 * s * (PI * n as f64 / (2.0 * (n + 1) as f64)).sin().powi(2);
            (a, SpectralBounds::new(Bound::exact(l1), Bound::exact(ln))?)
        }
        Domain::LShaped => {
            let mut t = Vec::with_capacity(3 * grid.len());
            for k in 0..grid.len() {
                let (i, j) = grid.lattice(k);
                t.push((k, k, T::of(4.0 * s)));
                for (p, q) in [(i + 1, j), (i, j + 1)] {
                    if let Some(l) = grid.index(p, q) {
                        t.push((k, l, T::of(-s)));
                    }
                }
            }
            let a = SpdOperator::from_symmetric_triplets(grid.len(), &t);
            let b = SpectralBounds::new(estimate_lambda1(&a, None, LAMBDA1_TOL)?, estimate_lambda_n(&a, None))?;
            (a, b)
        }
    };
    let rhs = vec![T::zero(); grid.len()];
    Ok(DiscreteProblem { scheme: Scheme::Fd, stiffness, mass: None, rhs, geometry: Geometry::Grid(grid), bounds })
}

/// Lumped-mass scheme on a nonuniform mesh: `S̃` with rows
/// `(-1/h_i, 1/h_i + 1/h_{i+1}, -1/h_{i+1})`, `M_h = diag(h̃_i)` and load
/// `h̃_i f(x_i)`, or the unit load `e_j` of a point source at node `j`.
pub fn fd_1d_lumped_nonuniform<T: Real>(
    mesh: &Mesh1D,
    f: Option<&dyn Fn(f64) -> f64>,
    delta_at: Option<usize>,
) -> Result<DiscreteProblem<T>> {
    let n = mesh.interior_count();
    let h = mesh.segments();
    let diag: Vec<T> = (0..n).map(|i| T::of(1.0 / h[i] + 1.0 / h[i + 1])).collect();
    let off: Vec<T> = (1..n).map(|i| T::of(-1.0 / h[i])).collect();
    let stiffness = SpdOperator::tridiagonal(diag, off);
    let dual = mesh.dual_lengths();
    let mass = Mass::Diagonal(dual.iter().map(|&v| T::of(v)).collect());
    let mut rhs = vec![T::zero(); n];
    if let Some(f) = f {
        for ((r, &x), &w) in rhs.iter_mut().zip(mesh.interior()).zip(&dual) {
            *r = T::of(w * f(x));
        }
    }
    if let Some(j) = delta_at {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        rhs[j] = rhs[j] + T::one();
    }
    let bounds = SpectralBounds::new(
        estimate_lambda1(&stiffness, Some(&mass), LAMBDA1_TOL)?,
        estimate_lambda_n(&stiffness, Some(&mass)),
    )?;
    Ok(DiscreteProblem {
        scheme: Scheme::FemLumped,
        stiffness,
        mass: Some(mass),
        rhs,
        geometry: Geometry::Mesh(mesh.clone()),
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_coefficient_spectrum_is_bracketed() {
        let a = |x: f64| 1.0 + 0.5 * (5.0 * x).sin();
        let (amin, amax) = (0.5, 1.5);
        for n in [15usize, 63] {
            let h = 1.0 / (n + 1) as f64;
            let p: DiscreteProblem<f64> = fd_1d_variable(a, n, Quadrature::SegmentAverage, |_| 0.0).unwrap();
            let (s, m) = p.dense_matrices();
            let eig = crate::linalg::generalized_eigen(&s, m.as_ref()).unwrap();
            let lower = amin * 4.0 / (h * h) * (0.5 * std::f64::consts::PI * h).sin().powi(2);
            assert!(eig.values[0] >= lower * (1.0 - 1e-12));
            assert!(eig.values[n - 1] <= 4.0 * amax / (h * h));
        }
    }

    #[test]
    fn constant_coefficient_is_the_laplacian() {
        let p: DiscreteProblem<f64> = fd_1d_variable(|_| 1.0, 3, Quadrature::Midpoint, |_| 1.0).unwrap();
        let d = p.stiffness.to_dense_f64();
        assert_eq!(d[(1, 1)], 32.0);
        assert_eq!(d[(1, 0)], -16.0);
        assert_eq!(d[(0, 2)], 0.0);
        assert_eq!(p.rhs, vec![1.0; 3]);
    }

    #[test]
    fn variable_coefficient_row() {
        let p: DiscreteProblem<f64> = fd_1d_variable(|x| 1.0 + x, 3, Quadrature::Midpoint, |_| 0.0).unwrap();
        let a = |x: f64| 1.0 + x;
        assert!((p.stiffness.get(1, 0) + 16.0 * a(0.375)).abs() < 1e-13);
        assert!((p.stiffness.get(1, 1) - 16.0 * (a(0.375) + a(0.625))).abs() < 1e-13);
        assert!((p.stiffness.get(1, 2) + 16.0 * a(0.625)).abs() < 1e-13);
    }

    #[test]
    fn segment_average_integrates_polynomials() {
        let p: DiscreteProblem<f64> =
            fd_1d_variable(|x| 1.0 + x * x * x, 1, Quadrature::SegmentAverage, |_| 0.0).unwrap();
        // (1/h)∫_0^{1/2}(1+x³) = 1 + 1/32, same on [1/2, 1] = 1 + 15/32
        assert!((p.stiffness.get(0, 0) - 4.0 * (2.0 + 16.0 / 32.0)).abs() < 1e-13);
    }

    #[test]
    fn nonpositive_coefficient_is_rejected() {
        let r = fd_1d_variable::<f64>(|x| x - 0.3, 5, Quadrature::Midpoint, |_| 0.0);
        assert!(matches!(r, Err(Error::NonpositiveCoefficient { .. })));
    }

    #[test]
    fn square_laplacian_n2() {
        let p: DiscreteProblem<f64> = fd_2d_laplacian(2, Domain::UnitSquare).unwrap();
        let d = p.stiffness.to_dense_f64();
        let e = [[4., -1., -1., 0.], [-1., 4., 0., -1.], [-1., 0., 4., -1.], [0., -1., -1., 4.]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d[(i, j)], 9.0 * e[i][j]);
            }
        }
    }

    #[test]
    fn lumped_rows() {
        let mesh = Mesh1D::new(vec![0.0, 0.25, 0.5, 1.0]).unwrap();
        let p: DiscreteProblem<f64> = fd_1d_lumped_nonuniform(&mesh, Some(&|_| 1.0), None).unwrap();
        assert_eq!(p.stiffness.get(1, 0), -4.0);
        assert_eq!(p.stiffness.get(1, 1), 6.0);
        assert_eq!(p.stiffness.get(0, 1), -4.0);
        assert_eq!(p.rhs, vec![0.25, 0.375]);
        let mid = mesh.interior_index_of(0.5).unwrap();
        let q: DiscreteProblem<f64> = fd_1d_lumped_nonuniform(&mesh, None, Some(mid)).unwrap();
        assert_eq!(q.rhs, vec![0.0, 1.0]);
        assert!(matches!(
            fd_1d_lumped_nonuniform::<f64>(&mesh, None, Some(2)),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }
}
