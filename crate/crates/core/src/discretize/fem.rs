use std::f64::consts::PI;

use super::fd::LAMBDA1_TOL;
use super::grid::{Domain, Grid2D};
use super::problem::{DiscreteProblem, Geometry, Scheme};
use crate::error::{Error, Result};
use crate::linalg::{estimate_lambda1, estimate_lambda_n, Bound, Mass, SpdOperator, SpectralBounds};
use crate::scalar::Real;

/// Linear elements on a uniform 1D mesh with `n` interior nodes:
/// `S = (1/h) tridiag(-1, 2, -1)`, `M = (h/6) tridiag(1, 4, 1)`, zero load.
pub fn fem_1d_consistent<T: Real>(n: usize) -> Result<DiscreteProblem<T>> {
    let h = 1.0 / (n + 1) as f64;
    let stiffness = SpdOperator::tridiagonal(vec![T::of(2.0 / h); n], vec![T::of(-1.0 / h); n.saturating_sub(1)]);
    let mass = SpdOperator::tridiagonal(vec![T::of(4.0 * h / 6.0); n], vec![T::of(h / 6.0); n.saturating_sub(1)]);
    let eig = |j: usize| {
        let c = (j as f64 * PI * h).cos();
        6.0 / (h * h) * (1.0 - c) / (2.0 + c)
    };
    let bounds = SpectralBounds::new(Bound::exact(eig(1)), Bound::exact(eig(n)))?;
    Ok(DiscreteProblem {
        scheme: Scheme::FemConsistent,
        stiffness,
        mass: Some(Mass::Matrix(mass)),
        rhs: vec![T::zero(); n],
        geometry: Geometry::Uniform1D { n },
        bounds,
    })
}

/// Linear-element matrices on the uniform right-triangle mesh (each square cut
/// from its lower-left to its upper-right corner).
#[derive(Debug, Clone)]
pub struct FemMatrices<T> {
    pub grid: Grid2D,
    pub stiffness: SpdOperator<T>,
    pub consistent: SpdOperator<T>,
    /// Vertex-quadrature mass, `h²` at every interior node.
    pub lumped: Vec<T>,
}

/// Assembles stiffness, consistent mass and lumped mass over `domain`.
pub fn fem_2d<T: Real>(n: usize, domain: Domain) -> FemMatrices<T> {
    let grid = Grid2D::new(n, domain);
    let h = grid.h();
    let mut ks = Vec::new();
    let mut ms = Vec::new();
    let mut lumped = vec![0.0; grid.len()];
    let area = 0.5 * h * h;
    let in_domain = |p: usize, q: usize| match domain {
        Domain::UnitSquare => true,
        // square [p h, (p+1) h] × [q h, (q+1) h] inside the L
        Domain::LShaped => !(2 * p >= n + 1 && 2 * q >= n + 1),
    };
    for q in 0..=n {
        for p in 0..=n {
            if !in_domain(p, q) {
                continue;
            }
            let ll = (p, q);
            let lr = (p + 1, q);
            let ur = (p + 1, q + 1);
            let ul = (p, q + 1);
            for tri in [[ll, lr, ur], [ll, ur, ul]] {
                let xy: Vec<(f64, f64)> = tri.iter().map(|&(i, j)| (i as f64 * h, j as f64 * h)).collect();
                let idx: Vec<Option<usize>> = tri.iter().map(|&(i, j)| grid.index(i, j)).collect();
                for a in 0..3 {
                    let Some(ia) = idx[a] else { continue };
                    lumped[ia] += area / 3.0;
                    for b in 0..3 {
                        let Some(ib) = idx[b] else { continue };
                        if ib > ia {
                            continue;
                        }
                        let (ba, ca) = gradient(&xy, a);
                        let (bb, cb) = gradient(&xy, b);
                        ks.push((ia, ib, (ba * bb + ca * cb) / (4.0 * area)));
                        ms.push((ia, ib, area / 12.0 * if a == b { 2.0 } else { 1.0 }));
                    }
                }
            }
        }
    }
    let cast = |t: Vec<(usize, usize, f64)>| -> Vec<(usize, usize, T)> {
        t.into_iter().map(|(i, j, v)| (i, j, T::of(v))).collect()
    };
    let len = grid.len();
    let mut stiffness = SpdOperator::from_symmetric_triplets(len, &cast(ks));
    stiffness = drop_zeros(stiffness);
    FemMatrices {
        stiffness,
        consistent: SpdOperator::from_symmetric_triplets(len, &cast(ms)),
        lumped: lumped.into_iter().map(T::of).collect(),
        grid,
    }
}

/// `(y_j - y_k, x_k - x_j)` for vertex `a` with `(j, k)` the other two.
fn gradient(xy: &[(f64, f64)], a: usize) -> (f64, f64) {
    let (j, k) = ((a + 1) % 3, (a + 2) % 3);
    (xy[j].1 - xy[k].1, xy[k].0 - xy[j].0)
}

fn drop_zeros<T: Real>(a: SpdOperator<T>) -> SpdOperator<T> {
    let eps = T::of(1e-12) * a.gershgorin_bound();
    let t: Vec<(usize, usize, T)> = a.triplets().into_iter().filter(|&(i, j, v)| j <= i && v.abs() > eps).collect();
    SpdOperator::from_symmetric_triplets(a.dim(), &t)
}

/// Matrices on the L-shaped domain; `n + 1` must be even so `x = 0.5` is a grid line.
pub fn fem_2d_lshaped<T: Real>(n: usize) -> Result<FemMatrices<T>> {
    if n < 3 || (n + 1) % 2 != 0 {
        return Err(Error::GridParity(n));
    }
    Ok(fem_2d(n, Domain::LShaped))
}

impl<T: Real> FemMatrices<T> {
    /// Problem with the consistent mass and zero load.
    pub fn consistent_problem(&self) -> Result<DiscreteProblem<T>> {
        self.problem(Mass::Matrix(self.consistent.clone()), Scheme::FemConsistent)
    }

    /// Problem with the lumped mass and zero load.
    pub fn lumped_problem(&self) -> Result<DiscreteProblem<T>> {
        self.problem(Mass::Diagonal(self.lumped.clone()), Scheme::FemLumped)
    }

    fn problem(&self, mass: Mass<T>, scheme: Scheme) -> Result<DiscreteProblem<T>> {
        let bounds = SpectralBounds::new(
            estimate_lambda1(&self.stiffness, Some(&mass), LAMBDA1_TOL)?,
            estimate_lambda_n(&self.stiffness, Some(&mass)),
        )?;
        Ok(DiscreteProblem {
            scheme,
            stiffness: self.stiffness.clone(),
            mass: Some(mass),
            rhs: vec![T::zero(); self.grid.len()],
            geometry: Geometry::Grid(self.grid.clone()),
            bounds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_mass_rows() {
        let p: DiscreteProblem<f64> = fem_1d_consistent(3).unwrap();
        let Some(Mass::Matrix(m)) = &p.mass else { panic!() };
        assert!((m.get(1, 0) - 1.0 / 24.0).abs() < 1e-16);
        assert!((m.get(1, 1) - 4.0 / 24.0).abs() < 1e-16);
        let row: f64 = m.row(1).iter().map(|e| e.1).sum();
        assert!((row - 0.25).abs() < 1e-15);
    }

    #[test]
    fn interior_stencil_and_masses() {
        let f: FemMatrices<f64> = fem_2d_lshaped(9).unwrap();
        let k = f.grid.index(2, 2).unwrap();
        let row = f.stiffness.row(k);
        assert_eq!(row.len(), 5);
        for (j, v) in row {
            let e = if j == k { 4.0 } else { -1.0 };
            assert!((v - e).abs() < 1e-13);
        }
        let h = f.grid.h();
        assert!((f.lumped[k] - h * h).abs() < 1e-15);
        assert!((f.consistent.get(k, k) - h * h / 2.0).abs() < 1e-15);
    }

    #[test]
    fn parity_is_checked() {
        assert!(matches!(fem_2d_lshaped::<f64>(10), Err(Error::GridParity(10))));
    }

    #[test]
    fn total_mass_is_the_area() {
        // with boundary nodes the consistent mass sums to |Ω|; the interior block
        // falls short by the boundary-coupled part, which shrinks with h
        let f: FemMatrices<f64> = fem_2d_lshaped(39).unwrap();
        let total: f64 = f.consistent.triplets().iter().map(|t| t.2).sum();
        let h = f.grid.h();
        assert!(total < 0.75 && total > 0.75 - 6.0 * h);
    }
}
