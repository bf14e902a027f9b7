//! Dense eigen-decomposition oracles for small problems.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Largest dimension accepted by the dense oracles.
pub const DENSE_MAX: usize = 5000;

/// Eigenpairs of `S ψ = λ M ψ` with `Ψᵀ M Ψ = I`, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct GeneralizedEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn generalized_eigen(s: &DMatrix<f64>, m: Option<&DMatrix<f64>>) -> Result<GeneralizedEigen> {
    let n = s.nrows();
    if n > DENSE_MAX {
        return Err(Error::DimensionTooLarge { n, max: DENSE_MAX });
    }
    let (c, linv_t) = match m {
        None => (s.clone(), None),
        Some(m) => {
            let chol = m.clone().cholesky().ok_or_else(|| {
                Error::InvalidArgument("mass matrix is not positive definite".into())
            })?;
            let l = chol.l();
            let linv = l
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::InvalidArgument("singular Cholesky factor".into()))?;
            let c = &linv * s * linv.transpose();
            (c, Some(linv.transpose()))
        }
    };
    let sym = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut q = DMatrix::<f64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        q.set_column(dst, &eig.eigenvectors.column(src));
    }
    let vectors = match linv_t {
        None => q,
        Some(lt) => lt * q,
    };
    Ok(GeneralizedEigen { values, vectors })
}

/// `Ã^{-α} f` with `Ã = M⁻¹S` (or `Ã = S` without a mass), via the
/// eigen-decomposition `Ã^{-α} = Ψ Λ^{-α} Ψᵀ M`.
pub fn dense_fractional_apply(
    s: &DMatrix<f64>,
    m: Option<&DMatrix<f64>>,
    alpha: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = s.nrows();
    if rhs.len() != n {
        return Err(Error::LengthMismatch { left: n, right: rhs.len() });
    }
    let eig = generalized_eigen(s, m)?;
    Ok(apply_power(&eig, m, -alpha, rhs))
}

/// `Ã^{p} f` from a precomputed decomposition.
pub fn apply_power(eig: &GeneralizedEigen, m: Option<&DMatrix<f64>>, p: f64, rhs: &[f64]) -> Vec<f64> {
    let f = DVector::from_column_slice(rhs);
    let load = match m {
        None => f,
        Some(m) => m * f,
    };
    let mut coef = eig.vectors.tr_mul(&load);
    for (c, &l) in coef.iter_mut().zip(eig.values.iter()) {
        *c *= l.powf(p);
    }
    (&eig.vectors * coef).iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_powers() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 16.0]));
        let u = dense_fractional_apply(&a, None, 0.5, &[1.0, 1.0]).unwrap();
        assert!((u[0] - 1.0).abs() < 1e-15 && (u[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn generalized_vectors_are_mass_orthonormal() {
        let s = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
        let m = DMatrix::from_row_slice(3, 3, &[4.0, 1.0, 0.0, 1.0, 4.0, 1.0, 0.0, 1.0, 4.0]) / 6.0;
        let e = generalized_eigen(&s, Some(&m)).unwrap();
        let g = e.vectors.transpose() * &m * &e.vectors;
        assert!((g - DMatrix::identity(3, 3)).amax() < 1e-13);
        let r = &s * &e.vectors - &m * &e.vectors * DMatrix::from_diagonal(&e.values);
        assert!(r.amax() < 1e-12);
    }

    #[test]
    fn too_large_is_refused() {
        let s = DMatrix::<f64>::identity(DENSE_MAX + 1, 1);
        assert!(matches!(generalized_eigen(&s, None), Err(Error::DimensionTooLarge { .. })));
    }
}
