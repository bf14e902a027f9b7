//! Error norms and the entrywise study of `M Ã^α`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{generalized_eigen, GeneralizedEigen};

/// Absolute and relative distances between a solution and a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l2_abs: f64,
    pub l2_rel: f64,
    pub linf_rel: f64,
}

/// Euclidean and max-norm errors of `w` against `reference`.
///
/// With `weights`, the 2-norms become `(Σ w_i e_i²)^{1/2}`, the mesh-function
/// L₂ norm for trapezoid or lumped weights.
pub fn error_norms(w: &[f64], reference: &[f64], weights: Option<&[f64]>) -> Result<ErrorNorms> {
    if w.len() != reference.len() {
        return Err(Error::LengthMismatch { left: w.len(), right: reference.len() });
    }
    if let Some(wt) = weights {
        if wt.len() != w.len() {
            return Err(Error::LengthMismatch { left: w.len(), right: wt.len() });
        }
    }
    let weight = |i: usize| weights.map_or(1.0, |wt| wt[i]);
    let mut err2 = 0.0;
    let mut ref2 = 0.0;
    let mut err_inf = 0.0f64;
    let mut ref_inf = 0.0f64;
    for i in 0..w.len() {
        let e = w[i] - reference[i];
        err2 += weight(i) * e * e;
        ref2 += weight(i) * reference[i] * reference[i];
        err_inf = err_inf.max(e.abs());
        ref_inf = ref_inf.max(reference[i].abs());
    }
    if ref2 == 0.0 || ref_inf == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(ErrorNorms { l2_abs: err2.sqrt(), l2_rel: (err2 / ref2).sqrt(), linf_rel: err_inf / ref_inf })
}

/// Entrywise summary of `M Ã^α`, `Ã = M⁻¹S`.
#[derive(Debug, Clone, PartialEq)]
pub struct MmatrixReport {
    pub alpha: f64,
    pub dim: usize,
    pub min_row_sum: f64,
    pub max_row_sum: f64,
    /// Largest off-diagonal entry.
    pub max_off_diagonal: f64,
    pub min_diagonal: f64,
    /// Positive diagonal and no positive off-diagonal entry.
    pub is_m_matrix: bool,
}

/// Builds `M Ã^α = (MΨ) Λ^α (MΨ)ᵀ` from `S ψ = λ M ψ` and summarizes it.
pub fn mmatrix_study(s: &DMatrix<f64>, m: &DMatrix<f64>, alpha: f64) -> Result<MmatrixReport> {
    let b = mass_fractional_power(s, m, alpha)?;
    Ok(summarize(&b, alpha))
}

/// Dense `M Ã^α`.
pub fn mass_fractional_power(s: &DMatrix<f64>, m: &DMatrix<f64>, alpha: f64) -> Result<DMatrix<f64>> {
    Ok(mass_power_from_eigen(&generalized_eigen(s, Some(m))?, m, alpha))
}

/// `M Ã^α` from a precomputed decomposition of `S ψ = λ M ψ`.
pub fn mass_power_from_eigen(eig: &GeneralizedEigen, m: &DMatrix<f64>, alpha: f64) -> DMatrix<f64> {
    let mpsi = m * &eig.vectors;
    let mut scaled = mpsi.clone();
    for (j, &l) in eig.values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(l.powf(alpha));
    }
    scaled * mpsi.transpose()
}

pub fn summarize(b: &DMatrix<f64>, alpha: f64) -> MmatrixReport {
    let n = b.nrows();
    let mut min_row = f64::INFINITY;
    let mut max_row = f64::NEG_INFINITY;
    let mut max_off = f64::NEG_INFINITY;
    let mut min_diag = f64::INFINITY;
    for i in 0..n {
        let row: f64 = b.row(i).iter().sum();
        min_row = min_row.min(row);
        max_row = max_row.max(row);
        for j in 0..n {
            if i == j {
                min_diag = min_diag.min(b[(i, j)]);
            } else {
                max_off = max_off.max(b[(i, j)]);
            }
        }
    }
    MmatrixReport {
        alpha,
        dim: n,
        min_row_sum: min_row,
        max_row_sum: max_row,
        max_off_diagonal: max_off,
        min_diagonal: min_diag,
        is_m_matrix: min_diag > 0.0 && max_off <= 0.0,
    }
}
