//! Shifted solves `(A + c M) x = b`.

use super::dst::Dst1;
use super::operator::{Mass, SpdOperator, Storage};
use crate::error::{Error, Result};
use crate::scalar::{axpy, dot, norm2, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative residual target for conjugate gradients.
    pub tol: f64,
    /// Diagonal (Jacobi) preconditioning for conjugate gradients.
    pub jacobi: bool,
    /// Known lower bound of the spectrum of `A`, used for the iteration cap.
    pub lower_bound: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: 1e-12, jacobi: false, lower_bound: None }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Solves `(A + c M) x = rhs`, with `M = I` when no mass is given.
///
/// Tridiagonal systems are factored directly, the 5-point Kronecker sum is
/// diagonalized by sine transforms, everything else goes through CG.
pub fn shifted_solve<T: Real>(
    a: &SpdOperator<T>,
    c: T,
    mass: Option<&Mass<T>>,
    rhs: &[T],
    opts: &SolveOptions,
) -> Result<Vec<T>> {
    let n = a.dim();
    if rhs.len() != n {
        return Err(Error::LengthMismatch { left: n, right: rhs.len() });
    }
    if let Some(m) = mass {
        if m.dim() != n {
            return Err(Error::LengthMismatch { left: n, right: m.dim() });
        }
    }
    if let Some((diag, off)) = combined_tridiagonal(a, c, mass) {
        return thomas(&diag, &off, rhs);
    }
    if let Storage::KroneckerSum { n: side, diag, off } = a.storage() {
        let scale = match mass {
            None => Some(T::one()),
            Some(Mass::Diagonal(d)) if d.iter().all(|&x| x == d[0]) => Some(d[0]),
            _ => None,
        };
        if let Some(s) = scale {
            return Ok(kronecker_solve(*side, diag.as_f64(), off.as_f64(), (c * s).as_f64(), rhs));
        }
    }
    conjugate_gradient(a, c, mass, rhs, opts)
}

fn combined_tridiagonal<T: Real>(a: &SpdOperator<T>, c: T, mass: Option<&Mass<T>>) -> Option<(Vec<T>, Vec<T>)> {
    let Storage::Tridiagonal { diag, off } = a.storage() else { return None };
    let mut d = diag.clone();
    let mut o = off.clone();
    match mass {
        None => d.iter_mut().for_each(|x| *x = *x + c),
        Some(Mass::Diagonal(m)) => d.iter_mut().zip(m).for_each(|(x, &mi)| *x = *x + c * mi),
        Some(Mass::Matrix(m)) => {
            let Storage::Tridiagonal { diag: md, off: mo } = m.storage() else { return None };
            d.iter_mut().zip(md).for_each(|(x, &mi)| *x = *x + c * mi);
            o.iter_mut().zip(mo).for_each(|(x, &mi)| *x = *x + c * mi);
        }
    }
    Some((d, o))
}

/// `L D Lᵀ` factorization and solve of a symmetric tridiagonal system.
pub fn thomas<T: Real>(diag: &[T], off: &[T], rhs: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    let mut piv = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let (p, v) = if i == 0 {
            (diag[0], rhs[0])
        } else {
            let l = off[i - 1] / piv[i - 1];
            (diag[i] - l * off[i - 1], rhs[i] - l * y[i - 1])
        };
        if !(p > T::zero()) {
            return Err(Error::NonPositivePivot { row: i, pivot: p.as_f64() });
        }
        piv.push(p);
        y.push(v);
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let next = if i + 1 < n { off[i] * x[i + 1] } else { T::zero() };
        x[i] = (y[i] - next) / piv[i];
    }
    Ok(x)
}

/// `(T ⊗ I + I ⊗ T + shift I) x = rhs` by sine transforms in both directions.
fn kronecker_solve<T: Real>(n: usize, diag: f64, off: f64, shift: f64, rhs: &[T]) -> Vec<T> {
    let dst = Dst1::new(n);
    let mu: Vec<f64> = (1..=n)
        .map(|j| diag + 2.0 * off * (std::f64::consts::PI * j as f64 / (n + 1) as f64).cos())
        .collect();
    let mut x: Vec<f64> = rhs.iter().map(|v| v.as_f64()).collect();
    dst.apply_2d(&mut x);
    let norm = (2.0 / (n + 1) as f64).powi(2);
    for r in 0..n {
        for c in 0..n {
            x[r * n + c] *= norm / (mu[r] + mu[c] + shift);
        }
    }
    dst.apply_2d(&mut x);
    x.into_iter().map(T::of).collect()
}

fn conjugate_gradient<T: Real>(
    a: &SpdOperator<T>,
    c: T,
    mass: Option<&Mass<T>>,
    rhs: &[T],
    opts: &SolveOptions,
) -> Result<Vec<T>> {
    let n = a.dim();
    let tol = opts.tol.max(50.0 * T::epsilon().as_f64());
    let apply = |x: &[T], y: &mut [T]| {
        a.apply(x, y);
        if c != T::zero() {
            let mx = match mass {
                Some(m) => m.mul(x),
                None => x.to_vec(),
            };
            axpy(c, &mx, y);
        }
    };
    let mass_diag: Vec<T> = mass.map_or_else(|| vec![T::one(); n], |m| m.diagonal());
    let precond: Option<Vec<T>> = opts.jacobi.then(|| {
        a.diagonal().iter().zip(&mass_diag).map(|(&d, &m)| T::one() / (d + c * m)).collect()
    });
    let cap = iteration_cap(a, c, mass, &mass_diag, opts.lower_bound, tol);

    let bnorm = norm2(rhs);
    let mut x = vec![T::zero(); n];
    if bnorm == T::zero() {
        return Ok(x);
    }
    let mut r = rhs.to_vec();
    let precondition = |r: &[T]| match &precond {
        Some(p) => r.iter().zip(p).map(|(&a, &b)| a * b).collect(),
        None => r.to_vec(),
    };
    let mut z = precondition(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![T::zero(); n];
    let target = T::of(tol) * bnorm;
    for it in 0..cap {
        apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > T::zero()) {
            return Err(Error::NotConverged { iterations: it, residual: (norm2(&r) / bnorm).as_f64() });
        }
        let step = rz / pap;
        axpy(step, &p, &mut x);
        axpy(-step, &ap, &mut r);
        if norm2(&r) <= target {
            // confirm against the true residual
            let mut ax = vec![T::zero(); n];
            apply(&x, &mut ax);
            let true_res: Vec<T> = rhs.iter().zip(&ax).map(|(&b, &y)| b - y).collect();
            if norm2(&true_res) <= target * T::of(10.0) {
                return Ok(x);
            }
            r = true_res;
        }
        z = precondition(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for (pi, &zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }
    Err(Error::NotConverged { iterations: cap, residual: (norm2(&r) / bnorm).as_f64() })
}

/// `⌈√κ · max(10, ln(2/tol)/2)⌉`, the CG error bound solved for the iteration
/// count, with `κ` from the Gershgorin bound over a lower spectral bound.
fn iteration_cap<T: Real>(
    a: &SpdOperator<T>,
    c: T,
    mass: Option<&Mass<T>>,
    mass_diag: &[T],
    lower_bound: Option<f64>,
    tol: f64,
) -> usize {
    let c = c.as_f64();
    let mass_upper = match mass {
        None => 1.0,
        Some(Mass::Diagonal(d)) => d.iter().fold(0.0f64, |m, x| m.max(x.as_f64())),
        Some(Mass::Matrix(m)) => m.gershgorin_bound().as_f64(),
    };
    let upper = a.gershgorin_bound().as_f64() + c.abs() * mass_upper;
    let mass_lower = match mass {
        None => 1.0,
        Some(Mass::Diagonal(_)) => mass_diag.iter().fold(f64::INFINITY, |m, x| m.min(x.as_f64())),
        Some(Mass::Matrix(_)) => 0.0,
    };
    let lower = lower_bound.unwrap_or(0.0) + c.max(0.0) * mass_lower;
    if lower > 0.0 {
        let kappa = (upper / lower).max(1.0);
        (kappa.sqrt() * (10.0f64).max(0.5 * (2.0 / tol).ln())).ceil() as usize + 10
    } else {
        10 * a.dim() + 10
    }
}
