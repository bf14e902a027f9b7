//! Fully discrete solvers for `Ã^α ũ = f̃`.
//!
//! Every method is written for the pencil `(S, M)` and the load `F`: finite
//! differences use `S = Ã`, `M = I`, `F = f̃`, and the finite-element schemes
//! use `Ã = M⁻¹S`, so `(Ã + cI)⁻¹ f̃ = (S + cM)⁻¹ F`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::diagnostics::{error_norms, ErrorNorms};
use crate::discretize::{DiscreteProblem, Scheme};
use crate::error::{Error, Result};
use crate::linalg::{shifted_solve, SolveOptions};
use crate::rational::FractionForm;
use crate::scalar::{axpy, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    PBuraAdditive,
    PBuraMultiplicative,
    BuraOrig,
    QMethod,
    KPrimeQMethod,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PBuraAdditive => "pbura",
            Self::PBuraMultiplicative => "pbura-mult",
            Self::BuraOrig => "bura",
            Self::QMethod => "q",
            Self::KPrimeQMethod => "kprime-q",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    pub method: Method,
    pub solution: Vec<T>,
    pub systems_solved: usize,
    pub wall_time: Duration,
    pub errors: Option<ErrorNorms>,
}

impl<T: Real> SolveReport<T> {
    pub fn solution_f64(&self) -> Vec<f64> {
        self.solution.iter().map(|v| v.as_f64()).collect()
    }

    /// Records the error against `reference`, optionally mesh-weighted.
    pub fn compare(mut self, reference: &[f64], weights: Option<&[f64]>) -> Result<Self> {
        self.errors = Some(error_norms(&self.solution_f64(), reference, weights)?);
        Ok(self)
    }
}

struct Pencil<'a, T> {
    problem: &'a DiscreteProblem<T>,
    opts: SolveOptions,
    solves: usize,
}

impl<'a, T: Real> Pencil<'a, T> {
    fn new(problem: &'a DiscreteProblem<T>, opts: &SolveOptions) -> Self {
        let mut opts = *opts;
        if problem.mass.is_none() && opts.lower_bound.is_none() {
            opts.lower_bound = Some(problem.bounds.lambda1.deflated());
        }
        Self { problem, opts, solves: 0 }
    }

    /// `(S + c M)⁻¹ x`.
    fn solve(&mut self, c: T, x: &[T]) -> Result<Vec<T>> {
        self.solves += 1;
        shifted_solve(&self.problem.stiffness, c, self.problem.mass.as_ref(), x, &self.opts)
    }

    fn mass_apply(&self, x: &[T]) -> Vec<T> {
        match &self.problem.mass {
            None => x.to_vec(),
            Some(m) => m.mul(x),
        }
    }
}

/// P-BURA: `w̃ = δ^{-α} r_{α,k}(δ Ã⁻¹) f̃` for `0 < δ ≤ λ₁`.
///
/// Additive form: `δ^{-α}(c₀ M⁻¹F + Σ δ c_i (S - δ d̃_i M)⁻¹ F)`.
/// Multiplicative form: `δ^{-α} b M⁻¹ Π (δM - ζ_i S)(δM - d_i S)⁻¹ F`.
pub fn solve_pbura<T: Real>(
    problem: &DiscreteProblem<T>,
    form: &FractionForm<f64>,
    delta: f64,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    let lambda1 = problem.bounds.lambda1.value;
    if !(delta > 0.0) || delta > lambda1 {
        return Err(Error::SpectrumViolation { delta, lambda1 });
    }
    let start = Instant::now();
    let alpha = form.gamma();
    let scale = T::of(delta.powf(-alpha));
    let d = T::of(delta);
    let load = &problem.rhs;
    let mut pencil = Pencil::new(problem, opts);
    let (method, solution) = match form.cast::<T>() {
        FractionForm::Additive(a) => {
            let mut w = problem.mass_solve(load)?;
            w.iter_mut().for_each(|v| *v = *v * a.c0);
            for (&c, &p) in a.residues.iter().zip(&a.shifted_poles) {
                let y = pencil.solve(-d * p, load)?;
                axpy(d * c, &y, &mut w);
            }
            w.iter_mut().for_each(|v| *v = *v * scale);
            (Method::PBuraAdditive, w)
        }
        FractionForm::Multiplicative(m) => {
            let mut x = load.clone();
            for &(z, p) in &m.factors {
                let mut y = pencil.solve(-d / p, &x)?;
                let inv = T::one() / p.abs();
                y.iter_mut().for_each(|v| *v = *v * inv);
                let my = pencil.mass_apply(&y);
                let sy = problem.stiffness.mul(&y);
                for ((xi, &a), &b) in x.iter_mut().zip(&my).zip(&sy) {
                    *xi = d * a - z * b;
                }
            }
            let mut w = problem.mass_solve(&x)?;
            let f = scale * m.b;
            w.iter_mut().for_each(|v| *v = *v * f);
            (Method::PBuraMultiplicative, w)
        }
    };
    Ok(SolveReport { method, solution, systems_solved: pencil.solves, wall_time: start.elapsed(), errors: None })
}

/// BURA-orig: `ũ ≈ Λ^{1-α} Ã⁻¹ r_{1-α,k}(Ã/Λ) f̃`
/// `= Λ^{1-α}(c₀ S⁻¹F + Σ (-c_i d_i)(S - Λ d_i M)⁻¹ F)`,
/// with `c_i`, `d_i = 1/d̃_i` from the additive form of `r_{1-α,k}`.
pub fn solve_bura_orig<T: Real>(
    problem: &DiscreteProblem<T>,
    r_one_minus_alpha: &FractionForm<f64>,
    lambda_upper: f64,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    let FractionForm::Additive(a) = r_one_minus_alpha else {
        return Err(Error::InvalidArgument("BURA-orig needs the additive form".into()));
    };
    let lambda_n = problem.bounds.lambda_n.value;
    if !(lambda_upper >= lambda_n * (1.0 - 1e-12)) {
        return Err(Error::InvalidArgument(format!(
            "upper bound {lambda_upper} is below the largest eigenvalue estimate {lambda_n}"
        )));
    }
    let start = Instant::now();
    let alpha = 1.0 - a.gamma;
    let big = T::of(lambda_upper);
    let load = &problem.rhs;
    let mut pencil = Pencil::new(problem, opts);
    let mut w = pencil.solve(T::zero(), load)?;
    let c0 = T::of(a.c0);
    w.iter_mut().for_each(|v| *v = *v * c0);
    for (&c, &dt) in a.residues.iter().zip(&a.shifted_poles) {
        let d = 1.0 / dt;
        let y = pencil.solve(-big * T::of(d), load)?;
        axpy(T::of(-c * d), &y, &mut w);
    }
    let scale = T::of(lambda_upper.powf(1.0 - alpha));
    w.iter_mut().for_each(|v| *v = *v * scale);
    Ok(SolveReport {
        method: Method::BuraOrig,
        solution: w,
        systems_solved: pencil.solves,
        wall_time: start.elapsed(),
        errors: None,
    })
}

/// Step and range of the sinc quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QParam {
    /// `m = ⌈(1-α)k⌉`, `M = ⌈αk⌉`, `k' = π / (2√(α(1-α)k))`.
    Degree(usize),
    /// `m = ⌈π²/(4αk'²)⌉`, `M = ⌈π²/(4(1-α)k'²)⌉`.
    Step(f64),
}

/// Quadrature step `k'` and summation range `(m, M)`.
pub fn q_parameters(alpha: f64, param: QParam) -> (f64, usize, usize) {
    match param {
        QParam::Degree(k) => {
            let k = k as f64;
            let kp = PI / (2.0 * (alpha * (1.0 - alpha) * k).sqrt());
            (kp, ((1.0 - alpha) * k).ceil() as usize, (alpha * k).ceil() as usize)
        }
        QParam::Step(kp) => {
            let base = PI * PI / (4.0 * kp * kp);
            // guard against 44.999999 rounding to 45 vs 46 by trimming noise
            let up = |x: f64| (x * (1.0 - 1e-12)).ceil() as usize;
            (kp, up(base / alpha), up(base / (1.0 - alpha)))
        }
    }
}

/// Q-method: `(2k' sin(πα)/π) Σ_{ℓ=-m}^{M} e^{2(α-1)ℓk'} (Ã + e^{-2ℓk'} I)⁻¹ f̃`.
pub fn solve_qmethod<T: Real>(
    problem: &DiscreteProblem<T>,
    alpha: f64,
    param: QParam,
    opts: &SolveOptions,
) -> Result<SolveReport<T>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let start = Instant::now();
    let (kp, m, big_m) = q_parameters(alpha, param);
    let mut pencil = Pencil::new(problem, opts);
    let mut w = vec![T::zero(); problem.dim()];
    for l in -(m as i64)..=(big_m as i64) {
        let y = l as f64 * kp;
        let shift = T::of((-2.0 * y).exp());
        let weight = T::of((2.0 * (alpha - 1.0) * y).exp());
        let x = pencil.solve(shift, &problem.rhs)?;
        axpy(weight, &x, &mut w);
    }
    let scale = T::of(2.0 * kp * (PI * alpha).sin() / PI);
    w.iter_mut().for_each(|v| *v = *v * scale);
    let method = match param {
        QParam::Degree(_) => Method::QMethod,
        QParam::Step(_) => Method::KPrimeQMethod,
    };
    Ok(SolveReport { method, solution: w, systems_solved: pencil.solves, wall_time: start.elapsed(), errors: None })
}

/// Smallest solution entry over a battery of nonnegative loads.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    pub scheme: Scheme,
    pub cases: usize,
    /// Most negative `min_i w_i / ‖F‖∞` over the battery.
    pub worst_scaled_min: f64,
    /// Index into the battery (unit vectors first) attaining it.
    pub worst_case: usize,
    /// `worst_scaled_min ≥ -10 ε`.
    pub nonnegative: bool,
}

/// P-BURA on every unit load `e_j` and every extra load in `battery`.
pub fn check_positivity<T: Real>(
    problem: &DiscreteProblem<T>,
    form: &FractionForm<f64>,
    delta: f64,
    battery: &[Vec<T>],
    opts: &SolveOptions,
) -> Result<PositivityReport> {
    let n = problem.dim();
    let mut worst = f64::INFINITY;
    let mut worst_case = 0;
    let mut cases = 0;
    let units = (0..n).map(|j| {
        let mut e = vec![T::zero(); n];
        e[j] = T::one();
        e
    });
    for (idx, rhs) in units.chain(battery.iter().cloned()).enumerate() {
        if rhs.iter().any(|v| *v < T::zero()) {
            return Err(Error::InvalidArgument(format!("battery load {idx} has a negative entry")));
        }
        let scale = rhs.iter().fold(0.0f64, |m, v| m.max(v.as_f64()));
        cases += 1;
        let p = problem.clone().with_rhs(rhs)?;
        let w = solve_pbura(&p, form, delta, opts)?.solution;
        if scale == 0.0 {
            continue;
        }
        let min = w.iter().fold(f64::INFINITY, |m, v| m.min(v.as_f64())) / scale;
        if min < worst {
            worst = min;
            worst_case = idx;
        }
    }
    let eps = T::epsilon().as_f64();
    Ok(PositivityReport {
        scheme: problem.scheme,
        cases,
        worst_scaled_min: worst,
        worst_case,
        nonnegative: worst >= -10.0 * eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Bound, Mass, SpdOperator, SpectralBounds};
    use crate::discretize::Geometry;
    use crate::rational::{compute_bura, to_additive_form, to_multiplicative_form};

    fn diagonal_problem(d: &[f64], rhs: Vec<f64>) -> DiscreteProblem<f64> {
        let n = d.len();
        let lo = d.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = d.iter().cloned().fold(0.0, f64::max);
        DiscreteProblem {
            scheme: Scheme::Fd,
            stiffness: SpdOperator::tridiagonal(d.to_vec(), vec![0.0; n - 1]),
            mass: None,
            rhs,
            geometry: Geometry::Uniform1D { n },
            bounds: SpectralBounds::new(Bound::exact(lo), Bound::exact(hi)).unwrap(),
        }
    }

    #[test]
    fn eigenvalue_wise_error() {
        let r = compute_bura(0.5, 7, 1e-6).unwrap();
        let p = diagonal_problem(&[1.0, 10.0, 100.0], vec![1.0; 3]);
        let opts = SolveOptions::default();
        for form in [to_additive_form(&r).unwrap(), to_multiplicative_form(&r).unwrap()] {
            let w = solve_pbura(&p, &form, 1.0, &opts).unwrap();
            assert_eq!(w.systems_solved, 7);
            for (wi, l) in w.solution.iter().zip([1.0f64, 10.0, 100.0]) {
                assert!((wi - l.powf(-0.5)).abs() <= r.error() * (1.0 + 1e-8));
                assert!((wi - r.eval(1.0 / l)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn delta_above_lambda1_is_refused() {
        let r = compute_bura(0.5, 3, 1e-6).unwrap();
        let p = diagonal_problem(&[2.0, 3.0], vec![1.0; 2]);
        let e = solve_pbura(&p, &to_additive_form(&r).unwrap(), 2.5, &SolveOptions::default());
        assert!(matches!(e, Err(Error::SpectrumViolation { .. })));
    }

    #[test]
    fn bura_orig_on_identity() {
        let r = compute_bura(0.75, 8, 1e-6).unwrap();
        let p = diagonal_problem(&[1.0; 4], vec![1.0; 4]);
        let w = solve_bura_orig(&p, &to_additive_form(&r).unwrap(), 1.0, &SolveOptions::default()).unwrap();
        assert_eq!(w.systems_solved, 9);
        for wi in &w.solution {
            assert!((wi - r.eval(1.0)).abs() < 1e-13);
            assert!((wi - 1.0).abs() <= r.error() * 1.0001);
        }
    }

    #[test]
    fn q_parameters_match_solve_counts() {
        for (alpha, count) in [(0.25, 120), (0.5, 91), (0.75, 120)] {
            let (_, m, big) = q_parameters(alpha, QParam::Step(1.0 / 3.0));
            assert_eq!(m + big + 1, count, "alpha = {alpha}");
        }
        for alpha in [0.25, 0.5, 0.75] {
            let (_, m, big) = q_parameters(alpha, QParam::Degree(7));
            assert_eq!(m + big + 1, 9);
        }
    }

    #[test]
    fn q_method_scalar_check() {
        let p = diagonal_problem(&[1.0], vec![1.0]);
        let w = solve_qmethod(&p, 0.5, QParam::Step(1.0 / 3.0), &SolveOptions::default()).unwrap();
        assert_eq!(w.systems_solved, 91);
        assert!((w.solution[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn generalized_forms_agree() {
        let r = compute_bura(0.5, 6, 1e-8).unwrap();
        let n = 9;
        let h = 0.1;
        let mut p = diagonal_problem(&[1.0; 9], (0..n).map(|i| 1.0 + i as f64).collect());
        p.stiffness = SpdOperator::tridiagonal(vec![2.0 / h; n], vec![-1.0 / h; n - 1]);
        p.mass = Some(Mass::Matrix(SpdOperator::tridiagonal(vec![4.0 * h / 6.0; n], vec![h / 6.0; n - 1])));
        p.scheme = Scheme::FemConsistent;
        p.bounds = SpectralBounds::new(Bound::exact(9.0), Bound::exact(1e4)).unwrap();
        let opts = SolveOptions::default();
        let a = solve_pbura(&p, &to_additive_form(&r).unwrap(), 9.0, &opts).unwrap().solution;
        let m = solve_pbura(&p, &to_multiplicative_form(&r).unwrap(), 9.0, &opts).unwrap().solution;
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let diff = a.iter().zip(&m).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        assert!(diff <= 1e-11 * norm);
    }
}
