//! Best uniform rational approximations of `t^γ` on `[0, 1]` and their
//! partial-fraction and product forms.

mod barycentric;
mod forms;
mod minimax;
mod roots;
mod table;

pub use barycentric::Barycentric;
pub use forms::{to_additive_form, to_multiplicative_form, FractionForm};
pub use table::{load_coefficients, read_table, write_table};

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 12;
/// Default equioscillation tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Best uniform rational approximation `r_{γ,k}` of `t^γ` on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct RationalMinimax {
    gamma: f64,
    degree: usize,
    barycentric: Barycentric,
    error: f64,
    /// Closest to zero first: `0 > ζ_1 > ζ_2 > …`.
    zeros: Vec<f64>,
    poles: Vec<f64>,
    b: f64,
    alternation: Vec<(f64, f64)>,
    deviation: f64,
}

/// Computes `r_{γ,k}` for `γ ∈ (0, 1)`, `1 ≤ k ≤ 12`, equioscillating to
/// relative deviation `tol` (at least `10 ε`).
pub fn compute_bura(gamma: f64, k: usize, tol: f64) -> Result<RationalMinimax> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::AlphaOutOfRange(gamma));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::DegenerateDegree(k));
    }
    if !(tol >= 10.0 * f64::EPSILON) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} below 10 machine epsilons")));
    }
    build(gamma, k, tol)
}

pub(crate) fn build(gamma: f64, k: usize, tol: f64) -> Result<RationalMinimax> {
    let eq = minimax::equalized(gamma, k, tol)?;
    let barycentric = eq.interpolant;
    let (zeros, poles) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        extract_roots(&barycentric, k)?
    };
    let one = barycentric.eval(1.0);
    let b = zeros
        .iter()
        .zip(&poles)
        .fold(one, |acc, (&z, &d)| acc * (1.0 - d) / (1.0 - z));
    let error = eq.extrema.iter().fold(0.0f64, |m, e| m.max(e.1.abs()));
    let r = RationalMinimax {
        gamma,
        degree: k,
        barycentric,
        error,
        zeros,
        poles,
        b,
        alternation: eq.extrema,
        deviation: eq.deviation,
    };
    r.check_interlacing()?;
    Ok(r)
}

fn extract_roots(r: &Barycentric, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let lo = 1e-300_f64.max(1e-6 * r.support.iter().copied().filter(|&z| z > 0.0).fold(1.0, f64::min));
    let hi = 1e12;
    let den = |x: f64| r.denominator(x);
    let dden = |x: f64| -r.support.iter().zip(&r.weights).map(|(&z, &w)| w / ((x - z) * (x - z))).sum::<f64>();
    let num = |x: f64| r.numerator(x);
    let dnum = |x: f64| {
        -r.support
            .iter()
            .zip(&r.weights)
            .zip(&r.values)
            .map(|((&z, &w), &f)| w * f / ((x - z) * (x - z)))
            .sum::<f64>()
    };
    let poles = roots::negative_roots(den, dden, k, lo, hi)
        .ok_or_else(|| Error::InterlacingViolated(format!("expected {k} negative poles")))?;
    let zeros = roots::negative_roots(num, dnum, k, lo, hi)
        .ok_or_else(|| Error::InterlacingViolated(format!("expected {k} negative zeros")))?;
    Ok((zeros, poles))
}

impl RationalMinimax {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `E_{γ,k} = max_{t∈[0,1]} |r(t) - t^γ|`.
    pub fn error(&self) -> f64 {
        self.error
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn leading_coefficient(&self) -> f64 {
        self.b
    }

    pub fn barycentric(&self) -> &Barycentric {
        &self.barycentric
    }

    /// Error extrema `(t, r(t) - t^γ)`, one per alternation interval.
    pub fn alternation(&self) -> &[(f64, f64)] {
        &self.alternation
    }

    /// `(max - min) / max` over the alternation magnitudes.
    pub fn deviation(&self) -> f64 {
        self.deviation
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.barycentric.eval(t)
    }

    /// `b Π (t - ζ_i) / (t - d_i)`.
    pub fn eval_product(&self, t: f64) -> f64 {
        self.zeros
            .iter()
            .zip(&self.poles)
            .fold(self.b, |acc, (&z, &d)| acc * (t - z) / (t - d))
    }

    /// `r(1/λ)`, which approximates `λ^{-γ}` for `λ ≥ 1`.
    pub fn eval_reciprocal(&self, lambda: f64) -> f64 {
        self.eval(1.0 / lambda)
    }

    /// Checks `0 > ζ_1 > d_1 > ζ_2 > d_2 > … > ζ_k > d_k` and `b > 0`.
    pub fn check_interlacing(&self) -> Result<()> {
        check_interlacing(&self.zeros, &self.poles)?;
        if !(self.b > 0.0) && self.degree > 0 {
            return Err(Error::InterlacingViolated(format!("leading coefficient {}", self.b)));
        }
        Ok(())
    }

    /// Largest `|r(t) - t^γ|` over `n` samples, mixing log and uniform spacing.
    pub fn sampled_error(&self, n: usize) -> f64 {
        let tmin: f64 = 1e-16;
        let mut m = self.eval(0.0).abs();
        for i in 0..=n {
            let s = i as f64 / n as f64;
            for t in [tmin.powf(1.0 - s), s] {
                m = m.max((self.eval(t) - t.powf(self.gamma)).abs());
            }
        }
        m
    }

    pub(crate) fn from_parts(gamma: f64, zeros: Vec<f64>, poles: Vec<f64>, b: f64, error: f64) -> Result<Self> {
        let k = zeros.len();
        check_interlacing(&zeros, &poles)?;
        let support: Vec<f64> = (0..=k).map(|j| (j as f64 / k.max(1) as f64).max(0.0)).collect();
        let barycentric = Barycentric::from_product(&zeros, &poles, b, support);
        Ok(Self {
            gamma,
            degree: k,
            barycentric,
            error,
            zeros,
            poles,
            b,
            alternation: Vec::new(),
            deviation: f64::NAN,
        })
    }

    pub(crate) fn set_alternation(&mut self, alternation: Vec<(f64, f64)>, deviation: f64) {
        self.alternation = alternation;
        self.deviation = deviation;
    }
}

pub(crate) fn check_interlacing(zeros: &[f64], poles: &[f64]) -> Result<()> {
    if zeros.len() != poles.len() {
        return Err(Error::InterlacingViolated(format!(
            "{} zeros vs {} poles",
            zeros.len(),
            poles.len()
        )));
    }
    let mut prev = 0.0;
    for (i, (&z, &d)) in zeros.iter().zip(poles).enumerate() {
        if !(z < prev && d < z) {
            return Err(Error::InterlacingViolated(format!(
                "pair {i}: zero {z}, pole {d}, previous {prev}"
            )));
        }
        prev = d;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(compute_bura(0.5, 0, 1e-6), Err(Error::DegenerateDegree(0))));
        assert!(matches!(compute_bura(0.5, 13, 1e-6), Err(Error::DegenerateDegree(13))));
        assert!(matches!(compute_bura(1.5, 3, 1e-6), Err(Error::AlphaOutOfRange(_))));
        assert!(compute_bura(0.5, 3, 1e-17).is_err());
    }

    #[test]
    fn degree_zero_internal_path() {
        let r = build(0.5, 0, 1e-12).unwrap();
        assert!((r.error() - 0.5).abs() < 1e-12);
        assert!((r.eval(0.9) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_form_agrees_with_barycentric() {
        let r = compute_bura(0.5, 5, 1e-10).unwrap();
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let d = (r.eval(t) - r.eval_product(t)).abs();
            assert!(d < 1e-12, "t = {t}: {d}");
        }
    }

    #[test]
    fn error_is_certified_by_sampling() {
        let r = compute_bura(0.25, 4, 1e-10).unwrap();
        let s = r.sampled_error(4000);
        assert!(s <= r.error() * (1.0 + 1e-8));
        assert!(s >= r.error() * (1.0 - 1e-3));
    }
}
