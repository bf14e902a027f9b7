//! Best uniform rational approximation of `t^γ` on `[0, 1]`.
//!
//! The approximant is kept as a barycentric interpolant through `2k + 1` nodes
//! in `(0, 1)`. Between consecutive nodes (and the endpoints) the error has one
//! local extremum each, `2k + 2` in total; the best approximation is the node
//! set for which all of them have equal magnitude. The node positions are
//! parametrized by the logarithms of the `2k + 2` interval lengths and the
//! log-extrema are equalized by a damped Gauss-Newton iteration with a
//! finite-difference Jacobian. Degrees are reached by continuation from `k = 1`.

use nalgebra::{DMatrix, DVector};

use super::barycentric::Barycentric;
use crate::error::{Error, Result};

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const MAX_NEWTON: usize = 200;

/// One equalized interpolant together with its local error extrema.
#[derive(Debug, Clone)]
pub(crate) struct Equalized {
    pub interpolant: Barycentric,
    /// `(t, r(t) - t^γ)` at the extremum of each of the `2k + 2` intervals.
    pub extrema: Vec<(f64, f64)>,
    pub deviation: f64,
}

struct Problem {
    gamma: f64,
}

impl Problem {
    fn target(&self, t: f64) -> f64 {
        t.powf(self.gamma)
    }

    fn nodes(log_lengths: &[f64]) -> Vec<f64> {
        let top = log_lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lengths: Vec<f64> = log_lengths.iter().map(|&y| (y - top).exp()).collect();
        let total: f64 = lengths.iter().sum();
        let mut acc = 0.0;
        lengths[..lengths.len() - 1]
            .iter()
            .map(|l| {
                acc += l / total;
                acc
            })
            .collect()
    }

    fn interpolant(&self, nodes: &[f64]) -> Barycentric {
        Barycentric::interpolate(nodes, |t| self.target(t))
    }

    fn extrema(&self, r: &Barycentric, nodes: &[f64]) -> Vec<(f64, f64)> {
        interval_extrema(|t| r.eval(t) - self.target(t), nodes)
    }

    fn evaluate(&self, log_lengths: &[f64]) -> Option<Equalized> {
        let nodes = Self::nodes(log_lengths);
        if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] <= 0.0 || *nodes.last()? >= 1.0 {
            return None;
        }
        let interpolant = self.interpolant(&nodes);
        let extrema = self.extrema(&interpolant, &nodes);
        let mags: Vec<f64> = extrema.iter().map(|e| e.1.abs()).collect();
        if mags.iter().any(|m| !m.is_finite() || *m == 0.0) {
            return None;
        }
        let deviation = deviation(&extrema);
        Some(Equalized { interpolant, extrema, deviation })
    }
}

/// Signed extremum of `err` on each interval `[0, x_1], …, [x_n, 1]`.
pub(crate) fn interval_extrema(err: impl Fn(f64) -> f64, nodes: &[f64]) -> Vec<(f64, f64)> {
    let n = nodes.len();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let a = if j == 0 { 0.0 } else { nodes[j - 1] };
        let b = if j == n { 1.0 } else { nodes[j] };
        let mut best = if j == 0 {
            let inner = golden_max(&err, b * 1e-12, b, true);
            let at0 = (0.0, err(0.0));
            if at0.1.abs() >= inner.1.abs() { at0 } else { inner }
        } else {
            golden_max(&err, a, b, b > 2.0 * a)
        };
        if j == n {
            let at1 = (1.0, err(1.0));
            if at1.1.abs() >= best.1.abs() {
                best = at1;
            }
        }
        out.push(best);
    }
    out
}

/// `(max - min) / max` of the extremum magnitudes.
pub(crate) fn deviation(extrema: &[(f64, f64)]) -> f64 {
    let max = extrema.iter().fold(0.0f64, |m, e| m.max(e.1.abs()));
    let min = extrema.iter().fold(f64::INFINITY, |m, e| m.min(e.1.abs()));
    (max - min) / max
}

fn centered_log(extrema: &[(f64, f64)]) -> DVector<f64> {
    let logs: Vec<f64> = extrema.iter().map(|e| e.1.abs().ln()).collect();
    let mean = logs.iter().sum::<f64>() / logs.len() as f64;
    DVector::from_iterator(logs.len(), logs.iter().map(|l| l - mean))
}

/// Golden-section search for the largest `|g|` on `[a, b]`, optionally in `ln t`.
fn golden_max(g: &impl Fn(f64) -> f64, a: f64, b: f64, log_scale: bool) -> (f64, f64) {
    let map = |s: f64| if log_scale { s.exp() } else { s };
    let (mut lo, mut hi) = if log_scale { (a.ln(), b.ln()) } else { (a, b) };
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = g(map(x1));
    let mut f2 = g(map(x2));
    for _ in 0..72 {
        if f1.abs() < f2.abs() {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = g(map(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = g(map(x1));
        }
    }
    if f1.abs() >= f2.abs() { (map(x1), f1) } else { (map(x2), f2) }
}

/// Equalizes the extrema for one degree starting from `log_lengths`.
fn equalize(problem: &Problem, mut y: Vec<f64>, tol: f64) -> Result<(Vec<f64>, Equalized)> {
    let mut state = problem
        .evaluate(&y)
        .ok_or(Error::NonConvergence { iterations: 0, best_deviation: f64::INFINITY })?;
    let n = y.len();
    for iter in 0..MAX_NEWTON {
        if state.deviation <= tol {
            return Ok((y, state));
        }
        let g = centered_log(&state.extrema);
        let step: DVector<f64> = if state.deviation > 0.5 {
            // far away: plain interval-length rescaling
            -0.5 * &g
        } else {
            let h = 1e-6;
            let mut jac = DMatrix::<f64>::zeros(n, n);
            for j in 0..n {
                let mut yp = y.clone();
                yp[j] += h;
                let probe = problem.evaluate(&yp).ok_or(Error::NonConvergence {
                    iterations: iter,
                    best_deviation: state.deviation,
                })?;
                let gp = centered_log(&probe.extrema);
                jac.set_column(j, &((gp - &g) / h));
            }
            let svd = jac.svd(true, true);
            let cutoff = 1e-10 * svd.singular_values.max();
            svd.solve(&(-&g), cutoff).map_err(|_| Error::NonConvergence {
                iterations: iter,
                best_deviation: state.deviation,
            })?
        };
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-4 {
            let trial: Vec<f64> = y.iter().zip(step.iter()).map(|(a, s)| a + t * s).collect();
            if let Some(next) = problem.evaluate(&trial) {
                if next.deviation < state.deviation {
                    accepted = Some((trial, next));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((trial, next)) => {
                y = trial;
                state = next;
            }
            None => {
                return Err(Error::NonConvergence { iterations: iter, best_deviation: state.deviation })
            }
        }
    }
    if state.deviation <= tol {
        Ok((y, state))
    } else {
        Err(Error::NonConvergence { iterations: MAX_NEWTON, best_deviation: state.deviation })
    }
}

/// Equalized interpolant of degree `k`, reached by continuation in the degree.
pub(crate) fn equalized(gamma: f64, k: usize, tol: f64) -> Result<Equalized> {
    let problem = Problem { gamma };
    // Degree 0: a single node, two intervals.
    let mut y = vec![0.0, 0.0];
    let (mut y_prev, mut state) = equalize(&problem, y.clone(), tol)?;
    for _ in 1..=k {
        // Extra extrema appear next to the origin: prepend two intervals that
        // continue the geometric grading of the smallest ones.
        let spacing = if y_prev.len() > 2 { (y_prev[1] - y_prev[0]).max(0.5) } else { 2.0 };
        y = Vec::with_capacity(y_prev.len() + 2);
        y.push(y_prev[0] - 2.0 * spacing);
        y.push(y_prev[0] - spacing);
        y.extend_from_slice(&y_prev);
        let (yn, sn) = equalize(&problem, y, tol)?;
        y_prev = yn;
        state = sn;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_the_midrange_constant() {
        let s = equalized(0.5, 0, 1e-12).unwrap();
        assert_eq!(s.extrema.len(), 2);
        assert!((s.interpolant.eval(0.3) - 0.5).abs() < 1e-12);
        for e in &s.extrema {
            assert!((e.1.abs() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn extrema_alternate_in_sign() {
        let s = equalized(0.5, 4, 1e-10).unwrap();
        assert_eq!(s.extrema.len(), 10);
        for w in s.extrema.windows(2) {
            assert!(w[0].1 * w[1].1 < 0.0);
        }
        assert_eq!(s.extrema[0].0, 0.0);
        assert_eq!(s.extrema.last().unwrap().0, 1.0);
    }
}
