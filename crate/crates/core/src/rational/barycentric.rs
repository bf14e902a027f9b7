//! Barycentric representation of a type-(k, k) rational function.
//!
//! `r(x) = Σ w_j f_j / (x - z_j) / Σ w_j / (x - z_j)`, with support points `z_j`
//! placed where the rational interpolates the target. Keeping the support points
//! on the interpolation nodes is what makes the representation usable in double
//! precision when the nodes cluster geometrically at the origin.

use nalgebra::DMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Barycentric {
    pub(crate) support: Vec<f64>,
    pub(crate) values: Vec<f64>,
    pub(crate) weights: Vec<f64>,
}

impl Barycentric {
    pub fn new(support: Vec<f64>, values: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(support.len(), values.len());
        assert_eq!(support.len(), weights.len());
        Self { support, values, weights }
    }

    /// Rational interpolant of type (k, k) through the `2k + 1` increasing `nodes`.
    ///
    /// Even-indexed nodes become support points; the odd-indexed ones pin the
    /// weights through the null vector of the Loewner matrix.
    pub fn interpolate(nodes: &[f64], f: impl Fn(f64) -> f64) -> Self {
        assert!(nodes.len() % 2 == 1, "need 2k + 1 interpolation nodes");
        let support: Vec<f64> = nodes.iter().step_by(2).copied().collect();
        let values: Vec<f64> = support.iter().map(|&z| f(z)).collect();
        let test: Vec<f64> = nodes.iter().skip(1).step_by(2).copied().collect();
        let k = test.len();
        if k == 0 {
            return Self::new(support, values, vec![1.0]);
        }
        let test_values: Vec<f64> = test.iter().map(|&y| f(y)).collect();

        let mut loewner = DMatrix::<f64>::zeros(k + 1, k + 1);
        for (i, (&y, &fy)) in test.iter().zip(&test_values).enumerate() {
            for (j, (&z, &fz)) in support.iter().zip(&values).enumerate() {
                loewner[(i, j)] = (fy - fz) / (y - z);
            }
        }
        // Two-sided equilibration: the Loewner matrix is strongly graded when
        // nodes span many decades, and the SVD is only normwise accurate.
        let mut col_scale = vec![1.0; k + 1];
        for _ in 0..6 {
            for i in 0..k {
                let s = loewner.row(i).norm();
                if s > 0.0 {
                    loewner.row_mut(i).scale_mut(1.0 / s);
                }
            }
            for (j, cs) in col_scale.iter_mut().enumerate() {
                let s = loewner.column(j).norm();
                if s > 0.0 {
                    loewner.column_mut(j).scale_mut(1.0 / s);
                    *cs /= s;
                }
            }
        }
        let svd = loewner.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let (imin, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty spectrum");
        let weights: Vec<f64> = (0..=k).map(|j| v_t[(imin, j)] * col_scale[j]).collect();
        Self::new(support, values, weights)
    }

    /// Barycentric form of `b Π (x - ζ_i) / (x - d_i)` on the given support points.
    pub fn from_product(zeros: &[f64], poles: &[f64], b: f64, support: Vec<f64>) -> Self {
        let eval = |x: f64| {
            zeros
                .iter()
                .zip(poles)
                .fold(b, |acc, (&zeta, &d)| acc * (x - zeta) / (x - d))
        };
        let values: Vec<f64> = support.iter().map(|&z| eval(z)).collect();
        let mut weights: Vec<f64> = support
            .iter()
            .enumerate()
            .map(|(j, &zj)| {
                let q: f64 = poles.iter().map(|&d| zj - d).product();
                let node: f64 = support
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &zi)| zj - zi)
                    .product();
                q / node
            })
            .collect();
        let scale = weights.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        weights.iter_mut().for_each(|w| *w /= scale);
        Self::new(support, values, weights)
    }

    pub fn degree(&self) -> usize {
        self.support.len() - 1
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&z, &f), &w) in self.support.iter().zip(&self.values).zip(&self.weights) {
            let d = x - z;
            if d == 0.0 {
                return f;
            }
            let c = w / d;
            num += c * f;
            den += c;
        }
        num / den
    }

    /// `Σ w_j / (x - z_j)`; its real roots are the poles of the rational.
    pub fn denominator(&self, x: f64) -> f64 {
        self.support.iter().zip(&self.weights).map(|(&z, &w)| w / (x - z)).sum()
    }

    /// `Σ w_j f_j / (x - z_j)`; its real roots are the zeros of the rational.
    pub fn numerator(&self, x: f64) -> f64 {
        self.support
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&z, &w), &f)| w * f / (x - z))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_at_every_node() {
        let nodes = [0.01, 0.05, 0.2, 0.4, 0.7];
        let f = |x: f64| x.sqrt();
        let r = Barycentric::interpolate(&nodes, f);
        assert_eq!(r.degree(), 2);
        for &x in &nodes {
            assert!((r.eval(x) - f(x)).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn reproduces_a_rational_exactly() {
        // (x + 1) / (x + 2) is type (1, 1): any three nodes recover it.
        let f = |x: f64| (x + 1.0) / (x + 2.0);
        let r = Barycentric::interpolate(&[0.1, 0.3, 0.9], f);
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((r.eval(x) - f(x)).abs() < 1e-14);
        }
        let pole = -2.0;
        assert!(r.denominator(pole).abs() < 1e-12 * r.denominator(pole - 1.0).abs().max(1.0));
    }

    #[test]
    fn product_form_round_trip() {
        let zeros = [-0.01, -0.5];
        let poles = [-0.02, -1.5];
        let b = 1.3;
        let r = Barycentric::from_product(&zeros, &poles, b, vec![0.0, 0.3, 1.0]);
        let direct = |x: f64| b * (x + 0.01) * (x + 0.5) / ((x + 0.02) * (x + 1.5));
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            assert!((r.eval(x) - direct(x)).abs() < 1e-14);
        }
    }
}
