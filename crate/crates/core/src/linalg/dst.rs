//! Discrete sine transform of type I through a real-to-complex FFT of length `2(n + 1)`.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// `X_k = Σ_{j=1}^{n} x_j sin(π j k / (n + 1))`, `k = 1..n`.
///
/// Applying it twice multiplies by `(n + 1) / 2`.
#[derive(Clone)]
pub struct Dst1 {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Dst1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dst1").field("n", &self.n).finish()
    }
}

impl Dst1 {
    pub fn new(n: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(2 * (n + 1));
        Self { n, fft }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Transforms `x` in place.
    pub fn apply(&self, x: &mut [f64]) {
        let mut buf = vec![Complex::new(0.0, 0.0); 2 * (self.n + 1)];
        let mut scratch = vec![Complex::new(0.0, 0.0); self.fft.get_inplace_scratch_len()];
        self.apply_with(x, &mut buf, &mut scratch);
    }

    fn apply_with(&self, x: &mut [f64], buf: &mut [Complex<f64>], scratch: &mut [Complex<f64>]) {
        let n = self.n;
        assert_eq!(x.len(), n);
        let m = 2 * (n + 1);
        buf.iter_mut().for_each(|c| *c = Complex::new(0.0, 0.0));
        for j in 0..n {
            buf[j + 1].re = x[j];
            buf[m - 1 - j].re = -x[j];
        }
        self.fft.process_with_scratch(buf, scratch);
        for k in 0..n {
            x[k] = -0.5 * buf[k + 1].im;
        }
    }

    /// Transforms every row and every column of the row-major `n × n` array.
    pub fn apply_2d(&self, x: &mut [f64]) {
        let n = self.n;
        assert_eq!(x.len(), n * n);
        let mut buf = vec![Complex::new(0.0, 0.0); 2 * (n + 1)];
        let mut scratch = vec![Complex::new(0.0, 0.0); self.fft.get_inplace_scratch_len()];
        for row in x.chunks_mut(n) {
            self.apply_with(row, &mut buf, &mut scratch);
        }
        let mut col = vec![0.0; n];
        for c in 0..n {
            for r in 0..n {
                col[r] = x[r * n + c];
            }
            self.apply_with(&mut col, &mut buf, &mut scratch);
            for r in 0..n {
                x[r * n + c] = col[r];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_the_definition() {
        let n = 7;
        let x: Vec<f64> = (0..n).map(|j| (j as f64 * 1.3).cos() + 0.2).collect();
        let mut y = x.clone();
        Dst1::new(n).apply(&mut y);
        for k in 1..=n {
            let e: f64 = (1..=n).map(|j| x[j - 1] * (PI * (j * k) as f64 / (n + 1) as f64).sin()).sum();
            assert!((y[k - 1] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn is_an_involution_up_to_scale() {
        let n = 12;
        let t = Dst1::new(n);
        let x: Vec<f64> = (0..n * n).map(|j| (j as f64).sqrt()).collect();
        let mut y = x.clone();
        t.apply_2d(&mut y);
        t.apply_2d(&mut y);
        let s = ((n + 1) as f64 / 2.0).powi(2);
        for (a, b) in x.iter().zip(&y) {
            assert!((a * s - b).abs() < 1e-9 * s);
        }
    }
}
