#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    UnitSquare,
    /// `(0,1)² \ [0.5,1)²`.
    LShaped,
}

/// Uniform grid with `n` interior lines per direction, `h = 1/(n+1)`.
///
/// Interior nodes are numbered row by row (`y` outer, `x` inner), skipping
/// nodes outside the domain or on its boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    n: usize,
    domain: Domain,
    /// Interior index of lattice node `(i, j)`, `1 ≤ i, j ≤ n`, stored at `(j-1)·n + (i-1)`.
    index: Vec<Option<usize>>,
    coords: Vec<(usize, usize)>,
}

impl Grid2D {
    pub fn new(n: usize, domain: Domain) -> Self {
        let mut index = vec![None; n * n];
        let mut coords = Vec::new();
        for j in 1..=n {
            for i in 1..=n {
                if Self::inside(n, domain, i, j) {
                    index[(j - 1) * n + (i - 1)] = Some(coords.len());
                    coords.push((i, j));
                }
            }
        }
        Self { n, domain, index, coords }
    }

    fn inside(n: usize, domain: Domain, i: usize, j: usize) -> bool {
        match domain {
            Domain::UnitSquare => true,
            // x ≥ 0.5 ⇔ 2i ≥ n + 1
            Domain::LShaped => !(2 * i >= n + 1 && 2 * j >= n + 1),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        1.0 / (self.n + 1) as f64
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Interior index of lattice node `(i, j)`; `None` on or outside the boundary.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return None;
        }
        self.index[(j - 1) * self.n + (i - 1)]
    }

    pub fn lattice(&self, k: usize) -> (usize, usize) {
        self.coords[k]
    }

    pub fn point(&self, k: usize) -> (f64, f64) {
        let (i, j) = self.coords[k];
        let h = self.h();
        (i as f64 * h, j as f64 * h)
    }

    pub fn sample(&self, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        (0..self.len()).map(|k| {
            let (x, y) = self.point(k);
            f(x, y)
        }).collect()
    }
}

/// `+1` where `(x-½)(y-½) > 0`, `-1` where it is negative, `0` on the jump lines.
pub fn rhs_checkerboard(grid: &Grid2D) -> Vec<f64> {
    let n1 = (grid.n() + 1) as i64;
    (0..grid.len())
        .map(|k| {
            let (i, j) = grid.lattice(k);
            // sign of (2i - (n+1))(2j - (n+1)) avoids rounding at x = 0.5
            let s = (2 * i as i64 - n1).signum() * (2 * j as i64 - n1).signum();
            s as f64
        })
        .collect()
}

/// `sin(2πx) sin(2πy)` at the interior nodes.
pub fn rhs_sine(grid: &Grid2D) -> Vec<f64> {
    use std::f64::consts::PI;
    grid.sample(|x, y| (2.0 * PI * x).sin() * (2.0 * PI * y).sin())
}
