use nalgebra::DMatrix;

use crate::scalar::Real;

/// Storage layouts for a symmetric positive definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Storage<T> {
    /// Symmetric tridiagonal: `diag` (length `n`) and `off` (length `n - 1`).
    Tridiagonal { diag: Vec<T>, off: Vec<T> },
    /// Compressed sparse rows holding both triangles.
    Csr { row_ptr: Vec<usize>, col_idx: Vec<usize>, values: Vec<T> },
    /// `T ⊗ I + I ⊗ T` on an `n × n` grid with `T = tridiag(off, diag, off)`,
    /// the block-tridiagonal 5-point matrix on a square.
    KroneckerSum { n: usize, diag: T, off: T },
    /// Row-major dense matrix.
    Dense { n: usize, values: Vec<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpdOperator<T> {
    storage: Storage<T>,
    dim: usize,
}

/// Mass matrix accompanying a stiffness matrix in generalized problems.
#[derive(Debug, Clone, PartialEq)]
pub enum Mass<T> {
    Diagonal(Vec<T>),
    Matrix(SpdOperator<T>),
}

impl<T: Real> SpdOperator<T> {
    pub fn tridiagonal(diag: Vec<T>, off: Vec<T>) -> Self {
        assert!(off.len() + 1 == diag.len() || (diag.is_empty() && off.is_empty()));
        let dim = diag.len();
        Self { storage: Storage::Tridiagonal { diag, off }, dim }
    }

    /// Builds CSR storage from triplets; duplicates are summed and each
    /// off-diagonal triplet must be given for one triangle only.
    pub fn from_symmetric_triplets(n: usize, triplets: &[(usize, usize, T)]) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for &(i, j, v) in triplets {
            rows[i].push((j, v));
            if i != j {
                rows[j].push((i, v));
            }
        }
        Self::from_rows(rows)
    }

    fn from_rows(mut rows: Vec<Vec<(usize, T)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut last = usize::MAX;
            for &(j, v) in row.iter() {
                if j == last {
                    let end = values.len() - 1;
                    values[end] = values[end] + v;
                } else {
                    col_idx.push(j);
                    values.push(v);
                    last = j;
                }
            }
            row_ptr.push(col_idx.len());
        }
        Self { storage: Storage::Csr { row_ptr, col_idx, values }, dim: n }
    }

    pub fn kronecker_sum(n: usize, diag: T, off: T) -> Self {
        Self { storage: Storage::KroneckerSum { n, diag, off }, dim: n * n }
    }

    /// Symmetrizes `(A + Aᵀ)/2` so the stored matrix is exactly symmetric.
    pub fn dense(n: usize, values: Vec<T>) -> Self {
        assert_eq!(values.len(), n * n);
        let mut v = values;
        let half = T::of(0.5);
        for i in 0..n {
            for j in (i + 1)..n {
                let s = (v[i * n + j] + v[j * n + i]) * half;
                v[i * n + j] = s;
                v[j * n + i] = s;
            }
        }
        Self { storage: Storage::Dense { n, values: v }, dim: n }
    }

    pub fn identity(n: usize) -> Self {
        Self::tridiagonal(vec![T::one(); n], vec![T::zero(); n.saturating_sub(1)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn storage(&self) -> &Storage<T> {
        &self.storage
    }

    pub fn scaled(&self, s: T) -> Self {
        let storage = match &self.storage {
            Storage::Tridiagonal { diag, off } => Storage::Tridiagonal {
                diag: diag.iter().map(|&x| x * s).collect(),
                off: off.iter().map(|&x| x * s).collect(),
            },
            Storage::Csr { row_ptr, col_idx, values } => Storage::Csr {
                row_ptr: row_ptr.clone(),
                col_idx: col_idx.clone(),
                values: values.iter().map(|&x| x * s).collect(),
            },
            Storage::KroneckerSum { n, diag, off } => Storage::KroneckerSum { n: *n, diag: *diag * s, off: *off * s },
            Storage::Dense { n, values } => Storage::Dense { n: *n, values: values.iter().map(|&x| x * s).collect() },
        };
        Self { storage, dim: self.dim }
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        match &self.storage {
            Storage::Tridiagonal { diag, off } => {
                let n = diag.len();
                for i in 0..n {
                    let mut s = diag[i] * x[i];
                    if i > 0 {
                        s = s + off[i - 1] * x[i - 1];
                    }
                    if i + 1 < n {
                        s = s + off[i] * x[i + 1];
                    }
                    y[i] = s;
                }
            }
            Storage::Csr { row_ptr, col_idx, values } => {
                for i in 0..self.dim {
                    let mut s = T::zero();
                    for p in row_ptr[i]..row_ptr[i + 1] {
                        s = s + values[p] * x[col_idx[p]];
                    }
                    y[i] = s;
                }
            }
            Storage::KroneckerSum { n, diag, off } => {
                let n = *n;
                let two = *diag + *diag;
                for r in 0..n {
                    for c in 0..n {
                        let i = r * n + c;
                        let mut s = two * x[i];
                        if c > 0 {
                            s = s + *off * x[i - 1];
                        }
                        if c + 1 < n {
                            s = s + *off * x[i + 1];
                        }
                        if r > 0 {
                            s = s + *off * x[i - n];
                        }
                        if r + 1 < n {
                            s = s + *off * x[i + n];
                        }
                        y[i] = s;
                    }
                }
            }
            Storage::Dense { n, values } => {
                for i in 0..*n {
                    y[i] = values[i * n..(i + 1) * n].iter().zip(x).map(|(&a, &b)| a * b).sum();
                }
            }
        }
    }

    pub fn mul(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.dim];
        self.apply(x, &mut y);
        y
    }

    /// Nonzero entries of row `i` as `(column, value)`.
    pub fn row(&self, i: usize) -> Vec<(usize, T)> {
        match &self.storage {
            Storage::Tridiagonal { diag, off } => {
                let mut r = Vec::with_capacity(3);
                if i > 0 {
                    r.push((i - 1, off[i - 1]));
                }
                r.push((i, diag[i]));
                if i + 1 < diag.len() {
                    r.push((i + 1, off[i]));
                }
                r
            }
            Storage::Csr { row_ptr, col_idx, values } => {
                (row_ptr[i]..row_ptr[i + 1]).map(|p| (col_idx[p], values[p])).collect()
            }
            Storage::KroneckerSum { n, diag, off } => {
                let n = *n;
                let (r, c) = (i / n, i % n);
                let mut out = Vec::with_capacity(5);
                if r > 0 {
                    out.push((i - n, *off));
                }
                if c > 0 {
                    out.push((i - 1, *off));
                }
                out.push((i, *diag + *diag));
                if c + 1 < n {
                    out.push((i + 1, *off));
                }
                if r + 1 < n {
                    out.push((i + n, *off));
                }
                out
            }
            Storage::Dense { n, values } => (0..*n).map(|j| (j, values[i * n + j])).filter(|e| e.1 != T::zero()).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.row(i).into_iter().find(|e| e.0 == j).map_or(T::zero(), |e| e.1)
    }

    pub fn diagonal(&self) -> Vec<T> {
        match &self.storage {
            Storage::Tridiagonal { diag, .. } => diag.clone(),
            Storage::KroneckerSum { diag, .. } => vec![*diag + *diag; self.dim],
            _ => (0..self.dim).map(|i| self.get(i, i)).collect(),
        }
    }

    /// `max_i Σ_j |a_ij|`, an upper bound for every eigenvalue.
    pub fn gershgorin_bound(&self) -> T {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|e| e.1.abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Row-major triplets of all stored nonzeros.
    pub fn triplets(&self) -> Vec<(usize, usize, T)> {
        (0..self.dim).flat_map(|i| self.row(i).into_iter().map(move |(j, v)| (i, j, v))).collect()
    }

    pub fn to_csr(&self) -> Self {
        let rows = (0..self.dim).map(|i| self.row(i)).collect();
        Self::from_rows(rows)
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::<f64>::zeros(self.dim, self.dim);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v.as_f64();
        }
        m
    }

    /// `max |a_ij - a_ji|`.
    pub fn asymmetry(&self) -> T {
        self.triplets()
            .into_iter()
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(T::zero(), T::max)
    }

    pub fn cast<U: Real>(&self) -> SpdOperator<U> {
        let c = |x: &T| U::of(x.as_f64());
        let storage = match &self.storage {
            Storage::Tridiagonal { diag, off } => {
                Storage::Tridiagonal { diag: diag.iter().map(c).collect(), off: off.iter().map(c).collect() }
            }
            Storage::Csr { row_ptr, col_idx, values } => Storage::Csr {
                row_ptr: row_ptr.clone(),
                col_idx: col_idx.clone(),
                values: values.iter().map(c).collect(),
            },
            Storage::KroneckerSum { n, diag, off } => Storage::KroneckerSum { n: *n, diag: c(diag), off: c(off) },
            Storage::Dense { n, values } => Storage::Dense { n: *n, values: values.iter().map(c).collect() },
        };
        SpdOperator { storage, dim: self.dim }
    }
}

impl<T: Real> Mass<T> {
    pub fn dim(&self) -> usize {
        match self {
            Self::Diagonal(d) => d.len(),
            Self::Matrix(m) => m.dim(),
        }
    }

    pub fn apply(&self, x: &[T], y: &mut [T]) {
        match self {
            Self::Diagonal(d) => {
                for ((yi, &xi), &di) in y.iter_mut().zip(x).zip(d) {
                    *yi = di * xi;
                }
            }
            Self::Matrix(m) => m.apply(x, y),
        }
    }

    pub fn mul(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); x.len()];
        self.apply(x, &mut y);
        y
    }

    pub fn diagonal(&self) -> Vec<T> {
        match self {
            Self::Diagonal(d) => d.clone(),
            Self::Matrix(m) => m.diagonal(),
        }
    }

    pub fn to_operator(&self) -> SpdOperator<T> {
        match self {
            Self::Diagonal(d) => SpdOperator::tridiagonal(d.clone(), vec![T::zero(); d.len().saturating_sub(1)]),
            Self::Matrix(m) => m.clone(),
        }
    }

    pub fn cast<U: Real>(&self) -> Mass<U> {
        match self {
            Self::Diagonal(d) => Mass::Diagonal(d.iter().map(|x| U::of(x.as_f64())).collect()),
            Self::Matrix(m) => Mass::Matrix(m.cast()),
        }
    }
}
