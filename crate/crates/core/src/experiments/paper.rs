//! Published values, for side-by-side columns in regenerated tables.

use crate::solvers::Method;

/// `(γ, [E_{γ,5}, …, E_{γ,10}])`.
pub const BURA_ERRORS: [(f64, [f64; 6]); 3] = [
    (0.75, [2.8676e-5, 9.2522e-6, 3.2566e-6, 1.2288e-6, 4.9096e-7, 2.0584e-7]),
    (0.50, [2.6896e-4, 1.0747e-4, 4.6037e-5, 2.0852e-5, 9.8893e-6, 4.8760e-6]),
    (0.25, [2.7348e-3, 1.4312e-3, 7.8650e-4, 4.4950e-4, 2.6536e-4, 1.6100e-4]),
];

pub fn bura_error(gamma: f64, k: usize) -> Option<f64> {
    let (_, row) = BURA_ERRORS.iter().find(|(g, _)| (g - gamma).abs() < 1e-12)?;
    (5..=10).contains(&k).then(|| row[k - 5])
}

/// Per `h = 2^-e`, `e = 8..12`: `[BURA, P-BURA, Q, k'-Q]` as `(ℓ₂, ℓ∞)` pairs.
type UniformTable = [(f64, [[(f64, f64); 4]; 5]); 3];

pub const CHECKERBOARD: UniformTable = [
    (0.25, [
        [(2.929e-4, 2.612e-3), (3.255e-4, 2.550e-3), (1.045e-2, 1.288e-2), (2.772e-4, 2.612e-3)],
        [(1.747e-4, 1.847e-3), (2.292e-4, 1.875e-3), (1.040e-2, 1.207e-2), (1.371e-4, 1.847e-3)],
        [(8.217e-4, 1.829e-3), (2.029e-4, 1.339e-3), (1.039e-2, 1.152e-2), (6.815e-5, 1.305e-3)],
        [(5.077e-3, 1.094e-2), (1.939e-4, 8.219e-4), (1.038e-2, 1.097e-2), (3.388e-5, 9.196e-4)],
        [(1.129e-2, 2.610e-2), (1.922e-4, 7.451e-4), (1.038e-2, 1.069e-2), (1.671e-5, 6.413e-4)],
    ]),
    (0.50, [
        [(9.688e-5, 1.900e-4), (2.212e-5, 1.849e-4), (2.847e-3, 2.910e-3), (2.331e-5, 1.821e-4)],
        [(2.337e-4, 4.995e-4), (1.013e-5, 8.787e-5), (2.835e-3, 2.904e-3), (8.058e-6, 9.110e-5)],
        [(3.828e-4, 8.616e-4), (8.304e-6, 4.742e-5), (2.830e-3, 2.902e-3), (2.840e-6, 4.559e-5)],
        [(2.413e-4, 6.274e-4), (8.263e-6, 2.433e-5), (2.829e-3, 2.902e-3), (1.033e-6, 2.280e-5)],
        [(1.424e-3, 2.814e-3), (8.291e-6, 1.909e-5), (2.828e-3, 2.902e-3), (4.118e-7, 1.132e-5)],
    ]),
    (0.75, [
        [(1.219e-4, 2.741e-4), (2.443e-6, 9.168e-6), (1.507e-3, 1.825e-3), (2.561e-6, 9.103e-6)],
        [(1.761e-4, 3.976e-4), (6.110e-7, 3.110e-6), (1.502e-3, 1.824e-3), (7.118e-7, 3.263e-6)],
        [(2.172e-4, 4.958e-4), (1.884e-7, 1.037e-6), (1.501e-3, 1.823e-3), (2.355e-7, 1.198e-6)],
        [(1.401e-4, 3.478e-4), (1.500e-7, 6.592e-7), (1.500e-3, 1.823e-3), (1.138e-7, 4.677e-7)],
        [(1.803e-4, 3.264e-4), (1.547e-7, 4.574e-7), (1.499e-3, 1.823e-3), (8.334e-8, 2.079e-7)],
    ]),
];

pub const SINE: UniformTable = [
    (0.25, [
        [(4.615e-5, 9.193e-5), (1.086e-4, 2.162e-4), (5.223e-3, 1.040e-2), (1.955e-6, 3.894e-6)],
        [(6.035e-5, 1.205e-4), (1.067e-4, 2.131e-4), (5.214e-3, 1.041e-2), (3.688e-7, 7.362e-7)],
        [(4.993e-4, 9.976e-4), (1.062e-4, 2.123e-4), (5.209e-3, 1.041e-2), (2.663e-8, 5.321e-8)],
        [(3.122e-3, 6.240e-3), (1.061e-4, 2.121e-4), (5.207e-3, 1.041e-2), (1.253e-7, 2.506e-7)],
        [(6.904e-3, 1.380e-2), (1.060e-4, 2.120e-4), (5.206e-3, 1.041e-2), (1.500e-7, 2.999e-7)],
    ]),
    (0.50, [
        [(6.388e-5, 1.273e-4), (5.703e-6, 1.136e-5), (1.428e-3, 2.845e-4), (1.329e-6, 2.648e-6)],
        [(1.426e-4, 2.846e-4), (4.630e-6, 9.243e-6), (1.426e-3, 2.847e-3), (2.650e-7, 5.290e-7)],
        [(2.360e-4, 4.715e-4), (4.361e-6, 8.713e-6), (1.425e-3, 2.847e-3), (3.273e-10, 6.539e-10)],
        [(1.469e-4, 2.936e-4), (4.292e-6, 8.580e-6), (1.424e-3, 2.847e-3), (6.656e-8, 1.331e-7)],
        [(8.771e-4, 1.754e-3), (4.275e-6, 8.547e-6), (1.424e-3, 2.848e-3), (8.310e-8, 1.662e-7)],
    ]),
    (0.75, [
        [(7.299e-5, 1.454e-4), (7.564e-7, 1.507e-6), (8.331e-4, 1.660e-3), (6.733e-7, 1.341e-6)],
        [(1.086e-4, 2.168e-4), (2.208e-7, 4.408e-7), (8.320e-4, 1.661e-3), (1.379e-7, 2.753e-7)],
        [(1.332e-4, 2.662e-4), (8.724e-8, 1.743e-7), (8.314e-4, 1.661e-3), (4.375e-9, 8.742e-9)],
        [(8.546e-5, 1.708e-4), (5.387e-8, 1.077e-7), (8.310e-4, 1.661e-3), (2.896e-8, 5.789e-8)],
        [(1.110e-4, 2.219e-4), (4.553e-8, 9.103e-8), (8.308e-4, 1.661e-3), (3.728e-8, 7.454e-8)],
    ]),
];

/// `(ℓ₂, ℓ∞)` relative errors for a uniform-mesh cell, `h = 2^-h_exp`.
pub fn uniform_error(table: &UniformTable, alpha: f64, h_exp: u32, method: Method) -> Option<(f64, f64)> {
    let (_, rows) = table.iter().find(|(a, _)| (a - alpha).abs() < 1e-12)?;
    let row = rows.get((h_exp as usize).checked_sub(8)?)?;
    let col = match method {
        Method::BuraOrig => 0,
        Method::PBuraAdditive | Method::PBuraMultiplicative => 1,
        Method::QMethod => 2,
        Method::KPrimeQMethod => 3,
    };
    Some(row[col])
}

/// `(α, [level 0 for h₀ = 2^-6..2^-10], [last level])`.
type RefinementTable = [(f64, [f64; 5], [f64; 5])];

pub const CONSTANT_RHS: &RefinementTable = &[
    (0.25, [1.813e-2, 9.071e-3, 4.544e-3, 2.287e-3, 1.179e-3], [1.294e-3, 6.931e-4, 4.446e-4, 3.541e-4, 3.301e-4]),
    (0.50, [2.705e-3, 9.547e-4, 3.380e-4, 1.233e-4, 5.498e-5], [7.620e-4, 2.648e-4, 9.487e-5, 4.563e-5, 3.734e-5]),
    (0.75, [6.415e-4, 1.713e-4, 4.882e-5, 2.158e-5, 1.795e-5], [4.712e-4, 1.321e-4, 4.054e-5, 2.056e-5, 1.792e-5]),
];

pub const CONSTANT_RHS_NODES: [(usize, usize); 5] = [(63, 81), (127, 143), (255, 269), (511, 523), (1023, 1033)];

pub const DELTA_RHS: &RefinementTable = &[
    (0.50, [9.218e-2, 6.510e-2, 4.610e-2, 3.243e-2, 2.309e-2], [1.026e-2, 7.975e-3, 6.559e-3, 5.690e-3, 5.267e-3]),
    (0.75, [5.776e-3, 2.882e-3, 1.452e-3, 7.138e-4, 3.610e-4], [1.456e-3, 7.345e-4, 3.826e-4, 2.084e-4, 1.423e-4]),
];

/// Last-level node counts for `α = 0.5` and `α = 0.75`.
pub const DELTA_RHS_NODES: [(usize, usize, usize); 5] =
    [(63, 83, 77), (127, 145, 139), (255, 269, 263), (511, 525, 519), (1023, 1035, 1029)];

/// Smallest segment the refinement studies stop at, as a power of two.
pub fn finest_exponent(delta_rhs: bool, alpha: f64) -> u32 {
    if !delta_rhs {
        15
    } else if alpha < 0.6 {
        16
    } else {
        13
    }
}

pub fn refinement_error(table: &RefinementTable, alpha: f64, h0_exp: u32, last: bool) -> Option<f64> {
    let (_, zero, fin) = table.iter().find(|(a, _, _)| (a - alpha).abs() < 1e-12)?;
    let i = (h0_exp as usize).checked_sub(6)?;
    if last { fin.get(i).copied() } else { zero.get(i).copied() }
}

/// `(α, [(MrowS, MoffD) per h])`, `h = 1/10, 1/20, 1/40, 1/80`.
pub const MMATRIX_1D: &[(f64, [(f64, f64); 4])] = &[
    (0.100, [(0.11950, 0.018190), (0.05958, 0.010435), (0.02977, 0.005992), (0.01488, 0.003442)]),
    (0.200, [(0.14097, 0.014288), (0.07006, 0.009397), (0.03498, 0.006198), (0.01748, 0.004089)]),
    (0.300, [(0.16354, -0.000425), (0.08102, -0.000025), (0.04042, -0.000002), (0.02020, -0.000001)]),
    (0.500, [(0.20417, -0.000852), (0.10052, -0.000049), (0.05006, -0.000003), (0.02501, -0.000002)]),
    (0.700, [(0.21119, -0.001177), (0.10342, -0.000068), (0.05142, -0.000004), (0.02568, -0.000003)]),
    (0.800, [(0.18326, -0.001138), (0.08963, -0.000065), (0.04452, -0.000004), (0.02223, -0.000002)]),
    (0.900, [(0.11824, -0.000805), (0.05786, -0.000045), (0.02872, -0.000003), (0.01433, -0.000002)]),
];

pub const MMATRIX_1D_FINE: &[(f64, [(f64, f64); 4])] = &[
    (0.284, [(0.15991, 0.000733), (0.07927, 0.0004962), (0.03955, 0.0003949), (0.01976, 0.0002703)]),
    (0.286, [(0.16036, 0.000221), (0.07949, 0.0001166), (0.03966, 0.0000838), (0.01982, 0.0000621)]),
    (0.288, [(0.16082, -0.000302), (0.07971, -0.0000436), (0.03977, -0.0000015), (0.01987, -0.0000001)]),
    (0.290, [(0.16127, -0.000406), (0.07993, -0.0000239), (0.03988, -0.0000015), (0.01993, -0.0000001)]),
    (0.292, [(0.16172, -0.000413), (0.08037, -0.0000243), (0.03999, -0.0000015), (0.01998, -0.0000001)]),
];

pub const MMATRIX_1D_H: [usize; 4] = [10, 20, 40, 80];

/// `h = 1/10, 1/20, 1/40`.
pub const MMATRIX_LSHAPED: &[(f64, [(f64, f64); 3])] = &[
    (0.300, [(0.02403, 0.002695), (0.00578, 0.001022), (0.00143, 0.000387)]),
    (0.500, [(0.03820, 0.004974), (0.00905, 0.002483), (0.00222, 0.001242)]),
    (0.700, [(0.04891, 0.007004), (0.01170, 0.004558), (0.00285, 0.003007)]),
    (0.800, [(0.04628, 0.006979), (0.01134, 0.005223), (0.00275, 0.003958)]),
    (0.900, [(0.03176, 0.004897), (0.00818, 0.004222), (0.00198, 0.003675)]),
];

pub const MMATRIX_LSHAPED_H: [usize; 3] = [10, 20, 40];

/// Published `(MrowS, MoffD)` for a 1D (`lshaped = false`) or L-shaped cell.
pub fn mmatrix(lshaped: bool, alpha: f64, h_inv: usize) -> Option<(f64, f64)> {
    let find = |rows: &[(f64, [(f64, f64); 4])]| {
        let (_, r) = rows.iter().find(|(a, _)| (a - alpha).abs() < 1e-9)?;
        MMATRIX_1D_H.iter().position(|&h| h == h_inv).map(|i| r[i])
    };
    if lshaped {
        let (_, r) = MMATRIX_LSHAPED.iter().find(|(a, _)| (a - alpha).abs() < 1e-9)?;
        MMATRIX_LSHAPED_H.iter().position(|&h| h == h_inv).map(|i| r[i])
    } else {
        find(MMATRIX_1D).or_else(|| find(MMATRIX_1D_FINE))
    }
}
