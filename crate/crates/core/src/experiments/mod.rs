//! Drivers for the published experiments: uniform-mesh error tables, 1D
//! refinement studies, the consistent-mass M-matrix study and the tensor-product
//! checkerboard solve.

pub mod paper;

use nalgebra::DMatrix;

use crate::diagnostics::{mass_power_from_eigen, summarize, MmatrixReport};
use crate::discretize::{
    fd_1d_lumped_nonuniform, fd_2d_laplacian, fem_1d_consistent, fem_2d_lshaped, rhs_checkerboard, rhs_sine, Domain,
    Geometry, Grid2D, Mesh1D,
};
use crate::error::{Error, Result};
use crate::linalg::{generalized_eigen, BoundSource, SolveOptions, DENSE_MAX};
use crate::rational::{compute_bura, to_additive_form, FractionForm, DEFAULT_TOL};
use crate::reference::{exact_discrete_sine, exact_discrete_square, relative_l2_vs_samples, SeriesRhs, SeriesSolution};
use crate::solvers::{solve_bura_orig, solve_pbura, solve_qmethod, Method, QParam, SolveReport};

/// Right-hand sides of the uniform-mesh experiments on the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniformRhs {
    /// `±1` with jumps along `x = ½` and `y = ½`.
    Checkerboard,
    /// `sin(2πx) sin(2πy)`.
    Sine,
}

impl UniformRhs {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Checkerboard => "checkerboard",
            Self::Sine => "sine",
        }
    }
}

/// Degrees and steps used by the uniform-mesh comparison; all but the
/// `k'`-Q-method need nine shifted solves.
#[derive(Debug, Clone, Copy)]
pub struct UniformConfig {
    pub pbura_degree: usize,
    pub bura_degree: usize,
    pub q_degree: usize,
    pub kprime: f64,
    pub opts: SolveOptions,
}

impl Default for UniformConfig {
    fn default() -> Self {
        Self { pbura_degree: 9, bura_degree: 8, q_degree: 7, kprime: 1.0 / 3.0, opts: SolveOptions::default() }
    }
}

#[derive(Debug, Clone)]
pub struct UniformRow {
    pub rhs: UniformRhs,
    pub alpha: f64,
    pub h_exp: u32,
    pub report: SolveReport<f64>,
    /// `δ` for P-BURA, `Λ` for BURA-orig, `NaN` for the quadrature methods.
    pub scaling: f64,
    pub scaling_source: Option<BoundSource>,
    /// `δ^{-α} E_{α,k} ‖f̃‖ / ‖ũ‖` for P-BURA.
    pub bound: Option<f64>,
    pub paper: Option<(f64, f64)>,
}

/// Runs `methods` on the 5-point problem with `h = 2^-h_exp` against the exact
/// discrete solution on the same mesh.
pub fn uniform_study(
    rhs: UniformRhs,
    alpha: f64,
    h_exp: u32,
    methods: &[Method],
    cfg: &UniformConfig,
) -> Result<Vec<UniformRow>> {
    if methods.is_empty() {
        return Err(Error::InvalidArgument("empty method set".into()));
    }
    if !(2..=12).contains(&h_exp) {
        return Err(Error::InvalidArgument(format!("mesh exponent {h_exp} outside 2..=12")));
    }
    let n = (1usize << h_exp) - 1;
    let problem = fd_2d_laplacian::<f64>(n, Domain::UnitSquare)?;
    let Geometry::Grid(grid) = problem.geometry.clone() else { unreachable!() };
    let (f, exact) = match rhs {
        UniformRhs::Sine => (rhs_sine(&grid), exact_discrete_sine(&grid, alpha)?),
        UniformRhs::Checkerboard => {
            let f = rhs_checkerboard(&grid);
            let u = exact_discrete_square(&grid, alpha, &f)?;
            (f, u)
        }
    };
    let problem = problem.with_rhs(f)?;
    let f_norm = problem.rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
    let u_norm = exact.iter().map(|v| v * v).sum::<f64>().sqrt();
    let table = match rhs {
        UniformRhs::Checkerboard => &paper::CHECKERBOARD,
        UniformRhs::Sine => &paper::SINE,
    };
    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let (report, scaling, source, bound) = match method {
            Method::PBuraAdditive | Method::PBuraMultiplicative => {
                let r = compute_bura(alpha, cfg.pbura_degree, DEFAULT_TOL)?;
                let form = match method {
                    Method::PBuraAdditive => to_additive_form(&r)?,
                    _ => crate::rational::to_multiplicative_form(&r)?,
                };
                let delta = problem.bounds.delta();
                let rep = solve_pbura(&problem, &form, delta, &cfg.opts)?;
                let bound = delta.powf(-alpha) * r.error() * f_norm / u_norm;
                (rep, delta, Some(problem.bounds.lambda1.source), Some(bound))
            }
            Method::BuraOrig => {
                let r = compute_bura(1.0 - alpha, cfg.bura_degree, DEFAULT_TOL)?;
                let upper = problem.stiffness.gershgorin_bound();
                let rep = solve_bura_orig(&problem, &to_additive_form(&r)?, upper, &cfg.opts)?;
                (rep, upper, Some(BoundSource::Gershgorin), None)
            }
            Method::QMethod => (solve_qmethod(&problem, alpha, QParam::Degree(cfg.q_degree), &cfg.opts)?, f64::NAN, None, None),
            Method::KPrimeQMethod => (solve_qmethod(&problem, alpha, QParam::Step(cfg.kprime), &cfg.opts)?, f64::NAN, None, None),
        };
        rows.push(UniformRow {
            rhs,
            alpha,
            h_exp,
            report: report.compare(&exact, None)?,
            scaling,
            scaling_source: source,
            bound,
            paper: paper::uniform_error(table, alpha, h_exp, method),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct RefinementRow {
    pub rhs: SeriesRhs,
    pub alpha: f64,
    pub h0_exp: u32,
    pub steps: u32,
    pub nodes: usize,
    pub min_segment: f64,
    pub error: f64,
    pub systems_solved: usize,
    pub paper: Option<f64>,
    pub paper_nodes: Option<usize>,
}

/// 1D lumped-mass P-BURA solves on locally refined meshes, measured against the
/// series solution sampled on a fine uniform grid.
#[derive(Debug, Clone)]
pub struct RefinementStudy {
    rhs: SeriesRhs,
    alpha: f64,
    form: FractionForm<f64>,
    samples: Vec<f64>,
    norm: f64,
    opts: SolveOptions,
}

pub const FINE_EXPONENT: u32 = 18;

impl RefinementStudy {
    /// P-BURA of degree `k`, reference series with `terms` terms sampled at `h = 2^-fine_exp`.
    pub fn new(rhs: SeriesRhs, alpha: f64, k: usize, terms: usize, fine_exp: u32) -> Result<Self> {
        let series = SeriesSolution::new(alpha, rhs, terms)?;
        let form = to_additive_form(&compute_bura(alpha, k, DEFAULT_TOL)?)?;
        Ok(Self {
            rhs,
            alpha,
            form,
            samples: series.sample_uniform(1usize << fine_exp),
            norm: series.l2_norm(),
            opts: SolveOptions::default(),
        })
    }

    /// Refinement steps that bring the smallest segment to the published stopping size.
    pub fn default_steps(&self, h0_exp: u32) -> u32 {
        paper::finest_exponent(self.rhs == SeriesRhs::DeltaRhs, self.alpha).saturating_sub(h0_exp)
    }

    /// Boundary refinement by `p` for `f ≡ 1`; halving at `x = ½` for the point source.
    pub fn mesh(&self, h0_exp: u32, steps: u32, p: usize) -> Result<Mesh1D> {
        let base = Mesh1D::uniform(1usize << h0_exp);
        match self.rhs {
            SeriesRhs::ConstantRhs => {
                if p < 2 {
                    return Err(Error::InvalidArgument(format!("refinement factor {p} below 2")));
                }
                Ok(base.refine_boundary(steps as usize, p))
            }
            SeriesRhs::DeltaRhs => base.refine_center(steps as usize),
        }
    }

    pub fn run(&self, h0_exp: u32, steps: u32, p: usize) -> Result<RefinementRow> {
        let mesh = self.mesh(h0_exp, steps, p)?;
        let problem = match self.rhs {
            SeriesRhs::ConstantRhs => fd_1d_lumped_nonuniform::<f64>(&mesh, Some(&|_| 1.0), None)?,
            SeriesRhs::DeltaRhs => {
                let mid = mesh
                    .interior_index_of(0.5)
                    .ok_or_else(|| Error::InvalidArgument("mesh has no node at 0.5".into()))?;
                fd_1d_lumped_nonuniform::<f64>(&mesh, None, Some(mid))?
            }
        };
        let report = solve_pbura(&problem, &self.form, 1.0, &self.opts)?;
        let error = relative_l2_vs_samples(&mesh, &report.solution, &self.samples, self.norm)?;
        let published = p == 2 && (steps == 0 || steps == self.default_steps(h0_exp));
        let (paper, paper_nodes) = if published {
            let last = steps != 0;
            let i = (h0_exp as usize).wrapping_sub(6);
            match self.rhs {
                SeriesRhs::ConstantRhs => (
                    paper::refinement_error(paper::CONSTANT_RHS, self.alpha, h0_exp, last),
                    paper::CONSTANT_RHS_NODES.get(i).map(|c| if last { c.1 } else { c.0 }),
                ),
                SeriesRhs::DeltaRhs => (
                    paper::refinement_error(paper::DELTA_RHS, self.alpha, h0_exp, last),
                    paper::DELTA_RHS_NODES.get(i).map(|c| match (last, self.alpha < 0.6) {
                        (false, _) => c.0,
                        (true, true) => c.1,
                        (true, false) => c.2,
                    }),
                ),
            }
        } else {
            (None, None)
        };
        Ok(RefinementRow {
            rhs: self.rhs,
            alpha: self.alpha,
            h0_exp,
            steps,
            nodes: mesh.interior_count(),
            min_segment: mesh.min_segment(),
            error,
            systems_solved: report.systems_solved,
            paper,
            paper_nodes,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MmatrixRow {
    pub lshaped: bool,
    pub h_inv: usize,
    pub report: MmatrixReport,
    pub paper: Option<(f64, f64)>,
}

/// `M Ã^α` summaries for consistent-mass linear elements with `h = 1/h_inv`,
/// on `(0, 1)` or on the L-shaped domain, for every `α` in `alphas`.
pub fn mmatrix_sweep(lshaped: bool, h_inv: usize, alphas: &[f64]) -> Result<Vec<MmatrixRow>> {
    if h_inv < 2 {
        return Err(Error::InvalidArgument(format!("h = 1/{h_inv} leaves no interior nodes")));
    }
    let (s, m): (DMatrix<f64>, DMatrix<f64>) = if lshaped {
        let f = fem_2d_lshaped::<f64>(h_inv - 1)?;
        (f.stiffness.to_dense_f64(), f.consistent.to_dense_f64())
    } else {
        let p = fem_1d_consistent::<f64>(h_inv - 1)?;
        let (s, m) = p.dense_matrices();
        (s, m.expect("consistent mass"))
    };
    if s.nrows() > DENSE_MAX {
        return Err(Error::DimensionTooLarge { n: s.nrows(), max: DENSE_MAX });
    }
    let eig = generalized_eigen(&s, Some(&m))?;
    Ok(alphas
        .iter()
        .map(|&alpha| MmatrixRow {
            lshaped,
            h_inv,
            report: summarize(&mass_power_from_eigen(&eig, &m, alpha), alpha),
            paper: paper::mmatrix(lshaped, alpha, h_inv),
        })
        .collect())
}

/// Checkerboard solution on the unit square from one quadrant: odd symmetry about
/// `x = ½` and `y = ½` reduces the problem to `f ≡ 1` on `(0, ½)²`, discretized on
/// the tensor product of a boundary-refined 1D mesh and solved through the
/// eigen-decomposition of the 1D lumped-mass operator.
#[derive(Debug, Clone)]
pub struct TensorCheckerboard {
    /// Interior coordinates along each axis, `2m + 1` of them with `½` in the middle.
    pub coords: Vec<f64>,
    /// Row-major over `y` then `x`.
    pub solution: Vec<f64>,
    /// Exact discrete solution on the same tensor mesh.
    pub exact: Vec<f64>,
    pub systems_solved: usize,
}

impl TensorCheckerboard {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn max_error(&self) -> f64 {
        self.solution.iter().zip(&self.exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// P-BURA of degree `k` with `δ = 1` on the quadrant mesh from `h₀ = 2^-h0_exp`
/// and `steps` boundary refinements.
pub fn tensor_checkerboard(alpha: f64, k: usize, h0_exp: u32, steps: u32) -> Result<TensorCheckerboard> {
    let unit = Mesh1D::uniform(1usize << h0_exp).refine_boundary(steps as usize, 2);
    let m = unit.interior_count();
    if m > DENSE_MAX {
        return Err(Error::DimensionTooLarge { n: m, max: DENSE_MAX });
    }
    let p = fd_1d_lumped_nonuniform::<f64>(&unit, None, None)?;
    let (s, mass) = p.dense_matrices();
    let mass = mass.expect("lumped mass");
    let mut eig = generalized_eigen(&s, Some(&mass))?;
    // halving every segment multiplies M⁻¹S by four
    eig.values.iter_mut().for_each(|l| *l *= 4.0);
    let lambda1 = 2.0 * eig.values[0];
    if lambda1 < 1.0 {
        return Err(Error::SpectrumViolation { delta: 1.0, lambda1 });
    }
    let form = to_additive_form(&compute_bura(alpha, k, DEFAULT_TOL)?)?;
    // nodal f ≡ 1 in the M-orthonormal basis: Ψᵀ M 1 along each axis
    let ones = nalgebra::DVector::from_element(m, 1.0);
    let g = eig.vectors.tr_mul(&(&mass * ones));
    let mut approx = DMatrix::zeros(m, m);
    let mut exact = DMatrix::zeros(m, m);
    for j in 0..m {
        for i in 0..m {
            let lambda = eig.values[i] + eig.values[j];
            let c = g[i] * g[j];
            approx[(i, j)] = c * form.eval_reciprocal(lambda);
            exact[(i, j)] = c * lambda.powf(-alpha);
        }
    }
    let back = |c: &DMatrix<f64>| &eig.vectors * c * eig.vectors.transpose();
    let (qa, qe) = (back(&approx), back(&exact));
    let half: Vec<f64> = unit.interior().iter().map(|x| 0.5 * x).collect();
    let mut coords = half.clone();
    coords.push(0.5);
    coords.extend(half.iter().rev().map(|x| 1.0 - x));
    let len = coords.len();
    let fold = |t: usize| -> (Option<usize>, f64) {
        match t.cmp(&m) {
            std::cmp::Ordering::Less => (Some(t), -1.0),
            std::cmp::Ordering::Equal => (None, 0.0),
            std::cmp::Ordering::Greater => (Some(len - 1 - t), 1.0),
        }
    };
    let mut solution = vec![0.0; len * len];
    let mut reference = vec![0.0; len * len];
    for yj in 0..len {
        for xi in 0..len {
            let ((a, sx), (b, sy)) = (fold(xi), fold(yj));
            if let (Some(a), Some(b)) = (a, b) {
                solution[yj * len + xi] = sx * sy * qa[(a, b)];
                reference[yj * len + xi] = sx * sy * qe[(a, b)];
            }
        }
    }
    Ok(TensorCheckerboard { coords, solution, exact: reference, systems_solved: k })
}

/// Nodes of a uniform grid, for callers that only need the geometry.
pub fn square_grid(h_exp: u32) -> Grid2D {
    Grid2D::new((1usize << h_exp) - 1, Domain::UnitSquare)
}
