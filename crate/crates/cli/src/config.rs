use std::path::PathBuf;
use std::str::FromStr;

use bura::experiments::{paper, UniformRhs};
use bura::reference::SeriesRhs;
use bura::solvers::Method;

use crate::error::CliError;

/// A mesh size given as `2^-e`, `1/n` or a plain decimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshSize(pub f64);

impl MeshSize {
    pub fn pow2(e: u32) -> Self {
        Self(0.5f64.powi(e as i32))
    }

    pub fn inverse(n: usize) -> Self {
        Self(1.0 / n as f64)
    }

    /// `e` with `h = 2^-e`, if `h` is a power of two.
    pub fn exponent(self) -> Option<u32> {
        let e = -self.0.log2();
        let r = e.round();
        ((e - r).abs() < 1e-9 && r >= 0.0).then_some(r as u32)
    }

    /// `n` with `h = 1/n`, if `1/h` is an integer.
    pub fn reciprocal(self) -> Option<usize> {
        let n = 1.0 / self.0;
        let r = n.round();
        ((n - r).abs() < 1e-6 * r && r >= 1.0).then_some(r as usize)
    }

    pub fn label(self) -> String {
        match (self.exponent(), self.reciprocal()) {
            (Some(e), _) => format!("2^-{e}"),
            (None, Some(n)) => format!("1/{n}"),
            _ => format!("{}", self.0),
        }
    }
}

impl FromStr for MeshSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let h = if let Some(e) = s.strip_prefix("2^") {
            let e: i32 = e.trim_start_matches('(').trim_end_matches(')').parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            2f64.powi(e)
        } else if let Some((a, b)) = s.split_once('/') {
            let a: f64 = a.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let b: f64 = b.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            a / b
        } else {
            s.parse().map_err(|_| format!("bad mesh size {s:?}"))?
        };
        if !(h > 0.0 && h < 1.0) {
            return Err(format!("mesh size {s:?} must lie in (0, 1)"));
        }
        Ok(Self(h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees(pub Vec<usize>);

/// `5..10` (inclusive), `5..=10`, or a comma list.
pub fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let bad = |_| format!("bad degree list {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(bad)?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(bad)?;
        if a > b {
            return Err(format!("empty degree range {s:?}"));
        }
        return Ok(Degrees((a..=b).collect()));
    }
    split(s).map(|t| t.parse().map_err(bad)).collect::<Result<_, _>>().map(Degrees)
}

pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    split(s).map(|t| t.parse::<T>().map_err(|_| format!("bad list entry {t:?}"))).collect()
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

pub fn parse_method(s: &str) -> Result<Method, String> {
    Ok(match s {
        "pbura" | "p-bura" => Method::PBuraAdditive,
        "pbura-mult" => Method::PBuraMultiplicative,
        "bura" | "bura-orig" => Method::BuraOrig,
        "q" => Method::QMethod,
        "kprime-q" | "kq" => Method::KPrimeQMethod,
        _ => return Err(format!("unknown method {s:?} (pbura, pbura-mult, bura, q, kprime-q)")),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    BuraTable,
    Table2,
    Table3,
    Table4,
    Table5,
    MmatrixStudy,
    SingleSolve,
    Figure2,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::BuraTable => "bura-table",
            Self::Table2 => "table2",
            Self::Table3 => "table3",
            Self::Table4 => "table4",
            Self::Table5 => "table5",
            Self::MmatrixStudy => "mmatrix",
            Self::SingleSolve => "solve",
            Self::Figure2 => "figure2",
        }
    }

    pub fn uniform_rhs(self) -> Option<UniformRhs> {
        match self {
            Self::Table2 => Some(UniformRhs::Checkerboard),
            Self::Table3 => Some(UniformRhs::Sine),
            _ => None,
        }
    }

    pub fn series_rhs(self) -> Option<SeriesRhs> {
        match self {
            Self::Table4 => Some(SeriesRhs::ConstantRhs),
            Self::Table5 => Some(SeriesRhs::DeltaRhs),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ProblemKind {
    /// 3-point Laplacian on (0, 1), `f ≡ 1`.
    Fd1d,
    /// 5-point Laplacian on the unit square.
    Fd2d,
    /// 5-point Laplacian on the L-shaped domain, `f ≡ 1`.
    Lshaped,
    /// Lumped-mass elements on a boundary-refined mesh, `f ≡ 1`.
    Lumped1d,
    /// Consistent-mass elements on (0, 1), `f ≡ 1`.
    Fem1d,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub alphas: Vec<f64>,
    pub degrees: Vec<usize>,
    /// `--k` was given, so it overrides the per-method defaults.
    pub degrees_given: bool,
    pub kprime: f64,
    pub meshes: Vec<MeshSize>,
    pub h0: Vec<u32>,
    pub refine_steps: Option<u32>,
    pub p: usize,
    pub methods: Vec<Method>,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub plot_dir: Option<PathBuf>,
    pub timings: bool,
    pub problem: ProblemKind,
    pub rhs: UniformRhs,
    pub lshaped: bool,
    pub battery: usize,
    pub terms: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.alphas.is_empty() {
            return bad("empty alpha list".into());
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return bad(format!("alpha = {a} outside (0, 1)"));
        }
        if self.degrees.is_empty() {
            return bad("empty degree list".into());
        }
        if let Some(k) = self.degrees.iter().find(|k| !(1..=bura::rational::MAX_DEGREE).contains(*k)) {
            return bad(format!("degree {k} outside 1..={}", bura::rational::MAX_DEGREE));
        }
        if self.methods.is_empty() {
            return bad("empty method set".into());
        }
        if self.meshes.is_empty() && !matches!(self.experiment, Experiment::BuraTable | Experiment::Table4 | Experiment::Table5 | Experiment::Figure2) {
            return bad("empty mesh list".into());
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tolerance {} outside (0, 1)", self.tol));
        }
        if !(self.kprime > 0.0) {
            return bad(format!("quadrature step {} must be positive", self.kprime));
        }
        if self.p < 2 {
            return bad(format!("refinement factor {} below 2", self.p));
        }
        match self.experiment {
            Experiment::Table2 | Experiment::Table3 => {
                for h in &self.meshes {
                    match h.exponent() {
                        Some(2..=12) => {}
                        _ => return bad(format!("table meshes must be 2^-e with 2 ≤ e ≤ 12 (got {})", h.label())),
                    }
                }
            }
            Experiment::MmatrixStudy => {
                for h in &self.meshes {
                    match h.reciprocal() {
                        Some(n) if n >= 2 && (!self.lshaped || n % 2 == 0) => {}
                        _ => return bad(format!("M-matrix meshes must be 1/n with n ≥ 2, even on the L-shape (got {})", h.label())),
                    }
                }
            }
            Experiment::SingleSolve => {
                if self.meshes.len() != 1 {
                    return bad("solve takes exactly one mesh size".into());
                }
                if self.problem != ProblemKind::Lumped1d && self.meshes[0].reciprocal().is_none() {
                    return bad(format!("mesh size {} is not 1/n", self.meshes[0].label()));
                }
            }
            Experiment::Table4 | Experiment::Table5 | Experiment::Figure2 => {
                if self.h0.is_empty() {
                    return bad("empty h0 list".into());
                }
                if let Some(e) = self.h0.iter().find(|e| !(1..=16).contains(*e)) {
                    return bad(format!("h0 = 2^-{e} outside 2^-1..2^-16"));
                }
                if self.experiment == Experiment::Table5 {
                    if let Some(a) = self.alphas.iter().find(|a| **a <= 0.25) {
                        return bad(format!("point source needs alpha > 0.25 (got {a})"));
                    }
                }
            }
            Experiment::BuraTable => {}
        }
        Ok(())
    }

    /// Default parameter lists of each experiment, overridden field by field by the command line.
    pub fn defaults(experiment: Experiment) -> Self {
        let three = vec![0.25, 0.5, 0.75];
        let desk: Vec<MeshSize> = (6..=9).map(MeshSize::pow2).collect();
        let mut cfg = Self {
            experiment,
            alphas: three,
            degrees: vec![9],
            degrees_given: false,
            kprime: 1.0 / 3.0,
            meshes: Vec::new(),
            h0: (6..=10).collect(),
            refine_steps: None,
            p: 2,
            methods: vec![Method::BuraOrig, Method::PBuraAdditive, Method::QMethod, Method::KPrimeQMethod],
            tol: 1e-12,
            seed: 0,
            out: None,
            plot_dir: None,
            timings: false,
            problem: ProblemKind::Fd2d,
            rhs: UniformRhs::Sine,
            lshaped: false,
            battery: 0,
            terms: bura::reference::DEFAULT_TERMS,
        };
        match experiment {
            Experiment::BuraTable => cfg.degrees = (5..=10).collect(),
            Experiment::Table2 | Experiment::Table3 => cfg.meshes = desk,
            Experiment::Table4 => {}
            Experiment::Table5 => cfg.alphas = vec![0.5, 0.75],
            Experiment::MmatrixStudy => {}
            Experiment::SingleSolve => {
                cfg.alphas = vec![0.5];
                cfg.meshes = vec![MeshSize::pow2(8)];
                cfg.methods = vec![Method::PBuraAdditive];
            }
            Experiment::Figure2 => {
                cfg.alphas = vec![0.25];
                cfg.h0 = vec![9];
                cfg.refine_steps = Some(6);
            }
        }
        cfg
    }

    /// Published `α` and `h` lists for the M-matrix study.
    pub fn mmatrix_defaults(&mut self, alphas_given: bool, meshes_given: bool) {
        if !alphas_given {
            self.alphas = if self.lshaped {
                paper::MMATRIX_LSHAPED.iter().map(|r| r.0).collect()
            } else {
                let mut a: Vec<f64> = paper::MMATRIX_1D.iter().chain(paper::MMATRIX_1D_FINE).map(|r| r.0).collect();
                a.sort_by(f64::total_cmp);
                a
            };
        }
        if !meshes_given {
            let hs: &[usize] = if self.lshaped { &paper::MMATRIX_LSHAPED_H } else { &paper::MMATRIX_1D_H };
            self.meshes = hs.iter().map(|&n| MeshSize::inverse(n)).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_sizes() {
        let h: MeshSize = "2^-8".parse().unwrap();
        assert_eq!(h.exponent(), Some(8));
        assert_eq!(h.label(), "2^-8");
        let h: MeshSize = "1/10".parse().unwrap();
        assert_eq!(h.reciprocal(), Some(10));
        assert_eq!(h.label(), "1/10");
        let h: MeshSize = "0.125".parse().unwrap();
        assert_eq!(h.exponent(), Some(3));
        assert!("2".parse::<MeshSize>().is_err());
        assert!("2^x".parse::<MeshSize>().is_err());
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("5..10").unwrap().0, vec![5, 6, 7, 8, 9, 10]);
        assert_eq!(parse_degrees("5..=6").unwrap().0, vec![5, 6]);
        assert_eq!(parse_degrees("9,7").unwrap().0, vec![9, 7]);
        assert!(parse_degrees("7..5").is_err());
    }

    #[test]
    fn empty_method_set_is_rejected() {
        let mut cfg = ExperimentConfig::defaults(Experiment::Table3);
        cfg.methods.clear();
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
    }

    #[test]
    fn table_meshes_must_be_dyadic() {
        let mut cfg = ExperimentConfig::defaults(Experiment::Table2);
        cfg.meshes = vec![MeshSize::inverse(10)];
        assert!(cfg.validate().is_err());
    }
}
