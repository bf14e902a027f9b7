use std::path::Path;
use std::time::Instant;

use bura::discretize::{
    fd_1d_lumped_nonuniform, fd_1d_variable, fd_2d_laplacian, fem_1d_consistent, fem_2d_lshaped, Domain, Mesh1D,
    Quadrature,
};
use bura::experiments::{
    mmatrix_sweep, paper, tensor_checkerboard, uniform_study, RefinementRow, RefinementStudy, UniformConfig,
    UniformRow, FINE_EXPONENT,
};
use bura::linalg::{SolveOptions, DENSE_MAX};
use bura::rational::{compute_bura, to_additive_form, to_multiplicative_form, DEFAULT_TOL};
use bura::solvers::{check_positivity, solve_bura_orig, solve_pbura, solve_qmethod, Method, QParam};
use bura::{Problem, Report};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Experiment, ExperimentConfig, MeshSize, ProblemKind};
use crate::error::{CellContext, CliError};
use crate::output::{emit_plotdata, write_records, Record};

pub fn run(cfg: &ExperimentConfig) -> Result<(), CliError> {
    cfg.validate()?;
    if let Some(dir) = &cfg.plot_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    }
    let records = match cfg.experiment {
        Experiment::BuraTable => bura_table(cfg)?,
        Experiment::Table2 | Experiment::Table3 => uniform_tables(cfg)?,
        Experiment::Table4 | Experiment::Table5 => refinement_tables(cfg)?,
        Experiment::MmatrixStudy => mmatrix(cfg)?,
        Experiment::SingleSolve => solve(cfg)?,
        Experiment::Figure2 => figure2(cfg)?,
    };
    write_records(cfg.out.as_deref(), &records, cfg.timings)
}

fn opts(cfg: &ExperimentConfig) -> SolveOptions {
    SolveOptions::with_tol(cfg.tol)
}

fn default_degree(method: Method) -> usize {
    match method {
        Method::PBuraAdditive | Method::PBuraMultiplicative => 9,
        Method::BuraOrig => 8,
        Method::QMethod | Method::KPrimeQMethod => 7,
    }
}

/// Degree used for `method`: the single `--k` value when given, else the published choice.
fn degree(cfg: &ExperimentConfig, method: Method, given: bool) -> usize {
    if given { cfg.degrees[0] } else { default_degree(method) }
}

fn bura_table(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for &gamma in &cfg.alphas {
        for &k in &cfg.degrees {
            let start = Instant::now();
            let r = compute_bura(gamma, k, DEFAULT_TOL).cell(|| format!("gamma = {gamma}, k = {k}"))?;
            let form = to_additive_form(&r).cell(|| format!("gamma = {gamma}, k = {k}"))?;
            let bura::FractionForm::Additive(a) = &form else { unreachable!() };
            let min_coef = a.residues.iter().copied().fold(a.c0, f64::min);
            let base = Record {
                experiment: "bura-table",
                case: "t^gamma".into(),
                alpha: Some(gamma),
                k: Some(k),
                method: "bura".into(),
                tol: Some(DEFAULT_TOL),
                wall_time: Some(start.elapsed()),
                ..Default::default()
            };
            out.push(base.metric("error", r.error(), paper::bura_error(gamma, k)));
            out.push(base.metric("min_coefficient", min_coef, None));
        }
    }
    Ok(out)
}

fn uniform_records(row: &UniformRow, k: Option<usize>, tol: f64) -> Vec<Record> {
    let base = Record {
        experiment: if row.rhs == bura::experiments::UniformRhs::Sine { "table3" } else { "table2" },
        case: row.rhs.as_str().into(),
        alpha: Some(row.alpha),
        k,
        h: MeshSize::pow2(row.h_exp).label(),
        method: row.report.method.as_str().into(),
        tol: Some(tol),
        delta: Some(row.scaling),
        delta_source: row.scaling_source.map(|s| s.as_str()),
        systems_solved: Some(row.report.systems_solved),
        wall_time: Some(row.report.wall_time),
        ..Default::default()
    };
    let e = row.report.errors.as_ref().expect("compared against the exact solution");
    let mut out = vec![
        base.metric("l2_rel", e.l2_rel, row.paper.map(|p| p.0)),
        base.metric("linf_rel", e.linf_rel, row.paper.map(|p| p.1)),
    ];
    if let Some(b) = row.bound {
        out.push(base.metric("bound", b, None));
    }
    out
}

fn uniform_config(cfg: &ExperimentConfig, given: bool) -> UniformConfig {
    UniformConfig {
        pbura_degree: degree(cfg, Method::PBuraAdditive, given),
        bura_degree: degree(cfg, Method::BuraOrig, given),
        q_degree: degree(cfg, Method::QMethod, given),
        kprime: cfg.kprime,
        opts: opts(cfg),
    }
}

fn method_degree(u: &UniformConfig, m: Method) -> Option<usize> {
    match m {
        Method::PBuraAdditive | Method::PBuraMultiplicative => Some(u.pbura_degree),
        Method::BuraOrig => Some(u.bura_degree),
        Method::QMethod => Some(u.q_degree),
        Method::KPrimeQMethod => None,
    }
}

fn uniform_tables(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let rhs = cfg.experiment.uniform_rhs().expect("uniform table");
    let u = uniform_config(cfg, cfg.degrees_given);
    let mut out = Vec::new();
    for &alpha in &cfg.alphas {
        for h in &cfg.meshes {
            let e = h.exponent().expect("validated");
            let rows = uniform_study(rhs, alpha, e, &cfg.methods, &u)
                .cell(|| format!("{} alpha = {alpha}, h = {}", rhs.as_str(), h.label()))?;
            for row in &rows {
                out.extend(uniform_records(row, method_degree(&u, row.report.method), cfg.tol));
            }
        }
    }
    Ok(out)
}

fn refinement_tables(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let rhs = cfg.experiment.series_rhs().expect("refinement table");
    let name = cfg.experiment.as_str();
    let k = cfg.degrees[0];
    let mut out = Vec::new();
    let mut series = Vec::new();
    let mut meshes: Vec<(u32, u32, Mesh1D)> = Vec::new();
    for &alpha in &cfg.alphas {
        let study = RefinementStudy::new(rhs, alpha, k, cfg.terms, FINE_EXPONENT).cell(|| format!("{name} alpha = {alpha}"))?;
        for &h0 in &cfg.h0 {
            let steps = cfg.refine_steps.unwrap_or_else(|| study.default_steps(h0));
            let cell = |level: u32| format!("{name} alpha = {alpha}, h0 = 2^-{h0}, level {level}");
            for (case, level) in [("level0", 0), ("last", steps)] {
                let start = Instant::now();
                let row = study.run(h0, level, cfg.p).cell(|| cell(level))?;
                let elapsed = start.elapsed();
                out.extend(refinement_records(name, case, k, cfg.tol, &row, elapsed));
                series.push(vec![alpha, h0 as f64, level as f64, row.nodes as f64, row.min_segment, row.error, row.paper.unwrap_or(f64::NAN)]);
            }
            if !meshes.iter().any(|m| m.0 == h0 && m.1 == steps) {
                meshes.push((h0, steps, study.mesh(h0, steps, cfg.p).cell(|| cell(steps))?));
            }
        }
    }
    if let Some(dir) = &cfg.plot_dir {
        emit_plotdata(
            &dir.join(format!("{name}_series.dat")),
            &["alpha", "h0", "level", "nodes", "min_segment", "error", "paper_error"],
            &series,
        )?;
        for (h0, steps, mesh) in &meshes {
            let rows: Vec<Vec<f64>> = mesh.interior().iter().map(|&x| vec![x]).collect();
            emit_plotdata(&dir.join(format!("{name}_mesh_h0_{h0}_steps_{steps}.dat")), &["x"], &rows)?;
        }
    }
    Ok(out)
}

fn refinement_records(
    name: &'static str,
    case: &str,
    k: usize,
    tol: f64,
    row: &RefinementRow,
    elapsed: std::time::Duration,
) -> Vec<Record> {
    let base = Record {
        experiment: name,
        case: case.into(),
        alpha: Some(row.alpha),
        k: Some(k),
        h: MeshSize::pow2(row.h0_exp).label(),
        method: Method::PBuraAdditive.as_str().into(),
        tol: Some(tol),
        delta: Some(1.0),
        delta_source: Some("unit"),
        systems_solved: Some(row.systems_solved),
        wall_time: Some(elapsed),
        ..Default::default()
    };
    vec![
        base.metric("l2_rel", row.error, row.paper),
        base.metric("nodes", row.nodes as f64, row.paper_nodes.map(|n| n as f64)),
        base.metric("steps", row.steps as f64, None),
        base.metric("min_segment", row.min_segment, None),
    ]
}

fn mmatrix(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let case = if cfg.lshaped { "lshaped" } else { "1d" };
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for h in &cfg.meshes {
        let n = h.reciprocal().expect("validated");
        let start = Instant::now();
        let rows = mmatrix_sweep(cfg.lshaped, n, &cfg.alphas).cell(|| format!("mmatrix {case}, h = 1/{n}"))?;
        let elapsed = start.elapsed() / rows.len().max(1) as u32;
        for row in &rows {
            let r = &row.report;
            let base = Record {
                experiment: "mmatrix",
                case: case.into(),
                alpha: Some(r.alpha),
                h: h.label(),
                method: "consistent-mass".into(),
                wall_time: Some(elapsed),
                ..Default::default()
            };
            out.push(base.metric("min_row_sum", r.min_row_sum, row.paper.map(|p| p.0)));
            out.push(base.metric("max_off_diagonal", r.max_off_diagonal, row.paper.map(|p| p.1)));
            out.push(base.metric("max_row_sum", r.max_row_sum, None));
            out.push(base.metric("min_diagonal", r.min_diagonal, None));
            out.push(base.metric("is_m_matrix", f64::from(u8::from(r.is_m_matrix)), None));
            out.push(base.metric("dim", r.dim as f64, None));
        }
        if cfg.battery > 0 {
            out.extend(positivity(cfg, n, &mut rng)?);
        }
    }
    Ok(out)
}

fn positivity_problems(lshaped: bool, n: usize) -> bura::Result<Vec<Problem>> {
    if lshaped {
        let f = fem_2d_lshaped::<f64>(n - 1)?;
        let fd = fd_2d_laplacian::<f64>(n - 1, Domain::LShaped)?;
        Ok(vec![fd, f.lumped_problem()?, f.consistent_problem()?])
    } else {
        let fd = fd_1d_variable::<f64>(|_| 1.0, n - 1, Quadrature::Midpoint, |_| 0.0)?;
        let lumped = fd_1d_lumped_nonuniform::<f64>(&Mesh1D::uniform(n), None, None)?;
        Ok(vec![fd, lumped, fem_1d_consistent::<f64>(n - 1)?])
    }
}

/// Unit loads plus `battery` uniform random nonnegative loads per scheme and `α`.
fn positivity(cfg: &ExperimentConfig, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Record>, CliError> {
    let k = cfg.degrees[0];
    let problems = positivity_problems(cfg.lshaped, n).cell(|| format!("positivity h = 1/{n}"))?;
    let mut out = Vec::new();
    for problem in &problems {
        let dim = problem.dim();
        let battery: Vec<Vec<f64>> = (0..cfg.battery).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
        for &alpha in &cfg.alphas {
            let cell = || format!("positivity {} alpha = {alpha}, h = 1/{n}", problem.scheme.as_str());
            let form = to_additive_form(&compute_bura(alpha, k, DEFAULT_TOL).cell(cell)?).cell(cell)?;
            let delta = problem.bounds.delta();
            let start = Instant::now();
            let rep = check_positivity(problem, &form, delta, &battery, &opts(cfg)).cell(cell)?;
            let base = Record {
                experiment: "positivity",
                case: problem.scheme.as_str().into(),
                alpha: Some(alpha),
                k: Some(k),
                h: MeshSize::inverse(n).label(),
                method: Method::PBuraAdditive.as_str().into(),
                tol: Some(cfg.tol),
                delta: Some(delta),
                delta_source: Some(problem.bounds.lambda1.source.as_str()),
                systems_solved: Some(rep.cases * (k + 1)),
                wall_time: Some(start.elapsed()),
                ..Default::default()
            };
            out.push(base.metric("worst_scaled_min", rep.worst_scaled_min, None));
            out.push(base.metric("worst_case", rep.worst_case as f64, None));
            out.push(base.metric("cases", rep.cases as f64, None));
        }
    }
    Ok(out)
}

/// One solve with the problem's own bounds: `δ = λ₁` estimate for P-BURA,
/// `Λ = λ_N` bound for BURA-orig.
fn solve_one(
    problem: &Problem,
    alpha: f64,
    method: Method,
    k: usize,
    kprime: f64,
    opts: &SolveOptions,
) -> bura::Result<(Report, Option<f64>, Option<&'static str>)> {
    match method {
        Method::PBuraAdditive | Method::PBuraMultiplicative => {
            let r = compute_bura(alpha, k, DEFAULT_TOL)?;
            let form = if method == Method::PBuraAdditive { to_additive_form(&r)? } else { to_multiplicative_form(&r)? };
            let delta = problem.bounds.delta();
            Ok((solve_pbura(problem, &form, delta, opts)?, Some(delta), Some(problem.bounds.lambda1.source.as_str())))
        }
        Method::BuraOrig => {
            let form = to_additive_form(&compute_bura(1.0 - alpha, k, DEFAULT_TOL)?)?;
            let upper = problem.bounds.lambda_n;
            Ok((solve_bura_orig(problem, &form, upper.value, opts)?, Some(upper.value), Some(upper.source.as_str())))
        }
        Method::QMethod => Ok((solve_qmethod(problem, alpha, QParam::Degree(k), opts)?, None, None)),
        Method::KPrimeQMethod => Ok((solve_qmethod(problem, alpha, QParam::Step(kprime), opts)?, None, None)),
    }
}

fn solve(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let h = cfg.meshes[0];
    let alpha = cfg.alphas[0];
    let cell = || format!("solve {:?} alpha = {alpha}, h = {}", cfg.problem, h.label());
    if cfg.problem == ProblemKind::Fd2d {
        let e = h.exponent().filter(|e| (2..=12).contains(e)).ok_or_else(|| {
            CliError::Config(format!("fd2d needs h = 2^-e with 2 ≤ e ≤ 12 (got {})", h.label()))
        })?;
        let u = uniform_config(cfg, cfg.degrees_given);
        let rows = uniform_study(cfg.rhs, alpha, e, &cfg.methods, &u).cell(cell)?;
        return Ok(rows
            .iter()
            .flat_map(|row| {
                let mut r = uniform_records(row, method_degree(&u, row.report.method), cfg.tol);
                r.iter_mut().for_each(|r| r.experiment = "solve");
                r
            })
            .collect());
    }
    let problem = build_problem(cfg, h).cell(cell)?;
    let reference = if problem.dim() <= DENSE_MAX { Some(problem.exact_dense(alpha).cell(cell)?) } else { None };
    let mut out = Vec::new();
    for &method in &cfg.methods {
        let k = degree(cfg, method, cfg.degrees_given);
        let (rep, delta, source) = solve_one(&problem, alpha, method, k, cfg.kprime, &opts(cfg)).cell(cell)?;
        let rep = match &reference {
            Some(u) => rep.compare(u, None).cell(cell)?,
            None => rep,
        };
        let base = Record {
            experiment: "solve",
            case: problem.scheme.as_str().into(),
            alpha: Some(alpha),
            k: (method != Method::KPrimeQMethod).then_some(k),
            h: h.label(),
            method: method.as_str().into(),
            tol: Some(cfg.tol),
            delta,
            delta_source: source,
            systems_solved: Some(rep.systems_solved),
            wall_time: Some(rep.wall_time),
            ..Default::default()
        };
        let norm = rep.solution.iter().map(|v| v * v).sum::<f64>().sqrt();
        out.push(base.metric("l2_norm", norm, None));
        if let Some(e) = &rep.errors {
            out.push(base.metric("l2_rel", e.l2_rel, None));
            out.push(base.metric("linf_rel", e.linf_rel, None));
        }
        out.push(base.metric("dim", problem.dim() as f64, None));
    }
    Ok(out)
}

fn build_problem(cfg: &ExperimentConfig, h: MeshSize) -> bura::Result<Problem> {
    let n = h.reciprocal();
    match cfg.problem {
        ProblemKind::Fd1d => fd_1d_variable(|_| 1.0, n.unwrap_or(2) - 1, Quadrature::Midpoint, |_| 1.0),
        ProblemKind::Lshaped => {
            let p = fd_2d_laplacian::<f64>(n.unwrap_or(2) - 1, Domain::LShaped)?;
            let dim = p.dim();
            p.with_rhs(vec![1.0; dim])
        }
        ProblemKind::Fem1d => {
            let p = fem_1d_consistent::<f64>(n.unwrap_or(2) - 1)?;
            let dim = p.dim();
            p.with_nodal_rhs(vec![1.0; dim])
        }
        ProblemKind::Lumped1d => {
            let segments = (1.0 / h.0).round() as usize;
            let mesh = Mesh1D::uniform(segments).refine_boundary(cfg.refine_steps.unwrap_or(0) as usize, cfg.p);
            fd_1d_lumped_nonuniform(&mesh, Some(&|_| 1.0), None)
        }
        ProblemKind::Fd2d => unreachable!("handled by the uniform study"),
    }
}

/// Window of the published error plot.
const WINDOW: (f64, f64) = (0.496, 0.504);

fn figure2(cfg: &ExperimentConfig) -> Result<Vec<Record>, CliError> {
    let alpha = cfg.alphas[0];
    let k = cfg.degrees[0];
    let h0 = cfg.h0[0];
    let steps = cfg.refine_steps.unwrap_or(6);
    let start = Instant::now();
    let t = tensor_checkerboard(alpha, k, h0, steps).cell(|| format!("figure2 alpha = {alpha}, h0 = 2^-{h0}"))?;
    let elapsed = start.elapsed();
    let quadrant = (t.len() - 1) / 2;
    let published = h0 == 9 && steps == 6;
    let base = Record {
        experiment: "figure2",
        case: "checkerboard-tensor".into(),
        alpha: Some(alpha),
        k: Some(k),
        h: MeshSize::pow2(h0).label(),
        method: Method::PBuraAdditive.as_str().into(),
        tol: Some(cfg.tol),
        delta: Some(1.0),
        delta_source: Some("unit"),
        systems_solved: Some(t.systems_solved),
        wall_time: Some(elapsed),
        ..Default::default()
    };
    let inside = |x: f64| (WINDOW.0..=WINDOW.1).contains(&x);
    let len = t.len();
    let mut window_error = 0.0f64;
    for (j, &y) in t.coords.iter().enumerate() {
        for (i, &x) in t.coords.iter().enumerate() {
            if inside(x) && inside(y) {
                window_error = window_error.max((t.solution[j * len + i] - t.exact[j * len + i]).abs());
            }
        }
    }
    let out = vec![
        base.metric("max_error", t.max_error(), None),
        base.metric("window_max_error", window_error, None),
        base.metric("nodes", quadrant as f64, published.then_some(523.0)),
        base.metric("grid", t.len() as f64, published.then_some(1047.0)),
    ];
    if let Some(dir) = &cfg.plot_dir {
        write_figure2(dir, &t)?;
    }
    Ok(out)
}

fn write_figure2(dir: &Path, t: &bura::experiments::TensorCheckerboard) -> Result<(), CliError> {
    let len = t.len();
    let inside = |x: f64| (WINDOW.0..=WINDOW.1).contains(&x);
    let mut window = Vec::new();
    for (j, &y) in t.coords.iter().enumerate() {
        for (i, &x) in t.coords.iter().enumerate() {
            if inside(x) && inside(y) {
                let (w, u) = (t.solution[j * len + i], t.exact[j * len + i]);
                window.push(vec![x, y, w, u, u - w]);
            }
        }
    }
    emit_plotdata(&dir.join("figure2_window.dat"), &["x", "y", "w", "u", "error"], &window)?;
    let diagonal: Vec<Vec<f64>> = (0..len)
        .map(|i| {
            let (w, u) = (t.solution[i * len + i], t.exact[i * len + i]);
            vec![t.coords[i], w, u, u - w]
        })
        .collect();
    emit_plotdata(&dir.join("figure2_diagonal.dat"), &["x", "w", "u", "error"], &diagonal)?;
    let coords: Vec<Vec<f64>> = t.coords.iter().map(|&x| vec![x]).collect();
    emit_plotdata(&dir.join("figure2_mesh.dat"), &["x"], &coords)
}
