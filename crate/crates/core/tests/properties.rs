use bura::discretize::{fd_1d_lumped_nonuniform, fd_1d_variable, fd_2d_laplacian, Domain, Mesh1D, Quadrature};
use bura::linalg::SolveOptions;
use bura::rational::{compute_bura, to_additive_form, to_multiplicative_form, DEFAULT_TOL};
use bura::solvers::{solve_pbura, solve_qmethod, QParam};
use bura::{Form, Problem, Problem32};
use proptest::prelude::*;

fn forms(alpha: f64, k: usize) -> (Form, Form, f64) {
    let r = compute_bura(alpha, k, DEFAULT_TOL).unwrap();
    (to_additive_form(&r).unwrap(), to_multiplicative_form(&r).unwrap(), r.error())
}

fn fd1d(n: usize, a: f64) -> Problem {
    fd_1d_variable(move |x| 1.0 + a * (3.0 * x).sin(), n, Quadrature::Midpoint, |_| 0.0).unwrap()
}

fn alpha() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![0.2, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additive_and_multiplicative_forms_agree(a in alpha(), k in 3usize..10, log_lambda in 0.0f64..8.0) {
        let (add, mult, _) = forms(a, k);
        let lambda = 10f64.powf(log_lambda);
        let (x, y) = (add.eval_reciprocal(lambda), mult.eval_reciprocal(lambda));
        prop_assert!((x - y).abs() <= 1e-12 * x.abs());
    }

    #[test]
    fn approximation_error_is_bounded_on_the_spectrum(a in alpha(), k in 3usize..10, log_lambda in 0.0f64..8.0) {
        let (add, _, e) = forms(a, k);
        let lambda = 10f64.powf(log_lambda);
        prop_assert!((add.eval_reciprocal(lambda) - lambda.powf(-a)).abs() <= e * (1.0 + 1e-6));
    }

    #[test]
    fn pbura_is_linear(
        a in alpha(),
        n in 5usize..60,
        f in prop::collection::vec(-1.0f64..1.0, 60),
        g in prop::collection::vec(-1.0f64..1.0, 60),
        s in -3.0f64..3.0,
    ) {
        let (add, _, _) = forms(a, 7);
        let p = fd1d(n, 0.3);
        let delta = p.bounds.delta();
        let solve = |rhs: Vec<f64>| solve_pbura(&p.clone().with_rhs(rhs).unwrap(), &add, delta, &SolveOptions::default()).unwrap().solution;
        let (f, g) = (f[..n].to_vec(), g[..n].to_vec());
        let combo: Vec<f64> = f.iter().zip(&g).map(|(x, y)| x + s * y).collect();
        let (wf, wg, wc) = (solve(f), solve(g), solve(combo));
        for i in 0..n {
            prop_assert!((wc[i] - wf[i] - s * wg[i]).abs() <= 1e-10 * (1.0 + wc[i].abs()));
        }
    }

    #[test]
    fn additive_and_multiplicative_solves_agree(a in alpha(), n in 3usize..12) {
        let (add, mult, _) = forms(a, 6);
        let p = fd_2d_laplacian::<f64>(n, Domain::UnitSquare).unwrap();
        let dim = p.dim();
        let p = p.with_rhs((0..dim).map(|i| ((i * 7) % 5) as f64 - 2.0).collect()).unwrap();
        let delta = p.bounds.delta();
        let x = solve_pbura(&p, &add, delta, &SolveOptions::default()).unwrap().solution;
        let y = solve_pbura(&p, &mult, delta, &SolveOptions::default()).unwrap().solution;
        let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (u, v) in x.iter().zip(&y) {
            prop_assert!((u - v).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn lumped_solutions_stay_nonnegative(
        a in alpha(),
        cuts in prop::collection::vec(0.01f64..0.99, 8..80),
        f in prop::collection::vec(0.0f64..1.0, 80),
    ) {
        let mut nodes = cuts;
        nodes.extend([0.0, 1.0]);
        nodes.sort_by(f64::total_cmp);
        nodes.dedup_by(|x, y| (*x - *y).abs() < 1e-4);
        let mesh = Mesh1D::new(nodes).unwrap();
        let p = fd_1d_lumped_nonuniform::<f64>(&mesh, None, None).unwrap();
        let n = p.dim();
        let p = p.with_rhs(f[..n].to_vec()).unwrap();
        let (add, _, _) = forms(a, 8);
        let w = solve_pbura(&p, &add, p.bounds.delta(), &SolveOptions::default()).unwrap().solution;
        let scale = p.rhs.iter().fold(0.0f64, |m, v| m.max(*v));
        prop_assert!(w.iter().all(|v| *v >= -10.0 * f64::EPSILON * scale));
    }

    #[test]
    fn boundary_refinement_adds_nodes_per_step(h0 in 3u32..9, steps in 0usize..8, p in 2usize..4) {
        let mesh = Mesh1D::uniform(1 << h0).refine_boundary(steps, p);
        prop_assert_eq!(mesh.interior_count(), (1usize << h0) - 1 + 2 * (p - 1) * steps);
        prop_assert!((mesh.min_segment() - 0.5f64.powi(h0 as i32) / (p as f64).powi(steps as i32)).abs() < 1e-15);
    }

    #[test]
    fn single_precision_tracks_double(a in alpha(), n in 10usize..200) {
        let (add, _, _) = forms(a, 6);
        let p = fd1d(n, 0.5);
        let p = p.clone().with_rhs(vec![1.0; n]).unwrap();
        let p32: Problem32 = p.cast();
        let delta = p.bounds.delta();
        let w64 = solve_pbura(&p, &add, delta, &SolveOptions::default()).unwrap().solution;
        let w32 = solve_pbura(&p32, &add, delta, &SolveOptions::with_tol(1e-6)).unwrap().solution;
        let scale = w64.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        // rounding grows with the condition number, O(n²) here
        let tol = (n * n) as f64 * f32::EPSILON as f64;
        for (x, y) in w64.iter().zip(&w32) {
            prop_assert!((x - *y as f64).abs() <= tol * scale);
        }
    }

    #[test]
    fn quadrature_converges_with_smaller_steps(a in alpha()) {
        let p = fd1d(40, 0.0).with_rhs(vec![1.0; 40]).unwrap();
        let u = p.exact_dense(a).unwrap();
        let err = |step: f64| {
            let w = solve_qmethod(&p, a, QParam::Step(step), &SolveOptions::default()).unwrap().solution;
            w.iter().zip(&u).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        };
        prop_assert!(err(0.25) < err(0.6));
    }
}
