use elliptope::ops::{complete_kpartite, complete_weighted, cycle, join, lex_product, path, SplitSpec};
use elliptope::rational::{int, rat};
use elliptope::sdp::{
    exactness_numeric, phi_property_suite, solve_phi, solve_phi_with, ExactnessVerdict, SdpError,
    SolverOptions, DEFAULT_TOL,
};
use elliptope::Graph;

#[test]
fn k3_lex_p3_value() {
    let g = lex_product(&elliptope::ops::complete(3).unwrap(), &path(3).unwrap());
    let r = solve_phi(&g, DEFAULT_TOL).unwrap();
    assert!((r.phi - 20.25).abs() < 1e-5, "{r:?}");
}

#[test]
fn complete_bipartite_value() {
    let r = solve_phi(&complete_kpartite(&[3, 3]).unwrap(), DEFAULT_TOL).unwrap();
    assert!((r.phi - 9.0).abs() < 1e-5, "{r:?}");
}

#[test]
fn five_cycle_has_gap() {
    let r = solve_phi(&cycle(5).unwrap(), DEFAULT_TOL).unwrap();
    let expected = (25.0 + 5.0 * 5f64.sqrt()) / 8.0;
    assert!((r.phi - expected).abs() < 1e-5, "{r:?}");
    assert!(r.phi >= 4.1);
}

#[test]
fn result_invariants() {
    let g = join(&path(2).unwrap(), &path(3).unwrap());
    let r = solve_phi(&g, DEFAULT_TOL).unwrap();
    assert!(r.gap >= -r.tol);
    assert!(r.dual_residual >= -r.tol);
    assert_eq!(r.dual_diag.len(), 5);
    assert!((r.dual_diag.iter().sum::<f64>() - r.phi).abs() < 1e-12);
}

#[test]
fn deterministic() {
    let g = cycle(7).unwrap();
    assert_eq!(solve_phi(&g, 1e-8).unwrap(), solve_phi(&g, 1e-8).unwrap());
}

#[test]
fn single_vertex_and_edgeless() {
    let r = solve_phi(&Graph::new(1), DEFAULT_TOL).unwrap();
    assert!(r.phi.abs() < 1e-6);
    let r = solve_phi(&Graph::new(4), DEFAULT_TOL).unwrap();
    assert!(r.phi.abs() < 1e-6);
}

#[test]
fn rejects_bad_inputs() {
    assert_eq!(solve_phi(&Graph::new(0), 1e-7), Err(SdpError::Empty));
    assert_eq!(solve_phi(&Graph::new(3), 0.0), Err(SdpError::InvalidTolerance(0.0)));
    assert!(matches!(
        solve_phi(&Graph::new(300), 1e-7),
        Err(SdpError::TooLarge { n: 300, cap: 256 })
    ));
    let opts = SolverOptions { max_iterations: Some(2), ..SolverOptions::default() };
    assert!(matches!(
        solve_phi_with(&cycle(5).unwrap(), &opts),
        Err(SdpError::NoConvergence { .. })
    ));
}

#[test]
fn exactness_verdicts() {
    let g = complete_weighted(&[int(5), int(3), int(4), int(4)]).unwrap();
    let r = exactness_numeric(&g, DEFAULT_TOL).unwrap();
    assert!(matches!(r.verdict, ExactnessVerdict::ExactWithin { .. }), "{r:?}");
    assert_eq!(r.maxcut, int(64));

    let g = lex_product(&elliptope::ops::complete(3).unwrap(), &path(3).unwrap());
    let r = exactness_numeric(&g, DEFAULT_TOL).unwrap();
    match r.verdict {
        ExactnessVerdict::GapAtLeast { delta } => assert!((delta - 0.25).abs() < 1e-4, "{r:?}"),
        other => panic!("{other:?}"),
    }

    let g = join(&path(2).unwrap(), &path(3).unwrap());
    let r = exactness_numeric(&g, DEFAULT_TOL).unwrap();
    assert!(matches!(r.verdict, ExactnessVerdict::GapAtLeast { .. }), "{r:?}");
}

#[test]
fn property_suite_examples() {
    let c5 = cycle(5).unwrap();
    let spec = SplitSpec::new(vec![2, 1, 1, 1, 1]).unwrap();
    let r = phi_property_suite(&c5, &int(3), &spec, &SolverOptions::default()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!((r.scaling.lhs - r.scaling.rhs).abs() <= 1e-5);
    assert!((r.split_invariance.lhs - r.split_invariance.rhs).abs() <= 2e-5);

    let c4 = cycle(4).unwrap();
    let chord = elliptope::ops::with_added_weight(&c4, 0, 2, &rat(1, 1));
    let a = solve_phi(&c4, DEFAULT_TOL).unwrap().phi;
    let b = solve_phi(&chord, DEFAULT_TOL).unwrap().phi;
    assert!(a <= b + DEFAULT_TOL);
}
