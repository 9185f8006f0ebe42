use elliptope::sdp::SolverOptions;
use elliptope::suite::{run_suite, SuiteName};

fn assert_suite(name: SuiteName) {
    let r = run_suite(name, &SolverOptions::default());
    let failed: Vec<_> = r.cases.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{name}: {failed:#?}");
    assert!(r.total > 0);
}

#[test]
fn counterexamples_suite() {
    let r = run_suite(SuiteName::Counterexamples, &SolverOptions::default());
    assert_eq!((r.passed, r.total), (2, 2));
}

#[test]
fn certificates_suite() {
    assert_suite(SuiteName::Certificates);
}

#[test]
fn recognizers_suite() {
    assert_suite(SuiteName::Recognizers);
}

#[test]
fn phi_properties_suite() {
    assert_suite(SuiteName::PhiProperties);
}

#[test]
fn suite_names_round_trip() {
    for n in SuiteName::ALL {
        assert_eq!(n.as_str().parse::<SuiteName>(), Ok(n));
    }
    assert!("nope".parse::<SuiteName>().is_err());
}
