//! Named invariant batteries over the built-in corpus.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{
    cert_from_cut, cert_join_balanced, cert_join_unbalanced, cert_nondominating, lift_lex,
    lift_split_certificate, replay_counterexample, verify_certificate, Certificate, Which,
};
use crate::corpus::{self, Family};
use crate::ops::{complete, complete_kpartite, cycle, edgeless, path, SplitSpec};
use crate::oracle::brute_force_maxcut;
use crate::rational::{int, rat, to_f64};
use crate::recognizer::{
    kpartite_exactness, recognize_complement_core, verify_split_decomposable, KpartiteVerdict,
    RejectReason, SplitDecompVerdict,
};
use crate::sdp::{phi_property_suite, solve_phi_with, SolverOptions};
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    PhiProperties,
    Certificates,
    Counterexamples,
    Recognizers,
}

impl SuiteName {
    pub const ALL: [SuiteName; 4] = [
        SuiteName::PhiProperties,
        SuiteName::Certificates,
        SuiteName::Counterexamples,
        SuiteName::Recognizers,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::PhiProperties => "phi-properties",
            SuiteName::Certificates => "certificates",
            SuiteName::Counterexamples => "counterexamples",
            SuiteName::Recognizers => "recognizers",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: SuiteName,
    pub passed: usize,
    pub total: usize,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

type Outcome = Result<String, String>;
type Case = (String, Box<dyn Fn() -> Outcome + Send + Sync>);

fn case(name: impl Into<String>, f: impl Fn() -> Outcome + Send + Sync + 'static) -> Case {
    (name.into(), Box::new(f))
}

fn run(name: SuiteName, cases: Vec<Case>) -> SuiteReport {
    let cases: Vec<CaseResult> = cases
        .into_par_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CaseResult { name, passed: true, detail },
            Err(detail) => CaseResult { name, passed: false, detail },
        })
        .collect();
    SuiteReport {
        name,
        passed: cases.iter().filter(|c| c.passed).count(),
        total: cases.len(),
        cases,
    }
}

pub fn run_suite(name: SuiteName, opts: &SolverOptions) -> SuiteReport {
    let cases = match name {
        SuiteName::PhiProperties => phi_cases(opts),
        SuiteName::Certificates => certificate_cases(),
        SuiteName::Counterexamples => counterexample_cases(),
        SuiteName::Recognizers => recognizer_cases(),
    };
    run(name, cases)
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

/// Verifies a certificate and compares its objective with the oracle.
fn check_certificate(c: &Certificate) -> Outcome {
    check_certificate_with(c, true)
}

fn check_certificate_with(c: &Certificate, against_oracle: bool) -> Outcome {
    let report = verify_certificate(c).map_err(err)?;
    if !report.is_optimal() {
        return Err(format!("not optimal, gap {}", report.duality_gap));
    }
    if !report.rank_identity_holds() {
        return Err("rank identity fails".into());
    }
    if against_oracle && c.n() <= 20 {
        let mc = brute_force_maxcut(&c.source_graph).map_err(err)?.value;
        if mc != c.objective {
            return Err(format!("objective {} but oracle {}", c.objective, mc));
        }
    }
    Ok(format!("objective {}, rank X {}, rank S {}", c.objective, report.rank_x, report.rank_s))
}

fn small_family(k: usize) -> Vec<(String, Graph)> {
    let mut v = vec![
        (format!("edgeless({k})"), edgeless(k).expect("k ≥ 1")),
        (format!("P{k}"), path(k).expect("k ≥ 1")),
        (format!("K{k}"), complete(k).expect("k ≥ 1")),
    ];
    if k >= 3 {
        v.push((format!("C{k}"), cycle(k).expect("k ≥ 3")));
    }
    v
}

fn phi_cases(opts: &SolverOptions) -> Vec<Case> {
    let mut cases = Vec::new();
    for name in ["c5", "k3", "six_exact_multi", "six_exact_unique", "six_gap", "p2_join_p3", "wk4_5344", "cone_c4_k5"] {
        let opts = opts.clone();
        cases.push(case(format!("properties {name}"), move || {
            let g = corpus::load(name).map_err(err)?;
            let mut mult = vec![1; g.n()];
            mult[0] = 2;
            let spec = SplitSpec::new(mult).map_err(err)?;
            let r = phi_property_suite(&g, &int(3), &spec, &opts).map_err(err)?;
            if r.passed() {
                Ok(format!("phi {:.6}", r.phi))
            } else {
                Err(format!("{r:?}"))
            }
        }));
    }
    for k in 2..=4 {
        for (na, ga) in small_family(k) {
            for (nb, gb) in small_family(k) {
                let (ga, opts) = (ga.clone(), opts.clone());
                cases.push(case(format!("solver agrees on {na} join {nb}"), move || {
                    let c = cert_join_balanced(&ga, &gb).map_err(err)?;
                    let phi = solve_phi_with(&c.source_graph, &opts).map_err(err)?.phi;
                    let obj = to_f64(&c.objective);
                    if (phi - obj).abs() <= opts.tol * obj.abs().max(1.0) {
                        Ok(format!("phi {phi:.8} vs {obj}"))
                    } else {
                        Err(format!("phi {phi} vs certificate {obj}"))
                    }
                }));
            }
        }
    }
    cases
}

fn certificate_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for k in 2..=4 {
        for (na, ga) in small_family(k) {
            for (nb, gb) in small_family(k) {
                let ga = ga.clone();
                cases.push(case(format!("balanced {na} join {nb}"), move || {
                    check_certificate(&cert_join_balanced(&ga, &gb).map_err(err)?)
                }));
            }
        }
    }
    for (ga, gb, label) in [
        (cycle(4), edgeless(5), "C4 join edgeless(5)"),
        (path(4), edgeless(6), "P4 join edgeless(6)"),
        (complete(4), cycle(6), "K4 join C6"),
        (complete(3), edgeless(4), "K3 join edgeless(4)"),
    ] {
        cases.push(case(format!("unbalanced {label}"), move || {
            let (ga, gb) = (ga.clone().map_err(err)?, gb.clone().map_err(err)?);
            check_certificate(&cert_join_unbalanced(&ga, &gb).map_err(err)?)
        }));
    }
    for m in [[5, 3, 4, 4], [2, 2, 4, 4], [1, 1, 1, 1], [3, 4, 5, 6]] {
        cases.push(case(format!("nondominating {m:?}"), move || {
            let m: Vec<_> = m.iter().map(|&v| int(v)).collect();
            check_certificate(&cert_nondominating(&m).map_err(err)?)
        }));
    }
    // No balanced subset here, so the relaxation value exceeds the cut value.
    cases.push(case("nondominating rational masses", || {
        let m = [rat(1, 2), rat(2, 3), rat(3, 4)];
        let c = cert_nondominating(&m).map_err(err)?;
        if c.objective != rat(529, 576) {
            return Err(format!("objective {}", c.objective));
        }
        check_certificate_with(&c, false)
    }));
    cases.push(case("split lift of K4 weighted (5,3,4,4)", || {
        let c = cert_nondominating(&[int(5), int(3), int(4), int(4)]).map_err(err)?;
        let spec = SplitSpec::new(vec![2, 1, 3, 1]).map_err(err)?;
        check_certificate(&lift_split_certificate(&c, &spec).map_err(err)?)
    }));
    for (n1, g1, n2, g2) in [
        ("P2", path(2), "K3", complete(3)),
        ("C4", cycle(4), "edgeless(2)", edgeless(2)),
        ("K(2,2)", complete_kpartite(&[2, 2]), "K3", complete(3)),
    ] {
        cases.push(case(format!("lex lift {n1} by {n2}"), move || {
            let (g1, g2) = (g1.clone().map_err(err)?, g2.clone().map_err(err)?);
            let mc = brute_force_maxcut(&g1).map_err(err)?;
            let base = cert_from_cut(&g1, &mc.optimal_cuts[0]).map_err(err)?;
            check_certificate(&lift_lex(&base.x, &base.y, &g1, &g2).map_err(err)?)
        }));
    }
    for name in ["six_exact_multi", "six_exact_unique"] {
        cases.push(case(format!("rank-one pair on {name}"), move || {
            let g = corpus::load(name).map_err(err)?;
            let mc = brute_force_maxcut(&g).map_err(err)?;
            check_certificate(&cert_from_cut(&g, &mc.optimal_cuts[0]).map_err(err)?)
        }));
    }
    cases
}

fn counterexample_cases() -> Vec<Case> {
    [Which::One, Which::Two]
        .into_iter()
        .map(|w| {
            case(format!("counterexample {w:?}"), move || {
                let r = replay_counterexample(w).map_err(err)?;
                if r.passed {
                    Ok(format!("maxcut {}, rank Z {}", r.maxcut, r.z_rank))
                } else {
                    Err(format!("{r:?}"))
                }
            })
        })
        .collect()
}

fn recognizer_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for e in corpus::family(Family::Cone).chain(corpus::family(Family::Fan)) {
        cases.push(case(format!("recognize {}", e.name), move || {
            let g = e.graph().map_err(err)?;
            let r = recognize_complement_core(&g).map_err(err)?;
            let oracle = brute_force_maxcut(&g).map_err(err)?;
            let value = r.value.clone().ok_or("not matched")?;
            if value != oracle.value {
                return Err(format!("value {value} but oracle {}", oracle.value));
            }
            if r.unique_cut == Some(true) && !oracle.is_unique() {
                return Err("oracle finds several optimal cuts".into());
            }
            Ok(format!("value {value}"))
        }));
    }
    for name in ["k3", "c5"] {
        cases.push(case(format!("decline {name}"), move || {
            let r = recognize_complement_core(&corpus::load(name).map_err(err)?).map_err(err)?;
            if r.matched {
                Err("matched".into())
            } else {
                Ok(format!("{:?}", r.reason))
            }
        }));
    }
    for (parts, expect) in [
        (vec![1, 2, 3, 4], "ExactNonUnique"),
        (vec![1, 1, 3], "ExactUnique"),
        (vec![2, 3, 4], "NotExact"),
        (vec![2, 3, 5], "ExactUnique"),
        (vec![1, 1, 2, 2], "ExactNonUnique"),
    ] {
        cases.push(case(format!("kpartite {parts:?}"), move || {
            let v = kpartite_exactness(&parts).map_err(err)?;
            let tag = match v {
                KpartiteVerdict::ExactUnique => "ExactUnique",
                KpartiteVerdict::ExactNonUnique { .. } => "ExactNonUnique",
                KpartiteVerdict::NotExact => "NotExact",
            };
            if tag == expect {
                Ok(tag.to_string())
            } else {
                Err(format!("{tag}, expected {expect}"))
            }
        }));
    }
    cases.push(case("split decomposition of weighted13", || {
        let g = corpus::load("weighted13").map_err(err)?;
        match verify_split_decomposable(&g, &corpus::weighted13_witness(), None) {
            SplitDecompVerdict::Accepted { maxcut, .. } => {
                let mc = brute_force_maxcut(&g).map_err(err)?.value;
                if mc == maxcut {
                    Ok(format!("maxcut {maxcut}"))
                } else {
                    Err(format!("maxcut {maxcut} but oracle {mc}"))
                }
            }
            other => Err(format!("{other:?}")),
        }
    }));
    cases.push(case("split decomposition of weighted13_extra rejected", || {
        let g = corpus::load("weighted13_extra").map_err(err)?;
        match verify_split_decomposable(&g, &corpus::weighted13_witness(), None).reason() {
            Some(RejectReason::ResidualPlacement) => Ok("ResidualPlacement".into()),
            other => Err(format!("{other:?}")),
        }
    }));
    cases
}
