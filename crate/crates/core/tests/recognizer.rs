use elliptope::corpus;
use elliptope::ops::{complete, complete_kpartite, cycle, edgeless, join, path};
use elliptope::oracle::brute_force_maxcut;
use elliptope::rational::{int, to_f64};
use elliptope::recognizer::{
    build_hardness_instance, detect_complete_multipartite, kpartite_exact_maxcut,
    kpartite_exactness, recognize_complement_core, verify_split_decomposable, KpartiteVerdict,
    Reason, RecognizerError, RejectReason, SkeletonRoute, SplitDecompVerdict,
};
use elliptope::sdp::solve_phi;
use elliptope::Graph;
use proptest::prelude::*;

#[test]
fn cones_and_fans_match_oracle() {
    for name in ["cone_c4_k5", "cone_c5_k5", "cone_c6_k6", "fan_p3_k4", "fan_p4_k6", "c4_join_c4bar"] {
        let g = corpus::load(name).unwrap();
        let r = recognize_complement_core(&g).unwrap();
        assert!(r.matched, "{name}: {:?}", r.reason);
        let mc = brute_force_maxcut(&g).unwrap();
        assert_eq!(r.value.as_ref(), Some(&mc.value), "{name}");
        let cut = r.cut.unwrap();
        assert!(mc.optimal_cuts.iter().any(|p| p.same_cut(&cut)), "{name}");
        if r.unique_cut == Some(true) {
            assert!(mc.is_unique(), "{name}");
        }
    }
}

#[test]
fn declines() {
    let r = recognize_complement_core(&complete(3).unwrap()).unwrap();
    assert!(!r.matched);
    let r = recognize_complement_core(&cycle(5).unwrap()).unwrap();
    assert!(!r.matched);
    assert_eq!(r.reason, Reason::DegreeBoundFailed);
    let heavy = join(&complete(2).unwrap(), &path(3).unwrap());
    let r = recognize_complement_core(&heavy).unwrap();
    assert!(!r.matched);
    let w = Graph::from_edge_list(2, [(0, 1, int(2))]).unwrap();
    assert!(matches!(recognize_complement_core(&w), Err(RecognizerError::NotUnweighted)));
}

#[test]
fn balanced_match() {
    let g = join(&cycle(4).unwrap(), &path(4).unwrap());
    let r = recognize_complement_core(&g).unwrap();
    assert!(r.matched);
    assert_eq!(r.reason, Reason::MatchedBalanced);
    assert_eq!(r.value, Some(int(16)));
}

#[test]
fn kpartite_verdicts() {
    assert_eq!(kpartite_exactness(&[2, 3, 5]).unwrap(), KpartiteVerdict::ExactUnique);
    assert_eq!(kpartite_exactness(&[2, 3, 4]).unwrap(), KpartiteVerdict::NotExact);
    let v = kpartite_exactness(&[1, 1, 2, 2]).unwrap();
    let KpartiteVerdict::ExactNonUnique { witness } = &v else { panic!("{v:?}") };
    let s: usize = witness.iter().map(|&i| [1, 1, 2, 2][i]).sum();
    assert_eq!(s, 3);
    assert_eq!(kpartite_exact_maxcut(&[1, 1, 2, 2], &v), Some(int(9)));
    assert_eq!(kpartite_exact_maxcut(&[2, 3, 5], &KpartiteVerdict::ExactUnique), Some(int(25)));
    assert!(matches!(kpartite_exactness(&[3, 2]), Err(RecognizerError::Unsorted)));
    assert!(matches!(kpartite_exactness(&[4]), Err(RecognizerError::TooFewParts(1))));
    assert!(matches!(kpartite_exactness(&[0, 1]), Err(RecognizerError::ZeroPart(0))));
}

#[test]
fn hardness_builder() {
    let g = build_hardness_instance(&[2, 3, 5]).unwrap();
    assert_eq!(g.n(), 10);
    assert_eq!(detect_complete_multipartite(&g), Some(vec![2, 3, 5]));
    assert!(matches!(
        build_hardness_instance(&[1, 2, 5]),
        Err(RecognizerError::DegenerateInstance { index: 2 })
    ));
    assert_eq!(detect_complete_multipartite(&cycle(5).unwrap()), None);
    assert_eq!(detect_complete_multipartite(&edgeless(3).unwrap()), None);
}

#[test]
fn weighted13_accepted() {
    let g = corpus::load("weighted13").unwrap();
    let w = corpus::weighted13_witness();
    let v = verify_split_decomposable(&g, &w, None);
    let SplitDecompVerdict::Accepted { maxcut, skeleton_maxcut, route } = &v else {
        panic!("{v:?}")
    };
    assert_eq!(*maxcut, int(108));
    assert_eq!(*skeleton_maxcut, int(6));
    assert_eq!(*route, SkeletonRoute::ComplementCore);
    assert_eq!(brute_force_maxcut(&g).unwrap().value, int(108));
}

#[test]
fn weighted13_variants_rejected() {
    let w = corpus::weighted13_witness();
    let literal = corpus::load("weighted13_extra").unwrap();
    assert_eq!(verify_split_decomposable(&literal, &w, None).reason(), Some(RejectReason::ResidualPlacement));

    let g = corpus::load("weighted13").unwrap();
    let ((u, v), _) = g.edges().find(|(_, x)| **x == int(1)).unwrap();
    let heavy = Graph::from_edge_list(
        g.n(),
        g.edges().map(|((a, b), x)| (a, b, if (a, b) == (u, v) { int(3) } else { x.clone() })),
    )
    .unwrap();
    assert_eq!(verify_split_decomposable(&heavy, &w, None).reason(), Some(RejectReason::ResidualTooHeavy));

    let mut bad = w.clone();
    bad.copies = 1;
    assert_eq!(verify_split_decomposable(&g, &bad, None).reason(), Some(RejectReason::InvalidCopies));
    let mut bad = w.clone();
    bad.mapping.swap(0, 14);
    bad.mapping[0] = bad.mapping[1];
    assert_eq!(verify_split_decomposable(&g, &bad, None).reason(), Some(RejectReason::MappingNotBijective));
    let mut bad = w.clone();
    bad.multiplicities.pop();
    assert_eq!(verify_split_decomposable(&g, &bad, None).reason(), Some(RejectReason::MultiplicityMismatch));
    let mut bad = w;
    bad.uniform_weight = int(9);
    assert!(!verify_split_decomposable(&g, &bad, None).is_accepted());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kpartite_matches_solver(mut parts in proptest::collection::vec(1usize..4, 2..5)) {
        parts.sort_unstable();
        prop_assume!(parts.iter().sum::<usize>() <= 9);
        let g = complete_kpartite(&parts).unwrap();
        let verdict = kpartite_exactness(&parts).unwrap();
        let mc = brute_force_maxcut(&g).unwrap();
        let phi = solve_phi(&g, 1e-8).unwrap().phi;
        let gap = phi - to_f64(&mc.value);
        prop_assert_eq!(verdict.is_exact(), gap.abs() < 1e-5, "{:?} phi {} mc {}", parts, phi, mc.value);
        if let Some(v) = kpartite_exact_maxcut(&parts, &verdict) {
            prop_assert_eq!(v, mc.value.clone());
        }
        if verdict == KpartiteVerdict::ExactUnique {
            prop_assert!(mc.is_unique());
        }
    }

    #[test]
    fn detection_round_trip(parts in proptest::collection::vec(1usize..5, 2..5)) {
        let g = complete_kpartite(&parts).unwrap();
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        prop_assert_eq!(detect_complete_multipartite(&g), Some(sorted));
    }

    #[test]
    fn matched_value_is_maxcut(a in 1usize..5, b in 1usize..5, bits in any::<u32>()) {
        let pairs: Vec<_> = (0..b).flat_map(|u| ((u + 1)..b).map(move |v| (u, v)))
            .enumerate().filter(|(i, _)| (bits >> i) & 1 == 1).map(|(_, e)| e).collect();
        let gb = Graph::from_pairs(b, pairs).unwrap();
        let g = join(&edgeless(a.max(b)).unwrap(), &gb);
        let r = recognize_complement_core(&g).unwrap();
        if r.matched {
            prop_assert_eq!(r.value.unwrap(), brute_force_maxcut(&g).unwrap().value);
        }
    }
}

fn sorted_part_lists(total: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() >= 2 {
        out.push(prefix.clone());
    }
    for next in min..=total.saturating_sub(prefix.iter().sum::<usize>()) {
        prefix.push(next);
        sorted_part_lists(total, next, prefix, out);
        prefix.pop();
    }
}

#[test]
fn kpartite_verdict_matches_solver_up_to_twelve() {
    let mut lists = Vec::new();
    sorted_part_lists(12, 1, &mut Vec::new(), &mut lists);
    assert!(lists.len() > 100);
    for parts in lists {
        let g = complete_kpartite(&parts).unwrap();
        let verdict = kpartite_exactness(&parts).unwrap();
        let mc = to_f64(&brute_force_maxcut(&g).unwrap().value);
        let phi = solve_phi(&g, 1e-9).unwrap().phi;
        assert_eq!(verdict.is_exact(), phi - mc < 1e-5, "{parts:?}: phi {phi}, mc {mc}");
    }
}
