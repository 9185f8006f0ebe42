use elliptope::certificates::{
    cert_from_cut, cert_join_balanced, cert_join_unbalanced, cert_nondominating,
    delta_identity_check, higher_rank_join, lift_lex, lift_split, lift_split_certificate,
    nondominating_parts, rank_identity_check, replay_counterexample, sign_vector_of,
    uniqueness_join_balanced, verify_certificate, verify_spanning_biclique_witness, CertError,
    Certificate, Provenance, Uniqueness, Which,
};
use elliptope::linalg::rank;
use elliptope::ops::{
    complete, complete_kpartite, cycle, edgeless, join, lex_product, path, split, SplitSpec,
};
use elliptope::oracle::{balanced_subset, brute_force_maxcut};
use elliptope::rational::{int, rat};
use elliptope::{corpus, Graph, Matrix, Rational, VertexPartition};
use proptest::prelude::*;

fn optimal_pair(g: &Graph) -> Certificate {
    let mc = brute_force_maxcut(g).unwrap();
    let c = cert_from_cut(g, &mc.optimal_cuts[0]).unwrap();
    assert!(verify_certificate(&c).unwrap().is_optimal());
    c
}

#[test]
fn balanced_join_matches_oracle() {
    let a = path(3).unwrap();
    let b = cycle(3).unwrap();
    let c = cert_join_balanced(&a, &b).unwrap();
    let r = verify_certificate(&c).unwrap();
    assert!(r.is_optimal());
    assert!(r.rank_identity_holds());
    assert_eq!(c.objective, int(9));
    assert_eq!(brute_force_maxcut(&join(&a, &b)).unwrap().value, c.objective);
    assert_eq!(c.provenance, Provenance::JoinBalanced);
    assert!(matches!(
        cert_join_balanced(&a, &path(2).unwrap()),
        Err(CertError::UnequalSizes { a: 3, b: 2 })
    ));
}

#[test]
fn uniqueness_verdicts() {
    let p4 = path(4).unwrap();
    assert_eq!(uniqueness_join_balanced(&p4, &p4).unwrap(), Uniqueness::GuaranteedUnique);
    assert!(brute_force_maxcut(&join(&p4, &p4)).unwrap().is_unique());
    let k3 = complete(3).unwrap();
    assert_eq!(uniqueness_join_balanced(&k3, &k3).unwrap(), Uniqueness::Inconclusive);
}

#[test]
fn unbalanced_join_uses_block_route() {
    let ga = cycle(4).unwrap();
    let gb = edgeless(5).unwrap();
    let c = cert_join_unbalanced(&ga, &gb).unwrap();
    assert!(c.dual_route.is_some());
    assert!(verify_certificate(&c).unwrap().is_optimal());
    assert_eq!(c.objective, int(20));
    assert_eq!(brute_force_maxcut(&join(&ga, &gb)).unwrap().value, int(20));

    assert!(matches!(
        cert_join_unbalanced(&complete(2).unwrap(), &path(3).unwrap()),
        Err(CertError::DegreeBoundViolated { vertex: 3, .. })
    ));
    assert!(matches!(
        cert_join_unbalanced(&gb, &ga),
        Err(CertError::SizesNotStrict { m1: 5, m2: 4 })
    ));
    let eq = cert_join_unbalanced(&ga, &ga).unwrap();
    assert_eq!(eq.provenance, Provenance::JoinBalanced);
}

#[test]
fn higher_rank_optimum() {
    let c4 = cycle(4).unwrap();
    let w = VertexPartition::from_side_a(4, &[0, 2]).unwrap();
    let h = higher_rank_join(&c4, &c4, &w, &w).unwrap();
    for c in &h.certificates {
        assert!(verify_certificate(c).unwrap().is_optimal());
    }
    assert_eq!(verify_certificate(&h.certificates[2]).unwrap().rank_x, 2);
    assert!(verify_spanning_biclique_witness(&c4, &w).unwrap());
    assert!(!verify_spanning_biclique_witness(&c4, &VertexPartition::from_side_a(4, &[0, 1]).unwrap()).unwrap());
    assert_eq!(verify_spanning_biclique_witness(&path(3).unwrap(), &VertexPartition::from_mask(3, 1)), Err(CertError::OddOrder(3)));
}

#[test]
fn nondominating_integer_masses() {
    let m = [int(5), int(3), int(4), int(4)];
    let c = cert_nondominating(&m).unwrap();
    let r = verify_certificate(&c).unwrap();
    assert!(r.is_optimal());
    assert_eq!(r.rank_x, 3);
    assert_eq!(r.rank_s, 1);
    assert_eq!(c.objective, int(64));
    let g = elliptope::ops::complete_weighted(&m).unwrap();
    assert_eq!(brute_force_maxcut(&g).unwrap().value, int(64));
    assert!(matches!(cert_nondominating(&[int(1), int(1), int(3)]), Err(CertError::Dominating { index: 2 })));
    assert!(matches!(cert_nondominating(&[int(1), int(1)]), Err(CertError::TooSmall { .. })));
}

#[test]
fn nondominating_vector_identities() {
    let m = [int(2), int(3), int(4)];
    let p = nondominating_parts(&m).unwrap();
    for i in 0..m.len() {
        let dot = p.u[i].iter().zip(&m).fold(int(0), |acc, (a, b)| acc + a * b);
        assert_eq!(dot, int(0));
        let diag = (0..m.len()).fold(int(0), |acc, k| acc + &p.d[k] * &p.u[k][i] * &p.u[k][i]);
        assert_eq!(diag, int(1));
    }
    let u = Matrix::from_columns(m.len(), &p.u);
    assert_eq!(rank(&u), m.len() - 1);
    assert!(p.d.iter().all(|d| *d > int(0)));
}

#[test]
fn split_lift_keeps_optimality() {
    let g = corpus::load("six_exact_unique").unwrap();
    let c = optimal_pair(&g);
    let spec = SplitSpec::new(vec![2, 1, 3, 1, 1, 2]).unwrap();
    let lifted = lift_split_certificate(&c, &spec).unwrap();
    assert!(verify_certificate(&lifted).unwrap().is_optimal());
    assert_eq!(lifted.objective, c.objective);
    let (gs, _) = split(&g, &spec).unwrap();
    assert_eq!(brute_force_maxcut(&gs).unwrap().value, c.objective);
    let bad = elliptope::SymMatrix::from_fn(6, |_, _| int(2));
    assert!(matches!(lift_split(&bad, &spec, &g), Err(CertError::InfeasibleInput(_))));
}

#[test]
fn lex_lift_three_pairs() {
    let pairs = [
        (path(3).unwrap(), complete(2).unwrap()),
        (cycle(4).unwrap(), path(3).unwrap()),
        (complete_kpartite(&[1, 2, 3]).unwrap(), complete(2).unwrap()),
    ];
    for (g1, g2) in &pairs {
        let base = optimal_pair(g1);
        let c = lift_lex(&base.x, &base.y, g1, g2).unwrap();
        assert!(verify_certificate(&c).unwrap().is_optimal());
        let oracle = brute_force_maxcut(&lex_product(g1, g2)).unwrap().value;
        assert_eq!(c.objective, oracle);
    }
}

#[test]
fn lex_lift_rejects_non_optimal_pair() {
    let g1 = path(3).unwrap();
    let x = elliptope::SymMatrix::identity(3);
    let y = elliptope::SymMatrix::from_diagonal(vec![int(1); 3]);
    assert!(matches!(
        lift_lex(&x, &y, &g1, &complete(2).unwrap()),
        Err(CertError::PairNotOptimal)
    ));
}

#[test]
fn rank_one_identities_on_six_vertex_graphs() {
    for name in ["six_exact_multi", "six_exact_unique"] {
        let g = corpus::load(name).unwrap();
        let c = optimal_pair(&g);
        assert!(delta_identity_check(&g, &c).unwrap());
        assert!(rank_identity_check(&c.x, &c.s).unwrap());
        assert!(sign_vector_of(&c.x).is_some());
    }
    let g = corpus::load("six_gap").unwrap();
    let mc = brute_force_maxcut(&g).unwrap();
    let c = cert_from_cut(&g, &mc.optimal_cuts[0]).unwrap();
    assert!(!verify_certificate(&c).unwrap().is_optimal());
}

#[test]
fn counterexample_replays() {
    let one = replay_counterexample(Which::One).unwrap();
    assert!(one.passed);
    assert_eq!(one.maxcut, int(64));
    assert_eq!(one.z_rank, 3);
    assert_eq!(one.partition_count, 1);
    assert!(one.coefficients.contains(&rat(1, 48)) && one.coefficients.contains(&rat(47, 48)));
    assert!(one.decomposition_holds);
    let two = replay_counterexample(Which::Two).unwrap();
    assert!(two.passed);
    assert_eq!(two.maxcut, int(36));
    assert_eq!(two.partition_count, 2);
    assert!(two.z_outside_rank_one_hull && two.x_g_outside_rank_one_hull);
}

fn arb_unweighted(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| bits[u * n + v])
            .collect();
        Graph::from_pairs(n, pairs).unwrap()
    })
}

fn arb_masses() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((1i64..9, 1i64..4), 3..7)
        .prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
        .prop_filter("non-dominating", |m: &Vec<Rational>| {
            let total = m.iter().fold(int(0), |a, x| a + x);
            m.iter().all(|x| x + x < total)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn balanced_joins_verify(
        (ga, gb) in (1usize..5).prop_flat_map(|k| (arb_unweighted(k), arb_unweighted(k)))
    ) {
        let k = ga.n();
        let c = cert_join_balanced(&ga, &gb).unwrap();
        let r = verify_certificate(&c).unwrap();
        prop_assert!(r.is_optimal());
        prop_assert!(r.rank_identity_holds());
        prop_assert_eq!(&c.objective, &int((k * k) as i64));
        prop_assert_eq!(brute_force_maxcut(&join(&ga, &gb)).unwrap().value, c.objective);
    }

    #[test]
    fn nondominating_verifies(m in arb_masses()) {
        let c = cert_nondominating(&m).unwrap();
        let r = verify_certificate(&c).unwrap();
        prop_assert!(r.is_optimal());
        prop_assert_eq!(r.rank_x, m.len() - 1);
        prop_assert!(r.rank_identity_holds());
        let total = m.iter().fold(int(0), |a, x| a + x);
        prop_assert_eq!(&c.objective, &(&total * &total / int(4)));
        if balanced_subset(&m).unwrap().is_some() {
            let g = elliptope::ops::complete_weighted(&m).unwrap();
            prop_assert_eq!(brute_force_maxcut(&g).unwrap().value, c.objective);
        }
    }

    #[test]
    fn optimal_cut_pairs_are_complementary(g in (2usize..7).prop_flat_map(arb_unweighted)) {
        let mc = brute_force_maxcut(&g).unwrap();
        let c = cert_from_cut(&g, &mc.optimal_cuts[0]).unwrap();
        prop_assert!(c.x.mat_mul(&c.s).is_zero());
        prop_assert_eq!(&c.objective, &mc.value);
        let r = verify_certificate(&c).unwrap();
        prop_assert!(r.rank_identity_holds());
        if r.is_optimal() {
            prop_assert!(delta_identity_check(&g, &c).unwrap());
        }
    }
}
