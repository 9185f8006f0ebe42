use elliptope::ops::{complete, complete_kpartite, cycle};
use elliptope::oracle::{
    balanced_subset, brute_force_maxcut, count_balanced_partitions, cut_value, exact_sum_decision,
    OracleError,
};
use elliptope::rational::{int, rat};
use elliptope::{Graph, VertexPartition};
use proptest::prelude::*;

/// Straightforward reference: every mask, no symmetry reduction.
fn naive_maxcut(g: &Graph) -> (elliptope::Rational, u64) {
    let n = g.n();
    let mut best = int(-1);
    let mut count = 0u64;
    for mask in 0u64..(1 << n) {
        let val = g
            .edges()
            .filter(|((u, v), _)| (mask >> u) & 1 != (mask >> v) & 1)
            .fold(int(0), |acc, (_, w)| acc + w);
        if val > best {
            best = val;
            count = 1;
        } else if val == best {
            count += 1;
        }
    }
    (best, count / 2)
}

fn naive_subset(a: &[u64]) -> bool {
    let total: u64 = a.iter().sum();
    total.is_multiple_of(2)
        && (0u64..(1 << a.len())).any(|m| {
            (0..a.len()).filter(|i| (m >> i) & 1 == 1).map(|i| a[i]).sum::<u64>() * 2 == total
        })
}

#[test]
fn small_families() {
    let r = brute_force_maxcut(&complete(4).unwrap()).unwrap();
    assert_eq!(r.value, int(4));
    assert_eq!(r.count, 3);
    let r = brute_force_maxcut(&cycle(5).unwrap()).unwrap();
    assert_eq!(r.value, int(4));
    assert_eq!(r.count, 5);
    let r = brute_force_maxcut(&complete_kpartite(&[3, 3]).unwrap()).unwrap();
    assert_eq!(r.value, int(9));
    assert!(r.is_unique());
    for p in &r.optimal_cuts {
        assert_eq!(p.side(0), elliptope::Side::A);
    }
}

#[test]
fn cut_value_checks_size() {
    let g = cycle(4).unwrap();
    let p = VertexPartition::from_mask(3, 0);
    assert_eq!(cut_value(&g, &p), Err(OracleError::SizeMismatch { expected: 4, found: 3 }));
    assert_eq!(cut_value(&g, &VertexPartition::from_mask(4, 0b0101)).unwrap(), int(4));
}

#[test]
fn exact_sum() {
    let w = exact_sum_decision(&[3, 1, 1, 2, 2, 1]).unwrap().unwrap();
    let picked: u64 = w.iter().map(|&i| [3, 1, 1, 2, 2, 1][i]).sum();
    assert_eq!(picked, 5);
    assert_eq!(exact_sum_decision(&[2, 3, 4]).unwrap(), None);
    assert_eq!(exact_sum_decision(&[1, 2]).unwrap(), None);
    assert_eq!(exact_sum_decision(&[]), Err(OracleError::EmptyInstance));
    assert!(balanced_subset(&[rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap().is_some());
    assert!(balanced_subset(&[rat(1, 2), rat(2, 3), rat(3, 4)]).unwrap().is_none());
    assert!(matches!(balanced_subset(&[int(1), int(-1)]), Err(OracleError::NonPositive { index: 1 })));
    assert_eq!(count_balanced_partitions(&[int(1), int(1), int(1), int(1)], 100), 3);
    assert_eq!(count_balanced_partitions(&[int(2), int(3), int(5)], 100), 1);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec(0i64..4, n * n).prop_map(move |w| {
            let list: Vec<_> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|&(u, v)| w[u * n + v] > 0)
                .map(|(u, v)| (u, v, int(w[u * n + v])))
                .collect();
            Graph::from_edge_list(n, list).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn matches_naive(g in arb_graph()) {
        let r = brute_force_maxcut(&g).unwrap();
        let (v, c) = naive_maxcut(&g);
        prop_assert_eq!(&r.value, &v);
        prop_assert_eq!(r.count, c.max(1));
        for p in &r.optimal_cuts {
            prop_assert_eq!(cut_value(&g, p).unwrap(), v.clone());
        }
    }

    #[test]
    fn exact_sum_matches_naive(a in proptest::collection::vec(1u64..20, 1..10)) {
        let got = exact_sum_decision(&a).unwrap();
        prop_assert_eq!(got.is_some(), naive_subset(&a));
        if let Some(w) = got {
            let s: u64 = w.iter().map(|&i| a[i]).sum();
            prop_assert_eq!(s * 2, a.iter().sum::<u64>());
        }
    }
}
