use elliptope::linalg::{
    eigen_sym, inverse, lambda_min, nullspace_basis_sym, pseudo_inverse, psd_check_exact,
    rank_exact, schur_psd_check, PsdWitness,
};
use elliptope::rational::{int, rat, to_f64};
use elliptope::{Matrix, Rational, SymMatrix};
use proptest::prelude::*;

fn sym(rows: &[&[i64]]) -> SymMatrix<Rational> {
    SymMatrix::from_fn(rows.len(), |i, j| int(rows[i][j]))
}

#[test]
fn psd_witnesses() {
    let m = sym(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
    let w = psd_check_exact(&m);
    assert!(w.is_psd());
    assert!(w.confirms(&m));
    if let PsdWitness::Psd(f) = &w {
        assert!(f.reproduces(&m));
        assert_eq!(f.rank(), 3);
    }

    let bad = sym(&[&[1, 2], &[2, 1]]);
    let w = psd_check_exact(&bad);
    assert!(!w.is_psd());
    let v = w.negative_direction().unwrap().to_vec();
    assert!(bad.quad_form(&v) < int(0));
    assert!(w.confirms(&bad));

    let zero_pivot = sym(&[&[0, 1], &[1, 0]]);
    assert!(!psd_check_exact(&zero_pivot).is_psd());
    let zero_row_nonzero = sym(&[&[0, 0], &[0, -1]]);
    assert!(!psd_check_exact(&zero_row_nonzero).is_psd());
}

#[test]
fn rank_and_nullspace() {
    let l = sym(&[&[1, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
    assert_eq!(rank_exact(&l), 2);
    let ns = nullspace_basis_sym(&l);
    assert_eq!(ns.len(), 1);
    assert!(l.mul_vec(&ns[0]).iter().all(|x| *x == int(0)));
}

#[test]
fn pseudo_inverse_laws() {
    let l = sym(&[&[1, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
    let p = pseudo_inverse(&l);
    let a = l.to_dense();
    let pd = p.to_dense();
    assert_eq!(a.mul(&pd).mul(&a), a);
    assert_eq!(pd.mul(&a).mul(&pd), pd);
    let sq = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]).unwrap();
    let inv = inverse(&sq).unwrap();
    assert_eq!(sq.mul(&inv), Matrix::identity(2));
    assert!(inverse(&l.to_dense()).is_none());
}

#[test]
fn schur_route_agrees() {
    let cases = [
        sym(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]),
        sym(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]),
        sym(&[&[0, 1, 0], &[1, 3, 0], &[0, 0, 1]]),
        sym(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]),
    ];
    for m in &cases {
        for split in 1..m.n() {
            let r = schur_psd_check(m, split).unwrap();
            assert_eq!(r.is_psd(), psd_check_exact(m).is_psd(), "split {split}");
        }
    }
}

#[test]
fn kron_laws() {
    let a = sym(&[&[1, 2], &[2, 3]]);
    let b = sym(&[&[0, 1, 4], &[1, 5, 6], &[4, 6, 7]]);
    let k = a.kron(&b);
    assert_eq!(k.n(), 6);
    assert_eq!(*k.get(4, 2), a.get(1, 0) * b.get(1, 2));
    assert_eq!(k.trace(), a.trace() * b.trace());
    let i = SymMatrix::<Rational>::identity(2);
    assert_eq!(i.kron(&SymMatrix::identity(3)), SymMatrix::identity(6));
}

#[test]
fn jacobi_eigenvalues() {
    let m = SymMatrix::from_fn(3, |i, j| if i == j { 2.0 } else if i.abs_diff(j) == 1 { -1.0 } else { 0.0 });
    let e = eigen_sym(&m, 1e-12).unwrap();
    let s2 = 2f64.sqrt();
    assert!((e.min() - (2.0 - s2)).abs() < 1e-10);
    assert!((e.max() - (2.0 + s2)).abs() < 1e-10);
    let v = e.vector(0);
    let mv = m.mul_vec(&v);
    for (a, b) in mv.iter().zip(&v) {
        assert!((a - e.min() * b).abs() < 1e-9);
    }
}

fn arb_sym() -> impl Strategy<Value = SymMatrix<Rational>> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec((-4i64..5, 1i64..3), n * n).prop_map(move |v| {
            SymMatrix::from_fn(n, |i, j| {
                let (a, b) = (i.max(j), i.min(j));
                let (p, q) = v[a * n + b];
                rat(p, q)
            })
        })
    })
}

fn arb_gram() -> impl Strategy<Value = SymMatrix<Rational>> {
    (1usize..6, 1usize..4).prop_flat_map(|(n, r)| {
        proptest::collection::vec(-3i64..4, n * r).prop_map(move |v| {
            SymMatrix::from_fn(n, |i, j| {
                (0..r).fold(int(0), |acc, k| acc + int(v[i * r + k] * v[j * r + k]))
            })
        })
    })
}

proptest! {
    #[test]
    fn witness_always_confirms(m in arb_sym()) {
        let w = psd_check_exact(&m);
        prop_assert!(w.confirms(&m));
        let lam = lambda_min(&m.to_f64()).unwrap();
        if w.is_psd() {
            prop_assert!(lam > -1e-9);
        } else {
            prop_assert!(lam < 1e-9);
        }
    }

    #[test]
    fn gram_matrices_are_psd(m in arb_gram()) {
        let w = psd_check_exact(&m);
        prop_assert!(w.is_psd());
        if let PsdWitness::Psd(f) = &w {
            prop_assert_eq!(f.rank(), rank_exact(&m));
        }
        for split in 1..m.n() {
            prop_assert!(schur_psd_check(&m, split).unwrap().is_psd());
        }
    }

    #[test]
    fn schur_matches_ldl(m in arb_sym(), s in 1usize..5) {
        prop_assume!(s < m.n());
        prop_assert_eq!(schur_psd_check(&m, s).unwrap().is_psd(), psd_check_exact(&m).is_psd());
    }

    #[test]
    fn rank_nullity(m in arb_sym()) {
        prop_assert_eq!(rank_exact(&m) + nullspace_basis_sym(&m).len(), m.n());
        let trace: f64 = m.diagonal().iter().map(to_f64).sum();
        let e = eigen_sym(&m.to_f64(), 1e-12).unwrap();
        let sum: f64 = e.values.iter().sum();
        prop_assert!((trace - sum).abs() < 1e-8);
    }
}
