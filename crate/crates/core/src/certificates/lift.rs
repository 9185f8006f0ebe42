use num_traits::One;
use serde::Serialize;

use super::{check_dim, verify_certificate, CertError, Certificate, DualRoute, Provenance};
use crate::graph::Graph;
use crate::linalg::{psd_check_exact, SymMatrix};
use crate::ops::{complete, lex_product, split, SplitSpec};
use crate::rational::{int, Rational};

/// `X̃_ab = X_{orig(a), orig(b)}` on the split graph.
pub fn lift_split(
    x: &SymMatrix<Rational>,
    spec: &SplitSpec,
    g: &Graph,
) -> Result<SymMatrix<Rational>, CertError> {
    if spec.len() != g.n() {
        return Err(CertError::SpecMismatch {
            expected: g.n(),
            found: spec.len(),
        });
    }
    check_dim("X", g.n(), x.n())?;
    if !x.diagonal().iter().all(One::is_one) {
        return Err(CertError::InfeasibleInput("diagonal is not all ones".into()));
    }
    if !psd_check_exact(x).is_psd() {
        return Err(CertError::InfeasibleInput("matrix is not PSD".into()));
    }
    let map = spec.clone_map();
    Ok(SymMatrix::from_fn(map.len(), |a, b| x.get(map[a], map[b]).clone()))
}

/// Lifts a whole certificate: `X̃` as in [`lift_split`] and `Ỹ_a = Y_ii / p_i`
/// for every clone `a` of `i`.
pub fn lift_split_certificate(c: &Certificate, spec: &SplitSpec) -> Result<Certificate, CertError> {
    let g = &c.source_graph;
    let x = lift_split(&c.x, spec, g)?;
    let (gs, map) = split(g, spec)?;
    let p = spec.multiplicities();
    let y: Vec<Rational> = map
        .iter()
        .map(|&i| c.y.get(i, i) / int(p[i] as i64))
        .collect();
    Certificate::new(&gs, x, y, Provenance::SplitLift)
}

/// The three slack terms of a lexicographic lift, with their PSD verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexTerms {
    pub degree_term_psd: bool,
    pub slack_term_psd: bool,
    pub complement_term_psd: bool,
}

/// Lifts an optimal pair `(X, Ȳ)` of `G₁` to `G₁ • G₂`:
/// `X̂ = X ⊗ J`, `Ŷ = Ȳ ⊗ nI`. The slack splits as
/// `(Ȳ - D₁/4 - I/4) ⊗ L_{K_n} + (Ȳ - L₁/4) ⊗ J + ¼ I ⊗ L_{G₂ᶜ}`
/// and each term is certified PSD through its non-trivial factor.
pub fn lift_lex(
    x: &SymMatrix<Rational>,
    ybar: &SymMatrix<Rational>,
    g1: &Graph,
    g2: &Graph,
) -> Result<Certificate, CertError> {
    if !g1.is_unweighted() || !g2.is_unweighted() {
        return Err(CertError::NotUnweighted);
    }
    check_dim("X", g1.n(), x.n())?;
    check_dim("Y", g1.n(), ybar.n())?;
    if !ybar.is_diagonal() {
        return Err(CertError::PairNotOptimal);
    }
    let base = Certificate::new(g1, x.clone(), ybar.diagonal(), Provenance::Manual)?;
    if !verify_certificate(&base)?.is_optimal() {
        return Err(CertError::PairNotOptimal);
    }

    let (m, n) = (g1.n(), g2.n());
    let quarter = Rational::new(1.into(), 4.into());
    let product = lex_product(g1, g2);
    let xhat = x.kron(&SymMatrix::ones(n));
    let ni = SymMatrix::<Rational>::identity(n).scale(&int(n as i64));
    let yhat = ybar.kron(&ni);

    let l1 = g1.laplacian();
    let d1 = SymMatrix::from_diagonal(l1.diagonal());
    let l_kn = if n >= 1 {
        complete(n)?.laplacian()
    } else {
        SymMatrix::zeros(0)
    };
    let l_comp = g2.complement()?.laplacian();
    let im = SymMatrix::<Rational>::identity(m);

    let f1 = &(ybar - &d1.scale(&quarter)) - &im.scale(&quarter);
    let f2 = &base.s;
    let t1 = f1.kron(&l_kn);
    let t2 = f2.kron(&SymMatrix::ones(n));
    let t3 = im.kron(&l_comp).scale(&quarter);

    let mut cert = Certificate::new(&product, xhat, yhat.diagonal(), Provenance::LexLift)?;
    if &(&t1 + &t2) + &t3 != cert.s {
        return Err(CertError::NotOptimal("slack decomposition does not match".into()));
    }
    // A Kronecker product with a nonzero PSD partner is PSD iff the factor is.
    let terms = LexTerms {
        degree_term_psd: n < 2 || psd_check_exact(&f1).is_psd(),
        slack_term_psd: psd_check_exact(f2).is_psd(),
        complement_term_psd: psd_check_exact(&l_comp).is_psd(),
    };
    if !terms.degree_term_psd {
        return Err(CertError::LiftTermNotPsd("degree"));
    }
    if !terms.slack_term_psd {
        return Err(CertError::LiftTermNotPsd("slack"));
    }
    if !terms.complement_term_psd {
        return Err(CertError::LiftTermNotPsd("complement"));
    }
    cert.dual_route = Some(DualRoute::Lex {
        terms_psd: [
            terms.degree_term_psd,
            terms.slack_term_psd,
            terms.complement_term_psd,
        ],
    });
    Ok(cert)
}
