use serde::Serialize;

use super::{check_dim, CertError, Certificate, DualRoute, Provenance};
use crate::graph::{Graph, Side, VertexPartition};
use crate::linalg::{schur_psd_check, SymMatrix};
use crate::ops::join;
use crate::oracle::cut_value;
use crate::rational::Rational;

fn require_unweighted(g: &Graph) -> Result<(), CertError> {
    if g.is_unweighted() {
        Ok(())
    } else {
        Err(CertError::NotUnweighted)
    }
}

fn side_cut(n_a: usize, n_b: usize) -> VertexPartition {
    VertexPartition::new(
        std::iter::repeat_n(Side::A, n_a)
            .chain(std::iter::repeat_n(Side::B, n_b))
            .collect(),
    )
}

/// Join of two equal-order unweighted graphs: the cut `(V_A, V_B)` with
/// `Y = (n/2) I`.
pub fn cert_join_balanced(ga: &Graph, gb: &Graph) -> Result<Certificate, CertError> {
    let n = ga.n();
    if n != gb.n() {
        return Err(CertError::UnequalSizes { a: n, b: gb.n() });
    }
    require_unweighted(ga)?;
    require_unweighted(gb)?;
    let g = join(ga, gb);
    let x = SymMatrix::outer(&side_cut(n, n).sign_vector());
    let y = vec![Rational::new(n.into(), 2.into()); 2 * n];
    Certificate::new(&g, x, y, Provenance::JoinBalanced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    GuaranteedUnique,
    Inconclusive,
}

/// Unique when either side's complement is connected; otherwise no claim.
pub fn uniqueness_join_balanced(ga: &Graph, gb: &Graph) -> Result<Uniqueness, CertError> {
    if ga.n() != gb.n() {
        return Err(CertError::UnequalSizes { a: ga.n(), b: gb.n() });
    }
    let connected = |g: &Graph| -> Result<bool, CertError> {
        Ok(g.complement()?.connected_components().len() == 1)
    };
    if connected(ga)? || connected(gb)? {
        Ok(Uniqueness::GuaranteedUnique)
    } else {
        Ok(Uniqueness::Inconclusive)
    }
}

/// Join with `|V_A| < |V_B|` and every vertex of `G_B` of degree at most
/// `|V_A|/2`: the cut `(V_A, V_B)` with `Y = diag(m₂/2, m₁/2)`. Dual
/// feasibility goes through the block route. Equal orders are routed to
/// [`cert_join_balanced`].
pub fn cert_join_unbalanced(ga: &Graph, gb: &Graph) -> Result<Certificate, CertError> {
    let (m1, m2) = (ga.n(), gb.n());
    if m1 == m2 {
        return cert_join_balanced(ga, gb);
    }
    if m1 > m2 {
        return Err(CertError::SizesNotStrict { m1, m2 });
    }
    require_unweighted(ga)?;
    require_unweighted(gb)?;
    let bound = Rational::new(m1.into(), 2.into());
    for v in 0..m2 {
        let d = gb.degree(v)?;
        if d > bound {
            return Err(CertError::DegreeBoundViolated {
                vertex: m1 + v,
                degree: d.to_string(),
                bound: bound.to_string(),
            });
        }
    }
    let g = join(ga, gb);
    let x = SymMatrix::outer(&side_cut(m1, m2).sign_vector());
    let mut y = vec![Rational::new(m2.into(), 2.into()); m1];
    y.extend(std::iter::repeat_n(bound, m2));
    let mut cert = Certificate::new(&g, x, y, Provenance::JoinUnbalanced)?;
    let report = schur_psd_check(&cert.s, m1)?;
    if let Some(f) = report.failure {
        return Err(CertError::DualRouteFailed(f));
    }
    cert.dual_route = Some(DualRoute::Schur {
        b_psd: report.b_witness.is_psd(),
        range_ok: report.range_ok,
        complement_psd: report.complement_witness.is_psd(),
        rank_lower_bound: report.rank_lower_bound(),
    });
    Ok(cert)
}

/// Two rank-one optima of a join and their rank-two midpoint, all sharing
/// the dual `Y = (N/4) I`.
#[derive(Debug, Clone)]
pub struct HigherRankJoin {
    pub x1: SymMatrix<Rational>,
    pub x2: SymMatrix<Rational>,
    pub x_mid: SymMatrix<Rational>,
    pub cut1: VertexPartition,
    pub cut2: VertexPartition,
    pub certificates: [Certificate; 3],
}

/// Each witness must split its graph so that every cross pair is an edge.
/// The first optimum glues the two witnesses; the second flips the `G_A`
/// block when both witnesses are balanced, and otherwise takes the side cut
/// `(V_A, V_B)`, which needs equal orders.
pub fn higher_rank_join(
    ga: &Graph,
    gb: &Graph,
    wa: &VertexPartition,
    wb: &VertexPartition,
) -> Result<HigherRankJoin, CertError> {
    require_unweighted(ga)?;
    require_unweighted(gb)?;
    check_dim("G_A witness", ga.n(), wa.len())?;
    check_dim("G_B witness", gb.n(), wb.len())?;
    for (name, g, w) in [("G_A", ga, wa), ("G_B", gb, wb)] {
        if !spans_biclique(g, w) {
            return Err(CertError::WitnessInvalid(format!(
                "{name} witness {w} has a cross pair that is not an edge"
            )));
        }
    }
    let (m1, m2) = (ga.n(), gb.n());
    let g = join(ga, gb);
    let big_n = m1 + m2;

    let mut s1: Vec<Side> = wa.sides().to_vec();
    s1.extend(wb.sides());
    let cut1 = VertexPartition::new(s1);
    let cut2 = if wa.is_balanced() && wb.is_balanced() {
        let mut s2: Vec<Side> = wa.flipped().sides().to_vec();
        s2.extend(wb.sides());
        VertexPartition::new(s2)
    } else if m1 == m2 {
        side_cut(m1, m2)
    } else {
        return Err(CertError::WitnessInvalid(
            "unbalanced witnesses need sides of equal order".into(),
        ));
    };
    if cut1.same_cut(&cut2) {
        return Err(CertError::WitnessInvalid("both optima coincide".into()));
    }
    let target = Rational::new((big_n * big_n).into(), 4.into());
    for cut in [&cut1, &cut2] {
        let v = cut_value(&g, cut)?;
        if v != target {
            return Err(CertError::NotOptimal(format!(
                "cut {cut} has value {v}, bound is {target}"
            )));
        }
    }
    let x1 = SymMatrix::outer(&cut1.sign_vector());
    let x2 = SymMatrix::outer(&cut2.sign_vector());
    let x_mid = (&x1 + &x2).scale(&Rational::new(1.into(), 2.into()));
    let y = vec![Rational::new(big_n.into(), 4.into()); big_n];
    let make = |x: &SymMatrix<Rational>| Certificate::new(&g, x.clone(), y.clone(), Provenance::Manual);
    let certificates = [make(&x1)?, make(&x2)?, make(&x_mid)?];
    Ok(HigherRankJoin {
        x1,
        x2,
        x_mid,
        cut1,
        cut2,
        certificates,
    })
}

fn spans_biclique(g: &Graph, p: &VertexPartition) -> bool {
    let (a, b) = (p.side_a(), p.side_b());
    a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v)))
}

/// `G` contains `K(n/2, n/2)` on the sides of `p` as a spanning subgraph.
pub fn verify_spanning_biclique_witness(g: &Graph, p: &VertexPartition) -> Result<bool, CertError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(CertError::OddOrder(n));
    }
    check_dim("partition", n, p.len())?;
    Ok(p.is_balanced() && spans_biclique(g, p))
}
