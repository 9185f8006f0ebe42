//! Primal/dual certificates for the Max-Cut relaxation.
//!
//! A [`Certificate`] pairs a primal candidate `X` with a diagonal dual `Y`
//! and its slack `S = Y - L/4`. Constructors in the submodules build pairs
//! for specific graph families; [`verify_certificate`] re-checks any pair in
//! exact arithmetic and never looks at the provenance tag.

mod counterexample;
mod join;
mod lift;
mod nondominating;

pub use counterexample::{replay_counterexample, CounterexampleReport, Which};
pub use join::{
    cert_join_balanced, cert_join_unbalanced, higher_rank_join, uniqueness_join_balanced,
    verify_spanning_biclique_witness, HigherRankJoin, Uniqueness,
};
pub use lift::{lift_lex, lift_split, lift_split_certificate, LexTerms};
pub use nondominating::{cert_nondominating, nondominating_parts, NondominatingParts};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexPartition};
use crate::linalg::{
    nullspace_basis_sym, psd_check_exact, rank, rank_exact, LinalgError, Matrix, PsdWitness,
    SchurFailure, SymMatrix, WitnessSummary,
};
use crate::ops::OpsError;
use crate::oracle::OracleError;
use crate::rational::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("sides have unequal sizes {a} and {b}")]
    UnequalSizes { a: usize, b: usize },
    #[error("graph has a non-unit edge weight")]
    NotUnweighted,
    #[error("side sizes {m1} and {m2} are not strictly increasing")]
    SizesNotStrict { m1: usize, m2: usize },
    #[error("vertex {vertex} has induced degree {degree} above the bound {bound}")]
    DegreeBoundViolated {
        vertex: usize,
        degree: String,
        bound: String,
    },
    #[error("dual feasibility failed on the block route: {0:?}")]
    DualRouteFailed(SchurFailure),
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("candidate is not optimal: {0}")]
    NotOptimal(String),
    #[error("graph order {0} is odd")]
    OddOrder(usize),
    #[error("mass m[{index}] is at least the sum of the others")]
    Dominating { index: usize },
    #[error("need at least {min} entries, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("mass m[{index}] is not positive")]
    NonpositiveMass { index: usize },
    #[error("X·S is not zero")]
    NotComplementary,
    #[error("primal matrix is not the outer product of a ±1 vector")]
    NotRankOne,
    #[error("split spec has {found} entries, expected {expected}")]
    SpecMismatch { expected: usize, found: usize },
    #[error("input is not primal feasible: {0}")]
    InfeasibleInput(String),
    #[error("input pair is not a verified optimal pair")]
    PairNotOptimal,
    #[error("lifted slack term `{0}` is not PSD")]
    LiftTermNotPsd(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ops(#[from] OpsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    JoinBalanced,
    JoinUnbalanced,
    NonDominating,
    SplitLift,
    LexLift,
    Manual,
}

/// How a constructor established dual feasibility, when it did so itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DualRoute {
    /// Block route on `[[A, C], [Cᵀ, B]]` with the first side as `A`.
    Schur {
        b_psd: bool,
        range_ok: bool,
        complement_psd: bool,
        rank_lower_bound: Option<usize>,
    },
    /// Slack written as a sum of three Kronecker terms, each checked PSD.
    Lex { terms_psd: [bool; 3] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub x: SymMatrix<Rational>,
    pub y: SymMatrix<Rational>,
    pub s: SymMatrix<Rational>,
    /// `⟨L, X⟩ / 4`.
    pub objective: Rational,
    pub provenance: Provenance,
    pub source_graph: Graph,
    pub dual_route: Option<DualRoute>,
}

/// `Y - L/4`.
pub fn slack(g: &Graph, y: &SymMatrix<Rational>) -> SymMatrix<Rational> {
    y - &g.laplacian().scale(&Rational::new(1.into(), 4.into()))
}

/// `⟨L, X⟩ / 4`.
pub fn primal_value(g: &Graph, x: &SymMatrix<Rational>) -> Rational {
    g.laplacian().inner(x) / int(4)
}

impl Certificate {
    /// Assembles a certificate from `X` and the diagonal of `Y`, deriving
    /// `S` and the objective.
    pub fn new(
        g: &Graph,
        x: SymMatrix<Rational>,
        y_diag: Vec<Rational>,
        provenance: Provenance,
    ) -> Result<Self, CertError> {
        let n = g.n();
        check_dim("X", n, x.n())?;
        check_dim("Y", n, y_diag.len())?;
        let y = SymMatrix::from_diagonal(y_diag);
        let s = slack(g, &y);
        let objective = primal_value(g, &x);
        Ok(Certificate {
            x,
            y,
            s,
            objective,
            provenance,
            source_graph: g.clone(),
            dual_route: None,
        })
    }

    pub fn n(&self) -> usize {
        self.source_graph.n()
    }

    pub fn dual_value(&self) -> Rational {
        self.y.trace()
    }
}

pub(crate) fn check_dim(what: &'static str, expected: usize, found: usize) -> Result<(), CertError> {
    if expected == found {
        Ok(())
    } else {
        Err(CertError::DimensionMismatch {
            what,
            expected,
            found,
        })
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub unit_diagonal: bool,
    pub primal_psd: bool,
    pub feasible_primal: bool,
    pub y_diagonal: bool,
    /// `S = Y - L/4` entrywise.
    pub slack_consistent: bool,
    pub feasible_dual: bool,
    pub dual_witness: WitnessSummary,
    #[serde(skip)]
    pub primal_certificate: PsdWitness,
    #[serde(skip)]
    pub dual_certificate: PsdWitness,
    #[serde(with = "crate::rational::serde_str")]
    pub primal_value: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub dual_value: Rational,
    /// `tr(Y) - ⟨L, X⟩/4`.
    #[serde(with = "crate::rational::serde_str")]
    pub duality_gap: Rational,
    /// Stored objective equals `⟨L, X⟩/4`.
    pub objective_consistent: bool,
    pub complementary_slackness: bool,
    pub rank_x: usize,
    pub rank_s: usize,
    /// `dim(N(X) ∩ N(S))`.
    pub shared_nullity: usize,
}

impl VerificationReport {
    pub fn is_optimal(&self) -> bool {
        self.feasible_primal
            && self.feasible_dual
            && self.duality_gap.is_zero()
            && self.complementary_slackness
            && self.objective_consistent
    }

    pub fn rank_identity_holds(&self) -> bool {
        self.rank_x + self.rank_s + self.shared_nullity == self.n
    }
}

/// Checks every primal, dual and optimality condition exactly.
pub fn verify_certificate(c: &Certificate) -> Result<VerificationReport, CertError> {
    let g = &c.source_graph;
    let n = g.n();
    check_dim("X", n, c.x.n())?;
    check_dim("Y", n, c.y.n())?;
    check_dim("S", n, c.s.n())?;

    let unit_diagonal = c.x.diagonal().iter().all(One::is_one);
    let primal_certificate = psd_check_exact(&c.x);
    let primal_psd = primal_certificate.is_psd();

    let y_diagonal = c.y.is_diagonal();
    let slack_consistent = c.s == slack(g, &c.y);
    let dual_certificate = psd_check_exact(&c.s);
    let feasible_dual = y_diagonal && slack_consistent && dual_certificate.is_psd();

    let primal_value = primal_value(g, &c.x);
    let dual_value = c.y.trace();
    let duality_gap = &dual_value - &primal_value;
    let complementary_slackness = c.x.mat_mul(&c.s).is_zero();

    let rank_x = rank_exact(&c.x);
    let rank_s = rank_exact(&c.s);
    let shared_nullity = n - rank(&c.x.to_dense().vstack(&c.s.to_dense()));

    Ok(VerificationReport {
        n,
        unit_diagonal,
        primal_psd,
        feasible_primal: unit_diagonal && primal_psd,
        y_diagonal,
        slack_consistent,
        feasible_dual,
        dual_witness: dual_certificate.summary(),
        primal_certificate,
        dual_certificate,
        objective_consistent: c.objective == primal_value,
        primal_value,
        dual_value,
        duality_gap,
        complementary_slackness,
        rank_x,
        rank_s,
        shared_nullity,
    })
}

/// `rank X + rank S = n - dim(N(X) ∩ N(S))` for a complementary pair, with
/// the intersection measured from the two nullspace bases.
pub fn rank_identity_check(x: &SymMatrix<Rational>, s: &SymMatrix<Rational>) -> Result<bool, CertError> {
    let n = x.n();
    check_dim("S", n, s.n())?;
    if !x.mat_mul(s).is_zero() {
        return Err(CertError::NotComplementary);
    }
    let nx = nullspace_basis_sym(x);
    let ns = nullspace_basis_sym(s);
    let mut cols = nx.clone();
    cols.extend(ns.iter().cloned());
    let sum_dim = if cols.is_empty() {
        0
    } else {
        rank(&Matrix::from_columns(n, &cols))
    };
    let intersection = nx.len() + ns.len() - sum_dim;
    Ok(rank_exact(x) + rank_exact(s) == n - intersection)
}

/// `X = x xᵀ` for the ±1 vector of `p`.
pub fn primal_from_cut(g: &Graph, p: &VertexPartition) -> Result<SymMatrix<Rational>, CertError> {
    check_dim("partition", g.n(), p.len())?;
    Ok(SymMatrix::outer(&p.sign_vector()))
}

/// Rank-one certificate of a cut with the dual forced by complementary
/// slackness, `Y_ii = x_i (L x)_i / 4`. Only optimal cuts verify.
pub fn cert_from_cut(g: &Graph, p: &VertexPartition) -> Result<Certificate, CertError> {
    let x = primal_from_cut(g, p)?;
    let sv = p.sign_vector();
    let lx = g.laplacian().mul_vec(&sv);
    let y: Vec<Rational> = sv.iter().zip(&lx).map(|(a, b)| a * b / int(4)).collect();
    Certificate::new(g, x, y, Provenance::Manual)
}

/// Recovers the ±1 vector `x` with `x_0 = 1` when `X = x xᵀ`.
pub fn sign_vector_of(x: &SymMatrix<Rational>) -> Option<Vec<Rational>> {
    let n = x.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let v: Vec<Rational> = (0..n).map(|j| x.get(0, j).clone()).collect();
    let unit = v.iter().all(|e| e.is_one() || (-e).is_one());
    (unit && SymMatrix::outer(&v) == *x).then_some(v)
}

/// For a rank-one pair on an unweighted graph: `Y_ii = δ_i / 2` and
/// `δ_i ≥ deg(i) / 2` at every vertex, where `δ_i` counts cut edges at `i`.
pub fn delta_identity_check(g: &Graph, c: &Certificate) -> Result<bool, CertError> {
    check_dim("certificate", g.n(), c.n())?;
    let x = sign_vector_of(&c.x).ok_or(CertError::NotRankOne)?;
    for i in 0..g.n() {
        let mut delta = Rational::zero();
        let mut deg = Rational::zero();
        for j in g.neighbors(i) {
            let w = g.weight(i, j).expect("neighbor has an edge");
            deg += w;
            if x[i] != x[j] {
                delta += w;
            }
        }
        let half = Rational::new(1.into(), 2.into());
        if *c.y.get(i, i) != &delta * &half || delta < &deg * &half {
            return Ok(false);
        }
    }
    Ok(true)
}
