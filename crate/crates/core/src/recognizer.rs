//! Polynomial-time recognition of exact graph classes.
//!
//! - [`recognize_complement_core`]: a large complement component joined to
//!   the rest, with a degree bound inside it.
//! - [`kpartite_exactness`]: complete multipartite graphs, decided through
//!   dominance and Exact Sum.
//! - [`build_hardness_instance`]: the multipartite graph of an Exact Sum instance.
//! - [`verify_split_decomposable`]: checks a caller-supplied decomposition.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificates::{verify_certificate, Certificate};
use crate::graph::{Graph, GraphError, VertexPartition};
use crate::ops::{complete_kpartite, split, OpsError, SplitSpec};
use crate::oracle::{exact_sum_decision, OracleError};
use crate::rational::{int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizerError {
    #[error("graph has a non-unit edge weight")]
    NotUnweighted,
    #[error("part sizes must be sorted ascending")]
    Unsorted,
    #[error("part list is empty")]
    EmptyPartList,
    #[error("need at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("part {0} has size zero")]
    ZeroPart(usize),
    #[error("part {index} exceeds the sum of the others")]
    DegenerateInstance { index: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ops(#[from] OpsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    AdjacencyFailed,
    DegreeBoundFailed,
    Matched,
    MatchedBalanced,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecognitionReport {
    pub matched: bool,
    pub cut: Option<VertexPartition>,
    #[serde(with = "crate::rational::serde_str::option")]
    pub value: Option<Rational>,
    /// Set only in the strict case; the balanced case makes no claim.
    pub unique_cut: Option<bool>,
    pub reason: Reason,
    /// Vertex set of the chosen complement component.
    pub core: Vec<usize>,
}

impl RecognitionReport {
    fn declined(reason: Reason, core: Vec<usize>) -> Self {
        RecognitionReport {
            matched: false,
            cut: None,
            value: None,
            unique_cut: None,
            reason,
            core,
        }
    }
}

/// Takes the largest component `V'` of the complement (ties to the smallest
/// vertex) and accepts when `|V'| ≥ |V∖V'|` and every vertex of `V'` has
/// complement degree at least `|V'| - 1 - ⌊|V∖V'|/2⌋`. Equal sides match
/// without the degree test.
pub fn recognize_complement_core(g: &Graph) -> Result<RecognitionReport, RecognizerError> {
    if !g.is_unweighted() {
        return Err(RecognizerError::NotUnweighted);
    }
    let n = g.n();
    if n == 0 {
        return Ok(RecognitionReport::declined(Reason::AdjacencyFailed, Vec::new()));
    }
    let gc = g.complement()?;
    let comps = gc.connected_components();
    let core = comps
        .iter()
        .fold(None::<&Vec<usize>>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .cloned()
        .unwrap_or_default();
    let a = core.len();
    let b = n - a;
    if a < b {
        return Ok(RecognitionReport::declined(Reason::AdjacencyFailed, core));
    }
    let balanced = a == b && b > 0;
    if !balanced {
        let need = (a - 1 - b / 2) as i64;
        for &v in &core {
            if gc.degree(v)? < int(need) {
                return Ok(RecognitionReport::declined(Reason::DegreeBoundFailed, core));
            }
        }
        if b == 0 {
            return Ok(RecognitionReport::declined(Reason::AdjacencyFailed, core));
        }
    }
    let cut = VertexPartition::from_side_a(n, &core)?.canonical();
    Ok(RecognitionReport {
        matched: true,
        cut: Some(cut),
        value: Some(int((a * b) as i64)),
        unique_cut: if balanced { None } else { Some(true) },
        reason: if balanced {
            Reason::MatchedBalanced
        } else {
            Reason::Matched
        },
        core,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KpartiteVerdict {
    ExactUnique,
    /// Indices of a part subset holding half the vertices.
    ExactNonUnique { witness: Vec<usize> },
    NotExact,
}

impl KpartiteVerdict {
    pub fn is_exact(&self) -> bool {
        !matches!(self, KpartiteVerdict::NotExact)
    }
}

fn check_parts(a: &[usize]) -> Result<(), RecognizerError> {
    if a.is_empty() {
        return Err(RecognizerError::EmptyPartList);
    }
    if let Some(i) = a.iter().position(|&x| x == 0) {
        return Err(RecognizerError::ZeroPart(i));
    }
    Ok(())
}

/// Exactness of `K(a_1, ..., a_k)` for sorted part sizes.
pub fn kpartite_exactness(a: &[usize]) -> Result<KpartiteVerdict, RecognizerError> {
    check_parts(a)?;
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(RecognizerError::Unsorted);
    }
    if a.len() < 2 {
        return Err(RecognizerError::TooFewParts(a.len()));
    }
    let last = a[a.len() - 1];
    let rest: usize = a[..a.len() - 1].iter().sum();
    if last >= rest {
        return Ok(KpartiteVerdict::ExactUnique);
    }
    let ints: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    Ok(match exact_sum_decision(&ints)? {
        Some(witness) => KpartiteVerdict::ExactNonUnique { witness },
        None => KpartiteVerdict::NotExact,
    })
}

/// Max-Cut of `K(a)` when the verdict is exact.
pub fn kpartite_exact_maxcut(a: &[usize], verdict: &KpartiteVerdict) -> Option<Rational> {
    let total: usize = a.iter().sum();
    match verdict {
        KpartiteVerdict::ExactUnique => {
            let last = *a.iter().max()?;
            Some(int((last * (total - last)) as i64))
        }
        KpartiteVerdict::ExactNonUnique { .. } => Some(Rational::new(
            ((total * total) as i64).into(),
            4.into(),
        )),
        KpartiteVerdict::NotExact => None,
    }
}

/// `K(a)` for an Exact Sum instance. Rejects a part larger than all others
/// combined; a part equal to the rest is kept (a YES instance).
pub fn build_hardness_instance(a: &[usize]) -> Result<Graph, RecognizerError> {
    check_parts(a)?;
    let total: usize = a.iter().sum();
    if let Some(index) = (0..a.len()).find(|&i| 2 * a[i] > total) {
        return Err(RecognizerError::DegenerateInstance { index });
    }
    Ok(complete_kpartite(a)?)
}

/// Part sizes when `g` is complete multipartite with at least two parts.
pub fn detect_complete_multipartite(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_unweighted() {
        return None;
    }
    let comps = g.complement().ok()?.connected_components();
    if comps.len() < 2 {
        return None;
    }
    let label: Vec<usize> = {
        let mut l = vec![0; g.n()];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                l[v] = k;
            }
        }
        l
    };
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != (label[u] != label[v]) {
                return None;
            }
        }
    }
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    Some(sizes)
}

/// Claimed split decomposition of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitDecompWitness {
    /// Clone counts applied to the input graph.
    pub multiplicities: Vec<usize>,
    /// Unweighted skeleton; its edges carry `uniform_weight`.
    pub skeleton: Graph,
    #[serde(rename = "w", with = "crate::rational::serde_str")]
    pub uniform_weight: Rational,
    #[serde(rename = "p")]
    pub copies: usize,
    /// Split-graph vertex `a` maps to skeleton-split vertex `mapping[a]`,
    /// where copy `c` of skeleton vertex `s` has index `s·p + c`.
    pub mapping: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectReason {
    InvalidMultiplicities,
    MultiplicityMismatch,
    InvalidCopies,
    NonpositiveWeight,
    SkeletonNotUnweighted,
    MappingNotBijective,
    MissingSkeletonEdge,
    SkeletonWeightMismatch,
    ResidualPlacement,
    ResidualTooHeavy,
    ResidualNegative,
    SkeletonNotExact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SkeletonRoute {
    ComplementCore,
    Kpartite,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SplitDecompVerdict {
    Accepted {
        #[serde(with = "crate::rational::serde_str")]
        maxcut: Rational,
        #[serde(with = "crate::rational::serde_str")]
        skeleton_maxcut: Rational,
        route: SkeletonRoute,
    },
    Rejected {
        reason: RejectReason,
        detail: String,
    },
}

impl SplitDecompVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SplitDecompVerdict::Accepted { .. })
    }

    pub fn reason(&self) -> Option<RejectReason> {
        match self {
            SplitDecompVerdict::Rejected { reason, .. } => Some(*reason),
            _ => None,
        }
    }
}

fn reject(reason: RejectReason, detail: impl Into<String>) -> SplitDecompVerdict {
    SplitDecompVerdict::Rejected {
        reason,
        detail: detail.into(),
    }
}

/// Checks a split decomposition witness and, on success, returns
/// `maxcut(G) = w · maxcut(skeleton)`.
///
/// Skeleton exactness comes from [`recognize_complement_core`], then from
/// [`kpartite_exactness`], then from `certificate` when given (a verified
/// optimal rank-one pair on the skeleton).
pub fn verify_split_decomposable(
    g: &Graph,
    wit: &SplitDecompWitness,
    certificate: Option<&Certificate>,
) -> SplitDecompVerdict {
    use RejectReason::*;
    if wit.multiplicities.len() != g.n() {
        return reject(
            MultiplicityMismatch,
            format!("{} multiplicities for {} vertices", wit.multiplicities.len(), g.n()),
        );
    }
    let spec = match SplitSpec::new(wit.multiplicities.clone()) {
        Ok(s) => s,
        Err(e) => return reject(InvalidMultiplicities, e.to_string()),
    };
    let p = wit.copies;
    if p < 2 {
        return reject(InvalidCopies, format!("p = {p}"));
    }
    let w = &wit.uniform_weight;
    if !w.is_positive() {
        return reject(NonpositiveWeight, format!("w = {w}"));
    }
    if !wit.skeleton.is_unweighted() {
        return reject(SkeletonNotUnweighted, "skeleton edges must have weight 1");
    }

    let (gs, _) = split(g, &spec).expect("multiplicities match the graph");
    let k = wit.skeleton.n();
    let total = gs.n();
    if wit.mapping.len() != total || k * p != total {
        return reject(
            MappingNotBijective,
            format!("split graph has {total} vertices, skeleton split has {}", k * p),
        );
    }
    let mut inverse = vec![usize::MAX; total];
    for (a, &t) in wit.mapping.iter().enumerate() {
        if t >= total || inverse[t] != usize::MAX {
            return reject(MappingNotBijective, format!("target {t} is out of range or repeated"));
        }
        inverse[t] = a;
    }

    let edge_weight = w / int((p * p) as i64);
    let mut skeleton_edges = BTreeSet::new();
    for ((s, t), _) in wit.skeleton.edges() {
        for cs in 0..p {
            for ct in 0..p {
                let (a, b) = (inverse[s * p + cs], inverse[t * p + ct]);
                match gs.weight(a, b) {
                    None => {
                        return reject(MissingSkeletonEdge, format!("split edge {{{a}, {b}}} is absent"));
                    }
                    Some(x) if *x != edge_weight => {
                        return reject(
                            SkeletonWeightMismatch,
                            format!("split edge {{{a}, {b}}} has weight {x}, expected {edge_weight}"),
                        );
                    }
                    Some(_) => {
                        skeleton_edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    for ((a, b), x) in gs.edges() {
        if skeleton_edges.contains(&(a, b)) {
            continue;
        }
        let (ca, cb) = (wit.mapping[a] / p, wit.mapping[b] / p);
        if ca != cb {
            return reject(
                ResidualPlacement,
                format!("residual edge {{{a}, {b}}} joins skeleton vertices {ca} and {cb}"),
            );
        }
        if x.is_negative() {
            return reject(ResidualNegative, format!("residual edge {{{a}, {b}}} has weight {x}"));
        }
        if *x > edge_weight {
            return reject(
                ResidualTooHeavy,
                format!("residual edge {{{a}, {b}}} has weight {x} > {edge_weight}"),
            );
        }
    }

    let Some((skeleton_maxcut, route)) = skeleton_exact_value(&wit.skeleton, certificate) else {
        return reject(SkeletonNotExact, "no route established skeleton exactness");
    };
    SplitDecompVerdict::Accepted {
        maxcut: w * &skeleton_maxcut,
        skeleton_maxcut,
        route,
    }
}

fn skeleton_exact_value(s: &Graph, certificate: Option<&Certificate>) -> Option<(Rational, SkeletonRoute)> {
    if let Ok(r) = recognize_complement_core(s) {
        if r.matched {
            return Some((r.value?, SkeletonRoute::ComplementCore));
        }
    }
    if let Some(parts) = detect_complete_multipartite(s) {
        if let Ok(v) = kpartite_exactness(&parts) {
            if let Some(mc) = kpartite_exact_maxcut(&parts, &v) {
                return Some((mc, SkeletonRoute::Kpartite));
            }
        }
    }
    let c = certificate?;
    if c.source_graph != *s {
        return None;
    }
    let report = verify_certificate(c).ok()?;
    (report.is_optimal() && report.rank_x == 1 && report.unit_diagonal)
        .then(|| (c.objective.clone(), SkeletonRoute::Certificate))
}
