//! Graph constructions: joins, splits, lexicographic products and the named
//! families.
//!
//! Vertex order conventions:
//! - `join(g1, g2)`: vertices of `g1` first, then `g2` shifted by `g1.n()`.
//! - `split(g, p)`: the `p_i` clones of vertex `i` are contiguous, in vertex order.
//! - `lex_product(g1, g2)`: vertex `(u, v)` has index `u·|V₂| + v`.
//! - `complete_kpartite(a)`: parts are contiguous blocks of sizes `a_0, a_1, ...`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpsError {
    #[error("multiplicity of vertex {vertex} is zero")]
    ZeroMultiplicity { vertex: usize },
    #[error("split spec has {found} entries for a graph on {expected} vertices")]
    SpecMismatch { expected: usize, found: usize },
    #[error("part list is empty")]
    EmptyPartList,
    #[error("mass m[{index}] = {value} is not positive")]
    NonpositiveMass { index: usize, value: String },
    #[error("size {size} is too small for {family}")]
    BadSize { family: &'static str, size: usize },
}

/// Disjoint union plus every cross edge at unit weight.
pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    join_weighted(g1, g2, &Rational::one())
}

/// Disjoint union plus every cross edge at weight `cross`.
pub fn join_weighted(g1: &Graph, g2: &Graph, cross: &Rational) -> Graph {
    let n1 = g1.n();
    let mut g = disjoint_union(g1, g2);
    for u in 0..n1 {
        for v in 0..g2.n() {
            g.insert(u, n1 + v, cross.clone());
        }
    }
    g
}

pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.n();
    let mut g = Graph::new(n1 + g2.n());
    for ((u, v), w) in g1.edges() {
        g.insert(u, v, w.clone());
    }
    for ((u, v), w) in g2.edges() {
        g.insert(n1 + u, n1 + v, w.clone());
    }
    g
}

/// Per-vertex clone counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SplitSpec {
    multiplicities: Vec<usize>,
}

impl SplitSpec {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self, OpsError> {
        if let Some(vertex) = multiplicities.iter().position(|&p| p == 0) {
            return Err(OpsError::ZeroMultiplicity { vertex });
        }
        Ok(SplitSpec { multiplicities })
    }

    pub fn uniform(n: usize, p: usize) -> Result<Self, OpsError> {
        Self::new(vec![p; n])
    }

    pub fn identity(n: usize) -> Self {
        SplitSpec {
            multiplicities: vec![1; n],
        }
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `clone_map[a]` is the original vertex of split vertex `a`.
    pub fn clone_map(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| std::iter::repeat_n(i, p))
            .collect()
    }
}

impl TryFrom<Vec<usize>> for SplitSpec {
    type Error = OpsError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        SplitSpec::new(v)
    }
}

impl From<SplitSpec> for Vec<usize> {
    fn from(s: SplitSpec) -> Self {
        s.multiplicities
    }
}

/// Replaces vertex `i` by `p_i` clones; clones of `i` and `j` are fully
/// joined at weight `w_ij / (p_i p_j)`. Returns the graph and its clone map.
pub fn split(g: &Graph, spec: &SplitSpec) -> Result<(Graph, Vec<usize>), OpsError> {
    if spec.len() != g.n() {
        return Err(OpsError::SpecMismatch {
            expected: g.n(),
            found: spec.len(),
        });
    }
    let map = spec.clone_map();
    let p = spec.multiplicities();
    let mut start = vec![0usize; g.n() + 1];
    for i in 0..g.n() {
        start[i + 1] = start[i] + p[i];
    }
    let mut out = Graph::new(map.len());
    for ((u, v), w) in g.edges() {
        let wt = w / Rational::from_integer((p[u] * p[v]).into());
        for a in start[u]..start[u + 1] {
            for b in start[v]..start[v + 1] {
                out.insert(a, b, wt.clone());
            }
        }
    }
    Ok((out, map))
}

/// Lexicographic product. Edge presence alone is used, so weights of the
/// factors are ignored; scale the result for weighted variants.
pub fn lex_product(g1: &Graph, g2: &Graph) -> Graph {
    let (m, n) = (g1.n(), g2.n());
    let mut g = Graph::new(m * n);
    for ((u, u2), _) in g1.edges() {
        for v in 0..n {
            for v2 in 0..n {
                g.insert(u * n + v, u2 * n + v2, Rational::one());
            }
        }
    }
    for u in 0..m {
        for ((v, v2), _) in g2.edges() {
            g.insert(u * n + v, u * n + v2, Rational::one());
        }
    }
    g
}

/// Compares the product's Laplacian with
/// `I⊗D₂ + D₁⊗nI + I⊗(L₂ - D₂) + (L₁ - D₁)⊗J`.
pub fn lex_laplacian_identity(g1: &Graph, g2: &Graph) -> bool {
    let (m, n) = (g1.n(), g2.n());
    let l1 = g1.laplacian();
    let l2 = g2.laplacian();
    let d1 = SymMatrix::from_diagonal(l1.diagonal());
    let d2 = SymMatrix::from_diagonal(l2.diagonal());
    let im = SymMatrix::<Rational>::identity(m);
    let ni = SymMatrix::<Rational>::identity(n).scale(&Rational::from_integer(n.into()));
    let j = SymMatrix::<Rational>::ones(n);
    let rhs = &(&(&im.kron(&d2) + &d1.kron(&ni)) + &im.kron(&(&l2 - &d2))) + &(&l1 - &d1).kron(&j);
    lex_product(g1, g2).laplacian() == rhs
}

/// `K(a_0, ..., a_{k-1})` with contiguous parts.
pub fn complete_kpartite(parts: &[usize]) -> Result<Graph, OpsError> {
    if parts.is_empty() {
        return Err(OpsError::EmptyPartList);
    }
    if parts.contains(&0) {
        return Err(OpsError::BadSize {
            family: "complete k-partite part",
            size: 0,
        });
    }
    let label: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i, a))
        .collect();
    let mut g = Graph::new(label.len());
    for u in 0..label.len() {
        for v in u + 1..label.len() {
            if label[u] != label[v] {
                g.insert(u, v, Rational::one());
            }
        }
    }
    Ok(g)
}

/// Complete graph with `w_ij = m_i m_j`.
pub fn complete_weighted(m: &[Rational]) -> Result<Graph, OpsError> {
    if let Some(index) = m.iter().position(|x| !x.is_positive()) {
        return Err(OpsError::NonpositiveMass {
            index,
            value: m[index].to_string(),
        });
    }
    let mut g = Graph::new(m.len());
    for u in 0..m.len() {
        for v in u + 1..m.len() {
            g.insert(u, v, &m[u] * &m[v]);
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, OpsError> {
    if n < 3 {
        return Err(OpsError::BadSize { family: "cycle", size: n });
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        g.insert(i, (i + 1) % n, Rational::one());
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph, OpsError> {
    if n < 1 {
        return Err(OpsError::BadSize { family: "path", size: n });
    }
    let mut g = Graph::new(n);
    for i in 1..n {
        g.insert(i - 1, i, Rational::one());
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, OpsError> {
    if n < 1 {
        return Err(OpsError::BadSize { family: "complete", size: n });
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.insert(u, v, Rational::one());
        }
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Result<Graph, OpsError> {
    if n < 1 {
        return Err(OpsError::BadSize { family: "edgeless", size: n });
    }
    Ok(Graph::new(n))
}

/// Adds `delta` to the weight of `{u, v}`, creating the edge if needed.
pub fn with_added_weight(g: &Graph, u: usize, v: usize, delta: &Rational) -> Graph {
    let mut out = g.clone();
    let w = g.weight(u, v).cloned().unwrap_or_else(Rational::zero) + delta;
    out.insert(u, v, w);
    out
}
