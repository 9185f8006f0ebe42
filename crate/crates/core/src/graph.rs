//! Weighted simple graphs over exact rational weights.
//!
//! Vertices are the indices `0..n`. Edges are stored once per unordered pair
//! with the smaller endpoint first, and a zero weight is the same as no edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::SymMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("edge {{{u}, {v}}} listed more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("graph has a non-unit edge weight")]
    NotUnweighted,
    #[error("expected {expected} vertices, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Simple undirected graph with nonzero rational edge weights.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edge_list<I>(n: usize, entries: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut g = Graph::new(n);
        let mut seen = BTreeSet::new();
        for (u, v, w) in entries {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::IndexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            let k = key(u, v);
            if !seen.insert(k) {
                return Err(GraphError::DuplicateEdge { u: k.0, v: k.1 });
            }
            g.insert(u, v, w);
        }
        Ok(g)
    }

    /// Unit-weight graph from a list of pairs.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edge_list(n, pairs.into_iter().map(|(u, v)| (u, v, Rational::one())))
    }

    /// Sets the weight of `{u, v}`, removing the edge when `w` is zero.
    /// Callers guarantee `u != v` and both indices are in range.
    pub(crate) fn insert(&mut self, u: usize, v: usize, w: Rational) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let k = key(u, v);
        if w.is_zero() {
            self.edges.remove(&k);
        } else {
            self.edges.insert(k, w);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `((u, v), w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.edges.iter().map(|(&k, w)| (k, w))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edges.get(&key(u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(One::is_one)
    }

    pub fn has_nonnegative_weights(&self) -> bool {
        self.edges.values().all(|w| !w.is_negative())
    }

    pub fn require_unweighted(&self) -> Result<(), GraphError> {
        if self.is_unweighted() {
            Ok(())
        } else {
            Err(GraphError::NotUnweighted)
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::IndexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Adjacency lists with weights, indexed by vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(u, v), w) in &self.edges {
            adj[u].push((v, w.clone()));
            adj[v].push((u, w.clone()));
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `L_ii = Σ_j w_ij`, `L_ij = -w_ij`.
    pub fn laplacian(&self) -> SymMatrix<Rational> {
        let mut l = SymMatrix::zeros(self.n);
        for (&(u, v), w) in &self.edges {
            l.set(u, v, -w.clone());
            let du = l.get(u, u) + w;
            l.set(u, u, du);
            let dv = l.get(v, v) + w;
            l.set(v, v, dv);
        }
        l
    }

    /// Complement of an unweighted graph.
    pub fn complement(&self) -> Result<Graph, GraphError> {
        self.require_unweighted()?;
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v, Rational::one());
                }
            }
        }
        Ok(g)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in self.edges.keys() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        // Roots are the minimum of each class, so map order is by smallest member.
        groups.into_values().collect()
    }

    pub fn degree(&self, v: usize) -> Result<Rational, GraphError> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .fold(Rational::zero(), |acc, (_, w)| acc + w))
    }

    /// Degree of `v` in the subgraph induced by `subset`.
    pub fn induced_degree(&self, subset: &[usize], v: usize) -> Result<Rational, GraphError> {
        self.check_vertex(v)?;
        for &u in subset {
            self.check_vertex(u)?;
        }
        if !subset.contains(&v) {
            return Err(GraphError::IndexOutOfRange { vertex: v, n: subset.len() });
        }
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        Ok(set
            .iter()
            .filter(|&&u| u != v)
            .filter_map(|&u| self.weight(u, v))
            .fold(Rational::zero(), |acc, w| acc + w))
    }

    /// Every weight multiplied by `k`.
    pub fn scaled(&self, k: &Rational) -> Graph {
        let mut g = Graph::new(self.n);
        for (&(u, v), w) in &self.edges {
            g.insert(u, v, w * k);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::SizeMismatch { expected: self.n, found: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::IndexOutOfRange { vertex: p, n: self.n });
            }
        }
        let mut g = Graph::new(self.n);
        for (&(u, v), w) in &self.edges {
            g.insert(perm[u], perm[v], w.clone());
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if let Some(w) = self.weight(a, b) {
                    g.insert(i, j, w.clone());
                }
            }
        }
        Ok(g)
    }

    /// Text edge-list form: `n <count>` header, then `u v w` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (&(u, v), w) in &self.edges {
            out.push_str(&format!("{u} {v} {}\n", format_rational(w)));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut n: Option<usize> = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let perr = |message: String| GraphError::Parse { line: line_no, message };
            if parts[0] == "n" {
                if n.is_some() {
                    return Err(perr("repeated `n` header".into()));
                }
                if parts.len() != 2 {
                    return Err(perr("header must be `n <count>`".into()));
                }
                n = Some(
                    parts[1]
                        .parse()
                        .map_err(|_| perr(format!("bad vertex count `{}`", parts[1])))?,
                );
                continue;
            }
            if n.is_none() {
                return Err(perr("edge before `n <count>` header".into()));
            }
            if parts.len() != 2 && parts.len() != 3 {
                return Err(perr("expected `u v [weight]`".into()));
            }
            let u: usize = parts[0]
                .parse()
                .map_err(|_| perr(format!("bad vertex `{}`", parts[0])))?;
            let v: usize = parts[1]
                .parse()
                .map_err(|_| perr(format!("bad vertex `{}`", parts[1])))?;
            let w = match parts.get(2) {
                Some(s) => parse_rational(s).map_err(|e| perr(e.to_string()))?,
                None => Rational::one(),
            };
            entries.push((u, v, w));
        }
        let n = n.ok_or(GraphError::Parse {
            line: 0,
            message: "missing `n <count>` header".into(),
        })?;
        // Zero-weight lines still count for duplicate detection.
        Graph::from_edge_list(n, entries)
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_edge_list(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, (&(u, v), w)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if w.is_one() {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}:{w}")?;
            }
        }
        write!(f, "])")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

struct EdgeRow<'a>(usize, usize, &'a Rational);

impl Serialize for EdgeRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.0)?;
        seq.serialize_element(&self.1)?;
        seq.serialize_element(&format_rational(self.2))?;
        seq.end()
    }
}

struct EdgeRows<'a>(&'a Graph);

impl Serialize for EdgeRows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.edge_count()))?;
        for (&(u, v), w) in &self.0.edges {
            seq.serialize_element(&EdgeRow(u, v, w))?;
        }
        seq.end()
    }
}

/// JSON form `{"n": 4, "edges": [[0, 1, "5/3"], ...]}`.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &EdgeRows(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WeightLit {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EdgeLit {
    Pair(usize, usize),
    Weighted(usize, usize, WeightLit),
}

#[derive(Deserialize)]
struct GraphLit {
    n: usize,
    edges: Vec<EdgeLit>,
}

/// Accepts `[u, v]` pairs (unit weight) as well as `[u, v, "p/q"]` triples.
impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lit = GraphLit::deserialize(d)?;
        let mut entries = Vec::with_capacity(lit.edges.len());
        for e in lit.edges {
            entries.push(match e {
                EdgeLit::Pair(u, v) => (u, v, Rational::one()),
                EdgeLit::Weighted(u, v, WeightLit::Int(w)) => (u, v, crate::rational::int(w)),
                EdgeLit::Weighted(u, v, WeightLit::Text(t)) => {
                    (u, v, parse_rational(&t).map_err(de::Error::custom)?)
                }
            });
        }
        Graph::from_edge_list(lit.n, entries).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    /// `+1` for side A, `-1` for side B.
    pub fn sign(self) -> i64 {
        match self {
            Side::A => 1,
            Side::B => -1,
        }
    }
}

/// Two-sided labelling of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPartition {
    sides: Vec<Side>,
}

impl VertexPartition {
    pub fn new(sides: Vec<Side>) -> Self {
        VertexPartition { sides }
    }

    /// Vertices in `side_a` go to A, everything else to B.
    pub fn from_side_a(n: usize, side_a: &[usize]) -> Result<Self, GraphError> {
        let mut sides = vec![Side::B; n];
        for &v in side_a {
            if v >= n {
                return Err(GraphError::IndexOutOfRange { vertex: v, n });
            }
            sides[v] = Side::A;
        }
        Ok(VertexPartition { sides })
    }

    /// Bit `i` of `mask` set puts vertex `i` on side B.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        VertexPartition {
            sides: (0..n)
                .map(|i| if (mask >> i) & 1 == 1 { Side::B } else { Side::A })
                .collect(),
        }
    }

    /// Side from the sign of each entry; zero counts as side A.
    pub fn from_signs(signs: &[i64]) -> Self {
        VertexPartition {
            sides: signs.iter().map(|&s| if s < 0 { Side::B } else { Side::A }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side_a(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.sides[v] == Side::A).collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.sides[v] == Side::B).collect()
    }

    /// The ±1 vector of the partition.
    pub fn signs(&self) -> Vec<i64> {
        self.sides.iter().map(|s| s.sign()).collect()
    }

    pub fn sign_vector(&self) -> Vec<Rational> {
        self.signs().into_iter().map(crate::rational::int).collect()
    }

    pub fn flipped(&self) -> Self {
        VertexPartition {
            sides: self.sides.iter().map(|s| s.flip()).collect(),
        }
    }

    /// Representative with vertex 0 on side A.
    pub fn canonical(&self) -> Self {
        match self.sides.first() {
            Some(Side::B) => self.flipped(),
            _ => self.clone(),
        }
    }

    /// Equality up to a global flip.
    pub fn same_cut(&self, other: &VertexPartition) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.side_a().len() == self.len()
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |v: Vec<usize>| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "{{{}}} | {{{}}}", fmt_set(self.side_a()), fmt_set(self.side_b()))
    }
}
