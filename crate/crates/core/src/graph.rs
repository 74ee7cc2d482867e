//! Multidigraph data model: finite graphs given by dart pairs with an
//! involution, edge weights, magnetic potentials, vertex contraction and
//! vertex virtualisation (Dirichlet marking).

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Index of a directed edge (dart). Darts come in pairs `(2k, 2k+1)`, the
/// involution flips the last bit.
pub type DartId = usize;

/// Angles are compared modulo 2π with this tolerance.
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(VertexId),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    UnknownVertex { vertex: VertexId, order: usize },
    #[error("classes do not partition the vertex set")]
    InvalidPartition,
    #[error("cannot impose Dirichlet conditions on every vertex")]
    AllVerticesDirichlet,
    #[error("operation requires zero magnetic potential, found alpha={0} on edge {1}")]
    NonzeroPotential(f64, usize),
    #[error("edge weight {0} is not a positive integer")]
    NonIntegerWeight(f64),
}

/// Normalise an angle into `[0, 2π)`.
pub fn normalize_angle(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// True iff `alpha ≡ 0 (mod 2π)` within [`ANGLE_TOL`].
pub fn angle_is_zero(alpha: f64) -> bool {
    let a = normalize_angle(alpha);
    a <= ANGLE_TOL || TAU - a <= ANGLE_TOL
}

/// One undirected edge. `alpha` is the potential on the tail→head dart; the
/// reverse dart carries `-alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: f64,
    pub alpha: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A dart: one of the two directed versions of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dart {
    pub id: DartId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// Finite multidigraph with a fixed-point-free dart involution. Vertices are
/// dense indices; isolated vertices are rejected at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiDiGraph {
    n: usize,
    pairs: Vec<(VertexId, VertexId)>,
    /// darts with tail v, ascending
    outgoing: Vec<Vec<DartId>>,
}

impl MultiDiGraph {
    pub fn new(n: usize, pairs: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut outgoing = vec![Vec::new(); n];
        for (k, &(t, h)) in pairs.iter().enumerate() {
            for v in [t, h] {
                if v >= n {
                    return Err(GraphError::UnknownVertex {
                        vertex: v,
                        order: n,
                    });
                }
            }
            outgoing[t].push(2 * k);
            outgoing[h].push(2 * k + 1);
        }
        for (v, darts) in outgoing.iter().enumerate() {
            if darts.is_empty() {
                return Err(GraphError::IsolatedVertex(v));
            }
        }
        Ok(Self { n, pairs, outgoing })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn dart(&self, d: DartId) -> Dart {
        let (t, h) = self.pairs[d / 2];
        if d.is_multiple_of(2) {
            Dart {
                id: d,
                tail: t,
                head: h,
            }
        } else {
            Dart {
                id: d,
                tail: h,
                head: t,
            }
        }
    }

    /// The involution `e ↦ ē`.
    pub fn inverse(&self, d: DartId) -> DartId {
        d ^ 1
    }

    pub fn edge_pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    /// Darts with initial vertex `v` (loops contribute both darts).
    pub fn darts_at(&self, v: VertexId) -> &[DartId] {
        &self.outgoing[v]
    }

    /// Unweighted degree; loops count twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.outgoing[v].len()
    }

    /// Degrees with multiplicity, a graph invariant.
    pub fn degree_multiset(&self) -> IntegerMultiset {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Proper 2-colouring if one exists; loops and odd cycles force `None`.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour: Vec<Option<u8>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(0);
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                let cv = colour[v].unwrap();
                for &d in self.darts_at(v) {
                    let u = self.dart(d).head;
                    match colour[u] {
                        None => {
                            colour[u] = Some(1 - cv);
                            queue.push(u);
                        }
                        Some(cu) if cu == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop() {
            for &d in self.darts_at(v) {
                let u = self.dart(d).head;
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push(u);
                }
            }
        }
        count == self.n
    }

    /// Connected components as a vertex → component-index map.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &d in self.darts_at(v) {
                    let u = self.dart(d).head;
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        queue.push(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// A multidigraph with symmetric positive edge weights and an antisymmetric
/// magnetic potential modulo 2π.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticGraph {
    graph: MultiDiGraph,
    /// per undirected edge
    weight: Vec<f64>,
    /// per undirected edge, the potential on the even (tail→head) dart, in [0, 2π)
    alpha: Vec<f64>,
}

/// Builds a magnetic graph from one record per undirected edge.
pub fn build_graph(
    n: usize,
    edge_spec: &[(VertexId, VertexId, f64, f64)],
) -> Result<MagneticGraph, GraphError> {
    let mut pairs = Vec::with_capacity(edge_spec.len());
    let mut weight = Vec::with_capacity(edge_spec.len());
    let mut alpha = Vec::with_capacity(edge_spec.len());
    for &(t, h, w, a) in edge_spec {
        if w <= 0.0 || w.is_nan() {
            return Err(GraphError::NonPositiveWeight(w));
        }
        pairs.push((t, h));
        weight.push(w);
        alpha.push(normalize_angle(a));
    }
    let graph = MultiDiGraph::new(n, pairs)?;
    Ok(MagneticGraph {
        graph,
        weight,
        alpha,
    })
}

impl MagneticGraph {
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let spec: Vec<_> = edges
            .iter()
            .map(|e| (e.tail, e.head, e.weight, e.alpha))
            .collect();
        build_graph(n, &spec)
    }

    pub fn graph(&self) -> &MultiDiGraph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn edge(&self, k: usize) -> Edge {
        let (t, h) = self.graph.pairs[k];
        Edge {
            tail: t,
            head: h,
            weight: self.weight[k],
            alpha: self.alpha[k],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.edge_count()).map(|k| self.edge(k))
    }

    pub fn dart_weight(&self, d: DartId) -> f64 {
        self.weight[d / 2]
    }

    /// Potential on dart `d`; the odd dart of each pair carries `-alpha`.
    pub fn dart_alpha(&self, d: DartId) -> f64 {
        if d.is_multiple_of(2) {
            self.alpha[d / 2]
        } else {
            normalize_angle(-self.alpha[d / 2])
        }
    }

    pub(crate) fn wdeg(&self, v: VertexId) -> f64 {
        self.graph
            .darts_at(v)
            .iter()
            .map(|&d| self.dart_weight(d))
            .sum()
    }

    /// Sum of edge weights over darts starting at `v`; loops count twice.
    pub fn weighted_degree(&self, v: VertexId) -> Result<f64, GraphError> {
        if v >= self.order() {
            return Err(GraphError::UnknownVertex {
                vertex: v,
                order: self.order(),
            });
        }
        Ok(self.wdeg(v))
    }

    pub fn weighted_degrees(&self) -> Vec<f64> {
        (0..self.order()).map(|v| self.wdeg(v)).collect()
    }

    pub fn has_standard_weights(&self) -> bool {
        self.weight.iter().all(|&w| (w - 1.0).abs() <= 1e-12)
    }

    pub fn has_zero_potential(&self) -> bool {
        self.alpha.iter().all(|&a| angle_is_zero(a))
    }

    /// Contracts vertices according to `classes` (a partition of the vertex
    /// set). Darts are unchanged; edges inside a class become loops. Classes
    /// are relabelled by their smallest member, ascending.
    pub fn contract(&self, classes: &[Vec<VertexId>]) -> Result<Contraction, GraphError> {
        let n = self.order();
        let mut class_index = vec![usize::MAX; n];
        let mut reps: Vec<(VertexId, usize)> = Vec::with_capacity(classes.len());
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(GraphError::InvalidPartition);
            }
            let mut rep = VertexId::MAX;
            for &v in class {
                if v >= n || class_index[v] != usize::MAX {
                    return Err(GraphError::InvalidPartition);
                }
                class_index[v] = c;
                rep = rep.min(v);
            }
            reps.push((rep, c));
        }
        if class_index.contains(&usize::MAX) {
            return Err(GraphError::InvalidPartition);
        }
        reps.sort_unstable();
        let mut new_id = vec![usize::MAX; classes.len()];
        for (rank, &(_, c)) in reps.iter().enumerate() {
            new_id[c] = rank;
        }
        let vertex_map: Vec<VertexId> = (0..n).map(|v| new_id[class_index[v]]).collect();
        let edges: Vec<_> = self
            .edges()
            .map(|e| (vertex_map[e.tail], vertex_map[e.head], e.weight, e.alpha))
            .collect();
        let graph = build_graph(classes.len(), &edges)?;
        Ok(Contraction {
            shrinking_number: n - classes.len(),
            vertex_map,
            graph,
        })
    }

    /// Marks `v0` as Dirichlet vertices. Edges inside `v0` carry no Laplacian
    /// contribution. The whole vertex set cannot be virtualised.
    pub fn virtualise(&self, v0: &BTreeSet<VertexId>) -> Result<BoundaryMarkedGraph, GraphError> {
        for &v in v0 {
            if v >= self.order() {
                return Err(GraphError::UnknownVertex {
                    vertex: v,
                    order: self.order(),
                });
            }
        }
        if v0.len() == self.order() {
            return Err(GraphError::AllVerticesDirichlet);
        }
        Ok(BoundaryMarkedGraph {
            base: self.clone(),
            dirichlet: v0.clone(),
        })
    }

    /// The graph as a boundary-marked graph with no Dirichlet vertices.
    pub fn unmarked(&self) -> BoundaryMarkedGraph {
        BoundaryMarkedGraph {
            base: self.clone(),
            dirichlet: BTreeSet::new(),
        }
    }

    /// Merges parallel edges (and parallel loops), summing their weights.
    /// Requires zero potential. The result is isolaplacian with the input.
    pub fn simplify_to_weighted(&self) -> Result<MagneticGraph, GraphError> {
        self.require_zero_potential()?;
        let mut merged: std::collections::BTreeMap<(VertexId, VertexId), f64> =
            std::collections::BTreeMap::new();
        for e in self.edges() {
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            *merged.entry(key).or_insert(0.0) += e.weight;
        }
        let edges: Vec<_> = merged
            .into_iter()
            .map(|((t, h), w)| (t, h, w, 0.0))
            .collect();
        build_graph(self.order(), &edges)
    }

    /// Replaces each integer-weight-`k` edge by `k` parallel unit edges.
    /// Requires zero potential and weights in ℕ.
    pub fn expand_to_multigraph(&self) -> Result<MagneticGraph, GraphError> {
        self.require_zero_potential()?;
        let mut edges = Vec::new();
        for e in self.edges() {
            let k = e.weight.round();
            if (e.weight - k).abs() > 1e-9 || k < 1.0 {
                return Err(GraphError::NonIntegerWeight(e.weight));
            }
            for _ in 0..k as usize {
                edges.push((e.tail, e.head, 1.0, 0.0));
            }
        }
        build_graph(self.order(), &edges)
    }

    fn require_zero_potential(&self) -> Result<(), GraphError> {
        for (k, &a) in self.alpha.iter().enumerate() {
            if !angle_is_zero(a) {
                return Err(GraphError::NonzeroPotential(a, k));
            }
        }
        Ok(())
    }
}

/// Result of [`MagneticGraph::contract`].
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: MagneticGraph,
    /// `|V| - |classes|`
    pub shrinking_number: usize,
    /// old vertex → new vertex
    pub vertex_map: Vec<VertexId>,
}

/// A magnetic graph with a marked Dirichlet vertex subset; the operator on it
/// is the principal submatrix of the full Laplacian on the free vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMarkedGraph {
    base: MagneticGraph,
    dirichlet: BTreeSet<VertexId>,
}

impl BoundaryMarkedGraph {
    pub fn base(&self) -> &MagneticGraph {
        &self.base
    }

    pub fn dirichlet(&self) -> &BTreeSet<VertexId> {
        &self.dirichlet
    }

    pub fn is_dirichlet(&self, v: VertexId) -> bool {
        self.dirichlet.contains(&v)
    }

    /// Free (non-Dirichlet) vertices, ascending.
    pub fn free_vertices(&self) -> Vec<VertexId> {
        (0..self.base.order())
            .filter(|v| !self.dirichlet.contains(v))
            .collect()
    }

    /// Order of the virtualised graph: `|V| - |V0|`.
    pub fn order(&self) -> usize {
        self.base.order() - self.dirichlet.len()
    }

    /// Edges with both endpoints Dirichlet are excluded from the operator.
    pub fn is_excluded_edge(&self, k: usize) -> bool {
        let e = self.base.edge(k);
        self.is_dirichlet(e.tail) && self.is_dirichlet(e.head)
    }
}

/// Multiset of non-negative integers (degree multisets).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerMultiset(std::collections::BTreeMap<usize, usize>);

impl IntegerMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, value: usize) {
        *self.0.entry(value).or_insert(0) += 1;
    }

    pub fn insert_many(&mut self, value: usize, multiplicity: usize) {
        if multiplicity > 0 {
            *self.0.entry(value).or_insert(0) += multiplicity;
        }
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.0.get(&value).copied().unwrap_or(0)
    }

    pub fn cardinality(&self) -> usize {
        self.0.values().sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&v, &m) in &other.0 {
            out.insert_many(v, m);
        }
        out
    }

    /// `(value, multiplicity)` pairs, ascending by value.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&v, &m)| (v, m))
    }

    /// All values expanded with multiplicity, ascending.
    pub fn expanded(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cardinality());
        for (v, m) in self.iter() {
            out.extend(std::iter::repeat_n(v, m));
        }
        out
    }
}

impl FromIterator<usize> for IntegerMultiset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut ms = Self::new();
        for v in iter {
            ms.insert(v);
        }
        ms
    }
}

impl fmt::Display for IntegerMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^({m})")?;
            }
        }
        write!(f, "}}")
    }
}

impl Serialize for IntegerMultiset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
