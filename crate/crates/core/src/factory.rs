//! The construction engine: integer partitions, frame members, disjoint and
//! contracted frame unions, their closed-form spectra and degree multisets,
//! eigenfunction lifts, and a catalog of ready-made building blocks.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    build_graph, BoundaryMarkedGraph, GraphError, IntegerMultiset, MagneticGraph, VertexId,
};
use crate::spectra::{
    hermitian_eigenpairs, laplacian_matrix, spectrum, RealMultiset, SpectraError,
};

#[derive(Debug, Error)]
pub enum FactoryError {
    #[error("need 1 <= s <= r, got r={r}, s={s}")]
    InvalidRange { r: usize, s: usize },
    #[error("identification sets must satisfy V1 ⊆ V0 ⊆ V")]
    InvalidVertexSets,
    #[error("frame member index must be positive")]
    ZeroMember,
    #[error("unknown building block '{0}'")]
    UnknownBlock(String),
    #[error("block '{name}' expects {expected} potential parameter(s), got {got}")]
    WrongParameterCount {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("star block needs m >= 2")]
    StarTooSmall,
    #[error("input eigenpair residual {0:.3e} exceeds 1e-10")]
    InputResidualTooLarge(f64),
    #[error("lifted vector residual {0:.3e} exceeds 1e-8")]
    ResidualTooLarge(f64),
    #[error("root-of-unity index must lie in 1..{max}, got {got}")]
    BadRootIndex { max: usize, got: usize },
    #[error("member index {got} out of range for partition of length {len}")]
    BadMemberIndex { got: usize, len: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Non-increasing sequence of positive integers; an s-partition of r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Canonicalises (sorts non-increasing) and validates positivity.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, FactoryError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(FactoryError::InvalidRange {
                r: 0,
                s: parts.len(),
            });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn single(a: usize) -> Result<Self, FactoryError> {
        Self::new(vec![a])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned number `r = Σ a_i`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The length `s` of the partition.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

/// All s-partitions of r in canonical non-increasing form, ordered
/// lexicographically descending (largest first part first).
pub fn enumerate_partitions(r: usize, s: usize) -> Result<Vec<Partition>, FactoryError> {
    if s == 0 || s > r {
        return Err(FactoryError::InvalidRange { r, s });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(s);
    descend(r, s, r, &mut prefix, &mut out);
    return Ok(out);

    fn descend(r: usize, s: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if s == 1 {
            if r <= max {
                let mut parts = prefix.clone();
                parts.push(r);
                out.push(Partition { parts });
            }
            return;
        }
        // first part at least ceil(r/s) to stay non-increasing, at most r-(s-1)
        let hi = max.min(r - (s - 1));
        let lo = r.div_ceil(s);
        for a in (lo..=hi).rev() {
            prefix.push(a);
            descend(r - a, s - 1, a, prefix, out);
            prefix.pop();
        }
    }
}

/// A building block with its identification set V0 and distinguished set V1.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSpec {
    block: MagneticGraph,
    v0: BTreeSet<VertexId>,
    v1: BTreeSet<VertexId>,
}

/// Degenerate parameter choices that still construct but cannot separate
/// partitions (flagged in reports, not errors).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrivialMode {
    /// V1 = ∅: the construction is the disjoint frame union.
    NoDistinguishedVertex,
    /// V1 = V0: the construction collapses to the r-th frame member.
    AllDistinguished,
}

impl FrameSpec {
    pub fn new(
        block: MagneticGraph,
        v0: BTreeSet<VertexId>,
        v1: BTreeSet<VertexId>,
    ) -> Result<Self, FactoryError> {
        let n = block.order();
        if !v1.is_subset(&v0) || v0.iter().any(|&v| v >= n) {
            return Err(FactoryError::InvalidVertexSets);
        }
        Ok(Self { block, v0, v1 })
    }

    pub fn block(&self) -> &MagneticGraph {
        &self.block
    }

    pub fn v0(&self) -> &BTreeSet<VertexId> {
        &self.v0
    }

    pub fn v1(&self) -> &BTreeSet<VertexId> {
        &self.v1
    }

    pub fn trivial_mode(&self) -> Option<TrivialMode> {
        if self.v1.is_empty() {
            Some(TrivialMode::NoDistinguishedVertex)
        } else if self.v1 == self.v0 {
            Some(TrivialMode::AllDistinguished)
        } else {
            None
        }
    }

    /// Spectrum of the block with `set` virtualised; all-of-V gives the
    /// empty multiset (the operator has order zero).
    fn dirichlet_spectrum(&self, set: &BTreeSet<VertexId>) -> Result<RealMultiset, FactoryError> {
        if set.len() == self.block.order() {
            return Ok(RealMultiset::empty());
        }
        Ok(spectrum(&self.block.virtualise(set)?)?)
    }
}

/// A constructed frame union carrying the copy → vertex bookkeeping needed
/// for eigenfunction lifts and provenance.
#[derive(Debug, Clone)]
pub struct FrameUnion {
    graph: MagneticGraph,
    spec: FrameSpec,
    partition: Partition,
    /// union vertex of `(copy t, block vertex v)`, indexed `t * n + v`
    vertex_map: Vec<VertexId>,
    /// first copy index of each member
    member_offset: Vec<usize>,
    /// whether V1 was contracted across members (false for disjoint unions)
    glued: bool,
}

impl FrameUnion {
    pub fn graph(&self) -> &MagneticGraph {
        &self.graph
    }

    pub fn into_graph(self) -> MagneticGraph {
        self.graph
    }

    pub fn spec(&self) -> &FrameSpec {
        &self.spec
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Union vertex holding block vertex `v` of branch `j` of member `i`.
    pub fn vertex_of(&self, member: usize, branch: usize, v: VertexId) -> VertexId {
        let t = self.member_offset[member] + branch;
        self.vertex_map[t * self.spec.block.order() + v]
    }

    /// Union vertices that are images of V1 (the glued distinguished set).
    pub fn distinguished_vertices(&self) -> BTreeSet<VertexId> {
        self.spec
            .v1
            .iter()
            .map(|&v| self.vertex_of(0, 0, v))
            .collect()
    }
}

fn assemble_union(spec: &FrameSpec, partition: Partition, glue_v1: bool) -> FrameUnion {
    let block = &spec.block;
    let n = block.order();
    let parts = partition.parts();
    let s = parts.len();
    let r: usize = partition.total();

    let mut member_offset = Vec::with_capacity(s);
    let mut acc = 0;
    for &a in parts {
        member_offset.push(acc);
        acc += a;
    }

    // raw ids t*n+v; classes keyed by their smallest raw id
    let mut raw_rep = vec![0usize; r * n];
    for i in 0..s {
        for j in 0..parts[i] {
            let t = member_offset[i] + j;
            for v in 0..n {
                let raw = t * n + v;
                raw_rep[raw] = if glue_v1 && spec.v1.contains(&v) {
                    v // member 0, branch 0
                } else if spec.v0.contains(&v) {
                    member_offset[i] * n + v
                } else {
                    raw
                };
            }
        }
    }
    let mut reps: Vec<usize> = raw_rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut dense = std::collections::HashMap::with_capacity(reps.len());
    for (rank, &raw) in reps.iter().enumerate() {
        dense.insert(raw, rank);
    }
    let vertex_map: Vec<usize> = raw_rep.iter().map(|raw| dense[raw]).collect();

    let mut edges = Vec::with_capacity(r * block.edge_count());
    for t in 0..r {
        for e in block.edges() {
            edges.push((
                vertex_map[t * n + e.tail],
                vertex_map[t * n + e.head],
                e.weight,
                e.alpha,
            ));
        }
    }
    let graph = build_graph(reps.len(), &edges)
        .expect("union of a valid block along valid vertex sets is valid");
    FrameUnion {
        graph,
        spec: spec.clone(),
        partition,
        vertex_map,
        member_offset,
        glued: glue_v1,
    }
}

/// The a-th frame member: `a` disjoint copies of the block contracted along
/// V0. Order `a(|G|-|V0|) + |V0|`, edge count `a |E(G)|`.
pub fn frame_member(spec: &FrameSpec, a: usize) -> Result<FrameUnion, FactoryError> {
    if a == 0 {
        return Err(FactoryError::ZeroMember);
    }
    Ok(assemble_union(spec, Partition::single(a)?, false))
}

/// Disjoint A-union of the frame: the F_{a_i} side by side, not glued.
/// Order `r(|G|-|V0|) + s|V0|`.
pub fn disjoint_frame_union(spec: &FrameSpec, partition: &Partition) -> FrameUnion {
    assemble_union(spec, partition.clone(), false)
}

/// V1-contracted A-union of the frame: every `v ∈ V1` merged across all
/// members. Order `r(|G|-|V0|) + s(|V0|-|V1|) + |V1|`.
pub fn contracted_frame_union(spec: &FrameSpec, partition: &Partition) -> FrameUnion {
    assemble_union(spec, partition.clone(), true)
}

/// Closed-form spectrum of the a-th frame member of a block with V1
/// virtualised: `spec(G⁺_{V1}) ⊎ spec(G⁺_{V0})^(a-1)`.
pub fn theoretical_frame_spectrum(
    spec: &FrameSpec,
    a: usize,
) -> Result<RealMultiset, FactoryError> {
    if a == 0 {
        return Err(FactoryError::ZeroMember);
    }
    let base = spec.dirichlet_spectrum(&spec.v1)?;
    let dir = spec.dirichlet_spectrum(&spec.v0)?;
    Ok(base.union(&dir.power(a - 1)))
}

/// Closed-form spectrum of the V1-contracted A-union:
/// `spec(G) ⊎ spec(G⁺_{V0})^(r-s) ⊎ spec(G⁺_{V1})^(s-1)`.
pub fn theoretical_union_spectrum(
    spec: &FrameSpec,
    partition: &Partition,
) -> Result<RealMultiset, FactoryError> {
    let r = partition.total();
    let s = partition.len();
    let full = spectrum(&spec.block.unmarked())?;
    let dir0 = spec.dirichlet_spectrum(&spec.v0)?;
    let dir1 = spec.dirichlet_spectrum(&spec.v1)?;
    Ok(full.union(&dir0.power(r - s)).union(&dir1.power(s - 1)))
}

/// Closed-form degree multiset of the V1-contracted A-union:
/// `⟅deg v⟆^(r)` over `v ∉ V0`, `⊎ ⟅a·deg v0⟆` per part and `v0 ∈ V0∖V1`,
/// `⊎ ⟅r·deg v1⟆` over `v1 ∈ V1`.
pub fn theoretical_degree_multiset(spec: &FrameSpec, partition: &Partition) -> IntegerMultiset {
    let g = spec.block.graph();
    let r = partition.total();
    let mut out = IntegerMultiset::new();
    for v in 0..spec.block.order() {
        if !spec.v0.contains(&v) {
            out.insert_many(g.degree(v), r);
        }
    }
    for &a in partition.parts() {
        for &v0 in &spec.v0 {
            if !spec.v1.contains(&v0) {
                out.insert(a * g.degree(v0));
            }
        }
    }
    for &v1 in &spec.v1 {
        out.insert(r * g.degree(v1));
    }
    out
}

// ---------------------------------------------------------------------------
// eigenfunction lifts

/// A vector on the union vertices claimed to be an eigenfunction.
#[derive(Debug, Clone)]
pub struct LiftedVector {
    /// function values per union vertex (not matrix coefficients)
    pub values: Vec<Complex64>,
    pub eigenvalue: f64,
    /// `‖Δf - λf‖` in the weighted ℓ² norm after normalisation
    pub residual: f64,
}

/// `(Δ⁺ f)(v)` on function values, rows and support restricted to free vertices.
fn apply_dirichlet_laplacian(
    g: &MagneticGraph,
    dirichlet: &BTreeSet<VertexId>,
    f: &[Complex64],
) -> Vec<Complex64> {
    let gr = g.graph();
    (0..g.order())
        .map(|v| {
            if dirichlet.contains(&v) {
                return Complex64::ZERO;
            }
            let mut acc = Complex64::ZERO;
            for &d in gr.darts_at(v) {
                let head = gr.dart(d).head;
                if dirichlet.contains(&head) {
                    continue;
                }
                acc += g.dart_weight(d) * Complex64::from_polar(1.0, g.dart_alpha(d)) * f[head];
            }
            f[v] - acc / g.wdeg(v)
        })
        .collect()
}

fn weighted_norm(g: &MagneticGraph, f: &[Complex64]) -> f64 {
    (0..g.order())
        .map(|v| g.wdeg(v) * f[v].norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Weighted inner product `⟨u, v⟩ = Σ deg^w(ṽ) conj(u(ṽ)) v(ṽ)`.
pub fn weighted_inner_product(g: &MagneticGraph, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    (0..g.order()).map(|w| g.wdeg(w) * u[w].conj() * v[w]).sum()
}

fn check_input_eigenpair(
    g: &MagneticGraph,
    dirichlet: &BTreeSet<VertexId>,
    eigenvalue: f64,
    f: &[Complex64],
) -> Result<(), FactoryError> {
    let lf = apply_dirichlet_laplacian(g, dirichlet, f);
    let norm = weighted_norm(g, f);
    let res: Vec<Complex64> = lf.iter().zip(f).map(|(a, b)| a - eigenvalue * b).collect();
    let r = weighted_norm(g, &res) / norm.max(1e-300);
    if r > 1e-10 {
        return Err(FactoryError::InputResidualTooLarge(r));
    }
    Ok(())
}

fn finish_lift(
    union: &FrameUnion,
    eigenvalue: f64,
    mut values: Vec<Complex64>,
) -> Result<LiftedVector, FactoryError> {
    let g = union.graph();
    let norm = weighted_norm(g, &values);
    for z in &mut values {
        *z /= norm;
    }
    let lv = apply_dirichlet_laplacian(g, &BTreeSet::new(), &values);
    let res: Vec<Complex64> = lv
        .iter()
        .zip(&values)
        .map(|(a, b)| a - eigenvalue * b)
        .collect();
    let residual = weighted_norm(g, &res);
    if residual > 1e-8 {
        return Err(FactoryError::ResidualTooLarge(residual));
    }
    Ok(LiftedVector {
        values,
        eigenvalue,
        residual,
    })
}

/// Copies a block eigenfunction onto every copy in the union (same value on
/// all branches of all members).
pub fn lift_symmetric(
    union: &FrameUnion,
    eigenvalue: f64,
    f: &[Complex64],
) -> Result<LiftedVector, FactoryError> {
    let spec = union.spec();
    check_input_eigenpair(spec.block(), &BTreeSet::new(), eigenvalue, f)?;
    let mut values = vec![Complex64::ZERO; union.order()];
    for (i, &a) in union.partition().parts().iter().enumerate() {
        for j in 0..a {
            for v in 0..spec.block().order() {
                values[union.vertex_of(i, j, v)] = f[v];
            }
        }
    }
    finish_lift(union, eigenvalue, values)
}

/// Member coefficients for the k-th V1-lift: constant on the first k
/// members, balanced on member k so that `Σ a_i c_i = 0`, zero afterwards.
/// These s-1 contrast vectors are mutually orthogonal and orthogonal to the
/// constant vector under the a_i-weighted inner product, which is exactly
/// what the eigen-equation at the glued V1 vertices requires. For partitions
/// with equal parts they span the same space as the non-trivial s-th roots
/// of unity.
fn member_contrast(parts: &[usize], k: usize) -> Vec<f64> {
    let mut c = vec![0.0; parts.len()];
    let head: usize = parts[..k].iter().sum();
    for ci in c.iter_mut().take(k) {
        *ci = 1.0;
    }
    c[k] = -(head as f64) / parts[k] as f64;
    c
}

/// Lifts an eigenfunction of the block with V1 Dirichlet onto the union,
/// scaling member `i` by a contrast coefficient `c_i` (constant within each
/// member). The s-1 contrasts are indexed 1..s-1.
pub fn lift_v1_contrast(
    union: &FrameUnion,
    eigenvalue: f64,
    f: &[Complex64],
    contrast_index: usize,
) -> Result<LiftedVector, FactoryError> {
    let spec = union.spec();
    let s = union.partition().len();
    if contrast_index == 0 || contrast_index >= s {
        return Err(FactoryError::BadRootIndex {
            max: s,
            got: contrast_index,
        });
    }
    check_input_eigenpair(spec.block(), spec.v1(), eigenvalue, f)?;
    let contrast = member_contrast(union.partition().parts(), contrast_index);
    let mut values = vec![Complex64::ZERO; union.order()];
    for (i, &a) in union.partition().parts().iter().enumerate() {
        let phase = contrast[i];
        for j in 0..a {
            for v in 0..spec.block().order() {
                if !spec.v1().contains(&v) {
                    values[union.vertex_of(i, j, v)] = phase * f[v];
                }
            }
        }
    }
    finish_lift(union, eigenvalue, values)
}

/// Scales branch `j` of member `i` by `η^j`, η a non-trivial a_i-th root of
/// unity, applied to an eigenfunction of the block with V0 Dirichlet;
/// vanishes on all other members and on every V0-derived vertex.
pub fn lift_v0_root_of_unity(
    union: &FrameUnion,
    member_index: usize,
    eigenvalue: f64,
    f: &[Complex64],
    eta_index: usize,
) -> Result<LiftedVector, FactoryError> {
    let spec = union.spec();
    let parts = union.partition().parts();
    if member_index >= parts.len() {
        return Err(FactoryError::BadMemberIndex {
            got: member_index,
            len: parts.len(),
        });
    }
    let a = parts[member_index];
    if eta_index == 0 || eta_index >= a {
        return Err(FactoryError::BadRootIndex {
            max: a,
            got: eta_index,
        });
    }
    check_input_eigenpair(spec.block(), spec.v0(), eigenvalue, f)?;
    let eta = Complex64::from_polar(1.0, std::f64::consts::TAU * eta_index as f64 / a as f64);
    let mut values = vec![Complex64::ZERO; union.order()];
    for j in 0..a {
        let phase = eta.powu(j as u32);
        for v in 0..spec.block().order() {
            if !spec.v0().contains(&v) {
                values[union.vertex_of(member_index, j, v)] = phase * f[v];
            }
        }
    }
    finish_lift(union, eigenvalue, values)
}

/// Eigenpairs of the block with `set` Dirichlet, as function values on all
/// block vertices (zero on `set`).
fn dirichlet_eigenfunctions(
    block: &MagneticGraph,
    set: &BTreeSet<VertexId>,
) -> Result<Vec<(f64, Vec<Complex64>)>, FactoryError> {
    if set.len() == block.order() {
        return Ok(Vec::new());
    }
    let bg: BoundaryMarkedGraph = if set.is_empty() {
        block.unmarked()
    } else {
        block.virtualise(set)?
    };
    let h = laplacian_matrix(&bg)?;
    let pairs = hermitian_eigenpairs(&h)?;
    let free = bg.free_vertices();
    let deg = block.weighted_degrees();
    Ok(pairs
        .into_iter()
        .map(|(lambda, x)| {
            // matrix coefficients -> function values: f(v) = x_v / sqrt(deg v)
            let mut f = vec![Complex64::ZERO; block.order()];
            for (i, &v) in free.iter().enumerate() {
                f[v] = x[i] / deg[v].sqrt();
            }
            (lambda, f)
        })
        .collect())
}

/// The complete lift family of a contracted frame union: |G| symmetric lifts,
/// (s-1)(|G|-|V1|) ε-lifts and Σ(a_i-1)(|G|-|V0|) η-lifts — as many as the
/// union has vertices.
pub fn lift_family(union: &FrameUnion) -> Result<Vec<LiftedVector>, FactoryError> {
    assert!(
        union.glued,
        "lift family applies to contracted frame unions"
    );
    let spec = union.spec();
    let s = union.partition().len();
    let mut out = Vec::with_capacity(union.order());
    for (lambda, f) in dirichlet_eigenfunctions(spec.block(), &BTreeSet::new())? {
        out.push(lift_symmetric(union, lambda, &f)?);
    }
    if s > 1 {
        for (lambda, f) in dirichlet_eigenfunctions(spec.block(), spec.v1())? {
            for contrast_index in 1..s {
                out.push(lift_v1_contrast(union, lambda, &f, contrast_index)?);
            }
        }
    }
    let v0_pairs = dirichlet_eigenfunctions(spec.block(), spec.v0())?;
    for (i, &a) in union.partition().parts().iter().enumerate() {
        for (lambda, f) in &v0_pairs {
            for eta_index in 1..a {
                out.push(lift_v0_root_of_unity(union, i, *lambda, f, eta_index)?);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// building block catalog

/// Parameters accepted by catalog blocks.
#[derive(Debug, Clone, Default)]
pub struct BlockParams {
    /// magnetic potential parameters, in radians
    pub thetas: Vec<f64>,
    /// number of star leaves for the "star" block
    pub m: Option<usize>,
}

/// A catalog entry descriptor.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// number of magnetic potential parameters the block accepts
    pub theta_params: usize,
    pub takes_m: bool,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let fixed = |name, description| CatalogEntry {
        name,
        description,
        theta_params: 0,
        takes_m: false,
    };
    vec![
        CatalogEntry {
            name: "motivating",
            description: "3 vertices, double edge carrying theta plus a pendant path; V0 the two outer vertices, V1 the double-edge end",
            theta_params: 1,
            takes_m: false,
        },
        CatalogEntry {
            name: "star",
            description: "star K_{m,1}; V0 all m leaves, V1 one leaf",
            theta_params: 0,
            takes_m: true,
        },
        CatalogEntry {
            name: "kite",
            description: "K4 with a pendant vertex; V0 = {pendant, apex}, V1 = {pendant}; three potential parameters on the co-tree edges (2,3),(2,4),(3,4)",
            theta_params: 3,
            takes_m: false,
        },
        CatalogEntry {
            name: "diamond-loop",
            description: "path of 3 vertices with a loop carrying theta at the middle; V0 the two ends, V1 one end",
            theta_params: 1,
            takes_m: false,
        },
        fixed("2.1", "single edge; V0 both ends, V1 one end"),
        fixed("3.1", "path of 3; V0 both pendant ends, V1 one end"),
        fixed("3.2", "path of 3; V0 = {end, centre}, V1 = {end}"),
        fixed("3.2p", "path of 3; V0 = {end, centre}, V1 = {centre}"),
        fixed("3.3", "path of 3; V0 all vertices, V1 one end"),
        fixed("3.3p", "path of 3; V0 all vertices, V1 = {end, centre}"),
        fixed("3.4", "path of 3; V0 all vertices, V1 = {centre}"),
        fixed("3.4p", "path of 3; V0 all vertices, V1 both ends"),
        fixed("3.5", "triangle; V0 two vertices, V1 one of them"),
        fixed("3.6", "triangle; V0 all vertices, V1 one"),
        fixed("3.6p", "triangle; V0 all vertices, V1 two"),
        fixed("4.1", "path of 4; V0 both ends, V1 one end"),
        fixed("4.2", "path of 4; V0 = {end, third vertex}, V1 = {end}"),
        fixed("4.2p", "path of 4; V0 = {end, third vertex}, V1 = {third vertex}"),
        fixed("4.3", "star K_{3,1}; V0 two leaves, V1 one of them"),
        fixed("4.4", "star K_{3,1}; V0 all three leaves, V1 one leaf"),
        fixed("4.4p", "star K_{3,1}; V0 all three leaves, V1 two leaves"),
        fixed("4.5", "triangle with a pendant; V0 = {pendant, far triangle vertex}, V1 = {pendant}"),
        fixed("4.5p", "triangle with a pendant; V0 = {pendant, far triangle vertex}, V1 = {far vertex}"),
        fixed("4.6", "4-cycle; V0 two opposite vertices, V1 one of them"),
        fixed("4.7", "4-cycle with a diagonal; V0 the two degree-2 vertices, V1 one of them"),
    ]
}

fn simple_spec(
    n: usize,
    pairs: &[(usize, usize)],
    v0: &[usize],
    v1: &[usize],
) -> Result<FrameSpec, FactoryError> {
    let edges: Vec<_> = pairs.iter().map(|&(t, h)| (t, h, 1.0, 0.0)).collect();
    FrameSpec::new(
        build_graph(n, &edges)?,
        v0.iter().copied().collect(),
        v1.iter().copied().collect(),
    )
}

/// Instantiates a named building block with its V0 and V1 as drawn in the
/// example catalog. Primed labels accept an ASCII "p" suffix ("3.2p") or a
/// trailing apostrophe ("3.2'").
pub fn building_block_catalog(name: &str, params: &BlockParams) -> Result<FrameSpec, FactoryError> {
    let canonical = name.trim().replace('\'', "p");
    let want_thetas = |expected: usize| -> Result<Vec<f64>, FactoryError> {
        if params.thetas.is_empty() {
            Ok(vec![0.0; expected])
        } else if params.thetas.len() == expected {
            Ok(params.thetas.clone())
        } else {
            Err(FactoryError::WrongParameterCount {
                name: canonical.clone(),
                expected,
                got: params.thetas.len(),
            })
        }
    };
    if !["motivating", "kite", "diamond-loop"].contains(&canonical.as_str())
        && !params.thetas.is_empty()
    {
        return Err(FactoryError::WrongParameterCount {
            name: canonical.clone(),
            expected: 0,
            got: params.thetas.len(),
        });
    }

    const P3: &[(usize, usize)] = &[(0, 1), (1, 2)];
    const TRIANGLE: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2)];
    const P4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3)];
    const STAR3: &[(usize, usize)] = &[(0, 3), (1, 3), (2, 3)];
    const PAW: &[(usize, usize)] = &[(0, 1), (1, 2), (1, 3), (2, 3)];
    const C4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3)];
    const DIAMOND: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)];

    match canonical.as_str() {
        "motivating" => {
            let th = want_thetas(1)?;
            let block = build_graph(3, &[(0, 1, 1.0, th[0]), (0, 1, 1.0, 0.0), (1, 2, 1.0, 0.0)])?;
            FrameSpec::new(block, BTreeSet::from([0, 2]), BTreeSet::from([0]))
        }
        "star" => {
            let m = params.m.unwrap_or(3);
            if m < 2 {
                return Err(FactoryError::StarTooSmall);
            }
            let edges: Vec<_> = (0..m).map(|i| (i, m, 1.0, 0.0)).collect();
            let block = build_graph(m + 1, &edges)?;
            FrameSpec::new(block, (0..m).collect(), BTreeSet::from([0]))
        }
        "kite" => {
            let th = want_thetas(3)?;
            let block = build_graph(
                5,
                &[
                    (0, 1, 1.0, 0.0),
                    (1, 2, 1.0, 0.0),
                    (1, 3, 1.0, 0.0),
                    (1, 4, 1.0, 0.0),
                    (2, 3, 1.0, th[0]),
                    (2, 4, 1.0, th[1]),
                    (3, 4, 1.0, th[2]),
                ],
            )?;
            FrameSpec::new(block, BTreeSet::from([0, 4]), BTreeSet::from([0]))
        }
        "diamond-loop" => {
            let th = want_thetas(1)?;
            let block = build_graph(3, &[(0, 1, 1.0, 0.0), (1, 2, 1.0, 0.0), (1, 1, 1.0, th[0])])?;
            FrameSpec::new(block, BTreeSet::from([0, 2]), BTreeSet::from([0]))
        }
        "2.1" => simple_spec(2, &[(0, 1)], &[0, 1], &[0]),
        "3.1" => simple_spec(3, P3, &[0, 2], &[0]),
        "3.2" => simple_spec(3, P3, &[0, 1], &[0]),
        "3.2p" => simple_spec(3, P3, &[0, 1], &[1]),
        "3.3" => simple_spec(3, P3, &[0, 1, 2], &[0]),
        "3.3p" => simple_spec(3, P3, &[0, 1, 2], &[0, 1]),
        "3.4" => simple_spec(3, P3, &[0, 1, 2], &[1]),
        "3.4p" => simple_spec(3, P3, &[0, 1, 2], &[0, 2]),
        "3.5" => simple_spec(3, TRIANGLE, &[0, 1], &[0]),
        "3.6" => simple_spec(3, TRIANGLE, &[0, 1, 2], &[0]),
        "3.6p" => simple_spec(3, TRIANGLE, &[0, 1, 2], &[0, 1]),
        "4.1" => simple_spec(4, P4, &[0, 3], &[0]),
        "4.2" => simple_spec(4, P4, &[0, 2], &[0]),
        "4.2p" => simple_spec(4, P4, &[0, 2], &[2]),
        "4.3" => simple_spec(4, STAR3, &[0, 1], &[0]),
        "4.4" => simple_spec(4, STAR3, &[0, 1, 2], &[0]),
        "4.4p" => simple_spec(4, STAR3, &[0, 1, 2], &[0, 1]),
        "4.5" => simple_spec(4, PAW, &[0, 3], &[0]),
        "4.5p" => simple_spec(4, PAW, &[0, 3], &[3]),
        "4.6" => simple_spec(4, C4, &[0, 2], &[0]),
        "4.7" => simple_spec(4, DIAMOND, &[0, 2], &[0]),
        other => Err(FactoryError::UnknownBlock(other.to_string())),
    }
}
