//! Normalised magnetic (Dirichlet) Laplacians as Hermitian matrices, their
//! eigenvalue multisets, the multiset algebra used by the spectral formulas,
//! and gauge transformations of the magnetic potential.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{angle_is_zero, normalize_angle, BoundaryMarkedGraph, MagneticGraph};

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("no free vertex remains, the matrix is empty")]
    EmptyMatrix,
    #[error("matrix is not Hermitian, max |A - A*| = {0:.3e}")]
    NonHermitianInput(f64),
    #[error("eigensolver did not converge")]
    NoConvergence,
}

/// Dense complex self-adjoint matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    /// Sets `A[i][j] = z` and `A[j][i] = conj(z)` so Hermiticity is exact.
    pub fn set_pair(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
        self.data[j * self.n + i] = z.conj();
    }

    pub fn add_pair(&mut self, i: usize, j: usize, z: Complex64) {
        if i == j {
            self.data[i * self.n + i] += Complex64::new(z.re, 0.0);
        } else {
            self.data[i * self.n + j] += z;
            self.data[j * self.n + i] += z.conj();
        }
    }

    /// Largest deviation from self-adjointness, `max |A[i][j] - conj(A[j][i])|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `A v` for a complex vector.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Tolerance-aware sorted multiset of reals; spectra and their ⊎ / ^(k) algebra.
#[derive(Debug, Clone, Serialize)]
pub struct RealMultiset {
    values: Vec<f64>,
    tol: f64,
}

pub const MULTISET_TOL: f64 = 1e-9;

/// Outcome of a multiset comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultisetComparison {
    pub equal: bool,
    /// Max pairwise sorted difference when the cardinalities match, ∞ otherwise.
    pub deviation: f64,
    /// Index of the first out-of-tolerance pair, if any.
    pub first_mismatch: Option<usize>,
}

impl RealMultiset {
    pub fn new(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(|a, b| a.total_cmp(b));
        Self { values, tol }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        Self::new(values, MULTISET_TOL)
    }

    pub fn empty() -> Self {
        Self::from_values(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Multiset sum `a ⊎ b`: merged ascending values.
    pub fn union(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        Self::new(values, self.tol)
    }

    /// The k-th multiple `a^(k)`: every multiplicity times `k`; `k = 0` is ∅.
    pub fn power(&self, k: usize) -> Self {
        let mut values = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            values.extend_from_slice(&self.values);
        }
        Self::new(values, self.tol)
    }

    /// Pairwise comparison of the sorted values at tolerance `tol`.
    pub fn compare(&self, other: &Self, tol: f64) -> MultisetComparison {
        if self.len() != other.len() {
            return MultisetComparison {
                equal: false,
                deviation: f64::INFINITY,
                first_mismatch: Some(self.len().min(other.len())),
            };
        }
        let mut deviation: f64 = 0.0;
        let mut first_mismatch = None;
        for (i, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let d = (a - b).abs();
            deviation = deviation.max(d);
            if d > tol && first_mismatch.is_none() {
                first_mismatch = Some(i);
            }
        }
        MultisetComparison {
            equal: first_mismatch.is_none(),
            deviation,
            first_mismatch,
        }
    }

    pub fn equal(&self, other: &Self, tol: f64) -> bool {
        self.compare(other, tol).equal
    }

    /// Clusters of values closer than `tol` to the cluster representative
    /// (its first element), as `(representative, multiplicity)`.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((rep, m)) if (v - *rep).abs() <= self.tol => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

fn full_laplacian(g: &MagneticGraph) -> HermitianMatrix {
    let deg = g.weighted_degrees();
    let mut a = HermitianMatrix::zeros(g.order());
    for i in 0..g.order() {
        a.set_pair(i, i, Complex64::new(1.0, 0.0));
    }
    for e in g.edges() {
        if e.is_loop() {
            // both darts contribute: -w(e^{iα} + e^{-iα})/deg = -2w cos α / deg
            let z = Complex64::new(-2.0 * e.weight * e.alpha.cos() / deg[e.tail], 0.0);
            a.add_pair(e.tail, e.tail, z);
        } else {
            let scale = -e.weight / (deg[e.tail] * deg[e.head]).sqrt();
            let z = Complex64::from_polar(1.0, e.alpha) * scale;
            a.add_pair(e.tail, e.head, z);
        }
    }
    a
}

/// Assembles the normalised magnetic Laplacian of a boundary-marked graph:
/// the full matrix of the base graph sliced to the principal submatrix on
/// the free vertices, indexed ascending. The weighted degrees in the
/// denominators are always those of the unvirtualised graph.
pub fn laplacian_matrix(bg: &BoundaryMarkedGraph) -> Result<HermitianMatrix, SpectraError> {
    let free = bg.free_vertices();
    if free.is_empty() {
        return Err(SpectraError::EmptyMatrix);
    }
    let full = full_laplacian(bg.base());
    if free.len() == bg.base().order() {
        return Ok(full);
    }
    let mut a = HermitianMatrix::zeros(free.len());
    for (i, &v) in free.iter().enumerate() {
        for (j, &w) in free.iter().enumerate() {
            if j >= i {
                a.set_pair(i, j, full.get(v, w));
            }
        }
    }
    Ok(a)
}

/// All eigenvalues of a Hermitian matrix, ascending with multiplicity.
///
/// The complex problem is reduced to a real symmetric one of doubled
/// dimension `[[X, -Y], [Y, X]]` and solved with cyclic Jacobi rotations;
/// eigenvalues come out in pairs and are deduplicated by adjacent pairing.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<RealMultiset, SpectraError> {
    let solved = solve_embedded(h)?;
    Ok(RealMultiset::from_values(solved.eigenvalues))
}

/// Eigenvalues with a complex orthonormal eigenvector each, ascending.
pub fn hermitian_eigenpairs(
    h: &HermitianMatrix,
) -> Result<Vec<(f64, Vec<Complex64>)>, SpectraError> {
    let n = h.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let solved = solve_embedded(h)?;
    // Each eigenvalue of H appears twice in the embedding; the two real
    // eigenvectors (u; v) map to z = u + iv and (up to phase) iz. Walking the
    // sorted list and Gram-Schmidting against accepted vectors of nearby
    // eigenvalue keeps exactly one complex vector per pair.
    let mut accepted: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(n);
    for (idx, &lambda) in solved.all_eigenvalues.iter().enumerate() {
        if accepted.len() == n {
            break;
        }
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(solved.vector(idx)[k], solved.vector(idx)[n + k]))
            .collect();
        for (mu, w) in accepted.iter().rev() {
            if (lambda - mu).abs() > 1e-8 {
                break;
            }
            let dot: Complex64 = w.iter().zip(&z).map(|(a, b)| a.conj() * b).sum();
            for (zk, wk) in z.iter_mut().zip(w) {
                *zk -= dot * wk;
            }
        }
        let norm: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            for c in &mut z {
                *c /= norm;
            }
            accepted.push((lambda, z));
        }
    }
    if accepted.len() != n {
        return Err(SpectraError::NoConvergence);
    }
    Ok(accepted)
}

/// Full spectrum of the normalised magnetic (Dirichlet) Laplacian.
pub fn spectrum(bg: &BoundaryMarkedGraph) -> Result<RealMultiset, SpectraError> {
    hermitian_eigenvalues(&laplacian_matrix(bg)?)
}

/// Multiset sum of spectra.
pub fn multiset_union(a: &RealMultiset, b: &RealMultiset) -> RealMultiset {
    a.union(b)
}

/// k-th multiple of a spectrum.
pub fn multiset_power(a: &RealMultiset, k: usize) -> RealMultiset {
    a.power(k)
}

/// Multiset equality with a first-mismatch report.
pub fn multiset_equal(a: &RealMultiset, b: &RealMultiset, tol: f64) -> MultisetComparison {
    a.compare(b, tol)
}

/// Gauge transformation: `α'_e = α_e + ξ(head) - ξ(tail) (mod 2π)`.
/// Spectra are invariant under any gauge.
pub fn apply_gauge(g: &MagneticGraph, xi: &[f64]) -> MagneticGraph {
    assert_eq!(xi.len(), g.order(), "gauge must be defined on every vertex");
    let edges: Vec<_> = g
        .edges()
        .map(|e| {
            (
                e.tail,
                e.head,
                e.weight,
                normalize_angle(e.alpha + xi[e.head] - xi[e.tail]),
            )
        })
        .collect();
    crate::graph::build_graph(g.order(), &edges).expect("regauging preserves validity")
}

/// Witness that a potential is cohomologous to zero.
#[derive(Debug, Clone)]
pub struct CohomologyCheck {
    pub trivial: bool,
    /// Gauge ξ with `apply_gauge(g, ξ)` potential-free; present iff `trivial`.
    pub witness: Option<Vec<f64>>,
    /// Largest cycle flux distance from 0 mod 2π over the co-tree edges.
    pub max_flux: f64,
}

/// Checks whether the magnetic potential is cohomologous to zero by
/// integrating along a spanning forest and measuring the flux of every
/// fundamental cycle (per connected component). Flux tolerance 1e-9.
pub fn is_cohomologous_to_zero(g: &MagneticGraph) -> CohomologyCheck {
    let n = g.order();
    let gr = g.graph();
    let mut xi = vec![f64::NAN; n];
    let mut in_tree = vec![false; g.edge_count()];
    for root in 0..n {
        if !xi[root].is_nan() {
            continue;
        }
        xi[root] = 0.0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &d in gr.darts_at(v) {
                let u = gr.dart(d).head;
                if xi[u].is_nan() {
                    // choose ξ(head) so the regauged dart potential vanishes
                    xi[u] = normalize_angle(xi[v] - g.dart_alpha(d));
                    in_tree[d / 2] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut max_flux: f64 = 0.0;
    for (k, e) in g.edges().enumerate() {
        if in_tree[k] {
            continue;
        }
        let residue = normalize_angle(e.alpha + xi[e.head] - xi[e.tail]);
        max_flux = max_flux.max(residue.min(TAU - residue));
    }
    let trivial = max_flux <= 1e-9;
    CohomologyCheck {
        trivial,
        witness: trivial.then_some(xi),
        max_flux,
    }
}

/// True iff every edge potential lies in {0, π} mod 2π (a signature).
pub fn is_signed(g: &MagneticGraph) -> bool {
    g.edges()
        .all(|e| angle_is_zero(e.alpha) || angle_is_zero(e.alpha - std::f64::consts::PI))
}

// ---------------------------------------------------------------------------
// real symmetric Jacobi kernel on the doubled embedding

struct Solved {
    /// one eigenvalue per Hermitian eigenvalue (paired & averaged), ascending
    eigenvalues: Vec<f64>,
    /// all 2n embedded eigenvalues, ascending
    all_eigenvalues: Vec<f64>,
    vectors: Vec<f64>,
    dim: usize,
}

impl Solved {
    fn vector(&self, idx: usize) -> &[f64] {
        &self.vectors[idx * self.dim..(idx + 1) * self.dim]
    }
}

fn solve_embedded(h: &HermitianMatrix) -> Result<Solved, SpectraError> {
    let n = h.dim();
    let asym = h.asymmetry();
    if asym > 1e-12 {
        return Err(SpectraError::NonHermitianInput(asym));
    }
    if n == 0 {
        return Ok(Solved {
            eigenvalues: vec![],
            all_eigenvalues: vec![],
            vectors: vec![],
            dim: 0,
        });
    }
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            a[i * m + j] = z.re;
            a[(n + i) * m + (n + j)] = z.re;
            a[i * m + (n + j)] = -z.im;
            a[(n + i) * m + j] = z.im;
        }
    }
    let (mut vals, vecs) = jacobi_symmetric(&mut a, m).ok_or(SpectraError::NoConvergence)?;

    // residual guarantee: ‖Hz - λz‖ equals the embedded residual
    let norm_h = h.frobenius_norm();
    let bound = 1e-10 * (n as f64) * norm_h.max(1e-300);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let mut sorted_vecs = vec![0.0; m * m];
    for (rank, &idx) in order.iter().enumerate() {
        for k in 0..m {
            // jacobi returns eigenvectors as columns
            sorted_vecs[rank * m + k] = vecs[k * m + idx];
        }
    }
    vals.sort_by(f64::total_cmp);
    // recompute the embedding once for residuals (jacobi destroyed `a`)
    let mut emb = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h.get(i, j);
            emb[i * m + j] = z.re;
            emb[(n + i) * m + (n + j)] = z.re;
            emb[i * m + (n + j)] = -z.im;
            emb[(n + i) * m + j] = z.im;
        }
    }
    for (rank, &lambda) in vals.iter().enumerate() {
        let v = &sorted_vecs[rank * m..(rank + 1) * m];
        let mut res = 0.0;
        for i in 0..m {
            let mut acc = 0.0;
            for j in 0..m {
                acc += emb[i * m + j] * v[j];
            }
            res += (acc - lambda * v[i]) * (acc - lambda * v[i]);
        }
        if res.sqrt() > bound {
            return Err(SpectraError::NoConvergence);
        }
    }
    let eigenvalues = (0..n)
        .map(|k| 0.5 * (vals[2 * k] + vals[2 * k + 1]))
        .collect();
    Ok(Solved {
        eigenvalues,
        all_eigenvalues: vals,
        vectors: sorted_vecs,
        dim: m,
    })
}

/// Cyclic Jacobi for a dense symmetric matrix (row-major, destroyed).
/// Returns eigenvalues (unsorted) and eigenvectors as columns.
fn jacobi_symmetric(a: &mut [f64], n: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    const MAX_SWEEPS: usize = 100;
    let mut v = vec![0.0; n * n];
    for p in 0..n {
        v[p * n + p] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|p| a[p * n + p]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[p * n + q] * a[p * n + q];
                }
            }
            s.sqrt()
        };
        if off <= (n as f64) * 1e-15 * scale {
            return Some((d, v));
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if apq.abs() * 1e15 < h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let hh = t * apq;
                z[p] -= hh;
                z[q] += hh;
                d[p] -= hh;
                d[q] += hh;
                a[p * n + q] = 0.0;
                for j in 0..p {
                    let g = a[j * n + p];
                    let hgq = a[j * n + q];
                    a[j * n + p] = g - s * (hgq + g * tau);
                    a[j * n + q] = hgq + s * (g - hgq * tau);
                }
                for j in (p + 1)..q {
                    let g = a[p * n + j];
                    let hgq = a[j * n + q];
                    a[p * n + j] = g - s * (hgq + g * tau);
                    a[j * n + q] = hgq + s * (g - hgq * tau);
                }
                for j in (q + 1)..n {
                    let g = a[p * n + j];
                    let hgq = a[q * n + j];
                    a[p * n + j] = g - s * (hgq + g * tau);
                    a[q * n + j] = hgq + s * (g - hgq * tau);
                }
                for j in 0..n {
                    let g = v[j * n + p];
                    let hgq = v[j * n + q];
                    v[j * n + p] = g - s * (hgq + g * tau);
                    v[j * n + q] = hgq + s * (g - hgq * tau);
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            z[p] = 0.0;
            d[p] = b[p];
        }
    }
    None
}
