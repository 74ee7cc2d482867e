//! Certification layer: isospectrality and isolaplacian checks, the
//! degree-multiset non-isomorphism certificate, the equilateral metric-graph
//! predicate, and whole-family reports.

use serde::Serialize;
use thiserror::Error;

use crate::factory::{
    contracted_frame_union, enumerate_partitions, theoretical_union_spectrum, FactoryError,
    FrameSpec, Partition, TrivialMode,
};
use crate::graph::{BoundaryMarkedGraph, IntegerMultiset, MagneticGraph};
use crate::spectra::{laplacian_matrix, spectrum, RealMultiset, SpectraError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("graphs have different vertex counts ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
    #[error("metric predicate requires standard weights (w ≡ 1)")]
    NonStandardWeights,
    #[error("metric predicate requires zero magnetic potential")]
    NonzeroPotential,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Factory(#[from] FactoryError),
}

/// Result of an isospectrality check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IsospectralCheck {
    pub isospectral: bool,
    /// max pairwise sorted difference; ∞ when the orders differ
    pub deviation: f64,
}

/// Compares the spectra of two boundary-marked graphs as multisets.
pub fn check_isospectral(
    g1: &BoundaryMarkedGraph,
    g2: &BoundaryMarkedGraph,
    tol: f64,
) -> Result<IsospectralCheck, VerifyError> {
    let s1 = spectrum(g1)?;
    let s2 = spectrum(g2)?;
    let cmp = s1.compare(&s2, tol);
    Ok(IsospectralCheck {
        isospectral: cmp.equal,
        deviation: cmp.deviation,
    })
}

/// True iff the two graphs have the same matrix representation of their
/// Laplacians (entrywise within 1e-14). Requires equal vertex counts.
pub fn check_isolaplacian(g1: &MagneticGraph, g2: &MagneticGraph) -> Result<bool, VerifyError> {
    if g1.order() != g2.order() {
        return Err(VerifyError::VertexCountMismatch(g1.order(), g2.order()));
    }
    let a = laplacian_matrix(&g1.unmarked())?;
    let b = laplacian_matrix(&g2.unmarked())?;
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if (a.get(i, j) - b.get(i, j)).norm() > 1e-14 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Degree-multiset certificate: `true` certifies the graphs are NOT
/// isomorphic; `false` is inconclusive (not a claim of isomorphism).
pub fn check_degree_distinct(
    g1: &crate::graph::MultiDiGraph,
    g2: &crate::graph::MultiDiGraph,
) -> bool {
    g1.degree_multiset() != g2.degree_multiset()
}

/// Equilateral metric-graph predicate: for standard weights and zero
/// potential, the metric Kirchhoff Laplacians are isospectral iff the
/// discrete graphs are isospectral AND have the same number of edges.
pub fn metric_isospectral_predicate(
    g1: &MagneticGraph,
    g2: &MagneticGraph,
    tol: f64,
) -> Result<bool, VerifyError> {
    for g in [g1, g2] {
        if !g.has_standard_weights() {
            return Err(VerifyError::NonStandardWeights);
        }
        if !g.has_zero_potential() {
            return Err(VerifyError::NonzeroPotential);
        }
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    Ok(check_isospectral(&g1.unmarked(), &g2.unmarked(), tol)?.isospectral)
}

/// Per-partition data in a family report.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    pub partition: Partition,
    pub order: usize,
    pub edge_count: usize,
    pub degree_multiset: IntegerMultiset,
    pub spectrum: Vec<(f64, usize)>,
    pub theoretical_spectrum: Vec<(f64, usize)>,
    /// max |numerical - theoretical| over sorted eigenvalues
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// all pairs isospectral, all degree multisets distinct, theory matched
    Certified,
    /// fewer than two partitions exist for (r, s)
    NoMateAvailable,
    NotCertified,
}

/// Report on the whole family of contracted frame unions for the
/// s-partitions of r.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub r: usize,
    pub s: usize,
    pub tol: f64,
    pub block_order: usize,
    pub v0: Vec<usize>,
    pub v1: Vec<usize>,
    pub trivial_mode: Option<TrivialMode>,
    pub members: Vec<FamilyMember>,
    /// flat upper-triangle flags, pair (i, j) with i < j
    pub pairwise_isospectral: Vec<bool>,
    pub pairwise_degree_distinct: Vec<bool>,
    pub max_deviation: f64,
    pub verdict: Verdict,
}

pub const REPORT_TOL: f64 = 1e-8;

/// Builds every s-partition family member, compares numerical spectra with
/// the closed-form prediction, and cross-checks all pairs.
pub fn family_report(
    spec: &FrameSpec,
    r: usize,
    s: usize,
    tol: f64,
) -> Result<FamilyReport, VerifyError> {
    let partitions = enumerate_partitions(r, s)?;
    let mut members = Vec::with_capacity(partitions.len());
    let mut spectra = Vec::with_capacity(partitions.len());
    let mut max_deviation: f64 = 0.0;
    for partition in &partitions {
        let union = contracted_frame_union(spec, partition);
        let numeric = spectrum(&union.graph().unmarked())?;
        let theory = theoretical_union_spectrum(spec, partition)?;
        let cmp = numeric.compare(&theory, tol);
        max_deviation = max_deviation.max(cmp.deviation);
        members.push(FamilyMember {
            partition: partition.clone(),
            order: union.order(),
            edge_count: union.graph().edge_count(),
            degree_multiset: union.graph().graph().degree_multiset(),
            spectrum: numeric.clusters(),
            theoretical_spectrum: theory.clusters(),
            deviation: cmp.deviation,
        });
        spectra.push(numeric);
    }
    let mut pairwise_isospectral = Vec::new();
    let mut pairwise_degree_distinct = Vec::new();
    let mut all_iso = true;
    let mut all_distinct = true;
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let iso = spectra[i].compare(&spectra[j], tol).equal;
            let distinct = members[i].degree_multiset != members[j].degree_multiset;
            all_iso &= iso;
            all_distinct &= distinct;
            pairwise_isospectral.push(iso);
            pairwise_degree_distinct.push(distinct);
        }
    }
    let verdict = if members.len() < 2 {
        Verdict::NoMateAvailable
    } else if all_iso && all_distinct && max_deviation <= tol {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    };
    Ok(FamilyReport {
        r,
        s,
        tol,
        block_order: spec.block().order(),
        v0: spec.v0().iter().copied().collect(),
        v1: spec.v1().iter().copied().collect(),
        trivial_mode: spec.trivial_mode(),
        members,
        pairwise_isospectral,
        pairwise_degree_distinct,
        max_deviation,
        verdict,
    })
}

impl FamilyReport {
    /// Human-readable table, one line per partition plus a verdict line.
    pub fn to_table(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "family r={} s={} tol={:.1e}  block |V|={} V0={:?} V1={:?}",
            self.r, self.s, self.tol, self.block_order, self.v0, self.v1
        );
        if let Some(mode) = &self.trivial_mode {
            let _ = writeln!(out, "warning: trivial mode {mode:?}");
        }
        for m in &self.members {
            let spec_str: Vec<String> = m
                .spectrum
                .iter()
                .map(|(v, k)| {
                    if *k == 1 {
                        format!("{v:.6}")
                    } else {
                        format!("{v:.6}^({k})")
                    }
                })
                .collect();
            let _ = writeln!(
                out,
                "  A={:<12} |V|={:<3} |E|={:<3} deg={} dev={:.2e}\n    spec {{{}}}",
                m.partition.to_string(),
                m.order,
                m.edge_count,
                m.degree_multiset,
                m.deviation,
                spec_str.join(", ")
            );
        }
        let _ = writeln!(
            out,
            "verdict: {:?} (max deviation {:.2e})",
            self.verdict, self.max_deviation
        );
        out
    }
}

/// Sanity part of the disjoint-union route, used by tests:
/// `spec(F_A) = spec(G)^(s) ⊎ spec(G⁺_{V0})^(r-s)`.
pub fn disjoint_union_spectrum_matches(
    spec: &FrameSpec,
    partition: &Partition,
    tol: f64,
) -> Result<bool, VerifyError> {
    let fa = crate::factory::disjoint_frame_union(spec, partition);
    let lhs = spectrum(&fa.graph().unmarked())?;
    let g_spec = spectrum(&spec.block().unmarked())?;
    let dir = if spec.v0().len() == spec.block().order() {
        RealMultiset::empty()
    } else {
        spectrum(
            &spec
                .block()
                .virtualise(spec.v0())
                .map_err(FactoryError::from)?,
        )?
    };
    let rhs = g_spec
        .power(partition.len())
        .union(&dir.power(partition.total() - partition.len()));
    Ok(lhs.compare(&rhs, tol).equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{building_block_catalog, BlockParams};
    use crate::graph::build_graph;

    fn motivating_spec(theta: f64) -> FrameSpec {
        building_block_catalog(
            "motivating",
            &BlockParams {
                thetas: vec![theta],
                m: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn graph_isospectral_to_itself() {
        let g = motivating_spec(0.8).block().clone();
        let c = check_isospectral(&g.unmarked(), &g.unmarked(), 1e-12).unwrap();
        assert!(c.isospectral);
        assert_eq!(c.deviation, 0.0);
    }

    #[test]
    fn size_mismatch_is_not_isospectral() {
        let spec = motivating_spec(0.0);
        let f2 = crate::factory::frame_member(&spec, 2).unwrap();
        let c = check_isospectral(&spec.block().unmarked(), &f2.graph().unmarked(), 1e-9).unwrap();
        assert!(!c.isospectral);
        assert_eq!(c.deviation, f64::INFINITY);
    }

    #[test]
    fn motivating_pair_isospectral() {
        let spec = motivating_spec(0.0);
        let a = contracted_frame_union(&spec, &Partition::new(vec![3, 1]).unwrap());
        let b = contracted_frame_union(&spec, &Partition::new(vec![2, 2]).unwrap());
        let c = check_isospectral(&a.graph().unmarked(), &b.graph().unmarked(), 1e-9).unwrap();
        assert!(c.isospectral);
        assert!(check_degree_distinct(a.graph().graph(), b.graph().graph()));
    }

    #[test]
    fn isolaplacian_simplify() {
        let g = build_graph(3, &[(0, 1, 1.0, 0.0), (0, 1, 1.0, 0.0), (1, 2, 1.0, 0.0)]).unwrap();
        let s = g.simplify_to_weighted().unwrap();
        assert!(check_isolaplacian(&g, &s).unwrap());
    }

    #[test]
    fn isolaplacian_r_fold_copy() {
        let g = build_graph(3, &[(0, 1, 1.0, 0.0), (1, 2, 1.0, 0.0)]).unwrap();
        let mut tripled = Vec::new();
        for e in g.edges() {
            for _ in 0..3 {
                tripled.push((e.tail, e.head, e.weight, e.alpha));
            }
        }
        let g3 = build_graph(3, &tripled).unwrap();
        assert!(check_isolaplacian(&g, &g3).unwrap());
    }

    #[test]
    fn isolaplacian_weight_scaling_cancels() {
        let g1 = build_graph(2, &[(0, 1, 1.0, 0.0)]).unwrap();
        let g2 = build_graph(2, &[(0, 1, 2.0, 0.0)]).unwrap();
        assert!(check_isolaplacian(&g1, &g2).unwrap());
    }

    #[test]
    fn isolaplacian_vertex_count_mismatch() {
        let g1 = build_graph(2, &[(0, 1, 1.0, 0.0)]).unwrap();
        let g2 = build_graph(3, &[(0, 1, 1.0, 0.0), (1, 2, 1.0, 0.0)]).unwrap();
        assert!(matches!(
            check_isolaplacian(&g1, &g2),
            Err(VerifyError::VertexCountMismatch(2, 3))
        ));
    }

    #[test]
    fn degree_certificate_inconclusive_on_self() {
        let g = motivating_spec(0.0).block().clone();
        assert!(!check_degree_distinct(g.graph(), g.graph()));
    }

    #[test]
    fn metric_predicate_on_path() {
        let p2 = build_graph(2, &[(0, 1, 1.0, 0.0)]).unwrap();
        assert!(metric_isospectral_predicate(&p2, &p2, 1e-9).unwrap());
    }

    #[test]
    fn metric_predicate_rejects_weights_and_potential() {
        let w = build_graph(2, &[(0, 1, 2.0, 0.0)]).unwrap();
        let p = build_graph(2, &[(0, 1, 1.0, 1.0)]).unwrap();
        let ok = build_graph(2, &[(0, 1, 1.0, 0.0)]).unwrap();
        assert!(matches!(
            metric_isospectral_predicate(&w, &ok, 1e-9),
            Err(VerifyError::NonStandardWeights)
        ));
        assert!(matches!(
            metric_isospectral_predicate(&p, &ok, 1e-9),
            Err(VerifyError::NonzeroPotential)
        ));
    }

    #[test]
    fn metric_predicate_needs_equal_edge_counts() {
        // isospectral would not even be checked: different edge counts fail
        let p2 = build_graph(2, &[(0, 1, 1.0, 0.0)]).unwrap();
        let p2_doubled = build_graph(2, &[(0, 1, 1.0, 0.0), (0, 1, 1.0, 0.0)]).unwrap();
        assert!(!metric_isospectral_predicate(&p2, &p2_doubled, 1e-9).unwrap());
    }

    #[test]
    fn family_motivating_4_2_certified() {
        let report = family_report(&motivating_spec(0.0), 4, 2, REPORT_TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
        assert_eq!(report.members.len(), 2);
        assert!(report.max_deviation <= 1e-9);
    }

    #[test]
    fn family_kite_4_2_certified() {
        let spec = building_block_catalog("kite", &BlockParams::default()).unwrap();
        let report = family_report(&spec, 4, 2, REPORT_TOL).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
    }

    #[test]
    fn family_no_mate_for_r3_s2() {
        let report = family_report(&motivating_spec(0.0), 3, 2, REPORT_TOL).unwrap();
        assert_eq!(report.verdict, Verdict::NoMateAvailable);
        assert_eq!(report.members.len(), 1);
    }

    #[test]
    fn disjoint_union_route() {
        let spec = motivating_spec(1.7);
        let p = Partition::new(vec![3, 1]).unwrap();
        assert!(disjoint_union_spectrum_matches(&spec, &p, 1e-8).unwrap());
    }

    #[test]
    fn degree_distinct_implies_not_isolaplacian() {
        let spec = motivating_spec(0.0);
        let a = contracted_frame_union(&spec, &Partition::new(vec![3, 1]).unwrap());
        let b = contracted_frame_union(&spec, &Partition::new(vec![2, 2]).unwrap());
        assert!(check_degree_distinct(a.graph().graph(), b.graph().graph()));
        assert!(!check_isolaplacian(a.graph(), b.graph()).unwrap());
    }
}
