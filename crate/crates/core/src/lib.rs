//! Construction and verification of isospectral families of finite magnetic
//! graphs.
//!
//! Starting from a building block — a finite multigraph with positive edge
//! weights and a magnetic potential — the factory contracts `a` copies along
//! an identification set `V0` into frame members, then glues members chosen
//! by an s-partition of `r` at a distinguished set `V1 ⊆ V0`. All unions for
//! different s-partitions of the same `r` share the spectrum of the
//! normalised magnetic Laplacian
//!
//! `spec(G) ⊎ spec(G⁺_V0)^(r-s) ⊎ spec(G⁺_V1)^(s-1)`
//!
//! while their degree multisets differ, so they are pairwise non-isomorphic.
//! The crate computes spectra numerically (dense Hermitian eigensolver),
//! evaluates the closed forms independently, and certifies families by
//! comparing the two routes.
//!
//! ```
//! use isofactory::{factory, spectra, verify};
//! use isofactory::factory::{BlockParams, Partition};
//!
//! // a 4-cycle with a diagonal, V0 = the two degree-2 corners, V1 = one of them
//! let spec = factory::building_block_catalog("4.7", &BlockParams::default())?;
//!
//! // the two 2-partitions of 4 give isospectral, non-isomorphic graphs
//! let a = factory::contracted_frame_union(&spec, &Partition::new(vec![3, 1])?);
//! let b = factory::contracted_frame_union(&spec, &Partition::new(vec![2, 2])?);
//! let check = verify::check_isospectral(&a.graph().unmarked(), &b.graph().unmarked(), 1e-9)?;
//! assert!(check.isospectral);
//! assert!(verify::check_degree_distinct(a.graph().graph(), b.graph().graph()));
//!
//! // the numerical spectrum agrees with the closed-form prediction
//! let numeric = spectra::spectrum(&a.graph().unmarked())?;
//! let theory = factory::theoretical_union_spectrum(&spec, a.partition())?;
//! assert!(numeric.compare(&theory, 1e-9).equal);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod factory;
pub mod graph;
pub mod io;
pub mod spectra;
pub mod verify;

pub use factory::{
    building_block_catalog, catalog_entries, contracted_frame_union, disjoint_frame_union,
    enumerate_partitions, frame_member, lift_family, lift_symmetric, lift_v0_root_of_unity,
    lift_v1_contrast, theoretical_degree_multiset, theoretical_frame_spectrum,
    theoretical_union_spectrum, BlockParams, FactoryError, FrameSpec, FrameUnion, LiftedVector,
    Partition,
};
pub use graph::{
    build_graph, BoundaryMarkedGraph, Edge, GraphError, IntegerMultiset, MagneticGraph,
    MultiDiGraph, VertexId,
};
pub use spectra::{
    apply_gauge, hermitian_eigenvalues, is_cohomologous_to_zero, laplacian_matrix, multiset_equal,
    multiset_power, multiset_union, spectrum, HermitianMatrix, RealMultiset, SpectraError,
};
pub use verify::{
    check_degree_distinct, check_isolaplacian, check_isospectral, family_report,
    metric_isospectral_predicate, FamilyReport, Verdict, VerifyError,
};
