//! Cubic graphs as cyclic covers of labelled voltage quotients.
//!
//! The library models multigraphs with darts (half-edges), labels them with
//! fibre multiplicities λ, equips them with vertex indices ι and dart
//! voltages ζ, and constructs the resulting cyclic covers. On top of that it
//! provides automorphism search, the symmetry parameters η (order divided by
//! the maximum automorphism order) and κ (minimum orbit count of a
//! semiregular automorphism), named cubic families, exhaustive enumeration of
//! small quotient candidates, and a classifier for cubic vertex-transitive
//! graphs that admit an automorphism of order at least a third of the graph
//! order.

pub mod artefacts;
pub mod classify;
pub mod dart;
pub mod labelled;
pub mod quotients;
pub mod symmetry;
pub mod families;
pub mod voltage;

pub use artefacts::{find_artefacts, ArtefactError, ArtefactId, ArtefactPattern, Embedding};
pub use classify::{
    classify, fractional_eta_members, report_eta_kappa, theorem_instances, theorem_sweep,
    CaseId, ClassificationResult, ClassifyError, EtaKappaReport, ReportRow, Verdict, Witness,
};
pub use dart::{DartGraph, EdgeKind, GraphError, Walk};
pub use labelled::{CcvObstruction, EdgeType, LabelError, LabelledGraph};
pub use families::{FamilyError, FamilySpec, KnownProperties};
pub use quotients::{
    compute_q, compute_qstar, delta_quotient, enumerate_q0, filter_artefacts, filter_diagram,
    large_cover_members, multicirculant_quotient, probe_candidate, simplified_assignments,
    AssignmentSweep, Candidate, CandidateSet, FreeVoltage, ProbeHit, ProbeReport, QuotientError,
};
pub use symmetry::{CSignature, PermGroup, Permutation, SymError};
pub use voltage::{CcvGraph, CcvViolation, CoverGraph, Endset, VoltageError};
