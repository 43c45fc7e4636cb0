//! Genus of second homology classes of right-angled Artin groups.
//!
//! A class is an integer labelling of the oriented edges of the defining
//! graph. The crate computes its connection matrix and cap bound, minimal
//! star covers, exact genus with verifiable torus certificates on the solved
//! families, and checks square-tiled surfaces against a class.

pub mod certificate;
pub mod graph;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod serde_int;
pub mod solver;
pub mod star_cover;
pub mod van_kampen;
pub mod vertex_cover;

pub use certificate::{
    check_certificate, verify_certificate, Certificate, StarTorus, TensorDecomposition, TensorTerm,
    TorusCertificate, TorusPart, WedgeDecomposition, WedgeTerm,
};
pub use graph::{Graph, GraphError, OrientedGraph, VertexCover, VertexId};
pub use homology::{ConnectionMatrix, HomologyClass, HomologyError, Support};
pub use linalg::{
    determinant, is_unimodular, rank, skew_normal_form, smith_normal_form, IntMatrix, LinalgError, SkewIntMatrix,
    SkewNormalForm, SmithForm,
};
pub use solver::{
    genus, star_to_torus, tensor_decompose, torus_certificate, torus_representable, wedge_decompose, GenusResult,
    Method, SolverError,
};
pub use star_cover::{min_star_cover, sc_cardinality, verify_star_cover, Spoke, Star, StarCover, StarCoverError};
pub use vertex_cover::DEFAULT_BUDGET;
pub use van_kampen::{
    validate_diagram, ComponentSummary, DiagramError, Slot, Square, SquareSide, SurfaceSummary, VanKampenDiagram,
};
