//! Spectral radii of uniform hypergraphs by shifted tensor power iteration and
//! by α-normal weighted incidence matrices, with the tooling needed to order
//! linear unicyclic hypergraphs by spectral radius: family builders, canonical
//! forms, edge-moving transforms, exhaustive enumeration and claim checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod format;
pub mod hypergraph;
pub mod spectral;
pub mod structure;
pub mod transforms;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use families::{family, Family, FamilySpec};
pub use hypergraph::{make_hypergraph, power_hypergraph, EdgeId, Hypergraph, SimpleGraph, Vertex};
pub use spectral::{IterationOptions, Method, SpectralResult};
pub use structure::{structural_profile, Classification, StructuralProfile};
