//! Linear Turán engine for r-uniform linear hypergraphs: constructions of
//! Steiner-type extremal systems, detection of small tree expansions, bound
//! evaluation, and exact computation of linear Turán numbers by exhaustive
//! search with certified witnesses.

pub mod bitset;
pub mod bounds;
pub mod corpus;
pub mod designs;
pub mod hypergraph;
pub mod patterns;
pub mod search;

pub use bitset::VertexSet;
pub use hypergraph::{ComponentPartition, DegreeProfile, HypergraphError, LinearHypergraph};
