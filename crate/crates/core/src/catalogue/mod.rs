//! Catalogue of equilibrium partitions on small connected graphs.
//!
//! Candidate partitions (trivial, or all parts of size ≥ 2 and connected)
//! are filtered by the Nash condition and deduplicated up to graph
//! symmetry and part relabeling. Two labeled partitions are compared by
//! attaching `label(v)` pendant vertices to every vertex and testing the
//! expanded graphs for isomorphism under each size-compatible relabeling.

mod canon;
mod census;
mod enumerate;
mod partitions;

pub use canon::{canonical_form, is_isomorphic as graph_isomorphic, CanonicalForm};
pub use census::{build_census, CensusEntry, CensusSummary, OrderRow, CLASS_COLUMNS};
pub use enumerate::{enumerate_connected_graphs, MAX_ENUMERATION_ORDER};
pub use partitions::{
    all_partitions, candidate_partitions, enumerate_equilibrium_partitions, expand, partitions_isomorphic,
    LabeledPartition,
};
