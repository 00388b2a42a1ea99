//! Small-graph workbench: bitset graphs, the split families and their
//! relatives, spectral radii, minor testing with certified models, and
//! exhaustive extremal searches.

pub mod canon;
pub mod constructions;
pub mod graph;
pub mod graph6;
pub mod extremal;
pub mod minor;
pub mod spectral;

pub use graph::{EdgeList, Graph, GraphError};
pub use graph6::{from_graph6, to_graph6};
