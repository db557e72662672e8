//! Digraphs, bitset vertex sets, reachability, generators and edge-list I/O.

mod digraph;
mod gen;
mod io;
mod vset;

pub use digraph::{is_dag, reach, reach_unchecked, topological_order, Digraph};
pub use gen::{gen_digraph, GenModel, BANDED_DEFAULT_P};
pub use io::{parse_edge_list, to_dot, write_edge_list};
pub use vset::VertexSet;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}->{1}")]
    DuplicateEdge(usize, usize),
    #[error("source {0} lies in the removed set")]
    SourceRemoved(usize),
    #[error("graph contains a directed cycle")]
    Cyclic,
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
