//! Exact counting of minimal transversals of β-acyclic hypergraphs, and of
//! minimal dominating sets of graphs whose closed neighbourhood hypergraph is
//! β-acyclic (strongly chordal graphs among them).
//!
//! ```
//! use mintrans::{count_mtr, Hypergraph};
//!
//! // {a,b}, {b,x}, {x,c}, {c,d}
//! let h = Hypergraph::from_sets([vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
//! assert_eq!(count_mtr(&h).unwrap(), 4u32.into());
//! ```

pub mod cli;
pub mod domination;
pub mod engine;
pub mod error;
pub mod hypergraph;
pub mod oracle;
pub mod order;

pub use engine::{
    count_mtr, count_mtr_containing, BigCount, CheckStats, CountReport, Counter, Engine,
    EngineOptions, FillMode, StateKey,
};
pub use error::{Error, Result};
pub use hypergraph::{cross_union, Edge, EdgePartition, Family, Hypergraph, VertexId, VertexSet};
pub use order::{
    build_hex, find_elimination_ordering, lex_compare, verify_ordering, EliminationOrdering,
    LexEdgeOrder, SubHypergraphHex,
};
