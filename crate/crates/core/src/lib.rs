//! Token graphs of simple graphs, a constructive disjoint-path engine for
//! token graphs of trees, and exact connectivity oracles to check it against.

pub mod canon;
pub mod engine;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod moves;
pub mod oracle;
pub mod token;
pub mod trace;
pub mod trees;
pub mod verify;

pub use canon::{are_isomorphic, canonical_form, enumerate_graphs, CanonicalForm};
pub use engine::{
    construct_disjoint_family, construct_with_delta, normalize, CaseKind, Construction, EngineError, FamilyPath,
    NormalizedPair, PathFamily, Provenance, Reduction, ReductionStep,
};
pub use graph::{Graph, GraphError};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_lines, Graph6Error};
pub use moves::{PathError, TokenMove, TokenPath};
pub use oracle::{
    brute_force_connectivity, connectivity_report, edge_connectivity, local_vertex_connectivity, vertex_connectivity,
    ConnectivityReport, KappaStrategy, LocalConnectivity, OracleError,
};
pub use token::{
    build_token_graph, classify_distance2, complement_iso, min_token_degree, token_degree, Distance2Class,
    TokenConfig, TokenError, TokenGraph,
};
pub use trace::{ConditionId, TraceCondition};
pub use trees::{enumerate_trees, TreeError};
