//! Sparse certificates for 2-edge-connected blocks and components of digraphs.

pub mod certificates;
pub mod decomposition;
pub mod dominators;
pub mod error;
pub mod experiment;
pub mod filters;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod spanning;

pub use certificates::{
    ist_b, ist_b_original, ist_bc, two_ecss_edt, zni_c, zni_scss, CertificateEdgeList, CertificateStats,
};
pub use decomposition::{
    blocks, canonical_decomposition, components, condense, expand, first_level_aux_graphs, second_level_aux_graphs,
    AuxGraph, BlockPartition, CanonicalDecomposition, ComponentPartition, CondensedGraph, Partition, VertexTag,
};
pub use dominators::{analyze_flow, dominator_tree, strong_bridges, BridgeSet, DominatorTree, FlowGraph};
pub use error::{Error, Result};
pub use experiment::{
    lower_bound, run_experiment, verify_subgraph, Algorithm, DatasetSummary, ExperimentConfig, Problem, QualityReport,
    RunOptions, Verdict,
};
pub use filters::{filter, filter_bc, EdgeDecision, EdgeOrder, FilterConfig, FilterMode, FilterReport, FilterStrategy};
pub use graph::{is_strongly_connected, largest_scc, scc, Digraph, EdgeId, SccPartition, VertexId};
pub use io::{format_edge_list, parse_dimacs, parse_edge_subset, parse_snap, read_graph, Ingested};
pub use oracle::gadget_family;
pub use spanning::{
    edge_disjoint_pair, edge_prioritized_dfs, independent_pair, verify_independent, SpanningTree, TreePair,
};
