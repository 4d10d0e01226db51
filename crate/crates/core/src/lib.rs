//! Virtual network embedding on restricted topologies.
//!
//! Exact polynomial solvers for the tractable cases, an exhaustive oracle for
//! small instances, and generators for NP-hardness gadgets together with
//! certificate extraction and checking.

pub mod dispatch;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracle;
pub mod paths;
pub mod reductions;
pub mod selftest;
pub mod solvers;
pub mod topology;

pub use error::{Result, VneError};
pub use model::{
    check_capacities, edge_loads, embedding_cost, validate_embedding, Capacity, Embedding,
    Instance, Network, NodeId, PhysicalEdge, PhysicalNetwork, ValidationReport, Variant, Violation,
    VirtualEdge, VirtualNetwork,
};
pub use oracle::{decide_theta, oracle_wcvne, oracle_wvne, solve_exact, OracleConfig};
pub use paths::{all_pairs_cheapest_paths, CheapestPaths};
pub use solvers::{Solution, SolveResult};
pub use topology::{classify_topology, TopologyClass, TopologyKind};
