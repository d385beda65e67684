//! Tree covers and path/cycle partitions of set-coloured hosts.

mod construct;
mod critical;
mod exact;
mod partition;

pub use construct::{
    bipartite_bound, complete_bound, constructive_cover_bipartite, constructive_cover_complete,
};
pub use critical::{critical_report, lbn_inequality, CriticalReport, LbnOutcome};
pub use exact::{cover_within, exact_tree_cover, ExactCover, DEFAULT_NODE_BUDGET};
pub use partition::{
    exact_cycle_partition, exact_path_partition, ExactPartition, MAX_PARTITION_VERTICES,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("budget exceeded after {nodes} search nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("{n} vertices exceeds the exhaustive limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("constructive covers need a uniform (r,k)-colouring")]
    NotUniform,
    #[error("this construction needs a {0} host")]
    WrongHost(&'static str),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}
