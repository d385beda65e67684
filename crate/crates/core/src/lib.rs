//! Set-colourings of complete and complete bipartite graphs.
//!
//! Every edge of the host carries a non-empty set of colours from `0..r`.
//! The crate builds such colourings, covers them with few monochromatic
//! trees, searches for set-Ramsey numbers and translates between colourings
//! and r-partite intersecting hypergraphs.

pub mod bitset;
pub mod certificate;
pub mod colour;
pub mod colouring;
pub mod components;
pub mod constructions;
pub mod cover;
pub mod format;
pub mod host;
pub mod ramsey;
pub mod random;
pub mod reductions;
pub mod ryser;

pub use bitset::VertexSet;
pub use certificate::{
    verify_cover, verify_partition, CoverCertificate, PartitionCertificate, PartitionPiece,
    PieceKind, Verification,
};
pub use colour::ColourSet;
pub use colouring::{ColouringError, SetColouring, Violation};
pub use components::{mono_components, ComponentIndex, MonoComponent};
pub use host::HostGraph;
