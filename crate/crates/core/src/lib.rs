//! Boolean Ramsey and rainbow Ramsey numbers for small posets: subsets of
//! `[n]` as bitmasks, pattern posets and embeddings, explicit colorings,
//! a checker, and an exhaustive symmetry-reduced coloring search.

mod bits;
pub mod checker;
pub mod coloring;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod search;
mod vshape;

pub use checker::{Target, TargetList, Witness};
pub use coloring::Coloring;
pub use embed::{EmbeddingMap, Mode};
pub use error::{Error, Result};
pub use lattice::{Domain, ElementSet, GroundPermutation};
pub use poset::Poset;
pub use search::{SearchCertificate, SearchConfig};
