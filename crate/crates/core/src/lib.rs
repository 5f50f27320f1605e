//! Rainbow (transversal) path and cycle search over collections of graphs
//! sharing one vertex set.

pub mod analysis;
pub mod bitset;
pub mod campaign;
pub mod error;
pub mod graph;
pub mod instances;
pub mod matching;
pub mod path;
pub mod proof;
pub mod search;
pub mod view;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use graph::{GraphCollection, SimpleGraph};
pub use matching::assign_colors;
pub use path::{ColoredCycle, ColoredPath, PathViolation};
pub use search::{Outcome, SearchBudget, SearchStats, Searcher};
pub use view::CollectionView;
