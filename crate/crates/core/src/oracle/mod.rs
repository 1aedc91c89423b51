//! Ground truth: exhaustive equivalence, minimal anchor search, component bounds
//! and four-square decompositions.

pub mod bounds;
pub mod equiv;
pub mod search;
pub mod squares;

pub use bounds::{component_bound_check, BoundCheck};
pub use equiv::{equiv_check, EquivReport, EquivStatus, Witness};
pub use search::{far_dummy, min_hnn_search, Checkpoint, SearchConfig, SearchResult};
pub use squares::four_square;
