//! File formats, cross-sections and the `movcone` command line on top of
//! [`movcone_core`].

pub mod cli;
pub mod document;
pub mod slice;

pub use document::{load_graph, parse_graph, save_graph, LoadError, ModelGraphDocument};
pub use slice::{cross_section, SliceError};
