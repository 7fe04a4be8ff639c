//! Exchange formats: the Turtle store file, DOT class graphs, and the
//! mapping onto the reference core.

mod dot;
mod mapping;
mod turtle;

use thiserror::Error;

use crate::ontology::OntologyError;

pub use dot::export_dot;
pub use mapping::apply_mapping;
pub use turtle::{
    export_turtle, export_turtle_with, import_turtle, import_turtle_with, write_turtle, TurtleConfig, KG,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteropError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("unsupported construct at {line}:{col}: {construct}")]
    UnsupportedConstruct { line: usize, col: usize, construct: String },

    #[error("schema error near line {line}: {source}")]
    Schema { line: usize, source: OntologyError },

    #[error("dangling mapping: {0}")]
    DanglingMapping(String),

    #[error("write failed: {0}")]
    WriteFailure(String),
}
