//! A small conjunctive query language with numeric filters and
//! closed-world negation.

mod ast;
mod eval;
mod parser;

use thiserror::Error;

pub use ast::{Comparator, NumericFilter, PatternTerm, Query, Semantics, TriplePattern};
pub use eval::{evaluate, Binding, BindingSet};
pub use parser::parse_query;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },

    #[error("unknown term `{0}` in query")]
    UnknownTermInQuery(String),

    #[error("variable {0} does not occur in any positive pattern")]
    UnsafeVariable(String),

    #[error("negation needs closed-world semantics; the open world cannot prove absence")]
    NegationUnderOpenWorld,
}
