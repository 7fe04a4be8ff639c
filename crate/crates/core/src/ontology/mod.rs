//! Core knowledge representation: schema graph (T-box) and instance store (A-box).

mod error;
mod literal;
mod store;
mod tbox;
mod term;

pub use error::OntologyError;
pub use literal::{BaseType, DatatypeSpec, Literal, LiteralValue, NumericRestriction, Unit};
pub use store::{AssertOutcome, Assertion, InstanceStore, Object, Predicate};
pub use tbox::{ClassDef, Ontology, PropertyDef, PropertyRange};
pub use term::{sanitize_instance_name, term, TermId, TermKind};
