use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OntologyError {
    #[error("invalid term name `{0}`")]
    InvalidName(String),

    #[error("duplicate term `{name}`")]
    DuplicateTerm { name: String },

    #[error("class `{class}` names unknown parent `{parent}`")]
    UnknownParent { class: String, parent: String },

    #[error("subclass edge {sub} < {sup} would create a subsumption cycle")]
    CycleDetected { sub: String, sup: String },

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("type mismatch on `{predicate}`: {detail}")]
    TypeMismatch { predicate: String, detail: String },

    #[error("value {value} for `{predicate}` is outside {restriction}")]
    RestrictionViolation { predicate: String, value: String, restriction: String },

    #[error("functional property `{predicate}` already has a different value for `{subject}`")]
    FunctionalViolation { subject: String, predicate: String },

    #[error("invalid datatype: {0}")]
    InvalidDatatype(String),
}

impl OntologyError {
    /// Short machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            OntologyError::InvalidName(_) => "invalid_name",
            OntologyError::DuplicateTerm { .. } => "duplicate_term",
            OntologyError::UnknownParent { .. } => "unknown_parent",
            OntologyError::CycleDetected { .. } => "cycle",
            OntologyError::UnknownTerm(_) => "unknown_term",
            OntologyError::TypeMismatch { .. } => "type_mismatch",
            OntologyError::RestrictionViolation { .. } => "restriction",
            OntologyError::FunctionalViolation { .. } => "functional",
            OntologyError::InvalidDatatype(_) => "invalid_datatype",
        }
    }
}
