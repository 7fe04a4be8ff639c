use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("malformed CSV at row {row}: {message}")]
    MalformedCsv { row: usize, message: String },

    #[error("input is empty")]
    EmptyInput,

    #[error("row {row}: satellite name is empty or has no usable characters")]
    MissingName { row: usize },

    #[error("row {row}, {field}: {detail}")]
    Field { row: usize, field: String, kind: FieldErrorKind, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldErrorKind {
    UnknownOrbitClass,
    UnparsableNumber,
    UnparsableDate,
}

impl FieldErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            FieldErrorKind::UnknownOrbitClass => "unknown_orbit_class",
            FieldErrorKind::UnparsableNumber => "unparsable_number",
            FieldErrorKind::UnparsableDate => "unparsable_date",
        }
    }
}

/// A cell that could not be resolved. The rest of the row still resolves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub kind: FieldErrorKind,
    pub message: String,
}

impl FieldError {
    pub fn into_error(self, row: usize) -> IngestError {
        IngestError::Field { row, field: self.field, kind: self.kind, detail: self.message }
    }
}
