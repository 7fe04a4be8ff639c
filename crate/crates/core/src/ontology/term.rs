use std::fmt;
use std::sync::Arc;

use super::OntologyError;

/// Kind of a named term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKind {
    Class,
    ObjectProperty,
    DataProperty,
    Instance,
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermKind::Class => "class",
            TermKind::ObjectProperty => "object property",
            TermKind::DataProperty => "data property",
            TermKind::Instance => "instance",
        })
    }
}

/// A validated term name.
///
/// Names are non-empty and drawn from `[A-Za-z0-9_-]`, never starting with
/// `-`. Schema terms (classes, properties) are further restricted to
/// `[A-Za-z0-9_]`; see [`TermId::is_schema_name`]. Instance names keep `-`
/// so catalog names such as `AAUSat-4` survive unchanged.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(Arc<str>);

impl TermId {
    pub fn new(name: &str) -> Result<Self, OntologyError> {
        if is_valid_name(name) {
            Ok(TermId(Arc::from(name)))
        } else {
            Err(OntologyError::InvalidName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the name is usable for a class or property.
    pub fn is_schema_name(&self) -> bool {
        self.0.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('-')
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// Shorthand for names known to be valid at compile time.
///
/// Panics on an invalid name; only use with literals.
pub fn term(name: &str) -> TermId {
    TermId::new(name).unwrap_or_else(|_| panic!("invalid built-in term name `{name}`"))
}

/// Turns free text (a satellite or organization name) into a valid instance name.
///
/// Characters outside `[A-Za-z0-9_-]` become `_`, runs of `_` collapse, and
/// leading/trailing separators are trimmed. Returns `None` when nothing usable
/// remains.
pub fn sanitize_instance_name(raw: &str) -> Option<TermId> {
    let mut out = String::with_capacity(raw.len());
    for c in raw.trim().chars() {
        let c = if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' };
        if c == '_' && out.ends_with('_') {
            continue;
        }
        out.push(c);
    }
    let trimmed = out.trim_matches(|c| c == '_' || c == '-');
    TermId::new(trimmed).ok()
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl AsRef<str> for TermId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for TermId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_whitespace_and_empty() {
        assert!(TermId::new("").is_err());
        assert!(TermId::new("Nearly Circular").is_err());
        assert!(TermId::new("-lead").is_err());
        assert!(TermId::new("AAUSat-4").is_ok());
    }

    #[test]
    fn schema_names_exclude_hyphen() {
        assert!(term("Orbit").is_schema_name());
        assert!(!term("AAUSat-4").is_schema_name());
    }

    #[test]
    fn sanitizes_catalog_names() {
        assert_eq!(sanitize_instance_name("AAUSat-4").unwrap().as_str(), "AAUSat-4");
        assert_eq!(sanitize_instance_name("ABS-2 (Koreasat-8, ST-3)").unwrap().as_str(), "ABS-2_Koreasat-8_ST-3");
        assert_eq!(sanitize_instance_name("  Aalborg University ").unwrap().as_str(), "Aalborg_University");
        assert!(sanitize_instance_name(" ()/ ").is_none());
    }
}
