//! Line-oriented schema overlay: `class <Name> < <Parent>` per line.
//!
//! Blank lines and `#` comments are ignored. A line naming a class that
//! already exists adds a further parent edge.

use thiserror::Error;

use crate::ontology::{Ontology, OntologyError, TermId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlayClass {
    pub line: usize,
    pub name: TermId,
    pub parent: TermId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overlay {
    pub classes: Vec<OverlayClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverlayError {
    #[error("overlay line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("overlay line {line}: {source}")]
    Schema { line: usize, source: OntologyError },
}

impl Overlay {
    pub fn parse(text: &str) -> Result<Self, OverlayError> {
        let mut classes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| OverlayError::Syntax { line, message };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                ["class", name, "<", parent] => {
                    let name = TermId::new(name).map_err(|e| syntax(e.to_string()))?;
                    let parent = TermId::new(parent).map_err(|e| syntax(e.to_string()))?;
                    classes.push(OverlayClass { line, name, parent });
                }
                _ => return Err(syntax(format!("expected `class <Name> < <Parent>`, found `{content}`"))),
            }
        }
        Ok(Overlay { classes })
    }

    /// Applies the overlay in file order.
    pub fn apply(&self, ont: &mut Ontology) -> Result<(), OverlayError> {
        for c in &self.classes {
            let schema = |source| OverlayError::Schema { line: c.line, source };
            let parent = ont.resolve_class(c.parent.as_str()).ok_or_else(|| {
                schema(OntologyError::UnknownParent { class: c.name.to_string(), parent: c.parent.to_string() })
            })?;
            if ont.has_class(c.name.as_str()) {
                ont.add_parent(&c.name, &parent).map_err(schema)?;
            } else {
                ont.define_class(c.name.clone(), [&parent]).map_err(schema)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{build_ucsso, ModelingMode};

    #[test]
    fn adds_leaf_classes() {
        let overlay = Overlay::parse(
            "# extra leaves\nclass Non_Polar_Inclined_Orbit < Nearly_Circular_Orbit\n\nclass Optical_Imaging_Purpose < Function  # alias parent\n",
        )
        .unwrap();
        assert_eq!(overlay.classes.len(), 2);
        let mut ont = build_ucsso(ModelingMode::Direct);
        overlay.apply(&mut ont).unwrap();
        assert!(ont.is_subclass_of("Non_Polar_Inclined_Orbit", "Orbit").unwrap());
        assert!(ont.is_subclass_of("Optical_Imaging_Purpose", "Purpose").unwrap());
    }

    #[test]
    fn reports_line_numbers() {
        let err = Overlay::parse("class A < B\nclass C B\n").unwrap_err();
        assert!(matches!(err, OverlayError::Syntax { line: 2, .. }));
        let overlay = Overlay::parse("class A < Missing\n").unwrap();
        let err = overlay.apply(&mut build_ucsso(ModelingMode::Direct)).unwrap_err();
        assert!(matches!(err, OverlayError::Schema { line: 1, .. }));
    }

    #[test]
    fn existing_class_gains_parent_and_cycles_fail() {
        let mut ont = Ontology::new();
        let overlay = Overlay::parse("class B < A\nclass A < B\n").unwrap();
        ont.define_class(TermId::new("A").unwrap(), []).unwrap();
        let err = overlay.apply(&mut ont).unwrap_err();
        assert!(matches!(err, OverlayError::Schema { line: 2, source: OntologyError::CycleDetected { .. } }));
    }
}
