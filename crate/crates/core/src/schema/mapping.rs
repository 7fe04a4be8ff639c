//! Links from catalog-local classes to the reference core.

use std::fmt;

use super::ucsso::{build_ucsso, ModelingMode};
use super::vocab::*;
use crate::ontology::{term, Ontology, TermId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MappingKind {
    Equivalent,
    SubsumedBy,
}

impl MappingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MappingKind::Equivalent => "equivalent",
            MappingKind::SubsumedBy => "subsumed_by",
        }
    }
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingEntry {
    pub local: TermId,
    pub reference: TermId,
    pub kind: MappingKind,
}

/// A local class deliberately left without a reference counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unmapped {
    pub local: TermId,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingTable {
    pub entries: Vec<MappingEntry>,
    pub unmapped: Vec<Unmapped>,
}

impl MappingTable {
    pub fn entry_for(&self, local: &str) -> Option<&MappingEntry> {
        self.entries.iter().find(|e| e.local.as_str() == local)
    }

    /// Entries whose local or reference term does not resolve, as messages.
    pub fn dangling(&self, local: &Ontology, reference: &Ontology) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            if !local.has_class(e.local.as_str()) {
                out.push(format!("local class `{}` is not defined", e.local));
            }
            if !reference.has_class(e.reference.as_str()) {
                out.push(format!("reference class `{}` is not defined", e.reference));
            }
        }
        out
    }
}

/// Builds the catalog-to-reference mapping.
///
/// Satellites, orbits, and orbital parameters get an entry. Identifier,
/// social, launch, and mass/power classes have no reference counterpart and
/// are listed as unmapped.
pub fn build_mapping() -> MappingTable {
    let local = build_ucsso(ModelingMode::Reified);
    let mut table = MappingTable::default();
    let orbit_classes = local.descendants_or_self(ORBIT).expect("Orbit is built in");
    let satellite_classes = local.descendants_or_self(ARTIFICIAL_SATELLITE).expect("Artificial_Satellite is built in");

    for class in local.classes() {
        let id = class.id.as_str();
        let target = if id == ARTIFICIAL_SATELLITE {
            Some((SSAO_SATELLITE, MappingKind::Equivalent))
        } else if satellite_classes.contains(id) {
            Some((SSAO_SATELLITE, MappingKind::SubsumedBy))
        } else if orbit_classes.contains(id) {
            Some((SSAO_ORBITAL_PATH, MappingKind::SubsumedBy))
        } else if id == ORBITAL_PROPERTY {
            Some((SSAO_ORBITAL_PROPERTY, MappingKind::Equivalent))
        } else if matches!(id, ORBITAL_ECCENTRICITY | "Orbital_Inclination" | "Orbital_Period") {
            Some((SSAO_ORBITAL_ELEMENT, MappingKind::SubsumedBy))
        } else if numeric_parameter(id).is_some_and(|p| p.orbital) {
            Some((SSAO_ORBITAL_PROPERTY, MappingKind::SubsumedBy))
        } else {
            None
        };
        match target {
            Some((reference, kind)) => {
                table.entries.push(MappingEntry { local: class.id.clone(), reference: term(reference), kind })
            }
            None => table
                .unmapped
                .push(Unmapped { local: class.id.clone(), reason: "no counterpart in the reference core".to_string() }),
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::build_ssao_core;
    use std::collections::BTreeSet;

    #[test]
    fn satellite_is_equivalent() {
        let m = build_mapping();
        let e = m.entry_for(ARTIFICIAL_SATELLITE).unwrap();
        assert_eq!(e.reference.as_str(), SSAO_SATELLITE);
        assert_eq!(e.kind, MappingKind::Equivalent);
    }

    #[test]
    fn eccentricity_subsumed_by_orbital_element() {
        let m = build_mapping();
        let e = m.entry_for(ORBITAL_ECCENTRICITY).unwrap();
        assert_eq!(e.reference.as_str(), SSAO_ORBITAL_ELEMENT);
        assert_eq!(e.kind, MappingKind::SubsumedBy);
        assert_eq!(m.entry_for(ORBIT).unwrap().reference.as_str(), SSAO_ORBITAL_PATH);
    }

    #[test]
    fn every_local_class_accounted_for_once() {
        let m = build_mapping();
        let mut seen = BTreeSet::new();
        for local in m.entries.iter().map(|e| &e.local).chain(m.unmapped.iter().map(|u| &u.local)) {
            assert!(seen.insert(local.clone()), "{local} listed twice");
        }
        assert_eq!(seen.len(), build_ucsso(ModelingMode::Reified).class_count());
    }

    #[test]
    fn entries_resolve_on_both_sides() {
        let m = build_mapping();
        for mode in ModelingMode::ALL {
            assert!(m.dangling(&build_ucsso(mode), &build_ssao_core()).is_empty());
        }
    }
}
