//! Compact core of the reference space-domain vocabulary.

use super::mapping::MappingTable;
use super::ucsso::{build_ucsso, ModelingMode};
use super::vocab::*;
use crate::ontology::{term, Ontology, OntologyError};

/// Builds the reference core.
///
/// Edges: Space_Object > Space_Artifact > Spacecraft > Satellite and
/// Orbital_Property > Orbital_Element. Central_Body, Orbital_Path and
/// Spacecraft_Maneuver are roots.
pub fn build_ssao_core() -> Ontology {
    let mut ont = Ontology::new();
    let chain = [
        (SSAO_SPACE_OBJECT, None),
        (SSAO_SPACE_ARTIFACT, Some(SSAO_SPACE_OBJECT)),
        (SSAO_SPACECRAFT, Some(SSAO_SPACE_ARTIFACT)),
        (SSAO_SATELLITE, Some(SSAO_SPACECRAFT)),
        (SSAO_ORBITAL_PROPERTY, None),
        (SSAO_ORBITAL_ELEMENT, Some(SSAO_ORBITAL_PROPERTY)),
        (SSAO_CENTRAL_BODY, None),
        (SSAO_ORBITAL_PATH, None),
        (SSAO_SPACECRAFT_MANEUVER, None),
    ];
    for (class, parent) in chain {
        let parents: Vec<_> = parent.map(term).into_iter().collect();
        ont.define_class(term(class), &parents).expect("reference core is consistent");
    }
    ont
}

/// The reference vocabulary used as the schema itself.
///
/// The catalog ontology is merged with the reference core and every mapping
/// entry becomes a subclass edge from the local class to its reference
/// class, so materialized typing lands on reference terms. Edges already
/// implied by earlier bridges are skipped.
pub fn build_ssao_schema(mode: ModelingMode, mapping: &MappingTable) -> Result<Ontology, OntologyError> {
    let mut ont = build_ucsso(mode);
    ont.merge(&build_ssao_core())?;
    let order: Vec<_> = ont.topological_classes().into_iter().map(|c| c.id.clone()).collect();
    for local in order {
        let Some(entry) = mapping.entry_for(local.as_str()) else {
            continue;
        };
        if !ont.subsumed_by(local.as_str(), entry.reference.as_str()) {
            ont.add_parent(&local, &entry.reference)?;
        }
    }
    Ok(ont)
}
