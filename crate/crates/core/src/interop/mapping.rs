use std::collections::BTreeSet;

use super::InteropError;
use crate::ontology::{Assertion, ClassDef, InstanceStore, Ontology, TermId};
use crate::schema::MappingTable;

/// Types every instance of a mapped local class with its reference class.
///
/// Only the reference classes named by the table, plus their ancestors,
/// are merged into the store's schema.
pub fn apply_mapping(
    store: &InstanceStore,
    table: &MappingTable,
    reference: &Ontology,
) -> Result<InstanceStore, InteropError> {
    let dangling = table.dangling(store.ontology(), reference);
    if !dangling.is_empty() {
        return Err(InteropError::DanglingMapping(dangling.join("; ")));
    }
    if table.entries.is_empty() {
        return Ok(store.clone());
    }

    let mut needed: BTreeSet<TermId> = BTreeSet::new();
    for e in &table.entries {
        needed.insert(e.reference.clone());
        needed.extend(reference.ancestors(e.reference.as_str()).map_err(schema)?);
    }
    let mut subset = Ontology::new();
    for c in reference.topological_classes() {
        if needed.contains(&c.id) {
            subset
                .define_class_def(ClassDef {
                    id: c.id.clone(),
                    parents: c.parents.clone(),
                    definition: c.definition.clone(),
                })
                .map_err(schema)?;
        }
    }
    let mut ont = store.ontology().clone();
    ont.merge(&subset).map_err(schema)?;
    let mut out = store.clone().with_ontology(ont).map_err(schema)?;

    for e in &table.entries {
        for i in store.instances_of(e.local.as_str()) {
            out.assert(Assertion::instance_of(i, e.reference.clone())).map_err(schema)?;
        }
    }
    Ok(out)
}

fn schema(source: crate::ontology::OntologyError) -> InteropError {
    InteropError::Schema { line: 0, source }
}
