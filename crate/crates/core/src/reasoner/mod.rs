//! Rule-based orbit classification, realization, validation and
//! materialization of superclass typing.

mod classify;
mod validate;

use std::collections::BTreeSet;

use thiserror::Error;

pub use classify::{
    classify_orbits, classify_with_rules, elliptical_rule, nearly_circular_rule, orbit_bearers, orbit_rules,
    reachable_values, Classification, ClassificationRule, RuleCondition, RuleConflict,
};
pub use validate::{missing_orbit_parameters, validate, Severity, Violation, ViolationCode};

use crate::ontology::{Assertion, InstanceStore, TermId};
use crate::schema::ModelingMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("store is not in {expected} form (detected {})", found.map_or("no mode".to_string(), |m| m.to_string()))]
    ModeMismatch { expected: ModelingMode, found: Option<ModelingMode> },

    #[error("unknown instance `{0}`")]
    UnknownTerm(String),
}

/// Most specific classes of an instance: its asserted classes minus any
/// that has a strict subclass in the same set.
pub fn realize(store: &InstanceStore, instance: &str) -> Result<BTreeSet<TermId>, ReasonerError> {
    if !store.is_instance(instance) {
        return Err(ReasonerError::UnknownTerm(instance.to_string()));
    }
    let ont = store.ontology();
    let types = store.types_of(instance);
    Ok(types
        .iter()
        .filter(|c| !types.iter().any(|d| d != *c && ont.subsumed_by(d.as_str(), c.as_str())))
        .cloned()
        .collect())
}

/// Adds `instance_of(i, A)` for every ancestor `A` of every class of `i`.
pub fn materialize(store: &InstanceStore) -> InstanceStore {
    let mut out = store.clone();
    let ont = store.shared_ontology();
    for i in store.instances() {
        for class in store.types_of(i.as_str()) {
            for ancestor in ont.ancestors(class.as_str()).unwrap_or_default() {
                out.assert(Assertion::instance_of(i.clone(), ancestor))
                    .expect("ancestors of defined classes are defined");
            }
        }
    }
    out
}
