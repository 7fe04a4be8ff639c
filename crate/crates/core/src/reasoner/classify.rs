//! Eccentricity-based orbit classification.

use std::collections::{BTreeMap, BTreeSet};

use rust_decimal::Decimal;

use super::ReasonerError;
use crate::ontology::{term, Assertion, InstanceStore, NumericRestriction, Object, Predicate, TermId};
use crate::schema::vocab::*;
use crate::schema::ModelingMode;

/// How a rule reaches the value it tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleCondition {
    /// `value_property(x, v)` on the orbit or its satellite.
    Direct { value_property: TermId, restriction: NumericRestriction },
    /// `object_property(x, y) ∧ instance_of(y, parameter_class) ∧ value_property(y, v)`.
    Reified {
        object_property: TermId,
        parameter_class: TermId,
        value_property: TermId,
        restriction: NumericRestriction,
    },
}

impl RuleCondition {
    pub fn restriction(&self) -> &NumericRestriction {
        match self {
            RuleCondition::Direct { restriction, .. } | RuleCondition::Reified { restriction, .. } => restriction,
        }
    }
}

/// Types an orbit as `target_class` when a reachable value satisfies the
/// condition for the store's modeling mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRule {
    pub target_class: TermId,
    pub direct: RuleCondition,
    pub reified: RuleCondition,
}

impl ClassificationRule {
    /// A rule over one numeric parameter, in both modeling forms.
    pub fn over_parameter(target: &str, parameter: &NumericParameter, restriction: NumericRestriction) -> Self {
        ClassificationRule {
            target_class: term(target),
            direct: RuleCondition::Direct {
                value_property: term(parameter.value_property),
                restriction: restriction.clone(),
            },
            reified: RuleCondition::Reified {
                object_property: term(parameter.object_property),
                parameter_class: term(parameter.class),
                value_property: term(parameter.value_property),
                restriction,
            },
        }
    }

    pub fn condition(&self, mode: ModelingMode) -> &RuleCondition {
        match mode {
            ModelingMode::Direct => &self.direct,
            ModelingMode::Reified => &self.reified,
        }
    }
}

fn eccentricity_parameter() -> &'static NumericParameter {
    numeric_parameter(ORBITAL_ECCENTRICITY).expect("eccentricity is a built-in parameter")
}

fn nearly_circular_bound() -> Decimal {
    NEARLY_CIRCULAR_MAX_ECCENTRICITY.parse().expect("bound is a decimal literal")
}

/// e ≤ 0.14 → Nearly_Circular_Orbit.
pub fn nearly_circular_rule() -> ClassificationRule {
    ClassificationRule::over_parameter(
        NEARLY_CIRCULAR_ORBIT,
        eccentricity_parameter(),
        NumericRestriction::at_most(nearly_circular_bound()),
    )
}

/// e > 0.14 → Elliptical_Orbit, the complement of the nearly circular rule.
pub fn elliptical_rule() -> ClassificationRule {
    ClassificationRule::over_parameter(
        ELLIPTICAL_ORBIT,
        eccentricity_parameter(),
        NumericRestriction::greater_than(nearly_circular_bound()),
    )
}

pub fn orbit_rules() -> Vec<ClassificationRule> {
    vec![nearly_circular_rule(), elliptical_rule()]
}

/// An orbit the classifier could not type because the evidence disagrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleConflict {
    pub orbit: TermId,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub store: InstanceStore,
    /// Computed class per orbit; None when no value is reachable or the
    /// evidence conflicts.
    pub outcomes: BTreeMap<TermId, Option<TermId>>,
    pub conflicts: Vec<RuleConflict>,
}

/// The orbit itself plus every satellite linked to it by `has_Orbit`.
pub fn orbit_bearers(store: &InstanceStore, orbit: &TermId) -> Vec<TermId> {
    let mut out = vec![orbit.clone()];
    let link = Predicate::Property(term(HAS_ORBIT));
    out.extend(store.subjects(&link, &Object::Instance(orbit.clone())).into_iter().cloned());
    out
}

/// Values reachable from `bearer` through the condition's pattern.
pub fn reachable_values(store: &InstanceStore, bearer: &str, condition: &RuleCondition) -> Vec<Decimal> {
    let literal_values = |subject: &str, property: &TermId| -> Vec<Decimal> {
        store
            .objects(subject, &Predicate::Property(property.clone()))
            .into_iter()
            .filter_map(|o| o.as_literal().and_then(|l| l.as_decimal()))
            .collect()
    };
    match condition {
        RuleCondition::Direct { value_property, .. } => literal_values(bearer, value_property),
        RuleCondition::Reified { object_property, parameter_class, value_property, .. } => store
            .objects(bearer, &Predicate::Property(object_property.clone()))
            .into_iter()
            .filter_map(Object::as_instance)
            .filter(|y| store.is_a(y.as_str(), parameter_class.as_str()))
            .flat_map(|y| literal_values(y.as_str(), value_property))
            .collect(),
    }
}

pub(crate) fn check_mode(store: &InstanceStore, mode: ModelingMode) -> Result<(), ReasonerError> {
    let found = ModelingMode::detect(store.ontology());
    if found != Some(mode) {
        return Err(ReasonerError::ModeMismatch { expected: mode, found });
    }
    Ok(())
}

/// Classifies orbits with the built-in eccentricity rules.
pub fn classify_orbits(store: &InstanceStore, mode: ModelingMode) -> Result<Classification, ReasonerError> {
    classify_with_rules(store, mode, &orbit_rules())
}

/// Applies `rules` to every Orbit instance.
///
/// An orbit whose reachable values fire more than one rule, or whose
/// asserted type is a different rule target's class or subclass, is
/// reported as a conflict and left as it is.
pub fn classify_with_rules(
    store: &InstanceStore,
    mode: ModelingMode,
    rules: &[ClassificationRule],
) -> Result<Classification, ReasonerError> {
    check_mode(store, mode)?;
    let mut out = store.clone();
    let mut outcomes = BTreeMap::new();
    let mut conflicts = Vec::new();

    for orbit in store.instances_of(ORBIT) {
        let bearers = orbit_bearers(store, &orbit);
        let mut fired: BTreeMap<&TermId, BTreeSet<Decimal>> = BTreeMap::new();
        let mut any_value = false;
        for rule in rules {
            let condition = rule.condition(mode);
            for b in &bearers {
                for v in reachable_values(store, b.as_str(), condition) {
                    any_value = true;
                    if condition.restriction().contains(v) {
                        fired.entry(&rule.target_class).or_default().insert(v);
                    }
                }
            }
        }
        if !any_value {
            outcomes.insert(orbit, None);
            continue;
        }
        if fired.len() > 1 {
            let detail = fired
                .iter()
                .map(|(c, vs)| {
                    let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    format!("{} from {}", c, vs.join(", "))
                })
                .collect::<Vec<_>>()
                .join("; ");
            conflicts.push(RuleConflict { orbit: orbit.clone(), detail: format!("values disagree: {detail}") });
            outcomes.insert(orbit, None);
            continue;
        }
        let Some((&target, _)) = fired.iter().next() else {
            outcomes.insert(orbit, None);
            continue;
        };
        let clash = rules
            .iter()
            .map(|r| &r.target_class)
            .filter(|c| *c != target)
            .find(|c| store.is_a(orbit.as_str(), c.as_str()));
        if let Some(other) = clash {
            conflicts.push(RuleConflict {
                orbit: orbit.clone(),
                detail: format!("asserted as {other} but eccentricity makes it {target}"),
            });
            outcomes.insert(orbit, None);
            continue;
        }
        out.assert(Assertion::instance_of(orbit.clone(), target.clone())).expect("rule target classes are defined");
        outcomes.insert(orbit, Some(target.clone()));
    }
    Ok(Classification { store: out, outcomes, conflicts })
}
