//! Store-wide conformance checks.

use std::collections::BTreeSet;
use std::fmt;

use super::classify::{classify_orbits, orbit_bearers};
use super::realize;
use crate::ontology::{term, InstanceStore, Object, Ontology, Predicate, PropertyRange, TermId};
use crate::schema::vocab::*;
use crate::schema::ModelingMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    Range,
    Domain,
    Restriction,
    Functional,
    RuleConflict,
    Incomplete,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::Range => "range",
            ViolationCode::Domain => "domain",
            ViolationCode::Restriction => "restriction",
            ViolationCode::Functional => "functional",
            ViolationCode::RuleConflict => "rule_conflict",
            ViolationCode::Incomplete => "incomplete",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub subject: TermId,
    pub code: ViolationCode,
    pub severity: Severity,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}: {}", self.severity.as_str(), self.code, self.subject, self.detail)
    }
}

/// True if some class of the instance is related by subsumption, in either
/// direction, to one of the allowed classes. Untyped instances pass: under
/// the open world nothing is known against them.
fn conforms(ont: &Ontology, classes: &BTreeSet<TermId>, allowed: &BTreeSet<TermId>) -> bool {
    classes.is_empty()
        || classes.iter().any(|c| {
            allowed.iter().any(|a| ont.subsumed_by(c.as_str(), a.as_str()) || ont.subsumed_by(a.as_str(), c.as_str()))
        })
}

fn names(set: &BTreeSet<TermId>) -> String {
    set.iter().map(TermId::as_str).collect::<Vec<_>>().join(", ")
}

/// Checks every assertion against the schema and every orbit for the five
/// core parameters.
///
/// Multiple declared domain or range classes are alternatives. Missing
/// orbit parameters are warnings because catalog rows are often sparse.
/// Rule conflicts are included when the store's modeling mode can be
/// detected.
pub fn validate(store: &InstanceStore) -> Vec<Violation> {
    let ont = store.ontology();
    let mut out = Vec::new();
    let mut push = |subject: &TermId, code, severity, detail: String| {
        out.push(Violation { subject: subject.clone(), code, severity, detail });
    };

    for a in store.assertions() {
        let Predicate::Property(p) = &a.predicate else { continue };
        let Some(def) = ont.property(p.as_str()) else { continue };
        let subject_classes = realize(store, a.subject.as_str()).unwrap_or_default();
        if !conforms(ont, &subject_classes, &def.domain) {
            push(
                &a.subject,
                ViolationCode::Domain,
                Severity::Error,
                format!(
                    "{p}: subject typed {{{}}}, expected one of {{{}}}",
                    names(&subject_classes),
                    names(&def.domain)
                ),
            );
        }
        match (&def.range, &a.object) {
            (PropertyRange::Classes(range), Object::Instance(o)) => {
                let object_classes = realize(store, o.as_str()).unwrap_or_default();
                if !conforms(ont, &object_classes, range) {
                    push(
                        &a.subject,
                        ViolationCode::Range,
                        Severity::Error,
                        format!(
                            "{p}: object {o} typed {{{}}}, expected one of {{{}}}",
                            names(&object_classes),
                            names(range)
                        ),
                    );
                }
            }
            (PropertyRange::Datatype(dt), Object::Literal(lit)) => {
                if lit.value.base() != dt.base {
                    push(
                        &a.subject,
                        ViolationCode::Range,
                        Severity::Error,
                        format!("{p}: expected {} literal, found {}", dt.base, lit.value.base()),
                    );
                } else if let (Some(r), Some(v)) = (&dt.restriction, lit.as_decimal()) {
                    if !r.contains(v) {
                        push(&a.subject, ViolationCode::Restriction, Severity::Error, format!("{p}: {v} outside {r}"));
                    }
                }
            }
            (_, other) => push(
                &a.subject,
                ViolationCode::Range,
                Severity::Error,
                format!("{p}: object `{other}` has the wrong kind"),
            ),
        }
    }

    for p in ont.properties().filter(|p| p.functional) {
        let pred = Predicate::Property(p.id.clone());
        let subjects: BTreeSet<&TermId> = store.with_predicate(&pred).map(|(_, s)| s).collect();
        for s in subjects {
            let n = store.objects(s.as_str(), &pred).len();
            if n > 1 {
                push(s, ViolationCode::Functional, Severity::Error, format!("{} has {n} values", p.id));
            }
        }
    }

    if let Some(mode) = ModelingMode::detect(ont) {
        for orbit in store.instances_of(ORBIT) {
            let missing = missing_orbit_parameters(store, mode, &orbit);
            if !missing.is_empty() {
                push(
                    &orbit,
                    ViolationCode::Incomplete,
                    Severity::Warning,
                    format!("no value for {}", missing.join(", ")),
                );
            }
        }
        if let Ok(c) = classify_orbits(store, mode) {
            for conflict in c.conflicts {
                push(&conflict.orbit, ViolationCode::RuleConflict, Severity::Error, conflict.detail);
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

/// Core orbit parameters with no value reachable from the orbit or its satellites.
pub fn missing_orbit_parameters(store: &InstanceStore, mode: ModelingMode, orbit: &TermId) -> Vec<&'static str> {
    let bearers = orbit_bearers(store, orbit);
    REQUIRED_ORBIT_PARAMETERS
        .iter()
        .copied()
        .filter(|class| {
            let p = numeric_parameter(class).expect("required parameters are built in");
            !bearers.iter().any(|b| has_parameter_value(store, mode, b, p))
        })
        .collect()
}

fn has_parameter_value(store: &InstanceStore, mode: ModelingMode, bearer: &TermId, p: &NumericParameter) -> bool {
    let value = Predicate::Property(term(p.value_property));
    match mode {
        ModelingMode::Direct => !store.objects(bearer.as_str(), &value).is_empty(),
        ModelingMode::Reified => store
            .objects(bearer.as_str(), &Predicate::Property(term(p.object_property)))
            .into_iter()
            .filter_map(Object::as_instance)
            .any(|y| !store.objects(y.as_str(), &value).is_empty()),
    }
}
