//! Instance store (A-box): declared instances plus typed assertions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{Literal, Ontology, OntologyError, PropertyRange, TermId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    /// The built-in typing relation between an instance and a class.
    InstanceOf,
    Property(TermId),
}

impl Predicate {
    pub const INSTANCE_OF: &'static str = "instance_of";

    pub fn property(&self) -> Option<&TermId> {
        match self {
            Predicate::Property(p) => Some(p),
            Predicate::InstanceOf => None,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::InstanceOf => f.write_str(Self::INSTANCE_OF),
            Predicate::Property(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Object {
    Class(TermId),
    Instance(TermId),
    Literal(Literal),
}

impl Object {
    pub fn as_term(&self) -> Option<&TermId> {
        match self {
            Object::Class(t) | Object::Instance(t) => Some(t),
            Object::Literal(_) => None,
        }
    }

    pub fn as_instance(&self) -> Option<&TermId> {
        match self {
            Object::Instance(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Object::Literal(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Class(t) | Object::Instance(t) => write!(f, "{t}"),
            Object::Literal(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assertion {
    pub subject: TermId,
    pub predicate: Predicate,
    pub object: Object,
}

impl Assertion {
    pub fn instance_of(subject: TermId, class: TermId) -> Self {
        Assertion { subject, predicate: Predicate::InstanceOf, object: Object::Class(class) }
    }

    pub fn link(subject: TermId, property: TermId, object: TermId) -> Self {
        Assertion { subject, predicate: Predicate::Property(property), object: Object::Instance(object) }
    }

    pub fn value(subject: TermId, property: TermId, literal: Literal) -> Self {
        Assertion { subject, predicate: Predicate::Property(property), object: Object::Literal(literal) }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.predicate, self.subject, self.object)
    }
}

/// Result of a successful [`InstanceStore::assert`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssertOutcome {
    /// False when the assertion was already present.
    pub inserted: bool,
    pub warning: Option<String>,
}

type ObjectIndex = BTreeMap<Predicate, BTreeSet<Object>>;
type SubjectIndex = BTreeMap<Object, BTreeSet<TermId>>;

/// Instances and assertions over a shared, immutable ontology.
///
/// Two indexes are kept in step: subject -> predicate -> objects and
/// predicate -> object -> subjects.
#[derive(Debug, Clone)]
pub struct InstanceStore {
    ontology: Arc<Ontology>,
    instances: BTreeSet<TermId>,
    by_subject: BTreeMap<TermId, ObjectIndex>,
    by_predicate: BTreeMap<Predicate, SubjectIndex>,
    len: usize,
}

impl PartialEq for InstanceStore {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ontology, &other.ontology) || self.ontology == other.ontology)
            && self.instances == other.instances
            && self.by_subject == other.by_subject
    }
}

impl Eq for InstanceStore {}

impl InstanceStore {
    pub fn new(ontology: impl Into<Arc<Ontology>>) -> Self {
        InstanceStore {
            ontology: ontology.into(),
            instances: BTreeSet::new(),
            by_subject: BTreeMap::new(),
            by_predicate: BTreeMap::new(),
            len: 0,
        }
    }

    pub fn ontology(&self) -> &Ontology {
        &self.ontology
    }

    pub fn shared_ontology(&self) -> Arc<Ontology> {
        Arc::clone(&self.ontology)
    }

    /// Swaps in a new ontology, which must still resolve every stored term.
    pub fn with_ontology(mut self, ontology: impl Into<Arc<Ontology>>) -> Result<Self, OntologyError> {
        self.ontology = ontology.into();
        if let Some(problem) = self.integrity_problems().into_iter().next() {
            return Err(OntologyError::UnknownTerm(problem));
        }
        Ok(self)
    }

    /// Declares an instance. Returns false if it already existed.
    pub fn declare_instance(&mut self, id: TermId) -> bool {
        self.instances.insert(id)
    }

    pub fn is_instance(&self, id: &str) -> bool {
        self.instances.contains(id)
    }

    pub fn instances(&self) -> impl Iterator<Item = &TermId> {
        self.instances.iter()
    }

    pub fn instance_count(&self) -> usize {
        self.instances.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0 && self.instances.is_empty()
    }

    /// Checks and stores an assertion. Re-asserting an existing fact is a no-op.
    ///
    /// Kind checks (class vs instance vs literal), datatype, unit, numeric
    /// restriction and functionality are enforced here. Domain and range
    /// class membership is left to validation.
    pub fn assert(&mut self, mut a: Assertion) -> Result<AssertOutcome, OntologyError> {
        if !self.instances.contains(&a.subject) {
            return Err(OntologyError::UnknownTerm(a.subject.to_string()));
        }
        let mut warning = None;
        match &a.predicate {
            Predicate::InstanceOf => match &a.object {
                Object::Class(c) if self.ontology.has_class(c.as_str()) => {}
                Object::Class(c) => return Err(OntologyError::UnknownTerm(c.to_string())),
                other => {
                    return Err(OntologyError::TypeMismatch {
                        predicate: Predicate::INSTANCE_OF.to_string(),
                        detail: format!("expected a class, found `{other}`"),
                    })
                }
            },
            Predicate::Property(p) => {
                let def =
                    self.ontology.property(p.as_str()).ok_or_else(|| OntologyError::UnknownTerm(p.to_string()))?;
                match (&def.range, &mut a.object) {
                    (PropertyRange::Classes(_), Object::Instance(o)) => {
                        if !self.instances.contains(o) {
                            return Err(OntologyError::UnknownTerm(o.to_string()));
                        }
                    }
                    (PropertyRange::Datatype(dt), Object::Literal(lit)) => {
                        if lit.value.base() != dt.base {
                            return Err(OntologyError::TypeMismatch {
                                predicate: p.to_string(),
                                detail: format!("expected a {} literal, found {}", dt.base, lit.value.base()),
                            });
                        }
                        match (lit.unit, dt.unit) {
                            (None, unit) => lit.unit = unit,
                            (Some(u), Some(expected)) if u == expected => {}
                            (Some(u), expected) => {
                                return Err(OntologyError::TypeMismatch {
                                    predicate: p.to_string(),
                                    detail: format!(
                                        "unit {u} does not match declared unit {}",
                                        expected.map_or("(none)", |e| e.label())
                                    ),
                                })
                            }
                        }
                        if let (Some(r), Some(v)) = (&dt.restriction, lit.as_decimal()) {
                            if !r.contains(v) {
                                return Err(OntologyError::RestrictionViolation {
                                    predicate: p.to_string(),
                                    value: v.to_string(),
                                    restriction: r.to_string(),
                                });
                            }
                            if let Some(note) = r.note_for(v) {
                                log::warn!("{p}({}, {v}): {note}", a.subject);
                                warning = Some(format!("{p} = {v}: {note}"));
                            }
                        }
                    }
                    (PropertyRange::Classes(_), other) => {
                        return Err(OntologyError::TypeMismatch {
                            predicate: p.to_string(),
                            detail: format!("object property needs an instance, found `{other}`"),
                        })
                    }
                    (PropertyRange::Datatype(_), other) => {
                        return Err(OntologyError::TypeMismatch {
                            predicate: p.to_string(),
                            detail: format!("data property needs a literal, found `{other}`"),
                        })
                    }
                }
                if def.functional {
                    let existing = self.objects(a.subject.as_str(), &a.predicate);
                    if existing.iter().any(|o| *o != &a.object) {
                        return Err(OntologyError::FunctionalViolation {
                            subject: a.subject.to_string(),
                            predicate: p.to_string(),
                        });
                    }
                }
            }
        }
        let inserted = self.insert_unchecked(a);
        Ok(AssertOutcome { inserted, warning })
    }

    fn insert_unchecked(&mut self, a: Assertion) -> bool {
        let fresh = self
            .by_subject
            .entry(a.subject.clone())
            .or_default()
            .entry(a.predicate.clone())
            .or_default()
            .insert(a.object.clone());
        if fresh {
            self.by_predicate.entry(a.predicate).or_default().entry(a.object).or_default().insert(a.subject);
            self.len += 1;
        }
        fresh
    }

    /// Removes an assertion. Returns true if it was present.
    pub fn retract(&mut self, a: &Assertion) -> bool {
        let Some(preds) = self.by_subject.get_mut(&a.subject) else {
            return false;
        };
        let Some(objs) = preds.get_mut(&a.predicate) else {
            return false;
        };
        if !objs.remove(&a.object) {
            return false;
        }
        if objs.is_empty() {
            preds.remove(&a.predicate);
        }
        if preds.is_empty() {
            self.by_subject.remove(&a.subject);
        }
        let objects = self.by_predicate.get_mut(&a.predicate).expect("indexes in step");
        let subjects = objects.get_mut(&a.object).expect("indexes in step");
        subjects.remove(&a.subject);
        if subjects.is_empty() {
            objects.remove(&a.object);
        }
        if objects.is_empty() {
            self.by_predicate.remove(&a.predicate);
        }
        self.len -= 1;
        true
    }

    pub fn contains(&self, a: &Assertion) -> bool {
        self.by_subject.get(&a.subject).and_then(|p| p.get(&a.predicate)).is_some_and(|o| o.contains(&a.object))
    }

    /// All assertions in subject, predicate, object order.
    pub fn assertions(&self) -> impl Iterator<Item = Assertion> + '_ {
        self.by_subject.iter().flat_map(|(s, preds)| {
            preds.iter().flat_map(move |(p, objs)| {
                objs.iter().map(move |o| Assertion { subject: s.clone(), predicate: p.clone(), object: o.clone() })
            })
        })
    }

    /// Predicate -> objects map for one subject.
    pub fn about(&self, subject: &str) -> Option<&BTreeMap<Predicate, BTreeSet<Object>>> {
        self.by_subject.get(subject)
    }

    pub fn objects(&self, subject: &str, predicate: &Predicate) -> Vec<&Object> {
        self.by_subject.get(subject).and_then(|p| p.get(predicate)).map(|o| o.iter().collect()).unwrap_or_default()
    }

    pub fn subjects(&self, predicate: &Predicate, object: &Object) -> Vec<&TermId> {
        self.by_predicate.get(predicate).and_then(|o| o.get(object)).map(|s| s.iter().collect()).unwrap_or_default()
    }

    /// Every (object, subject) pair stored under `predicate`.
    pub fn with_predicate<'a>(&'a self, predicate: &Predicate) -> impl Iterator<Item = (&'a Object, &'a TermId)> + 'a {
        self.by_predicate
            .get(predicate)
            .into_iter()
            .flat_map(|objs| objs.iter().flat_map(|(o, subs)| subs.iter().map(move |s| (o, s))))
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> {
        self.by_predicate.keys()
    }

    /// Asserted classes of an instance (no subsumption closure).
    pub fn types_of(&self, instance: &str) -> BTreeSet<TermId> {
        self.objects(instance, &Predicate::InstanceOf).into_iter().filter_map(|o| o.as_term().cloned()).collect()
    }

    /// True if the instance is typed by `class` or any subclass of it.
    pub fn is_a(&self, instance: &str, class: &str) -> bool {
        self.objects(instance, &Predicate::InstanceOf)
            .into_iter()
            .filter_map(Object::as_term)
            .any(|t| self.ontology.subsumed_by(t.as_str(), class))
    }

    /// Instances typed by `class` or any subclass of it.
    pub fn instances_of(&self, class: &str) -> BTreeSet<TermId> {
        let Ok(classes) = self.ontology.descendants_or_self(class) else {
            return BTreeSet::new();
        };
        classes
            .into_iter()
            .flat_map(|c| {
                self.subjects(&Predicate::InstanceOf, &Object::Class(c)).into_iter().cloned().collect::<Vec<_>>()
            })
            .collect()
    }

    /// Full scan for dangling references. Empty when consistent.
    pub fn integrity_problems(&self) -> Vec<String> {
        let mut problems = self.ontology.integrity_problems();
        for a in self.assertions() {
            if !self.instances.contains(&a.subject) {
                problems.push(format!("{a}: subject is not a declared instance"));
            }
            match (&a.predicate, &a.object) {
                (Predicate::InstanceOf, Object::Class(c)) if self.ontology.has_class(c.as_str()) => {}
                (Predicate::Property(p), Object::Instance(o))
                    if self.ontology.property(p.as_str()).is_some_and(|d| d.range_classes().is_some())
                        && self.instances.contains(o) => {}
                (Predicate::Property(p), Object::Literal(_))
                    if self.ontology.property(p.as_str()).is_some_and(|d| d.datatype().is_some()) => {}
                _ => problems.push(format!("{a}: unresolved predicate or object")),
            }
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{term, DatatypeSpec, NumericRestriction, PropertyDef, Unit};
    use rust_decimal::Decimal;
    use std::str::FromStr;

    fn dec(s: &str) -> Decimal {
        Decimal::from_str(s).unwrap()
    }

    fn small_store() -> InstanceStore {
        let mut ont = Ontology::new();
        ont.define_class(term("Artificial_Satellite"), []).unwrap();
        ont.define_class(term("Owner"), []).unwrap();
        let ecc = DatatypeSpec::new(
            crate::ontology::BaseType::Decimal,
            None,
            Some(NumericRestriction::closed(dec("0"), dec("1")).unwrap().with_upper_note("parabolic")),
        )
        .unwrap();
        ont.define_property(PropertyDef::data(
            term("has_Orbital_Eccentricity_value"),
            [&term("Artificial_Satellite")],
            ecc,
        ))
        .unwrap();
        ont.define_property(
            PropertyDef::data(
                term("has_Dry_Mass_value"),
                [&term("Artificial_Satellite")],
                DatatypeSpec::decimal(Some(Unit::Kg)),
            )
            .functional(),
        )
        .unwrap();
        ont.define_property(PropertyDef::object(term("has_Owner"), [&term("Artificial_Satellite")], [&term("Owner")]))
            .unwrap();
        let mut store = InstanceStore::new(ont);
        store.declare_instance(term("AAUSat-4"));
        store
    }

    fn ecc(v: &str) -> Assertion {
        Assertion::value(term("AAUSat-4"), term("has_Orbital_Eccentricity_value"), Literal::decimal(dec(v)))
    }

    #[test]
    fn stores_in_range_eccentricity() {
        let mut store = small_store();
        let out = store.assert(ecc("0.02")).unwrap();
        assert!(out.inserted);
        assert!(out.warning.is_none());
        assert!(store.contains(&ecc("0.02")));
    }

    #[test]
    fn rejects_out_of_range_eccentricity() {
        let mut store = small_store();
        assert!(matches!(store.assert(ecc("1.2")), Err(OntologyError::RestrictionViolation { .. })));
        assert_eq!(store.len(), 0);
    }

    #[test]
    fn upper_bound_accepted_with_warning() {
        let mut store = small_store();
        let out = store.assert(ecc("1")).unwrap();
        assert!(out.inserted);
        assert!(out.warning.is_some());
    }

    #[test]
    fn literal_where_instance_required() {
        let mut store = small_store();
        let a = Assertion::value(term("AAUSat-4"), term("has_Owner"), Literal::decimal(dec("0.02")));
        assert!(matches!(store.assert(a), Err(OntologyError::TypeMismatch { .. })));
    }

    #[test]
    fn instance_of_needs_known_class() {
        let mut store = small_store();
        let a = Assertion::instance_of(term("AAUSat-4"), term("Nope"));
        assert!(matches!(store.assert(a), Err(OntologyError::UnknownTerm(_))));
        let undeclared = Assertion::instance_of(term("Ghost"), term("Owner"));
        assert!(matches!(store.assert(undeclared), Err(OntologyError::UnknownTerm(_))));
    }

    #[test]
    fn functional_property_rejects_second_value() {
        let mut store = small_store();
        let mass = |v: &str| Assertion::value(term("AAUSat-4"), term("has_Dry_Mass_value"), Literal::decimal(dec(v)));
        store.assert(mass("1")).unwrap();
        assert!(!store.assert(mass("1")).unwrap().inserted);
        assert!(matches!(store.assert(mass("2")), Err(OntologyError::FunctionalViolation { .. })));
    }

    #[test]
    fn unit_filled_from_property_and_checked() {
        let mut store = small_store();
        let a = Assertion::value(term("AAUSat-4"), term("has_Dry_Mass_value"), Literal::decimal(dec("3")));
        store.assert(a).unwrap();
        let stored = store.objects("AAUSat-4", &Predicate::Property(term("has_Dry_Mass_value")));
        assert_eq!(stored[0].as_literal().unwrap().unit, Some(Unit::Kg));

        let mut store = small_store();
        let wrong = Assertion::value(
            term("AAUSat-4"),
            term("has_Dry_Mass_value"),
            Literal::decimal(dec("3")).with_unit(Unit::Km),
        );
        assert!(matches!(store.assert(wrong), Err(OntologyError::TypeMismatch { .. })));
    }

    #[test]
    fn retract_keeps_indexes_in_step() {
        let mut store = small_store();
        store.assert(ecc("0.02")).unwrap();
        assert!(store.retract(&ecc("0.02")));
        assert!(!store.retract(&ecc("0.02")));
        assert_eq!(store.len(), 0);
        assert_eq!(store.with_predicate(&Predicate::Property(term("has_Orbital_Eccentricity_value"))).count(), 0);
        assert_eq!(store, small_store());
    }

    #[test]
    fn store_is_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<InstanceStore>();
    }
}
