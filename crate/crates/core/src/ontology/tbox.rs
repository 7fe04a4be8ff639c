//! Schema graph: classes, properties, aliases, and the subsumption order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{DatatypeSpec, OntologyError, TermId, TermKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDef {
    pub id: TermId,
    pub parents: BTreeSet<TermId>,
    pub definition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyRange {
    /// Object property: target instances must fall under one of these classes.
    Classes(BTreeSet<TermId>),
    /// Data property: target is a literal of this datatype.
    Datatype(DatatypeSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyDef {
    pub id: TermId,
    pub domain: BTreeSet<TermId>,
    pub range: PropertyRange,
    pub functional: bool,
}

impl PropertyDef {
    pub fn object<'a>(
        id: TermId,
        domain: impl IntoIterator<Item = &'a TermId>,
        range: impl IntoIterator<Item = &'a TermId>,
    ) -> Self {
        PropertyDef {
            id,
            domain: domain.into_iter().cloned().collect(),
            range: PropertyRange::Classes(range.into_iter().cloned().collect()),
            functional: false,
        }
    }

    pub fn data<'a>(id: TermId, domain: impl IntoIterator<Item = &'a TermId>, datatype: DatatypeSpec) -> Self {
        PropertyDef {
            id,
            domain: domain.into_iter().cloned().collect(),
            range: PropertyRange::Datatype(datatype),
            functional: false,
        }
    }

    pub fn functional(mut self) -> Self {
        self.functional = true;
        self
    }

    pub fn kind(&self) -> TermKind {
        match self.range {
            PropertyRange::Classes(_) => TermKind::ObjectProperty,
            PropertyRange::Datatype(_) => TermKind::DataProperty,
        }
    }

    pub fn datatype(&self) -> Option<&DatatypeSpec> {
        match &self.range {
            PropertyRange::Datatype(dt) => Some(dt),
            PropertyRange::Classes(_) => None,
        }
    }

    pub fn range_classes(&self) -> Option<&BTreeSet<TermId>> {
        match &self.range {
            PropertyRange::Classes(c) => Some(c),
            PropertyRange::Datatype(_) => None,
        }
    }
}

/// The T-box.
///
/// Classes and properties share one namespace. Aliases are extra names that
/// resolve to a class or property (e.g. `Function` for `Purpose`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    classes: BTreeMap<TermId, ClassDef>,
    properties: BTreeMap<TermId, PropertyDef>,
    aliases: BTreeMap<TermId, TermId>,
    children: BTreeMap<TermId, BTreeSet<TermId>>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    fn ensure_fresh(&self, id: &TermId) -> Result<(), OntologyError> {
        if !id.is_schema_name() {
            return Err(OntologyError::InvalidName(id.to_string()));
        }
        if self.classes.contains_key(id) || self.properties.contains_key(id) || self.aliases.contains_key(id) {
            return Err(OntologyError::DuplicateTerm { name: id.to_string() });
        }
        Ok(())
    }

    pub fn define_class<'a>(
        &mut self,
        id: TermId,
        parents: impl IntoIterator<Item = &'a TermId>,
    ) -> Result<(), OntologyError> {
        self.define_class_def(ClassDef { id, parents: parents.into_iter().cloned().collect(), definition: None })
    }

    pub fn define_class_def(&mut self, def: ClassDef) -> Result<(), OntologyError> {
        self.ensure_fresh(&def.id)?;
        for parent in &def.parents {
            if !self.classes.contains_key(parent) {
                return Err(OntologyError::UnknownParent { class: def.id.to_string(), parent: parent.to_string() });
            }
        }
        // A fresh class has no descendants, so no edge out of it can close a cycle.
        for parent in &def.parents {
            self.children.entry(parent.clone()).or_default().insert(def.id.clone());
        }
        self.classes.insert(def.id.clone(), def);
        Ok(())
    }

    /// Adds a subclass edge between two existing classes.
    pub fn add_parent(&mut self, sub: &TermId, sup: &TermId) -> Result<bool, OntologyError> {
        if !self.classes.contains_key(sub) {
            return Err(OntologyError::UnknownTerm(sub.to_string()));
        }
        if !self.classes.contains_key(sup) {
            return Err(OntologyError::UnknownParent { class: sub.to_string(), parent: sup.to_string() });
        }
        if self.classes[sub].parents.contains(sup) {
            return Ok(false);
        }
        if self.reaches(sup, sub) {
            return Err(OntologyError::CycleDetected { sub: sub.to_string(), sup: sup.to_string() });
        }
        self.classes.get_mut(sub).expect("checked above").parents.insert(sup.clone());
        self.children.entry(sup.clone()).or_default().insert(sub.clone());
        Ok(true)
    }

    pub fn set_definition(&mut self, id: &TermId, text: impl Into<String>) -> Result<(), OntologyError> {
        let class = self.classes.get_mut(id).ok_or_else(|| OntologyError::UnknownTerm(id.to_string()))?;
        class.definition = Some(text.into());
        Ok(())
    }

    pub fn define_property(&mut self, def: PropertyDef) -> Result<(), OntologyError> {
        self.ensure_fresh(&def.id)?;
        let range_classes = def.range_classes().into_iter().flatten();
        for class in def.domain.iter().chain(range_classes) {
            if !self.classes.contains_key(class) {
                return Err(OntologyError::UnknownTerm(class.to_string()));
            }
        }
        self.properties.insert(def.id.clone(), def);
        Ok(())
    }

    /// Registers `alias` as another name for an existing class or property.
    pub fn add_alias(&mut self, alias: TermId, target: &TermId) -> Result<(), OntologyError> {
        self.ensure_fresh(&alias)?;
        if !self.classes.contains_key(target) && !self.properties.contains_key(target) {
            return Err(OntologyError::UnknownTerm(target.to_string()));
        }
        self.aliases.insert(alias, target.clone());
        Ok(())
    }

    /// Resolves a name (or alias) to its canonical term and kind.
    pub fn resolve(&self, name: &str) -> Option<(TermId, TermKind)> {
        let canonical = self.aliases.get(name).map(|t| t.as_str()).unwrap_or(name);
        if let Some((id, _)) = self.classes.get_key_value(canonical) {
            return Some((id.clone(), TermKind::Class));
        }
        self.properties.get_key_value(canonical).map(|(id, def)| (id.clone(), def.kind()))
    }

    pub fn resolve_class(&self, name: &str) -> Option<TermId> {
        match self.resolve(name) {
            Some((id, TermKind::Class)) => Some(id),
            _ => None,
        }
    }

    pub fn resolve_property(&self, name: &str) -> Option<&PropertyDef> {
        match self.resolve(name) {
            Some((id, TermKind::ObjectProperty | TermKind::DataProperty)) => self.properties.get(&id),
            _ => None,
        }
    }

    pub fn class(&self, id: &str) -> Option<&ClassDef> {
        self.classes.get(id)
    }

    pub fn property(&self, id: &str) -> Option<&PropertyDef> {
        self.properties.get(id)
    }

    pub fn has_class(&self, id: &str) -> bool {
        self.classes.contains_key(id)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassDef> {
        self.classes.values()
    }

    pub fn properties(&self) -> impl Iterator<Item = &PropertyDef> {
        self.properties.values()
    }

    pub fn aliases(&self) -> impl Iterator<Item = (&TermId, &TermId)> {
        self.aliases.iter()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn property_count(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.properties.is_empty() && self.aliases.is_empty()
    }

    /// Direct subclass edges as `(sub, sup)` pairs, sorted.
    pub fn subclass_edges(&self) -> Vec<(TermId, TermId)> {
        self.classes.values().flat_map(|c| c.parents.iter().map(move |p| (c.id.clone(), p.clone()))).collect()
    }

    pub fn direct_subclasses(&self, id: &str) -> impl Iterator<Item = &TermId> {
        self.children.get(id).into_iter().flatten()
    }

    fn reaches(&self, from: &TermId, to: &TermId) -> bool {
        if from == to {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur) {
                continue;
            }
            if let Some(class) = self.classes.get(cur) {
                for p in &class.parents {
                    if p == to {
                        return true;
                    }
                    stack.push(p);
                }
            }
        }
        false
    }

    fn require_class(&self, id: &str) -> Result<&ClassDef, OntologyError> {
        self.classes.get(id).ok_or_else(|| OntologyError::UnknownTerm(id.to_string()))
    }

    /// Reflexive-transitive subsumption test.
    pub fn is_subclass_of(&self, sub: &str, sup: &str) -> Result<bool, OntologyError> {
        let sub = &self.require_class(sub)?.id;
        let sup = &self.require_class(sup)?.id;
        Ok(self.reaches(sub, sup))
    }

    /// Like [`Ontology::is_subclass_of`], but unknown classes are simply not subsumed.
    pub fn subsumed_by(&self, sub: &str, sup: &str) -> bool {
        self.is_subclass_of(sub, sup).unwrap_or(false)
    }

    /// All strict superclasses, nearest first.
    ///
    /// The order is topological (a class always precedes its own ancestors);
    /// ties break on shortest distance, then on name.
    pub fn ancestors(&self, id: &str) -> Result<Vec<TermId>, OntologyError> {
        let start = &self.require_class(id)?.id;

        let mut distance: BTreeMap<&TermId, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((cur, d)) = queue.pop_front() {
            for p in &self.classes[cur].parents {
                if !distance.contains_key(p) {
                    distance.insert(p, d + 1);
                    queue.push_back((p, d + 1));
                }
            }
        }

        // Kahn's algorithm over the ancestor subgraph, edges child -> parent.
        let mut pending: BTreeMap<&TermId, usize> = distance.keys().map(|k| (*k, 0)).collect();
        for node in distance.keys().copied().chain(std::iter::once(start)) {
            for p in &self.classes[node].parents {
                *pending.get_mut(p).expect("parent is an ancestor") += 1;
            }
        }
        let mut ready: BTreeSet<(usize, &TermId)> = BTreeSet::from([(0, start)]);
        let mut out = Vec::with_capacity(distance.len());
        while let Some((_, node)) = ready.pop_first() {
            if node != start {
                out.push(node.clone());
            }
            for p in &self.classes[node].parents {
                let n = pending.get_mut(p).expect("parent is an ancestor");
                *n -= 1;
                if *n == 0 {
                    ready.insert((distance[p], p));
                }
            }
        }
        Ok(out)
    }

    /// The class and every class below it.
    pub fn descendants_or_self(&self, id: &str) -> Result<BTreeSet<TermId>, OntologyError> {
        let start = self.require_class(id)?.id.clone();
        let mut out = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(cur) = stack.pop() {
            if let Some(kids) = self.children.get(&cur) {
                stack.extend(kids.iter().filter(|k| !out.contains(*k)).cloned());
            }
            out.insert(cur);
        }
        Ok(out)
    }

    /// Folds `other` into this ontology.
    ///
    /// Same-named classes are treated as one shared term and their parents
    /// are unioned. Same-named properties must be identical.
    pub fn merge(&mut self, other: &Ontology) -> Result<(), OntologyError> {
        for class in other.topological_classes() {
            if self.classes.contains_key(&class.id) {
                for p in &class.parents {
                    self.add_parent(&class.id, p)?;
                }
                if self.classes[&class.id].definition.is_none() {
                    if let Some(text) = &class.definition {
                        self.set_definition(&class.id, text.clone())?;
                    }
                }
            } else {
                self.define_class_def(class.clone())?;
            }
        }
        for prop in other.properties() {
            match self.properties.get(&prop.id) {
                Some(existing) if existing == prop => {}
                Some(_) => return Err(OntologyError::DuplicateTerm { name: prop.id.to_string() }),
                None => self.define_property(prop.clone())?,
            }
        }
        for (alias, target) in other.aliases() {
            match self.aliases.get(alias) {
                Some(existing) if existing == target => {}
                _ => self.add_alias(alias.clone(), target)?,
            }
        }
        Ok(())
    }

    /// Classes ordered so that every parent precedes its children.
    pub fn topological_classes(&self) -> Vec<&ClassDef> {
        let mut pending: BTreeMap<&TermId, usize> = self.classes.values().map(|c| (&c.id, c.parents.len())).collect();
        let mut ready: BTreeSet<&TermId> = pending.iter().filter(|(_, n)| **n == 0).map(|(id, _)| *id).collect();
        let mut out = Vec::with_capacity(self.classes.len());
        while let Some(id) = ready.pop_first() {
            out.push(&self.classes[id]);
            for kid in self.children.get(id).into_iter().flatten() {
                let n = pending.get_mut(kid).expect("child is a class");
                *n -= 1;
                if *n == 0 {
                    ready.insert(kid);
                }
            }
        }
        out
    }

    /// Full scan for dangling references and cycles. Empty when consistent.
    pub fn integrity_problems(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for class in self.classes.values() {
            for p in &class.parents {
                if !self.classes.contains_key(p) {
                    problems.push(format!("class {} has unknown parent {p}", class.id));
                }
            }
        }
        for prop in self.properties.values() {
            let range = prop.range_classes().into_iter().flatten();
            for c in prop.domain.iter().chain(range) {
                if !self.classes.contains_key(c) {
                    problems.push(format!("property {} references unknown class {c}", prop.id));
                }
            }
        }
        for (alias, target) in &self.aliases {
            if !self.classes.contains_key(target) && !self.properties.contains_key(target) {
                problems.push(format!("alias {alias} points at unknown term {target}"));
            }
        }
        if self.topological_classes().len() != self.classes.len() {
            problems.push("subsumption graph contains a cycle".to_string());
        }
        problems
    }
}
