use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{Map, Value};

use super::ast::*;
use super::QueryError;
use crate::ontology::{InstanceStore, Literal, Object, Predicate, TermId};

/// A value bound to a variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Binding {
    Term(TermId),
    Literal(Literal),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Term(t) => write!(f, "{t}"),
            Binding::Literal(l) => f.write_str(&l.value.lexical()),
        }
    }
}

impl Binding {
    fn from_object(o: &Object) -> Binding {
        match o {
            Object::Class(t) | Object::Instance(t) => Binding::Term(t.clone()),
            Object::Literal(l) => Binding::Literal(l.clone()),
        }
    }
}

/// Query answers: one row per distinct projection, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingSet {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Binding>>,
}

impl BindingSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Values of one variable across all rows.
    pub fn column(&self, var: &str) -> Vec<&Binding> {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.rows.iter().map(|r| &r[i]).collect(),
            None => Vec::new(),
        }
    }

    /// CSV with the variable names (without `?`) as header.
    pub fn to_csv(&self) -> String {
        fn quote(s: &str) -> String {
            if s.contains([',', '"', '\n', '\r']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let header: Vec<String> = self.vars.iter().map(|v| quote(v.trim_start_matches('?'))).collect();
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|b| quote(&b.to_string())).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// A JSON array of objects keyed by variable name (without `?`).
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (var, b) in self.vars.iter().zip(row) {
                    let v = match b {
                        Binding::Term(t) => Value::String(t.to_string()),
                        Binding::Literal(l) => Value::String(l.value.lexical()),
                    };
                    obj.insert(var.trim_start_matches('?').to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

type Row = BTreeMap<String, Binding>;

/// Literal equality for matching: numbers by value (units ignored),
/// everything else by lexical form.
fn literal_matches(pattern: &Literal, stored: &Literal) -> bool {
    match (pattern.as_decimal(), stored.as_decimal()) {
        (Some(a), Some(b)) => a == b,
        (None, None) => pattern.value.lexical() == stored.value.lexical(),
        _ => false,
    }
}

fn binding_matches(b: &Binding, o: &Object) -> bool {
    match (b, o) {
        (Binding::Term(t), Object::Class(u) | Object::Instance(u)) => t == u,
        (Binding::Literal(l), Object::Literal(m)) => literal_matches(l, m),
        _ => false,
    }
}

/// Resolves a pattern position against a row: Some(binding) if constant or
/// bound, None if a free variable.
fn resolved(t: &PatternTerm, row: &Row) -> Option<Binding> {
    match t {
        PatternTerm::Var(v) => row.get(v).cloned(),
        PatternTerm::Term(id) => Some(Binding::Term(id.clone())),
        PatternTerm::Literal(l) => Some(Binding::Literal(l.clone())),
    }
}

/// Classes an instance belongs to, including every superclass.
fn closed_types(store: &InstanceStore, instance: &str) -> BTreeSet<TermId> {
    let mut out = BTreeSet::new();
    for c in store.types_of(instance) {
        out.extend(store.ontology().ancestors(c.as_str()).unwrap_or_default());
        out.insert(c);
    }
    out
}

/// Every (subject, object) pair matching the pattern under `row`.
fn matches(store: &InstanceStore, p: &TriplePattern, row: &Row) -> Vec<(TermId, Binding)> {
    let subject = resolved(&p.subject, row);
    let object = resolved(&p.object, row);
    let subject = match subject {
        Some(Binding::Term(s)) => Some(s),
        // A literal can never be a subject.
        Some(Binding::Literal(_)) => return Vec::new(),
        None => None,
    };
    let mut out = Vec::new();
    match &p.predicate {
        Predicate::InstanceOf => match (subject, object) {
            (Some(s), Some(Binding::Term(c))) => {
                if store.is_a(s.as_str(), c.as_str()) {
                    out.push((s, Binding::Term(c)));
                }
            }
            (None, Some(Binding::Term(c))) => {
                for s in store.instances_of(c.as_str()) {
                    out.push((s, Binding::Term(c.clone())));
                }
            }
            (Some(s), None) => {
                for c in closed_types(store, s.as_str()) {
                    out.push((s.clone(), Binding::Term(c)));
                }
            }
            (None, None) => {
                for s in store.instances() {
                    for c in closed_types(store, s.as_str()) {
                        out.push((s.clone(), Binding::Term(c)));
                    }
                }
            }
            (_, Some(Binding::Literal(_))) => {}
        },
        pred @ Predicate::Property(_) => match (subject, object) {
            (Some(s), object) => {
                for o in store.objects(s.as_str(), pred) {
                    if object.as_ref().map_or(true, |b| binding_matches(b, o)) {
                        out.push((s.clone(), Binding::from_object(o)));
                    }
                }
            }
            (None, Some(Binding::Term(o))) => {
                for s in store.subjects(pred, &Object::Instance(o.clone())) {
                    out.push((s.clone(), Binding::Term(o.clone())));
                }
            }
            (None, object) => {
                for (o, s) in store.with_predicate(pred) {
                    if object.as_ref().map_or(true, |b| binding_matches(b, o)) {
                        out.push((s.clone(), Binding::from_object(o)));
                    }
                }
            }
        },
    }
    out
}

fn extend(row: &Row, p: &TriplePattern, s: TermId, o: Binding) -> Option<Row> {
    let mut next = row.clone();
    for (t, value) in [(&p.subject, Binding::Term(s)), (&p.object, o)] {
        if let PatternTerm::Var(v) = t {
            match next.get(v) {
                // Same variable in both positions must agree.
                Some(existing) if *existing != value => return None,
                Some(_) => {}
                None => {
                    next.insert(v.clone(), value);
                }
            }
        }
    }
    Some(next)
}

fn passes(filter: &NumericFilter, row: &Row) -> bool {
    match row.get(&filter.variable) {
        Some(Binding::Literal(l)) => l.as_decimal().is_some_and(|v| filter.comparator.holds(v, filter.bound)),
        _ => false,
    }
}

/// Evaluates a query against a store.
///
/// Patterns join left to right. Negations are negation as failure and
/// are refused under open-world semantics.
pub fn evaluate(q: &Query, store: &InstanceStore) -> Result<BindingSet, QueryError> {
    if !q.negations.is_empty() && q.semantics == Semantics::OpenWorld {
        return Err(QueryError::NegationUnderOpenWorld);
    }
    let mut rows: Vec<Row> = vec![Row::new()];
    for p in &q.patterns {
        let mut next = Vec::new();
        for row in &rows {
            for (s, o) in matches(store, p, row) {
                if let Some(r) = extend(row, p, s, o) {
                    next.push(r);
                }
            }
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }
    rows.retain(|row| q.filters.iter().all(|f| passes(f, row)));
    rows.retain(|row| {
        !q.negations.iter().any(|n| matches(store, n, row).into_iter().any(|(s, o)| extend(row, n, s, o).is_some()))
    });

    let projected: BTreeSet<Vec<Binding>> =
        rows.into_iter().map(|row| q.select_vars.iter().map(|v| row[v].clone()).collect()).collect();
    Ok(BindingSet { vars: q.select_vars.clone(), rows: projected.into_iter().collect() })
}
