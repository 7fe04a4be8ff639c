mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rust_decimal::Decimal;
use satkg_core::ingest::ingest;
use satkg_core::ontology::{term, Assertion, InstanceStore, Literal, Predicate, TermId};
use satkg_core::query::{
    evaluate, parse_query, Binding, Comparator, NumericFilter, PatternTerm, Query, QueryError, Semantics, TriplePattern,
};
use satkg_core::reasoner::classify_orbits;
use satkg_core::schema::{build_ucsso, ModelingMode};

use common::*;

fn terms(bindings: Vec<&Binding>) -> BTreeSet<TermId> {
    bindings
        .into_iter()
        .map(|b| match b {
            Binding::Term(t) => t.clone(),
            other => panic!("expected a term, got {other:?}"),
        })
        .collect()
}

#[test]
fn parse_errors() {
    let ont = build_ucsso(ModelingMode::Direct);
    assert!(matches!(parse_query("select ?s where { }", &ont), Err(QueryError::Syntax { .. })));
    assert_eq!(
        parse_query("select ?s where { ?s has_Bogus ?x }", &ont),
        Err(QueryError::UnknownTermInQuery("has_Bogus".into()))
    );
    assert!(matches!(parse_query("select ?t where { ?s has_Operator ?o }", &ont), Err(QueryError::UnsafeVariable(_))));
    match parse_query("select ?s\nwhere { ?s has_Operator }", &ont) {
        Err(QueryError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn eccentricity_filter_matches_classifier() {
    let mode = ModelingMode::Direct;
    let (store, _) = ingest(&fixture_records("ucs_10.csv"), mode, &build_ucsso(mode));
    let q = parse_query(
        "select ?s where { ?s instance_of Artificial_Satellite . ?s has_Orbital_Eccentricity_value ?e . filter ?e <= 0.14 }",
        store.ontology(),
    )
    .unwrap();
    assert_eq!((q.patterns.len(), q.filters.len()), (2, 1));
    let by_query = terms(evaluate(&q, &store).unwrap().column("?s"));

    let c = classify_orbits(&store, mode).unwrap();
    let by_classifier: BTreeSet<TermId> = c
        .store
        .instances_of("Artificial_Satellite")
        .into_iter()
        .filter(|s| {
            c.store
                .objects(s.as_str(), &Predicate::Property(term("has_Orbit")))
                .iter()
                .any(|o| c.store.is_a(o.as_term().unwrap().as_str(), "Nearly_Circular_Orbit"))
        })
        .collect();
    assert_eq!(by_query.len(), 7);
    assert_eq!(by_query, by_classifier);
}

#[test]
fn superclass_query_matches_ancestor_walk() {
    let mode = ModelingMode::Reified;
    let (store, _) = ingest(&fixture_records("one_satellite.csv"), mode, &build_ucsso(mode));
    let (more, _) = ingest(&fixture_records("ucs_10.csv"), mode, &build_ucsso(mode));
    let mut store = store;
    for a in more.assertions() {
        store.declare_instance(a.subject.clone());
        if let Some(o) = a.object.as_instance() {
            store.declare_instance(o.clone());
        }
        store.assert(a).unwrap();
    }
    let edges = store.ontology().subclass_edges();
    let reaches = |from: &TermId, to: &str| {
        let mut stack = vec![from.clone()];
        let mut seen = BTreeSet::new();
        while let Some(c) = stack.pop() {
            if c.as_str() == to {
                return true;
            }
            if seen.insert(c.clone()) {
                stack.extend(edges.iter().filter(|(s, _)| *s == c).map(|(_, p)| p.clone()));
            }
        }
        false
    };
    for class in ["Purpose", "Orbit", "User", "Nearly_Circular_Orbit", "Artificial_Satellite", "Function"] {
        let q = parse_query(&format!("select ?x where {{ ?x instance_of {class} }}"), store.ontology()).unwrap();
        let got = terms(evaluate(&q, &store).unwrap().column("?x"));
        let canonical = store.ontology().resolve_class(class).unwrap();
        let brute: BTreeSet<TermId> = store
            .instances()
            .filter(|i| store.types_of(i.as_str()).iter().any(|c| reaches(c, canonical.as_str())))
            .cloned()
            .collect();
        assert!(!brute.is_empty(), "{class}");
        assert_eq!(got, brute, "{class}");
    }
}

fn var() -> impl Strategy<Value = String> {
    proptest::sample::select(&["?a", "?b", "?c", "?sat", "?v1"][..]).prop_map(str::to_string)
}

fn constant() -> impl Strategy<Value = PatternTerm> {
    prop_oneof![
        "T_[A-Za-z0-9_]{0,6}".prop_map(|s| PatternTerm::Term(term(&s))),
        (-100_000i64..100_000, 0u32..4).prop_map(|(n, s)| PatternTerm::Literal(Literal::decimal(Decimal::new(n, s)))),
        "[ -~]{0,8}".prop_map(|s| PatternTerm::Literal(Literal::string(s))),
    ]
}

fn pattern() -> impl Strategy<Value = TriplePattern> {
    let predicate =
        prop_oneof![Just(Predicate::InstanceOf), "p_[A-Za-z0-9_]{0,6}".prop_map(|s| Predicate::Property(term(&s))),];
    let subject =
        prop_oneof![var().prop_map(PatternTerm::Var), "T_[a-z]{1,4}".prop_map(|s| PatternTerm::Term(term(&s)))];
    let object = prop_oneof![var().prop_map(PatternTerm::Var), constant()];
    (subject, predicate, object).prop_map(|(subject, predicate, object)| TriplePattern { subject, predicate, object })
}

fn query() -> impl Strategy<Value = Query> {
    let comparator =
        proptest::sample::select(&[Comparator::Lt, Comparator::Le, Comparator::Eq, Comparator::Ge, Comparator::Gt][..]);
    (
        (var(), var()).prop_map(|(s, o)| TriplePattern {
            subject: PatternTerm::Var(s),
            predicate: Predicate::Property(term("p_x")),
            object: PatternTerm::Var(o),
        }),
        proptest::collection::vec(pattern(), 0..4),
        proptest::collection::vec((comparator, -1000i64..1000, 0u32..3), 0..3),
        proptest::collection::vec(pattern(), 0..3),
        any::<bool>(),
    )
        .prop_map(|(first, rest, filters, negations, closed)| {
            let mut patterns = vec![first];
            patterns.extend(rest);
            let bound: Vec<String> = patterns
                .iter()
                .flat_map(|p| p.vars().map(str::to_string))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let filters = filters
                .into_iter()
                .enumerate()
                .map(|(i, (comparator, n, s))| NumericFilter {
                    variable: bound[i % bound.len()].clone(),
                    comparator,
                    bound: Decimal::new(n, s),
                })
                .collect();
            Query {
                select_vars: bound.iter().take(2).cloned().collect(),
                patterns,
                filters,
                negations,
                semantics: if closed { Semantics::ClosedWorld } else { Semantics::OpenWorld },
            }
        })
}

fn operator_store(extra_operator_for_c: bool) -> InstanceStore {
    let mut s = InstanceStore::new(build_ucsso(ModelingMode::Direct));
    for i in ["A", "B", "C", "Op"] {
        s.declare_instance(term(i));
    }
    for sat in ["A", "B", "C"] {
        s.assert(Assertion::instance_of(term(sat), term("Artificial_Satellite"))).unwrap();
    }
    s.assert(Assertion::instance_of(term("Op"), term("Operator"))).unwrap();
    let with_operator: &[&str] = if extra_operator_for_c { &["A", "B", "C"] } else { &["A", "B"] };
    for sat in with_operator {
        s.assert(Assertion::link(term(sat), term("has_Operator"), term("Op"))).unwrap();
    }
    s
}

#[test]
fn negation_is_non_monotone_under_closed_world() {
    let text = "select ?s where { ?s instance_of Artificial_Satellite . not { ?s has_Operator ?o } }";
    let before = operator_store(false);
    let q = parse_query(text, before.ontology()).unwrap();
    assert_eq!(evaluate(&q, &before), Err(QueryError::NegationUnderOpenWorld));
    let closed = q.with_semantics(Semantics::ClosedWorld);
    assert_eq!(terms(evaluate(&closed, &before).unwrap().column("?s")), BTreeSet::from([term("C")]));
    assert!(evaluate(&closed, &operator_store(true)).unwrap().is_empty());
}

const MONOTONE_QUERIES: [&str; 4] = [
    "select ?s where { ?s instance_of Artificial_Satellite }",
    "select ?s ?o where { ?s has_Operator ?o . ?o instance_of Owner }",
    "select ?s ?e where { ?s has_Orbital_Eccentricity_value ?e . filter ?e > 0.14 }",
    "select ?s ?p where { ?s has_Purpose ?p . ?p instance_of Purpose . ?s has_Orbit ?o }",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_queries_parse_back(q in query()) {
        let text = q.to_string();
        let parsed = Query::parse(&text).map(|p| p.with_semantics(q.semantics));
        prop_assert_eq!(parsed, Ok(q), "{}", text);
    }

    #[test]
    fn open_world_answers_only_grow(base in records_strategy(4), more in records_strategy(8)) {
        let mode = ModelingMode::Direct;
        let ont = build_ucsso(mode);
        let (small, _) = ingest(&base, mode, &ont);
        // Names in `more` repeat those in `base`; ingest keeps them apart
        // with a row suffix, so shared operators and countries gain links.
        let mut all = base.clone();
        all.extend(more.into_iter().map(|mut r| { r.row_number += 100; r }));
        let (big, _) = ingest(&all, mode, &ont);
        for a in small.assertions() {
            prop_assert!(big.contains(&a));
        }
        for text in MONOTONE_QUERIES {
            let q = parse_query(text, &ont).unwrap();
            let before: BTreeSet<_> = evaluate(&q, &small).unwrap().rows.into_iter().collect();
            let after: BTreeSet<_> = evaluate(&q, &big).unwrap().rows.into_iter().collect();
            prop_assert!(before.is_subset(&after), "{}", text);
        }
    }
}
