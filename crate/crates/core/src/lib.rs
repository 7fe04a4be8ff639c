//! Knowledge-graph toolkit for satellite catalogs.
//!
//! Builds a typed schema for catalog data, ingests catalog CSV exports under
//! a reified or direct modeling of orbital parameters, classifies and
//! validates instances, answers conjunctive queries with open- or
//! closed-world negation, and maps local terms onto a reference vocabulary.

pub mod ingest;
pub mod interop;
pub mod ontology;
pub mod query;
pub mod reasoner;
pub mod report;
pub mod schema;
